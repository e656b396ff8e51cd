//! Dense univariate polynomials over a [`Field`] and their factorization.

mod cantor_zassenhaus;
mod rational;
mod trager;

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::Field;

pub use cantor_zassenhaus::{factor_mod_p, first_irreducible, is_irreducible_over};
pub use rational::{factor_over_q, mignotte_bound};
pub use trager::{factor_over_number_field, norm_polynomial};

/// Coefficients lowest degree first; the leading coefficient is nonzero unless
/// the polynomial is zero (empty coefficient vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Orders by degree, then coefficients from the top down.
pub fn degree_lex_cmp<E: Ord + Clone>(a: &Poly<E>, b: &Poly<E>) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

/// A complete factorization `unit * prod(factor^multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(Poly<E>, usize)>,
}

impl<E: Clone> Factorization<E> {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .map(|(p, _)| p.degree().unwrap_or(0))
            .collect()
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }
}

/// Polynomial arithmetic over a coefficient field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    pub base: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(base: F) -> Self {
        PolyRing { base }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// The polynomial `X`.
    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: F::Elem, deg: usize) -> Poly<F::Elem> {
        let mut coeffs = vec![self.base.zero(); deg + 1];
        coeffs[deg] = c;
        self.from_coeffs(coeffs)
    }

    /// `X - c`.
    pub fn linear(&self, c: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![self.base.neg(c), self.base.one()])
    }

    pub fn coeff_or_zero(&self, p: &Poly<F::Elem>, i: usize) -> F::Elem {
        p.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.base.add(&self.coeff_or_zero(a, i), &self.coeff_or_zero(b, i)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.base.sub(&self.coeff_or_zero(a, i), &self.coeff_or_zero(b, i)))
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    pub fn product<'a, I>(&self, items: I) -> Poly<F::Elem>
    where
        I: IntoIterator<Item = &'a Poly<F::Elem>>,
        F::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, p| self.mul(&acc, p))
    }

    pub fn pow(&self, a: &Poly<F::Elem>, e: usize) -> Poly<F::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = self.base.inv(b.leading().unwrap()).expect("leading coefficient invertible");
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (self.zero(), self.from_coeffs(r));
        }
        let mut q = vec![self.base.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.base.mul(&r[k + db], &lead_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[k + j] = self.base.sub(&r[k + j], &self.base.mul(&c, bj));
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Exact quotient `a / b` when `b` divides `a`.
    pub fn div_exact(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        self.rem(a, b).is_zero()
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.leading() {
            None => self.zero(),
            Some(l) => {
                let inv = self.base.inv(l).expect("nonzero leading coefficient");
                self.scale(a, &inv)
            }
        }
    }

    pub fn is_monic(&self, a: &Poly<F::Elem>) -> bool {
        a.leading().is_some_and(|l| self.base.is_one(l))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdUndefined);
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        Ok(self.monic(&x))
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` and `g` the monic gcd.
    pub fn ext_gcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> Result<(Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdUndefined);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let l = self.base.inv(r0.leading().unwrap()).unwrap();
        Ok((self.scale(&r0, &l), self.scale(&s0, &l), self.scale(&t0, &l)))
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(c, &self.base.from_int(i as i64)))
            .collect();
        self.from_coeffs(coeffs)
    }

    /// `gcd(f, f') = 1`.
    pub fn is_separable(&self, f: &Poly<F::Elem>) -> bool {
        if f.is_zero() {
            return false;
        }
        let d = self.derivative(f);
        if d.is_zero() {
            return f.degree() == Some(0);
        }
        self.gcd(f, &d).map(|g| g.degree() == Some(0)).unwrap_or(false)
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    /// `a(b(X))`.
    pub fn compose(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        a.coeffs.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, b), &self.constant(c.clone()))
        })
    }

    /// `base^e mod m`.
    pub fn pow_mod(&self, base: &Poly<F::Elem>, e: &BigUint, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.rem(&self.one(), m);
        let b = self.rem(base, m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
        }
        acc
    }

    /// Squarefree decomposition in characteristic zero: monic `a_i` with `f = lc * prod(a_i^i)`.
    /// Entries with trivial `a_i` are omitted.
    pub fn squarefree_decomposition(&self, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
        assert_eq!(self.base.characteristic(), 0, "Yun's algorithm needs characteristic zero");
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic(f);
        let d = self.derivative(&f);
        let mut a = self.gcd(&f, &d).unwrap();
        let mut b = self.div_exact(&f, &a).unwrap();
        let mut c = self.div_exact(&d, &a).unwrap();
        let mut i = 1;
        loop {
            let bd = self.derivative(&b);
            let dd = self.sub(&c, &bd);
            if dd.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((b.clone(), i));
                }
                break;
            }
            a = self.gcd(&b, &dd).unwrap();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = self.div_exact(&b, &a).unwrap();
            c = self.div_exact(&dd, &a).unwrap();
            i += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        out
    }

    /// Re-multiplies a factorization.
    pub fn expand(&self, fac: &Factorization<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.constant(fac.unit.clone());
        for (p, m) in &fac.factors {
            acc = self.mul(&acc, &self.pow(p, *m));
        }
        acc
    }

    pub fn sort_factors(&self, factors: &mut [(Poly<F::Elem>, usize)]) {
        factors.sort_by(|a, b| degree_lex_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    }
}

/// Monic gcd of two polynomials over the same field.
pub fn poly_gcd<F: Field>(ring: &PolyRing<F>, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
    ring.gcd(a, b)
}

/// `true` iff `gcd(f, f') = 1`.
pub fn is_separable<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> bool {
    ring.is_separable(f)
}

pub(crate) fn biguint_pow(base: u64, e: usize) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}
