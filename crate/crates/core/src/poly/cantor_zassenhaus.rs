//! Factorization over finite fields: squarefree decomposition (with `p`-th
//! roots), distinct-degree splitting and randomized equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{biguint_pow, Factorization, Poly, PolyRing};
use crate::field::{FiniteField, PrimeField};

const SPLIT_SEED: u64 = 0x5eed_cafe;

/// Complete factorization of a nonzero polynomial over a finite field into
/// monic irreducibles.
pub fn factor_mod_p<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Factorization<F::Elem> {
    let unit = f.leading().cloned().expect("factor_mod_p needs a nonzero polynomial");
    let mut factors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    for (part, mult) in squarefree_char_p(ring, &ring.monic(f)) {
        for (g, d) in distinct_degree(ring, &part) {
            for h in equal_degree(ring, &g, d, &mut rng) {
                factors.push((h, mult));
            }
        }
    }
    ring.sort_factors(&mut factors);
    let out = Factorization { unit, factors };
    debug_assert_eq!(&ring.expand(&out), f);
    out
}

/// `true` iff `f` has positive degree and no nontrivial factor.
pub fn is_irreducible_over<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return false;
    }
    let fac = factor_mod_p(ring, f);
    fac.factors.len() == 1 && fac.factors[0].1 == 1
}

/// The monic irreducible polynomial of degree `deg` over `F_p` whose
/// coefficient vector (lowest first, read as base-`p` digits) is smallest.
pub fn first_irreducible(field: PrimeField, deg: usize) -> Vec<u64> {
    let p = field.modulus();
    let ring = PolyRing::new(field);
    let total = p.checked_pow(deg as u32).expect("search space fits in u64");
    for code in 0..total {
        let mut c = code;
        let mut coeffs: Vec<u64> = (0..deg)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect();
        coeffs.push(1);
        let f = ring.from_coeffs(coeffs.clone());
        if is_irreducible_over(&ring, &f) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Squarefree decomposition over `F_q`, including factors whose multiplicity
/// is divisible by the characteristic.
pub(crate) fn squarefree_char_p<F: FiniteField>(
    ring: &PolyRing<F>,
    f: &Poly<F::Elem>,
) -> Vec<(Poly<F::Elem>, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = ring.base.characteristic() as usize;
    let d = ring.derivative(f);
    if d.is_zero() {
        for (g, m) in squarefree_char_p(ring, &pth_root(ring, f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = ring.gcd(f, &d).unwrap();
    let mut w = ring.div_exact(f, &c).unwrap();
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = ring.gcd(&w, &c).unwrap();
        let z = ring.div_exact(&w, &y).unwrap();
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = ring.div_exact(&c, &y).unwrap();
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree_char_p(ring, &pth_root(ring, &c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// For `f = g(X^p)` returns the polynomial whose `p`-th power is `f`.
fn pth_root<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Poly<F::Elem> {
    let p = ring.base.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| ring.base.pth_root(c))
        .collect();
    ring.from_coeffs(coeffs)
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let q = BigUint::from(ring.base.order());
    let x = ring.x();
    let mut rest = f.clone();
    let mut h = ring.rem(&x, &rest);
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            break;
        }
        d += 1;
        h = ring.pow_mod(&h, &q, &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest).unwrap();
        if g.degree().unwrap_or(0) > 0 {
            rest = ring.div_exact(&rest, &g).unwrap();
            h = ring.rem(&h, &rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d`.
fn equal_degree<F: FiniteField>(
    ring: &PolyRing<F>,
    g: &Poly<F::Elem>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<F::Elem>> {
    let n = g.degree().unwrap();
    if n == d {
        return vec![g.clone()];
    }
    let q = ring.base.order();
    let p = ring.base.characteristic();
    loop {
        let a = ring.from_coeffs((0..n).map(|_| ring.base.element(rng.gen_range(0..q))).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace from F_{q^d} down to F_2: a + a^2 + a^4 + ...
            let bits = q.trailing_zeros() as usize * d;
            let mut term = a.clone();
            let mut acc = a.clone();
            for _ in 1..bits {
                term = ring.rem(&ring.mul(&term, &term), g);
                acc = ring.add(&acc, &term);
            }
            acc
        } else {
            let e = (biguint_pow(q, d) - BigUint::one()) / 2u32;
            ring.sub(&ring.pow_mod(&a, &e, g), &ring.one())
        };
        if b.is_zero() {
            continue;
        }
        let h = ring.gcd(&b, g).unwrap();
        let hd = h.degree().unwrap();
        if hd > 0 && hd < n {
            let mut left = equal_degree(ring, &h, d, rng);
            left.extend(equal_degree(ring, &ring.div_exact(g, &h).unwrap(), d, rng));
            return left;
        }
    }
}
