//! Coefficient fields.
//!
//! Elements do not carry their field; every operation goes through a field
//! context. This lets one polynomial and matrix implementation serve the
//! rationals, prime fields, small Galois fields and number fields alike.

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Ord + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Characteristic (0 for the rationals and number fields).
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// `Z/pZ` for a prime `p < 2^32`, residues kept in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 32), "modulus out of range");
        debug_assert!(crate::arith::is_prime(p), "modulus must be prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        r.try_into().expect("residue fits in u64")
    }

    /// Reduces a rational whose denominator is a unit mod p.
    pub fn reduce_rational(&self, r: &BigRational) -> Option<u64> {
        let d = self.reduce_big(r.denom());
        let di = self.inv(&d)?;
        Some(self.mul(&self.reduce_big(r.numer()), &di))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.p == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_int(&self, n: i64) -> u64 {
        let p = self.p as i128;
        (((n as i128) % p + p) % p) as u64
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// A finite field whose elements can be enumerated by index `0..order`.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    /// Element number `index`; index 0 is zero and index 1 is one.
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;

    fn pow_u64(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The unique `p`-th root, `a^(q/p)`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        self.pow_u64(a, self.order() / self.characteristic())
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u64 {
        self.p
    }
    fn element(&self, index: u64) -> u64 {
        index % self.p
    }
    fn index_of(&self, a: &u64) -> u64 {
        *a
    }
}

/// Largest field order for which full addition and multiplication tables are built.
pub const MAX_GALOIS_ORDER: u64 = 1024;

/// `F_q` for `q = p^k`, elements numbered `0..q` with the base-`p` digits of
/// the index giving the coefficients of `1, a, a^2, ...`, where `a` is a root
/// of the lexicographically first monic irreducible polynomial of degree `k`.
#[derive(Clone)]
pub struct GaloisField {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    add: Arc<Vec<u32>>,
    mul: Arc<Vec<u32>>,
    neg: Arc<Vec<u32>>,
    inv: Arc<Vec<u32>>,
}

impl Debug for GaloisField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = crate::arith::prime_power(q)
            .ok_or_else(|| Error::InvalidAlgebra(format!("{q} is not a prime power")))?;
        if q > MAX_GALOIS_ORDER {
            return Err(Error::TooLarge {
                what: format!("field table for F_{q}"),
                needed: q as u128,
                cap: MAX_GALOIS_ORDER as u128,
            });
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            crate::poly::first_irreducible(PrimeField::new(p), k as usize)
        };
        let digits = |mut i: u64| -> Vec<u64> {
            (0..k)
                .map(|_| {
                    let d = i % p;
                    i /= p;
                    d
                })
                .collect()
        };
        let index = |v: &[u64]| -> u32 { v.iter().rev().fold(0u64, |acc, d| acc * p + d) as u32 };
        let n = q as usize;
        let digit_table: Vec<Vec<u64>> = (0..q).map(digits).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        let kk = k as usize;
        for i in 0..n {
            for j in i..n {
                let (a, b) = (&digit_table[i], &digit_table[j]);
                let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
                let sidx = index(&s);
                add[i * n + j] = sidx;
                add[j * n + i] = sidx;
                let mut prod = vec![0u64; 2 * kk];
                for (u, x) in a.iter().enumerate() {
                    for (v, y) in b.iter().enumerate() {
                        prod[u + v] = (prod[u + v] + x * y) % p;
                    }
                }
                for top in (kk..2 * kk).rev() {
                    let c = prod[top];
                    if c != 0 {
                        for (t, m) in modulus.iter().enumerate().take(kk) {
                            let pos = top - kk + t;
                            prod[pos] = (prod[pos] + p - (c * m) % p) % p;
                        }
                        prod[top] = 0;
                    }
                }
                let midx = index(&prod[..kk]);
                mul[i * n + j] = midx;
                mul[j * n + i] = midx;
            }
        }
        let neg: Vec<u32> = (0..n).map(|i| (0..n).find(|&j| add[i * n + j] == 0).unwrap() as u32).collect();
        let inv: Vec<u32> = (0..n)
            .map(|i| {
                if i == 0 {
                    0
                } else {
                    (1..n).find(|&j| mul[i * n + j] == 1).expect("field has inverses") as u32
                }
            })
            .collect();
        Ok(GaloisField {
            p,
            k,
            q,
            modulus,
            add: Arc::new(add),
            mul: Arc::new(mul),
            neg: Arc::new(neg),
            inv: Arc::new(inv),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    /// Coefficients of the defining polynomial of the generator, lowest first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The generator `a` (equal to the prime-field element 0 when `k = 1`).
    pub fn generator(&self) -> u32 {
        if self.k == 1 {
            0
        } else {
            self.p as u32
        }
    }

    /// Human-readable element, e.g. `a+1` or `2`.
    pub fn format(&self, x: u32) -> String {
        if self.k == 1 {
            return x.to_string();
        }
        let mut i = x as u64;
        let mut terms = Vec::new();
        for e in 0..self.k {
            let d = i % self.p;
            i /= self.p;
            if d == 0 {
                continue;
            }
            let mono = match e {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{e}"),
            };
            terms.push(match (d, mono.is_empty()) {
                (_, true) => d.to_string(),
                (1, false) => mono,
                (_, false) => format!("{d}*{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.reverse();
            terms.join("+")
        }
    }
}

impl Field for GaloisField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add[*a as usize * self.q as usize + *b as usize]
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul[*a as usize * self.q as usize + *b as usize]
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg[*a as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.inv[*a as usize])
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl FiniteField for GaloisField {
    fn order(&self) -> u64 {
        self.q
    }
    fn element(&self, index: u64) -> u32 {
        (index % self.q) as u32
    }
    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }
}

pub(crate) fn rational_is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if rational_is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &GaloisField) {
        let q = f.order() as u32;
        for a in 0..q {
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
            assert_eq!(f.mul(&a, &1), a);
            if a != 0 {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
            for b in 0..q {
                for c in 0..q {
                    assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                    assert_eq!(f.mul(&a, &f.mul(&b, &c)), f.mul(&f.mul(&a, &b), &c));
                }
            }
        }
    }

    #[test]
    fn small_galois_fields_satisfy_field_axioms() {
        for q in [2, 3, 4, 8, 9] {
            check_axioms(&GaloisField::new(q).unwrap());
        }
    }

    #[test]
    fn f4_uses_x2_x_1() {
        let f = GaloisField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let a = f.generator();
        // a^2 = a + 1
        assert_eq!(f.mul(&a, &a), f.add(&a, &1));
        assert_eq!(f.format(3), "a+1");
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = GaloisField::new(9).unwrap();
        let fixed: Vec<u32> = (0..9).filter(|x| f.pow_u64(x, 3) == *x).collect();
        assert_eq!(fixed, vec![0, 1, 2]);
        for x in 0..9u32 {
            assert_eq!(f.pow_u64(&f.pth_root(&x), 3), x);
        }
    }

    #[test]
    fn non_prime_power_rejected() {
        assert!(GaloisField::new(6).is_err());
    }
}
