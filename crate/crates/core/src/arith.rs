//! Integer utilities: primality, prime search and residues modulo a prime.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// If `q = p^k` for a prime `p`, returns `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factor_small(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// A residue modulo a prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ModularInt {
    residue: u64,
    modulus: u64,
}

impl ModularInt {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(is_prime(modulus), "modulus {modulus} is not prime");
        let m = modulus as i128;
        let residue = ((value as i128 % m + m) % m) as u64;
        ModularInt { residue, modulus }
    }

    pub fn from_big(value: &BigInt, modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        let r = value.mod_floor(&m);
        ModularInt {
            residue: r.try_into().expect("residue fits"),
            modulus,
        }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut acc = ModularInt { residue: 1 % self.modulus, ..self };
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        if self.residue == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

impl std::ops::Add for ModularInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        ModularInt { residue: (self.residue + o.residue) % self.modulus, ..self }
    }
}

impl std::ops::Sub for ModularInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        ModularInt {
            residue: (self.residue + self.modulus - o.residue) % self.modulus,
            ..self
        }
    }
}

impl std::ops::Mul for ModularInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.modulus, o.modulus);
        let r = (self.residue as u128 * o.residue as u128) % self.modulus as u128;
        ModularInt { residue: r as u64, ..self }
    }
}

impl fmt::Display for ModularInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// Symmetric representative of `a` modulo `m`, in `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Integer square root rounded up.
pub fn isqrt_ceil(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut r = n.sqrt();
    if &r * &r < *n {
        r += BigInt::one();
    }
    r
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.abs().gcd(&b.abs())
}
