//! Factorization over Q: squarefree decomposition, modular factorization at a
//! good prime, quadratic Hensel lifting and exhaustive recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{factor_mod_p, Factorization, Poly, PolyRing};
use crate::arith::{gcd_big, isqrt_ceil, next_prime, symmetric_mod};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Rationals};

/// How many good primes are tried before picking the one with fewest modular factors.
const PRIME_TRIALS: usize = 5;

/// Complete factorization over Q into monic irreducibles times the leading coefficient.
pub fn factor_over_q(f: &Poly<BigRational>) -> Result<Factorization<BigRational>> {
    let ring = PolyRing::new(Rationals);
    let unit = f
        .leading()
        .cloned()
        .ok_or_else(|| Error::Invalid("cannot factor the zero polynomial".into()))?;
    let mut factors = Vec::new();
    for (part, mult) in ring.squarefree_decomposition(f) {
        for g in factor_squarefree(&ring, &part) {
            factors.push((g, mult));
        }
    }
    ring.sort_factors(&mut factors);
    let out = Factorization { unit, factors };
    if &ring.expand(&out) != f {
        return Err(Error::Consistency("rational factorization does not re-multiply".into()));
    }
    Ok(out)
}

/// Coefficient bound for integer factors of `F`, scaled by `|lc(F)|`:
/// `2^n * ceil(||F||_2) * |lc(F)|`.
pub fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = f.len().saturating_sub(1);
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let lc = f.last().map(|c| c.abs()).unwrap_or_else(BigInt::zero);
    (BigInt::one() << n) * isqrt_ceil(&norm2) * lc
}

/// Clears denominators and content; the result has positive leading coefficient.
fn primitive_integer(f: &Poly<BigRational>) -> Vec<BigInt> {
    let den = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| gcd_big(&acc, c));
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    for c in ints.iter_mut() {
        *c = &*c / &content * &sign;
    }
    ints
}

fn to_rational_monic(ring: &PolyRing<Rationals>, f: &[BigInt]) -> Poly<BigRational> {
    ring.monic(&ring.from_coeffs(f.iter().map(|c| BigRational::from_integer(c.clone())).collect()))
}

fn factor_squarefree(ring: &PolyRing<Rationals>, f: &Poly<BigRational>) -> Vec<Poly<BigRational>> {
    let n = f.degree().unwrap();
    if n <= 1 {
        return vec![ring.monic(f)];
    }
    let big = primitive_integer(f);
    if big[0].is_zero() {
        let rest = ring.div_exact(f, &ring.x()).unwrap();
        let mut out = vec![ring.x()];
        out.extend(factor_squarefree(ring, &rest));
        return out;
    }
    let (p, modular) = choose_prime(&big);
    if modular.len() == 1 {
        return vec![ring.monic(f)];
    }
    let bound = mignotte_bound(&big) * 2;
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift(&big, &modular, p, &modulus);
    recombine(ring, big, lifted, &modulus)
}

/// Among the first few primes not dividing the leading coefficient and keeping
/// `F` squarefree, picks the one with fewest modular factors.
fn choose_prime(f: &[BigInt]) -> (u64, Vec<Vec<u64>>) {
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut p = 2;
    let mut tried = 0;
    while tried < PRIME_TRIALS {
        let field = PrimeField::new(p);
        let ring = PolyRing::new(field);
        let fp = ring.from_coeffs(f.iter().map(|c| field.reduce_big(c)).collect());
        if fp.degree() == Some(f.len() - 1) && ring.is_separable(&fp) {
            tried += 1;
            let fac = factor_mod_p(&ring, &fp);
            let factors: Vec<Vec<u64>> = fac.factors.into_iter().map(|(g, _)| g.into_coeffs()).collect();
            if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
                best = Some((p, factors));
            }
        }
        p = next_prime(p);
    }
    best.unwrap()
}

/// Arithmetic on integer polynomials modulo `m`, coefficients kept in `[0, m)`.
struct ModRing<'a> {
    m: &'a BigInt,
}

impl ModRing<'_> {
    fn norm(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for c in v.iter_mut() {
            *c = c.mod_floor(self.m);
        }
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        self.norm((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        self.norm((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.norm(out)
    }

    /// Division by a monic polynomial.
    fn divrem(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let db = b.len() - 1;
        debug_assert!(b[db].is_one());
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), self.norm(r));
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db].mod_floor(self.m);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.norm(q), self.norm(r))
    }

    fn scale(&self, a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        self.norm(a.iter().map(|x| x * c).collect())
    }

    fn inverse(&self, c: &BigInt) -> BigInt {
        let e = c.extended_gcd(self.m);
        debug_assert!(e.gcd.is_one());
        e.x.mod_floor(self.m)
    }
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `F = lc * prod(g_i) mod p` to monic factors modulo `target` (a power of `p`).
fn hensel_lift(f: &[BigInt], modular: &[Vec<u64>], p: u64, target: &BigInt) -> Vec<Vec<BigInt>> {
    if modular.len() == 1 {
        let ring = ModRing { m: target };
        let lc_inv = ring.inverse(f.last().unwrap());
        return vec![ring.scale(f, &lc_inv)];
    }
    let field = PrimeField::new(p);
    let pr = PolyRing::new(field);
    let half = modular.len() / 2;
    let prod = |items: &[Vec<u64>]| -> Poly<u64> {
        items.iter().fold(pr.one(), |acc, g| pr.mul(&acc, &pr.from_coeffs(g.clone())))
    };
    let lc_p = field.reduce_big(f.last().unwrap());
    let g0 = pr.scale(&prod(&modular[..half]), &lc_p);
    let h0 = prod(&modular[half..]);
    let (_, s0, t0) = pr.ext_gcd(&g0, &h0).unwrap();

    let mut m = BigInt::from(p);
    let (mut g, mut h) = (to_big(g0.coeffs()), to_big(h0.coeffs()));
    let (mut s, mut t) = (to_big(s0.coeffs()), to_big(t0.coeffs()));
    while &m < target {
        let m2 = &m * &m;
        let r = ModRing { m: &m2 };
        let e = r.sub(f, &r.mul(&g, &h));
        let (q, rem) = r.divrem(&r.mul(&s, &e), &h);
        let g1 = r.add(&r.add(&g, &r.mul(&t, &e)), &r.mul(&q, &g));
        let h1 = r.add(&h, &rem);
        let b = r.sub(&r.add(&r.mul(&s, &g1), &r.mul(&t, &h1)), &[BigInt::one()]);
        let (c, d) = r.divrem(&r.mul(&s, &b), &h1);
        s = r.sub(&s, &d);
        t = r.sub(&r.sub(&t, &r.mul(&t, &b)), &r.mul(&c, &g1));
        g = g1;
        h = h1;
        m = m2;
    }
    let ring = ModRing { m: target };
    let g = ring.norm(g);
    let h = ring.norm(h);
    let lc_inv = ring.inverse(f.last().unwrap());
    let g_monic = ring.scale(&g, &lc_inv);
    let mut out = hensel_lift(&g_monic, &modular[..half], p, target);
    out.extend(hensel_lift(&h, &modular[half..], p, target));
    out
}

fn recombine(
    ring: &PolyRing<Rationals>,
    mut f: Vec<BigInt>,
    mut lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
) -> Vec<Poly<BigRational>> {
    let mr = ModRing { m: modulus };
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = f.last().unwrap().clone();
        let lc_f0 = &lc * &f[0];
        for subset in combinations(lifted.len(), size) {
            let const_term = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * lifted[i].first().cloned().unwrap_or_default()).mod_floor(modulus));
            let c = symmetric_mod(&const_term, modulus);
            if c.is_zero() || !(&lc_f0 % &c).is_zero() {
                continue;
            }
            let prod = subset.iter().fold(vec![lc.clone()], |acc, &i| mr.mul(&acc, &lifted[i]));
            let mut cand: Vec<BigInt> = prod.iter().map(|x| symmetric_mod(x, modulus)).collect();
            let mut content = cand.iter().fold(BigInt::zero(), |acc, c| gcd_big(&acc, c));
            if cand.last().is_some_and(|c| c.is_negative()) {
                content = -content;
            }
            for c in cand.iter_mut() {
                *c = &*c / &content;
            }
            if let Some(quot) = int_div_exact(&f, &cand) {
                found.push(to_rational_monic(ring, &cand));
                f = quot;
                let mut keep = Vec::new();
                for (i, u) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(u);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if f.len() > 1 {
        found.push(to_rational_monic(ring, &f));
    }
    found
}

/// Exact division of integer polynomials, abandoned as soon as a quotient
/// coefficient fails to be an integer.
fn int_div_exact(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let lead = &g[dg];
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dg].div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate() {
            r[k + j] -= &c * gj;
        }
        q[k] = c;
    }
    r[..dg].iter().all(Zero::is_zero).then_some(q)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(c: &[i64]) -> Poly<BigRational> {
        PolyRing::new(Rationals).from_coeffs(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    fn degrees(f: &[i64]) -> Vec<usize> {
        factor_over_q(&qp(f)).unwrap().factors.iter().map(|(g, _)| g.degree().unwrap()).collect()
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(degrees(&[-2, 0, 0, 0, 1]), vec![4]);
        assert_eq!(degrees(&[1, 0, -10, 0, 1]), vec![4]);
        assert_eq!(degrees(&[108, 0, 0, 0, 0, 0, 1]), vec![6]);
        assert_eq!(degrees(&[1, -3, 0, 1]), vec![3]);
    }

    #[test]
    fn x2_minus_1() {
        let fac = factor_over_q(&qp(&[-1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(qp(&[-1, 1]), 1), (qp(&[1, 1]), 1)]);
    }

    #[test]
    fn repeated_and_scaled() {
        let r = PolyRing::new(Rationals);
        // 3 (X^2 - 2)^2 (X + 1)
        let f = r.scale(&r.mul(&r.pow(&qp(&[-2, 0, 1]), 2), &qp(&[1, 1])), &BigRational::from_integer(3.into()));
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.unit, BigRational::from_integer(3.into()));
        assert_eq!(fac.factors, vec![(qp(&[1, 1]), 1), (qp(&[-2, 0, 1]), 2)]);
    }

    #[test]
    fn swinnerton_dyer_style_many_modular_factors() {
        // X^8 - 40X^6 + 352X^4 - 960X^2 + 576, minimal polynomial of sqrt2+sqrt3+sqrt5.
        assert_eq!(degrees(&[576, 0, -960, 0, 352, 0, -40, 0, 1]), vec![8]);
    }

    #[test]
    fn non_monic_factors() {
        // (2X + 1)(3X^2 - 5)
        let fac = factor_over_q(&qp(&[-5, -10, 3, 6])).unwrap();
        assert_eq!(fac.unit, BigRational::from_integer(6.into()));
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn mixed_degree_product() {
        let r = PolyRing::new(Rationals);
        let a = qp(&[1, 1, 1]);
        let b = qp(&[-2, 0, 0, 0, 1]);
        let c = qp(&[1, -1, 0, 1]);
        let f = r.mul(&r.mul(&a, &b), &c);
        assert_eq!(degrees(f.coeffs().iter().map(|x| x.to_integer().try_into().unwrap()).collect::<Vec<i64>>().as_slice()), vec![2, 3, 4]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn product_of_random_factors(parts in prop::collection::vec(prop::collection::vec(-4i64..5, 2..4), 1..4)) {
            let r = PolyRing::new(Rationals);
            let mut f = r.one();
            for p in &parts {
                let g = qp(p);
                prop_assume!(g.degree().unwrap_or(0) > 0);
                f = r.mul(&f, &g);
            }
            let fac = factor_over_q(&f).unwrap();
            prop_assert_eq!(r.expand(&fac), f.clone());
            let total: usize = fac.factors.iter().map(|(g, m)| g.degree().unwrap() * m).sum();
            prop_assert_eq!(total, f.degree().unwrap());
            // Each input factor is divisible by at least one reported factor.
            for p in &parts {
                let g = qp(p);
                prop_assert!(fac.factors.iter().any(|(h, _)| r.divides(h, &g)));
            }
        }
    }
}
