//! Multivariate polynomials over `F_q` and reduced Gröbner bases in grevlex order,
//! used to turn quotient presentations into structure constants.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::{Field, GaloisField};

/// Exponent vector.
pub type Monomial = Vec<u32>;

/// Graded reverse lexicographic order.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Terms sorted by decreasing monomial, coefficients nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    terms: Vec<(Monomial, u32)>,
}

impl MPoly {
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }
}

fn divides(m: &[u32], n: &[u32]) -> bool {
    m.iter().zip(n).all(|(a, b)| a <= b)
}

/// Polynomial arithmetic in `nvars` variables over a fixed field.
#[derive(Clone, Debug)]
pub struct MPolyRing {
    pub field: GaloisField,
    pub nvars: usize,
}

impl MPolyRing {
    pub fn new(field: GaloisField, nvars: usize) -> Self {
        MPolyRing { field, nvars }
    }

    fn from_map(&self, map: BTreeMap<MonoKey, u32>) -> MPoly {
        let mut terms: Vec<(Monomial, u32)> = map.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k.0, c)).collect();
        terms.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
        MPoly { terms }
    }

    pub fn zero(&self) -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(&self, c: u32) -> MPoly {
        if c == 0 {
            self.zero()
        } else {
            MPoly { terms: vec![(vec![0; self.nvars], c)] }
        }
    }

    pub fn var(&self, i: usize) -> MPoly {
        let mut m = vec![0; self.nvars];
        m[i] = 1;
        MPoly { terms: vec![(m, 1)] }
    }

    pub fn monomial(&self, m: &[u32]) -> MPoly {
        MPoly { terms: vec![(m.to_vec(), 1)] }
    }

    pub fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut map: BTreeMap<MonoKey, u32> = BTreeMap::new();
        for (m, c) in a.terms.iter().chain(&b.terms) {
            let e = map.entry(MonoKey(m.clone())).or_insert(0);
            *e = self.field.add(e, c);
        }
        self.from_map(map)
    }

    pub fn scale(&self, a: &MPoly, c: u32) -> MPoly {
        if c == 0 {
            return self.zero();
        }
        MPoly { terms: a.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(x, &c))).collect() }
    }

    pub fn neg(&self, a: &MPoly) -> MPoly {
        MPoly { terms: a.terms.iter().map(|(m, x)| (m.clone(), self.field.neg(x))).collect() }
    }

    pub fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.add(a, &self.neg(b))
    }

    /// `c * m * a`.
    fn mul_term(&self, a: &MPoly, m: &[u32], c: u32) -> MPoly {
        MPoly {
            terms: a
                .terms
                .iter()
                .map(|(n, x)| (n.iter().zip(m).map(|(u, v)| u + v).collect(), self.field.mul(x, &c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut acc = self.zero();
        for (m, c) in &b.terms {
            acc = self.add(&acc, &self.mul_term(a, m, *c));
        }
        acc
    }

    fn monic(&self, a: &MPoly) -> MPoly {
        match a.lead() {
            Some((_, c)) => self.scale(a, self.field.inv(c).expect("nonzero leading coefficient")),
            None => a.clone(),
        }
    }

    /// Full reduction of `f` modulo `g`.
    pub fn reduce(&self, f: &MPoly, g: &[MPoly]) -> MPoly {
        let mut rest = f.clone();
        let mut out = self.zero();
        while let Some((m, c)) = rest.lead().cloned() {
            let divisor = g.iter().find(|h| divides(&h.lead().expect("nonzero basis element").0, &m));
            match divisor {
                Some(h) => {
                    let (hm, hc) = h.lead().expect("nonzero basis element");
                    let shift: Monomial = m.iter().zip(hm).map(|(a, b)| a - b).collect();
                    let coef = self.field.div(&c, hc).expect("nonzero leading coefficient");
                    rest = self.sub(&rest, &self.mul_term(h, &shift, coef));
                }
                None => {
                    out = self.add(&out, &MPoly { terms: vec![(m.clone(), c)] });
                    rest.terms.remove(0);
                }
            }
        }
        out
    }

    fn s_poly(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let (am, ac) = a.lead().expect("nonzero");
        let (bm, bc) = b.lead().expect("nonzero");
        let lcm: Monomial = am.iter().zip(bm).map(|(x, y)| *x.max(y)).collect();
        let sa: Monomial = lcm.iter().zip(am).map(|(x, y)| x - y).collect();
        let sb: Monomial = lcm.iter().zip(bm).map(|(x, y)| x - y).collect();
        let left = self.mul_term(a, &sa, self.field.inv(ac).expect("nonzero"));
        let right = self.mul_term(b, &sb, self.field.inv(bc).expect("nonzero"));
        self.sub(&left, &right)
    }

    /// Reduced Gröbner basis of the ideal generated by `gens` (Buchberger).
    pub fn groebner(&self, gens: &[MPoly]) -> Vec<MPoly> {
        let mut basis: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| self.monic(g)).collect();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        while let Some((i, j)) = pairs.pop() {
            let (mi, mj) = (&basis[i].lead().unwrap().0, &basis[j].lead().unwrap().0);
            // Coprime leading monomials give a zero S-polynomial remainder.
            if mi.iter().zip(mj).all(|(a, b)| *a == 0 || *b == 0) {
                continue;
            }
            let r = self.reduce(&self.s_poly(&basis[i], &basis[j]), &basis);
            if !r.is_zero() {
                let k = basis.len();
                basis.push(self.monic(&r));
                pairs.extend((0..k).map(|i| (i, k)));
            }
        }
        // Minimalize, then interreduce.
        let mut minimal: Vec<MPoly> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let m = &g.lead().unwrap().0;
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                let n = &h.lead().unwrap().0;
                j != i && divides(n, m) && (n != m || j < i)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut out: Vec<MPoly> = (0..minimal.len())
            .map(|i| {
                let others: Vec<MPoly> =
                    minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
                let g = &minimal[i];
                let (lm, lc) = g.lead().unwrap().clone();
                let tail = MPoly { terms: g.terms[1..].to_vec() };
                let head = MPoly { terms: vec![(lm, lc)] };
                self.monic(&self.add(&head, &self.reduce(&tail, &others)))
            })
            .collect();
        out.sort_by(|a, b| grevlex_cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
        out
    }

    /// Monomials outside the leading-term ideal of `gb`, ascending, or `None`
    /// when some variable has no pure power among the leading monomials.
    pub fn standard_monomials(&self, gb: &[MPoly], limit: usize) -> Option<Vec<Monomial>> {
        let leads: Vec<&Monomial> = gb.iter().map(|g| &g.lead().unwrap().0).collect();
        let mut bounds = Vec::with_capacity(self.nvars);
        for v in 0..self.nvars {
            let pure = leads
                .iter()
                .filter(|m| m.iter().enumerate().all(|(i, e)| i == v || *e == 0))
                .map(|m| m[v])
                .min()?;
            bounds.push(pure);
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars];
        loop {
            if !leads.iter().any(|m| divides(m, &cur)) {
                out.push(cur.clone());
                if out.len() > limit {
                    return Some(out);
                }
            }
            let mut i = 0;
            loop {
                if i == self.nvars {
                    out.sort_by(|a, b| grevlex_cmp(a, b));
                    return Some(out);
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }
}

/// Orders map keys by grevlex so that iteration is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
struct MonoKey(Monomial);

impl PartialOrd for MonoKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonoKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.0, &other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64, n: usize) -> MPolyRing {
        MPolyRing::new(GaloisField::new(q).unwrap(), n)
    }

    #[test]
    fn grevlex_examples() {
        assert_eq!(grevlex_cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[0, 3], &[2, 0]), Ordering::Greater);
    }

    #[test]
    fn monomial_ideal_standard_basis() {
        let r = ring(2, 2);
        let (x, y) = (r.var(0), r.var(1));
        let gb = r.groebner(&[r.mul(&x, &x), r.mul(&x, &y), r.mul(&y, &y)]);
        assert_eq!(gb.len(), 3);
        let std = r.standard_monomials(&gb, 100).unwrap();
        assert_eq!(std, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn inconsistent_relations_give_unit_ideal() {
        let r = ring(3, 1);
        let x = r.var(0);
        // x and x + 1 generate the unit ideal.
        let gb = r.groebner(&[x.clone(), r.add(&x, &r.constant(1))]);
        assert_eq!(gb, vec![r.constant(1)]);
        assert_eq!(r.standard_monomials(&gb, 100).unwrap(), Vec::<Monomial>::new());
    }

    #[test]
    fn non_trivial_buchberger_step() {
        // (x^2 - y, x y - 1) over F_5: y^2 x = ... yields a zero-dimensional ideal of length 3.
        let r = ring(5, 2);
        let (x, y) = (r.var(0), r.var(1));
        let gb = r.groebner(&[r.sub(&r.mul(&x, &x), &y), r.sub(&r.mul(&x, &y), &r.constant(1))]);
        let std = r.standard_monomials(&gb, 100).unwrap();
        assert_eq!(std.len(), 3);
        for g in &gb {
            assert!(r.reduce(g, &gb).is_zero());
        }
    }

    #[test]
    fn infinite_dimensional_detected() {
        let r = ring(2, 2);
        let x = r.var(0);
        let gb = r.groebner(&[r.mul(&x, &x)]);
        assert!(r.standard_monomials(&gb, 100).is_none());
    }
}
