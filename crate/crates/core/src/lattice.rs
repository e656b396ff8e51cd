//! Finite posets (covering relation, longest chains) and the lattice of
//! intermediate fields built from principal subfields.

use serde::Serialize;

use crate::arith::factor_small;
use crate::check::Check;
use crate::error::{Error, Result};
use crate::numfield::{intersect_subfields, NumberField, Subfield};
use crate::principal::{index_set_i, k_g_of_product, PrincipalSubfieldSet};

/// Hard limit on the number of lattice nodes produced by intersection closure.
pub const MAX_LATTICE_NODES: usize = 4096;

/// A finite poset with a unique bottom and top, given by its order relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poset {
    /// `le[i][j]` iff node `i` ≤ node `j`.
    le: Vec<Vec<bool>>,
    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    covers: Vec<(usize, usize)>,
}

impl Poset {
    pub fn from_relation(le: Vec<Vec<bool>>) -> Poset {
        let n = le.len();
        let lt = |i: usize, j: usize| i != j && le[i][j];
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    covers.push((i, j));
                }
            }
        }
        Poset { le, covers }
    }

    pub fn len(&self) -> usize {
        self.le.len()
    }

    pub fn is_empty(&self) -> bool {
        self.le.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.le[i][j]))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.le[j][i]))
    }

    /// Number of edges in a longest chain (0 for a single node).
    pub fn length(&self) -> usize {
        let n = self.len();
        // Longest path ending at each node, processed in a linear extension.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.le[j][i]).count());
        let mut best = vec![0usize; n];
        for &j in &order {
            for &(a, b) in &self.covers {
                if b == j {
                    best[j] = best[j].max(best[a] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Every node strictly between bottom and top covers the bottom and is covered by the top.
    pub fn middle_nodes_are_atoms_and_coatoms(&self) -> bool {
        let (Some(b), Some(t)) = (self.bottom(), self.top()) else {
            return false;
        };
        (0..self.len())
            .filter(|&i| i != b && i != t)
            .all(|i| self.covers.contains(&(b, i)) && self.covers.contains(&(i, t)))
    }

    /// Pairs of incomparable nodes.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.le[i][j] && !self.le[j][i] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Reflexive-transitive closure of the covering relation equals the order.
    pub fn covers_generate_order(&self) -> bool {
        let n = self.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &self.covers {
            reach[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        reach == self.le
    }
}

/// The lattice `[Q, L]` of intermediate fields.
#[derive(Clone, Debug)]
pub struct FieldLattice {
    /// Sorted by dimension then basis; node 0 is `Q`, the last node is `L`.
    pub nodes: Vec<Subfield>,
    pub poset: Poset,
    pub t: usize,
}

impl FieldLattice {
    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    pub fn length(&self) -> usize {
        self.poset.length()
    }

    pub fn index_of(&self, k: &Subfield) -> Option<usize> {
        self.nodes.iter().position(|x| x == k)
    }
}

/// Closes `E ∪ {Q, L}` under pairwise intersection.
pub fn build_lattice(ps: &PrincipalSubfieldSet) -> Result<FieldLattice> {
    let field = ps.field();
    let mut nodes: Vec<Subfield> = vec![Subfield::rationals(field), Subfield::whole(field)];
    for k in &ps.e {
        if !nodes.contains(k) {
            nodes.push(k.clone());
        }
    }
    let mut frontier: Vec<usize> = (0..nodes.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for j in 0..nodes.len() {
                let k = intersect_subfields(field, &nodes[i], &nodes[j]);
                if !nodes.contains(&k) {
                    nodes.push(k);
                    next.push(nodes.len() - 1);
                    if nodes.len() > MAX_LATTICE_NODES {
                        return Err(Error::TooLarge {
                            what: "intermediate field lattice".into(),
                            needed: nodes.len() as u128,
                            cap: MAX_LATTICE_NODES as u128,
                        });
                    }
                }
            }
        }
        frontier = next;
    }
    nodes.sort_by(|a, b| a.canonical_cmp(b));
    let n = nodes.len();
    let le = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| nodes[j].dim() % nodes[i].dim() == 0 && nodes[i].is_subfield_of(&nodes[j]))
                .collect()
        })
        .collect();
    Ok(FieldLattice { nodes, poset: Poset::from_relation(le), t: ps.t() })
}

/// `t = 1`, cross-checked against a two-node lattice by the caller.
pub fn is_minimal_extension(ps: &PrincipalSubfieldSet) -> bool {
    ps.field().degree() > 1 && ps.t() == 1
}

pub fn lattice_length(lat: &FieldLattice) -> usize {
    lat.length()
}

/// Verdict of the principal-subfield length-two criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthTwoVerdict {
    pub holds: bool,
    pub k_in_e: bool,
    /// `t + 1` when `Q` is a principal subfield, `t + 2` otherwise.
    pub predicted_count: Option<usize>,
}

/// `t > 1` and distinct principal subfields pairwise intersect in `Q`.
pub fn is_length_two(ps: &PrincipalSubfieldSet) -> LengthTwoVerdict {
    let field = ps.field();
    let t = ps.t();
    let pairwise = (0..t).all(|a| (a + 1..t).all(|b| intersect_subfields(field, &ps.e[a], &ps.e[b]).dim() == 1));
    let holds = t > 1 && pairwise;
    let k_in_e = ps.k_in_e();
    LengthTwoVerdict {
        holds,
        k_in_e,
        predicted_count: holds.then_some(if k_in_e { t + 1 } else { t + 2 }),
    }
}

/// Outcome of the check for Galois extensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisCheck {
    pub degree: usize,
    /// `n` is a product of exactly two primes.
    pub two_primes: bool,
    pub length: usize,
    pub count: usize,
    pub checks: Vec<Check>,
}

/// For Galois `L` (the defining polynomial splits into linear factors over `L`):
/// length 2 when `n` is a product of two primes, and `|[Q,L]| ≤ n + 1` at length 2.
pub fn galois_length_two_check(ps: &PrincipalSubfieldSet, lat: &FieldLattice) -> Result<GaloisCheck> {
    let n = ps.field().degree();
    if ps.system.factors.iter().any(|f| f.degree() != Some(1)) {
        return Err(Error::NotGalois);
    }
    let two_primes = factor_small(n as u64).iter().map(|(_, e)| *e as usize).sum::<usize>() == 2;
    let length = lat.length();
    let count = lat.count();
    let mut checks = Vec::new();
    if two_primes {
        checks.push(Check::new("degree a product of two primes gives length 2", length == 2));
    }
    if length == 2 {
        checks.push(Check::new("at most n + 1 intermediate fields", count <= n + 1));
    }
    Ok(GaloisCheck { degree: n, two_primes, length, count, checks })
}

/// Invariants relating the lattice to the principal subfields.
pub fn verify_lattice(ps: &PrincipalSubfieldSet, lat: &FieldLattice) -> Vec<Check> {
    let field = ps.field();
    let sys = &ps.system;
    let n = field.degree();
    let poset = &lat.poset;
    let last = lat.count() - 1;
    let length = lat.length();
    let verdict = is_length_two(ps);
    let mut out = vec![
        Check::new("bottom is Q and top is L", lat.nodes[0].dim() == 1 && lat.nodes[last].dim() == n),
        Check::new("covering relation generates the order", poset.covers_generate_order()),
        Check::new("principal-subfield criterion agrees with the longest chain", verdict.holds == (length == 2)),
        Check::new(
            "minimality from principal subfields agrees with a two-node lattice",
            is_minimal_extension(ps) == (n > 1 && lat.count() == 2),
        ),
    ];
    let closed = lat.nodes.iter().all(|a| {
        lat.nodes
            .iter()
            .all(|b| lat.index_of(&intersect_subfields(field, a, b)).is_some())
    });
    out.push(Check::new("nodes closed under intersection", closed));
    let intersections = lat.nodes[..last].iter().all(|k| {
        let above: Vec<&Subfield> = ps.e.iter().filter(|e| k.is_subfield_of(e)).collect();
        let meet = above
            .iter()
            .fold(Subfield::whole(field), |acc, e| intersect_subfields(field, &acc, e));
        !above.is_empty() && meet == *k
    });
    out.push(Check::new("every proper node is the intersection of the principal subfields containing it", intersections));
    let identity = lat
        .nodes
        .iter()
        .all(|k| sys.product(index_set_i(k, sys)) == *k.min_poly());
    out.push(Check::new("minimal polynomial equals (X - x) times the factors indexed by I(K)", identity));
    let coatoms = (0..sys.r()).all(|a| {
        let k = k_g_of_product(a, sys);
        k.dim() == n || lat.index_of(&k).is_some_and(|i| poset.covers().contains(&(i, last)))
    });
    out.push(Check::new("proper coefficient fields of (X - x) f_a are maximal", coatoms));
    if length == 2 {
        out.push(Check::new(
            "at length 2 every middle node is an atom and a coatom",
            poset.middle_nodes_are_atoms_and_coatoms(),
        ));
        out.push(Check::new(
            "at length 2 the node count is t + 1 or t + 2",
            verdict.predicted_count == Some(lat.count()),
        ));
        out.push(Check::new("at length 2 the node count is at most n + 1", lat.count() <= n + 1));
    }
    let all_coatoms = ps
        .e
        .iter()
        .all(|e| lat.index_of(e).is_some_and(|i| poset.covers().contains(&(i, last))));
    if all_coatoms {
        let eq = (0..ps.t()).all(|b| index_set_i(&ps.e[b], sys) == ps.gamma[b]);
        out.push(Check::new("when every E_b is maximal, I(E_b) equals Gamma(b)", eq));
    }
    out
}

/// Short description of every node, in lattice order.
pub fn describe_nodes(field: &NumberField, lat: &FieldLattice) -> Vec<String> {
    lat.nodes.iter().map(|k| k.describe(field)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::make_field;
    use crate::parse::parse_polynomial;
    use crate::principal::compute_principal_subfields;

    fn analyse(f: &str) -> (PrincipalSubfieldSet, FieldLattice) {
        let l = make_field(&parse_polynomial(f).unwrap()).unwrap();
        let ps = compute_principal_subfields(&l).unwrap();
        let lat = build_lattice(&ps).unwrap();
        (ps, lat)
    }

    #[test]
    fn poset_basics() {
        // Diamond: 0 < 1, 2 < 3.
        let le = vec![
            vec![true, true, true, true],
            vec![false, true, false, true],
            vec![false, false, true, true],
            vec![false, false, false, true],
        ];
        let p = Poset::from_relation(le);
        assert_eq!(p.covers(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(p.length(), 2);
        assert_eq!(p.incomparable_pairs(), vec![(1, 2)]);
        assert!(p.middle_nodes_are_atoms_and_coatoms());
        assert!(p.covers_generate_order());
    }

    #[test]
    fn lattice_examples() {
        let (ps, lat) = analyse("X^4 - 2");
        assert_eq!((lat.count(), lat.length()), (3, 2));
        let v = is_length_two(&ps);
        assert!(v.holds && v.k_in_e);
        assert_eq!(v.predicted_count, Some(3));

        let (ps, lat) = analyse("X^4 - 10*X^2 + 1");
        assert_eq!((lat.count(), lat.length()), (5, 2));
        let v = is_length_two(&ps);
        assert!(v.holds && !v.k_in_e);
        assert_eq!(v.predicted_count, Some(5));
        let g = galois_length_two_check(&ps, &lat).unwrap();
        assert!(g.two_primes && g.checks.iter().all(|c| c.holds));

        let (ps, lat) = analyse("X^6 + 108");
        assert_eq!((lat.count(), lat.length()), (6, 2));
        let g = galois_length_two_check(&ps, &lat).unwrap();
        assert!(g.checks.iter().all(|c| c.holds));
    }

    #[test]
    fn minimal_and_non_galois() {
        let (ps, lat) = analyse("X^2 - 2");
        assert!(is_minimal_extension(&ps));
        assert_eq!(lattice_length(&lat), 1);
        assert!(!is_length_two(&ps).holds);
        let g = galois_length_two_check(&ps, &lat).unwrap();
        assert!(!g.two_primes);

        let (ps, lat) = analyse("X^4 - 2");
        assert_eq!(galois_length_two_check(&ps, &lat), Err(Error::NotGalois));
    }

    #[test]
    fn cyclotomic_of_degree_eight_has_length_three() {
        // Q(zeta_16) has Galois group C2 x C4; its subfield chain has length 3.
        let (ps, lat) = analyse("X^8 + 1");
        assert_eq!(lat.length(), 3);
        assert!(!is_length_two(&ps).holds);
        assert!(verify_lattice(&ps, &lat).iter().all(|c| c.holds));
    }

    #[test]
    fn lattice_invariants_hold() {
        for f in ["X^4 - 2", "X^4 - 10*X^2 + 1", "X^6 + 108", "X^3 - 3*X + 1", "X^2 - 2", "X^4 + 1"] {
            let (ps, lat) = analyse(f);
            let bad: Vec<_> = verify_lattice(&ps, &lat).into_iter().filter(|c| !c.holds).collect();
            assert!(bad.is_empty(), "{f}: {bad:?}");
        }
    }
}
