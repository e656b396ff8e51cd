//! Brute-force enumeration of the subalgebras between `R` and `S`.

use super::algebra::{FiniteAlgebra, Space, Vector};
use super::{enumeration_cap, within_cap};
use crate::error::Result;
use crate::field::FiniteField;
use crate::lattice::Poset;
use crate::matrix::pivot_columns;

/// The interval `[R, S]`: node 0 is `R`, the last node is `S`.
#[derive(Clone, Debug)]
pub struct SubalgebraLattice {
    /// Sorted by dimension, then by basis.
    pub nodes: Vec<Space>,
    pub poset: Poset,
    /// Number of candidate subspaces examined.
    pub candidates: u128,
}

impl SubalgebraLattice {
    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    /// Longest chain length.
    pub fn length(&self) -> usize {
        self.poset.length()
    }

    pub fn index_of(&self, space: &[Vector]) -> Option<usize> {
        self.nodes.iter().position(|n| n.as_slice() == space)
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`, if it fits.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow((n - i) as u32)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow((i + 1) as u32)? - 1)?;
    }
    Some(num / den)
}

/// Total number of subspaces of `F_q^n`.
pub fn subspace_count(n: usize, q: u128) -> Option<u128> {
    (0..=n).try_fold(0u128, |acc, k| acc.checked_add(gaussian_binomial(n, k, q)?))
}

/// Calls `visit` with every reduced echelon basis of a subspace of `F_q^n`.
fn for_each_subspace<F: FiniteField<Elem = u32>>(f: &F, n: usize, visit: &mut dyn FnMut(&[Vec<u32>])) {
    for k in 0..=n {
        let mut pivots = Vec::with_capacity(k);
        choose(n, k, 0, &mut pivots, &mut |piv| {
            // Free entries: row i, column j > piv[i] that is not a pivot.
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| ((piv[i] + 1)..n).filter(|j| !piv.contains(j)).map(move |j| (i, j)))
                .collect();
            let q = f.order() as u32;
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut rows = vec![vec![f.zero(); n]; k];
                for (i, &p) in piv.iter().enumerate() {
                    rows[i][p] = f.one();
                }
                for (&(i, j), &d) in free.iter().zip(&digits) {
                    rows[i][j] = f.element(d as u64);
                }
                visit(&rows);
                let mut t = 0;
                loop {
                    if t == digits.len() {
                        return;
                    }
                    digits[t] += 1;
                    if digits[t] < q {
                        break;
                    }
                    digits[t] = 0;
                    t += 1;
                }
            }
        });
    }
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for i in start..n {
        cur.push(i);
        choose(n, k, i + 1, cur, visit);
        cur.pop();
    }
}

/// All subalgebras `T` with `R ⊆ T ⊆ S`, found by running over every subspace of
/// a complement of `R` and keeping those whose sum with `R` is multiplicatively closed.
pub fn enumerate_subalgebras(a: &FiniteAlgebra, r: &[Vector]) -> Result<SubalgebraLattice> {
    enumerate_subalgebras_capped(a, r, enumeration_cap())
}

/// [`enumerate_subalgebras`] with an explicit candidate cap.
pub fn enumerate_subalgebras_capped(a: &FiniteAlgebra, r: &[Vector], cap: u128) -> Result<SubalgebraLattice> {
    let f = a.field();
    let r_pivots = pivot_columns(f, r);
    let complement: Vec<usize> = (0..a.dim()).filter(|j| !r_pivots.contains(j)).collect();
    let needed = subspace_count(complement.len(), f.order() as u128);
    within_cap("subalgebra enumeration", needed, cap)?;
    let mut nodes: Vec<Space> = Vec::new();
    for_each_subspace(f, complement.len(), &mut |rows| {
        let mut basis: Vec<Vector> = r.to_vec();
        let extra: Vec<Vector> = rows
            .iter()
            .map(|row| {
                let mut v = a.zero();
                for (&c, &x) in complement.iter().zip(row) {
                    v[c] = x;
                }
                v
            })
            .collect();
        basis.extend(extra.iter().cloned());
        let space = a.span(&basis);
        let closed = extra.iter().enumerate().all(|(i, w)| {
            r.iter().all(|x| a.contains(&space, &a.mul(x, w)))
                && extra[i..].iter().all(|y| a.contains(&space, &a.mul(w, y)))
        });
        if closed {
            nodes.push(space);
        }
    });
    nodes.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let n = nodes.len();
    let le: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i == j || a.is_subspace(&nodes[i], &nodes[j])).collect()).collect();
    Ok(SubalgebraLattice { nodes, poset: Poset::from_relation(le), candidates: needed.unwrap_or(0) })
}
