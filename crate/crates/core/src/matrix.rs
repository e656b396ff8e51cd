//! Dense exact linear algebra over any [`Field`].
//!
//! Gaussian elimination always pivots on the first nonzero entry of a column,
//! so reduced echelon forms (and every subspace identity built on them) are
//! canonical.

use num_rational::BigRational;

use crate::field::{Field, Rationals};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type RationalMatrix = Matrix<BigRational>;

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows x cols");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, columns.len(), zero);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
}

impl<E: Clone> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
        for j in c..a.cols {
            let v = f.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..a.cols {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, pivots }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).rank()
}

/// Basis of the right null space, itself in reduced echelon form.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let e = rref(f, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (i, &p) in e.pivots.iter().enumerate() {
            v[p] = f.neg(e.matrix.get(i, free));
        }
        basis.push(v);
    }
    row_space(f, m.cols, &basis)
}

/// Canonical basis (nonzero rows of the reduced echelon form) of the span of `vectors`.
pub fn row_space<F: Field>(f: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let e = rref(f, &Matrix::from_rows(dim, vectors));
    (0..e.rank()).map(|i| e.matrix.row(i).to_vec()).collect()
}

/// Pivot column of each row of a reduced echelon basis.
pub fn pivot_columns<F: Field>(f: &F, basis: &[Vec<F::Elem>]) -> Vec<usize> {
    basis
        .iter()
        .map(|row| row.iter().position(|x| !f.is_zero(x)).expect("zero row in echelon basis"))
        .collect()
}

/// Reduces `v` against a reduced echelon basis; the result is zero iff `v` lies in the span.
pub fn reduce_vector<F: Field>(f: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = v.to_vec();
    for row in basis {
        let p = row.iter().position(|x| !f.is_zero(x)).expect("zero row in echelon basis");
        if f.is_zero(&out[p]) {
            continue;
        }
        let c = out[p].clone();
        for (o, r) in out.iter_mut().zip(row) {
            *o = f.sub(o, &f.mul(&c, r));
        }
    }
    out
}

pub fn in_span<F: Field>(f: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    reduce_vector(f, basis, v).iter().all(|x| f.is_zero(x))
}

/// Coordinates of `v` with respect to a reduced echelon basis, assuming `v` is in the span.
pub fn coordinates<F: Field>(f: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    pivot_columns(f, basis).into_iter().map(|p| v[p].clone()).collect()
}

/// Canonical basis of the intersection of two spans.
pub fn intersect_spaces<F: Field>(
    f: &F,
    dim: usize,
    a: &[Vec<F::Elem>],
    b: &[Vec<F::Elem>],
) -> Vec<Vec<F::Elem>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vec<F::Elem>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| f.neg(x)).collect::<Vec<_>>()));
    let m = Matrix::from_columns(dim, &cols, f.zero());
    let combos = kernel(f, &m);
    let vectors: Vec<Vec<F::Elem>> = combos
        .iter()
        .map(|c| {
            let mut v = vec![f.zero(); dim];
            for (coef, basis_vec) in c.iter().zip(a) {
                if f.is_zero(coef) {
                    continue;
                }
                for (o, x) in v.iter_mut().zip(basis_vec) {
                    *o = f.add(o, &f.mul(coef, x));
                }
            }
            v
        })
        .collect();
    row_space(f, dim, &vectors)
}

/// Solves `m * x = rhs`, returning one solution if the system is consistent.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(rhs.len(), m.rows);
    let mut aug = Matrix::filled(m.rows, m.cols + 1, f.zero());
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, rhs[i].clone());
    }
    let e = rref(f, &aug);
    if e.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (i, &p) in e.pivots.iter().enumerate() {
        x[p] = e.matrix.get(i, m.cols).clone();
    }
    Some(x)
}

/// Determinant by elimination.
pub fn determinant<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
            return f.zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = f.neg(&det);
        }
        let piv = a.get(c, c).clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv).expect("nonzero pivot");
        for i in c + 1..n {
            if f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = f.mul(a.get(i, c), &inv);
            for j in c..n {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

pub fn mat_vec<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
        })
        .collect()
}

/// Right null space of a rational matrix, as a reduced echelon basis.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    kernel(&Rationals, m)
}

/// Unique reduced row echelon form of a rational matrix.
pub fn echelon_reduce(m: &RationalMatrix) -> RationalMatrix {
    rref(&Rationals, m).matrix
}
