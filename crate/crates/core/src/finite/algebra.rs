//! Commutative algebras over `F_q` given by structure constants, and
//! subspaces of them held as reduced echelon bases.

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, GaloisField};
use crate::matrix::{self, Matrix};

/// Coordinate vector with respect to the algebra basis.
pub type Vector = Vec<u32>;

/// Reduced echelon basis of an `F_q`-subspace.
pub type Space = Vec<Vector>;

#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: GaloisField,
    dim: usize,
    /// `table[i * dim + j]` is the product of basis elements `i` and `j`.
    table: Vec<Vector>,
    unit: Vector,
    names: Vec<String>,
}

impl FiniteAlgebra {
    /// Validates commutativity, associativity on basis triples and the unit.
    pub fn new(field: GaloisField, table: Vec<Vector>, unit: Vector, names: Vec<String>) -> Result<Self> {
        let dim = unit.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("the algebra has dimension 0".into()));
        }
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) || names.len() != dim {
            return Err(Error::InvalidAlgebra(format!("multiplication table is not {dim}x{dim}")));
        }
        let q = field.order() as u32;
        if table.iter().chain([&unit]).flatten().any(|&c| c >= q) {
            return Err(Error::InvalidAlgebra(format!("coefficient outside F_{q}")));
        }
        let a = FiniteAlgebra { field, dim, table, unit, names };
        for i in 0..dim {
            for j in 0..dim {
                if a.table[i * dim + j] != a.table[j * dim + i] {
                    return Err(Error::InvalidAlgebra(format!("not commutative: basis elements {i}, {j}")));
                }
            }
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    let left = a.mul(&a.table[i * dim + j], &a.basis_vector(k));
                    let right = a.mul(&a.basis_vector(i), &a.table[j * dim + k]);
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative: basis elements {i}, {j}, {k}"
                        )));
                    }
                }
            }
        }
        for i in 0..dim {
            if a.mul(&a.unit, &a.basis_vector(i)) != a.basis_vector(i) {
                return Err(Error::InvalidAlgebra("unit does not act as the identity".into()));
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vector] {
        &self.table
    }

    pub fn zero(&self) -> Vector {
        vec![0; self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// The whole algebra as a space.
    pub fn full(&self) -> Space {
        (0..self.dim).map(|i| self.basis_vector(i)).collect()
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vector {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vector {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Vector {
        a.iter().map(|x| self.field.mul(&c, x)).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vector {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y == 0 {
                    continue;
                }
                let c = f.mul(x, y);
                for (o, t) in out.iter_mut().zip(&self.table[i * self.dim + j]) {
                    if *t != 0 {
                        *o = f.add(o, &f.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vector {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn span(&self, vectors: &[Vector]) -> Space {
        matrix::row_space(&self.field, self.dim, vectors)
    }

    pub fn contains(&self, space: &[Vector], v: &[u32]) -> bool {
        matrix::in_span(&self.field, space, v)
    }

    pub fn is_subspace(&self, a: &[Vector], b: &[Vector]) -> bool {
        a.iter().all(|v| self.contains(b, v))
    }

    pub fn sum(&self, a: &[Vector], b: &[Vector]) -> Space {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        self.span(&all)
    }

    pub fn intersect(&self, a: &[Vector], b: &[Vector]) -> Space {
        matrix::intersect_spaces(&self.field, self.dim, a, b)
    }

    /// Span of all products `a_i b_j`.
    pub fn product_space(&self, a: &[Vector], b: &[Vector]) -> Space {
        let mut prods = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                prods.push(self.mul(x, y));
            }
        }
        self.span(&prods)
    }

    /// Contains 1 and is closed under multiplication.
    pub fn is_subalgebra(&self, space: &[Vector]) -> bool {
        if !self.contains(space, &self.unit) {
            return false;
        }
        for (i, x) in space.iter().enumerate() {
            for y in &space[i..] {
                if !self.contains(space, &self.mul(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest subalgebra containing `gens`.
    pub fn subalgebra_generated(&self, gens: &[Vector]) -> Space {
        let mut all = gens.to_vec();
        all.push(self.unit.clone());
        let mut space = self.span(&all);
        loop {
            let next = self.sum(&space, &self.product_space(&space, &space));
            if next.len() == space.len() {
                return space;
            }
            space = next;
        }
    }

    /// Ideal of the subalgebra `ring` generated by `gens` (which must lie in `ring`).
    pub fn ideal_generated(&self, ring: &[Vector], gens: &[Vector]) -> Space {
        self.product_space(ring, gens)
    }

    /// `I` is an ideal of `ring`: a subspace of it absorbing multiplication.
    pub fn is_ideal(&self, ring: &[Vector], ideal: &[Vector]) -> bool {
        self.is_subspace(ideal, ring)
            && ring.iter().all(|r| ideal.iter().all(|x| self.contains(ideal, &self.mul(r, x))))
    }

    /// `{ Σ c_i basis_i : Σ c_i images_i = 0 }`, the kernel of a linear map given on a basis.
    pub fn linear_kernel(&self, basis: &[Vector], images: &[Vector]) -> Space {
        if basis.is_empty() {
            return Vec::new();
        }
        let rows = images.first().map_or(0, |v| v.len());
        let m = Matrix::from_columns(rows, images, 0u32);
        let combos = matrix::kernel(&self.field, &m);
        let vectors: Vec<Vector> = combos.iter().map(|c| self.combine(basis, c)).collect();
        self.span(&vectors)
    }

    /// `Σ c_i basis_i`.
    pub fn combine(&self, basis: &[Vector], coeffs: &[u32]) -> Vector {
        let mut v = self.zero();
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                v = self.add(&v, &self.scale(*c, b));
            }
        }
        v
    }

    /// Number of elements of a space of the given dimension, if it fits in `u128`.
    pub fn size_of(&self, dim: usize) -> Option<u128> {
        (self.field.order() as u128).checked_pow(dim as u32)
    }

    /// Every element of the span of an echelon basis, in a fixed order.
    pub fn elements(&self, space: &[Vector]) -> Elements<'_> {
        Elements { alg: self, basis: space.to_vec(), digits: vec![0; space.len()], done: false }
    }

    /// Subalgebra `space` as an algebra in its own right, coordinates read at the pivots.
    pub fn restrict(&self, space: &[Vector]) -> Result<FiniteAlgebra> {
        self.restrict_with_unit(space, &self.unit.clone())
    }

    /// A multiplicatively closed space with its own identity `unit`, such as `A e`
    /// for an idempotent `e`, as an algebra.
    pub fn restrict_with_unit(&self, space: &[Vector], unit: &[u32]) -> Result<FiniteAlgebra> {
        let mut table = Vec::with_capacity(space.len() * space.len());
        for x in space {
            for y in space {
                table.push(self.coords_in(space, &self.mul(x, y)));
            }
        }
        let names = space.iter().map(|v| self.format(v)).collect();
        FiniteAlgebra::new(self.field.clone(), table, self.coords_in(space, unit), names)
    }

    /// Coordinates of `v` (assumed to lie in `space`) with respect to its echelon basis.
    pub fn coords_in(&self, space: &[Vector], v: &[u32]) -> Vector {
        matrix::coordinates(&self.field, space, v)
    }

    /// Image of `v` in `A / I`, in the coordinates used by [`FiniteAlgebra::quotient`].
    pub fn quotient_coords(&self, ideal: &[Vector], v: &[u32]) -> Vector {
        let pivots = matrix::pivot_columns(&self.field, ideal);
        let r = matrix::reduce_vector(&self.field, ideal, v);
        (0..self.dim).filter(|j| !pivots.contains(j)).map(|j| r[j]).collect()
    }

    /// `A / I` for an ideal `I` of the whole algebra, with basis the non-pivot coordinates.
    pub fn quotient(&self, ideal: &[Vector]) -> Result<FiniteAlgebra> {
        let pivots = matrix::pivot_columns(&self.field, ideal);
        let free: Vec<usize> = (0..self.dim).filter(|j| !pivots.contains(j)).collect();
        let coords = |v: &[u32]| self.quotient_coords(ideal, v);
        let mut table = Vec::with_capacity(free.len() * free.len());
        for &i in &free {
            for &j in &free {
                table.push(coords(&self.table[i * self.dim + j]));
            }
        }
        let names = free.iter().map(|&j| self.names[j].clone()).collect();
        FiniteAlgebra::new(self.field.clone(), table, coords(&self.unit), names)
    }

    /// Human-readable element in terms of the basis names, e.g. `x+a*y`.
    pub fn format(&self, v: &[u32]) -> String {
        let mut terms = Vec::new();
        for (c, name) in v.iter().zip(&self.names) {
            if *c == 0 {
                continue;
            }
            let coef = self.field.format(*c);
            terms.push(match (*c, name.as_str()) {
                (_, "1") => coef,
                (1, _) => name.clone(),
                _ if coef.contains('+') => format!("({coef})*{name}"),
                _ => format!("{coef}*{name}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Short description of a space by its basis, e.g. `<1, x>`.
    pub fn describe(&self, space: &[Vector]) -> String {
        let parts: Vec<String> = space.iter().map(|v| self.format(v)).collect();
        format!("<{}>", parts.join(", "))
    }
}

/// Iterator over all `F_q`-combinations of a basis.
pub struct Elements<'a> {
    alg: &'a FiniteAlgebra,
    basis: Vec<Vector>,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        if self.done {
            return None;
        }
        let v = self.alg.combine(&self.basis, &self.digits);
        let q = self.alg.field.order() as u32;
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < q {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `F_2[x]/(x^2)` with basis `1, x`.
    fn dual_numbers() -> FiniteAlgebra {
        let f = GaloisField::new(2).unwrap();
        let table = vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]];
        FiniteAlgebra::new(f, table, vec![1, 0], vec!["1".into(), "x".into()]).unwrap()
    }

    #[test]
    fn dual_number_arithmetic() {
        let a = dual_numbers();
        let x = a.basis_vector(1);
        assert!(a.is_zero(&a.mul(&x, &x)));
        let one_plus_x = a.add(a.unit(), &x);
        assert_eq!(a.pow(&one_plus_x, 2), *a.unit());
        assert_eq!(a.format(&one_plus_x), "1 + x");
        assert_eq!(a.elements(&a.full()).count(), 4);
    }

    #[test]
    fn rejects_bad_tables() {
        let f = GaloisField::new(2).unwrap();
        let names = vec!["1".to_string(), "x".to_string()];
        // x * 1 = 0 breaks the unit.
        let table = vec![vec![1, 0], vec![0, 1], vec![0, 0], vec![0, 0]];
        assert!(matches!(FiniteAlgebra::new(f.clone(), table, vec![1, 0], names.clone()), Err(Error::InvalidAlgebra(_))));
        let table = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteAlgebra::new(f, table, vec![1, 0], names).is_err());
    }

    #[test]
    fn non_associative_table_rejected() {
        // basis 1, u, v with u*u = v, v*v = u, u*v = 0 is not associative.
        let f = GaloisField::new(3).unwrap();
        let e = |i: usize| {
            let mut v = vec![0, 0, 0];
            v[i] = 1;
            v
        };
        let z = vec![0, 0, 0];
        let table = vec![e(0), e(1), e(2), e(1), e(2), z.clone(), e(2), z, e(1)];
        let names = vec!["1".into(), "u".into(), "v".into()];
        let err = FiniteAlgebra::new(f, table, e(0), names).unwrap_err();
        assert!(err.to_string().contains("not associative"));
    }

    #[test]
    fn restriction_and_quotient() {
        let a = dual_numbers();
        let ideal = a.span(&[a.basis_vector(1)]);
        assert!(a.is_ideal(&a.full(), &ideal));
        let quot = a.quotient(&ideal).unwrap();
        assert_eq!(quot.dim(), 1);
        let sub = a.restrict(&a.span(&[a.unit().clone()])).unwrap();
        assert_eq!(sub.dim(), 1);
        assert_eq!(a.subalgebra_generated(&[a.basis_vector(1)]).len(), 2);
    }
}
