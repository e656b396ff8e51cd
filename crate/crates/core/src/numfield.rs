//! Number fields `L = Q[x]/(f)` and their subfields as rational subspaces.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{fmt_rational, Field, Rationals};
use crate::matrix::{determinant, in_span, intersect_spaces, row_space, solve, Matrix};
use crate::poly::{factor_over_q, Poly, PolyRing};

/// An element of a number field in the power basis `1, x, ..., x^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NFElement {
    coords: Vec<BigRational>,
}

impl NFElement {
    pub fn new(coords: Vec<BigRational>) -> Self {
        NFElement { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.coords
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| &self.coords[0])
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigRational, usize)> = self
            .coords
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), i))
            .collect();
        f.write_str(&format_terms(&terms, "x"))
    }
}

/// Formats `sum c_i * var^e_i` (terms already in display order) as canonical text.
pub(crate) fn format_terms(terms: &[(BigRational, usize)], var: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, e)) in terms.iter().enumerate() {
        let neg = c < &BigRational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if mono.is_empty() {
            out.push_str(&fmt_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", fmt_rational(&abs), mono));
        }
    }
    out
}

/// `L = Q[x]/(f)` for a monic irreducible `f`.
#[derive(Clone)]
pub struct NumberField {
    defining: Poly<BigRational>,
    n: usize,
    /// `x^(n+k)` reduced into the power basis, for `k = 0 .. n-1`.
    high_powers: Arc<Vec<Vec<BigRational>>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", crate::parse::format_polynomial(&self.defining))
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.defining == other.defining
    }
}

impl Eq for NumberField {}

/// Builds `Q[x]/(f)`, certifying that `f` is monic, separable and irreducible.
pub fn make_field(f: &Poly<BigRational>) -> Result<NumberField> {
    let ring = PolyRing::new(Rationals);
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::Invalid("defining polynomial must have degree at least 1".into()));
    }
    if !ring.is_monic(f) {
        return Err(Error::Invalid("defining polynomial must be monic".into()));
    }
    let text = crate::parse::format_polynomial(f);
    if !ring.is_separable(f) {
        return Err(Error::SeparableRequired(text));
    }
    let fac = factor_over_q(f)?;
    if fac.factors.len() != 1 {
        return Err(Error::NotAField(text));
    }
    Ok(NumberField::from_irreducible(f.clone()))
}

impl NumberField {
    /// Builds the field without certifying irreducibility.
    fn from_irreducible(defining: Poly<BigRational>) -> Self {
        let n = defining.degree().unwrap();
        let mut high = Vec::with_capacity(n);
        // x^n = -(f_0 + f_1 x + ... + f_(n-1) x^(n-1))
        let mut cur: Vec<BigRational> = defining.coeffs()[..n].iter().map(|c| -c).collect();
        for _ in 0..n {
            high.push(cur.clone());
            let top = cur[n - 1].clone();
            let mut next = vec![BigRational::zero(); n];
            for i in 1..n {
                next[i] = cur[i - 1].clone();
            }
            for (i, slot) in next.iter_mut().enumerate() {
                *slot = &*slot - &top * &defining.coeffs()[i];
            }
            cur = next;
        }
        NumberField { defining, n, high_powers: Arc::new(high) }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn defining_polynomial(&self) -> &Poly<BigRational> {
        &self.defining
    }

    /// The class of `x`.
    pub fn generator(&self) -> NFElement {
        if self.n == 1 {
            return NFElement::new(vec![-self.defining.coeffs()[0].clone()]);
        }
        let mut c = vec![BigRational::zero(); self.n];
        c[1] = BigRational::one();
        NFElement::new(c)
    }

    pub fn from_rational(&self, r: BigRational) -> NFElement {
        let mut c = vec![BigRational::zero(); self.n];
        c[0] = r;
        NFElement::new(c)
    }

    /// Reduces a rational polynomial in `x` modulo the defining polynomial.
    pub fn from_poly(&self, p: &Poly<BigRational>) -> NFElement {
        self.reduce(p.coeffs().to_vec())
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> NFElement {
        let n = self.n;
        if c.len() > 2 * n - 1 {
            let ring = PolyRing::new(Rationals);
            let r = ring.rem(&ring.from_coeffs(c), &self.defining);
            c = r.into_coeffs();
        }
        let mut out: Vec<BigRational> = vec![BigRational::zero(); n];
        for (i, v) in c.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if i < n {
                out[i] += v;
            } else {
                for (o, h) in out.iter_mut().zip(&self.high_powers[i - n]) {
                    *o += &v * h;
                }
            }
        }
        NFElement::new(out)
    }

    /// The element as a polynomial of degree `< n` in `X`.
    pub fn to_poly(&self, a: &NFElement) -> Poly<BigRational> {
        PolyRing::new(Rationals).from_coeffs(a.coords.clone())
    }

    /// Matrix of multiplication by `a` in the power basis (column `j` holds `a * x^j`).
    pub fn multiplication_matrix(&self, a: &NFElement) -> Matrix<BigRational> {
        let x = self.generator();
        let mut cols = Vec::with_capacity(self.n);
        let mut cur = a.clone();
        for _ in 0..self.n {
            cols.push(cur.coords.clone());
            cur = self.mul(&cur, &x);
        }
        Matrix::from_columns(self.n, &cols, BigRational::zero())
    }

    /// `N_{L/Q}(a)`.
    pub fn norm(&self, a: &NFElement) -> BigRational {
        determinant(&Rationals, &self.multiplication_matrix(a))
    }

    pub fn pow(&self, a: &NFElement, e: usize) -> NFElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Polynomial ring `L[X]`.
    pub fn poly_ring(&self) -> PolyRing<NumberField> {
        PolyRing::new(self.clone())
    }

    /// The defining polynomial with coefficients embedded in `L`.
    pub fn defining_over_self(&self) -> Poly<NFElement> {
        self.lift_poly(&self.defining)
    }

    /// Embeds a rational polynomial into `L[X]`.
    pub fn lift_poly(&self, p: &Poly<BigRational>) -> Poly<NFElement> {
        self.poly_ring()
            .from_coeffs(p.coeffs().iter().map(|c| self.from_rational(c.clone())).collect())
    }

    /// Evaluates a polynomial over `L` at an element of `L`.
    pub fn eval(&self, p: &Poly<NFElement>, a: &NFElement) -> NFElement {
        self.poly_ring().eval(p, a)
    }

    /// Canonical text of a polynomial in `L[X]`, coefficients written in `x`.
    pub fn format_poly(&self, p: &Poly<NFElement>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in p.coeffs().iter().enumerate().rev() {
            if self.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            let coeff = c.to_string();
            let simple = c.coords.iter().filter(|v| !v.is_zero()).count() == 1;
            let term = if mono.is_empty() {
                if simple { coeff } else { format!("({coeff})") }
            } else if self.is_one(c) {
                mono
            } else if *c == self.neg(&self.one()) {
                format!("-{mono}")
            } else if simple {
                format!("{coeff}*{mono}")
            } else {
                format!("({coeff})*{mono}")
            };
            parts.push(term);
        }
        let mut out = parts[0].clone();
        for t in &parts[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    }
}

impl Field for NumberField {
    type Elem = NFElement;

    fn zero(&self) -> NFElement {
        NFElement::new(vec![BigRational::zero(); self.n])
    }
    fn one(&self) -> NFElement {
        self.from_rational(BigRational::one())
    }
    fn add(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NFElement::new(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }
    fn sub(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NFElement::new(a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect())
    }
    fn mul(&self, a: &NFElement, b: &NFElement) -> NFElement {
        let n = self.n;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }
    fn neg(&self, a: &NFElement) -> NFElement {
        NFElement::new(a.coords.iter().map(|x| -x).collect())
    }
    fn inv(&self, a: &NFElement) -> Option<NFElement> {
        if self.is_zero(a) {
            return None;
        }
        let ring = PolyRing::new(Rationals);
        let (g, s, _) = ring.ext_gcd(&self.to_poly(a), &self.defining).ok()?;
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.from_poly(&s))
    }
    fn is_zero(&self, a: &NFElement) -> bool {
        a.coords.iter().all(Zero::is_zero)
    }
    fn from_int(&self, n: i64) -> NFElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Product of two elements, reduced modulo the defining polynomial.
pub fn nf_mul(field: &NumberField, a: &NFElement, b: &NFElement) -> NFElement {
    field.mul(a, b)
}

/// An intermediate field `Q ⊆ K ⊆ L`, stored as the reduced echelon basis of
/// its coordinate subspace together with the minimal polynomial of `x` over `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    basis: Vec<NFElement>,
    min_poly: Poly<NFElement>,
}

impl Subfield {
    pub fn basis(&self) -> &[NFElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Monic minimal polynomial of `x` over this subfield.
    pub fn min_poly(&self) -> &Poly<NFElement> {
        &self.min_poly
    }

    pub fn contains(&self, a: &NFElement) -> bool {
        in_span(&Rationals, &self.basis_rows(), a.coords())
    }

    pub fn is_subfield_of(&self, other: &Subfield) -> bool {
        self.dim() <= other.dim() && self.basis.iter().all(|b| other.contains(b))
    }

    pub(crate) fn basis_rows(&self) -> Vec<Vec<BigRational>> {
        self.basis.iter().map(|b| b.coords.clone()).collect()
    }

    /// Canonical order: dimension, then echelon basis lexicographically.
    pub fn canonical_cmp(&self, other: &Subfield) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| self.basis.cmp(&other.basis))
    }

    /// Builds a subfield from a spanning set, asserting that it contains 1 and
    /// is closed under multiplication.
    pub fn from_span(field: &NumberField, vectors: &[NFElement]) -> Result<Subfield> {
        let rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| v.coords.clone()).collect();
        let basis: Vec<NFElement> = row_space(&Rationals, field.degree(), &rows)
            .into_iter()
            .map(NFElement::new)
            .collect();
        let rows: Vec<Vec<BigRational>> = basis.iter().map(|b| b.coords.clone()).collect();
        if !in_span(&Rationals, &rows, field.one().coords()) {
            return Err(Error::Consistency("subspace does not contain 1".into()));
        }
        for a in &basis {
            for b in &basis {
                if !in_span(&Rationals, &rows, field.mul(a, b).coords()) {
                    return Err(Error::Consistency("subspace is not closed under multiplication".into()));
                }
            }
        }
        let min_poly = min_poly_for_basis(field, &basis);
        Ok(Subfield { basis, min_poly })
    }

    /// `Q` inside `L`.
    pub fn rationals(field: &NumberField) -> Subfield {
        Subfield::from_span(field, &[field.one()]).expect("Q is a subfield")
    }

    /// `L` itself.
    pub fn whole(field: &NumberField) -> Subfield {
        let basis: Vec<NFElement> = (0..field.degree()).map(|i| field.pow(&field.generator(), i)).collect();
        Subfield::from_span(field, &basis).expect("L is a subfield")
    }

    /// A short description: a single generator when one of the basis vectors
    /// (or a sum of two) generates the field, otherwise the basis.
    pub fn describe(&self, field: &NumberField) -> String {
        if self.dim() == 1 {
            return "Q".into();
        }
        let mut candidates: Vec<NFElement> = self.basis.clone();
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                candidates.push(field.add(&self.basis[i], &self.basis[j]));
            }
        }
        for c in candidates {
            if c.as_rational().is_some() {
                continue;
            }
            if subfield_generated(field, std::slice::from_ref(&c)).dim() == self.dim() {
                return format!("Q({c})");
            }
        }
        let parts: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        format!("span({})", parts.join(", "))
    }
}

/// Minimal polynomial of `x` over the field spanned by `basis`: the first `d`
/// for which `x^d` is a `K`-linear combination of `1, x, ..., x^(d-1)`.
fn min_poly_for_basis(field: &NumberField, basis: &[NFElement]) -> Poly<NFElement> {
    let ring = field.poly_ring();
    let x = field.generator();
    let n = field.degree();
    let mut powers = vec![field.one()];
    for d in 1..=n {
        let target = field.pow(&x, d);
        let mut cols = Vec::new();
        for p in powers.iter() {
            for b in basis {
                cols.push(field.mul(b, p).coords.clone());
            }
        }
        let m = Matrix::from_columns(n, &cols, BigRational::zero());
        if let Some(sol) = solve(&Rationals, &m, target.coords()) {
            let k = basis.len();
            let mut coeffs: Vec<NFElement> = (0..d)
                .map(|i| {
                    let mut c = field.zero();
                    for (j, b) in basis.iter().enumerate() {
                        let lam = &sol[i * k + j];
                        if !lam.is_zero() {
                            c = field.add(&c, &field.mul(&field.from_rational(lam.clone()), b));
                        }
                    }
                    field.neg(&c)
                })
                .collect();
            coeffs.push(field.one());
            return ring.from_coeffs(coeffs);
        }
        powers.push(field.mul(powers.last().unwrap(), &x));
    }
    unreachable!("x^n is always a rational combination of lower powers")
}

/// Minimal polynomial of `x` over `K`.
pub fn min_poly_over(field: &NumberField, k: &Subfield) -> Poly<NFElement> {
    min_poly_for_basis(field, k.basis())
}

/// Smallest subfield containing `gens`: adjoin pairwise products until the
/// dimension stops growing.
pub fn subfield_generated(field: &NumberField, gens: &[NFElement]) -> Subfield {
    let n = field.degree();
    let mut rows: Vec<Vec<BigRational>> = vec![field.one().coords.clone()];
    rows.extend(gens.iter().map(|g| g.coords.clone()));
    let mut basis = row_space(&Rationals, n, &rows);
    loop {
        let elems: Vec<NFElement> = basis.iter().cloned().map(NFElement::new).collect();
        let mut next = basis.clone();
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i..] {
                next.push(field.mul(a, b).coords.clone());
            }
        }
        let next = row_space(&Rationals, n, &next);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
    }
    let elems: Vec<NFElement> = basis.into_iter().map(NFElement::new).collect();
    Subfield::from_span(field, &elems).expect("generated subspace is a field")
}

/// `A ∩ B` by an exact kernel computation.
pub fn intersect_subfields(field: &NumberField, a: &Subfield, b: &Subfield) -> Subfield {
    let rows = intersect_spaces(&Rationals, field.degree(), &a.basis_rows(), &b.basis_rows());
    let elems: Vec<NFElement> = rows.into_iter().map(NFElement::new).collect();
    Subfield::from_span(field, &elems).expect("intersection of subfields is a subfield")
}

/// The subfield generated by the coefficients of a polynomial over `L`.
pub fn coefficient_field(field: &NumberField, p: &Poly<NFElement>) -> Subfield {
    subfield_generated(field, p.coeffs())
}
