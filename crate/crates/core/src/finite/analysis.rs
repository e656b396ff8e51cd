//! Ideals and closures of an extension `R ⊆ S` of finite algebras: nilradical,
//! maximal ideals via idempotents, conductor, support, crucial ideal,
//! seminormalization, t-closure and the type of a minimal extension.

use serde::Serialize;

use super::algebra::{FiniteAlgebra, Space, Vector};
use super::enumerate::{enumerate_subalgebras, SubalgebraLattice};
use super::{enumeration_cap, within_cap};
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::matrix::{self, Matrix};

/// A maximal ideal of a subalgebra `B` with its primitive idempotent `e`
/// (the localization at the ideal is `B e`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalIdeal {
    pub ideal: Space,
    pub idempotent: Vector,
    /// `dim_{F_q}` of the residue field.
    pub residue_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalType {
    Ramified,
    Decomposed,
    Inert,
    NotMinimal,
}

impl MinimalType {
    pub fn as_str(&self) -> &'static str {
        match self {
            MinimalType::Ramified => "ramified",
            MinimalType::Decomposed => "decomposed",
            MinimalType::Inert => "inert",
            MinimalType::NotMinimal => "not-minimal",
        }
    }
}

/// Image of each basis vector under `x ↦ x^e`.
fn power_images(a: &FiniteAlgebra, ring: &[Vector], e: u64) -> Vec<Vector> {
    ring.iter().map(|b| a.pow(b, e)).collect()
}

/// Nilpotent elements of the subalgebra `ring`: the kernel of the `F_q`-linear
/// map `x ↦ x^(q^m)` with `q^m ≥ dim`.
pub fn nilradical(a: &FiniteAlgebra, ring: &[Vector]) -> Space {
    let q = a.field().order();
    let mut e = q;
    while (e as usize) < ring.len() {
        e *= q;
    }
    a.linear_kernel(ring, &power_images(a, ring, e))
}

/// `{x ∈ ring : x^q = x}`, a split semisimple subalgebra `F_q^m` holding every idempotent.
fn frobenius_fixed(a: &FiniteAlgebra, ring: &[Vector]) -> Space {
    let q = a.field().order();
    let images: Vec<Vector> = ring.iter().map(|b| a.sub(&a.pow(b, q), b)).collect();
    a.linear_kernel(ring, &images)
}

/// Primitive idempotents of `ring`, found by searching the Frobenius-fixed subalgebra.
pub fn primitive_idempotents(a: &FiniteAlgebra, ring: &[Vector]) -> Result<Vec<Vector>> {
    let fixed = frobenius_fixed(a, ring);
    within_cap("idempotent search", a.size_of(fixed.len()), enumeration_cap())?;
    let mut out: Vec<Vector> = a
        .elements(&fixed)
        .filter(|e| !a.is_zero(e) && a.mul(e, e) == *e && a.product_space(&fixed, &[e.clone()]).len() == 1)
        .collect();
    out.sort();
    let total = out.iter().fold(a.zero(), |acc, e| a.add(&acc, e));
    if total != *a.unit() {
        return Err(Error::Consistency("primitive idempotents do not sum to 1".into()));
    }
    Ok(out)
}

/// All maximal ideals of the subalgebra `ring`: `M_i = N + B(1 - e_i)`.
pub fn maximal_ideals(a: &FiniteAlgebra, ring: &[Vector]) -> Result<Vec<MaximalIdeal>> {
    let n = nilradical(a, ring);
    let idems = primitive_idempotents(a, ring)?;
    Ok(idems
        .into_iter()
        .map(|e| {
            let complement = a.sub(a.unit(), &e);
            let ideal = a.sum(&n, &a.product_space(ring, &[complement]));
            let residue_dim = ring.len() - ideal.len();
            MaximalIdeal { ideal, idempotent: e, residue_dim }
        })
        .collect())
}

/// `(R : S) = {s ∈ S : sS ⊆ R}`, the kernel of `s ↦ (s b_j mod R)_j`.
pub fn conductor(a: &FiniteAlgebra, r: &[Vector]) -> Space {
    let full = a.full();
    let images: Vec<Vector> = full
        .iter()
        .map(|s| full.iter().flat_map(|b| matrix::reduce_vector(a.field(), r, &a.mul(s, b))).collect())
        .collect();
    a.linear_kernel(&full, &images)
}

/// Indices (into `max_r`) of the maximal ideals of `R` where `S/R` does not vanish,
/// detected by comparing `R e` with `S e`.
pub fn support(a: &FiniteAlgebra, r: &[Vector], max_r: &[MaximalIdeal]) -> Vec<usize> {
    let full = a.full();
    max_r
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            let e = [m.idempotent.clone()];
            a.product_space(&full, &e).len() > a.product_space(r, &e).len()
        })
        .map(|(i, _)| i)
        .collect()
}

/// Indices of the maximal ideals of `R` containing the conductor.
pub fn conductor_locus(a: &FiniteAlgebra, cond: &[Vector], max_r: &[MaximalIdeal]) -> Vec<usize> {
    (0..max_r.len()).filter(|&i| a.is_subspace(cond, &max_r[i].ideal)).collect()
}

/// The crucial ideal: the unique maximal ideal of `R` containing `(R : S)`, if there is exactly one.
pub fn crucial_ideal(a: &FiniteAlgebra, r: &[Vector]) -> Result<Option<MaximalIdeal>> {
    let max_r = maximal_ideals(a, r)?;
    let locus = conductor_locus(a, &conductor(a, r), &max_r);
    if locus != support(a, r, &max_r) {
        return Err(Error::Consistency("support differs from the zero set of the conductor".into()));
    }
    Ok(match locus.as_slice() {
        [i] => Some(max_r[*i].clone()),
        _ => None,
    })
}

fn check_element_budget(a: &FiniteAlgebra, what: &str) -> Result<()> {
    within_cap(what, a.size_of(a.dim()), enumeration_cap())
}

/// Repeatedly adjoins elements accepted by `accept` until none is left.
fn closure_fixpoint(
    a: &FiniteAlgebra,
    r: &[Vector],
    accept: &dyn Fn(&[Vector], &Vector) -> bool,
) -> Space {
    let mut t = r.to_vec();
    loop {
        let added: Vec<Vector> = a.elements(&a.full()).filter(|b| !a.contains(&t, b) && accept(&t, b)).collect();
        if added.is_empty() {
            return t;
        }
        let mut gens = t.clone();
        gens.extend(added);
        t = a.subalgebra_generated(&gens);
    }
}

/// Seminormalization of `R` in `S`: adjoin every `b` with `b^2, b^3` in the current ring.
pub fn seminormalize(a: &FiniteAlgebra, r: &[Vector]) -> Result<Space> {
    check_element_budget(a, "seminormalization")?;
    Ok(closure_fixpoint(a, r, &|t, b| {
        let b2 = a.mul(b, b);
        a.contains(t, &b2) && a.contains(t, &a.mul(&b2, b))
    }))
}

/// Whether some `r ∈ T` has `b^2 - r b ∈ T` and `b^3 - r b^2 ∈ T`. The conditions are
/// affine in `r`, so this is one linear system over `F_q`.
pub fn t_condition(a: &FiniteAlgebra, t: &[Vector], b: &[u32]) -> bool {
    let f = a.field();
    let b2 = a.mul(b, b);
    let b3 = a.mul(&b2, b);
    let red = |v: &[u32]| matrix::reduce_vector(f, t, v);
    let columns: Vec<Vector> = t
        .iter()
        .map(|ti| {
            let mut col = red(&a.mul(ti, b));
            col.extend(red(&a.mul(ti, &b2)));
            col
        })
        .collect();
    let mut rhs = red(&b2);
    rhs.extend(red(&b3));
    let m = Matrix::from_columns(2 * a.dim(), &columns, f.zero());
    matrix::solve(f, &m, &rhs).is_some()
}

/// t-closure of `R` in `S`: adjoin every `b` admitting `r` as in [`t_condition`].
pub fn t_close(a: &FiniteAlgebra, r: &[Vector]) -> Result<Space> {
    check_element_budget(a, "t-closure")?;
    Ok(closure_fixpoint(a, r, &|t, b| t_condition(a, t, b)))
}

/// Type of an extension already known to be minimal, by the conductor tests.
pub fn minimal_type_of(a: &FiniteAlgebra, r: &[Vector]) -> Result<MinimalType> {
    let m = conductor(a, r);
    let max_r = maximal_ideals(a, r)?;
    if !max_r.iter().any(|mi| mi.ideal == m) {
        return Err(Error::Consistency("conductor of a minimal extension is not maximal in R".into()));
    }
    let max_s = maximal_ideals(a, &a.full())?;
    let k = r.len() - m.len();
    let s_over_m = a.dim() - m.len();
    if max_s.iter().any(|n| n.ideal == m) && s_over_m > k {
        return Ok(MinimalType::Inert);
    }
    for (i, m1) in max_s.iter().enumerate() {
        for m2 in &max_s[i + 1..] {
            if m1.residue_dim == k && m2.residue_dim == k && a.intersect(&m1.ideal, &m2.ideal) == m {
                return Ok(MinimalType::Decomposed);
            }
        }
    }
    for n in &max_s {
        let strictly_above = a.is_subspace(&m, &n.ideal) && n.ideal.len() > m.len();
        if strictly_above
            && a.is_subspace(&a.product_space(&n.ideal, &n.ideal), &m)
            && s_over_m == 2 * k
            && n.residue_dim == k
        {
            return Ok(MinimalType::Ramified);
        }
    }
    Err(Error::Consistency("minimal extension matches no type".into()))
}

/// Ramified, decomposed or inert when `[R, S] = {R, S}` (checked by enumeration).
pub fn classify_minimal_type(a: &FiniteAlgebra, r: &[Vector]) -> Result<MinimalType> {
    if r.len() == a.dim() || enumerate_subalgebras(a, r)?.count() != 2 {
        return Ok(MinimalType::NotMinimal);
    }
    minimal_type_of(a, r)
}

/// `upper` as an algebra with `lower` inside it, in the coordinates of `upper`.
pub fn sub_pair(a: &FiniteAlgebra, lower: &[Vector], upper: &[Vector]) -> Result<(FiniteAlgebra, Space)> {
    let alg = a.restrict(upper)?;
    let low = alg.span(&lower.iter().map(|v| a.coords_in(upper, v)).collect::<Vec<_>>());
    Ok((alg, low))
}

/// Localization `(R e ⊆ S e)` at the maximal ideal with idempotent `e`.
pub fn localize(a: &FiniteAlgebra, r: &[Vector], e: &[u32]) -> Result<(FiniteAlgebra, Space)> {
    let e = [e.to_vec()];
    let se = a.product_space(&a.full(), &e);
    let alg = a.restrict_with_unit(&se, &e[0])?;
    let re = a.product_space(r, &e);
    let low = alg.span(&re.iter().map(|v| a.coords_in(&se, v)).collect::<Vec<_>>());
    Ok((alg, low))
}

/// Everything computed about `R ⊂ S`.
#[derive(Clone, Debug)]
pub struct ExtensionAnalysis {
    pub algebra: FiniteAlgebra,
    pub r: Space,
    pub conductor: Space,
    pub max_r: Vec<MaximalIdeal>,
    pub max_s: Vec<MaximalIdeal>,
    /// Indices into `max_r`.
    pub support: Vec<usize>,
    /// Index into `max_r` of the crucial ideal.
    pub crucial: Option<usize>,
    pub nilradical_s: Space,
    pub seminormalization: Space,
    pub t_closure: Space,
    pub lattice: SubalgebraLattice,
    pub minimal_type: MinimalType,
}

impl ExtensionAnalysis {
    pub fn s(&self) -> Space {
        self.algebra.full()
    }
}

pub fn analyze(a: &FiniteAlgebra, r: &[Vector]) -> Result<ExtensionAnalysis> {
    if !a.is_subalgebra(r) {
        return Err(Error::InvalidAlgebra("R not closed".into()));
    }
    if r.len() == a.dim() {
        return Err(Error::NotAnExtension);
    }
    let cond = conductor(a, r);
    let max_r = maximal_ideals(a, r)?;
    let max_s = maximal_ideals(a, &a.full())?;
    let supp = support(a, r, &max_r);
    let crucial = match supp.as_slice() {
        [i] => Some(*i),
        _ => None,
    };
    let lattice = enumerate_subalgebras(a, r)?;
    let minimal_type = if lattice.count() == 2 { minimal_type_of(a, r)? } else { MinimalType::NotMinimal };
    Ok(ExtensionAnalysis {
        algebra: a.clone(),
        r: r.to_vec(),
        conductor: cond,
        max_r,
        max_s,
        support: supp,
        crucial,
        nilradical_s: nilradical(a, &a.full()),
        seminormalization: seminormalize(a, r)?,
        t_closure: t_close(a, r)?,
        lattice,
        minimal_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::present::parse_algebra;

    fn pair(doc: &str) -> (FiniteAlgebra, Space) {
        let p = parse_algebra(doc).unwrap();
        (p.algebra, p.r)
    }

    const F2XF2: &str = r#"{"q": 2, "product": ["F2", "F2"], "R": "diagonal"}"#;
    const DUAL: &str = r#"{"q": 2, "quotient": "F2[X]/(X^2)", "R": "[1]"}"#;
    const F4: &str = r#"{"q": 2, "product": ["F4"], "R": "[1]"}"#;
    const F2XF4: &str = r#"{"q": 2, "product": ["F2", "F4"], "R": "diagonal"}"#;
    const SPLIT_OVER_DUAL: &str = r#"{"q": 2, "quotient": "F2[T,Y]/(T^2, Y^2 + Y)", "R": "[T]"}"#;

    #[test]
    fn maximal_ideal_counts() {
        let (a, _) = pair(F2XF2);
        assert_eq!(maximal_ideals(&a, &a.full()).unwrap().len(), 2);
        let (a, _) = pair(DUAL);
        let m = maximal_ideals(&a, &a.full()).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].ideal, vec![vec![0, 1]]);
        let (a, _) = pair(F2XF4);
        let m = maximal_ideals(&a, &a.full()).unwrap();
        assert_eq!(m.iter().map(|x| x.residue_dim).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn conductors() {
        let (a, r) = pair(F2XF2);
        assert!(conductor(&a, &r).is_empty());
        let (a, r) = pair(SPLIT_OVER_DUAL);
        assert!(conductor(&a, &r).is_empty());
        assert_eq!(conductor(&a, &a.full()).len(), a.dim());
    }

    #[test]
    fn crucial_ideals() {
        let (a, r) = pair(F4);
        assert_eq!(crucial_ideal(&a, &r).unwrap().unwrap().ideal, Vec::<Vector>::new());
        let (a, r) = pair(SPLIT_OVER_DUAL);
        let m = crucial_ideal(&a, &r).unwrap().unwrap();
        // M = R t.
        let t = a.basis_vector(a.names().iter().position(|n| n == "T").unwrap());
        assert_eq!(m.ideal, a.span(&[t]));
        let (a, r) = pair(r#"{"q": 2, "product": ["F4", "F4"], "R": "[e1]"}"#);
        assert!(crucial_ideal(&a, &r).unwrap().is_none());
    }

    #[test]
    fn minimal_types() {
        assert_eq!(classify_minimal_type(&pair(F4).0, &pair(F4).1).unwrap(), MinimalType::Inert);
        assert_eq!(classify_minimal_type(&pair(F2XF2).0, &pair(F2XF2).1).unwrap(), MinimalType::Decomposed);
        assert_eq!(classify_minimal_type(&pair(DUAL).0, &pair(DUAL).1).unwrap(), MinimalType::Ramified);
        assert_eq!(classify_minimal_type(&pair(F2XF4).0, &pair(F2XF4).1).unwrap(), MinimalType::NotMinimal);
    }

    #[test]
    fn closures() {
        let (a, r) = pair(DUAL);
        assert_eq!(seminormalize(&a, &r).unwrap().len(), 2);
        let (a, r) = pair(F2XF2);
        assert_eq!(seminormalize(&a, &r).unwrap(), r);
        assert_eq!(t_close(&a, &r).unwrap().len(), 2);
        let (a, r) = pair(F4);
        assert_eq!(t_close(&a, &r).unwrap(), r);
        let (a, r) = pair(F2XF4);
        // F_2 x F_2 inside F_2 x F_4: spanned by e1 and e2.
        assert_eq!(t_close(&a, &r).unwrap(), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let (a, r) = pair(SPLIT_OVER_DUAL);
        let plus = seminormalize(&a, &r).unwrap();
        let ty = a.mul(&r[1], &a.basis_vector(a.names().iter().position(|n| n == "Y").unwrap()));
        assert_eq!(plus, a.subalgebra_generated(&[r[1].clone(), ty]));
    }
}
