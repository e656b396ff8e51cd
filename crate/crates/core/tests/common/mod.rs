//! Independent oracles shared by the integration tests.
//!
//! The finite-algebra oracles use only the algebra's arithmetic and span
//! membership; the principal-subfield oracle solves the defining divisibility
//! condition directly as a linear system over `Q`.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::process::{Command, Output};

use l2lab_core::field::{Field, Rationals};
use l2lab_core::finite::{parse_algebra, FiniteAlgebra, Presentation, Space, Vector};
use l2lab_core::matrix::{kernel, row_space, Matrix};
use l2lab_core::numfield::{NFElement, NumberField, Subfield};
use l2lab_core::poly::{Poly, PolyRing};
use l2lab_core::principal::PrincipalSubfieldSet;
use l2lab_core::report::ClassificationReport;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

/// Smallest multiplicatively closed subspace containing `gens` and 1,
/// by repeated products until the span stops growing.
pub fn close(a: &FiniteAlgebra, gens: &[Vector]) -> Space {
    let mut vs: Vec<Vector> = gens.to_vec();
    vs.push(a.unit().clone());
    let mut space = a.span(&vs);
    loop {
        let mut extra = Vec::new();
        for x in &space {
            for y in &space {
                let p = a.mul(x, y);
                if !a.contains(&space, &p) {
                    extra.push(p);
                }
            }
        }
        if extra.is_empty() {
            return space;
        }
        space.extend(extra);
        space = a.span(&space);
    }
}

/// Every subalgebra between `r` and `S`, reached from `r` by adjoining one
/// element of `S` at a time.
pub fn lattice_by_adjunction(a: &FiniteAlgebra, r: &[Vector]) -> BTreeSet<Space> {
    let all: Vec<Vector> = a.elements(&a.full()).collect();
    let start = close(a, r);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = vec![start];
    while let Some(t) = queue.pop() {
        for x in &all {
            if a.contains(&t, x) {
                continue;
            }
            let mut gens = t.clone();
            gens.push(x.clone());
            let u = close(a, &gens);
            if seen.insert(u.clone()) {
                queue.push(u);
            }
        }
    }
    seen
}

/// Fixpoint of adjoining `b` with `b^2, b^3` in the current ring.
pub fn seminormalization_by_search(a: &FiniteAlgebra, r: &[Vector]) -> Space {
    grow(a, r, |t, b| {
        let b2 = a.mul(b, b);
        a.contains(t, &b2) && a.contains(t, &a.mul(&b2, b))
    })
}

/// Fixpoint of adjoining `b` with `b^2 - rb, b^3 - rb^2` in the current ring
/// for some `r` of the current ring, found by trying every `r`.
pub fn t_closure_by_search(a: &FiniteAlgebra, r: &[Vector]) -> Space {
    grow(a, r, |t, b| {
        let b2 = a.mul(b, b);
        let b3 = a.mul(&b2, b);
        a.elements(t).any(|s| a.contains(t, &a.sub(&b2, &a.mul(&s, b))) && a.contains(t, &a.sub(&b3, &a.mul(&s, &b2))))
    })
}

fn grow(a: &FiniteAlgebra, r: &[Vector], admits: impl Fn(&Space, &Vector) -> bool) -> Space {
    let all: Vec<Vector> = a.elements(&a.full()).collect();
    let mut t = close(a, r);
    loop {
        let next = all.iter().find(|b| !a.contains(&t, b) && admits(&t, b));
        match next {
            Some(b) => {
                let mut gens = t.clone();
                gens.push(b.clone());
                t = close(a, &gens);
            }
            None => return t,
        }
    }
}

/// `{g(x) : f | g(X) - g(x)}` as a reduced basis of coordinate vectors: the
/// kernel of `g ↦ (g(X) - g(x)) mod f` on polynomials of degree below `n`.
pub fn principal_subfield_by_kernel(field: &NumberField, f: &Poly<NFElement>) -> Vec<Vec<BigRational>> {
    let n = field.degree();
    let ring = field.poly_ring();
    let d = f.degree().unwrap();
    let x = field.generator();
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let xi = ring.monomial(field.one(), i);
        let diff = ring.sub(&xi, &ring.constant(field.pow(&x, i)));
        let rem = ring.rem(&diff, f);
        let mut col = Vec::with_capacity(n * d);
        for j in 0..d {
            let c = ring.coeff_or_zero(&rem, j);
            col.extend(c.coords().iter().cloned());
        }
        columns.push(col);
    }
    let m = Matrix::from_columns(n * d, &columns, BigRational::zero());
    row_space(&Rationals, n, &kernel(&Rationals, &m))
}

pub fn subfield_rows(k: &Subfield) -> Vec<Vec<BigRational>> {
    k.basis().iter().map(|b| b.coords().to_vec()).collect()
}

/// `(X - x) * prod f_a` over `L` for the given factor indices.
pub fn with_linear_factor(ps: &PrincipalSubfieldSet, indices: &[usize]) -> Poly<NFElement> {
    let field = ps.field();
    let ring: PolyRing<NumberField> = field.poly_ring();
    let lin = ring.from_coeffs(vec![field.neg(&field.generator()), field.one()]);
    indices.iter().fold(lin, |acc, &a| ring.mul(&acc, &ps.system.factors[a]))
}

/// Indices `a` with `f_a` dividing the minimal polynomial of `x` over `k`.
pub fn factors_dividing(ps: &PrincipalSubfieldSet, k: &Subfield) -> Vec<usize> {
    let ring = ps.field().poly_ring();
    (0..ps.system.factors.len()).filter(|&a| ring.divides(&ps.system.factors[a], k.min_poly())).collect()
}

/// Divisor lattice of `n`: sorted divisors and the covering pairs.
pub fn divisor_lattice(n: usize) -> (Vec<usize>, Vec<[usize; 2]>) {
    let divs: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    let mut covers = Vec::new();
    for (i, &a) in divs.iter().enumerate() {
        for (j, &b) in divs.iter().enumerate() {
            if a != b && b % a == 0 && !divs.iter().any(|&c| c != a && c != b && c % a == 0 && b % c == 0) {
                covers.push([i, j]);
            }
        }
    }
    covers.sort();
    (divs, covers)
}

/// Transitive closure of the cover pairs, as a reachability set.
pub fn order_from_covers(n: usize, covers: &[[usize; 2]]) -> BTreeSet<(usize, usize)> {
    let mut le: BTreeSet<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    le.extend(covers.iter().map(|&[a, b]| (a, b)));
    loop {
        let mut added = false;
        let snapshot: Vec<(usize, usize)> = le.iter().copied().collect();
        for &(a, b) in &snapshot {
            for &(c, d) in &snapshot {
                if b == c && le.insert((a, d)) {
                    added = true;
                }
            }
        }
        if !added {
            return le;
        }
    }
}

/// Order relation of report nodes by basis containment, computed from the bases.
pub fn report_order(a: &FiniteAlgebra, lattice: &[Space]) -> BTreeSet<(usize, usize)> {
    let mut le = BTreeSet::new();
    for (i, x) in lattice.iter().enumerate() {
        for (j, y) in lattice.iter().enumerate() {
            if x.iter().all(|v| a.contains(y, v)) {
                le.insert((i, j));
            }
        }
    }
    le
}

pub fn presentation(doc: &str) -> Presentation {
    parse_algebra(doc).unwrap_or_else(|e| panic!("{doc}: {e}"))
}

pub fn fact<'a>(r: &'a ClassificationReport, key: &str) -> Option<&'a str> {
    r.witnesses.facts.as_ref()?.get(key).map(String::as_str)
}

pub fn l2lab(args: &[&str], cap: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_l2lab"));
    cmd.args(args);
    match cap {
        Some(c) => cmd.env("L2LAB_CAP", c),
        None => cmd.env_remove("L2LAB_CAP"),
    };
    cmd.output().expect("binary runs")
}

pub fn repo_path(rel: &str) -> String {
    format!("{}/../../{rel}", env!("CARGO_MANIFEST_DIR"))
}

/// A small random extension `R ⊂ S` with `S` of order at most 729.
#[derive(Clone, Debug)]
pub struct RandomExtension {
    pub doc: String,
    pub generators: Vec<Vec<u32>>,
}

impl RandomExtension {
    /// `R` is generated by the first `k` coefficient vectors (read modulo `q`
    /// and truncated to the dimension), or the copy of `F_q` when those
    /// generate all of `S`; `None` when `S = F_q`.
    pub fn build(&self) -> Option<Presentation> {
        let p = presentation(&self.doc);
        let a = p.algebra;
        let q = l2lab_core::field::FiniteField::order(a.field()) as u32;
        let gens: Vec<Vector> = self
            .generators
            .iter()
            .map(|g| {
                (0..a.dim())
                    .map(|i| {
                        let d = g[i % g.len()] % q;
                        l2lab_core::field::FiniteField::element(a.field(), d as u64)
                    })
                    .collect()
            })
            .collect();
        let mut r = a.subalgebra_generated(&gens);
        if r.len() == a.dim() {
            r = a.subalgebra_generated(&[]);
        }
        (r.len() < a.dim()).then_some(Presentation { algebra: a, r })
    }
}

fn univariate(q: u64, max_deg: usize) -> impl Strategy<Value = String> {
    (2..=max_deg).prop_flat_map(move |d| {
        proptest::collection::vec(0..q, d).prop_map(move |low| {
            let mut terms = vec![format!("X^{d}")];
            for (i, &c) in low.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let coef = if q == 4 {
                    ["", "1", "a", "(a + 1)"][c as usize].to_string()
                } else {
                    c.to_string()
                };
                terms.push(match i {
                    0 => coef,
                    1 => format!("{coef}*X"),
                    _ => format!("{coef}*X^{i}"),
                });
            }
            format!("F{q}[X]/({})", terms.join(" + "))
        })
    })
}

fn bivariate(q: u64, max_x: usize) -> impl Strategy<Value = String> {
    (1usize..=max_x, 1usize..=2, 0usize..4).prop_map(move |(a, b, extra)| {
        let mut rels = vec![format!("X^{a}"), format!("Y^{b}")];
        match extra {
            0 => rels.push("X*Y".into()),
            1 => rels.push("X^2 - Y".into()),
            2 => rels.push("Y^2 + Y".into()),
            _ => {}
        }
        format!("F{q}[X,Y]/({})", rels.join(", "))
    })
}

fn exponent(name: &str) -> usize {
    match name {
        "F4" | "F9" => 2,
        "F8" => 3,
        _ => 1,
    }
}

fn products() -> impl Strategy<Value = (u64, Vec<String>)> {
    prop_oneof![
        proptest::collection::vec(prop_oneof![Just("F2"), Just("F4"), Just("F8")], 1..=3)
            .prop_filter("order at most 2^6", |fs| fs.iter().map(|f| exponent(f)).sum::<usize>() <= 6)
            .prop_map(|fs| (2u64, fs.into_iter().map(String::from).collect())),
        proptest::collection::vec(prop_oneof![Just("F3"), Just("F9")], 1..=3)
            .prop_filter("order at most 3^5", |fs| fs.iter().map(|f| exponent(f)).sum::<usize>() <= 5)
            .prop_map(|fs| (3u64, fs.into_iter().map(String::from).collect())),
    ]
}

/// Random quotients of `F_q[X]` and `F_q[X,Y]`, products of small fields and
/// subalgebras generated by one or two random elements.
pub fn random_extension() -> impl Strategy<Value = RandomExtension> {
    let doc = prop_oneof![
        univariate(2, 5).prop_map(|s| format!(r#"{{"q": 2, "quotient": "{s}", "R": "[1]"}}"#)),
        univariate(3, 4).prop_map(|s| format!(r#"{{"q": 3, "quotient": "{s}", "R": "[1]"}}"#)),
        univariate(4, 3).prop_map(|s| format!(r#"{{"q": 4, "quotient": "{s}", "R": "[1]"}}"#)),
        bivariate(2, 3).prop_map(|s| format!(r#"{{"q": 2, "quotient": "{s}", "R": "[1]"}}"#)),
        bivariate(3, 2).prop_map(|s| format!(r#"{{"q": 3, "quotient": "{s}", "R": "[1]"}}"#)),
        products().prop_map(|(q, fs)| {
            let list: Vec<String> = fs.iter().map(|f| format!("\"{f}\"")).collect();
            format!(r#"{{"q": {q}, "product": [{}], "R": "[1]"}}"#, list.join(", "))
        }),
    ];
    let gen = || proptest::collection::vec(0u32..9, 6);
    let gens = prop_oneof![
        2 => Just(Vec::new()),
        2 => gen().prop_map(|g| vec![g]),
        1 => (gen(), gen()).prop_map(|(g, h)| vec![g, h]),
    ];
    (doc, gens).prop_map(|(doc, generators)| RandomExtension { doc, generators })
}

/// Monic integer polynomials of degree 2 to 4 with small coefficients.
pub fn random_polynomial() -> impl Strategy<Value = String> {
    (2usize..=4).prop_flat_map(|d| {
        proptest::collection::vec(-6i64..=6, d).prop_map(move |low| {
            let mut s = format!("X^{d}");
            for (i, &c) in low.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 { "-" } else { "+" };
                let m = c.abs();
                s += &match i {
                    0 => format!(" {sign} {m}"),
                    1 => format!(" {sign} {m}*X"),
                    _ => format!(" {sign} {m}*X^{i}"),
                };
            }
            s
        })
    })
}

/// Cross-checks one finite extension against the brute-force oracles.
pub fn check_extension(p: &Presentation) -> Result<(), String> {
    let a = &p.algebra;
    let report = l2lab_core::report::classify_algebra("random", p).map_err(|e| format!("classify failed: {e}"))?;
    let failed = report.failed_checks();
    if !failed.is_empty() {
        return Err(format!("failed checks: {failed:?}"));
    }
    let an = l2lab_core::finite::analyze(a, &p.r).map_err(|e| e.to_string())?;
    let oracle = lattice_by_adjunction(a, &p.r);
    let engine: BTreeSet<Space> = an.lattice.nodes.iter().cloned().collect();
    if oracle != engine {
        return Err(format!("lattice {} nodes, adjunction oracle {} nodes", engine.len(), oracle.len()));
    }
    if seminormalization_by_search(a, &p.r) != an.seminormalization {
        return Err("seminormalization differs from the search".into());
    }
    if t_closure_by_search(a, &p.r) != an.t_closure {
        return Err("t-closure differs from the search".into());
    }
    let le = report_order(a, &an.lattice.nodes);
    if order_from_covers(an.lattice.count(), &report.lattice.covers) != le {
        return Err("covers do not generate the containment order".into());
    }
    let middle_ok = (1..an.lattice.count() - 1).all(|i| {
        report.lattice.covers.contains(&[0, i]) && report.lattice.covers.contains(&[i, an.lattice.count() - 1])
    });
    let structural = an.lattice.count() > 2 && middle_ok;
    if structural != (report.length == 2) {
        return Err("atom-and-coatom test disagrees with the longest chain".into());
    }
    if let Some(c) = report.predicted_count {
        if c != report.observed_count {
            return Err(format!("predicted {c}, observed {}", report.observed_count));
        }
    }
    Ok(())
}

/// Cross-checks the principal subfields of one polynomial.
pub fn check_polynomial(text: &str) -> Result<(), String> {
    use l2lab_core::lattice::build_lattice;
    use l2lab_core::numfield::{intersect_subfields, make_field};
    use l2lab_core::parse::parse_polynomial;
    use l2lab_core::principal::compute_principal_subfields;

    let f = parse_polynomial(text).map_err(|e| e.to_string())?;
    let field = make_field(&f).map_err(|e| e.to_string())?;
    let ps = compute_principal_subfields(&field).map_err(|e| e.to_string())?;
    let n = field.degree();
    let all: Vec<usize> = (0..ps.system.factors.len()).collect();
    if with_linear_factor(&ps, &all) != field.lift_poly(&f) {
        return Err("factors do not re-multiply to f".into());
    }
    for (a, fa) in ps.system.factors.iter().enumerate() {
        if principal_subfield_by_kernel(&field, fa) != subfield_rows(&ps.l_alpha[a]) {
            return Err(format!("principal subfield of factor {a} differs from the kernel"));
        }
    }
    let meet = ps.e.iter().fold(Subfield::whole(&field), |acc, k| intersect_subfields(&field, &acc, k));
    if n > 1 && meet.dim() != 1 {
        return Err("intersection of principal subfields is not Q".into());
    }
    if ps.e.iter().any(|k| k.dim() == n) {
        return Err("a principal subfield equals L".into());
    }
    for (b, k) in ps.e.iter().enumerate() {
        let i = factors_dividing(&ps, k);
        if !ps.gamma[b].iter().all(|a| i.contains(a)) {
            return Err(format!("Gamma({b}) is not inside I(E_{b})"));
        }
    }
    let lat = build_lattice(&ps).map_err(|e| e.to_string())?;
    for k in &lat.nodes {
        if with_linear_factor(&ps, &factors_dividing(&ps, k)) != *k.min_poly() {
            return Err(format!("product identity fails for {}", k.describe(&field)));
        }
    }
    let report = l2lab_core::report::classify_polynomial(text).map_err(|e| e.to_string())?;
    let failed = report.failed_checks();
    if !failed.is_empty() {
        return Err(format!("failed checks: {failed:?}"));
    }
    Ok(())
}

/// Whether `f` defines a field; reducible or repeated-root inputs are skipped.
pub fn defines_field(text: &str) -> bool {
    let f = l2lab_core::parse::parse_polynomial(text).unwrap();
    l2lab_core::numfield::make_field(&f).is_ok()
}
