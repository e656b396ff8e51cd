//! Length-two predicates for integral extensions of finite algebras, each
//! compared with the enumerated lattice.
//!
//! The extension is sorted by its support: two points, one point (the crucial
//! case, studied after localizing), or more. In the crucial case the position
//! of the seminormalization and the t-closure picks the class, and each class
//! has its own structural criterion for length two.

use serde::Serialize;

use super::algebra::{FiniteAlgebra, Space, Vector};
use super::analysis::{
    conductor, localize, maximal_ideals, minimal_type_of, nilradical, primitive_idempotents, seminormalize, sub_pair,
    t_close, ExtensionAnalysis, MinimalType,
};
use super::enumerate::{enumerate_subalgebras, SubalgebraLattice};
use super::{enumeration_cap, within_cap};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::FiniteField;

/// Outcome of the case analysis.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    /// `"(1)"` … `"(8d)"`, `"not length 2"` or `"out of scope"`.
    pub case: String,
    /// Short name of the class the extension falls in.
    pub class: String,
    /// Length two according to the structural criterion, if one applies.
    pub predicted_length_two: Option<bool>,
    pub predicted_count: Option<usize>,
    /// Named quantities computed on the way, for display.
    pub facts: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

struct Verdict {
    label: &'static str,
    class: String,
    predicted: Option<bool>,
    count: Option<usize>,
}

/// A local pair `R ⊂ S` (after localizing at the crucial ideal).
struct Local {
    a: FiniteAlgebra,
    r: Space,
    lattice: SubalgebraLattice,
    m: Space,
    cond: Space,
    n: Space,
    max_s: Vec<super::analysis::MaximalIdeal>,
    /// `dim_{F_q} R/M`.
    k: usize,
}

impl Local {
    fn new(a: FiniteAlgebra, r: Space) -> Result<Local> {
        let max_r = maximal_ideals(&a, &r)?;
        let [m] = max_r.as_slice() else {
            return Err(Error::Consistency("localized base ring is not local".into()));
        };
        let m = m.ideal.clone();
        let lattice = enumerate_subalgebras(&a, &r)?;
        let cond = conductor(&a, &r);
        let n = nilradical(&a, &a.full());
        let max_s = maximal_ideals(&a, &a.full())?;
        let k = r.len() - m.len();
        Ok(Local { a, r, lattice, m, cond, n, max_s, k })
    }

    fn count(&self) -> usize {
        self.lattice.count()
    }

    fn residue_order(&self) -> u64 {
        self.a.field().order().pow(self.k as u32)
    }

    /// Length of `N/M` as an `R`-module, from the filtration `X_{i+1} = M X_i + M`,
    /// each layer being a vector space over `R/M`.
    fn module_length(&self) -> Result<usize> {
        let a = &self.a;
        let mut cur = a.sum(&self.n, &self.m);
        let mut len = 0;
        loop {
            let next = a.sum(&self.m, &a.product_space(&self.m, &cur));
            let drop = cur.len() - next.len();
            if drop == 0 {
                break;
            }
            if drop % self.k != 0 {
                return Err(Error::Consistency("module layer is not a vector space over R/M".into()));
            }
            len += drop / self.k;
            cur = next;
        }
        if cur != self.m {
            return Err(Error::Consistency("filtration of N/M does not reach M".into()));
        }
        Ok(len)
    }

    fn is_cover(&self, lo: &[Vector], hi: &[Vector]) -> bool {
        match (self.lattice.index_of(lo), self.lattice.index_of(hi)) {
            (Some(i), Some(j)) => self.lattice.poset.covers().contains(&(i, j)),
            _ => false,
        }
    }

    /// Some `y ∈ N` with `R[y] = S`.
    fn simple_generator(&self) -> Result<Option<Vector>> {
        let a = &self.a;
        within_cap("generator search", a.size_of(self.n.len()), enumeration_cap())?;
        let mut gens = self.r.clone();
        Ok(a.elements(&self.n).find(|y| {
            gens.truncate(self.r.len());
            gens.push(y.clone());
            a.subalgebra_generated(&gens).len() == a.dim()
        }))
    }
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn check_length_two_predicates(an: &ExtensionAnalysis) -> Result<CaseReport> {
    let a = &an.algebra;
    let count = an.lattice.count();
    let observed = an.lattice.length() == 2;
    let mut facts: Vec<(String, String)> = Vec::new();
    let mut checks = invariant_checks(an)?;
    let verdict = match an.support.len() {
        2 => two_point(an, &mut facts, &mut checks)?,
        1 => {
            let e = &an.max_r[an.support[0]].idempotent;
            let (la, lr) = localize(a, &an.r, e)?;
            let local = Local::new(la, lr)?;
            checks.push(Check::new("localization keeps the interval size", local.count() == count));
            crucial(&local, &mut facts, &mut checks)?
        }
        n => Verdict {
            label: "not length 2",
            class: format!("support of size {n}"),
            predicted: Some(false),
            count: None,
        },
    };
    if let Some(p) = verdict.predicted {
        checks.push(Check::new("structural criterion agrees with the longest chain", p == observed));
        if p {
            if let Some(c) = verdict.count {
                checks.push(Check::new("predicted interval size matches the enumeration", c == count));
            }
        }
    }
    let case = match verdict.predicted {
        Some(true) => verdict.label.to_string(),
        Some(false) => "not length 2".to_string(),
        None => "out of scope".to_string(),
    };
    Ok(CaseReport {
        case,
        class: verdict.class,
        predicted_length_two: verdict.predicted,
        predicted_count: if verdict.predicted == Some(true) { verdict.count } else { None },
        facts,
        checks,
    })
}

/// Properties that hold for every extension.
fn invariant_checks(an: &ExtensionAnalysis) -> Result<Vec<Check>> {
    let a = &an.algebra;
    let lat = &an.lattice;
    let poset = &lat.poset;
    let s = a.full();
    let mut checks = vec![
        Check::new(
            "R within seminormalization within t-closure within S",
            a.is_subspace(&an.r, &an.seminormalization)
                && a.is_subspace(&an.seminormalization, &an.t_closure)
                && a.is_subspace(&an.t_closure, &s),
        ),
        Check::new("lattice runs from R to S", lat.nodes.first() == Some(&an.r) && lat.nodes.last() == Some(&s)),
        Check::new("covers generate the order", poset.covers_generate_order()),
        Check::new(
            "length two iff every intermediate node is an atom and a coatom",
            (lat.length() == 2) == (lat.count() > 2 && poset.middle_nodes_are_atoms_and_coatoms()),
        ),
        Check::new("length two forces support of size at most two", lat.length() != 2 || an.support.len() <= 2),
        Check::new(
            "support equals the zero set of the conductor",
            super::analysis::conductor_locus(a, &an.conductor, &an.max_r) == an.support,
        ),
        Check::new("closures are lattice nodes", lat.index_of(&an.seminormalization).is_some() && lat.index_of(&an.t_closure).is_some()),
    ];
    // Each covering step is a minimal extension; classify them and compare the
    // closures with the chains of ramified (resp. ramified or decomposed) steps.
    let mut kinds = Vec::with_capacity(poset.covers().len());
    for &(i, j) in poset.covers() {
        let (up, low) = sub_pair(a, &lat.nodes[i], &lat.nodes[j])?;
        kinds.push(((i, j), minimal_type_of(&up, &low)?));
    }
    let reach = |allowed: &dyn Fn(MinimalType) -> bool| -> Vec<usize> {
        let mut seen = vec![0usize];
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for &((x, y), kind) in &kinds {
                if x == i && allowed(kind) && !seen.contains(&y) {
                    seen.push(y);
                    stack.push(y);
                }
            }
        }
        seen
    };
    let greatest = |nodes: Vec<usize>, target: &Space| -> bool {
        lat.index_of(target).is_some_and(|t| nodes.contains(&t) && nodes.iter().all(|&i| poset.le(i, t)))
    };
    checks.push(Check::new(
        "seminormalization is the top of the ramified chains from R",
        greatest(reach(&|k| k == MinimalType::Ramified), &an.seminormalization),
    ));
    checks.push(Check::new(
        "t-closure is the top of the ramified or decomposed chains from R",
        greatest(reach(&|k| matches!(k, MinimalType::Ramified | MinimalType::Decomposed)), &an.t_closure),
    ));
    let t_idx = lat.index_of(&an.t_closure);
    checks.push(Check::new(
        "every step above the t-closure is inert",
        kinds.iter().all(|&((x, _), kind)| {
            t_idx.map_or(true, |t| !poset.le(t, x)) || kind == MinimalType::Inert
        }),
    ));
    Ok(checks)
}

fn two_point(an: &ExtensionAnalysis, facts: &mut Vec<(String, String)>, checks: &mut Vec<Check>) -> Result<Verdict> {
    let a = &an.algebra;
    let mut locally_minimal = true;
    for &i in &an.support {
        let (la, lr) = localize(a, &an.r, &an.max_r[i].idempotent)?;
        locally_minimal &= enumerate_subalgebras(&la, &lr)?.count() == 2;
    }
    facts.push(("locally minimal".into(), yes(locally_minimal)));
    let count = an.lattice.count();
    checks.push(Check::new(
        "four subalgebras iff length two",
        (count == 4) == (an.lattice.length() == 2),
    ));
    Ok(Verdict { label: "(1)", class: "two-point support".into(), predicted: Some(locally_minimal), count: Some(4) })
}

fn crucial(l: &Local, facts: &mut Vec<(String, String)>, checks: &mut Vec<Check>) -> Result<Verdict> {
    let a = &l.a;
    let s = a.full();
    let plus = seminormalize(a, &l.r)?;
    let t = t_close(a, &l.r)?;
    let observed = l.lattice.length() == 2;
    let length = l.module_length()?;
    let max_count = l.max_s.len();
    facts.push(("|Max(S)|".into(), max_count.to_string()));
    facts.push(("L_R(N/M)".into(), length.to_string()));
    facts.push(("(R:S) = M".into(), yes(l.cond == l.m)));
    let infra_criterion = length + max_count == 3;
    if t == l.r {
        return t_closed(l, facts, checks);
    }
    if t == s {
        checks.push(Check::new(
            "module length plus maximal ideal count is three iff length two",
            infra_criterion == observed,
        ));
    }
    if t == s && plus == s {
        return subintegral(l, facts, checks);
    }
    if t == s && plus == l.r {
        checks.push(Check::new("five subalgebras iff length two", (l.count() == 5) == observed));
        return Ok(Verdict {
            label: "(7)",
            class: "seminormal infra-integral".into(),
            predicted: Some(max_count == 3),
            count: Some(5),
        });
    }
    if t == s {
        let count = l.count();
        let sandwich = (3..=4).contains(&count) && (count != 4 || l.cond == l.m);
        checks.push(Check::new(
            "three or four subalgebras, with (R:S) = M at four, iff length two",
            sandwich == observed,
        ));
        return Ok(Verdict {
            label: "(5)",
            class: "infra-integral, seminormalization strictly between".into(),
            predicted: Some(infra_criterion),
            count: None,
        });
    }
    // The t-closure lies strictly between R and S.
    let steps_minimal = l.is_cover(&l.r, &t) && l.is_cover(&t, &s);
    checks.push(Check::new(
        "both steps through the t-closure minimal with three subalgebras iff length two",
        (steps_minimal && l.count() == 3) == observed,
    ));
    let top_minimal = l.is_cover(&t, &s);
    let split_m = l.max_s.len() == 2 && a.intersect(&l.max_s[0].ideal, &l.max_s[1].ideal) == l.m;
    let criterion = (max_count == 1 && length == 1) || split_m;
    facts.push(("t-closure below S minimal".into(), yes(top_minimal)));
    Ok(Verdict {
        label: "(4)",
        class: "t-closure strictly between".into(),
        predicted: Some(top_minimal && criterion),
        count: Some(3),
    })
}

/// `S/M ≅ k[X,Y]/(X^2, XY, Y^2)`, or `S/M ≅ k^3` with `k = F_2`, and `MS = M`.
fn co_pointwise_minimal(l: &Local) -> bool {
    let a = &l.a;
    if l.cond != l.m {
        return false;
    }
    let s_over_m = a.dim() - l.m.len();
    let nn = a.product_space(&l.n, &l.n);
    let square_zero = l.max_s.len() == 1
        && s_over_m == 3 * l.k
        && l.n.len() - l.m.len() == 2 * l.k
        && a.is_subspace(&nn, &l.m);
    let three_points = l.residue_order() == 2
        && l.max_s.len() == 3
        && s_over_m == 3 * l.k
        && l.max_s.iter().all(|n| n.residue_dim == l.k);
    square_zero || three_points
}

fn subintegral(l: &Local, facts: &mut Vec<(String, String)>, checks: &mut Vec<Check>) -> Result<Verdict> {
    let a = &l.a;
    let observed = l.lattice.length() == 2;
    let co_pointwise = co_pointwise_minimal(l);
    let y = l.simple_generator()?;
    facts.push(("simple".into(), yes(y.is_some())));
    facts.push(("co-pointwise minimal".into(), yes(co_pointwise)));
    checks.push(Check::new(
        "simple with three subalgebras or co-pointwise minimal iff length two",
        ((y.is_some() && l.count() == 3) || co_pointwise) == observed,
    ));
    let q_res = l.residue_order() as usize;
    if co_pointwise {
        return Ok(Verdict {
            label: "(6)",
            class: "subintegral, co-pointwise minimal".into(),
            predicted: Some(true),
            count: Some(q_res + 3),
        });
    }
    let Some(y) = y else {
        return Ok(Verdict {
            label: "(6)",
            class: "subintegral, neither simple nor co-pointwise minimal".into(),
            predicted: Some(false),
            count: None,
        });
    };
    let (m, c, n, r) = (&l.m, &l.cond, &l.n, &l.r);
    let s = a.full();
    let m2 = a.product_space(m, m);
    let bracket = a.is_subspace(&m2, c) && a.is_subspace(c, m);
    let n2 = a.product_space(n, n);
    let n3 = a.product_space(&n2, n);
    let y2 = a.mul(&y, &y);
    let sub1 = c == m && !a.is_subspace(&n2, m) && a.is_subspace(&n3, m);
    let ms = a.product_space(m, &s);
    let m_n2 = a.sum(m, &n2);
    let m_ry2 = a.sum(m, &a.product_space(r, &[y2.clone()]));
    let sub2 = c != m
        && !a.contains(r, &y2)
        && ms == m_n2
        && m_n2 == m_ry2
        && m_n2.len() < n.len()
        && a.is_subspace(&a.product_space(m, &n2), m);
    let m_my = a.sum(m, &a.product_space(m, &[y.clone()]));
    let sub3 = c != m && a.contains(r, &y2) && m_my.len() - m.len() == l.k;
    let subcase = [(sub1, "(1)"), (sub2, "(2)"), (sub3, "(3)")].iter().find(|(b, _)| *b).map(|(_, s)| *s);
    facts.push(("M^2 within (R:S) within M".into(), yes(bracket)));
    facts.push(("simple generator".into(), a.format(&y)));
    facts.push(("subcase".into(), subcase.unwrap_or("none").into()));
    let criterion = bracket && subcase.is_some();
    if criterion {
        let middle = a.sum(r, &n2);
        let expected = vec![r.clone(), middle, s];
        checks.push(Check::new("interval is R, R + N^2, S", l.lattice.nodes == expected));
    }
    Ok(Verdict { label: "(6)", class: "subintegral, simple".into(), predicted: Some(criterion), count: Some(3) })
}

fn t_closed(l: &Local, facts: &mut Vec<(String, String)>, checks: &mut Vec<Check>) -> Result<Verdict> {
    let a = &l.a;
    let class = "t-closed".to_string();
    checks.push(Check::new("t-closed forces (R:S) = M", l.cond == l.m));
    let sbar = a.quotient(&l.cond)?;
    let is_field = nilradical(&sbar, &sbar.full()).is_empty() && primitive_idempotents(&sbar, &sbar.full())?.len() == 1;
    if l.cond != l.m || !is_field {
        return Ok(Verdict { label: "out of scope", class, predicted: None, count: None });
    }
    let rbar = sbar.span(&l.r.iter().map(|v| a.quotient_coords(&l.cond, v)).collect::<Vec<_>>());
    let residue = l.residue_order();
    let b = sbar.dim() / rbar.len();
    // Principal subfields of S/M over R/M: the fixed fields of the powers of Frobenius.
    let full = sbar.full();
    let mut subfields: Vec<Space> = Vec::new();
    let mut power = 1u64;
    for _ in 1..b {
        power *= residue;
        let images: Vec<Vector> = full.iter().map(|x| sbar.sub(&sbar.pow(x, power), x)).collect();
        let fixed = sbar.linear_kernel(&full, &images);
        if !subfields.contains(&fixed) {
            subfields.push(fixed);
        }
    }
    subfields.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let t = subfields.len();
    let base_in_e = subfields.contains(&rbar);
    let pairwise = (0..t).all(|i| (i + 1..t).all(|j| sbar.intersect(&subfields[i], &subfields[j]) == rbar));
    facts.push(("t".into(), t.to_string()));
    facts.push((
        "principal subfield degrees".into(),
        subfields.iter().map(|e| (e.len() / rbar.len()).to_string()).collect::<Vec<_>>().join(", "),
    ));
    Ok(Verdict {
        label: "(8d)",
        class,
        predicted: Some(t > 1 && pairwise),
        count: Some(if base_in_e { t + 1 } else { t + 2 }),
    })
}
