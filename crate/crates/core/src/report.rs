//! Classification reports for both engines, rendered as text, JSON or DOT.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::check::{failures, Check};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::finite::{analyze, check_length_two_predicates, FiniteAlgebra, Presentation, Vector};
use crate::lattice::{build_lattice, describe_nodes, galois_length_two_check, is_length_two, verify_lattice, Poset};
use crate::numfield::make_field;
use crate::parse::{format_polynomial, parse_polynomial};
use crate::principal::{compute_principal_subfields, index_set_i};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    NumberField,
    FiniteAlgebra,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::NumberField => "number-field",
            Engine::FiniteAlgebra => "finite-algebra",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "OK")]
    Ok,
    #[serde(rename = "FAILED")]
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalSubfieldWitness {
    pub description: String,
    pub degree: usize,
    /// Minimal polynomial of `x` over the subfield.
    pub min_poly: String,
    /// Indices of the factors whose principal subfield this is.
    pub factors: Vec<usize>,
    /// Indices of the factors dividing `min_poly`; contains `factors`, sometimes strictly.
    pub index_set: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defining_polynomial: Option<String>,
    /// Irreducible factors of the defining polynomial over `L`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principal_subfields: Option<Vec<PrincipalSubfieldWitness>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_is_principal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub galois: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conductor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crucial_ideal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seminormalization: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_closure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facts: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeNode {
    pub dim: usize,
    pub label: String,
    /// Echelon basis, as displayed elements.
    pub basis: Vec<String>,
}

/// Nodes in ascending order and the covering pairs `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeView {
    pub nodes: Vec<LatticeNode>,
    pub covers: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub input: String,
    pub engine: Engine,
    pub minimal: bool,
    pub length: usize,
    pub observed_count: usize,
    pub predicted_count: Option<usize>,
    pub case: String,
    pub length_two: bool,
    pub status: Status,
    pub witnesses: Witnesses,
    pub lattice: LatticeView,
    pub checks: Vec<Check>,
    pub timing_ms: f64,
}

impl ClassificationReport {
    pub fn failed_checks(&self) -> Vec<&str> {
        failures(&self.checks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// A digraph with edges from each node to the nodes covering it.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, n) in self.lattice.nodes.iter().enumerate() {
            let label = format!("dim {}\\n{}", n.dim, escape(&n.label));
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for [lo, hi] in &self.lattice.covers {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
        out.push_str("}\n");
        out
    }

    pub fn lattice_text(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.lattice.nodes.iter().enumerate() {
            let _ = writeln!(out, "{i}: {} (dim {})", n.label, n.dim);
        }
        for [lo, hi] in &self.lattice.covers {
            let _ = writeln!(out, "{lo} < {hi}");
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &self.witnesses;
        let _ = writeln!(out, "input: {}", self.input);
        let _ = writeln!(out, "engine: {}", self.engine.as_str());
        if let Some(f) = &w.defining_polynomial {
            let _ = writeln!(out, "defining polynomial: {f}");
        }
        if let Some(fs) = &w.factors {
            let _ = writeln!(out, "factors over L:");
            for (i, f) in fs.iter().enumerate() {
                let _ = writeln!(out, "  f{i} = {f}");
            }
        }
        if let Some(es) = &w.principal_subfields {
            let _ = writeln!(out, "principal subfields (t = {}):", es.len());
            for (i, e) in es.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  E{} = {} [degree {}] from factors {:?}, dividing {:?}, min poly {}",
                    i + 1,
                    e.description,
                    e.degree,
                    e.factors,
                    e.index_set,
                    e.min_poly
                );
            }
        }
        if let Some(q) = w.q {
            let _ = writeln!(out, "base field: F{q}");
        }
        if let Some(b) = &w.basis {
            let _ = writeln!(out, "basis of S: {}", b.join(", "));
        }
        let pairs: [(&str, &Option<String>); 7] = [
            ("R", &w.r),
            ("conductor", &w.conductor),
            ("crucial ideal", &w.crucial_ideal),
            ("seminormalization", &w.seminormalization),
            ("t-closure", &w.t_closure),
            ("minimal type", &w.minimal_type),
            ("class", &w.class),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        if let Some(s) = w.support_size {
            let _ = writeln!(out, "support size: {s}");
        }
        if let Some(facts) = &w.facts {
            for (k, v) in facts {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        let _ = writeln!(out, "minimal: {}", if self.minimal { "yes" } else { "no" });
        let _ = writeln!(out, "length: {}", self.length);
        match self.predicted_count {
            Some(p) => {
                let _ = writeln!(out, "intermediate count: {} (predicted {p})", self.observed_count);
            }
            None => {
                let _ = writeln!(out, "intermediate count: {}", self.observed_count);
            }
        }
        let _ = writeln!(out, "case: {}", self.case);
        let failed = self.failed_checks();
        let _ = writeln!(out, "checks: {} passed, {} failed", self.checks.len() - failed.len(), failed.len());
        for f in failed {
            let _ = writeln!(out, "  FAILED: {f}");
        }
        let _ = writeln!(out, "status: {}", if self.status == Status::Ok { "OK" } else { "FAILED" });
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn covers(poset: &Poset) -> Vec<[usize; 2]> {
    let mut c: Vec<[usize; 2]> = poset.covers().iter().map(|&(a, b)| [a, b]).collect();
    c.sort();
    c
}

fn finish(mut report: ClassificationReport, start: Instant) -> ClassificationReport {
    if let Some(p) = report.predicted_count {
        report.checks.push(Check::new("predicted count equals observed count", p == report.observed_count));
    }
    report.status = if report.failed_checks().is_empty() { Status::Ok } else { Status::Failed };
    report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    report
}

/// Classifies `Q ⊂ Q[X]/(f)` through its principal subfields.
pub fn classify_polynomial(text: &str) -> Result<ClassificationReport> {
    let start = Instant::now();
    let f = parse_polynomial(text)?;
    let field = make_field(&f)?;
    let ps = compute_principal_subfields(&field)?;
    let lat = build_lattice(&ps)?;
    let verdict = is_length_two(&ps);
    let mut checks = verify_lattice(&ps, &lat);
    let galois = match galois_length_two_check(&ps, &lat) {
        Ok(g) => {
            checks.extend(g.checks);
            true
        }
        Err(Error::NotGalois) => false,
        Err(e) => return Err(e),
    };
    let length = lat.length();
    let principal = ps
        .e
        .iter()
        .enumerate()
        .map(|(b, k)| PrincipalSubfieldWitness {
            description: k.describe(&field),
            degree: k.dim(),
            min_poly: field.format_poly(&ps.m[b]),
            factors: ps.gamma[b].clone(),
            index_set: index_set_i(k, &ps.system),
        })
        .collect();
    let labels = describe_nodes(&field, &lat);
    let nodes = lat
        .nodes
        .iter()
        .zip(labels)
        .map(|(k, label)| LatticeNode { dim: k.dim(), label, basis: k.basis().iter().map(|b| b.to_string()).collect() })
        .collect();
    let report = ClassificationReport {
        input: text.to_string(),
        engine: Engine::NumberField,
        minimal: lat.count() == 2,
        length,
        observed_count: lat.count(),
        predicted_count: verdict.predicted_count,
        case: if verdict.holds { "(8d)".into() } else { "not length 2".into() },
        length_two: length == 2,
        status: Status::Ok,
        witnesses: Witnesses {
            defining_polynomial: Some(format_polynomial(&f)),
            factors: Some(ps.system.factors.iter().map(|g| field.format_poly(g)).collect()),
            principal_subfields: Some(principal),
            t: Some(ps.t()),
            base_is_principal: Some(verdict.k_in_e),
            galois: Some(galois),
            ..Witnesses::default()
        },
        lattice: LatticeView { nodes, covers: covers(&lat.poset) },
        checks,
        timing_ms: 0.0,
    };
    Ok(finish(report, start))
}

/// A short generating set of `t` over `r`, e.g. `R[X, Y]`.
fn generator_label(a: &FiniteAlgebra, r: &[Vector], t: &[Vector]) -> String {
    let mut gens: Vec<Vector> = Vec::new();
    let mut cur = r.to_vec();
    for v in t {
        if !a.contains(&cur, v) {
            gens.push(v.clone());
            let mut all = r.to_vec();
            all.extend(gens.iter().cloned());
            cur = a.subalgebra_generated(&all);
        }
    }
    if gens.is_empty() {
        return "R".into();
    }
    let parts: Vec<String> = gens.iter().map(|g| a.format(g)).collect();
    format!("R[{}]", parts.join(", "))
}

/// Classifies the extension `R ⊂ S` of a parsed presentation; `input` is echoed.
pub fn classify_algebra(input: &str, p: &Presentation) -> Result<ClassificationReport> {
    let start = Instant::now();
    let a = &p.algebra;
    let an = analyze(a, &p.r)?;
    let cr = check_length_two_predicates(&an)?;
    let lat = &an.lattice;
    let length = lat.length();
    let nodes = lat
        .nodes
        .iter()
        .map(|t| LatticeNode {
            dim: t.len(),
            label: generator_label(a, &p.r, t),
            basis: t.iter().map(|v| a.format(v)).collect(),
        })
        .collect();
    let report = ClassificationReport {
        input: input.to_string(),
        engine: Engine::FiniteAlgebra,
        minimal: lat.count() == 2,
        length,
        observed_count: lat.count(),
        predicted_count: cr.predicted_count,
        case: cr.case.clone(),
        length_two: length == 2,
        status: Status::Ok,
        witnesses: Witnesses {
            q: Some(a.field().order()),
            basis: Some(a.names().to_vec()),
            r: Some(a.describe(&p.r)),
            conductor: Some(a.describe(&an.conductor)),
            crucial_ideal: an.crucial.map(|i| a.describe(&an.max_r[i].ideal)),
            seminormalization: Some(a.describe(&an.seminormalization)),
            t_closure: Some(a.describe(&an.t_closure)),
            support_size: Some(an.support.len()),
            minimal_type: Some(an.minimal_type.as_str().into()),
            class: Some(cr.class.clone()),
            facts: Some(cr.facts.iter().cloned().collect()),
            ..Witnesses::default()
        },
        lattice: LatticeView { nodes, covers: covers(&lat.poset) },
        checks: cr.checks,
        timing_ms: 0.0,
    };
    Ok(finish(report, start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::parse_algebra;

    #[test]
    fn quartic_with_two_principal_subfields() {
        let r = classify_polynomial("X^4 - 2").unwrap();
        assert_eq!(r.case, "(8d)");
        assert_eq!(r.witnesses.t, Some(2));
        assert_eq!(r.observed_count, 3);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.lattice.covers, vec![[0, 1], [1, 2]]);
    }

    #[test]
    fn dot_edges_follow_covers() {
        let r = classify_polynomial("X^4 - 10*X^2 + 1").unwrap();
        let dot = r.to_dot();
        assert!(dot.starts_with("digraph lattice {"));
        assert_eq!(dot.matches(" -> ").count(), 6);
        assert!(dot.contains("n0 -> n1;"));
    }

    #[test]
    fn algebra_report_labels_nodes_by_generators() {
        let doc = r#"{"q": 2, "quotient": "F2[Y]/(Y^3)", "R": "[1]"}"#;
        let r = classify_algebra(doc, &parse_algebra(doc).unwrap()).unwrap();
        let labels: Vec<&str> = r.lattice.nodes.iter().map(|n| n.label.as_str()).collect();
        assert_eq!(labels, ["R", "R[Y^2]", "R[Y]"]);
        assert_eq!(r.case, "(6)");
        assert_eq!(r.status, Status::Ok);
    }

    #[test]
    fn failed_prediction_flags_the_report() {
        let doc = r#"{"q": 2, "product": ["F2", "F2", "F2"], "R": "diagonal"}"#;
        let mut r = classify_algebra(doc, &parse_algebra(doc).unwrap()).unwrap();
        r.predicted_count = Some(r.observed_count + 1);
        r.checks.clear();
        let r = finish(r, Instant::now());
        assert_eq!(r.status, Status::Failed);
    }
}
