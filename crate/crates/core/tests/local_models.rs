//! Finite local stand-ins for extensions over special principal ideal rings,
//! with sizes and lengths confirmed by the adjunction oracle.

mod common;

use common::{fact, lattice_by_adjunction, presentation, repo_path};
use l2lab_core::finite::analyze;
use l2lab_core::report::{classify_algebra, ClassificationReport, Status};

fn run(name: &str) -> (ClassificationReport, usize) {
    let doc = std::fs::read_to_string(repo_path(&format!("algebras/{name}.json"))).unwrap();
    let p = presentation(&doc);
    let r = classify_algebra(&doc, &p).unwrap();
    assert_eq!(r.status, Status::Ok, "{name}: {:?}", r.failed_checks());
    let oracle = lattice_by_adjunction(&p.algebra, &p.r);
    assert_eq!(oracle.len(), r.observed_count, "{name}");
    (r, oracle.len())
}

#[test]
fn mixed_relations_is_second_subcase() {
    let (r, n) = run("spir-mixed-relations");
    assert_eq!((n, r.length, r.case.as_str()), (3, 2, "(6)"));
    assert_eq!(fact(&r, "subcase"), Some("(2)"));
    assert_eq!(fact(&r, "(R:S) = M"), Some("no"));
}

#[test]
fn dual_numbers_over_spir_is_third_subcase() {
    let (r, n) = run("spir-dual-numbers");
    assert_eq!((n, r.length, r.case.as_str()), (3, 2, "(6)"));
    assert_eq!(fact(&r, "subcase"), Some("(3)"));
}

#[test]
fn two_branches_have_four_subalgebras() {
    let (r, n) = run("spir-two-branches");
    assert_eq!((n, r.length, r.case.as_str()), (4, 2, "(5)"));
    assert_eq!(fact(&r, "(R:S) = M"), Some("yes"));
}

#[test]
fn four_subalgebras_without_conductor_m_form_a_chain() {
    let (r, n) = run("spir-length-three");
    assert_eq!((n, r.length, r.case.as_str()), (4, 3, "not length 2"));
    assert_eq!(fact(&r, "(R:S) = M"), Some("no"));
    assert_eq!(r.lattice.covers, vec![[0, 1], [1, 2], [2, 3]]);
    let doc = std::fs::read_to_string(repo_path("algebras/spir-length-three.json")).unwrap();
    let p = presentation(&doc);
    let an = analyze(&p.algebra, &p.r).unwrap();
    assert!(an.seminormalization != p.r && an.seminormalization != p.algebra.full());
    assert_eq!(an.t_closure, p.algebra.full());
}
