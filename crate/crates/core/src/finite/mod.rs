//! Finite commutative algebras over `F_q`: presentations, ideals, closures,
//! subalgebra lattices and the length-two case analysis.

pub mod algebra;
pub mod analysis;
pub mod cases;
pub mod enumerate;
pub mod groebner;
pub mod present;

pub use algebra::{FiniteAlgebra, Space, Vector};
pub use analysis::{
    analyze, classify_minimal_type, conductor, crucial_ideal, maximal_ideals, nilradical, seminormalize, support,
    t_close, ExtensionAnalysis, MaximalIdeal, MinimalType,
};
pub use cases::{check_length_two_predicates, CaseReport};
pub use enumerate::{enumerate_subalgebras, SubalgebraLattice};
pub use present::{parse_algebra, Presentation};

/// Default bound on enumerated candidates (elements or subspaces).
pub const DEFAULT_CAP: u128 = 1_000_000;

/// The enumeration cap: `L2LAB_CAP` if set to a positive integer, else [`DEFAULT_CAP`].
pub fn enumeration_cap() -> u128 {
    std::env::var("L2LAB_CAP")
        .ok()
        .and_then(|s| s.trim().parse::<u128>().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_CAP)
}

/// Fails unless `needed` candidates fit within `cap`.
pub(crate) fn within_cap(what: &str, needed: Option<u128>, cap: u128) -> crate::Result<()> {
    match needed {
        Some(n) if n <= cap => Ok(()),
        _ => Err(crate::Error::TooLarge { what: what.into(), needed: needed.unwrap_or(u128::MAX), cap }),
    }
}
