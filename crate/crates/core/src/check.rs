use serde::{Deserialize, Serialize};

/// A named invariant together with whether it held on a given input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Check { name: name.into(), holds }
    }
}

/// Names of the checks that failed.
pub fn failures(checks: &[Check]) -> Vec<&str> {
    checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect()
}
