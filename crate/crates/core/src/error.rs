use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd undefined: both operands are zero")]
    GcdUndefined,
    #[error("not a field: defining polynomial {0} is reducible")]
    NotAField(String),
    #[error("separable required: {0} has a repeated root")]
    SeparableRequired(String),
    #[error("squarefree required")]
    SquarefreeRequired,
    #[error("not a factor of the defining polynomial")]
    NotAFactor,
    #[error("not Galois: the defining polynomial does not split over the field")]
    NotGalois,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("non-rational coefficient at position {pos}")]
    NonRational { pos: usize },
    #[error("invalid algebra presentation: {0}")]
    InvalidAlgebra(String),
    #[error("not a proper extension: R equals S")]
    NotAnExtension,
    #[error("too large: {what} needs {needed} candidates, cap is {cap}")]
    TooLarge { what: String, needed: u128, cap: u128 },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooLarge { .. } => 2,
            Error::Consistency(_) => 3,
            _ => 1,
        }
    }
}
