use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the class of problem so that front ends can map
/// them onto distinct exit codes (see [`ShlError::class`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShlError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("contraction of a {vector_degree}-vector into a {form_degree}-form")]
    ContractionDegree { vector_degree: usize, form_degree: usize },

    #[error("singular matrix")]
    SingularMatrix,

    #[error("d^2 != 0 on generators {generators:?} (1-based)")]
    Jacobi { generators: Vec<usize> },

    #[error("omega not closed")]
    OmegaNotClosed,

    #[error("omega degenerate: {0}")]
    OmegaDegenerate(String),

    #[error("bad group: {0}")]
    BadGroup(String),

    #[error("group too large / infinite: closure exceeded {bound} elements")]
    GroupTooLarge { bound: usize },

    #[error("group generator {generator} (1-based) does not commute with d")]
    NotAutomorphism { generator: usize },

    #[error("bad foliation: {0}")]
    BadFoliation(String),

    #[error("codimension must be even (got {0})")]
    OddCodimension(usize),

    #[error("form is not basic")]
    NotBasic,

    #[error("form is outside the domain of the star operator")]
    OutsideDomain,

    #[error("form is not in the subcomplex")]
    NotInSubcomplex,

    #[error("not closed")]
    NotClosed,

    #[error("no solution")]
    NoSolution,

    #[error("hypothesis violated at k={k}: L^{k} : H^{from_degree} -> H^{to_degree} is not surjective")]
    HypothesisViolated { k: usize, from_degree: usize, to_degree: usize },

    #[error("equivalence violated: {0}")]
    EquivalenceViolated(String),

    #[error("operator identity violated: {0}")]
    IdentityViolated(String),

    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
}

/// Coarse classification used for exit codes and diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Jacobi,
    OmegaDegenerate,
    OmegaNotClosed,
    Group,
    Foliation,
    NotClosed,
    Hypothesis,
    Internal,
    UnknownFixture,
}

impl ShlError {
    pub fn class(&self) -> ErrorClass {
        use ShlError::*;
        match self {
            Parse(_) | DimensionMismatch { .. } | DegreeMismatch { .. } => ErrorClass::Parse,
            Jacobi { .. } => ErrorClass::Jacobi,
            OmegaDegenerate(_) => ErrorClass::OmegaDegenerate,
            OmegaNotClosed => ErrorClass::OmegaNotClosed,
            BadGroup(_) | GroupTooLarge { .. } | NotAutomorphism { .. } | SingularMatrix => {
                ErrorClass::Group
            }
            BadFoliation(_) | OddCodimension(_) | NotBasic => ErrorClass::Foliation,
            NotClosed => ErrorClass::NotClosed,
            HypothesisViolated { .. } => ErrorClass::Hypothesis,
            UnknownFixture(_) => ErrorClass::UnknownFixture,
            ContractionDegree { .. } | OutsideDomain | NotInSubcomplex | NoSolution
            | EquivalenceViolated(_) | IdentityViolated(_) => ErrorClass::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, ShlError>;
