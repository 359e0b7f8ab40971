use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree bound {bound} is below the polynomial degree {degree}")]
    InvalidBound { bound: usize, degree: usize },

    #[error("invalid degree: {0}")]
    InvalidDegree(String),

    #[error("resultant is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("a_1 = a_g = 0: dihedral invariants vanish identically")]
    DegenerateLocus,

    #[error("root of unity does not have order {expected}")]
    InvalidRoot { expected: usize },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("no extra involution detected over the field of definition")]
    NotInLocus,

    #[error("cannot normalize over Q: {0}")]
    NotNormalizable(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("model polynomial is not squarefree")]
    DegenerateModel,

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
