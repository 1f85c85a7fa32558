use thiserror::Error;

/// Every failure the library reports. Variants name the precondition that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: String, right: String },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has zero constant term (t divides it)")]
    ZeroConstantTerm,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("modulus is not self-reciprocal")]
    NotSelfReciprocal,
    #[error("degree-one modulus: the involution is trivial")]
    DegreeOne,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dimension {got} exceeds cap {cap}")]
    DimensionCap { got: usize, cap: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not semisimple (minimal polynomial not separable)")]
    NotSemisimple,
    #[error("matrix is singular (t divides the characteristic polynomial)")]
    SingularInput,
    #[error("odd dimension {0}; alternating forms need even dimension")]
    OddDimension(usize),
    #[error("form is singular")]
    SingularForm,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("factor {g} has multiplicity {mult} but its reciprocal has multiplicity {mult_reciprocal}")]
    UnpairedFactor {
        g: String,
        mult: usize,
        mult_reciprocal: usize,
    },
    #[error("input polynomial is self-reciprocal; use the self-reciprocal builder")]
    SelfReciprocalInput,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("multiplicity {0} is odd")]
    OddMultiplicity(usize),
    #[error("descriptor is infeasible: {0}")]
    InfeasibleDescriptor(String),
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("group order {order} exceeds cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("closure produced {got} elements, order formula gives {expected}")]
    ClosureMismatch { expected: u128, got: u128 },
    #[error("arithmetic overflow while counting")]
    Overflow,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
