use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("modulus divides the argument")]
    DividesModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("factorization exceeds the trial-division bound")]
    FactorizationBound,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} is not irreducible of degree at least 2")]
    ReducibleModulus(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),
    #[error("arguments live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at {pos}: expected {expected}")]
    Parse { pos: usize, expected: String },

    #[error("degenerate form")]
    Degenerate,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("vector is isotropic")]
    IsotropicVector,
    #[error("value is not represented by the form")]
    NotRepresented,
    #[error("class is not in I^{0}")]
    NotInPower(i64),
    #[error("rank parity does not match the Witt class")]
    ParityMismatch,

    #[error("homomorphism is not well defined: relator {0} has nonzero image")]
    IllDefinedHom(usize),
    #[error("homomorphisms do not share a target")]
    TargetMismatch,
    #[error("expression mixes degrees {0} and {1}")]
    MixedDegree(i64, i64),
    #[error("generator count {count} exceeds cap {cap}")]
    TruncationOverflow { count: usize, cap: usize },
    #[error("invalid symbol expression: {0}")]
    InvalidSymbol(String),

    #[error("Pfister tuples have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("Pfister forms are not isometric")]
    IsometryFails,
}

pub type Result<T> = std::result::Result<T, Error>;
