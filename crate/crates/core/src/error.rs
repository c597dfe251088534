use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("defining polynomial is not monic with integer coefficients")]
    NotMonic,
    #[error("defining polynomial is not squarefree")]
    NotSquarefree,
    #[error("defining polynomial is reducible: factor {factor}")]
    DetectedReducible { factor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{p} may divide the index of Z[theta]; pass an explicit monogenicity assertion")]
    IndexDivisor { p: u64 },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("valuation of zero is undefined")]
    ZeroElement,
    #[error("unit group data is required for this field: {0}")]
    MissingUnitData(String),
    #[error("element is not an S-unit")]
    NotSUnit,
    #[error("p-th root extraction failed: {0}")]
    RootExtractionFailed(String),
    #[error("denominator polynomial is zero")]
    ZeroDenominator,
    #[error("operation requires a nonconstant map")]
    ConstantMap,
    #[error("iterate coefficient size {digits} digits exceeds the cap of {cap}")]
    CoefficientBlowup { digits: u64, cap: u64 },
    #[error("internal assertion failed: {0}")]
    AssertionFailed(String),
    #[error("map is not of the shape gamma * mu^d")]
    NotTotallyRamifiedShape,
    #[error("roots are not distinct")]
    RootsNotDistinct,
    #[error("roots do not lie in the field: {0}")]
    RootsNotInField(String),
    #[error("map is not a monic polynomial over O_S: {0}")]
    NotMonicOverOS(String),
    #[error("prime {p} must exceed the degree {degree}")]
    PrimeTooSmall { p: u64, degree: usize },
    #[error("value is not an S-unit")]
    NotSUnitValue,
    #[error("map shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("valuation trajectory mismatch at step {step}: expected {expected}, found {found}")]
    TrajectoryMismatch {
        step: usize,
        expected: i64,
        found: i64,
    },
    #[error("interpolation nodes are not distinct: {0}")]
    DuplicateNodes(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for failures that would contradict a proved statement rather than
    /// reject an input.
    pub fn is_internal_assertion(&self) -> bool {
        matches!(
            self,
            Error::AssertionFailed(_) | Error::TrajectoryMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
