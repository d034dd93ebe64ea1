use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("basis index {index} is not part of the {space} view")]
    IndexNotInView { index: String, space: String },
    #[error("invalid basis label: {0}")]
    InvalidLabel(String),
    #[error("generator indices must differ (got {0},{0})")]
    DegenerateGenerator(u8),
    #[error("mass-shell violated: {0}")]
    MassShell(String),
    #[error("energy is irrational for this mass and momentum: choose a Pythagorean momentum")]
    IrrationalEnergy,
    #[error("|p| is irrational: choose a Pythagorean momentum")]
    IrrationalMomentum,
    #[error("rest-frame: spin direction undefined")]
    RestFrame,
    #[error("mass must be positive")]
    NonPositiveMass,
    #[error("invalid spin/projection combination: spin {spin}, projection {projection}")]
    InvalidSpinProjection { spin: u8, projection: i8 },
    #[error("not a pure state: {0}")]
    NotPureState(String),
    #[error("parameter {name} violates the U(3,1) reality pattern: {detail}")]
    Reality { name: String, detail: String },
    #[error("truncation overflow: state degree would exceed {truncation}")]
    TruncationOverflow { truncation: u32 },
    #[error("vacuum scheme mismatch")]
    SchemeMismatch,
    #[error("zero-norm state")]
    ZeroNorm,
    #[error("angle parameters not representable: {0}")]
    NotRepresentable(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
