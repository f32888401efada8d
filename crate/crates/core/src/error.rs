use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {0} is out of range (LTQ_n needs 2 <= n <= {max})", max = crate::label::MAX_DIM)]
    Dimension(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid vertex label {0:?}")]
    InvalidLabel(String),

    #[error("decimal value {value} does not fit in {n} bits")]
    DecimalOutOfRange { value: u64, n: usize },

    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("vertices {0} and {1} are identical")]
    SameVertex(String, String),

    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(String, String),

    #[error("{0} and {1} are not a Dim-(n-1) pair")]
    NotPartnerPair(String, String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("resource limit: n = {n} exceeds the configured cap {cap}")]
    ResourceLimit { n: usize, cap: usize },

    #[error("malformed polyline for edge {edge}: {reason}")]
    MalformedPolyline { edge: String, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("structural error: {0}")]
    Structure(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("property {property} violated: {witness}")]
    Property { property: u8, witness: String },

    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
