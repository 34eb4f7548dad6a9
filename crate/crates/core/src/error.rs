use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon has zero area")]
    DegenerateArea,
    #[error("polygon is not convex")]
    NotConvex,
    #[error("polygon vertices are in clockwise order")]
    Clockwise,
    #[error("zero vector has no direction or affine length")]
    ZeroVector,
    #[error("matrix determinant is {0}, expected +1 or -1")]
    NotUnimodular(i64),
    #[error("probabilities must be positive and sum to 1: {0}")]
    InvalidPmf(String),
    #[error("support shift {0} is not an integer")]
    ShiftNotInteger(String),
    #[error("expected a triangle, got a polygon with {0} sides")]
    NotATriangle(usize),
    #[error("estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    ToleranceNotMet { estimate: f64, tolerance: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TooFewVertices(_) => "TooFewVertices",
            Error::DegenerateArea => "DegenerateArea",
            Error::NotConvex => "NotConvex",
            Error::Clockwise => "Clockwise",
            Error::ZeroVector => "ZeroVector",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::InvalidPmf(_) => "InvalidPmf",
            Error::ShiftNotInteger(_) => "ShiftNotInteger",
            Error::NotATriangle(_) => "NotATriangle",
            Error::ToleranceNotMet { .. } => "ToleranceNotMet",
            Error::Parse { .. } => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
