use thiserror::Error;

/// Errors raised across the crate. The variant name is what the CLI reports
/// on standard error.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("element is a zero divisor (or zero) and has no inverse")]
    ZeroDivisor,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("endomorphism is not an involution: max |K^2 - I| = {residual:e}")]
    NotInvolutive { residual: f64 },

    #[error("matrix is not symmetric: max |G - G^T| = {residual:e}")]
    NotSymmetric { residual: f64 },

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("form has index {index}, a Lorentzian form needs index 1")]
    NotLorentzian { index: usize },

    #[error("zero vector")]
    ZeroVector,

    #[error("special point: an idempotent sheet of the coordinate vector vanishes")]
    SpecialPoint,

    #[error("collineation collapses a sheet of the point")]
    DegenerateImage,

    #[error("collineation matrix is singular on the {sheet} sheet")]
    SingularCollineation { sheet: &'static str },

    #[error("Hermitian norm vanishes: the point lies on the absolute")]
    NullNorm,

    #[error("points are not collinear on the {sheet} sheet (residual {residual:e})")]
    NotCollinear { sheet: &'static str, residual: f64 },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(&'static str),

    #[error("line does not meet the polar hyperplanes on the {sheet} sheet")]
    LineMissesQuadric { sheet: &'static str },

    #[error("vector is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("direction is not tangent (|<q, v>| = {residual:e})")]
    NotTangent { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("measure is not in the positive cone")]
    NotInCone,

    #[error("distribution is not in the interior of the simplex")]
    NotInterior,

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("Fisher metric is singular (smallest eigenvalue {min_eigenvalue:e})")]
    SingularFamily { min_eigenvalue: f64 },

    #[error("frame {{r, X_1..X_n}} is rank deficient")]
    FrameDegenerate,

    #[error("frame decomposition residual {residual:e} exceeds {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    #[error("non-finite value encountered")]
    NonFinite,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Short variant name, e.g. `NotInCone`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDivisor => "ZeroDivisor",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInvolutive { .. } => "NotInvolutive",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::NotHermitian => "NotHermitian",
            Error::NotLorentzian { .. } => "NotLorentzian",
            Error::ZeroVector => "ZeroVector",
            Error::SpecialPoint => "SpecialPoint",
            Error::DegenerateImage => "DegenerateImage",
            Error::SingularCollineation { .. } => "SingularCollineation",
            Error::NullNorm => "NullNorm",
            Error::NotCollinear { .. } => "NotCollinear",
            Error::DegenerateConfiguration(_) => "DegenerateConfiguration",
            Error::LineMissesQuadric { .. } => "LineMissesQuadric",
            Error::NotUnit { .. } => "NotUnit",
            Error::NotTangent { .. } => "NotTangent",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NotInCone => "NotInCone",
            Error::NotInterior => "NotInterior",
            Error::NotADistribution(_) => "NotADistribution",
            Error::SingularFamily { .. } => "SingularFamily",
            Error::FrameDegenerate => "FrameDegenerate",
            Error::ResidualTooLarge { .. } => "ResidualTooLarge",
            Error::NonFinite => "NonFinite",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
