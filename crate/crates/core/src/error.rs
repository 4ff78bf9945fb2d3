use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("malformed polynomial input: {0}")]
    MalformedInput(String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
}

impl From<ScalarError> for PolyError {
    fn from(e: ScalarError) -> Self {
        PolyError::MalformedInput(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("defining function is not real (conjugate swap changes it)")]
    NotRealDefining,
    #[error("both rho_z and rho_w vanish at the point")]
    BranchDegenerate,
    #[error("point is not on the hypersurface (residual {0})")]
    OffSurface(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("phi must be a real polynomial in z and zb only")]
    NotReal,
    #[error("Theta must not depend on w")]
    NotTheta,
    #[error("Levi degenerate graph: Delta vanishes identically")]
    DegenerateGraph,
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipsoidError {
    #[error("invalid ellipsoid spec: {0}")]
    InvalidSpec(String),
    #[error("value out of domain: {0}")]
    OutOfDomain(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadicalError {
    #[error("operands belong to different radical towers")]
    TowerMismatch,
    #[error("generator {0} has zero square and cannot be inverted")]
    NonInvertibleGenerator(String),
    #[error("radical element is not invertible")]
    NonInvertible,
    #[error("trigonometric division is not exact")]
    NonExactDivision,
    #[error("table comparison is degenerate: {0}")]
    DegenerateComparison(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Ellipsoid(#[from] EllipsoidError),
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Ellipsoid(#[from] EllipsoidError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Radical(#[from] RadicalError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
