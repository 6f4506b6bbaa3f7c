use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("the zero form has no roots")]
    ZeroForm,
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),
    #[error("tetrahedron is not regular: {0}")]
    NotRegular(String),
    #[error("vector is not on the Plücker quadric (residual {0:e})")]
    NotOnQuadric(f64),
    #[error("subspace is not Lagrangian (residual {0:e})")]
    NotLagrangian(f64),
    #[error("point is not on the axis from -i to i (offset {0:e})")]
    NotOnAxis(f64),
    #[error("orthogonal projection is undefined at boundary points of the real line")]
    UndefinedProjection,
    #[error("Lagrangian lies in K_R, outside the domain Omega")]
    NotInOmega,
    #[error("vertex height {height} is within tolerance of the threshold {threshold}")]
    AmbiguousBoundary { height: f64, threshold: f64 },
    #[error("{count} vertices lie below the threshold, expected at most one")]
    MultipleBottomVertices { count: usize },
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("form is not unimodular over the integers: {0}")]
    NotUnimodular(String),
    #[error("inconsistent exact sequence: {0}")]
    InconsistentSequence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
