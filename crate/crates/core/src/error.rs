use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not unitary: ‖U†U − I‖ = {defect:e}")]
    NotUnitary { defect: f64 },

    #[error("matrix is not Hermitian: ‖M − M†‖ = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("basis columns are not orthonormal: defect {defect:e}")]
    NotOrthonormal { defect: f64 },

    /// The caller must split off the eigenvalue-1 subspace first.
    #[error("eigenvalue within {distance:e} of 1 (tolerance {tol:e})")]
    EigenvalueOne { distance: f64, tol: f64 },

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("rank deficiency: expected rank {expected}, got {got}")]
    RankDeficient { expected: usize, got: usize },

    #[error("Bessel argument outside validity envelope: order {order}, x = {x}")]
    BesselEnvelope { order: usize, x: f64 },

    #[error("function has nonzero trace (‖γψ‖ = {norm:e})")]
    NonzeroTrace { norm: f64 },

    #[error("trace lies outside the form domain: ‖P_U γψ‖ = {defect:e}")]
    FormDomain { defect: f64 },

    #[error("λ = {lambda} is not an eigenvalue: σ_min = {sigma:e}")]
    NotARoot { lambda: f64, sigma: f64 },

    #[error("quadrature failure: {0}")]
    Quadrature(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Input-contract violations as opposed to numerical breakdown.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Eigensolver(_)
                | Error::RankDeficient { .. }
                | Error::Quadrature(_)
                | Error::NotARoot { .. }
                | Error::EigenvalueOne { .. }
        )
    }
}
