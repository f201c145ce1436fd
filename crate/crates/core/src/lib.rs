//! Matrix-scale machinery for classifying gapped tight-binding Hamiltonians
//! with chiral / time-reversal / particle-hole symmetries.
//!
//! The crate has three layers:
//!
//! * algebraic: explicit matrix models of Clifford algebras ([`clifford`]),
//!   graded real structures and their sign invariants ([`graded`]), and the
//!   odd-self-adjoint-unitary calculus with explicit homotopy witnesses
//!   ([`vandaele`]);
//! * model: finitely supported Bloch Hamiltonians on the d-torus and their
//!   symmetry verification ([`models`]);
//! * numerical: classification lookups ([`classify`]) and strong invariants
//!   (winding, Chern, Z2) computed on sampled grids ([`invariants`]).
//!
//! Everything is pure and deterministic; values are immutable after
//! construction and safe to share across threads.

pub mod clifford;
pub mod classify;
pub mod graded;
pub mod invariants;
pub mod mat;
pub mod models;
pub mod report;
pub mod suites;
pub mod vandaele;

/// Default tolerance for algebraic residuals (relations, intertwinings).
pub const TOL_ALG: f64 = 1e-10;
/// Default tolerance below which a spectral gap counts as closed.
pub const TOL_GAP: f64 = 1e-8;
/// Tolerance for coercing a matrix to a scalar sign.
pub const TOL_SCALAR: f64 = 1e-8;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("matrix is not self-adjoint (residual {residual:.3e})")]
    NotSelfAdjoint { residual: f64 },
    #[error("{what} is not a scalar multiple of the identity")]
    NotScalar { what: String },
    #[error("{what} is not ±1 (distance to +1: {to_plus:.3e}, to -1: {to_minus:.3e})")]
    NotScalarSign {
        what: String,
        to_plus: f64,
        to_minus: f64,
    },
    #[error("matrix is not homogeneous: ΓxΓ is neither +x nor -x (residuals {to_plus:.3e}, {to_minus:.3e})")]
    NotHomogeneous { to_plus: f64, to_minus: f64 },
    #[error("dimension guard exceeded: r + s = {total} > {max}")]
    DimensionGuard { total: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no antipodal spectral gap found (widest gap {widest:.3e})")]
    NoSpectralGap { widest: f64 },
    #[error("gap failure at k = {at:?}: smallest |eigenvalue| = {value:.3e}")]
    GapFailure { at: Vec<f64>, value: f64 },
    #[error("hypothesis fails: {what}")]
    Hypothesis { what: String },
    #[error("relation violation between generators {i} and {j} (residual {residual:.3e})")]
    RelationViolation { i: usize, j: usize, residual: f64 },
    #[error("rank deficiency: generated algebra has rank {got}, expected {expected}")]
    RankDeficiency { got: usize, expected: usize },
    #[error("inconsistent real structures: {what}")]
    InconsistentReal { what: String },
    #[error("inconsistent symmetry profile: {what}")]
    InconsistentProfile { what: String },
    #[error("unsupported: {what}")]
    Unsupported { what: String },
    #[error("schema violation in {field}: {what}")]
    Schema { field: String, what: String },
    #[error("numerical failure: {what} (residual {residual:.3e})")]
    Numerical { what: String, residual: f64 },
    #[error("rounding residual {residual:.3e} exceeds {limit:.3e} for {what}")]
    Rounding {
        what: String,
        residual: f64,
        limit: f64,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
