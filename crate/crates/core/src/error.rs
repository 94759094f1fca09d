//! Crate-wide error type.

use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("evaluation point {z} is within {dist:.3e} of a pole")]
    PoleHit { z: Complex64, dist: f64 },

    #[error("evaluation point has |z| = {modulus} beyond the declared analytic radius {radius}")]
    DomainViolation { modulus: f64, radius: f64 },

    #[error("expression not evaluable at {z}: {detail}")]
    EvalDomain { z: Complex64, detail: String },

    #[error("Fourier sampling did not converge by 2^{max_log2} points")]
    NonConvergence { max_log2: u32 },

    #[error("lambda = {lambda} comes within {dist:.3e} of the sampled symbol range")]
    LambdaInRange { lambda: Complex64, dist: f64 },

    #[error("probe point {w} lies within {dist:.3e} of the boundary curve (band {band:.3e})")]
    TooCloseToCurve { w: Complex64, dist: f64, band: f64 },

    #[error("winding phase increment unresolved after bisection depth {depth}")]
    PhaseUnresolved { depth: u32 },

    #[error("adaptive curve refinement exceeded {max} samples")]
    MeshOverflow { max: usize },

    #[error("component {id} occupies only {cells} grid cells; increase the grid resolution")]
    GridTooCoarse { id: usize, cells: usize },

    #[error("rectangle aspect ratio {aspect:.3e} outside the supported range [1e-3, 1e3]")]
    AspectOverflow { aspect: f64 },

    #[error("Blaschke zero {zero} lies outside the open unit disk")]
    ZeroOutsideDisk { zero: Complex64 },

    #[error("principal-part peeling left a singular tail: {detail}")]
    PeelFailure { detail: String },

    #[error("invalid parameter: {0}")]
    ParamInvalid(String),

    #[error("lambda = {lambda} does not lie in a bounded zero-valence component")]
    LambdaNotInHole { lambda: Complex64 },

    #[error("could not locate {expected} distinct preimages of mu = {mu}")]
    PreimageSearchFailed { mu: Complex64, expected: usize },

    #[error("preimages of mu = {mu} collide within {dist:.3e}; the multiple-root case is not handled")]
    MultiplePreimagesCollide { mu: Complex64, dist: f64 },

    #[error("denominator series failed to stay away from zero (min {min_abs:.3e}); lambda likely misvalidated")]
    CancellationFailure { min_abs: f64 },

    #[error("orbit norm growth exceeded the overflow guard at step {step}")]
    Overflow { step: usize },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("symbol schema: {0}")]
    Schema(String),
}
