use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    GammaPole(Complex64),

    #[error("accuracy budget cannot be met for D_a(z) at a = {a}, z = {z}: {reason}")]
    AccuracyLoss {
        a: Complex64,
        z: Complex64,
        reason: &'static str,
    },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("profile does not decay at the boundary: |u0| = {value:e} at x = {x} exceeds {tol:e}")]
    BoundaryDecay { x: f64, value: f64, tol: f64 },

    #[error("step size underflow at x = {x} (h = {h:e}); profile too rough for tolerance {tol:e}")]
    StepUnderflow { x: f64, h: f64, tol: f64 },

    #[error("|s33(k)| = {modulus:e} below zero guard at k = {k}")]
    NearZeroS33 { k: f64, modulus: f64 },

    #[error("reflection table does not resolve {what}: {detail}")]
    TableResolution { what: &'static str, detail: String },

    #[error("symmetry violated: {what} residual {residual:e} exceeds {tol:e}")]
    Symmetry {
        what: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error("evaluation point k = {k} is within {cutoff:e} of a stationary point")]
    TooCloseToStationaryPoint { k: Complex64, cutoff: f64 },

    #[error("similarity variable zeta = {zeta} outside the admissible range (0, {max}]")]
    ZetaOutOfRange { zeta: f64, max: f64 },

    #[error("asymptotic routes disagree: relative difference {0:e}")]
    RouteMismatch(f64),

    #[error("invalid simulation grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite field value at t = {t}")]
    BlowUp { t: f64 },

    #[error("mass drift {drift:e} at t = {t} exceeds {tol:e}")]
    MassDrift { t: f64, drift: f64, tol: f64 },

    #[error("boundary amplitude {amplitude:e} at t = {t} exceeds contamination threshold {tol:e}")]
    WindowContamination { t: f64, amplitude: f64, tol: f64 },

    #[error("comparison needs at least {needed} snapshot times, got {got}")]
    InsufficientSnapshots { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
