//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by state construction, radial integrals, perturbation
/// sums, and report generation.
#[derive(Debug, Error)]
pub enum Error {
    /// A quantum-number combination or state label is malformed.
    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    /// The coupling is at or above the critical value alpha = l + 1/2 where
    /// the effective angular exponent nu becomes complex and the bound state
    /// ceases to exist.
    #[error("critical coupling: alpha = {alpha} >= l + 1/2 for l = {l}")]
    CriticalCoupling { l: u32, alpha: f64 },

    /// A denominator factor of a closed-form radial moment vanished exactly.
    #[error("pole in closed-form radial moment: factor {factor} vanishes at nu = {nu}")]
    MomentPole { factor: &'static str, nu: f64 },

    /// The integrand carries a non-integrable singularity at the origin
    /// (power-law exponent <= -1).
    #[error("divergent integral: origin exponent {exponent} <= -1")]
    DivergentIntegral { exponent: f64 },

    /// Successive quadrature orders failed to agree to the requested
    /// relative tolerance even at the largest order.
    #[error(
        "quadrature did not converge: last two estimates {previous:e} and {last:e} \
         disagree beyond relative {tolerance:e}"
    )]
    QuadratureAccuracy {
        last: f64,
        previous: f64,
        tolerance: f64,
    },

    /// An energy denominator in a perturbative sum is numerically degenerate.
    #[error("degenerate energy denominator between levels at {a} and {b} MeV")]
    DegenerateDenominator { a: f64, b: f64 },

    /// The transition shift coefficient vanished, so no finite bound on the
    /// noncommutativity parameter follows from the given precision.
    #[error("transition shift coefficient is zero; theta is unbounded by this transition")]
    UnboundedTheta,

    /// Command-line / configuration problems (maps to exit code 2).
    #[error("usage: {0}")]
    Usage(String),

    /// One or more selfcheck suites failed.
    #[error("selfcheck failed: {failed} of {total} suites out of tolerance")]
    SelfcheckFailed { failed: usize, total: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
