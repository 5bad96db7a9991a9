use thiserror::Error;

/// Errors produced by the geometry, numerics and solver routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid conic: {0}")]
    InvalidConic(String),

    #[error("invalid roulette: {0}")]
    InvalidRoulette(String),

    #[error("invalid patch domain: {0}")]
    InvalidPatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate tangent at t = {t}")]
    DegenerateTangent { t: f64 },

    #[error("degenerate profile jet: {0}")]
    DegenerateJet(String),

    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("quadrature did not converge: estimate {estimate} with error {error_estimate}")]
    QuadratureNonConvergence { estimate: f64, error_estimate: f64 },

    #[error("root is not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NotBracketed { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("singular Jacobian at ({}, {})", .at[0], .at[1])]
    SingularJacobian { at: [f64; 2] },

    #[error("solver did not converge after {iterations} iterations: last iterate ({}, {}), residuals ({}, {})", .iterate[0], .iterate[1], .residuals[0], .residuals[1])]
    NonConvergence {
        iterate: [f64; 2],
        residuals: [f64; 2],
        iterations: usize,
    },

    #[error("infeasible fit: {0}")]
    Infeasible(String),

    #[error("composite join gap {gap:e} exceeds tolerance {tolerance:e}")]
    JoinGap { gap: f64, tolerance: f64 },
}

impl Error {
    /// True for errors caused by invalid caller input rather than numeric failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidConic(_)
                | Error::InvalidRoulette(_)
                | Error::InvalidPatch(_)
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
