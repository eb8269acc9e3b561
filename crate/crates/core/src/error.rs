use thiserror::Error;

/// Errors produced by the simulator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical parameter is outside its admissible range.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// The central-dot detuning vanishes, so the virtual coupling Ω²/Δ is undefined.
    #[error("detuning is zero; the effective interdot coupling is undefined")]
    DegenerateDetuning,

    /// The generator has a null space of dimension > 1: the stationary state is
    /// not unique (bistable regime). `gap` is the second-smallest singular value
    /// relative to the generator norm.
    #[error("stationary state is degenerate (relative singular-value gap {gap:.3e})")]
    DegenerateSteadyState { gap: f64 },

    /// Time evolution did not settle onto a fixed point within the requested horizon.
    #[error("time evolution did not converge (tail drift {drift:.3e})")]
    NonConvergence { drift: f64 },

    /// The high-detuning closed form was requested outside its validity range.
    /// The leading-order value is still carried for advisory use.
    #[error("high-detuning approximation out of range (Δ = {delta:.3} too small); leading-order value {value:.6e}")]
    ApproximationOutOfRange { delta: f64, value: f64 },

    /// The target observable does not change sign over the supplied bracket.
    #[error("no root in bracket [{lo}, {hi}]")]
    NoRootInBracket { lo: f64, hi: f64 },

    /// Generated power is non-positive over the whole scanned bias ray.
    #[error("no power-generating region on the scanned bias ray")]
    NoEngineRegion,

    /// A sweep specification references unknown names or an empty axis.
    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
