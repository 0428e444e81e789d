use crate::bound::RegimeCase;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },

    /// The closed form needs `g_k` with `k/(alpha-2)` away from the positive
    /// integers. Callers should fall back to quadrature.
    #[error("alpha = {alpha} is at or within {guard} of an excluded value of the closed form; use the quadrature bound instead")]
    ExcludedAlpha { alpha: f64, guard: f64 },

    #[error("adaptive quadrature did not converge: estimate {estimate} with error estimate {error_estimate} after {intervals} intervals")]
    QuadratureNonConvergence {
        estimate: f64,
        error_estimate: f64,
        intervals: usize,
    },

    #[error("regime is ambiguous between {first} and {second} (s_short = {s_short}, s_long = {s_long})")]
    AmbiguousRegime {
        first: RegimeCase,
        second: RegimeCase,
        s_short: f64,
        s_long: f64,
    },

    #[error("coincident transmitter and receiver positions")]
    DegenerateGeometry,

    #[error("matrix lost positive definiteness during factorization (pivot {pivot} = {value})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("truncation tail fraction {fraction:e} exceeds cap {cap:e}; enlarge the truncation radius")]
    TruncationTooSmall { fraction: f64, cap: f64 },

    #[error("interval [{low}, {high}] does not bracket the target crossing probability ({p_low} .. {p_high})")]
    NonBracketing {
        low: f64,
        high: f64,
        p_low: f64,
        p_high: f64,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { name, reason }
    }

    /// True for errors caused by the inputs rather than by the numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::ExcludedAlpha { .. }
                | Error::DegenerateGeometry
                | Error::TruncationTooSmall { .. }
                | Error::NonBracketing { .. }
                | Error::AmbiguousRegime { .. }
        )
    }
}
