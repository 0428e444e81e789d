//! Cut-set capacity bounds for Poisson wireless networks.
//!
//! The crate is `no_std` (it needs `alloc`) and covers the full computational
//! stack:
//!
//! * [`ppp`]: homogeneous Poisson point processes in disks, annuli and boxes.
//! * [`specfun`]: the hypergeometric family `g_k` and the closed-form
//!   antiderivative of the cut-set integrand.
//! * [`quad`]: adaptive Gauss-Kronrod quadrature.
//! * [`bound`]: SNR profile, the cut-set bound by quadrature and in closed form,
//!   the asymptotic regime formulas and the regime classifier.
//! * [`montecarlo`]: fading channel matrices, MIMO / MISO / Jensen capacities
//!   and the Monte Carlo estimator of the expected cut-set capacity.
//! * [`percolation`]: Gilbert disk graphs, annulus crossings, vacant loops,
//!   origin-to-box decay and critical-radius estimation.
//!
//! Everything that draws random numbers takes an explicit `u64` seed and
//! derives independent per-trial streams with [`rng::derive_seed`], so results
//! never depend on scheduling. Embedders that want parallel trials supply a
//! [`runner::TrialRunner`].
#![no_std]
// NaN-rejecting `!(x > y)` checks are intentional; quadrature constants are published to full precision.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bound;
pub mod config;
pub mod error;
pub mod linalg;
pub mod montecarlo;
pub mod percolation;
pub mod ppp;
pub mod quad;
pub mod rng;
pub mod runner;
pub mod specfun;
pub mod stats;
pub mod unionfind;

pub use config::NetworkConfig;
pub use error::{Error, Result};

/// Default critical percolation radius at unit density.
pub const CRITICAL_RADIUS: f64 = 1.198;
