#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::CRITICAL_RADIUS;

/// Physical parameters of a Poisson network and its circular cut.
///
/// Units: `density` in nodes/m², `radius` in m, `power` in W, `noise_psd` in
/// W/Hz, `bandwidth` in Hz. `alpha` is the path-loss exponent and
/// `critical_radius` the percolation radius at unit density (`d`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConfig {
    pub density: f64,
    pub radius: f64,
    pub power: f64,
    pub noise_psd: f64,
    pub bandwidth: f64,
    pub alpha: f64,
    pub critical_radius: f64,
}

impl NetworkConfig {
    /// Builds a configuration from the SNR parameter `P/(NW)` with `N = 1`.
    pub fn from_snr_parameter(
        density: f64,
        radius: f64,
        snr_parameter: f64,
        bandwidth: f64,
        alpha: f64,
    ) -> Result<Self> {
        let cfg = NetworkConfig {
            density,
            radius,
            power: snr_parameter * bandwidth,
            noise_psd: 1.0,
            bandwidth,
            alpha,
            critical_radius: CRITICAL_RADIUS,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parameters of the published numerical example: `nu = 1`, `R = 100`,
    /// `W = 1e3`, `d = 1.198`, `N = 1`.
    pub fn canonical(alpha: f64, snr_parameter: f64) -> Result<Self> {
        Self::from_snr_parameter(1.0, 100.0, snr_parameter, 1.0e3, alpha)
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(v: f64) -> bool {
            v.is_finite() && v > 0.0
        }
        if !positive(self.density) {
            return Err(Error::param("nu", "must be finite and > 0"));
        }
        if !positive(self.radius) {
            return Err(Error::param("radius", "must be finite and > 0"));
        }
        if !(self.power.is_finite() && self.power >= 0.0) {
            return Err(Error::param("power", "must be finite and >= 0"));
        }
        if !positive(self.noise_psd) {
            return Err(Error::param("noise", "must be finite and > 0"));
        }
        if !positive(self.bandwidth) {
            return Err(Error::param("bandwidth", "must be finite and > 0"));
        }
        if !(self.alpha.is_finite() && self.alpha > 2.0) {
            return Err(Error::param("alpha", "must be finite and > 2"));
        }
        if !positive(self.critical_radius) {
            return Err(Error::param("d", "must be finite and > 0"));
        }
        if self.radius <= self.inner_limit() {
            return Err(Error::param(
                "radius",
                "must exceed the empty-strip width d/sqrt(nu)",
            ));
        }
        Ok(())
    }

    /// `P/(NW)`.
    pub fn snr_parameter(&self) -> f64 {
        self.power / (self.noise_psd * self.bandwidth)
    }

    /// `P/N`.
    pub fn power_over_noise(&self) -> f64 {
        self.power / self.noise_psd
    }

    /// Returns a copy with `P` set so that `P/(NW)` equals `snr_parameter`.
    pub fn with_snr_parameter(mut self, snr_parameter: f64) -> Self {
        self.power = snr_parameter * self.noise_psd * self.bandwidth;
        self
    }

    /// Lower integration limit `d/sqrt(nu)`, the width of the empty strip.
    pub fn inner_limit(&self) -> f64 {
        self.critical_radius / self.density.sqrt()
    }

    /// Expected number of nodes inside the cut, `pi nu R^2`.
    pub fn expected_nodes(&self) -> f64 {
        core::f64::consts::PI * self.density * self.radius * self.radius
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_is_valid() {
        let cfg = NetworkConfig::canonical(4.0, 1.0).unwrap();
        assert_eq!(cfg.snr_parameter(), 1.0);
        assert!((cfg.inner_limit() - 1.198).abs() < 1e-15);
    }

    #[test]
    fn rejects_each_bad_field() {
        let ok = NetworkConfig::canonical(4.0, 1.0).unwrap();
        let cases: [(NetworkConfig, &str); 7] = [
            (NetworkConfig { density: 0.0, ..ok }, "nu"),
            (NetworkConfig { radius: -1.0, ..ok }, "radius"),
            (NetworkConfig { power: -1.0, ..ok }, "power"),
            (NetworkConfig { noise_psd: 0.0, ..ok }, "noise"),
            (NetworkConfig { bandwidth: f64::NAN, ..ok }, "bandwidth"),
            (NetworkConfig { alpha: 2.0, ..ok }, "alpha"),
            (NetworkConfig { radius: 1.0, ..ok }, "radius"),
        ];
        for (cfg, field) in cases {
            match cfg.validate() {
                Err(Error::InvalidParameter { name, .. }) => assert_eq!(name, field),
                other => panic!("expected {field} error, got {other:?}"),
            }
        }
    }

    #[test]
    fn snr_parameter_round_trips() {
        let cfg = NetworkConfig::canonical(2.5, 1.0).unwrap().with_snr_parameter(3183.0);
        assert!((cfg.snr_parameter() - 3183.0).abs() < 1e-9);
    }
}
