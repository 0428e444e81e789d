//! Configuration: command-line flags over a `key = value` file over defaults.

use std::fs;
use std::path::{Path, PathBuf};

use cutset_core::{NetworkConfig, CRITICAL_RADIUS};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// Values that may come from a flag or from the configuration file. Keys in
/// the file are the flag names with `_` for `-`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub nu: Option<f64>,
    pub radius: Option<f64>,
    pub power_over_nw: Option<f64>,
    pub bandwidth: Option<f64>,
    pub d: Option<f64>,
    pub trials: Option<u64>,
    pub draws: Option<u64>,
    pub truncation: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
}

impl Overrides {
    /// Fields of `self`, falling back to `lower` where unset.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            alpha: self.alpha.or(lower.alpha),
            nu: self.nu.or(lower.nu),
            radius: self.radius.or(lower.radius),
            power_over_nw: self.power_over_nw.or(lower.power_over_nw),
            bandwidth: self.bandwidth.or(lower.bandwidth),
            d: self.d.or(lower.d),
            trials: self.trials.or(lower.trials),
            draws: self.draws.or(lower.draws),
            truncation: self.truncation.or(lower.truncation),
            seed: self.seed.or(lower.seed),
            out: self.out.or(lower.out),
            tol: self.tol.or(lower.tol),
        }
    }

    pub fn from_file(path: &Path) -> CliResult<Overrides> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Overrides, String> {
        toml::from_str(text).map_err(|e| e.message().to_string())
    }
}

pub const DEFAULT_ALPHA: f64 = 4.0;
pub const DEFAULT_NU: f64 = 1.0;
pub const DEFAULT_RADIUS: f64 = 100.0;
pub const DEFAULT_POWER_OVER_NW: f64 = 1.0;
pub const DEFAULT_BANDWIDTH: f64 = 1e3;
pub const DEFAULT_DRAWS: u64 = 10;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_OUT: &str = "out";

/// Merged settings; the network part is validated on access so that
/// commands which do not need a full network (percolation) can run with,
/// for example, `nu = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub values: Overrides,
}

impl Settings {
    /// Resolves `flags > file > defaults`.
    pub fn resolve(flags: Overrides, file: Option<Overrides>) -> CliResult<Settings> {
        let values = flags.over(file.unwrap_or_default());
        if let Some(tol) = values.tol {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CliError::validation(
                    "invalid parameter `tol`: must be finite and > 0",
                ));
            }
        }
        Ok(Settings { values })
    }

    pub fn network(&self) -> CliResult<NetworkConfig> {
        let v = &self.values;
        let n = NetworkConfig::from_snr_parameter(
            v.nu.unwrap_or(DEFAULT_NU),
            v.radius.unwrap_or(DEFAULT_RADIUS),
            v.power_over_nw.unwrap_or(DEFAULT_POWER_OVER_NW),
            v.bandwidth.unwrap_or(DEFAULT_BANDWIDTH),
            v.alpha.unwrap_or(DEFAULT_ALPHA),
        )?;
        let n = NetworkConfig {
            critical_radius: self.d(),
            ..n
        };
        n.validate()?;
        Ok(n)
    }

    pub fn nu(&self) -> f64 {
        self.values.nu.unwrap_or(DEFAULT_NU)
    }

    pub fn d(&self) -> f64 {
        self.values.d.unwrap_or(CRITICAL_RADIUS)
    }

    pub fn trials_or(&self, default: u64) -> u64 {
        self.values.trials.unwrap_or(default)
    }

    pub fn draws(&self) -> u64 {
        self.values.draws.unwrap_or(DEFAULT_DRAWS)
    }

    pub fn seed(&self) -> u64 {
        self.values.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn out(&self) -> PathBuf {
        self.values
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
    }

    pub fn tol(&self) -> Option<f64> {
        self.values.tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_is_flag_over_file_over_default() {
        let file = Overrides::parse("alpha = 2.6\nradius = 50\nseed = 3\n").unwrap();
        let flags = Overrides {
            alpha: Some(3.3),
            ..Overrides::default()
        };
        let s = Settings::resolve(flags, Some(file)).unwrap();
        let n = s.network().unwrap();
        assert_eq!(n.alpha, 3.3);
        assert_eq!(n.radius, 50.0);
        assert_eq!(s.seed(), 3);
        assert_eq!(n.density, DEFAULT_NU);
        assert_eq!(n.bandwidth, DEFAULT_BANDWIDTH);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(Overrides::parse("alhpa = 3\n").is_err());
        assert!(Overrides::parse("alpha = \"x\"\n").is_err());
    }

    #[test]
    fn invalid_values_name_the_field() {
        let flags = Overrides {
            nu: Some(-1.0),
            ..Overrides::default()
        };
        match Settings::resolve(flags, None).unwrap().network() {
            Err(CliError::Validation(m)) => assert!(m.contains("`nu`"), "{m}"),
            other => panic!("{other:?}"),
        }
    }
}
