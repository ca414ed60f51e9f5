//! Strict run-configuration schema.
//!
//! One TOML file per run: `key = value` entries grouped in sections, every
//! key validated (unknown keys are rejected), and no defaults for physical
//! parameters — α, masses, couplings and dimensions must be written out.

use nls_core::criteria::{CompositeLowerBound, RadialGrid};
use nls_core::{KineticSymbol, Potential, ResolventParams, TorusGrid};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    CheckVirial,
    CheckMourre,
    CheckMourreComposite,
    BsCompact,
    BsGlobal,
    DichoThreshold,
    Thm5,
    HsNorm,
    ZeroMode,
    Eigen,
    Sweep,
}

impl std::fmt::Display for Analysis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        write!(f, "{}", s.as_str().unwrap())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub analysis: Analysis,
    pub symbol: SymbolConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<RadiiConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mourre: Option<MourreConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub birman: Option<BirmanConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolvent: Option<ResolventConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_mode: Option<ZeroModeConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lieb_thirring: Option<LiebThirringConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolConfig {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialConfig {
    pub family: String,
    pub dim: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiiConfig {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MourreConfig {
    pub f_bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_count: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BirmanConfig {
    pub dimension: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l1_norm: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolventConfig {
    pub weight_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_im: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusConfig {
    pub dim: usize,
    pub n: usize,
    pub half_length: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    pub k: usize,
    pub tol: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub beta: f64,
    pub couplings: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroModeConfig {
    pub kappa: f64,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiebThirringConfig {
    pub l_alpha: f64,
    pub coupling: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

/// A configuration error (exit code 1, kind "config-parse").
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError(e.to_string()))
    }

    /// The kinetic symbol, with per-kind key validation.
    pub fn build_symbol(&self) -> Result<KineticSymbol, ConfigError> {
        let s = &self.symbol;
        let need = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| ConfigError(format!("symbol.{key} required for kind '{}'", s.kind)))
        };
        let forbid = |set: bool, key: &str| {
            if set {
                err(format!("symbol.{key} not allowed for kind '{}'", s.kind))
            } else {
                Ok(())
            }
        };
        let sym = match s.kind.as_str() {
            "classical" => {
                forbid(s.alpha.is_some(), "alpha")?;
                forbid(s.mass.is_some(), "mass")?;
                forbid(s.c.is_some(), "c")?;
                forbid(s.csv.is_some(), "csv")?;
                KineticSymbol::classical()
            }
            "fractional" => {
                forbid(s.mass.is_some(), "mass")?;
                forbid(s.c.is_some(), "c")?;
                forbid(s.csv.is_some(), "csv")?;
                KineticSymbol::fractional(need(s.alpha, "alpha")?)
                    .map_err(|e| ConfigError(e.to_string()))?
            }
            "relativistic" => {
                forbid(s.c.is_some(), "c")?;
                forbid(s.csv.is_some(), "csv")?;
                KineticSymbol::relativistic(need(s.alpha, "alpha")?, need(s.mass, "mass")?)
                    .map_err(|e| ConfigError(e.to_string()))?
            }
            "jump-diffusion" => {
                forbid(s.mass.is_some(), "mass")?;
                forbid(s.csv.is_some(), "csv")?;
                KineticSymbol::jump_diffusion(need(s.alpha, "alpha")?, need(s.c, "c")?)
                    .map_err(|e| ConfigError(e.to_string()))?
            }
            "log-fractional" => {
                forbid(s.mass.is_some(), "mass")?;
                forbid(s.c.is_some(), "c")?;
                forbid(s.csv.is_some(), "csv")?;
                KineticSymbol::log_fractional(need(s.alpha, "alpha")?)
                    .map_err(|e| ConfigError(e.to_string()))?
            }
            "tabulated" => {
                forbid(s.alpha.is_some(), "alpha")?;
                forbid(s.mass.is_some(), "mass")?;
                forbid(s.c.is_some(), "c")?;
                let path = s
                    .csv
                    .as_ref()
                    .ok_or_else(|| ConfigError("symbol.csv required for kind 'tabulated'".into()))?;
                KineticSymbol::tabulated_from_csv(path).map_err(|e| ConfigError(e.to_string()))?
            }
            other => return err(format!("unknown symbol kind '{other}'")),
        };
        Ok(sym)
    }

    /// Symbol α (fractional/relativistic/jump-diffusion/log kinds).
    pub fn symbol_alpha(&self) -> Result<f64, ConfigError> {
        self.symbol
            .alpha
            .ok_or_else(|| ConfigError("symbol.alpha required for this analysis".into()))
    }

    pub fn build_potential(&self) -> Result<Potential, ConfigError> {
        let p = self
            .potential
            .as_ref()
            .ok_or_else(|| ConfigError("a [potential] section is required".into()))?;
        let need = |v: Option<f64>, key: &str| {
            v.ok_or_else(|| {
                ConfigError(format!("potential.{key} required for family '{}'", p.family))
            })
        };
        let forbid = |set: bool, key: &str| {
            if set {
                err(format!(
                    "potential.{key} not allowed for family '{}'",
                    p.family
                ))
            } else {
                Ok(())
            }
        };
        let pot = match p.family.as_str() {
            "inverse-power" => {
                forbid(p.gamma.is_some(), "gamma")?;
                forbid(p.nu.is_some(), "nu")?;
                forbid(p.kappa.is_some(), "kappa")?;
                forbid(p.alpha.is_some(), "alpha")?;
                forbid(p.degree.is_some(), "degree")?;
                forbid(p.csv.is_some(), "csv")?;
                Potential::inverse_power(need(p.coupling, "coupling")?, need(p.beta, "beta")?, p.dim)
            }
            "coulomb" => {
                forbid(p.beta.is_some(), "beta")?;
                forbid(p.nu.is_some(), "nu")?;
                forbid(p.kappa.is_some(), "kappa")?;
                forbid(p.alpha.is_some(), "alpha")?;
                forbid(p.degree.is_some(), "degree")?;
                forbid(p.csv.is_some(), "csv")?;
                Potential::homogeneous_coulomb(
                    need(p.coupling, "coupling")?,
                    need(p.gamma, "gamma")?,
                    p.dim,
                )
            }
            "positive-bump" => {
                forbid(p.beta.is_some(), "beta")?;
                forbid(p.gamma.is_some(), "gamma")?;
                forbid(p.kappa.is_some(), "kappa")?;
                forbid(p.alpha.is_some(), "alpha")?;
                forbid(p.degree.is_some(), "degree")?;
                forbid(p.csv.is_some(), "csv")?;
                Potential::positive_bump(need(p.coupling, "coupling")?, need(p.nu, "nu")?, p.dim)
            }
            "hypergeometric" => {
                forbid(p.coupling.is_some(), "coupling")?;
                forbid(p.beta.is_some(), "beta")?;
                forbid(p.gamma.is_some(), "gamma")?;
                forbid(p.nu.is_some(), "nu")?;
                forbid(p.csv.is_some(), "csv")?;
                let degree = p
                    .degree
                    .ok_or_else(|| ConfigError("potential.degree required".into()))?;
                Potential::hypergeometric(
                    need(p.kappa, "kappa")?,
                    need(p.alpha, "alpha")?,
                    p.dim,
                    degree,
                )
            }
            "tabulated-radial" => {
                forbid(p.coupling.is_some(), "coupling")?;
                forbid(p.beta.is_some(), "beta")?;
                forbid(p.gamma.is_some(), "gamma")?;
                forbid(p.nu.is_some(), "nu")?;
                forbid(p.kappa.is_some(), "kappa")?;
                forbid(p.alpha.is_some(), "alpha")?;
                forbid(p.degree.is_some(), "degree")?;
                let path = p
                    .csv
                    .as_ref()
                    .ok_or_else(|| ConfigError("potential.csv required".into()))?;
                Potential::tabulated_from_csv(path, p.dim)
            }
            other => return err(format!("unknown potential family '{other}'")),
        };
        pot.map_err(|e| ConfigError(e.to_string()))
    }

    pub fn build_radial_grid(&self) -> Result<RadialGrid, ConfigError> {
        match &self.radii {
            None => Ok(RadialGrid::default()),
            Some(r) => RadialGrid::new(r.min, r.max, r.count).map_err(|e| ConfigError(e.to_string())),
        }
    }

    pub fn build_torus(&self) -> Result<TorusGrid, ConfigError> {
        let t = self
            .torus
            .as_ref()
            .ok_or_else(|| ConfigError("a [torus] section is required".into()))?;
        TorusGrid::new(t.dim, t.n, t.half_length).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn build_resolvent_params(&self) -> Result<ResolventParams, ConfigError> {
        let alpha = self.symbol_alpha()?;
        if self.symbol.kind != "relativistic" {
            return err("resolvent analyses require symbol.kind = 'relativistic'");
        }
        let mass = self
            .symbol
            .mass
            .ok_or_else(|| ConfigError("symbol.mass required".into()))?;
        let r = self
            .resolvent
            .as_ref()
            .ok_or_else(|| ConfigError("a [resolvent] section is required".into()))?;
        ResolventParams::new(alpha, mass, r.weight_s).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn build_composite_bound(&self) -> Result<(CompositeLowerBound, usize), ConfigError> {
        let m = self
            .mourre
            .as_ref()
            .ok_or_else(|| ConfigError("a [mourre] section is required".into()))?;
        let eps_count = m.eps_count.unwrap_or(99);
        if eps_count == 0 || eps_count > 10_000 {
            return err("mourre.eps_count out of range");
        }
        let alpha = self.symbol_alpha()?;
        let bound = match m.f_bound.as_str() {
            "hardy" => {
                let dim = self
                    .potential
                    .as_ref()
                    .map(|p| p.dim)
                    .ok_or_else(|| ConfigError("potential.dim needed for the Hardy bound".into()))?;
                CompositeLowerBound::Hardy { dim, alpha }
            }
            "relativistic-fx" => CompositeLowerBound::RelativisticFx { alpha },
            other => return err(format!("unknown mourre.f_bound '{other}'")),
        };
        Ok((bound, eps_count))
    }
}
