//! The JSON run configuration and its validation.
//!
//! Complex numbers may be written as a bare number, a `[re, im]` pair or an
//! object `{"re": .., "im": ..}`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use yb_core::lattice::Site;
use yb_core::maps::MapId;
use yb_core::verify::Tolerances;
use yb_core::{c, C64};

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
enum RawComplex {
    Real(f64),
    Pair([f64; 2]),
    Object { re: f64, im: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(from = "RawComplex")]
pub struct Num(pub C64);

impl From<RawComplex> for Num {
    fn from(r: RawComplex) -> Self {
        Num(match r {
            RawComplex::Real(x) => c(x, 0.0),
            RawComplex::Pair([x, y]) | RawComplex::Object { re: x, im: y } => c(x, y),
        })
    }
}

fn unwrap_nums(v: &[Num]) -> Vec<C64> {
    v.iter().map(|n| n.0).collect()
}

/// Every tolerance a command may judge against. All are embedded in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliTolerances {
    pub yang_baxter: f64,
    pub lax: f64,
    pub poisson: f64,
    pub casimir: f64,
    pub strong_lax: f64,
    pub integrals: f64,
    pub involution: f64,
    pub independence: f64,
    /// Relative discriminant residual for `surface-scan`.
    pub surface: f64,
    /// Invariant drift over a `lattice` run.
    pub drift: f64,
}

impl Default for CliTolerances {
    fn default() -> Self {
        let t = Tolerances::default();
        CliTolerances {
            yang_baxter: t.yang_baxter,
            lax: t.lax,
            poisson: t.poisson,
            casimir: t.casimir,
            strong_lax: t.strong_lax,
            integrals: t.integrals,
            involution: t.involution,
            independence: t.independence,
            surface: 1e-9,
            drift: 1e-8,
        }
    }
}

impl CliTolerances {
    pub fn core(&self) -> Tolerances {
        Tolerances {
            yang_baxter: self.yang_baxter,
            lax: self.lax,
            poisson: self.poisson,
            casimir: self.casimir,
            strong_lax: self.strong_lax,
            integrals: self.integrals,
            involution: self.involution,
            independence: self.independence,
        }
    }

    fn validate(&self) -> Result<(), String> {
        self.core().validate()?;
        for (name, v) in [("surface", self.surface), ("drift", self.drift)] {
            if !(v > 0.0) {
                return Err(format!("tolerance '{name}' must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteConfig {
    pub coords: Vec<Num>,
    pub params: Vec<Num>,
}

/// Leaf labels to scan. Each entry contributes `points_per_leaf` rows.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurfaceConfig {
    /// `α` values on the Boussinesq curve.
    pub boussinesq: Vec<f64>,
    /// `α` values on the GV curve.
    pub gv: Vec<f64>,
    /// Cartesian grid of leaf labels `(c₁, c₂)`.
    pub c1: Vec<f64>,
    pub c2: Vec<f64>,
    pub points_per_leaf: Option<usize>,
}

/// The configuration file as written.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub map: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    #[serde(default)]
    pub tolerances: CliTolerances,
    pub out: Option<PathBuf>,
    pub x: Option<Vec<Num>>,
    pub alpha: Option<Vec<Num>>,
    pub y: Option<Vec<Num>>,
    pub beta: Option<Vec<Num>>,
    pub steps: Option<usize>,
    pub cap: Option<usize>,
    pub sites: Option<Vec<SiteConfig>>,
    pub trajectory: Option<PathBuf>,
    pub surface: Option<SurfaceConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Verify,
    Evaluate,
    Lattice,
    SurfaceScan,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Evaluate => "evaluate",
            Command::Lattice => "lattice",
            Command::SurfaceScan => "surface-scan",
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_STEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct EvaluateInput {
    pub x: Vec<C64>,
    pub alpha: Vec<C64>,
    pub y: Vec<C64>,
    pub beta: Vec<C64>,
}

/// A validated configuration for one command.
#[derive(Debug, Clone)]
pub struct Settings {
    pub map: Option<MapId>,
    pub seed: u64,
    pub samples: usize,
    pub tolerances: CliTolerances,
    pub out: Option<PathBuf>,
    pub evaluate: Option<EvaluateInput>,
    pub steps: usize,
    pub cap: usize,
    pub sites: Option<Vec<Site>>,
    pub trajectory: Option<PathBuf>,
    pub surface: SurfaceConfig,
}

pub fn load(path: &Path) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}

fn need(v: &Option<Vec<Num>>, name: &str, len: usize, map: MapId) -> Result<Vec<C64>, String> {
    let v = v.as_ref().ok_or_else(|| format!("'{name}' is required for evaluate"))?;
    if v.len() != len {
        return Err(format!("'{name}' needs {len} values for map '{map}', got {}", v.len()));
    }
    Ok(unwrap_nums(v))
}

impl RunConfig {
    pub fn resolve(self, command: Command, over: Overrides) -> Result<Settings, String> {
        if let Some(cmd) = &self.command {
            if cmd != command.as_str() {
                log::warn!("config names command '{cmd}', running '{}'", command.as_str());
            }
        }
        let map = self
            .map
            .as_deref()
            .map(|m| m.parse::<MapId>().map_err(|e| e.to_string()))
            .transpose()?;
        if map.is_none() && command != Command::SurfaceScan {
            return Err(format!("'map' is required for {}", command.as_str()));
        }
        let samples = over.samples.or(self.samples).unwrap_or(DEFAULT_SAMPLES);
        if samples == 0 {
            return Err("'samples' must be at least 1".into());
        }
        self.tolerances.validate()?;

        let evaluate = match (command, map) {
            (Command::Evaluate, Some(m)) => Some(EvaluateInput {
                x: need(&self.x, "x", m.coord_dim(), m)?,
                alpha: need(&self.alpha, "alpha", m.param_dim(), m)?,
                y: need(&self.y, "y", m.coord_dim(), m)?,
                beta: need(&self.beta, "beta", m.param_dim(), m)?,
            }),
            _ => None,
        };

        let sites = match (&self.sites, map) {
            (Some(list), Some(m)) => {
                let sites: Vec<Site> = list
                    .iter()
                    .map(|s| Site {
                        coords: unwrap_nums(&s.coords),
                        params: unwrap_nums(&s.params),
                    })
                    .collect();
                yb_core::lattice::StaircaseState::new(m, sites.clone()).map_err(|e| e.to_string())?;
                Some(sites)
            }
            _ => None,
        };

        let surface = self.surface.unwrap_or_default();
        if surface.points_per_leaf == Some(0) {
            return Err("'surface.points_per_leaf' must be at least 1".into());
        }

        Ok(Settings {
            map,
            seed: over.seed.or(self.seed).unwrap_or(0),
            samples,
            tolerances: self.tolerances,
            out: over.out.or(self.out),
            evaluate,
            steps: self.steps.unwrap_or(DEFAULT_STEPS),
            cap: self.cap.unwrap_or(yb_core::lattice::DEFAULT_TRAJECTORY_CAP),
            sites,
            trajectory: self.trajectory,
            surface,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RunConfig {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn complex_forms() {
        let cfg = parse(r#"{"map": "ay", "x": [1.5, [0, 2], {"re": -1, "im": 0.5}]}"#);
        let x = unwrap_nums(cfg.x.as_ref().unwrap());
        assert_eq!(x, vec![c(1.5, 0.0), c(0.0, 2.0), c(-1.0, 0.5)]);
    }

    #[test]
    fn flags_override_file() {
        let cfg = parse(r#"{"map": "ay", "seed": 1, "samples": 5}"#);
        let s = cfg
            .resolve(Command::Verify, Overrides { seed: Some(9), samples: None, out: None })
            .unwrap();
        assert_eq!((s.seed, s.samples), (9, 5));
    }

    #[test]
    fn rejections() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"mapp": "ay"}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"tolerances": {"lxa": 1}}"#).is_err());
        let bad = |s: &str, cmd| parse(s).resolve(cmd, Overrides::default()).is_err();
        assert!(bad(r#"{"map": "unknown"}"#, Command::Verify));
        assert!(bad(r#"{}"#, Command::Verify));
        assert!(bad(r#"{"map": "ay", "samples": 0}"#, Command::Verify));
        assert!(bad(r#"{"map": "ay", "tolerances": {"lax": -1}}"#, Command::Verify));
        assert!(bad(r#"{"map": "ay", "x": [1, 2]}"#, Command::Evaluate));
        assert!(!bad(r#"{}"#, Command::SurfaceScan));
    }
}
