//! Scenario configuration: a self-describing TOML document with SI units.
//! Unknown keys are rejected, all magnitudes are validated, and the scaled
//! parameter record (with its inverse map) lands in the run manifest.

use rdi_core::scenario::{Scenario, Tolerances};
use rdi_core::units::{
    nondimensionalize_planar, nondimensionalize_volkov, si_from_planar, si_from_volkov,
    ScaleSystem, SiPlanar, SiVolkov,
};
use rdi_core::verify::GridSpec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::CliError;

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    /// planar | redmond | volkov | bagrov
    pub family: String,
    /// Label used in the report and manifest; defaults to the family.
    pub name: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub b_tesla: Option<f64>,
    pub a1_m: Option<f64>,
    pub a2_m: Option<f64>,
    pub omega_per_s: Option<f64>,
    pub a0_tesla: Option<f64>,
    pub wavelength_m: Option<f64>,
    /// Bagrov dimensionless constant.
    pub a: Option<f64>,
    /// Dimensionless extras of the general wave family.
    pub q_amp: Option<f64>,
    pub envelope_c2: Option<f64>,
    pub envelope_c4: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(default = "default_n")]
    pub nt: usize,
    #[serde(default = "default_n")]
    pub nx: usize,
    #[serde(default = "default_n")]
    pub ny: usize,
    #[serde(default = "default_half_widths")]
    pub half_widths: f64,
    /// Density time slices over one period.
    #[serde(default = "default_times")]
    pub times: usize,
    #[serde(default)]
    pub z: f64,
}

fn default_n() -> usize {
    7
}
fn default_half_widths() -> f64 {
    3.0
}
fn default_times() -> usize {
    16
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection { nt: 7, nx: 7, ny: 7, half_widths: 3.0, times: 16, z: 0.0 }
    }
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<String>,
    /// Classical-trajectory integration steps over one period.
    pub trajectory_steps: Option<usize>,
}

/// Everything the runner needs after validation.
pub struct Resolved {
    pub scenario: Scenario,
    pub family: String,
    pub grid: GridSpec,
    pub times: usize,
    pub trajectory_steps: usize,
    pub tolerances: Tolerances,
    pub scaled_groups: BTreeMap<String, f64>,
    pub si_roundtrip: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub scale: ScaleSystem,
}

pub fn parse(text: &str) -> Result<Config, CliError> {
    toml::from_str(text).map_err(|e| CliError::Config(format!("config parse error: {e}")))
}

fn require(v: Option<f64>, key: &str, family: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| {
        CliError::Config(format!("family {family:?} requires parameters.{key}"))
    })
}

pub fn resolve(cfg: &Config) -> Result<Resolved, CliError> {
    let family = cfg.scenario.family.as_str();
    let label = cfg
        .scenario
        .name
        .clone()
        .unwrap_or_else(|| family.to_string());
    let mut groups = BTreeMap::new();
    let mut roundtrip = BTreeMap::new();
    let mut notes = Vec::new();

    let (scenario, scale) = match family {
        "planar" => {
            let si = SiPlanar {
                b_tesla: require(cfg.parameters.b_tesla, "b_tesla", family)?,
                a1_m: require(cfg.parameters.a1_m, "a1_m", family)?,
                a2_m: require(cfg.parameters.a2_m, "a2_m", family)?,
                omega_per_s: require(cfg.parameters.omega_per_s, "omega_per_s", family)?,
            };
            let scaled = nondimensionalize_planar(&si).map_err(CliError::from_validation)?;
            let back = si_from_planar(&scaled);
            groups.extend([
                ("beta1".to_string(), scaled.beta1),
                ("beta2".to_string(), scaled.beta2),
                ("b".to_string(), scaled.b),
                ("mu".to_string(), scaled.mu),
                ("omega_per_s".to_string(), scaled.scale.omega),
            ]);
            roundtrip.extend([
                ("b_tesla".to_string(), back.b_tesla),
                ("a1_m".to_string(), back.a1_m),
                ("a2_m".to_string(), back.a2_m),
                ("omega_per_s".to_string(), back.omega_per_s),
            ]);
            (
                Scenario::Ellipse {
                    name: label.clone(),
                    params: rdi_core::solutions::planar::EllipseParams {
                        beta1: scaled.beta1,
                        beta2: scaled.beta2,
                        b: scaled.b,
                        mu: scaled.mu,
                    },
                    scale: scaled.scale,
                },
                scaled.scale,
            )
        }
        "redmond" | "volkov" | "bagrov" => {
            let si = SiVolkov {
                b_tesla: require(cfg.parameters.b_tesla, "b_tesla", family)?,
                a0_tesla: require(cfg.parameters.a0_tesla, "a0_tesla", family)?,
                omega_per_s: cfg.parameters.omega_per_s,
                wavelength_m: cfg.parameters.wavelength_m,
            };
            let scaled = nondimensionalize_volkov(&si).map_err(CliError::from_validation)?;
            notes.extend(scaled.omega_notes.iter().cloned());
            let back = si_from_volkov(&scaled);
            groups.extend([
                ("a0_tilde".to_string(), scaled.a0_tilde),
                ("b".to_string(), scaled.b),
                ("mu".to_string(), scaled.mu),
                ("omega_per_s".to_string(), scaled.scale.omega),
            ]);
            roundtrip.extend([
                ("b_tesla".to_string(), back.b_tesla),
                ("a0_tesla".to_string(), back.a0_tesla),
            ]);
            let scenario = match family {
                "redmond" => Scenario::Redmond {
                    name: label.clone(),
                    a0: scaled.a0_tilde,
                    b: scaled.b,
                    mu: scaled.mu,
                    scale: scaled.scale,
                    notes: scaled.omega_notes.clone(),
                },
                "bagrov" => {
                    let a = require(cfg.parameters.a, "a", family)?;
                    if a == 0.0 {
                        return Err(CliError::Config(
                            "bagrov constant a must be nonzero".to_string(),
                        ));
                    }
                    groups.insert("a".to_string(), a);
                    Scenario::Bagrov {
                        name: label.clone(),
                        a0: scaled.a0_tilde,
                        a,
                        b: scaled.b,
                        mu: scaled.mu,
                        scale: scaled.scale,
                    }
                }
                _ => {
                    let q_amp = cfg.parameters.q_amp.unwrap_or(0.2);
                    let c2 = cfg.parameters.envelope_c2.unwrap_or(1.0);
                    let c4 = cfg.parameters.envelope_c4.unwrap_or(0.05);
                    if q_amp.abs() >= 1.0 {
                        return Err(CliError::Config(format!(
                            "q_amp = {q_amp} too large; |q_amp| must stay below 1"
                        )));
                    }
                    groups.extend([
                        ("q_amp".to_string(), q_amp),
                        ("envelope_c2".to_string(), c2),
                        ("envelope_c4".to_string(), c4),
                    ]);
                    Scenario::VolkovGeneral {
                        name: label.clone(),
                        a0: scaled.a0_tilde,
                        q_amp,
                        c2,
                        c4,
                        b: scaled.b,
                        mu: scaled.mu,
                        scale: scaled.scale,
                    }
                }
            };
            (scenario, scaled.scale)
        }
        other => {
            return Err(CliError::Config(format!(
                "unknown family {other:?}; expected planar, redmond, volkov or bagrov"
            )))
        }
    };

    let mut grid = scenario.default_grid();
    grid.nt = cfg.grid.nt;
    grid.nx = cfg.grid.nx;
    grid.ny = cfg.grid.ny;
    grid.half_widths = cfg.grid.half_widths;
    grid.z = cfg.grid.z;
    if grid.nt == 0 || grid.nx == 0 || grid.ny == 0 {
        return Err(CliError::Config("grid dimensions must be positive".to_string()));
    }

    Ok(Resolved {
        scenario,
        family: family.to_string(),
        grid,
        times: cfg.grid.times.max(1),
        trajectory_steps: cfg.output.trajectory_steps.unwrap_or(8000),
        tolerances: Tolerances {
            overrides: cfg.tolerances.clone(),
        },
        scaled_groups: groups,
        si_roundtrip: roundtrip,
        notes,
        scale,
    })
}

/// The published config schema, CSV schemas and exit-code contract.
pub const SCHEMA: &str = r#"Configuration schema (TOML, SI units; unknown keys rejected)

[scenario]
family = "planar" | "redmond" | "volkov" | "bagrov"   # required
name   = "label"                                       # optional

[parameters]                  # SI units
b_tesla      = <f64>          # magnetic field, required by all families
a1_m         = <f64>          # planar: x semi-axis (m)
a2_m         = <f64>          # planar: y semi-axis (m)
omega_per_s  = <f64>          # drive angular frequency (1/s);
                              # wave families default to e*B/m when absent
a0_tesla     = <f64>          # wave families: plane-wave amplitude (T)
wavelength_m = <f64>          # optional; recorded and cross-checked only
a            = <f64>          # bagrov: dimensionless profile constant
q_amp        = <f64>          # volkov: longitudinal momentum amplitude
envelope_c2  = <f64>          # volkov: quadratic envelope coefficient
envelope_c4  = <f64>          # volkov: quartic envelope coefficient

[grid]
nt = 7          # verification grid points in t (one period)
nx = 7          # points in x (center +- half_widths Gaussian widths)
ny = 7
half_widths = 3.0
times = 16      # density time slices over one period
z = 0.0         # grid plane (scaled units)

[output]
dir = "out"               # overridden by --out and by RDI_OUT_DIR
trajectory_steps = 8000   # Boris steps over one period

[tolerances]              # optional per-law overrides
dirac_residual = 1.0e-8

CSV schemas (all floats 17 significant digits):
  density.csv    t,x,y,z,density        coordinates SI (s, m); density is
                                        |psi|^2 normalized to unit sum on
                                        the t-start slice grid
  fields.csv     t,x,y,z,Ex,Ey,Ez,Bx,By,Bz
                                        coordinates SI; field components in
                                        scaled units eE/(m c omega), eB/(m omega)
  trajectory.csv t,x,y,z,vx,vy,vz,gamma SI (s, m, m/s)
  report.json    residual report: per-law max/mean residual, points,
                 tolerance, pass flag
  manifest.json  constants, scaled groups, SI round-trip, notes, file hashes

Exit codes: 0 all laws pass; 1 physics failure; 2 configuration failure;
3 I/O failure.
"#;
