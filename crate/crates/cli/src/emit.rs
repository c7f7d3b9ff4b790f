//! Artifact emission: deterministic CSV/JSON writers and the hashed manifest.
//! Every float is serialized with 17 significant digits so repeated runs of
//! the same config produce byte-identical files.

use rdi_core::dual::Point4;
use rdi_core::units::{codata_table, ScaleSystem};
use rdi_core::verify::{GridSpec, ResidualReport, Trajectory};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::Resolved;
use crate::CliError;

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn io_err(e: std::io::Error, path: &Path) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

pub struct Bundle {
    pub dir: PathBuf,
    pub files: Vec<(String, String)>, // (name, sha256)
}

impl Bundle {
    fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| io_err(e, &path))?;
        let mut hasher = Sha256::new();
        hasher.update(contents.as_bytes());
        self.files
            .push((name.to_string(), hex::encode(hasher.finalize())));
        Ok(())
    }
}

/// Evaluate and write the full artifact set; returns the bundle and the
/// verification report.
pub fn run_bundle(
    resolved: &Resolved,
    out_dir: &Path,
    seed: Option<u64>,
) -> Result<(Bundle, ResidualReport), CliError> {
    fs::create_dir_all(out_dir).map_err(|e| io_err(e, out_dir))?;
    let mut bundle = Bundle {
        dir: out_dir.to_path_buf(),
        files: Vec::new(),
    };

    bundle.write("density.csv", &density_csv(resolved)?)?;
    bundle.write("fields.csv", &fields_csv(resolved)?)?;
    bundle.write("trajectory.csv", &trajectory_csv(resolved)?)?;

    let mut report = resolved
        .scenario
        .verify(&resolved.grid, &resolved.tolerances)
        .map_err(CliError::from_physics)?;
    if let Some(seed) = seed {
        let sweep = resolved
            .scenario
            .random_inversion_sweep(seed, 100)
            .map_err(CliError::from_physics)?;
        report.laws.push(sweep);
    }
    let report_json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Io(format!("report serialization: {e}")))?;
    bundle.write("report.json", &report_json)?;

    let manifest = manifest_json(resolved, &bundle, &report, seed)?;
    let path = bundle.dir.join("manifest.json");
    fs::write(&path, &manifest).map_err(|e| io_err(e, &path))?;

    Ok((bundle, report))
}

fn density_csv(resolved: &Resolved) -> Result<String, CliError> {
    let scale = resolved.scale;
    let sigma = resolved.scenario.sigma();
    let mut out = String::from("t,x,y,z,density\n");
    let period = 2.0 * std::f64::consts::PI;
    // fixed normalization from the first slice so shape preservation is
    // visible in the raw numbers
    let mut norm = 0.0f64;
    for slice in 0..resolved.times {
        let t = period * slice as f64 / resolved.times as f64;
        let mut grid = resolved.grid;
        grid.nt = 1;
        grid.t_start = t;
        grid.t_end = t;
        let points = grid.points(sigma, |tt| resolved.scenario.center(tt));
        let densities = points
            .iter()
            .map(|x| resolved.scenario.density_at(x))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::from_physics)?;
        if slice == 0 {
            norm = densities.iter().sum::<f64>().max(f64::MIN_POSITIVE);
        }
        for (x, d) in points.iter().zip(densities.iter()) {
            emit_row(
                &mut out,
                x,
                &scale,
                &[d / norm],
            );
        }
    }
    Ok(out)
}

fn fields_csv(resolved: &Resolved) -> Result<String, CliError> {
    let scale = resolved.scale;
    let sigma = resolved.scenario.sigma();
    let points = resolved
        .grid
        .points(sigma, |t| resolved.scenario.center(t));
    let mut out = String::from("t,x,y,z,Ex,Ey,Ez,Bx,By,Bz\n");
    for x in &points {
        let (e, b) = resolved
            .scenario
            .fields_at(x)
            .map_err(CliError::from_physics)?;
        emit_row(&mut out, x, &scale, &[e[0], e[1], e[2], b[0], b[1], b[2]]);
    }
    Ok(out)
}

fn emit_row(out: &mut String, x: &Point4<f64>, scale: &ScaleSystem, values: &[f64]) {
    out.push_str(&fmt(x.t * scale.time_s()));
    for c in [x.x, x.y, x.z] {
        out.push(',');
        out.push_str(&fmt(c * scale.length_m()));
    }
    for v in values {
        out.push(',');
        out.push_str(&fmt(*v));
    }
    out.push('\n');
}

fn trajectory_csv(resolved: &Resolved) -> Result<String, CliError> {
    let traj: Trajectory = resolved
        .scenario
        .trajectory(1.0, resolved.trajectory_steps)
        .map_err(CliError::from_physics)?;
    let scale = resolved.scale;
    let c = rdi_core::units::SPEED_OF_LIGHT;
    let mut out = String::from("t,x,y,z,vx,vy,vz,gamma\n");
    for s in &traj.samples {
        out.push_str(&fmt(s.t * scale.time_s()));
        for p in s.position {
            out.push(',');
            out.push_str(&fmt(p * scale.length_m()));
        }
        for v in s.velocity {
            out.push(',');
            out.push_str(&fmt(v * c));
        }
        out.push(',');
        out.push_str(&fmt(s.gamma));
        out.push('\n');
    }
    Ok(out)
}

#[derive(Serialize)]
struct Manifest<'a> {
    scenario: &'a str,
    family: &'a str,
    constants: BTreeMap<&'static str, f64>,
    scaled_groups: &'a BTreeMap<String, f64>,
    si_roundtrip: &'a BTreeMap<String, f64>,
    si_scales: BTreeMap<&'static str, f64>,
    grid: &'a GridSpec,
    seed: Option<u64>,
    notes: &'a [String],
    all_pass: bool,
    files: Vec<ManifestFile<'a>>,
}

#[derive(Serialize)]
struct ManifestFile<'a> {
    name: &'a str,
    sha256: &'a str,
}

fn manifest_json(
    resolved: &Resolved,
    bundle: &Bundle,
    report: &ResidualReport,
    seed: Option<u64>,
) -> Result<String, CliError> {
    let scale = resolved.scale;
    let manifest = Manifest {
        scenario: resolved.scenario.name(),
        family: &resolved.family,
        constants: codata_table().into_iter().collect(),
        scaled_groups: &resolved.scaled_groups,
        si_roundtrip: &resolved.si_roundtrip,
        si_scales: BTreeMap::from([
            ("length_m_per_unit", scale.length_m()),
            ("time_s_per_unit", scale.time_s()),
            ("energy_J_per_unit", scale.energy_scale_joules()),
            ("e_field_V_per_m_per_unit", scale.e_field_v_per_m()),
            ("b_field_T_per_unit", scale.b_field_tesla()),
        ]),
        grid: &resolved.grid,
        seed,
        notes: &resolved.notes,
        all_pass: report.all_pass(),
        files: bundle
            .files
            .iter()
            .map(|(n, h)| ManifestFile { name: n, sha256: h })
            .collect(),
    };
    serde_json::to_string_pretty(&manifest)
        .map_err(|e| CliError::Io(format!("manifest serialization: {e}")))
}
