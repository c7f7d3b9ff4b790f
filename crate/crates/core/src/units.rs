//! SI boundary: CODATA-2018 constants, the scaled unit system, and the
//! nondimensionalization maps for the scenario families.
//!
//! Internals use `c = hbar = 1` with time in units of `1/omega` and length
//! in units of `c/omega`; the dimensionless groups are
//! `beta_i = a_i omega / c`, `b = e B / (m omega)`, `mu = m c^2 / (hbar
//! omega)` and `a0_tilde = e a0 / (m omega)` (the wave amplitude `a0` is a
//! magnetic-field amplitude in tesla, entering exactly like `B`).

use crate::{RdiError, Result};
use serde::{Deserialize, Serialize};

/// Speed of light in vacuum (m/s, exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Elementary charge (C, exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Planck constant (J s, exact).
pub const PLANCK_CONSTANT: f64 = 6.626_070_15e-34;
/// Reduced Planck constant (J s).
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;
/// Electron mass (kg).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Vacuum electric permittivity (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
/// Vacuum magnetic permeability (N/A^2).
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;

/// Constant table for run manifests.
pub fn codata_table() -> Vec<(&'static str, f64)> {
    vec![
        ("speed_of_light_m_per_s", SPEED_OF_LIGHT),
        ("elementary_charge_C", ELEMENTARY_CHARGE),
        ("planck_constant_J_s", PLANCK_CONSTANT),
        ("reduced_planck_J_s", REDUCED_PLANCK),
        ("electron_mass_kg", ELECTRON_MASS),
        ("vacuum_permittivity_F_per_m", VACUUM_PERMITTIVITY),
        ("vacuum_permeability_N_per_A2", VACUUM_PERMEABILITY),
    ]
}

/// The scaled unit system of one scenario, anchored on the drive frequency.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleSystem {
    /// Operative angular frequency (1/s).
    pub omega: f64,
}

impl ScaleSystem {
    pub fn from_omega(omega: f64) -> Self {
        ScaleSystem { omega }
    }

    /// Meters per scaled length unit.
    pub fn length_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.omega
    }

    /// Seconds per scaled time unit.
    pub fn time_s(&self) -> f64 {
        1.0 / self.omega
    }

    /// `mu = m c^2 / (hbar omega)`.
    pub fn mu(&self) -> f64 {
        ELECTRON_MASS * SPEED_OF_LIGHT * SPEED_OF_LIGHT / (REDUCED_PLANCK * self.omega)
    }

    /// Joules per scaled energy unit (`hbar omega`).
    pub fn energy_scale_joules(&self) -> f64 {
        REDUCED_PLANCK * self.omega
    }

    pub fn rest_energy_joules(&self) -> f64 {
        ELECTRON_MASS * SPEED_OF_LIGHT * SPEED_OF_LIGHT
    }

    /// V/m per scaled electric-field unit (`E_tilde = e E / (m c omega)`).
    pub fn e_field_v_per_m(&self) -> f64 {
        ELECTRON_MASS * SPEED_OF_LIGHT * self.omega / ELEMENTARY_CHARGE
    }

    /// Tesla per scaled magnetic-field unit (`B_tilde = e B / (m omega)`).
    pub fn b_field_tesla(&self) -> f64 {
        ELECTRON_MASS * self.omega / ELEMENTARY_CHARGE
    }
}

/// SI inputs of the planar (elliptical) family.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiPlanar {
    pub b_tesla: f64,
    pub a1_m: f64,
    pub a2_m: f64,
    pub omega_per_s: f64,
}

impl SiPlanar {
    /// Reference values of the `ellipse-fig1` scenario:
    /// `B = 0.35 T, a1 = 1 um, a2 = 2 um, omega = 0.5 /ns`.
    pub fn fig1() -> Self {
        SiPlanar {
            b_tesla: 0.35,
            a1_m: 1.0e-6,
            a2_m: 2.0e-6,
            omega_per_s: 0.5e9,
        }
    }
}

/// Scaled planar groups plus the unit anchor.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledPlanar {
    pub beta1: f64,
    pub beta2: f64,
    pub b: f64,
    pub mu: f64,
    pub scale: ScaleSystem,
}

/// SI -> dimensionless groups for the planar family, with guard rails.
pub fn nondimensionalize_planar(si: &SiPlanar) -> Result<ScaledPlanar> {
    for (name, v) in [
        ("b_tesla", si.b_tesla),
        ("a1_m", si.a1_m),
        ("a2_m", si.a2_m),
        ("omega_per_s", si.omega_per_s),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(RdiError::Domain(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    let scale = ScaleSystem::from_omega(si.omega_per_s);
    let beta1 = si.a1_m * si.omega_per_s / SPEED_OF_LIGHT;
    let beta2 = si.a2_m * si.omega_per_s / SPEED_OF_LIGHT;
    let peak = beta1.max(beta2);
    if peak >= 1.0 {
        return Err(RdiError::Domain(format!(
            "superluminality guard: omega * max(a1, a2) / c = {peak:.6} must stay below 1"
        )));
    }
    Ok(ScaledPlanar {
        beta1,
        beta2,
        b: ELEMENTARY_CHARGE * si.b_tesla / (ELECTRON_MASS * si.omega_per_s),
        mu: scale.mu(),
        scale,
    })
}

/// Inverse map, for the round-trip contract.
pub fn si_from_planar(scaled: &ScaledPlanar) -> SiPlanar {
    let omega = scaled.scale.omega;
    SiPlanar {
        b_tesla: scaled.b * ELECTRON_MASS * omega / ELEMENTARY_CHARGE,
        a1_m: scaled.beta1 * SPEED_OF_LIGHT / omega,
        a2_m: scaled.beta2 * SPEED_OF_LIGHT / omega,
        omega_per_s: omega,
    }
}

/// SI inputs of the Redmond-type wave families. When `omega_per_s` is
/// absent the operative frequency is the cyclotron value `e B / m`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiVolkov {
    pub b_tesla: f64,
    pub a0_tesla: f64,
    pub omega_per_s: Option<f64>,
    /// Optional laser wavelength; recorded for cross-checking, not used in
    /// the scaling.
    pub wavelength_m: Option<f64>,
}

impl SiVolkov {
    /// Reference values of the `redmond-fig2` scenario:
    /// `a0 = 3.24 T, B = 0.13 T`, omega from `e B / m`.
    pub fn fig2() -> Self {
        SiVolkov {
            b_tesla: 0.13,
            a0_tesla: 3.24,
            omega_per_s: None,
            wavelength_m: Some(800.0e-9),
        }
    }
}

/// Scaled wave-family groups. `omega_notes` records the discrepancy between
/// the cyclotron frequency and any frequency implied by the quoted
/// wavelength; the scenario computes with `scale.omega` and asserts neither.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledVolkov {
    pub a0_tilde: f64,
    pub b: f64,
    pub mu: f64,
    pub scale: ScaleSystem,
    pub omega_notes: Vec<String>,
}

pub fn nondimensionalize_volkov(si: &SiVolkov) -> Result<ScaledVolkov> {
    if !(si.b_tesla > 0.0) || !(si.a0_tesla >= 0.0) {
        return Err(RdiError::Domain(
            "b_tesla must be positive and a0_tesla non-negative".to_string(),
        ));
    }
    let cyclotron = ELEMENTARY_CHARGE * si.b_tesla / ELECTRON_MASS;
    let omega = si.omega_per_s.unwrap_or(cyclotron);
    if !(omega > 0.0) {
        return Err(RdiError::Domain(format!("omega must be positive, got {omega}")));
    }
    let mut notes = Vec::new();
    if (omega - cyclotron).abs() > 1.0e-9 * cyclotron {
        notes.push(format!(
            "operative omega {omega:.6e} 1/s differs from cyclotron eB/m = {cyclotron:.6e} 1/s"
        ));
    }
    if let Some(lambda) = si.wavelength_m {
        let omega_laser = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / lambda;
        if (omega_laser - omega).abs() > 1.0e-3 * omega {
            notes.push(format!(
                "quoted wavelength {lambda:.3e} m implies omega = {omega_laser:.6e} 1/s, \
                 not the operative {omega:.6e} 1/s; both recorded, neither asserted"
            ));
        }
    }
    let scale = ScaleSystem::from_omega(omega);
    Ok(ScaledVolkov {
        a0_tilde: ELEMENTARY_CHARGE * si.a0_tesla / (ELECTRON_MASS * omega),
        b: ELEMENTARY_CHARGE * si.b_tesla / (ELECTRON_MASS * omega),
        mu: scale.mu(),
        scale,
        omega_notes: notes,
    })
}

pub fn si_from_volkov(scaled: &ScaledVolkov) -> SiVolkov {
    let omega = scaled.scale.omega;
    SiVolkov {
        b_tesla: scaled.b * ELECTRON_MASS * omega / ELEMENTARY_CHARGE,
        a0_tesla: scaled.a0_tilde * ELECTRON_MASS * omega / ELEMENTARY_CHARGE,
        omega_per_s: Some(omega),
        wavelength_m: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_groups_match_one_line_arithmetic() {
        let s = nondimensionalize_planar(&SiPlanar::fig1()).unwrap();
        // independent one-line oracles from the raw constants
        assert!((s.beta1 - 1.0e-6 * 0.5e9 / 299_792_458.0).abs() < 1e-21);
        assert!((s.beta1 - 1.6678204759907602e-6).abs() < 1e-19);
        assert!((s.beta2 - 2.0 * s.beta1).abs() < 1e-20);
        assert!((s.b - 123.11740075405144).abs() < 1e-10);
        assert!((s.mu - 1.5526881422100220e12).abs() < 1e-1);
    }

    #[test]
    fn fig2_uses_cyclotron_frequency_and_flags_the_wavelength() {
        let s = nondimensionalize_volkov(&SiVolkov::fig2()).unwrap();
        assert!((s.scale.omega - 2.2864660140038125e10).abs() < 1.0);
        assert!((s.b - 1.0).abs() < 1e-12);
        assert!((s.a0_tilde - 3.24 / 0.13).abs() < 1e-12);
        assert!((s.mu - 3.3953886318457059e10).abs() < 1e-1);
        // the 800 nm wavelength is inconsistent with eB/m and must be flagged
        assert!(s.omega_notes.iter().any(|n| n.contains("wavelength")));
    }

    #[test]
    fn round_trips_are_identity_to_1e12_relative() {
        let si = SiPlanar::fig1();
        let back = si_from_planar(&nondimensionalize_planar(&si).unwrap());
        assert!((back.b_tesla - si.b_tesla).abs() < 1e-12 * si.b_tesla);
        assert!((back.a1_m - si.a1_m).abs() < 1e-12 * si.a1_m);
        assert!((back.a2_m - si.a2_m).abs() < 1e-12 * si.a2_m);
        assert!((back.omega_per_s - si.omega_per_s).abs() < 1e-12 * si.omega_per_s);

        let siv = SiVolkov::fig2();
        let scaled = nondimensionalize_volkov(&siv).unwrap();
        let backv = si_from_volkov(&scaled);
        assert!((backv.b_tesla - siv.b_tesla).abs() < 1e-12 * siv.b_tesla);
        assert!((backv.a0_tesla - siv.a0_tesla).abs() < 1e-12 * siv.a0_tesla);
    }

    #[test]
    fn superluminal_configuration_is_rejected() {
        let si = SiPlanar { b_tesla: 0.35, a1_m: 1.0, a2_m: 2.0, omega_per_s: 0.5e9 };
        match nondimensionalize_planar(&si) {
            Err(RdiError::Domain(msg)) => assert!(msg.contains("superluminality")),
            other => panic!("expected superluminality rejection, got {other:?}"),
        }
    }

    #[test]
    fn field_scales_are_consistent_with_the_groups() {
        let s = nondimensionalize_planar(&SiPlanar::fig1()).unwrap();
        // b * b_field_tesla must give back B
        assert!((s.b * s.scale.b_field_tesla() - 0.35).abs() < 1e-12);
        // nonrelativistic |E| at Fig-1 parameters: b*beta2 dominates and
        // equals B a2 omega = 350 V/m exactly
        let e_scaled = (s.b * s.beta2 - s.beta1).abs();
        let e_si = e_scaled * s.scale.e_field_v_per_m();
        let oracle = 0.35 * 2.0e-6 * 0.5e9;
        assert!((e_si - oracle).abs() < 0.01 * oracle, "|E| = {e_si} V/m");
    }
}
