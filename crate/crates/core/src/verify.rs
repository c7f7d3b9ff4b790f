//! Field-level analysis and physics verification: field tensors and Maxwell
//! sources from any potential, relativistic Lorentz-force trajectories,
//! radiative-loss estimates, and structured residual reports.
//!
//! Conventions (fixed once, asserted against the uniform-field case):
//! scaled fields are `E_k = F^{k0}`, `B_1 = -F^{23}` (cyclic), with
//! `F^{mu nu} = (d^mu a^nu - d^nu a^mu)/mass` so that `E = e E_SI/(m c omega)`
//! and `B = e B_SI/(m omega)`.

use crate::dual::{Dual, Point4, Real};
use crate::rdi::PotentialField;
use crate::units::ScaleSystem;
use crate::{RdiError, Result};
use serde::{Deserialize, Serialize};

/// An electromagnetic field sample source: scaled `(E, B)` at a point.
pub trait EmField: Sync {
    fn eval<R: Real>(&self, x: &Point4<R>) -> Result<([R; 3], [R; 3])>;
}

/// Field sample at a point: scaled `(E, B)` plus where it was taken.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EmSample {
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub position: Point4<f64>,
}

/// Evaluate an `EmField` into a positioned sample.
pub fn sample_em<F: EmField>(field: &F, x: &Point4<f64>) -> Result<EmSample> {
    let (e, b) = field.eval(x)?;
    Ok(EmSample { e, b, position: *x })
}

/// Homogeneous field, mostly for integrator tests.
#[derive(Copy, Clone, Debug)]
pub struct UniformField {
    pub e: [f64; 3],
    pub b: [f64; 3],
}

impl EmField for UniformField {
    fn eval<R: Real>(&self, _x: &Point4<R>) -> Result<([R; 3], [R; 3])> {
        Ok((self.e.map(R::from_f64), self.b.map(R::from_f64)))
    }
}

/// Antisymmetric field tensor sample (scaled units).
#[derive(Copy, Clone, Debug)]
pub struct FieldTensor {
    pub f: [[f64; 4]; 4],
}

impl FieldTensor {
    pub fn electric(&self) -> [f64; 3] {
        [self.f[1][0], self.f[2][0], self.f[3][0]]
    }

    pub fn magnetic(&self) -> [f64; 3] {
        [-self.f[2][3], -self.f[3][1], -self.f[1][2]]
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..4 {
            for n in 0..4 {
                worst = worst.max((self.f[m][n] + self.f[n][m]).abs());
            }
        }
        worst
    }
}

/// `F^{mu nu} = (d^mu a^nu - d^nu a^mu)/mass` from dual-number partials.
pub fn field_tensor<P: PotentialField>(potential: &P, x: &Point4<f64>) -> Result<FieldTensor> {
    // d_mu a^nu
    let mut grad = [[0.0; 4]; 4];
    for axis in 0..4 {
        let a = potential.eval(&x.seed(axis))?;
        for nu in 0..4 {
            grad[axis][nu] = a[nu].eps;
        }
    }
    let sign = [1.0, -1.0, -1.0, -1.0]; // raise the derivative index
    let mut f = [[0.0; 4]; 4];
    for m in 0..4 {
        for n in 0..4 {
            f[m][n] = (sign[m] * grad[m][n] - sign[n] * grad[n][m]) / potential.mass();
        }
    }
    Ok(FieldTensor { f })
}

/// EmField view of a potential via its field tensor, exact to dual precision.
pub struct FromPotential<P>(pub P);

impl<P: PotentialField> EmField for FromPotential<P> {
    fn eval<R: Real>(&self, x: &Point4<R>) -> Result<([R; 3], [R; 3])> {
        let minv = R::from_f64(1.0 / self.0.mass());
        let mut grad = [[R::zero(); 4]; 4];
        for axis in 0..4 {
            let seeded = seed_generic(x, axis);
            let a = self.0.eval(&seeded)?;
            for nu in 0..4 {
                grad[axis][nu] = a[nu].eps;
            }
        }
        // E_k = -d_k a^0 - d_t a^k ; B = curl a
        let e = [
            (-grad[1][0] - grad[0][1]) * minv,
            (-grad[2][0] - grad[0][2]) * minv,
            (-grad[3][0] - grad[0][3]) * minv,
        ];
        let b = [
            (grad[2][3] - grad[3][2]) * minv,
            (grad[3][1] - grad[1][3]) * minv,
            (grad[1][2] - grad[2][1]) * minv,
        ];
        Ok((e, b))
    }
}

fn seed_generic<R: Real>(x: &Point4<R>, axis: usize) -> Point4<Dual<R>> {
    let mut p = Point4::new(
        Dual::constant(x.t),
        Dual::constant(x.x),
        Dual::constant(x.y),
        Dual::constant(x.z),
    );
    match axis {
        0 => p.t = Dual::seeded(x.t),
        1 => p.x = Dual::seeded(x.x),
        2 => p.y = Dual::seeded(x.y),
        _ => p.z = Dual::seeded(x.z),
    }
    p
}

/// Maxwell-source sample: the inhomogeneous pair `(rho_e, J)` plus the
/// homogeneous-law residuals, which must vanish for any field derived from
/// a potential.
#[derive(Copy, Clone, Debug)]
pub struct MaxwellSample {
    /// `div E`.
    pub rho_e: f64,
    /// `curl B - dE/dt`.
    pub current: [f64; 3],
    /// `div B` (residual; zero for potential-derived fields).
    pub div_b: f64,
    /// `curl E + dB/dt` (residual).
    pub faraday: [f64; 3],
}

/// Sources and homogeneous-law residuals of an `EmField` at `x`, from
/// dual-number derivatives.
pub fn maxwell_sources<F: EmField>(field: &F, x: &Point4<f64>) -> Result<MaxwellSample> {
    // jac[axis][k] = d_axis (E_k, B_k)
    let mut je = [[0.0; 3]; 4];
    let mut jb = [[0.0; 3]; 4];
    for axis in 0..4 {
        let (e, b) = field.eval(&x.seed(axis))?;
        for k in 0..3 {
            je[axis][k] = e[k].eps;
            jb[axis][k] = b[k].eps;
        }
    }
    let div = |j: &[[f64; 3]; 4]| j[1][0] + j[2][1] + j[3][2];
    let curl = |j: &[[f64; 3]; 4]| {
        [
            j[2][2] - j[3][1],
            j[3][0] - j[1][2],
            j[1][1] - j[2][0],
        ]
    };
    let curl_b = curl(&jb);
    let curl_e = curl(&je);
    Ok(MaxwellSample {
        rho_e: div(&je),
        current: [
            curl_b[0] - je[0][0],
            curl_b[1] - je[0][1],
            curl_b[2] - je[0][2],
        ],
        div_b: div(&jb),
        faraday: [
            curl_e[0] + jb[0][0],
            curl_e[1] + jb[0][1],
            curl_e[2] + jb[0][2],
        ],
    })
}

/// One sample of an integrated trajectory (scaled units).
#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub position: [f64; 3],
    pub velocity: [f64; 3],
    pub gamma: f64,
}

/// Time-ordered trajectory of one classical particle.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn last(&self) -> &TrajectorySample {
        self.samples.last().expect("trajectory has samples")
    }
}

/// Relativistic Boris push of `d(gamma v)/dt = E + v x B` (scaled units,
/// fields absorbing the charge): half electric kick, exact magnetic
/// rotation, half kick. The magnetic substep preserves `|gamma v|` exactly,
/// so energy is conserved when `E = 0`.
pub fn lorentz_push<F: EmField>(
    state: ([f64; 3], [f64; 3]),
    fields: &F,
    dt: f64,
    steps: usize,
) -> Result<Trajectory> {
    let (mut pos, v0) = state;
    let speed0 = norm3(&v0);
    if speed0 >= 1.0 {
        return Err(RdiError::Domain(format!(
            "initial speed {speed0:.6} is not subluminal"
        )));
    }
    let gamma0 = 1.0 / (1.0 - speed0 * speed0).sqrt();
    let mut u = [v0[0] * gamma0, v0[1] * gamma0, v0[2] * gamma0];
    let mut t = 0.0;
    let max_rot = (std::f64::consts::FRAC_PI_8).tan();

    let mut traj = Trajectory {
        samples: Vec::with_capacity(steps + 1),
    };
    let push_sample = |traj: &mut Trajectory, t: f64, pos: [f64; 3], u: [f64; 3]| {
        let gamma = (1.0 + dot3(&u, &u)).sqrt();
        traj.samples.push(TrajectorySample {
            t,
            position: pos,
            velocity: [u[0] / gamma, u[1] / gamma, u[2] / gamma],
            gamma,
        });
    };
    push_sample(&mut traj, t, pos, u);

    for _ in 0..steps {
        let x = Point4::new(t, pos[0], pos[1], pos[2]);
        let (e, b) = fields.eval(&x)?;
        let half = dt / 2.0;
        let u_minus = [u[0] + half * e[0], u[1] + half * e[1], u[2] + half * e[2]];
        let gamma_minus = (1.0 + dot3(&u_minus, &u_minus)).sqrt();
        let tv = [
            half * b[0] / gamma_minus,
            half * b[1] / gamma_minus,
            half * b[2] / gamma_minus,
        ];
        let tnorm = norm3(&tv);
        if tnorm > max_rot {
            return Err(RdiError::Configuration(format!(
                "magnetic rotation angle per step exceeds pi/4 (|t| = {tnorm:.3}); reduce dt"
            )));
        }
        let u_prime = add3(&u_minus, &cross3(&u_minus, &tv));
        let s = 2.0 / (1.0 + dot3(&tv, &tv));
        let sv = [tv[0] * s, tv[1] * s, tv[2] * s];
        let u_plus = add3(&u_minus, &cross3(&u_prime, &sv));
        u = [
            u_plus[0] + half * e[0],
            u_plus[1] + half * e[1],
            u_plus[2] + half * e[2],
        ];
        let gamma = (1.0 + dot3(&u, &u)).sqrt();
        pos = [
            pos[0] + dt * u[0] / gamma,
            pos[1] + dt * u[1] / gamma,
            pos[2] + dt * u[2] / gamma,
        ];
        t += dt;
        push_sample(&mut traj, t, pos, u);
    }
    Ok(traj)
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: &[f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn add3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Radiated-versus-kinetic energy bookkeeping over one trajectory.
#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct LarmorReport {
    pub radiated_joules: f64,
    pub kinetic_joules: f64,
    pub ratio: f64,
    pub radiated_scaled: f64,
    pub kinetic_scaled: f64,
}

/// Relativistic Larmor power integrated over the trajectory, with the
/// acceleration taken from centered differences of the sampled velocity.
/// `P = e^2 gamma^6 (|a|^2 - |v x a|^2/c^2) / (6 pi eps0 c^3)`.
pub fn larmor_estimate(traj: &Trajectory, scale: &ScaleSystem) -> Result<LarmorReport> {
    use crate::units::{ELEMENTARY_CHARGE, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
    let n = traj.samples.len();
    if n < 3 {
        return Err(RdiError::InvalidArgument(
            "trajectory too short for a radiation estimate".to_string(),
        ));
    }
    let c = SPEED_OF_LIGHT;
    let coef = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE
        / (6.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY * c * c * c);
    let mut radiated = 0.0;
    let mut powers = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = if i == 0 {
            (0, 1)
        } else if i == n - 1 {
            (n - 2, n - 1)
        } else {
            (i - 1, i + 1)
        };
        let dt_si = (traj.samples[hi].t - traj.samples[lo].t) / scale.omega;
        let mut a_si = [0.0; 3];
        for k in 0..3 {
            a_si[k] =
                c * (traj.samples[hi].velocity[k] - traj.samples[lo].velocity[k]) / dt_si;
        }
        let v_si = traj.samples[i].velocity.map(|v| v * c);
        let gamma = traj.samples[i].gamma;
        let va = cross3(&v_si, &a_si);
        let p = coef * gamma.powi(6) * (dot3(&a_si, &a_si) - dot3(&va, &va) / (c * c));
        powers.push(p);
    }
    for i in 1..n {
        let dt_si = (traj.samples[i].t - traj.samples[i - 1].t) / scale.omega;
        radiated += 0.5 * (powers[i] + powers[i - 1]) * dt_si;
    }
    let gamma_max = traj
        .samples
        .iter()
        .fold(1.0f64, |m, s| m.max(s.gamma));
    let kinetic = (gamma_max - 1.0) * scale.rest_energy_joules();
    Ok(LarmorReport {
        radiated_joules: radiated,
        kinetic_joules: kinetic,
        ratio: radiated / kinetic.max(f64::MIN_POSITIVE),
        radiated_scaled: radiated / scale.energy_scale_joules(),
        kinetic_scaled: kinetic / scale.energy_scale_joules(),
    })
}

/// Verification grid: `nt x nx x ny` points spanning a time range and
/// `+-half_widths` Gaussian widths around the packet center in x and y.
#[derive(Copy, Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GridSpec {
    pub nt: usize,
    pub nx: usize,
    pub ny: usize,
    pub t_start: f64,
    pub t_end: f64,
    pub half_widths: f64,
    pub z: f64,
    /// Track the packet center in the transverse plane.
    pub follow_center: bool,
}

impl GridSpec {
    pub fn default_verification() -> Self {
        GridSpec {
            nt: 7,
            nx: 7,
            ny: 7,
            t_start: 0.0,
            t_end: 2.0 * std::f64::consts::PI,
            half_widths: 3.0,
            z: 0.0,
            follow_center: true,
        }
    }

    /// Materialize the points around a center trajectory with a transverse
    /// scale `sigma`.
    pub fn points(&self, sigma: f64, center: impl Fn(f64) -> (f64, f64)) -> Vec<Point4<f64>> {
        let mut pts = Vec::with_capacity(self.nt * self.nx * self.ny);
        for it in 0..self.nt {
            let t = if self.nt == 1 {
                self.t_start
            } else {
                self.t_start
                    + (self.t_end - self.t_start) * it as f64 / (self.nt as f64 - 1.0)
            };
            let (cx, cy) = if self.follow_center { center(t) } else { (0.0, 0.0) };
            for ix in 0..self.nx {
                let fx = if self.nx == 1 {
                    0.0
                } else {
                    -1.0 + 2.0 * ix as f64 / (self.nx as f64 - 1.0)
                };
                for iy in 0..self.ny {
                    let fy = if self.ny == 1 {
                        0.0
                    } else {
                        -1.0 + 2.0 * iy as f64 / (self.ny as f64 - 1.0)
                    };
                    pts.push(Point4::new(
                        t,
                        cx + self.half_widths * sigma * fx,
                        cy + self.half_widths * sigma * fy,
                        self.z,
                    ));
                }
            }
        }
        pts
    }
}

/// Verdict for one verified law on one scenario.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LawReport {
    pub law: String,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub points: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl LawReport {
    /// Reduce a residual sample set against a tolerance.
    pub fn from_residuals(law: &str, residuals: &[f64], tolerance: f64) -> Self {
        let max = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        let mean = if residuals.is_empty() {
            0.0
        } else {
            residuals.iter().map(|r| r.abs()).sum::<f64>() / residuals.len() as f64
        };
        LawReport {
            law: law.to_string(),
            max_residual: max,
            mean_residual: mean,
            points: residuals.len(),
            tolerance,
            pass: max < tolerance,
        }
    }
}

/// Structured record of max/mean residual norms per law per scenario.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResidualReport {
    pub scenario: String,
    pub laws: Vec<LawReport>,
}

impl ResidualReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|l| l.pass)
    }

    /// Re-derive every pass flag from the stored numbers.
    pub fn flags_consistent(&self) -> bool {
        self.laws
            .iter()
            .all(|l| l.pass == (l.max_residual < l.tolerance))
    }
}
