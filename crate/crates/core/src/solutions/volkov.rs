//! Generalized Volkov family: a plane wave dressed with longitudinal boosts
//! and a transverse envelope, covering the Redmond (plane wave + uniform
//! axial B) and Bagrov (additionally a longitudinal E) solutions as named
//! instances.
//!
//! All profiles are functions of the light-front phase `xi = t - z` (scaled).
//! The dimensionless wave profiles are `f_i(xi)` with `w_i = f_i'`
//! (`e f_i'/(m omega)` in SI terms), the longitudinal momentum is
//! `q = p_z/(m c)` with `q0 = sqrt(1 + q^2)`, and the induced coordinate
//! shifts are `S_i(xi) = int_0^xi (q + q0) w_i`.

use crate::dual::{Dual, Point4, Real};
use crate::quad::integrate;
use crate::rdi::{PotentialField, SpinorField};
use crate::solutions::{laplacian2, ScalarFn1, ScalarFn2, Trig};
use crate::sta::{boost, g2g1_exp, null_bivector_exp, rotor, Col4, Mat4};
use crate::verify::EmField;
use crate::{RdiError, Result};
use num_complex::Complex;

const SHIFT_TOL: f64 = 1.0e-13;

/// Light-front kinematics of the family: wave profiles, longitudinal
/// momentum, and the induced coordinate shifts.
pub trait VolkovKinematics: Sync {
    fn f1<R: Real>(&self, xi: R) -> R;
    fn f2<R: Real>(&self, xi: R) -> R;
    fn q<R: Real>(&self, xi: R) -> R;
    fn shift_x<R: Real>(&self, xi: R) -> R;
    fn shift_y<R: Real>(&self, xi: R) -> R;
}

/// `w_i = f_i'` via a dual pass.
pub fn w1<K: VolkovKinematics, R: Real>(kin: &K, xi: R) -> R {
    kin.f1(Dual::seeded(xi)).eps
}

pub fn w2<K: VolkovKinematics, R: Real>(kin: &K, xi: R) -> R {
    kin.f2(Dual::seeded(xi)).eps
}

/// Circularly polarized instance `f1 = a0 (cos - 1)`, `f2 = -a0 sin` with
/// vanishing longitudinal momentum; the shifts integrate in closed form to
/// the profiles themselves.
#[derive(Copy, Clone, Debug)]
pub struct CircularKinematics {
    pub a0: f64,
}

impl VolkovKinematics for CircularKinematics {
    fn f1<R: Real>(&self, xi: R) -> R {
        R::from_f64(self.a0) * (xi.cos() - R::one())
    }
    fn f2<R: Real>(&self, xi: R) -> R {
        -R::from_f64(self.a0) * xi.sin()
    }
    fn q<R: Real>(&self, _xi: R) -> R {
        R::zero()
    }
    fn shift_x<R: Real>(&self, xi: R) -> R {
        self.f1(xi)
    }
    fn shift_y<R: Real>(&self, xi: R) -> R {
        self.f2(xi)
    }
}

/// Longitudinal-momentum profile solving the source-free condition
/// `q'^2 = q0^2 (q0 - q) q''`: `q = -xi (2a + xi) / (2a (a + xi))`.
#[derive(Copy, Clone, Debug)]
pub struct BagrovPz {
    pub a: f64,
}

impl ScalarFn1 for BagrovPz {
    fn eval<R: Real>(&self, xi: R) -> R {
        let a = R::from_f64(self.a);
        -xi * (R::from_f64(2.0) * a + xi) / (R::from_f64(2.0) * a * (a + xi))
    }
}

/// Guarded evaluation of the Bagrov profile: requires `a > 0, xi >= 0` or
/// `a < 0, xi <= 0` (and never `xi = -a`).
pub fn bagrov_pz(xi: f64, a: f64) -> Result<f64> {
    if a == 0.0 || xi == -a {
        return Err(RdiError::Domain(format!(
            "bagrov p_z undefined at a = {a}, xi = {xi}"
        )));
    }
    let admissible = (a > 0.0 && xi >= 0.0) || (a < 0.0 && xi <= 0.0);
    if !admissible {
        return Err(RdiError::Domain(format!(
            "bagrov sign condition violated: a = {a}, xi = {xi} (need a>0 with xi>=0 or a<0 with xi<=0)"
        )));
    }
    Ok(BagrovPz { a }.eval(xi))
}

/// Residual of the source-free condition `q'^2 - q0^2 (q0 - q) q'' = 0`
/// relative to `|q'^2|`, from exact derivatives of the closed form.
pub fn bagrov_condition_residual(xi: f64, a: f64) -> Result<f64> {
    bagrov_pz(xi, a)?;
    let pz = BagrovPz { a };
    let d = pz.eval(Dual::seeded(Dual::seeded(xi)));
    let (q, qp, qpp) = (d.re.re, d.re.eps, d.eps.eps);
    let q0 = (1.0 + q * q).sqrt();
    let lhs = qp * qp;
    let rhs = q0 * q0 * (q0 - q) * qpp;
    Ok((lhs - rhs).abs() / lhs.abs().max(1.0e-280))
}

/// Generic kinematics with quadrature-evaluated shifts; the fallback for
/// profiles without closed-form shift integrals.
#[derive(Copy, Clone, Debug)]
pub struct QuadShiftKinematics<F1, F2, Q> {
    pub f1: F1,
    pub f2: F2,
    pub pz: Q,
}

impl<F1, F2, Q> QuadShiftKinematics<F1, F2, Q>
where
    F1: ScalarFn1,
    F2: ScalarFn1,
    Q: ScalarFn1,
{
    fn shift<R: Real>(&self, xi: R, along_x: bool) -> R {
        integrate(
            &|phi: R| {
                let q = self.pz.eval(phi);
                let q0 = (R::one() + q * q).sqrt();
                let w = if along_x {
                    self.f1.eval(Dual::seeded(phi)).eps
                } else {
                    self.f2.eval(Dual::seeded(phi)).eps
                };
                (q + q0) * w
            },
            R::zero(),
            xi,
            SHIFT_TOL,
        )
    }
}

impl<F1, F2, Q> VolkovKinematics for QuadShiftKinematics<F1, F2, Q>
where
    F1: ScalarFn1,
    F2: ScalarFn1,
    Q: ScalarFn1,
{
    fn f1<R: Real>(&self, xi: R) -> R {
        self.f1.eval(xi)
    }
    fn f2<R: Real>(&self, xi: R) -> R {
        self.f2.eval(xi)
    }
    fn q<R: Real>(&self, xi: R) -> R {
        self.pz.eval(xi)
    }
    fn shift_x<R: Real>(&self, xi: R) -> R {
        self.shift(xi, true)
    }
    fn shift_y<R: Real>(&self, xi: R) -> R {
        self.shift(xi, false)
    }
}

/// Bagrov instance kinematics: circular wave profiles with the source-free
/// longitudinal momentum; shifts by quadrature.
pub type BagrovKinematics = QuadShiftKinematics<Trig, Trig, BagrovPz>;

pub fn bagrov_kinematics(a0: f64, a: f64) -> BagrovKinematics {
    QuadShiftKinematics {
        f1: Trig { c0: -a0, a_cos: a0, a_sin: 0.0 },
        f2: Trig { c0: 0.0, a_cos: 0.0, a_sin: -a0 },
        pz: BagrovPz { a },
    }
}

/// Gauge phase `Phi(xi, x, y)` applied as the right factor
/// `exp(-g2 g1 Phi)`.
pub trait PhaseFn: Sync {
    fn eval<R: Real>(&self, xi: R, x: R, y: R) -> R;
}

/// Trivial gauge.
#[derive(Copy, Clone, Debug)]
pub struct ZeroPhase;

impl PhaseFn for ZeroPhase {
    fn eval<R: Real>(&self, _xi: R, _x: R, _y: R) -> R {
        R::zero()
    }
}

/// The closed-form phase of the circular instance, chosen so `a^0 = 0`:
/// `Phi = mu [ xi (1 + a0^2 (b+1)/2) + a0 b (x sin + y cos)/2 - a0^2 b sin/2 ]`.
#[derive(Copy, Clone, Debug)]
pub struct CircularPhase {
    pub a0: f64,
    pub b: f64,
    pub mu: f64,
}

impl PhaseFn for CircularPhase {
    fn eval<R: Real>(&self, xi: R, x: R, y: R) -> R {
        let a0 = self.a0;
        R::from_f64(self.mu)
            * (xi * R::from_f64(1.0 + a0 * a0 * (self.b + 1.0) / 2.0)
                + R::from_f64(a0 * self.b / 2.0) * (x * xi.sin() + y * xi.cos())
                - R::from_f64(a0 * a0 * self.b / 2.0) * xi.sin())
    }
}

/// Gauge fixed pointwise by `a^0 = 0`: the phase is the `xi`-integral of the
/// remaining `a^0` terms, evaluated by quadrature.
#[derive(Copy, Clone, Debug)]
pub struct ZeroA0Phase<K, E> {
    pub kin: K,
    pub envelope: E,
    pub b: f64,
    pub mu: f64,
}

impl<K, E> PhaseFn for ZeroA0Phase<K, E>
where
    K: VolkovKinematics,
    E: ScalarFn2,
{
    fn eval<R: Real>(&self, xi: R, x: R, y: R) -> R {
        let mu = self.mu;
        let bmu = self.b * self.mu;
        integrate(
            &|phi: R| {
                let q = self.kin.q(phi);
                let q0 = (R::one() + q * q).sqrt();
                let w1v = w1(&self.kin, phi);
                let w2v = w2(&self.kin, phi);
                let xp = x + self.kin.shift_x(phi);
                let yp = y + self.kin.shift_y(phi);
                let gu = self.envelope.eval(Dual::seeded(xp), Dual::constant(yp)).eps;
                let gv = self.envelope.eval(Dual::constant(xp), Dual::seeded(yp)).eps;
                R::from_f64(mu) * (q + q0) * (w1v * w1v + w2v * w2v) / R::from_f64(2.0)
                    + R::from_f64(mu) * q0
                    + R::from_f64(bmu / 4.0) * (q + q0) * (w1v * gv - w2v * gu)
            },
            R::zero(),
            xi,
            1.0e-12,
        )
    }
}

/// Full family spec: kinematics, transverse envelope, gauge phase, groups.
#[derive(Copy, Clone, Debug)]
pub struct VolkovSpec<K, E, P> {
    pub kin: K,
    pub envelope: E,
    pub phase: P,
    pub b: f64,
    pub mu: f64,
}

impl<K, E, P> VolkovSpec<K, E, P>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    fn frame<R: Real>(&self, x: &Point4<R>) -> Frame<R> {
        let xi = x.t - x.z;
        let q = self.kin.q(xi);
        let q0 = (R::one() + q * q).sqrt();
        Frame {
            xi,
            q,
            q0,
            w1: w1(&self.kin, xi),
            w2: w2(&self.kin, xi),
            xp: x.x + self.kin.shift_x(xi),
            yp: x.y + self.kin.shift_y(xi),
        }
    }

    /// `p0 - p_z > 0` gate (holds identically for finite `q`; rejects
    /// non-finite profile evaluations such as Bagrov at `xi = -a`).
    pub fn validate(&self, x: &Point4<f64>) -> Result<()> {
        let f = self.frame(x);
        if !(f.q0 - f.q).is_finite() || f.q0 - f.q <= 0.0 {
            return Err(RdiError::Domain(format!(
                "p0 - p_z = {:.3e} not positive at xi = {}",
                f.q0 - f.q,
                f.xi
            )));
        }
        Ok(())
    }

    /// Closed-form Dirac column (components 1 and 3 coincide).
    pub fn spinor_components<R: Real>(&self, x: &Point4<R>) -> Col4<R> {
        self.column_impl(x, true)
    }

    /// The column with the gauge phase factor stripped. Bilinear observables
    /// (current, spin density) are exactly invariant under it, and stripping
    /// it keeps their derivative evaluations well conditioned when the phase
    /// winds at the Compton scale.
    pub fn spinor_components_unphased<R: Real>(&self, x: &Point4<R>) -> Col4<R> {
        self.column_impl(x, false)
    }

    fn column_impl<R: Real>(&self, x: &Point4<R>, with_phase: bool) -> Col4<R> {
        let f = self.frame(x);
        let env = self.envelope.eval(f.xp, f.yp);
        let pref = (f.q + f.q0).sqrt()
            * (-R::from_f64(self.b * self.mu) * env / R::from_f64(4.0)).exp()
            / (R::from_f64(2.0) * (R::one() + f.q0)).sqrt();
        let amp = if with_phase {
            let phi = self.phase.eval(f.xi, x.x, x.y);
            Complex::new(phi.cos(), -phi.sin()) * Complex::new(pref, R::zero())
        } else {
            Complex::new(pref, R::zero())
        };
        let h_re = f.w1 * (R::one() + f.q0 - f.q) / (R::from_f64(2.0) * (f.q0 - f.q));
        let h_im = -f.w2 * (R::one() + f.q0 - f.q) / (R::from_f64(2.0) * (f.q0 - f.q));
        let h = Complex::new(h_re, h_im);
        [
            -h * amp,
            amp * Complex::new(R::one() + f.q0, R::zero()),
            -h * amp,
            amp * Complex::new(-f.q, R::zero()),
        ]
    }

    /// Closed-form scaled potential `a^mu`:
    /// `a^0 = Phi_xi - mu (q+q0)(w1^2+w2^2)/2 - mu q0 - (b mu/4)(q+q0)(w1 G_y' - w2 G_x')`
    /// `a^1 = (b mu/4) G_y' - Phi_x + mu w1`
    /// `a^2 = -(b mu/4) G_x' - Phi_y + mu w2`
    /// `a^3 = a^0 + mu (q0 - q)`.
    pub fn potential_components<R: Real>(&self, x: &Point4<R>) -> [R; 4] {
        let f = self.frame(x);
        let mu = R::from_f64(self.mu);
        let bmu4 = R::from_f64(self.b * self.mu / 4.0);
        let gu = self.envelope.eval(Dual::seeded(f.xp), Dual::constant(f.yp)).eps;
        let gv = self.envelope.eval(Dual::constant(f.xp), Dual::seeded(f.yp)).eps;
        let p_xi = self
            .phase
            .eval(Dual::seeded(f.xi), Dual::constant(x.x), Dual::constant(x.y))
            .eps;
        let p_x = self
            .phase
            .eval(Dual::constant(f.xi), Dual::seeded(x.x), Dual::constant(x.y))
            .eps;
        let p_y = self
            .phase
            .eval(Dual::constant(f.xi), Dual::constant(x.x), Dual::seeded(x.y))
            .eps;
        let a0 = p_xi
            - mu * (f.q + f.q0) * (f.w1 * f.w1 + f.w2 * f.w2) / R::from_f64(2.0)
            - mu * f.q0
            - bmu4 * (f.q + f.q0) * (f.w1 * gv - f.w2 * gu);
        let a1 = bmu4 * gv - p_x + mu * f.w1;
        let a2 = -bmu4 * gu - p_y + mu * f.w2;
        let a3 = a0 + mu * (f.q0 - f.q);
        [a0, a1, a2, a3]
    }

    /// Closed-form driving fields in scaled units:
    /// `B = -(b (q+q0) L/4)(w1, w2, 0) + (w2', -w1', -b L/4)` with
    /// `L = lap' G`, and `E = (B_y, -B_x, q'(q0-q)/q0)`.
    pub fn field_components<R: Real>(&self, x: &Point4<R>) -> ([R; 3], [R; 3]) {
        let f = self.frame(x);
        let lap = laplacian2(&self.envelope, f.xp, f.yp);
        let w1p = w1(&self.kin, Dual::seeded(f.xi)).eps;
        let w2p = w2(&self.kin, Dual::seeded(f.xi)).eps;
        let qp = self.kin.q(Dual::seeded(f.xi)).eps;
        let drift = -R::from_f64(self.b / 4.0) * (f.q + f.q0) * lap;
        let b = [
            drift * f.w1 + w2p,
            drift * f.w2 - w1p,
            -R::from_f64(self.b / 4.0) * lap,
        ];
        let e = [b[1], -b[0], qp * (f.q0 - f.q) / f.q0];
        (e, b)
    }

    /// Closed-form Maxwell sources `(rho_e, J)` in scaled units:
    /// `rho_e = (b (q+q0)/4)(w1 L_y' - w2 L_x') + q'^2/q0^3 - q''(q0-q)/q0`,
    /// `J = (-(b/4) L_y', (b/4) L_x', rho_e)` with `L = lap' G`.
    pub fn source_components<R: Real>(&self, x: &Point4<R>) -> (R, [R; 3]) {
        let f = self.frame(x);
        let lap_u = laplacian2(&self.envelope, Dual::seeded(f.xp), Dual::constant(f.yp)).eps;
        let lap_v = laplacian2(&self.envelope, Dual::constant(f.xp), Dual::seeded(f.yp)).eps;
        let qd = self.kin.q(Dual::seeded(Dual::seeded(f.xi)));
        let (qp, qpp) = (qd.re.eps, qd.eps.eps);
        let rho = R::from_f64(self.b / 4.0) * (f.q + f.q0) * (f.w1 * lap_v - f.w2 * lap_u)
            + qp * qp / f.q0.powi(3)
            - qpp * (f.q0 - f.q) / f.q0;
        let j = [
            -R::from_f64(self.b / 4.0) * lap_v,
            R::from_f64(self.b / 4.0) * lap_u,
            rho,
        ];
        (rho, j)
    }
}

struct Frame<R> {
    xi: R,
    q: R,
    q0: R,
    w1: R,
    w2: R,
    xp: R,
    yp: R,
}

impl<K, E, P> SpinorField for VolkovSpec<K, E, P>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    /// Matrix route: `N(xi) B_z(q) sqrt(rho') R exp(-g2 g1 Phi)` with the
    /// null factor `N = 1 - (w1 (a1 + i a2) + w2 (a2 - i a1))/(2 (q0 - q))`.
    fn eval<R: Real>(&self, x: &Point4<R>) -> Mat4<R> {
        let f = self.frame(x);
        let env = self.envelope.eval(f.xp, f.yp);
        let sqrt_rho = (f.q + f.q0).sqrt()
            * (-R::from_f64(self.b * self.mu) * env / R::from_f64(4.0)).exp();
        let phi = self.phase.eval(f.xi, x.x, x.y);
        let n = null_bivector_exp(
            f.w1,
            f.w2,
            -R::one() / (R::from_f64(2.0) * (f.q0 - f.q)),
        );
        let bz = boost(&[R::zero(), R::zero(), f.q]);
        let spin_down = rotor(&[R::zero(), R::from_f64(std::f64::consts::PI), R::zero()]);
        (n * bz * spin_down).scale_re(sqrt_rho) * g2g1_exp(-phi)
    }
}

/// Guarded closed-form column.
pub fn volkov_spinor<K, E, P>(spec: &VolkovSpec<K, E, P>, x: &Point4<f64>) -> Result<Col4<f64>>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    spec.validate(x)?;
    Ok(spec.spinor_components(x))
}

/// Guarded closed-form potential.
pub fn volkov_potential<K, E, P>(
    spec: &VolkovSpec<K, E, P>,
    x: &Point4<f64>,
) -> Result<crate::sta::FourVector>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    spec.validate(x)?;
    Ok(crate::sta::FourVector::tagged(
        crate::sta::VectorKind::Potential,
        spec.potential_components(x),
    ))
}

/// Guarded closed-form fields.
pub fn volkov_fields<K, E, P>(
    spec: &VolkovSpec<K, E, P>,
    x: &Point4<f64>,
) -> Result<([f64; 3], [f64; 3])>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    spec.validate(x)?;
    Ok(spec.field_components(x))
}

/// Guarded closed-form sources.
pub fn volkov_sources<K, E, P>(
    spec: &VolkovSpec<K, E, P>,
    x: &Point4<f64>,
) -> Result<(f64, [f64; 3])>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    spec.validate(x)?;
    Ok(spec.source_components(x))
}

/// Column-field adapter.
pub struct VolkovColumn<'a, K, E, P>(pub &'a VolkovSpec<K, E, P>);

impl<K, E, P> crate::rdi::ColumnField for VolkovColumn<'_, K, E, P>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    fn eval<R: Real>(&self, x: &Point4<R>) -> Col4<R> {
        self.0.spinor_components(x)
    }
}

/// Column-field adapter in the phase-stripped gauge, for observable
/// evaluations (they are gauge invariant).
pub struct UnphasedVolkovColumn<'a, K, E, P>(pub &'a VolkovSpec<K, E, P>);

impl<K, E, P> crate::rdi::ColumnField for UnphasedVolkovColumn<'_, K, E, P>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    fn eval<R: Real>(&self, x: &Point4<R>) -> Col4<R> {
        self.0.spinor_components_unphased(x)
    }
}

/// Potential-field adapter.
pub struct VolkovPotential<'a, K, E, P>(pub &'a VolkovSpec<K, E, P>);

impl<K, E, P> PotentialField for VolkovPotential<'_, K, E, P>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    fn eval<R: Real>(&self, x: &Point4<R>) -> Result<[R; 4]> {
        Ok(self.0.potential_components(x))
    }
    fn mass(&self) -> f64 {
        self.0.mu
    }
}

/// EmField adapter for the closed-form fields.
pub struct VolkovFieldsEm<'a, K, E, P>(pub &'a VolkovSpec<K, E, P>);

impl<K, E, P> EmField for VolkovFieldsEm<'_, K, E, P>
where
    K: VolkovKinematics,
    E: ScalarFn2,
    P: PhaseFn,
{
    fn eval<R: Real>(&self, x: &Point4<R>) -> Result<([R; 3], [R; 3])> {
        Ok(self.0.field_components(x))
    }
}

/// Closed-form Dirac current and spin density of the circular instance:
/// with `rho = exp(-b mu ((x+S1)^2 + (y+S2)^2)/2)`,
/// `J  = rho (1 + a0^2/2, a0 sin xi, a0 cos xi, a0^2/2)` and
/// `rho s = rho (a0^2/2, a0 sin xi, a0 cos xi, -1 + a0^2/2)`.
pub fn circular_observables(
    a0: f64,
    b: f64,
    mu: f64,
    x: &Point4<f64>,
) -> ([f64; 4], [f64; 4]) {
    let xi = x.t - x.z;
    let xp = x.x + a0 * (xi.cos() - 1.0);
    let yp = x.y - a0 * xi.sin();
    let rho = (-b * mu * (xp * xp + yp * yp) / 2.0).exp();
    let half = a0 * a0 / 2.0;
    let j = [
        rho * (1.0 + half),
        rho * a0 * xi.sin(),
        rho * a0 * xi.cos(),
        rho * half,
    ];
    let s = [
        rho * half,
        rho * a0 * xi.sin(),
        rho * a0 * xi.cos(),
        rho * (half - 1.0),
    ];
    (j, s)
}
