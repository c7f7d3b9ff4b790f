//! Planar-transport family: shape-preserving translation of a spin-down
//! wavepacket along an arbitrary trajectory `(f(t), g(t))` in the x-y plane.
//!
//! In scaled units the state is `Psi_b = sqrt(rho') B(v) R` with
//! `v = gamma (f', g', 0)`, `R` the spin-down rotor, and
//! `rho'(t,x,y) = exp(-b mu G(x-f, y-g)/2) / gamma`. The paired potential
//! is carried in closed form; the inversion engine must reproduce it
//! independently, which the tests enforce.

use crate::dual::{Dual, Point4, Real};
use crate::rdi::{PotentialField, SpinorField};
use crate::solutions::{grad2, jet2, ScalarFn1, ScalarFn2, RadialQuadratic, Trig};
use crate::sta::{boost, rotor, Col4, Mat4};
use crate::verify::EmField;
use crate::{RdiError, Result};
use num_complex::Complex;

/// Trajectory + envelope + dimensionless groups for the planar family.
#[derive(Copy, Clone, Debug)]
pub struct PlanarSpec<F, G, E> {
    /// x-trajectory `f(t)` in scaled lengths.
    pub f: F,
    /// y-trajectory `g(t)`.
    pub g: G,
    /// Envelope shape `G(u, v) >= 0`; the density is `exp(-b mu G/2)`.
    pub envelope: E,
    /// Cyclotron ratio `e B / (m omega)`.
    pub b: f64,
    /// Scaled mass `m c^2 / (hbar omega)`.
    pub mu: f64,
}

/// Trajectory jet at one time: positions, two derivatives, Lorentz factor.
pub struct Kinematics<R> {
    pub f: R,
    pub fp: R,
    pub fpp: R,
    pub g: R,
    pub gp: R,
    pub gpp: R,
    pub gamma: R,
}

impl<F, G, E> PlanarSpec<F, G, E>
where
    F: ScalarFn1,
    G: ScalarFn1,
    E: ScalarFn2,
{
    pub fn kinematics<R: Real>(&self, t: R) -> Kinematics<R> {
        let (f, fp, fpp) = jet2(&self.f, t);
        let (g, gp, gpp) = jet2(&self.g, t);
        let gamma = R::one() / (R::one() - fp * fp - gp * gp).sqrt();
        Kinematics { f, fp, fpp, g, gp, gpp, gamma }
    }

    /// Reject trajectories that reach or exceed the speed of light at `t`.
    pub fn validate_speed(&self, t: f64) -> Result<()> {
        let k = self.kinematics(t);
        let speed_sq = k.fp * k.fp + k.gp * k.gp;
        if speed_sq >= 1.0 {
            return Err(RdiError::Domain(format!(
                "superluminal trajectory: |v|^2 = {speed_sq:.6} at t = {t}"
            )));
        }
        Ok(())
    }

    /// Probability density `psi^dag psi = exp(-b mu G(x', y')/2)`.
    pub fn density<R: Real>(&self, x: &Point4<R>) -> R {
        let k = self.kinematics(x.t);
        let arg = self.envelope.eval(x.x - k.f, x.y - k.g);
        (-R::from_f64(self.b * self.mu) * arg / R::from_f64(2.0)).exp()
    }

    /// Closed-form Dirac column of the family (components 1 and 4 vanish).
    pub fn spinor_components<R: Real>(&self, x: &Point4<R>) -> Col4<R> {
        let k = self.kinematics(x.t);
        let env = self.envelope.eval(x.x - k.f, x.y - k.g);
        let sqrt_rho = (-R::from_f64(self.b * self.mu) * env / R::from_f64(4.0)).exp()
            / k.gamma.sqrt();
        let amp = sqrt_rho / R::from_f64(2.0f64.sqrt());
        let zero = Complex::new(R::zero(), R::zero());
        let one_plus = (R::one() + k.gamma).sqrt();
        [
            zero,
            Complex::new(amp * one_plus, R::zero()),
            Complex::new(
                amp * k.gamma * k.fp / one_plus,
                -amp * k.gamma * k.gp / one_plus,
            ),
            zero,
        ]
    }

    /// Closed-form scaled potential `a^mu` of the family (`a^3 = 0`).
    ///
    /// `a^0 = [(1-gamma) d/dt atan2(g',f') + (s x v).grad ln rho]/2 - mu gamma`
    /// `a^1 = -[gamma d_y ln rho + d_t(rho v^2)/rho]/2 - mu v^1`
    /// `a^2 = +[gamma d_x ln rho + d_t(rho v^1)/rho]/2 - mu v^2`
    ///
    /// with `rho` the full local density including the `1/gamma` factor and
    /// `s = -z_hat` the spin direction of the family.
    pub fn potential_components<R: Real>(&self, x: &Point4<R>) -> [R; 4] {
        let bm = R::from_f64(self.b * self.mu);
        let mu = R::from_f64(self.mu);
        let half = R::from_f64(0.5);
        let k = self.kinematics(x.t);
        let v1 = k.gamma * k.fp;
        let v2 = k.gamma * k.gp;

        let (gu, gv) = grad2(&self.envelope, x.x - k.f, x.y - k.g);
        let dlnrho_dx = -half * bm * gu;
        let dlnrho_dy = -half * bm * gv;

        // d/dt atan2(g', f') = (g'' f' - g' f'')/(f'^2 + g'^2); exactly zero
        // velocity never turns, so return zero there (the 1-gamma factor
        // vanishes in the same limit).
        let speed_sq = k.fp * k.fp + k.gp * k.gp;
        let datan = if speed_sq.value() < 1.0e-280 {
            R::zero()
        } else {
            (k.gpp * k.fp - k.gp * k.fpp) / speed_sq
        };

        // time derivatives of ln rho and v at fixed (x, y), by a dual pass
        // over t alone (log form keeps this finite under density underflow)
        let (dlnrho_dt, dv1_dt, dv2_dt) = self.time_derivatives(x);

        let a0 = half * ((R::one() - k.gamma) * datan + (v2 * dlnrho_dx - v1 * dlnrho_dy))
            - mu * k.gamma;
        let a1 = -half * (k.gamma * dlnrho_dy + (v2 * dlnrho_dt + dv2_dt)) - mu * v1;
        let a2 = half * (k.gamma * dlnrho_dx + (v1 * dlnrho_dt + dv1_dt)) - mu * v2;
        [a0, a1, a2, R::zero()]
    }

    fn time_derivatives<R: Real>(&self, x: &Point4<R>) -> (R, R, R) {
        let t = Dual::seeded(x.t);
        let (f, fp, _) = jet2(&self.f, t);
        let (g, gp, _) = jet2(&self.g, t);
        let one = Dual::<R>::from_f64(1.0);
        let gamma = one / (one - fp * fp - gp * gp).sqrt();
        let env = self
            .envelope
            .eval(Dual::constant(x.x) - f, Dual::constant(x.y) - g);
        let lnrho = -Dual::from_f64(self.b * self.mu) * env / Dual::from_f64(2.0) - gamma.ln();
        let v1 = gamma * fp;
        let v2 = gamma * gp;
        (lnrho.eps, v1.eps, v2.eps)
    }
}

impl<F, G, E> SpinorField for PlanarSpec<F, G, E>
where
    F: ScalarFn1,
    G: ScalarFn1,
    E: ScalarFn2,
{
    /// Matrix route `sqrt(rho') B(v) R`, built from the kernel factors.
    fn eval<R: Real>(&self, x: &Point4<R>) -> Mat4<R> {
        let k = self.kinematics(x.t);
        let env = self.envelope.eval(x.x - k.f, x.y - k.g);
        let sqrt_rho = (-R::from_f64(self.b * self.mu) * env / R::from_f64(4.0)).exp()
            / k.gamma.sqrt();
        let v = [k.gamma * k.fp, k.gamma * k.gp, R::zero()];
        let spin_down = rotor(&[R::zero(), R::from_f64(std::f64::consts::PI), R::zero()]);
        (boost(&v) * spin_down).scale_re(sqrt_rho)
    }
}

/// Closed-form column with the superluminal guard applied.
pub fn planar_spinor<F, G, E>(spec: &PlanarSpec<F, G, E>, x: &Point4<f64>) -> Result<Col4<f64>>
where
    F: ScalarFn1,
    G: ScalarFn1,
    E: ScalarFn2,
{
    spec.validate_speed(x.t)?;
    Ok(spec.spinor_components(x))
}

/// Closed-form potential with the superluminal guard applied.
pub fn planar_potential<F, G, E>(
    spec: &PlanarSpec<F, G, E>,
    x: &Point4<f64>,
) -> Result<crate::sta::FourVector>
where
    F: ScalarFn1,
    G: ScalarFn1,
    E: ScalarFn2,
{
    spec.validate_speed(x.t)?;
    Ok(crate::sta::FourVector::tagged(
        crate::sta::VectorKind::Potential,
        spec.potential_components(x),
    ))
}

/// Column-field adapter for the closed form.
pub struct PlanarColumn<'a, F, G, E>(pub &'a PlanarSpec<F, G, E>);

impl<F, G, E> crate::rdi::ColumnField for PlanarColumn<'_, F, G, E>
where
    F: ScalarFn1,
    G: ScalarFn1,
    E: ScalarFn2,
{
    fn eval<R: Real>(&self, x: &Point4<R>) -> Col4<R> {
        self.0.spinor_components(x)
    }
}

/// Potential-field adapter for the closed form.
pub struct PlanarPotential<'a, F, G, E>(pub &'a PlanarSpec<F, G, E>);

impl<F, G, E> PotentialField for PlanarPotential<'_, F, G, E>
where
    F: ScalarFn1,
    G: ScalarFn1,
    E: ScalarFn2,
{
    fn eval<R: Real>(&self, x: &Point4<R>) -> Result<[R; 4]> {
        self.0.validate_speed(x.t.value())?;
        Ok(self.0.potential_components(x))
    }
    fn mass(&self) -> f64 {
        self.0.mu
    }
}

/// Dimensionless parameters of the elliptical Gaussian instance:
/// `f = beta1 cos t`, `g = beta2 sin t`, `G = u^2 + v^2`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct EllipseParams {
    pub beta1: f64,
    pub beta2: f64,
    pub b: f64,
    pub mu: f64,
}

impl EllipseParams {
    /// Superluminality gate: the peak speed over a period is
    /// `max(beta1, beta2)` and must stay below 1.
    pub fn validate(&self) -> Result<()> {
        let peak = self.beta1.abs().max(self.beta2.abs());
        if peak >= 1.0 {
            return Err(RdiError::Domain(format!(
                "superluminal ellipse: max(a1, a2) * omega / c = {peak:.6} >= 1"
            )));
        }
        if self.b <= 0.0 || self.mu <= 0.0 {
            return Err(RdiError::Domain(
                "b and mu must be positive".to_string(),
            ));
        }
        Ok(())
    }

    /// Gaussian 1-sigma width of the density in scaled lengths.
    pub fn sigma(&self) -> f64 {
        1.0 / (self.b * self.mu).sqrt()
    }

    /// Packet center `(f(t), g(t))`.
    pub fn center(&self, t: f64) -> (f64, f64) {
        (self.beta1 * t.cos(), self.beta2 * t.sin())
    }

    pub fn gamma(&self, t: f64) -> f64 {
        let s = t.sin();
        let c = t.cos();
        1.0 / (1.0 - self.beta1 * self.beta1 * s * s - self.beta2 * self.beta2 * c * c).sqrt()
    }
}

/// The elliptical instance of the planar family.
pub type EllipseSpec = PlanarSpec<Trig, Trig, RadialQuadratic>;

pub fn ellipse(params: EllipseParams) -> Result<EllipseSpec> {
    params.validate()?;
    Ok(PlanarSpec {
        f: Trig::cosine(params.beta1),
        g: Trig::sine(params.beta2),
        envelope: RadialQuadratic,
        b: params.b,
        mu: params.mu,
    })
}

/// Which limit form of the ellipse driving fields to evaluate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LimitKind {
    /// `c -> infinity`: uniform static B, rotating uniform E.
    NonRelativistic,
    /// `gamma >> 1` asymptotic display (approximate; singular at
    /// `beta1 = beta2` by its construction).
    Relativistic,
    /// `hbar -> 0`: the exact field with the 1/(2 mu) terms removed.
    Classical,
}

/// Exact closed-form driving fields of the ellipse instance, in scaled units
/// `(eE/(m c omega), eB/(m omega))`. The E field is linear in `(x, y)` with
/// time-periodic coefficients; `B` is the homogeneous
/// `B3 = -(b/2)(gamma + 1/gamma)`.
pub fn ellipse_fields<R: Real>(p: &EllipseParams, x: &Point4<R>) -> ([R; 3], [R; 3]) {
    let (e1, e2) = ellipse_e_coefficients(p, x.t, false);
    let b3 = ellipse_b3(p, x.t);
    (
        [
            e1.0 + e1.1 * x.x + e1.2 * x.y,
            e2.0 + e2.1 * x.x + e2.2 * x.y,
            R::zero(),
        ],
        [R::zero(), R::zero(), b3],
    )
}

fn ellipse_b3<R: Real>(p: &EllipseParams, t: R) -> R {
    let gamma = lorentz_gamma(p, t);
    -R::from_f64(p.b / 2.0) * (gamma + R::one() / gamma)
}

fn lorentz_gamma<R: Real>(p: &EllipseParams, t: R) -> R {
    let s = t.sin();
    let c = t.cos();
    R::one()
        / (R::one() - R::from_f64(p.beta1 * p.beta1) * s * s
            - R::from_f64(p.beta2 * p.beta2) * c * c)
            .sqrt()
}

/// `(uniform, x-coef, y-coef)` of E1 and E2. With `classical` set, the
/// hbar-proportional `1/(2 mu)` pieces are dropped.
#[allow(clippy::type_complexity)]
fn ellipse_e_coefficients<R: Real>(
    p: &EllipseParams,
    t: R,
    classical: bool,
) -> ((R, R, R), (R, R, R)) {
    let b1 = p.beta1;
    let b2 = p.beta2;
    let d = b1 * b1 - b2 * b2;
    let s = t.sin();
    let c = t.cos();
    let s2 = s * s;
    let s4 = s2 * s2;
    let gamma = lorentz_gamma(p, t);
    let g3 = gamma.powi(3);
    let b = R::from_f64(p.b);
    let half = R::from_f64(0.5);

    let cos2t = R::from_f64(2.0) * c * c - R::one();
    let n = cos2t + R::from_f64(b1 * b1) * s4 - R::from_f64(b2 * b2) * (c * c) * (c * c);
    let c1x = -half * b * R::from_f64(b1 * b2) * g3 * n;
    let c2y = -c1x;
    let c1y = half * b * g3 * s * c
        * (R::from_f64(2.0 * b1 * b1 * b2 * b2 - b1 * b1 - b2 * b2)
            - c * c * R::from_f64(b2 * b2 * d));
    let c2x = -half * b * g3 * s * c
        * (R::from_f64(b1 * b1 + b2 * b2 - 2.0 * b1 * b1 * b2 * b2)
            - s2 * R::from_f64(b1 * b1 * d));

    let hbar1 = if classical { 0.0 } else { b2 * (1.0 - b2 * b2) / (2.0 * p.mu) };
    let hbar2 = if classical { 0.0 } else { b1 * (1.0 - b1 * b1) / (2.0 * p.mu) };
    let u1 = g3 * c
        * (half * b * R::from_f64(b2)
            * (R::from_f64(2.0 * d * d) * s4
                + R::from_f64(d * (3.0 * b2 * b2 - 4.0)) * s2
                + R::from_f64((1.0 - b2 * b2) * (d + 2.0)))
            - R::from_f64(b1 * (1.0 - b2 * b2) + hbar1));
    let u2 = g3 * s
        * (half * b * R::from_f64(b1)
            * (R::from_f64(2.0 * d * d) * s4
                - R::from_f64(d * (b1 * b1 - 4.0 * b2 * b2 + 4.0)) * s2
                + R::from_f64(b1 * b1 * (1.0 - 2.0 * b2 * b2) + 2.0 * b2.powi(4) - 3.0 * b2 * b2
                    + 2.0))
            - R::from_f64(b2 * (1.0 - b1 * b1) + hbar2));

    ((u1, c1x, c1y), (u2, c2x, c2y))
}

/// Limit forms of the ellipse driving fields.
pub fn ellipse_limit_fields<R: Real>(
    kind: LimitKind,
    p: &EllipseParams,
    x: &Point4<R>,
) -> ([R; 3], [R; 3]) {
    match kind {
        LimitKind::NonRelativistic => {
            let e = [
                R::from_f64(p.b * p.beta2 - p.beta1) * x.t.cos(),
                R::from_f64(p.b * p.beta1 - p.beta2) * x.t.sin(),
                R::zero(),
            ];
            (e, [R::zero(), R::zero(), R::from_f64(-p.b)])
        }
        LimitKind::Relativistic => {
            let gamma = lorentz_gamma(p, x.t);
            let d = 2.0 * (p.beta1 * p.beta1 - p.beta2 * p.beta2);
            let gb = gamma * R::from_f64(p.b);
            let e = [
                gb * (R::from_f64(p.beta2) * x.t.cos()
                    - R::from_f64(p.beta1 * p.beta2 / d) * x.x),
                gb * (R::from_f64(p.beta1) * x.t.sin()
                    + R::from_f64(p.beta1 * p.beta2 / d) * x.y),
                R::zero(),
            ];
            (e, [R::zero(), R::zero(), -gb / R::from_f64(2.0)])
        }
        LimitKind::Classical => {
            let (e1, e2) = ellipse_e_coefficients(p, x.t, true);
            let b3 = ellipse_b3(p, x.t);
            (
                [
                    e1.0 + e1.1 * x.x + e1.2 * x.y,
                    e2.0 + e2.1 * x.x + e2.2 * x.y,
                    R::zero(),
                ],
                [R::zero(), R::zero(), b3],
            )
        }
    }
}

/// EmField adapter for the exact ellipse fields.
#[derive(Copy, Clone, Debug)]
pub struct EllipseFields(pub EllipseParams);

impl EmField for EllipseFields {
    fn eval<R: Real>(&self, x: &Point4<R>) -> Result<([R; 3], [R; 3])> {
        Ok(ellipse_fields(&self.0, x))
    }
}

/// EmField adapter for a chosen limit form.
#[derive(Copy, Clone, Debug)]
pub struct EllipseLimitFields(pub LimitKind, pub EllipseParams);

impl EmField for EllipseLimitFields {
    fn eval<R: Real>(&self, x: &Point4<R>) -> Result<([R; 3], [R; 3])> {
        Ok(ellipse_limit_fields(self.0, &self.1, x))
    }
}
