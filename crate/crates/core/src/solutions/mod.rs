//! Closed-form solution families: planar transport in the x-y plane, the
//! generalized Volkov family (plane wave plus longitudinal fields), and the
//! free plane wave. Spinors, potentials, fields, sources and limit forms are
//! pure callables over scaled coordinates.

pub mod planar;
pub mod plane_wave;
pub mod volkov;

use crate::dual::{Dual, Real};

/// Smooth real function of one variable, evaluable on dual scalars so any
/// number of derivatives is available to the families.
pub trait ScalarFn1: Sync {
    fn eval<R: Real>(&self, t: R) -> R;
}

/// Smooth real function of two variables (envelope shapes).
pub trait ScalarFn2: Sync {
    fn eval<R: Real>(&self, u: R, v: R) -> R;
}

/// `c0 + a_cos cos(t) + a_sin sin(t)`; covers every trigonometric profile
/// the named instances use.
#[derive(Copy, Clone, Debug)]
pub struct Trig {
    pub c0: f64,
    pub a_cos: f64,
    pub a_sin: f64,
}

impl Trig {
    pub fn cosine(amp: f64) -> Self {
        Trig { c0: 0.0, a_cos: amp, a_sin: 0.0 }
    }
    pub fn sine(amp: f64) -> Self {
        Trig { c0: 0.0, a_cos: 0.0, a_sin: amp }
    }
    pub fn zero() -> Self {
        Trig { c0: 0.0, a_cos: 0.0, a_sin: 0.0 }
    }
}

impl ScalarFn1 for Trig {
    fn eval<R: Real>(&self, t: R) -> R {
        R::from_f64(self.c0)
            + R::from_f64(self.a_cos) * t.cos()
            + R::from_f64(self.a_sin) * t.sin()
    }
}

/// Rotationally symmetric quadratic envelope `u^2 + v^2`; the choice that
/// yields homogeneous magnetic fields.
#[derive(Copy, Clone, Debug)]
pub struct RadialQuadratic;

impl ScalarFn2 for RadialQuadratic {
    fn eval<R: Real>(&self, u: R, v: R) -> R {
        u * u + v * v
    }
}

/// `c2 (u^2+v^2) + c4 (u^4+v^4)`: a non-harmonic envelope with non-constant
/// Laplacian, used to exercise inhomogeneous-field sources.
#[derive(Copy, Clone, Debug)]
pub struct QuarticEnvelope {
    pub c2: f64,
    pub c4: f64,
}

impl ScalarFn2 for QuarticEnvelope {
    fn eval<R: Real>(&self, u: R, v: R) -> R {
        R::from_f64(self.c2) * (u * u + v * v)
            + R::from_f64(self.c4) * (u.powi(4) + v.powi(4))
    }
}

/// Harmonic envelope `k u v` (Laplacian-free; only meaningful on regions
/// where it stays non-negative, e.g. the first quadrant).
#[derive(Copy, Clone, Debug)]
pub struct HarmonicXY {
    pub k: f64,
}

impl ScalarFn2 for HarmonicXY {
    fn eval<R: Real>(&self, u: R, v: R) -> R {
        R::from_f64(self.k) * u * v
    }
}

/// Value, first and second derivative of a one-variable function via nested
/// duals.
pub fn jet2<F: ScalarFn1, R: Real>(f: &F, t: R) -> (R, R, R) {
    let d = f.eval(Dual::seeded(Dual::seeded(t)));
    (d.re.re, d.re.eps, d.eps.eps)
}

/// First partial derivatives of a two-variable function.
pub fn grad2<F: ScalarFn2, R: Real>(f: &F, u: R, v: R) -> (R, R) {
    let du = f.eval(Dual::seeded(u), Dual::constant(v)).eps;
    let dv = f.eval(Dual::constant(u), Dual::seeded(v)).eps;
    (du, dv)
}

/// Laplacian of a two-variable function.
pub fn laplacian2<F: ScalarFn2, R: Real>(f: &F, u: R, v: R) -> R {
    let duu = f
        .eval(Dual::seeded(Dual::seeded(u)), Dual::constant(Dual::constant(v)))
        .eps
        .eps;
    let dvv = f
        .eval(Dual::constant(Dual::constant(u)), Dual::seeded(Dual::seeded(v)))
        .eps
        .eps;
    duu + dvv
}
