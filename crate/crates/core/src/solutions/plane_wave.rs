//! Free-electron plane waves in matrix-spinor form. The null test of the
//! whole inversion machinery: these states must invert to a vanishing
//! four-potential.

use crate::dual::{Point4, Real};
use crate::rdi::SpinorField;
use crate::sta::{boost, g2g1_exp, rotor, Mat4};

/// Spin orientation of the free state.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

/// Positive-energy plane wave `Psi = U exp(-g2 g1 P.x)` with
/// `P = mu * (v^0, v)` the scaled four-momentum of the boost `U = B(v)`
/// (times the spin rotor for spin down). The phase sign is fixed by
/// requiring the state to solve the free Dirac equation, equivalently by
/// the inversion returning exactly zero potential.
#[derive(Copy, Clone, Debug)]
pub struct PlaneWave {
    pub velocity: [f64; 3],
    pub mass: f64,
    pub spin: Spin,
}

impl PlaneWave {
    pub fn new(velocity: [f64; 3], mass: f64) -> Self {
        PlaneWave {
            velocity,
            mass,
            spin: Spin::Up,
        }
    }

    pub fn with_spin(mut self, spin: Spin) -> Self {
        self.spin = spin;
        self
    }
}

impl SpinorField for PlaneWave {
    fn eval<R: Real>(&self, x: &Point4<R>) -> Mat4<R> {
        let v = self.velocity.map(R::from_f64);
        let v0 = (R::one() + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        // P.x = mu (v^0 t - v.x) with the metric (+,-,-,-)
        let phase = R::from_f64(self.mass)
            * (v0 * x.t - v[0] * x.x - v[1] * x.y - v[2] * x.z);
        let u = match self.spin {
            Spin::Up => boost(&v),
            Spin::Down => boost(&v) * rotor(&[R::zero(), R::from_f64(std::f64::consts::PI), R::zero()]),
        };
        u * g2g1_exp(-phase)
    }
}
