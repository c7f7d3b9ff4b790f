//! Forward-mode automatic differentiation on nested dual numbers.
//!
//! Every field in this crate is evaluated generically over a scalar type
//! implementing [`Real`]. Instantiating at `f64` gives plain values,
//! `Dual<f64>` gives one exact directional derivative, and
//! `Dual<Dual<f64>>` gives second derivatives, with no truncation error at
//! any order. Central finite differences are deliberately *not* used inside
//! the engine; they live in test code as the independent cross-check.

use num_traits::{Num, One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

/// Scalar field interface shared by `f64` and nested [`Dual`] types.
///
/// The function set is exactly what the closed-form solution families and
/// the inversion engine need; comparisons and guards act on the innermost
/// (primal) value via [`Real::value`].
pub trait Real:
    Copy
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_f64(x: f64) -> Self;
    /// Innermost primal value, recursing through dual layers.
    fn value(self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan(self) -> Self;
    /// Four-quadrant arctangent; `self` is the ordinate.
    fn atan2(self, x: Self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn powf(self, e: f64) -> Self;
    fn abs(self) -> Self;
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn value(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn powf(self, e: f64) -> Self {
        f64::powf(self, e)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
}

/// First-order jet `re + eps * d` with nilpotent `d`; nest for higher orders.
#[derive(Copy, Clone, Debug, PartialEq, PartialOrd)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }

    /// Lift a constant (zero derivative).
    pub fn constant(re: T) -> Self {
        Dual {
            re,
            eps: T::zero(),
        }
    }

    /// Independent variable: derivative one.
    pub fn seeded(re: T) -> Self {
        Dual { re, eps: T::one() }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual::new(
            self.re * rhs.re,
            self.re * rhs.eps + self.eps * rhs.re,
        )
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // the primal lane must be the plain `a / b` so that every dual
        // instantiation reproduces the f64 evaluation bit for bit; a
        // reciprocal-multiply here would round differently and desynchronize
        // values from derivatives at one-ulp level, which stiff phases
        // amplify
        let re = self.re / rhs.re;
        Dual::new(re, (self.eps - re * rhs.eps) / rhs.re)
    }
}

impl<T: Real> Rem for Dual<T> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        let r = self.re % rhs.re;
        // x mod y = x - k y with integer k constant almost everywhere
        let k = (self.re - r) / rhs.re;
        Dual::new(r, self.eps - k * rhs.eps)
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<T: Real> Zero for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<T: Real> One for Dual<T> {
    fn one() -> Self {
        Dual::constant(T::one())
    }
}

impl<T: Real> Num for Dual<T> {
    type FromStrRadixErr = <T as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        T::from_str_radix(s, radix).map(Dual::constant)
    }
}

impl<T: Real> Real for Dual<T> {
    fn from_f64(x: f64) -> Self {
        Dual::constant(T::from_f64(x))
    }

    fn value(self) -> f64 {
        self.re.value()
    }

    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.eps / (T::from_f64(2.0) * s))
    }

    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual::new(e, self.eps * e)
    }

    fn ln(self) -> Self {
        Dual::new(self.re.ln(), self.eps / self.re)
    }

    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.eps * self.re.cos())
    }

    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -self.eps * self.re.sin())
    }

    fn atan(self) -> Self {
        Dual::new(self.re.atan(), self.eps / (T::one() + self.re * self.re))
    }

    fn atan2(self, x: Self) -> Self {
        let den = self.re * self.re + x.re * x.re;
        Dual::new(
            self.re.atan2(x.re),
            (self.eps * x.re - self.re * x.eps) / den,
        )
    }

    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::one();
        }
        Dual::new(
            self.re.powi(n),
            T::from_f64(f64::from(n)) * self.re.powi(n - 1) * self.eps,
        )
    }

    fn powf(self, e: f64) -> Self {
        Dual::new(
            self.re.powf(e),
            T::from_f64(e) * self.re.powf(e - 1.0) * self.eps,
        )
    }

    fn abs(self) -> Self {
        if self.re.value() < 0.0 {
            -self
        } else {
            self
        }
    }
}

/// Spacetime evaluation point in scaled coordinates `(tau, x, y, z)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Point4<R> {
    pub t: R,
    pub x: R,
    pub y: R,
    pub z: R,
}

impl<R: Real> Point4<R> {
    pub fn new(t: R, x: R, y: R, z: R) -> Self {
        Point4 { t, x, y, z }
    }

    pub fn coord(&self, axis: usize) -> R {
        match axis {
            0 => self.t,
            1 => self.x,
            2 => self.y,
            _ => self.z,
        }
    }

    /// Lift into a richer scalar with zero derivatives.
    pub fn lift<S: Real>(&self) -> Point4<S> {
        Point4::new(
            S::from_f64(self.t.value()),
            S::from_f64(self.x.value()),
            S::from_f64(self.y.value()),
            S::from_f64(self.z.value()),
        )
    }

    /// Wrap every coordinate in a dual layer and seed one axis.
    pub fn seed(&self, axis: usize) -> Point4<Dual<R>> {
        let mut p = Point4::new(
            Dual::constant(self.t),
            Dual::constant(self.x),
            Dual::constant(self.y),
            Dual::constant(self.z),
        );
        match axis {
            0 => p.t = Dual::seeded(self.t),
            1 => p.x = Dual::seeded(self.x),
            2 => p.y = Dual::seeded(self.y),
            3 => p.z = Dual::seeded(self.z),
            _ => panic!("axis out of range"),
        }
        p
    }
}

impl Point4<f64> {
    pub fn origin() -> Self {
        Point4::new(0.0, 0.0, 0.0, 0.0)
    }
}

/// Derivative of a scalar map at `x`.
pub fn derivative<F>(f: F, x: f64) -> f64
where
    F: Fn(Dual<f64>) -> Dual<f64>,
{
    f(Dual::seeded(x)).eps
}

/// Central finite difference, the independent oracle for the dual path.
pub fn central_difference<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}
