//! Fixed-size spacetime-algebra kernel in the Dirac representation.
//!
//! The 4x4 complex matrices `gamma_mu` satisfy `g0^2 = +1`, `gk^2 = -1`,
//! `{g_mu, g_nu} = 2 g_munu` with metric signature `(+,-,-,-)`. The
//! pseudoscalar is `i = g0 g1 g2 g3` (bold-i; it squares to -1 and commutes
//! with the even subalgebra), and `alpha_k = g_k g_0`. Everything is generic
//! over the scalar field so the same code path produces exact derivatives
//! when evaluated on dual numbers.

use crate::dual::Real;
use crate::{RdiError, Result};
use num_complex::Complex;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Complex scalar over a generic real field.
pub type C<R> = Complex<R>;

/// Four-component Dirac column.
pub type Col4<R> = [C<R>; 4];

fn c<R: Real>(re: f64, im: f64) -> C<R> {
    Complex::new(R::from_f64(re), R::from_f64(im))
}

/// 4x4 complex matrix, row-major.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Mat4<R>(pub [[C<R>; 4]; 4]);

impl<R: Real> Mat4<R> {
    pub fn zero() -> Self {
        Mat4([[Complex::new(R::zero(), R::zero()); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..4 {
            m.0[k][k] = c(1.0, 0.0);
        }
        m
    }

    /// Lift an integer-valued template `(re, im)` into the scalar field.
    fn from_template(t: [[(i8, i8); 4]; 4]) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for col in 0..4 {
                m.0[r][col] = c(f64::from(t[r][col].0), f64::from(t[r][col].1));
            }
        }
        m
    }

    pub fn scale(&self, s: C<R>) -> Self {
        let mut m = *self;
        for row in &mut m.0 {
            for e in row.iter_mut() {
                *e = *e * s;
            }
        }
        m
    }

    pub fn scale_re(&self, s: R) -> Self {
        self.scale(Complex::new(s, R::zero()))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for r in 0..4 {
            for col in 0..4 {
                m.0[r][col] = self.0[col][r].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C<R> {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn column(&self, j: usize) -> Col4<R> {
        [self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]]
    }

    pub fn mul_col(&self, v: &Col4<R>) -> Col4<R> {
        let mut out = [Complex::new(R::zero(), R::zero()); 4];
        for r in 0..4 {
            let mut acc = Complex::new(R::zero(), R::zero());
            for k in 0..4 {
                acc = acc + self.0[r][k] * v[k];
            }
            out[r] = acc;
        }
        out
    }

    /// Largest entry magnitude-squared root, on primal values (diagnostics).
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for row in &self.0 {
            for e in row {
                let a = e.norm_sqr().value().sqrt();
                if a > m {
                    m = a;
                }
            }
        }
        m
    }
}

impl<R: Real> Add for Mat4<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for r in 0..4 {
            for col in 0..4 {
                m.0[r][col] = m.0[r][col] + rhs.0[r][col];
            }
        }
        m
    }
}

impl<R: Real> Sub for Mat4<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for r in 0..4 {
            for col in 0..4 {
                m.0[r][col] = m.0[r][col] - rhs.0[r][col];
            }
        }
        m
    }
}

impl<R: Real> Neg for Mat4<R> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(c(-1.0, 0.0))
    }
}

impl<R: Real> Mul for Mat4<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Mat4::zero();
        for r in 0..4 {
            for col in 0..4 {
                let mut acc = Complex::new(R::zero(), R::zero());
                for k in 0..4 {
                    acc = acc + self.0[r][k] * rhs.0[k][col];
                }
                m.0[r][col] = acc;
            }
        }
        m
    }
}

// Dirac representation templates: entries are 0, +-1, +-i.
const G0: [[(i8, i8); 4]; 4] = [
    [(1, 0), (0, 0), (0, 0), (0, 0)],
    [(0, 0), (1, 0), (0, 0), (0, 0)],
    [(0, 0), (0, 0), (-1, 0), (0, 0)],
    [(0, 0), (0, 0), (0, 0), (-1, 0)],
];
const G1: [[(i8, i8); 4]; 4] = [
    [(0, 0), (0, 0), (0, 0), (-1, 0)],
    [(0, 0), (0, 0), (-1, 0), (0, 0)],
    [(0, 0), (1, 0), (0, 0), (0, 0)],
    [(1, 0), (0, 0), (0, 0), (0, 0)],
];
const G2: [[(i8, i8); 4]; 4] = [
    [(0, 0), (0, 0), (0, 0), (0, 1)],
    [(0, 0), (0, 0), (0, -1), (0, 0)],
    [(0, 0), (0, -1), (0, 0), (0, 0)],
    [(0, 1), (0, 0), (0, 0), (0, 0)],
];
const G3: [[(i8, i8); 4]; 4] = [
    [(0, 0), (0, 0), (-1, 0), (0, 0)],
    [(0, 0), (0, 0), (0, 0), (1, 0)],
    [(1, 0), (0, 0), (0, 0), (0, 0)],
    [(0, 0), (-1, 0), (0, 0), (0, 0)],
];

/// `gamma_mu` with the index down.
pub fn gamma_lower<R: Real>(mu: usize) -> Mat4<R> {
    match mu {
        0 => Mat4::from_template(G0),
        1 => Mat4::from_template(G1),
        2 => Mat4::from_template(G2),
        3 => Mat4::from_template(G3),
        _ => panic!("gamma index out of range"),
    }
}

/// `gamma^mu = g^munu gamma_nu`: raising flips the sign of the spatial ones.
pub fn gamma_upper<R: Real>(mu: usize) -> Mat4<R> {
    if mu == 0 {
        gamma_lower(0)
    } else {
        -gamma_lower::<R>(mu)
    }
}

/// `alpha_k = gamma_k gamma_0`, `k = 1..=3`.
pub fn alpha<R: Real>(k: usize) -> Mat4<R> {
    assert!((1..=3).contains(&k), "alpha index out of range");
    gamma_lower::<R>(k) * gamma_lower::<R>(0)
}

/// Pseudoscalar `i = g0 g1 g2 g3`; squares to -1.
pub fn pseudoscalar<R: Real>() -> Mat4<R> {
    gamma_lower::<R>(0) * gamma_lower::<R>(1) * gamma_lower::<R>(2) * gamma_lower::<R>(3)
}

/// Chirality matrix `gamma5 = i g^0 g^1 g^2 g^3` (off-diagonal identity blocks).
pub fn gamma5<R: Real>() -> Mat4<R> {
    (gamma_upper::<R>(0) * gamma_upper::<R>(1) * gamma_upper::<R>(2) * gamma_upper::<R>(3))
        .scale(c(0.0, 1.0))
}

/// Name-addressable basis element for the public `gamma` entry point.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GammaIndex {
    Mu(usize),
    /// Pseudoscalar `i = g0 g1 g2 g3`.
    Pseudoscalar,
    /// Chirality `gamma5`.
    Gamma5,
}

impl FromStr for GammaIndex {
    type Err = RdiError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" | "1" | "2" | "3" => Ok(GammaIndex::Mu(s.parse().unwrap())),
            "i5" => Ok(GammaIndex::Pseudoscalar),
            "gamma5" => Ok(GammaIndex::Gamma5),
            other => Err(RdiError::InvalidArgument(format!(
                "gamma index must be 0..3, \"i5\" or \"gamma5\", got {other:?}"
            ))),
        }
    }
}

/// Fixed Dirac-representation matrix for a validated index.
pub fn gamma(index: GammaIndex) -> Result<Mat4<f64>> {
    match index {
        GammaIndex::Mu(m) if m <= 3 => Ok(gamma_lower(m)),
        GammaIndex::Mu(m) => Err(RdiError::InvalidArgument(format!(
            "gamma index {m} out of range 0..3"
        ))),
        GammaIndex::Pseudoscalar => Ok(pseudoscalar()),
        GammaIndex::Gamma5 => Ok(gamma5()),
    }
}

/// Semantic role of a four-vector value.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum VectorKind {
    Position,
    Velocity,
    Potential,
    Current,
    #[default]
    Generic,
}

/// Contravariant four-vector (scaled units) with its semantic role.
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct FourVector {
    pub components: [f64; 4],
    pub kind: VectorKind,
}

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector {
            components: [t, x, y, z],
            kind: VectorKind::Generic,
        }
    }

    pub fn tagged(kind: VectorKind, components: [f64; 4]) -> Self {
        FourVector { components, kind }
    }

    /// Minkowski square with signature `(+,-,-,-)`.
    pub fn minkowski_sq(&self) -> f64 {
        let [t, x, y, z] = self.components;
        t * t - x * x - y * y - z * z
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.components[1], self.components[2], self.components[3]]
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

impl std::ops::Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.components[i]
    }
}

/// Feynman slash of upper components: `a^mu gamma_mu`; linear in `a`.
pub fn slash<R: Real>(a: &[R; 4]) -> Mat4<R> {
    let mut m = Mat4::zero();
    for (mu, &comp) in a.iter().enumerate() {
        m = m + gamma_lower::<R>(mu).scale_re(comp);
    }
    m
}

/// Reversion `tilde(M) = g0 M^dagger g0`; anti-automorphism, involution.
pub fn tilde<R: Real>(m: &Mat4<R>) -> Mat4<R> {
    gamma_lower::<R>(0) * m.adjoint() * gamma_lower::<R>(0)
}

/// Hestenes map: column spinor to matrix spinor. The first column is `psi`;
/// the remaining columns are fixed by the spinor-basis relations
/// `u2 = -i a2 u1`, `u3 = a3 u1`, `u4 = a1 u1`.
pub fn hestenes_embed<R: Real>(psi: &Col4<R>) -> Mat4<R> {
    let [p1, p2, p3, p4] = *psi;
    let (q1, q2, q3, q4) = (p1.conj(), p2.conj(), p3.conj(), p4.conj());
    Mat4([
        [p1, -q2, p3, q4],
        [p2, q1, p4, -q3],
        [p3, q4, p1, -q2],
        [p4, -q3, p2, q1],
    ])
}

/// Leftmost column of the matrix spinor.
pub fn hestenes_extract<R: Real>(m: &Mat4<R>) -> Col4<R> {
    m.column(0)
}

/// Spinorial boost for three-velocity `v` (units of c):
/// `(v^mu alpha_mu + 1)/sqrt(2(1+v^0))` with `v^0 = sqrt(1+|v|^2)`.
pub fn boost<R: Real>(v: &[R; 3]) -> Mat4<R> {
    let v0 = (R::one() + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let mut m = Mat4::identity().scale_re(v0 + R::one());
    for k in 0..3 {
        m = m + alpha::<R>(k + 1).scale_re(v[k]);
    }
    m.scale_re(R::one() / (R::from_f64(2.0) * (R::one() + v0)).sqrt())
}

/// Spinorial rotation `exp(-i theta^k alpha_k / 2)` by the closed half-angle
/// form. Both `cos(|t|/2)` and `sin(|t|/2)/|t|` are evaluated as series in
/// `|t|^2` near zero so the map stays smooth (and dual-differentiable) there.
pub fn rotor<R: Real>(theta: &[R; 3]) -> Mat4<R> {
    let n2 = theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2];
    let (cos_half, sinc_half) = half_angle_factors(n2);
    let mut biv = Mat4::zero();
    for k in 0..3 {
        biv = biv + (pseudoscalar::<R>() * alpha::<R>(k + 1)).scale_re(theta[k]);
    }
    Mat4::identity().scale_re(cos_half) - biv.scale_re(sinc_half)
}

/// `(cos(n/2), sin(n/2)/n)` as smooth functions of `n^2`.
fn half_angle_factors<R: Real>(n2: R) -> (R, R) {
    if n2.value() < 1.0e-8 {
        // cos(n/2)      = 1 - n^2/8 + n^4/384 - ...
        // sin(n/2)/n    = 1/2 - n^2/48 + n^4/3840 - ...
        let c0 = R::one() - n2 / R::from_f64(8.0) + n2 * n2 / R::from_f64(384.0);
        let s0 = R::from_f64(0.5) - n2 / R::from_f64(48.0) + n2 * n2 / R::from_f64(3840.0);
        (c0, s0)
    } else {
        let n = n2.sqrt();
        let half = n / R::from_f64(2.0);
        (half.cos(), half.sin() / n)
    }
}

/// Exponential of the plane-wave null bivector:
/// `1 + scale*[f1p*(a1 + i a2) + f2p*(a2 - i a1)]`. The bivector in brackets
/// squares to zero, so the exponential truncates at first order.
pub fn null_bivector_exp<R: Real>(f1p: R, f2p: R, scale: R) -> Mat4<R> {
    Mat4::identity() + null_bivector(f1p, f2p).scale_re(scale)
}

/// The null bivector `f1p*(a1 + i a2) + f2p*(a2 - i a1)` itself.
pub fn null_bivector<R: Real>(f1p: R, f2p: R) -> Mat4<R> {
    let ip = pseudoscalar::<R>();
    let a1 = alpha::<R>(1);
    let a2 = alpha::<R>(2);
    (a1 + ip * a2).scale_re(f1p) + (a2 - ip * a1).scale_re(f2p)
}

/// `exp(i beta/2) = cos(beta/2) + i sin(beta/2)` on the pseudoscalar axis.
pub fn pseudoscalar_exp<R: Real>(beta: R) -> Mat4<R> {
    let half = beta / R::from_f64(2.0);
    Mat4::identity().scale_re(half.cos()) + pseudoscalar::<R>().scale_re(half.sin())
}

/// Rotation about the `g2 g1` axis: `exp(g2 g1 * phi)`; on the first basis
/// column this is multiplication by `exp(i phi)`.
pub fn g2g1_exp<R: Real>(phi: R) -> Mat4<R> {
    let g21 = gamma_lower::<R>(2) * gamma_lower::<R>(1);
    Mat4::identity().scale_re(phi.cos()) + g21.scale_re(phi.sin())
}

/// Upper vector components `Tr(M gamma^mu)/4` plus the largest imaginary
/// part as the reality diagnostic (never silently dropped).
pub fn vector_components<R: Real>(m: &Mat4<R>) -> ([R; 4], R) {
    let mut re = [R::zero(); 4];
    let mut worst = R::zero();
    for mu in 0..4 {
        let tr = (*m * gamma_upper::<R>(mu)).trace();
        re[mu] = tr.re / R::from_f64(4.0);
        let im = (tr.im / R::from_f64(4.0)).abs();
        if im.value() > worst.value() {
            worst = im;
        }
    }
    (re, worst)
}

/// Scalar and pseudoscalar parts of `M = s*1 + p*i + (rest)`.
pub fn scalar_pseudoscalar_parts<R: Real>(m: &Mat4<R>) -> (C<R>, C<R>) {
    let quarter = c::<R>(0.25, 0.0);
    let s = m.trace() * quarter;
    let p = (-(pseudoscalar::<R>() * *m)).trace() * quarter;
    (s, p)
}

/// `rho exp(i beta)` decomposition of `Psi tilde(Psi)` for a matrix spinor,
/// with the Frobenius residue of everything outside the (1, i) span.
pub fn rho_beta(m: &Mat4<f64>) -> (f64, f64, f64) {
    let mt = *m * tilde(m);
    let (s, p) = scalar_pseudoscalar_parts(&mt);
    let rho = s.re.hypot(p.re);
    let beta = p.re.atan2(s.re);
    let rest = mt - Mat4::identity().scale(s) - pseudoscalar::<f64>().scale(p);
    (rho, beta, rest.max_abs())
}

/// Inverse of a matrix spinor via `Psi^-1 = tilde(Psi) / (Psi tilde(Psi))`,
/// exact on the Hestenes image where `Psi tilde(Psi) = s + p*i`.
pub fn spinor_inverse<R: Real>(m: &Mat4<R>) -> Result<Mat4<R>> {
    let mt = *m * tilde(m);
    let (s, p) = scalar_pseudoscalar_parts(&mt);
    // (s + p i)^-1 = (s - p i)/(s^2 + p^2) since i^2 = -1
    let denom = s * s + p * p;
    let mag = denom.norm_sqr().value().sqrt().sqrt();
    if !(mag > 1.0e-300) {
        return Err(RdiError::SingularSpinor { magnitude: mag });
    }
    let inv_den = denom.inv();
    let num = Mat4::identity().scale(s * inv_den) - pseudoscalar::<R>().scale(p * inv_den);
    Ok(tilde(m) * num)
}

/// Coefficients of `M` over the 16-element STA basis
/// `{1, g_mu, g_mu g_nu (mu<nu), i g_mu, i}` (complex in general; real for
/// elements of the algebra over the reals). Diagnostic helper.
pub fn basis_decompose(m: &Mat4<f64>) -> Vec<(String, C<f64>)> {
    let mut out = Vec::new();
    let quarter = Complex::new(0.25, 0.0);
    let elems: Vec<(String, Mat4<f64>)> = basis_elements();
    for (name, e) in elems {
        // Tr(E~ M)/Tr(E~ E) with E~ chosen as the trace-dual; all basis
        // elements here satisfy E * E = +-1, so the dual is E or -E.
        let e2 = (e * e).trace().re / 4.0;
        let coef = (e * *m).trace() * quarter * Complex::new(e2.signum(), 0.0);
        out.push((name, coef));
    }
    out
}

fn basis_elements() -> Vec<(String, Mat4<f64>)> {
    let mut v: Vec<(String, Mat4<f64>)> = vec![("1".into(), Mat4::identity())];
    for mu in 0..4 {
        v.push((format!("g{mu}"), gamma_lower(mu)));
    }
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            v.push((
                format!("g{mu}g{nu}"),
                gamma_lower::<f64>(mu) * gamma_lower::<f64>(nu),
            ));
        }
    }
    for mu in 0..4 {
        v.push((
            format!("ig{mu}"),
            pseudoscalar::<f64>() * gamma_lower::<f64>(mu),
        ));
    }
    v.push(("i".into(), pseudoscalar()));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn mat_close(a: &Mat4<f64>, b: &Mat4<f64>, tol: f64) -> bool {
        (*a - *b).max_abs() <= tol
    }

    #[test]
    fn clifford_relations_hold_exactly() {
        let metric = [1.0, -1.0, -1.0, -1.0];
        for mu in 0..4 {
            for nu in 0..4 {
                let anti = gamma_lower::<f64>(mu) * gamma_lower::<f64>(nu)
                    + gamma_lower::<f64>(nu) * gamma_lower::<f64>(mu);
                let expect = if mu == nu {
                    Mat4::identity().scale_re(2.0 * metric[mu])
                } else {
                    Mat4::zero()
                };
                assert!(mat_close(&anti, &expect, 0.0), "mu={mu} nu={nu}");
            }
        }
    }

    #[test]
    fn products_are_associative_to_rounding() {
        let a = slash(&[0.7, -0.3, 0.45, 0.11]);
        let b = boost(&[0.2, -0.4, 0.1]);
        let c = rotor(&[1.1, -0.6, 0.3]);
        let lhs = (a * b) * c;
        let rhs = a * (b * c);
        assert!((lhs - rhs).max_abs() < 1e-14);
    }

    #[test]
    fn pseudoscalar_squares_to_minus_one() {
        let ip = pseudoscalar::<f64>();
        assert!(mat_close(&(ip * ip), &(-Mat4::identity()), 0.0));
    }

    #[test]
    fn gamma_entry_point_validates_index() {
        assert!(gamma(GammaIndex::Mu(4)).is_err());
        assert!("i5".parse::<GammaIndex>().is_ok());
        assert!("g7".parse::<GammaIndex>().is_err());
        let g5 = gamma(GammaIndex::Gamma5).unwrap();
        // off-diagonal identity blocks
        assert_eq!(g5.0[0][2], Complex64::new(1.0, 0.0));
        assert_eq!(g5.0[2][0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn slash_squares_to_minkowski_norm() {
        let a = [0.7, -0.3, 0.45, 0.11];
        let m = slash(&a);
        let sq = FourVector::tagged(VectorKind::Generic, a).minkowski_sq();
        assert!(mat_close(&(m * m), &Mat4::identity().scale_re(sq), 1e-15));
        // light-like vector squares to zero
        let k = slash(&[1.0, 0.0, 0.0, 1.0]);
        assert!(mat_close(&(k * k), &Mat4::zero(), 0.0));
    }

    #[test]
    fn slash_of_e0_is_gamma0() {
        assert!(mat_close(&slash(&[1.0, 0.0, 0.0, 0.0]), &gamma_lower(0), 0.0));
    }

    #[test]
    fn tilde_is_an_involution_and_fixes_gamma0() {
        let v = [0.2, -0.4, 0.1];
        let b = boost(&v);
        assert!(mat_close(&tilde(&tilde(&b)), &b, 1e-15));
        assert!(mat_close(&tilde(&gamma_lower(0)), &gamma_lower(0), 0.0));
        // rotor-type unitarity: tilde(B) is the inverse of B
        assert!(mat_close(&(b * tilde(&b)), &Mat4::identity(), 1e-14));
        // anti-automorphism: tilde(AB) = tilde(B) tilde(A)
        let r = rotor(&[0.7, -0.2, 1.1]);
        assert!(mat_close(&tilde(&(b * r)), &(tilde(&r) * tilde(&b)), 1e-15));
    }

    #[test]
    fn embed_of_u2_matches_spin_down_rotor() {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let m = hestenes_embed(&[zero, one, zero, zero]);
        let r = rotor(&[0.0, std::f64::consts::PI, 0.0]);
        assert!(mat_close(&m, &r, 1e-15));
        // and the display pattern itself
        assert_eq!(m.0[0][1], -one);
        assert_eq!(m.0[1][0], one);
        assert_eq!(m.0[2][3], -one);
        assert_eq!(m.0[3][2], one);
    }

    #[test]
    fn embed_matches_basis_combination() {
        // independent construction from the spinor-basis relations
        let psi: Col4<f64> = [
            Complex64::new(0.3, -0.8),
            Complex64::new(-0.1, 0.45),
            Complex64::new(0.9, 0.2),
            Complex64::new(-0.55, -0.3),
        ];
        let (a, b): (Vec<f64>, Vec<f64>) = psi.iter().map(|p| (p.re, p.im)).unzip();
        let ip = pseudoscalar::<f64>();
        let built = Mat4::identity().scale_re(a[0])
            + alpha::<f64>(1).scale_re(a[3])
            + alpha::<f64>(2).scale_re(b[3])
            + alpha::<f64>(3).scale_re(a[2])
            + (ip * alpha::<f64>(1)).scale_re(b[1])
            + (ip * alpha::<f64>(2)).scale_re(-a[1])
            + (ip * alpha::<f64>(3)).scale_re(b[0])
            + ip.scale_re(b[2]);
        assert!(mat_close(&hestenes_embed(&psi), &built, 1e-15));
    }

    #[test]
    fn boost_conjugates_gamma0_to_proper_velocity() {
        let v = [0.35, -0.2, 0.6];
        let b = boost(&v);
        let v0 = (1.0 + v.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let expect = slash(&[v0, v[0], v[1], v[2]]);
        let got = b * gamma_lower(0) * tilde(&b);
        assert!(mat_close(&got, &expect, 1e-14));
    }

    #[test]
    fn rotor_small_angle_expansion_is_smooth() {
        use crate::dual::Dual;
        // derivative of rotor entries at theta = 0 along theta_2
        let f = |t: Dual<f64>| rotor(&[Dual::constant(0.0), t, Dual::constant(0.0)]).0[0][1].re;
        let d = f(Dual::seeded(0.0)).eps;
        // exp(-i a2 t/2) entry (0,1) = -t/2 + O(t^3)
        assert!((d + 0.5).abs() < 1e-12, "d = {d}");
    }

    #[test]
    fn null_bivector_is_nilpotent() {
        let b = null_bivector(0.83, -1.7);
        assert!(mat_close(&(b * b), &Mat4::zero(), 1e-13));
        let e = null_bivector_exp(0.83, -1.7, 0.4);
        let einv = null_bivector_exp(0.83, -1.7, -0.4);
        assert!(mat_close(&(e * einv), &Mat4::identity(), 1e-14));
    }

    #[test]
    fn vector_components_report_imaginary_residue() {
        let a = [0.3, 1.4, -0.2, 0.9];
        let b = [0.05, -0.4, 0.7, 0.2];
        let m = slash(&a) + slash(&b).scale(Complex64::new(0.0, 1.0));
        let (re, residue) = vector_components(&m);
        for mu in 0..4 {
            assert!((re[mu] - a[mu]).abs() < 1e-15);
        }
        let expect = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((residue - expect).abs() < 1e-15);
    }

    #[test]
    fn rho_beta_of_embedded_spinor_uses_quadratic_forms() {
        let psi: Col4<f64> = [
            Complex64::new(0.3, -0.8),
            Complex64::new(-0.1, 0.45),
            Complex64::new(0.9, 0.2),
            Complex64::new(-0.55, -0.3),
        ];
        let m = hestenes_embed(&psi);
        let (rho, beta, rest) = rho_beta(&m);
        let s = psi[0].norm_sqr() + psi[1].norm_sqr() - psi[2].norm_sqr() - psi[3].norm_sqr();
        let p = 2.0 * ((psi[0].conj() * psi[2]).im + (psi[1].conj() * psi[3]).im);
        assert!((rho - s.hypot(p)).abs() < 1e-14);
        assert!((beta - p.atan2(s)).abs() < 1e-14);
        assert!(rest < 1e-14);
    }

    #[test]
    fn spinor_inverse_inverts_on_the_image() {
        let psi: Col4<f64> = [
            Complex64::new(1.3, -0.8),
            Complex64::new(-0.1, 0.45),
            Complex64::new(0.2, 0.2),
            Complex64::new(-0.15, -0.3),
        ];
        let m = hestenes_embed(&psi);
        let inv = spinor_inverse(&m).unwrap();
        assert!(mat_close(&(m * inv), &Mat4::identity(), 1e-13));
        // near-null states are rejected
        let tiny = hestenes_embed(&[Complex64::new(1e-200, 0.0); 4]);
        assert!(matches!(
            spinor_inverse(&tiny),
            Err(RdiError::SingularSpinor { .. })
        ));
    }
}
