#![allow(clippy::needless_range_loop)]

//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Criterion 10 (byte-identical artifacts) and the config-time half of
//! criterion 8 live in the CLI crate's acceptance tests, next to the
//! artifact emission they gate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdi_core::dual::Point4;
use rdi_core::rdi::{
    self, dirac_residual, invert_potential, ColumnOf, InvertedPotential,
};
use rdi_core::scenario::{run_verification, Scenario, Tolerances};
use rdi_core::solutions::planar::{
    ellipse, EllipseLimitFields, EllipseParams, LimitKind, PlanarColumn, PlanarPotential,
};
use rdi_core::solutions::plane_wave::{PlaneWave, Spin};
use rdi_core::solutions::volkov::{
    bagrov_condition_residual, CircularKinematics, CircularPhase, VolkovColumn, VolkovPotential,
    VolkovSpec,
};
use rdi_core::solutions::RadialQuadratic;
use rdi_core::sta::{
    alpha, boost, gamma_lower, hestenes_embed, hestenes_extract, null_bivector,
    null_bivector_exp, rotor, tilde, Mat4,
};
use rdi_core::units::{nondimensionalize_planar, nondimensionalize_volkov, SiPlanar, SiVolkov};
use rdi_core::verify::{larmor_estimate, lorentz_push, GridSpec, UniformField};
use num_complex::Complex64;

const SEED: u64 = 0x5244_4931;

fn ellipse_fig1_params() -> EllipseParams {
    let s = nondimensionalize_planar(&SiPlanar::fig1()).unwrap();
    EllipseParams { beta1: s.beta1, beta2: s.beta2, b: s.b, mu: s.mu }
}

fn redmond_fig2_spec() -> VolkovSpec<CircularKinematics, RadialQuadratic, CircularPhase> {
    let s = nondimensionalize_volkov(&SiVolkov::fig2()).unwrap();
    VolkovSpec {
        kin: CircularKinematics { a0: s.a0_tilde },
        envelope: RadialQuadratic,
        phase: CircularPhase { a0: s.a0_tilde, b: s.b, mu: s.mu },
        b: s.b,
        mu: s.mu,
    }
}

fn redmond_generic_spec() -> VolkovSpec<CircularKinematics, RadialQuadratic, CircularPhase> {
    VolkovSpec {
        kin: CircularKinematics { a0: 0.8 },
        envelope: RadialQuadratic,
        phase: CircularPhase { a0: 0.8, b: 1.0, mu: 10.0 / 3.0 },
        b: 1.0,
        mu: 10.0 / 3.0,
    }
}

/// Criterion 1: normalized Dirac residual of the closed-form
/// (spinor, potential) pairs on the full 7x7x7 verification grid, for the
/// published-parameter scenarios.
#[test]
fn acceptance_01_dirac_residual_on_figure_scenarios() {
    for name in ["ellipse-fig1", "redmond-fig2"] {
        let scenario = Scenario::by_name(name).unwrap();
        let grid = GridSpec::default_verification();
        assert_eq!(grid.nt * grid.nx * grid.ny, 343);
        let report = run_verification(&scenario, &grid, &Tolerances::default()).unwrap();
        let law = report
            .laws
            .iter()
            .find(|l| l.law == "dirac_residual")
            .unwrap();
        assert_eq!(law.points, 343);
        assert!(
            law.pass && law.tolerance <= 1e-8,
            "{name}: dirac residual max {:.3e} (tol {:.1e})",
            law.max_residual,
            law.tolerance
        );
        println!(
            "ACCEPTANCE 1 ({name}): PASS  max residual {:.3e} < 1e-8",
            law.max_residual
        );
    }
}

/// Criterion 2: the inversion engine reproduces the closed-form potentials
/// of both families at 100 random in-domain points, to 1e-8 relative in the
/// max norm, with reality residue below 1e-10.
#[test]
fn acceptance_02_inversion_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    for (label, params) in [
        ("ellipse-fig1", ellipse_fig1_params()),
        ("ellipse-generic", EllipseParams { beta1: 0.3, beta2: 0.5, b: 2.5, mu: 3.5 }),
    ] {
        let spec = ellipse(params).unwrap();
        let sigma = 1.0 / (params.b * params.mu).sqrt();
        let mut worst = (0.0f64, 0.0f64);
        for _ in 0..100 {
            let t = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let (cx, cy) = params.center(t);
            let x = Point4::new(
                t,
                cx + sigma * rng.gen_range(-3.0..3.0),
                cy + sigma * rng.gen_range(-3.0..3.0),
                0.0,
            );
            let (a, residue) = invert_potential(&spec, &x, params.mu).unwrap();
            let closed = spec.potential_components(&x);
            let scale = closed.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            let diff = (0..4)
                .map(|k| (a[k] - closed[k]).abs())
                .fold(0.0f64, f64::max)
                / scale;
            worst = (worst.0.max(diff), worst.1.max(residue));
        }
        assert!(worst.0 < 1e-8, "{label}: inversion mismatch {:.3e}", worst.0);
        assert!(worst.1 < 1e-10, "{label}: reality residue {:.3e}", worst.1);
        println!(
            "ACCEPTANCE 2 ({label}): PASS  max rel mismatch {:.3e}, reality {:.3e}",
            worst.0, worst.1
        );
    }

    for (label, spec) in [
        ("redmond-fig2", redmond_fig2_spec()),
        ("redmond-generic", redmond_generic_spec()),
    ] {
        let sigma = 1.0 / (spec.b * spec.mu).sqrt();
        let kin = spec.kin;
        let mut worst = (0.0f64, 0.0f64);
        for _ in 0..100 {
            let t = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let z = rng.gen_range(-0.5..0.5);
            let xi = t - z;
            use rdi_core::solutions::volkov::VolkovKinematics;
            let x = Point4::new(
                t,
                -kin.shift_x(xi) + sigma * rng.gen_range(-3.0..3.0),
                -kin.shift_y(xi) + sigma * rng.gen_range(-3.0..3.0),
                z,
            );
            let (a, residue) = invert_potential(&spec, &x, spec.mu).unwrap();
            let closed = spec.potential_components(&x);
            let scale = closed.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            let diff = (0..4)
                .map(|k| (a[k] - closed[k]).abs())
                .fold(0.0f64, f64::max)
                / scale;
            worst = (worst.0.max(diff), worst.1.max(residue));
        }
        assert!(worst.0 < 1e-8, "{label}: inversion mismatch {:.3e}", worst.0);
        assert!(worst.1 < 1e-10, "{label}: reality residue {:.3e}", worst.1);
        println!(
            "ACCEPTANCE 2 ({label}): PASS  max rel mismatch {:.3e}, reality {:.3e}",
            worst.0, worst.1
        );
    }
}

/// Criterion 3: the RDI inversion of free plane waves returns a potential
/// that vanishes to better than 1e-12, at random boosts and spins.
#[test]
fn acceptance_03_free_electron_null_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let v = [
            rng.gen_range(-0.8..0.8),
            rng.gen_range(-0.8..0.8),
            rng.gen_range(-0.8..0.8),
        ];
        let mu = rng.gen_range(0.5..4.0);
        let spin = if k % 2 == 0 { Spin::Up } else { Spin::Down };
        let wave = PlaneWave::new(v, mu).with_spin(spin);
        let x = Point4::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let (a, _) = invert_potential(&wave, &x, mu).unwrap();
        worst = worst.max(a.max_abs());
        // and the state solves the free equation
        let pot = InvertedPotential { field: wave, mass: mu };
        let r = dirac_residual(&ColumnOf(&wave), &pot, &x).unwrap();
        assert!(r < 1e-12, "free residual {r:.3e}");
    }
    assert!(worst < 1e-12, "null potential violated: |a| = {worst:.3e}");
    println!("ACCEPTANCE 3: PASS  max |a| = {worst:.3e} < 1e-12");
}

/// Criterion 4: homogeneous Maxwell laws for every family; Redmond fields
/// additionally source-free; generalized-Volkov sources match the closed
/// form.
#[test]
fn acceptance_04_maxwell_laws() {
    let tols = Tolerances::default();
    for name in [
        "ellipse-fig1",
        "ellipse-generic",
        "redmond-fig2",
        "redmond-generic",
        "bagrov-sourcefree",
        "volkov-general",
    ] {
        let scenario = Scenario::by_name(name).unwrap();
        let mut grid = scenario.default_grid();
        if name.starts_with("ellipse") || name.starts_with("redmond") {
            grid.nt = 5;
            grid.nx = 5;
            grid.ny = 5;
        }
        let report = run_verification(&scenario, &grid, &tols).unwrap();
        for law in ["faraday", "div_b"] {
            let l = report.laws.iter().find(|l| l.law == law).unwrap();
            assert!(
                l.pass && l.tolerance <= 1e-9,
                "{name}/{law}: max {:.3e}",
                l.max_residual
            );
        }
        if name.starts_with("redmond") {
            let l = report.laws.iter().find(|l| l.law == "source_free").unwrap();
            assert!(l.pass && l.tolerance <= 1e-9, "{name}: sources {:.3e}", l.max_residual);
        }
        if name == "volkov-general" {
            let l = report
                .laws
                .iter()
                .find(|l| l.law == "source_consistency")
                .unwrap();
            assert!(l.pass && l.tolerance <= 1e-8, "{name}: source mismatch {:.3e}", l.max_residual);
        }
        println!("ACCEPTANCE 4 ({name}): PASS");
    }
}

/// Criterion 5: the closed-form longitudinal momentum satisfies the
/// source-free condition to 1e-10 over 100 admissible points, and the
/// longitudinal electric field is the constant -1/a to 1e-10.
#[test]
fn acceptance_05_bagrov_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let scenario = Scenario::by_name("bagrov-sourcefree").unwrap();
    let a = match &scenario {
        Scenario::Bagrov { a, .. } => *a,
        _ => unreachable!(),
    };
    let mut worst_ode = 0.0f64;
    let mut worst_ez = 0.0f64;
    for _ in 0..100 {
        let xi = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        worst_ode = worst_ode.max(bagrov_condition_residual(xi, a).unwrap());
        let x = Point4::new(xi, 0.0, 0.0, 0.0);
        let (e, _) = scenario.fields_at(&x).unwrap();
        worst_ez = worst_ez.max((e[2] * a + 1.0).abs());
    }
    assert!(worst_ode < 1e-10, "ODE residual {worst_ode:.3e}");
    assert!(worst_ez < 1e-10, "E_z deviation {worst_ez:.3e}");
    println!("ACCEPTANCE 5: PASS  ODE {worst_ode:.3e}, E_z const {worst_ez:.3e}");
}

/// Criterion 6: pointwise shape preservation of the ellipse scenario at 16
/// times over a period, after normalization.
#[test]
fn acceptance_06_shape_preservation() {
    for name in ["ellipse-fig1", "ellipse-generic"] {
        let scenario = Scenario::by_name(name).unwrap();
        let report =
            run_verification(&scenario, &GridSpec::default_verification(), &Tolerances::default())
                .unwrap();
        let law = report
            .laws
            .iter()
            .find(|l| l.law == "shape_preservation")
            .unwrap();
        assert_eq!(law.points, 16);
        assert!(
            law.pass && law.tolerance <= 1e-10,
            "{name}: shape residual {:.3e}",
            law.max_residual
        );
        println!(
            "ACCEPTANCE 6 ({name}): PASS  max pointwise deviation {:.3e} < 1e-10",
            law.max_residual
        );
    }
}

/// Criterion 7: classical trajectories. The Boris-integrated particle at the
/// packet center of the classical-limit ellipse fields closes the ellipse
/// with semi-axes within 1%; the uniform-B cyclotron radius matches
/// `gamma m v / (e B)` to 0.1%.
#[test]
fn acceptance_07_classical_trajectories() {
    // (a) ellipse closure at the ellipse-fig1 parameters
    let params = ellipse_fig1_params();
    let fields = EllipseLimitFields(LimitKind::Classical, params);
    let start = ([params.beta1, 0.0, 0.0], [0.0, params.beta2, 0.0]);
    let steps = 32_000;
    let dt = 2.0 * std::f64::consts::PI / steps as f64;
    let traj = lorentz_push(start, &fields, dt, steps).unwrap();
    let tol = 0.01 * params.beta1.max(params.beta2);
    let end = traj.last();
    let closure = (end.position[0] - params.beta1).hypot(end.position[1]);
    assert!(closure < tol, "orbit failed to close: {closure:.3e} vs {tol:.3e}");
    let (mut max_x, mut max_y) = (0.0f64, 0.0f64);
    for s in &traj.samples {
        max_x = max_x.max(s.position[0].abs());
        max_y = max_y.max(s.position[1].abs());
    }
    assert!((max_x - params.beta1).abs() < 0.01 * params.beta1, "a1 semi-axis {max_x:.6e}");
    assert!((max_y - params.beta2).abs() < 0.01 * params.beta2, "a2 semi-axis {max_y:.6e}");

    // offset start within the packet: still closed, no spreading
    let sigma = 1.0 / (params.b * params.mu).sqrt();
    let start_off = ([params.beta1 + 0.5 * sigma, 0.5 * sigma, 0.0], [0.0, params.beta2, 0.0]);
    let traj_off = lorentz_push(start_off, &fields, dt, steps).unwrap();
    let end_off = traj_off.last();
    let return_gap = (end_off.position[0] - start_off.0[0])
        .hypot(end_off.position[1] - start_off.0[1]);
    assert!(
        return_gap < 0.02 * params.beta1.max(params.beta2),
        "offset orbit return gap {return_gap:.3e}"
    );

    // (b) cyclotron radius against the analytic value
    let b = 2.0;
    let v = 0.1;
    let gamma = 1.0 / (1.0f64 - v * v).sqrt();
    let period = 2.0 * std::f64::consts::PI * gamma / b;
    let steps = 20_000;
    let dt = 10.0 * period / steps as f64;
    let traj = lorentz_push(
        ([0.0; 3], [v, 0.0, 0.0]),
        &UniformField { e: [0.0; 3], b: [0.0, 0.0, -b] },
        dt,
        steps,
    )
    .unwrap();
    let n = traj.samples.len() - 1;
    let (mut cx, mut cy) = (0.0, 0.0);
    for s in &traj.samples[..n] {
        cx += s.position[0] / n as f64;
        cy += s.position[1] / n as f64;
    }
    let r_expect = gamma * v / b;
    let mut worst = 0.0f64;
    for s in traj.samples.iter().step_by(53) {
        let r = (s.position[0] - cx).hypot(s.position[1] - cy);
        worst = worst.max((r - r_expect).abs() / r_expect);
    }
    assert!(worst < 1e-3, "cyclotron radius deviation {worst:.3e}");
    println!("ACCEPTANCE 7: PASS  ellipse closure {closure:.3e}, cyclotron radius dev {worst:.3e}");
}

/// Criterion 8 (energy gate): the radiated-to-kinetic ratio at ellipse-fig1
/// parameters is below 1e-9, and the per-period radiated energy scales as
/// omega^3 in the nonrelativistic regime. (The config-time superluminality
/// gate is exercised in the units module and in the CLI acceptance tests.)
#[test]
fn acceptance_08_energy_gates() {
    let si = SiPlanar::fig1();
    let scaled = nondimensionalize_planar(&si).unwrap();
    let params = EllipseParams {
        beta1: scaled.beta1,
        beta2: scaled.beta2,
        b: scaled.b,
        mu: scaled.mu,
    };
    let run = |params: EllipseParams, scale| {
        let fields = EllipseLimitFields(LimitKind::Classical, params);
        let start = ([params.beta1, 0.0, 0.0], [0.0, params.beta2, 0.0]);
        let steps = 16_000;
        let dt = 2.0 * std::f64::consts::PI / steps as f64;
        let traj = lorentz_push(start, &fields, dt, steps).unwrap();
        larmor_estimate(&traj, &scale).unwrap()
    };
    let report = run(params, scaled.scale);
    assert!(
        report.ratio < 1e-9,
        "radiated/kinetic = {:.3e}",
        report.ratio
    );

    // doubling omega at fixed semi-axes: E_rad per period scales ~ 2^3
    let si2 = SiPlanar { omega_per_s: 2.0 * si.omega_per_s, ..si };
    let scaled2 = nondimensionalize_planar(&si2).unwrap();
    let params2 = EllipseParams {
        beta1: scaled2.beta1,
        beta2: scaled2.beta2,
        b: scaled2.b,
        mu: scaled2.mu,
    };
    let report2 = run(params2, scaled2.scale);
    let ratio = report2.radiated_joules / report.radiated_joules;
    assert!(
        (ratio - 8.0).abs() < 0.8,
        "omega-doubling radiated-energy ratio {ratio:.3}"
    );
    println!(
        "ACCEPTANCE 8: PASS  radiated/kinetic {:.3e} < 1e-9, omega-doubling ratio {ratio:.3}",
        report.ratio
    );
}

/// Criterion 9: algebra-kernel property tests over >= 1000 randomized cases
/// with a fixed seed.
#[test]
fn acceptance_09_kernel_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);

    // Clifford relations are entry-exact (finitely many, checked all)
    let metric = [1.0, -1.0, -1.0, -1.0];
    for m in 0..4 {
        for n in 0..4 {
            let anti = gamma_lower::<f64>(m) * gamma_lower::<f64>(n)
                + gamma_lower::<f64>(n) * gamma_lower::<f64>(m);
            let expect = if m == n {
                Mat4::identity().scale_re(2.0 * metric[m])
            } else {
                Mat4::zero()
            };
            assert!((anti - expect).max_abs() == 0.0);
        }
    }

    let mut worst_roundtrip = 0.0f64;
    let mut worst_group = 0.0f64;
    let mut worst_boost_add = 0.0f64;
    let mut worst_nilpotent = 0.0f64;
    for _ in 0..1000 {
        // Hestenes round trip on random columns
        let psi = [(); 4].map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let m = hestenes_embed(&psi);
        let back = hestenes_extract(&m);
        for k in 0..4 {
            worst_roundtrip = worst_roundtrip.max((back[k] - psi[k]).norm());
        }
        // embed(extract) is the identity on the image
        worst_roundtrip = worst_roundtrip.max(rdi::hestenes_column_matches(&m));

        // rotor and boost group laws: tilde(L) L = 1
        let theta = [(); 3].map(|_| rng.gen_range(-3.0..3.0));
        let r = rotor(&theta);
        worst_group = worst_group.max((tilde(&r) * r - Mat4::identity()).max_abs());
        let rinv = rotor(&[-theta[0], -theta[1], -theta[2]]);
        worst_group = worst_group.max((r * rinv - Mat4::identity()).max_abs());
        let v = [(); 3].map(|_| rng.gen_range(-2.0..2.0));
        let bst = boost(&v);
        worst_group = worst_group.max((tilde(&bst) * bst - Mat4::identity()).max_abs());
        worst_group = worst_group.max((bst - bst.adjoint()).max_abs()); // hermitian
        worst_group = worst_group.max((det4(&bst) - Complex64::new(1.0, 0.0)).norm());

        // composition of collinear boosts = boost of added rapidities
        let (u1, u2) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        // proper velocities add via rapidity: w = u1 v0(u2) + u2 v0(u1)
        let v0 = |u: f64| (1.0 + u * u).sqrt();
        let w = u1 * v0(u2) + u2 * v0(u1);
        let lhs = boost(&[0.0, u1, 0.0]) * boost(&[0.0, u2, 0.0]);
        let rhs = boost(&[0.0, w, 0.0]);
        worst_boost_add = worst_boost_add.max((lhs - rhs).max_abs());

        // null-bivector nilpotency and exponential inverse
        let (f1p, f2p, s) = (
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-2.0..2.0),
        );
        let biv = null_bivector(f1p, f2p);
        worst_nilpotent = worst_nilpotent.max((biv * biv).max_abs());
        let prod = null_bivector_exp(f1p, f2p, s) * null_bivector_exp(f1p, f2p, -s);
        worst_nilpotent = worst_nilpotent.max((prod - Mat4::identity()).max_abs());
    }
    assert!(worst_roundtrip < 1e-14, "round trip {worst_roundtrip:.3e}");
    assert!(worst_group < 1e-13, "group law {worst_group:.3e}");
    assert!(worst_boost_add < 1e-13, "boost addition {worst_boost_add:.3e}");
    assert!(worst_nilpotent < 1e-13, "nilpotency {worst_nilpotent:.3e}");

    // alpha_k anticommute pairwise and square to one (exact)
    for i in 1..=3 {
        for j in 1..=3 {
            let s = alpha::<f64>(i) * alpha::<f64>(j) + alpha::<f64>(j) * alpha::<f64>(i);
            let expect = if i == j {
                Mat4::identity().scale_re(2.0)
            } else {
                Mat4::zero()
            };
            assert!((s - expect).max_abs() == 0.0);
        }
    }
    println!(
        "ACCEPTANCE 9: PASS  1000 cases; roundtrip {worst_roundtrip:.3e}, group {worst_group:.3e}, \
         boosts {worst_boost_add:.3e}, nilpotency {worst_nilpotent:.3e}"
    );
}

/// Independent numerical determinant (Gaussian elimination with partial
/// pivoting) used as the oracle for `det(boost) = 1`.
fn det4(m: &Mat4<f64>) -> Complex64 {
    let mut a = m.0;
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| {
                a[i][col]
                    .norm_sqr()
                    .partial_cmp(&a[j][col].norm_sqr())
                    .unwrap()
            })
            .unwrap();
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    det
}

/// Residual-law sensitivity: perturbing any potential component by 1e-3
/// must raise the Dirac residual by at least three orders of magnitude,
/// proving the acceptance tests are not vacuous.
#[test]
fn residual_sensitivity_to_potential_perturbations() {
    struct Perturbed<'a, P>(&'a P, usize, f64);
    impl<P: rdi_core::rdi::PotentialField> rdi_core::rdi::PotentialField for Perturbed<'_, P> {
        fn eval<R: rdi_core::Real>(&self, x: &Point4<R>) -> rdi_core::Result<[R; 4]> {
            let mut a = self.0.eval(x)?;
            a[self.1] = a[self.1] + R::from_f64(self.2);
            Ok(a)
        }
        fn mass(&self) -> f64 {
            self.0.mass()
        }
    }

    let params = EllipseParams { beta1: 0.3, beta2: 0.5, b: 2.5, mu: 3.5 };
    let spec = ellipse(params).unwrap();
    let col = PlanarColumn(&spec);
    let pot = PlanarPotential(&spec);
    let x = Point4::new(0.9, 0.25, -0.4, 0.0);
    let clean = dirac_residual(&col, &pot, &x).unwrap();
    for mu_idx in 0..4 {
        let perturbed = dirac_residual(&col, &Perturbed(&pot, mu_idx, 1e-3), &x).unwrap();
        assert!(
            perturbed > 1e3 * clean.max(1e-15),
            "component {mu_idx}: clean {clean:.3e}, perturbed {perturbed:.3e}"
        );
    }

    let vspec = redmond_generic_spec();
    let vcol = VolkovColumn(&vspec);
    let vpot = VolkovPotential(&vspec);
    let xv = Point4::new(0.4, 0.25, -1.0 / 3.0, 1.0 / 7.0);
    let clean_v = dirac_residual(&vcol, &vpot, &xv).unwrap();
    let perturbed_v = dirac_residual(&vcol, &Perturbed(&vpot, 1, 1e-3), &xv).unwrap();
    assert!(perturbed_v > 1e3 * clean_v.max(1e-15));
}
