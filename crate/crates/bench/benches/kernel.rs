//! Algebra-kernel benchmarks: products, factors, embedding, inversion.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use rdi_core::sta::{
    boost, hestenes_embed, null_bivector_exp, rotor, slash, spinor_inverse, tilde, Col4,
};

fn bench_kernel(c: &mut Criterion) {
    let a = slash(&[0.7, -0.3, 0.45, 0.11]);
    let b = boost(&[0.2, -0.4, 0.1]);
    c.bench_function("mat4_product", |bch| {
        bch.iter(|| black_box(black_box(a) * black_box(b)))
    });

    c.bench_function("boost_construction", |bch| {
        bch.iter(|| boost(black_box(&[0.2f64, -0.4, 0.1])))
    });

    c.bench_function("rotor_construction", |bch| {
        bch.iter(|| rotor(black_box(&[0.3f64, 1.2, -0.7])))
    });

    c.bench_function("null_bivector_exp", |bch| {
        bch.iter(|| null_bivector_exp(black_box(0.83f64), black_box(-1.7), black_box(0.4)))
    });

    let psi: Col4<f64> = [
        Complex64::new(0.3, -0.8),
        Complex64::new(-0.1, 0.45),
        Complex64::new(0.9, 0.2),
        Complex64::new(-0.55, -0.3),
    ];
    c.bench_function("hestenes_embed", |bch| {
        bch.iter(|| hestenes_embed(black_box(&psi)))
    });

    let m = hestenes_embed(&psi);
    c.bench_function("tilde", |bch| bch.iter(|| tilde(black_box(&m))));
    c.bench_function("spinor_inverse", |bch| {
        bch.iter(|| spinor_inverse(black_box(&m)).unwrap())
    });
}

criterion_group!(kernel, bench_kernel);
criterion_main!(kernel);
