use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use darboux_bench::{rabinovich_symmetric, three_wave};
use darboux_core::darboux::{search_constant_cofactor_exact, search_numeric, SearchConfig};
use darboux_core::field::{cross, gradient};
use darboux_core::monomial::Var;
use darboux_core::ode::integrate;
use darboux_core::poly::Polynomial;
use darboux_core::ratio::Ratio;
use darboux_core::rational::{rat, rat_i};
use darboux_core::structure::{check_metriplectic, ClaimKind, Generator, StructureSpec};

fn bench_eigen_search(c: &mut Criterion) {
    let field = rabinovich_symmetric();
    c.bench_function("eigen_search_rabinovich_d2", |b| {
        b.iter(|| search_constant_cofactor_exact(black_box(&field), 2).unwrap())
    });
}

fn bench_numeric_search(c: &mut Criterion) {
    let field = three_wave(rat_i(-1), rat_i(0));
    let cfg = SearchConfig {
        starts: 20,
        ..SearchConfig::default()
    };
    c.bench_function("numeric_search_three_wave_20_starts", |b| {
        b.iter(|| search_numeric(black_box(&field), &cfg).unwrap())
    });
}

fn bench_metriplectic_check(c: &mut Criterion) {
    let x = Polynomial::var(Var::X);
    let y = Polynomial::var(Var::Y);
    let z = Polynomial::var(Var::Z);
    let field = three_wave(rat_i(-1), rat_i(0));
    let mut spec = StructureSpec::new(ClaimKind::Metriplectic2);
    spec.h1 = Some(&y * &z);
    spec.h2 = Some(&(&(&x * &x) + &(&y * &y)) + &z);
    spec.s_is = Some(Generator::H1);
    spec.m = Some(Ratio::one());
    let x_over_z = Ratio::new(x.clone(), z.clone()).unwrap();
    let z_over_y = Ratio::new(z.clone(), y.clone()).unwrap();
    spec.g = Some([
        [Ratio::zero(), x_over_z.clone(), Ratio::zero()],
        [x_over_z, Ratio::zero(), Ratio::one()],
        [Ratio::zero(), Ratio::one(), z_over_y],
    ]);
    c.bench_function("metriplectic_check_three_wave", |b| {
        b.iter(|| check_metriplectic(black_box(&field), black_box(&spec)).unwrap())
    });
}

fn bench_polynomial_ops(c: &mut Criterion) {
    let x = Polynomial::var(Var::X);
    let y = Polynomial::var(Var::Y);
    let z = Polynomial::var(Var::Z);
    let p = (&(&(&x + &y) + &z) + &Polynomial::constant(rat(1, 3))).pow(4);
    let q = (&(&x - &y) * &(&y - &z)).pow(3);
    c.bench_function("poly_mul_dense_deg12", |b| {
        b.iter(|| black_box(&p) * black_box(&q))
    });
    let field = three_wave(rat_i(0), rat_i(1));
    c.bench_function("derivation_deg12", |b| {
        b.iter(|| field.derive(black_box(&q)))
    });
    c.bench_function("cross_of_gradients", |b| {
        b.iter(|| cross(&gradient(black_box(&p)), &gradient(black_box(&q))))
    });
}

fn bench_rk4(c: &mut Criterion) {
    let field = rabinovich_symmetric();
    c.bench_function("rk4_rabinovich_2000_steps", |b| {
        b.iter(|| integrate(black_box(&field), [0.3, -0.2, 0.5], 0.0, 2.0, 1e-3))
    });
}

criterion_group!(
    benches,
    bench_eigen_search,
    bench_numeric_search,
    bench_metriplectic_check,
    bench_polynomial_ops,
    bench_rk4
);
criterion_main!(benches);
