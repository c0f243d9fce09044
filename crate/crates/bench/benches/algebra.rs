use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lsa_core::burgers::{rhs_general, FieldState, FloatAlgebra};
use lsa_core::catalog::{fingerprint, generate, identify, CatalogId};
use lsa_core::sampling::sample_case;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn left_symmetry(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_left_symmetric");
    for n in [2, 4, 6, 8] {
        let a = generate(&CatalogId::A32(n - 2), n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| black_box(a).is_left_symmetric()));
    }
    group.finish();
}

fn invariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("fingerprint");
    group.sample_size(20);
    for n in [2, 3, 4] {
        let a = generate(&CatalogId::A33(n - 2), n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| fingerprint(black_box(a))));
    }
    group.finish();
}

fn identification(c: &mut Criterion) {
    let mut group = c.benchmark_group("identify");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in [2u8, 3, 4, 7] {
        let s = sample_case(&mut rng, case, 4);
        group.bench_with_input(BenchmarkId::new("case", case), &s.spec, |b, spec| b.iter(|| identify(black_box(spec))));
    }
    group.finish();
}

fn burgers_rhs(c: &mut Criterion) {
    let mut group = c.benchmark_group("rhs_general");
    for n in [2, 4] {
        let a = FloatAlgebra::<f64>::from_exact(&generate(&CatalogId::A31, n).unwrap()).unwrap();
        for grid in [256, 4096] {
            let s = FieldState::from_fn(grid, 1.0, n, |x| (0..n).map(|i| (x * (i + 1) as f64).sin()).collect()).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("n{n}"), grid), &s, |b, s| b.iter(|| rhs_general(&a, black_box(s))));
        }
    }
    group.finish();
}

criterion_group!(benches, left_symmetry, invariants, identification, burgers_rhs);
criterion_main!(benches);
