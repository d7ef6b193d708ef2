use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qaoa_reach::grover::TwoLevelState;
use qaoa_reach::instances::{clauses_for_density, generate_instance};
use qaoa_reach::objective::embed;
use qaoa_reach::optimizer::minimize;
use qaoa_reach::simulator::{ansatz, AnsatzEvaluator};
use qaoa_reach::{DriverKind, OptimConfig, ParamVector};
use std::hint::black_box;

fn params(p: usize) -> ParamVector {
    ParamVector::new(
        (0..p).map(|i| 0.3 + 0.1 * i as f64).collect(),
        (0..p).map(|i| 0.7 - 0.05 * i as f64).collect(),
    )
    .unwrap()
}

fn bench_embed(c: &mut Criterion) {
    let mut group = c.benchmark_group("embed");
    for n in [6, 12, 18] {
        let inst = generate_instance(n, clauses_for_density(n, 4.0), 3, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| embed(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn bench_ansatz(c: &mut Criterion) {
    let mut group = c.benchmark_group("ansatz_p3");
    for n in [6, 12, 16] {
        let diag =
            embed(&generate_instance(n, clauses_for_density(n, 4.0), 3, 2).unwrap()).unwrap();
        let params = params(3);
        for kind in DriverKind::ALL {
            group.bench_with_input(BenchmarkId::new(kind.name(), n), &n, |b, _| {
                b.iter(|| ansatz(&diag, kind, black_box(&params)).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_energy(c: &mut Criterion) {
    let diag = embed(&generate_instance(6, 24, 3, 3).unwrap()).unwrap();
    let flat = params(3).to_flat();
    let mut eval = AnsatzEvaluator::new(&diag, DriverKind::TransverseField).unwrap();
    c.bench_function("energy_n6_p3", |b| {
        b.iter(|| eval.energy_flat(black_box(&flat)))
    });
}

fn bench_minimize(c: &mut Criterion) {
    let diag = embed(&generate_instance(6, 24, 3, 4).unwrap()).unwrap();
    let cfg = OptimConfig::default().with_restarts(4).with_seed(1);
    let mut group = c.benchmark_group("minimize_n6");
    group.sample_size(10);
    group.bench_function("p2_x", |b| {
        b.iter(|| minimize(&diag, DriverKind::TransverseField, 2, &cfg).unwrap())
    });
    group.finish();
}

fn bench_grover(c: &mut Criterion) {
    let params = params(20);
    c.bench_function("grover_evolve_n20_p20", |b| {
        b.iter(|| TwoLevelState::evolve(20, black_box(&params)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_embed,
    bench_ansatz,
    bench_energy,
    bench_minimize,
    bench_grover
);
criterion_main!(benches);
