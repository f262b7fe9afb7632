use amvp_bench::{probe, samples};
use amvp_core::catalog;
use amvp_core::measure::{heat_ball_rule, unit_ball_rule, DEFAULT_TAU_MAX};
use amvp_core::oracles::{matching_rule, quadrature_vs_oracle, random_pair, FormulaId, OracleParameters};
use amvp_core::plaplace::probe_field;
use amvp_core::pmean::resolved::{resolved_ball_mean, resolved_heat_mean, Resolution};
use amvp_core::pmean::{p_mean, Exponent, WeightedSamples};
use amvp_core::solver::{solve, Domain, GridProblem};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn discrete_means(c: &mut Criterion) {
    let mut group = c.benchmark_group("p_mean");
    for size in [64usize, 1024] {
        let (v, w) = samples(size, 1);
        let s = WeightedSamples::new(v, w).unwrap();
        for p in [Exponent::One, Exponent::Finite(1.5), Exponent::Finite(3.0), Exponent::Infinity] {
            group.bench_with_input(BenchmarkId::new(p.to_string(), size), &s, |b, s| {
                b.iter(|| p_mean(black_box(s), p).unwrap())
            });
        }
    }
    group.finish();
}

fn rules(c: &mut Criterion) {
    c.bench_function("unit_ball_rule N=3 order 16", |b| b.iter(|| unit_ball_rule(3, black_box(16)).unwrap()));
    c.bench_function("heat_ball_rule N=2 order 24", |b| {
        b.iter(|| heat_ball_rule(2, black_box(24), DEFAULT_TAU_MAX).unwrap())
    });
}

fn resolved(c: &mut Criterion) {
    let q = probe(2, 7);
    let x = [0.0, 0.0];
    let f = probe_field(&q, &x, Some(0.0));
    let res = Resolution::level(1);
    let mut group = c.benchmark_group("resolved_mean");
    group.sample_size(20);
    for p in [Exponent::One, Exponent::Finite(3.0), Exponent::Infinity] {
        group.bench_function(BenchmarkId::new("ball", p.to_string()), |b| {
            b.iter(|| resolved_ball_mean(&|y: &[f64]| f.eval(y, 0.0), &x, 0.1, p, &res, None).unwrap())
        });
        group.bench_function(BenchmarkId::new("heat", p.to_string()), |b| {
            b.iter(|| resolved_heat_mean(&|y: &[f64], s| f.eval(y, s), &x, 0.0, 0.1, p, &res, None).unwrap())
        });
    }
    group.finish();
}

fn oracle_row(c: &mut Criterion) {
    let (a, xi) = random_pair(3, 2024, 0);
    let params = OracleParameters::moment(3, 3.0, a, xi);
    let rule = matching_rule(FormulaId::Int2, &params, 16).unwrap();
    c.bench_function("quadrature_vs_oracle int2 N=3", |b| {
        b.iter(|| quadrature_vs_oracle(&rule, FormulaId::Int2, &params).unwrap())
    });
}

fn grid(c: &mut Criterion) {
    let g = catalog::field("harmonic", 2).unwrap().field;
    let problem =
        GridProblem::new(Domain::Box { lower: [0.0, 0.0], upper: [1.0, 1.0] }, 1.0 / 16.0, Exponent::Finite(4.0), g);
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    group.bench_function("harmonic square h=1/16 p=4", |b| b.iter(|| solve(&problem).unwrap()));
    group.finish();
}

criterion_group!(benches, discrete_means, rules, resolved, oracle_row, grid);
criterion_main!(benches);
