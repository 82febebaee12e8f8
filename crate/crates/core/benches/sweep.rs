use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rainbow_forge::badge::badge_paths;
use rainbow_forge::engine::rainbow_aap_or_badge;
use rainbow_forge::gen;
use rainbow_forge::graph::{ColorFamily, Matching};
use rainbow_forge::par;
use rainbow_forge::solver::{solve_main_with, SolveOptions};

fn matching_batch(n: usize, count: usize) -> Vec<ColorFamily> {
    let mut r = gen::rng(n as u64);
    (0..count)
        .map(|_| gen::random_matching_family(&mut r, 3 * n - 3, 2 * n as u32 + 2, n).unwrap())
        .collect()
}

fn badge_batch(weight: usize, count: usize) -> Vec<(Matching, ColorFamily)> {
    let mut r = gen::rng(weight as u64);
    (0..count)
        .map(|_| {
            let b = gen::random_badge(&mut r, weight, 3).unwrap();
            (b.skeleton(), badge_paths(&b))
        })
        .collect()
}

fn solve_batch(c: &mut Criterion) {
    let opts = SolveOptions { greedy: false, ..SolveOptions::default() };
    let solve = |fam: &ColorFamily, n: usize| solve_main_with(fam, n, opts).unwrap().0.len();
    let mut g = c.benchmark_group("solve_main");
    for n in [3usize, 4] {
        let batch = matching_batch(n, 64);
        g.bench_with_input(BenchmarkId::new("parallel", n), &batch, |b, batch| {
            b.iter(|| par::map(batch, |f| solve(f, n)))
        });
        g.bench_with_input(BenchmarkId::new("sequential", n), &batch, |b, batch| {
            b.iter(|| par::map_sequential(batch, |f| solve(f, n)))
        });
    }
    g.finish();
}

fn engine_batch(c: &mut Criterion) {
    let decide = |(f, fam): &(Matching, ColorFamily)| rainbow_aap_or_badge(f, fam).unwrap().is_witness();
    let mut g = c.benchmark_group("badge_engine");
    for w in [2usize, 4] {
        let batch = badge_batch(w, 64);
        g.bench_with_input(BenchmarkId::new("parallel", w), &batch, |b, batch| b.iter(|| par::map(batch, decide)));
        g.bench_with_input(BenchmarkId::new("sequential", w), &batch, |b, batch| {
            b.iter(|| par::map_sequential(batch, decide))
        });
    }
    g.finish();
}

criterion_group!(benches, solve_batch, engine_batch);
criterion_main!(benches);
