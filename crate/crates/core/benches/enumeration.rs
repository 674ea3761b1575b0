use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tropcurve::enumerate::{count_curves, random_problem, CountOptions, Strategy};
use tropcurve::random::seeded;
use tropcurve::trees::TropicalDegree;

fn strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumeration");
    group.sample_size(10);
    let cases = [
        ("lines_in_space", TropicalDegree::projective(3, 1).unwrap(), 1),
        ("lines_in_plane", TropicalDegree::projective(2, 1).unwrap(), 0),
    ];
    for (name, degree, dim) in &cases {
        let problem = random_problem(&mut seeded(1), degree, *dim).unwrap();
        for (label, strategy) in [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)] {
            let opts = CountOptions { strategy, prefilter: true };
            group.bench_with_input(BenchmarkId::new(label, name), &problem, |b, p| {
                b.iter(|| count_curves(black_box(p), &opts).unwrap().degree)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, strategies);
criterion_main!(benches);
