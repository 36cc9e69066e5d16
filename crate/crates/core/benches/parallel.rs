//! Sequential against rayon-parallel evaluation on the two batch-heavy paths:
//! the rank-3 census and isomorphism search between large extensions.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hyperwitt::census::census_rank;
use hyperwitt::hyperfield::find_isomorphism_with;
use hyperwitt::quadratic::{group_extension_build, qh};
use hyperwitt::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census_rank_3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| census_rank(3, exec).unwrap()));
    }
    g.finish();
}

fn isomorphism(c: &mut Criterion) {
    // ext(Q(F3), 3) and ext(Q(Qp:3), 2) are isomorphic; ext(Q(Qp:5), 2) is not.
    let (a, _) = group_extension_build(&qh("F3").unwrap(), 3).unwrap();
    let (b, _) = group_extension_build(&qh("Qp:3").unwrap(), 2).unwrap();
    let (d, _) = group_extension_build(&qh("Qp:5").unwrap(), 2).unwrap();
    let mut g = c.benchmark_group("isomorphism_search");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("found", name), |bn| bn.iter(|| find_isomorphism_with(&a, &b, exec)));
        g.bench_function(BenchmarkId::new("refuted", name), |bn| bn.iter(|| find_isomorphism_with(&b, &d, exec)));
    }
    g.finish();
}

criterion_group!(benches, census, isomorphism);
criterion_main!(benches);
