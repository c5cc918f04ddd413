use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use loopkit::par::Exec;
use loopkit::search::{self, SearchSpec};
use loopkit::terms::{check_identity_with, Identity};
use loopkit::LoopTable;

fn bench_check(c: &mut Criterion) {
    // a four-variable identity that holds, so every assignment is visited
    let id = Identity::parse("((xy)z)w = x(y(zw))").unwrap();
    let mut g = c.benchmark_group("check_identity");
    for n in [8usize, 12, 16] {
        let l = LoopTable::cyclic(n);
        for (name, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
            g.bench_with_input(BenchmarkId::new(name, n), &l, |b, l| b.iter(|| check_identity_with(&id, l, exec)));
        }
    }
    g.finish();
}

fn bench_search(c: &mut Criterion) {
    let spec = SearchSpec::new(7).require("RIGHT_BOL").dedup();
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for (name, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
        g.bench_function(name, |b| b.iter(|| search::enumerate_with(&spec, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_check, bench_search);
criterion_main!(benches);
