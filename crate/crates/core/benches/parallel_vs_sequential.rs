use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use outforest::enumerate::{sample_digraphs, ClassFilter};
use outforest::exec::{batch_map, Execution};
use outforest::hardness::ThreeDMInstance;
use outforest::oracle::oracle_forest_with;
use outforest::{decide_weak, reduce_3dm, Digraph, ForestKind, OracleBudget};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn oracle_search(c: &mut Criterion) {
    // Both inputs have no forest of the requested kind, so the search exhausts.
    let inst = ThreeDMInstance::new(2, vec![[0, 0, 0], [0, 1, 0], [1, 0, 0], [1, 1, 0]]).unwrap();
    let (reduced, _) = reduce_3dm(&inst).unwrap();
    let sparse = sample_digraphs(10, ClassFilter::ConnectedEven, 9).find(|d| decide_weak(d).is_none()).unwrap();
    let inputs: [(&str, &Digraph, ForestKind); 2] =
        [("reduced-3dm-perfect", &reduced, ForestKind::Perfect), ("n10-weak-perfect", &sparse, ForestKind::WeakPerfect)];
    let budget = OracleBudget::default().with_max_vertices(12);

    let mut group = c.benchmark_group("oracle_forest");
    group.sample_size(10);
    for (name, d, kind) in inputs {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &(d, kind), |b, &(d, kind)| {
                b.iter(|| oracle_forest_with(black_box(d), kind, budget, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn decide_sweep(c: &mut Criterion) {
    let ds: Vec<Digraph> = sample_digraphs(12, ClassFilter::ConnectedEven, 17).take(200).collect();
    let mut group = c.benchmark_group("decide_weak_sweep");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(mode, |b| b.iter(|| batch_map(black_box(&ds), exec, |d| decide_weak(d).is_some())));
    }
    group.finish();
}

criterion_group!(benches, oracle_search, decide_sweep);
criterion_main!(benches);
