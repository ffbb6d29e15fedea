use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tropicover::catalan::{catalan_fiber_count, CatalanMode};
use tropicover::cover::{AcParams, LegMode, Partition};
use tropicover::cycles::{verify_local_balancing, LocalProblem};
use tropicover::dictionary::{dt_to_admissible, genus_four_example};
use tropicover::enumerate::{enumerate_covers, Budget, Stratum};
use tropicover::graph::enumerate_stable_graphs;
use tropicover::hurwitz::hurwitz_number;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn canonical(c: &mut Criterion) {
    let ac = dt_to_admissible(&genus_four_example()).unwrap();
    c.bench_function("canonical form of the genus-4 cover", |b| b.iter(|| black_box(&ac.cover).canonical(LegMode::Labelled)));
    let labels: Vec<u32> = (1..=6).collect();
    c.bench_function("stable graphs of M_0,6", |b| b.iter(|| enumerate_stable_graphs(0, black_box(&labels), None).unwrap()));
}

fn hurwitz(c: &mut Criterion) {
    let profiles = [p(&[3, 2]), p(&[2, 2, 1]), p(&[4, 1]), p(&[2, 1, 1, 1])];
    c.bench_function("hurwitz number d=5", |b| b.iter(|| hurwitz_number(5, black_box(&profiles)).unwrap()));
}

fn enumeration(c: &mut Criterion) {
    let params = AcParams::new(3, 0, vec![p(&[2, 1]); 6]).unwrap();
    c.bench_function("enumerate all covers d=3 (2,1)^6", |b| b.iter(|| enumerate_covers(black_box(&params), Stratum::All, &Budget::default()).unwrap()));
}

fn balancing(c: &mut Criterion) {
    let prob = LocalProblem::new(3, vec![p(&[3]), p(&[2, 1]), p(&[2, 1]), p(&[1, 1, 1])]).unwrap();
    c.bench_function("local balancing d=3", |b| b.iter(|| verify_local_balancing(black_box(&prob), &Budget::default()).unwrap()));
}

fn catalan(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalan");
    group.sample_size(10);
    group.bench_function("(2,2) sweep", |b| b.iter(|| catalan_fiber_count(2, 2, CatalanMode::Sweep, &Budget::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, canonical, hurwitz, enumeration, balancing, catalan);
criterion_main!(benches);
