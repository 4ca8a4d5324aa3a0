use criterion::{black_box, criterion_group, criterion_main, Criterion};

use finegrad::grading::GradingSpec;
use finegrad::TorsionGroup;
use finegrad_bench::{count_symplectic, pauli_relations, weyl_closure};

fn symplectic(c: &mut Criterion) {
    let mut g = c.benchmark_group("symplectic");
    g.sample_size(10);
    g.bench_function("enumerate Sp6(2)", |b| b.iter(|| count_symplectic(black_box(3))));
    g.finish();
}

fn pauli(c: &mut Criterion) {
    c.bench_function("Pauli relations Z4^2", |b| b.iter(|| pauli_relations(black_box(&[4])).unwrap()));
    c.bench_function("Pauli relations (Z2 x Z3)^2", |b| b.iter(|| pauli_relations(black_box(&[2, 3])).unwrap()));
}

fn weyl(c: &mut Criterion) {
    let t = TorsionGroup::trivial();
    let z2 = TorsionGroup::elementary(1);
    let specs = [
        ("B(5,0)", GradingSpec::b(5, 0).unwrap()),
        ("D(triv,4,1)", GradingSpec::d(t.clone(), 4, 1, vec![t.identity(); 4]).unwrap()),
        ("C(r=1,q=0,s=2)", GradingSpec::c(z2.clone(), 0, 2, vec![]).unwrap()),
        ("AII(triv,3,0)", GradingSpec::aii(t.clone(), 3, 0, vec![t.identity(); 3]).unwrap()),
    ];
    let mut g = c.benchmark_group("Weyl closure");
    g.sample_size(10);
    for (name, spec) in &specs {
        g.bench_function(*name, |b| b.iter(|| weyl_closure(black_box(spec)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, symplectic, pauli, weyl);
criterion_main!(benches);
