use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polybandit::{maximize, LpProblem, Polyhedron};
use polybandit_bench::{objective, random_polytopes};

fn lp(c: &mut Criterion) {
    let mut g = c.benchmark_group("lp_maximize");
    for (n, m) in [(2, 6), (5, 12), (10, 30)] {
        let polys = random_polytopes(n, m, 8);
        let obj = objective(n);
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n}x{m}")), &polys, |b, polys| {
            b.iter(|| {
                for p in polys {
                    black_box(maximize(&LpProblem::new(obj.clone(), p)).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn geometry(c: &mut Criterion) {
    let cube = Polyhedron::hypercube(8);
    c.bench_function("enumerate_vertices/hypercube8", |b| b.iter(|| black_box(cube.enumerate_vertices().unwrap())));
    let poly = &random_polytopes(5, 12, 1)[0];
    c.bench_function("interior_anchor/random5x12", |b| b.iter(|| black_box(poly.interior_anchor(1e-9).unwrap())));
}

criterion_group!(benches, lp, geometry);
criterion_main!(benches);
