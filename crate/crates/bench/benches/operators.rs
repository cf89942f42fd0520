//! Criterion benchmarks for the heavy paths: convex hulls, projection
//! bodies, Steiner points, Minkowski solves, and homogeneous decompositions.
//! Inputs are seeded, so runs are comparable across machines and commits.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minkval::geom::{random_polytope, unit_cube};
use minkval::{
    blaschke_sum, convex_hull, decompose, projection_body, solve_minkowski, steiner_point_exact,
    surface_area_measure, zonotope_to_polytope, DirectionGrid, ProjectionBodyOperator,
    SolverConfig, Vector,
};

fn bench_hull(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull");
    for &(n, m) in &[(3usize, 40usize), (3, 120), (4, 24)] {
        let points: Vec<Vector> = random_polytope(1_000 + m as u64, n, m)
            .unwrap()
            .vertices()
            .to_vec();
        let id = BenchmarkId::new(format!("dim{n}"), points.len());
        group.bench_with_input(id, &points, |b, pts| b.iter(|| convex_hull(pts).unwrap()));
    }
    group.finish();
}

fn bench_projection_body(c: &mut Criterion) {
    let mut group = c.benchmark_group("projection_body");
    for &(n, m) in &[(3usize, 30usize), (4, 16)] {
        let body = random_polytope(2_000 + m as u64, n, m).unwrap();
        let id = BenchmarkId::new(format!("dim{n}"), body.vertices().len());
        group.bench_with_input(id, &body, |b, p| b.iter(|| projection_body(p).unwrap()));
    }
    // Realizing the zonotope as a vertex/facet polytope dominates end-to-end
    // cost in dimension 3, so it gets its own measurement.
    let body = random_polytope(2_100, 3, 14).unwrap();
    let zonotope = projection_body(&body).unwrap();
    group.bench_function("realize_dim3", |b| {
        b.iter(|| zonotope_to_polytope(&zonotope).unwrap())
    });
    group.finish();
}

fn bench_steiner(c: &mut Criterion) {
    let mut group = c.benchmark_group("steiner_point");
    for &(n, m) in &[(3usize, 30usize), (4, 16)] {
        let body = random_polytope(3_000 + m as u64, n, m).unwrap();
        let id = BenchmarkId::new(format!("dim{n}"), body.vertices().len());
        group.bench_with_input(id, &body, |b, p| {
            b.iter(|| steiner_point_exact(p).unwrap())
        });
    }
    group.finish();
}

fn bench_minkowski_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("minkowski_solve");
    group.sample_size(20);
    for &m in &[8usize, 14] {
        let body = random_polytope(4_000 + m as u64, 3, m).unwrap();
        let measure = surface_area_measure(&body).unwrap();
        let atoms = measure.len();
        let cfg = SolverConfig::default();
        group.bench_with_input(BenchmarkId::new("atoms", atoms), &measure, |b, mu| {
            b.iter(|| solve_minkowski(mu, &cfg).unwrap())
        });
    }
    let cube = unit_cube(3);
    group.bench_function("blaschke_sum_cubes", |b| {
        b.iter(|| blaschke_sum(&cube, &cube).unwrap())
    });
    group.finish();
}

fn bench_decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    group.sample_size(20);
    let body = random_polytope(5_000, 3, 10).unwrap();
    let grid = DirectionGrid::s2(12, 24).unwrap();
    group.bench_function("pi_dim3_grid288", |b| {
        b.iter(|| decompose(&ProjectionBodyOperator, &body, &grid).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_hull,
    bench_projection_body,
    bench_steiner,
    bench_minkowski_solve,
    bench_decompose
);
criterion_main!(benches);
