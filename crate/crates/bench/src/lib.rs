//! Shared fixtures for the criterion benches.

use polybandit::Polyhedron;

/// Bounded random polyhedra of dimension `n` with `m` facets, one per seed.
pub fn random_polytopes(n: usize, m: usize, count: u64) -> Vec<Polyhedron> {
    (0..count).map(|s| Polyhedron::random(n, m, s).expect("generator yields bounded polyhedra")).collect()
}

/// Deterministic objective with mixed signs.
pub fn objective(n: usize) -> Vec<f64> {
    (0..n).map(|i| ((i as f64 + 1.0) * 0.37).sin()).collect()
}
