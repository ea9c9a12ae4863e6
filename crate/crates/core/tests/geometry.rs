mod common;

use common::*;
use polybandit::polytope::DEFAULT_TOL;
use polybandit::{maximize, LpProblem, LpStatus, Polyhedron};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn interior_point(rng: &mut impl Rng, verts: &[Vec<f64>]) -> Vec<f64> {
    let w: Vec<f64> = verts.iter().map(|_| rng.gen_range(0.0..1.0)).collect();
    let total: f64 = w.iter().sum();
    let n = verts[0].len();
    (0..n).map(|i| verts.iter().zip(&w).map(|(v, wi)| v[i] * wi / total).sum()).collect()
}

#[test]
fn axis_reach_agrees_with_bisection() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(n + 1..=9);
        let poly = random_polytope(&mut rng, n, m);
        let anchor = interior_point(&mut rng, &brute_vertices(&poly));
        let axis = rng.gen_range(0..n);
        let Ok(r) = poly.axis_reach(&anchor, axis, DEFAULT_TOL) else { continue };
        worst = worst.max((r - bisect_reach(&poly, &anchor, axis)).abs());
    }
    assert!(worst < 1e-9, "{worst:e}");
}

#[test]
fn vertex_enumeration_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let m = rng.gen_range(n + 1..=9);
        let poly = random_polytope(&mut rng, n, m);
        let mut ours = poly.enumerate_vertices().unwrap().vertices;
        let mut brute = brute_vertices(&poly);
        assert_eq!(ours.len(), brute.len());
        let key = |a: &Vec<f64>, b: &Vec<f64>| a.partial_cmp(b).unwrap();
        ours.sort_by(key);
        brute.sort_by(key);
        for (a, b) in ours.iter().zip(&brute) {
            assert!(a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-7));
        }
    }
}

/// Smallest two-sided axis reach at `x`, by bisection; 0 outside the set.
fn min_reach(poly: &Polyhedron, x: &[f64]) -> f64 {
    if !feasible(poly, x, 0.0) {
        return 0.0;
    }
    let mut m = f64::INFINITY;
    for axis in 0..2 {
        m = m.min(bisect_reach(poly, x, axis));
        let mirrored = Polyhedron::from_rows(
            poly.a().iter().map(|r| { let mut r = r.clone(); r[axis] = -r[axis]; r }).collect(),
            poly.b().to_vec(),
        )
        .unwrap();
        let mut xm = x.to_vec();
        xm[axis] = -xm[axis];
        m = m.min(bisect_reach(&mirrored, &xm, axis));
    }
    m
}

/// 2-D grid search for the largest smallest two-sided reach. The objective
/// is concave, so each pass zooms in on the best cell.
fn grid_anchor(poly: &Polyhedron, steps: usize, passes: usize) -> f64 {
    let verts = brute_vertices(poly);
    let mut lo: Vec<f64> = (0..2).map(|i| verts.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min)).collect();
    let mut hi: Vec<f64> = (0..2).map(|i| verts.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let mut best = 0.0f64;
    for _ in 0..passes {
        let h: Vec<f64> = (0..2).map(|k| (hi[k] - lo[k]) / steps as f64).collect();
        let mut at = vec![lo[0], lo[1]];
        for i in 0..=steps {
            for j in 0..=steps {
                let x = vec![lo[0] + h[0] * i as f64, lo[1] + h[1] * j as f64];
                let m = min_reach(poly, &x);
                if m > best {
                    best = m;
                    at = x;
                }
            }
        }
        for k in 0..2 {
            lo[k] = at[k] - 2.0 * h[k];
            hi[k] = at[k] + 2.0 * h[k];
        }
    }
    best
}

#[test]
fn interior_anchor_matches_grid_search() {
    let square = Polyhedron::new(
        vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
        vec![1.0, 1.0, 1.0, 1.0],
    )
    .unwrap();
    let a = square.interior_anchor(DEFAULT_TOL).unwrap();
    assert!((a.alpha - 1.0).abs() < 1e-9);
    assert!((grid_anchor(&square, 40, 1) - 1.0).abs() < 1e-6);

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let m = rng.gen_range(3..=7);
        let poly = random_polytope(&mut rng, 2, m);
        let lp_alpha = poly.interior_anchor(DEFAULT_TOL).unwrap().alpha;
        let grid = grid_anchor(&poly, 40, 6);
        // The grid can only under-estimate the optimum.
        assert!(grid <= lp_alpha + 1e-9, "{grid} > {lp_alpha}");
        assert!(lp_alpha - grid < 1e-4 * lp_alpha, "{grid} vs {lp_alpha}");
    }
}

#[test]
fn boundedness_by_directional_programs() {
    let tri = Polyhedron::from_rows(vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![1.0, 1.0]], vec![0.0, 0.0, 2.0]).unwrap();
    assert!(tri.check_bounded().unwrap());
    for dir in [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]] {
        let sol = maximize(&LpProblem::new(dir.to_vec(), &tri)).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
    }
    let half = Polyhedron::from_rows(vec![vec![-1.0]], vec![0.0]).unwrap();
    assert!(!half.check_bounded().unwrap());
}

#[test]
fn redundant_and_degenerate_rows() {
    // Unit cube with every facet listed twice plus a cut through a vertex.
    let mut a = Vec::new();
    let mut b = Vec::new();
    for _ in 0..2 {
        for i in 0..3 {
            let mut r = vec![0.0; 3];
            r[i] = 1.0;
            a.push(r.clone());
            b.push(1.0);
            r[i] = -1.0;
            a.push(r);
            b.push(0.0);
        }
    }
    a.push(vec![1.0, 1.0, 1.0]);
    b.push(3.0);
    let poly = Polyhedron::new(a, b).unwrap();
    assert_eq!(poly.enumerate_vertices().unwrap().len(), 8);
    let sol = maximize(&LpProblem::new(vec![0.2, -0.4, 0.9], &poly)).unwrap();
    assert_eq!(sol.point, vec![1.0, 0.0, 1.0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lp_optimum_is_a_feasible_best_vertex(seed in any::<u64>(), n in 2usize..=4, extra in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = random_polytope(&mut rng, n, n + extra);
        let theta: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let sol = maximize(&LpProblem::new(theta.clone(), &poly)).unwrap();
        prop_assert!(sol.is_optimal());
        prop_assert!(feasible(&poly, &sol.point, 1e-9));
        let (best, _, _) = brute_optimum(&brute_vertices(&poly), &theta);
        prop_assert!((sol.value - best).abs() < 1e-9);
        prop_assert!(brute_vertices(&poly).iter().any(|v| v.iter().zip(&sol.point).all(|(a, b)| (a - b).abs() < 1e-7)));
    }

    #[test]
    fn exploration_arms_are_maximal(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = random_polytope(&mut rng, n, n + 3);
        let basis = poly.exploration_basis(true).unwrap();
        for (i, arm) in basis.arms.iter().enumerate() {
            prop_assert!(feasible(&poly, arm, 1e-9));
            let mut beyond = arm.clone();
            beyond[i] += 1e-6;
            prop_assert!(!feasible(&poly, &beyond, 0.0));
        }
    }
}
