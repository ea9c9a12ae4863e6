//! Reference oracles written independently of the library's solvers.

#![allow(dead_code)]

use itertools::Itertools;
use polybandit::Polyhedron;
use rand::Rng;

/// Solves the square system `m x = rhs` by Gaussian elimination with
/// complete pivoting, then two correction steps whose residuals are summed with
/// `f64::mul_add` error terms; `None` when (numerically) singular.
pub fn solve_square(m: Vec<Vec<f64>>, rhs: Vec<f64>) -> Option<Vec<f64>> {
    let mut x = eliminate(m.clone(), rhs.clone())?;
    for _ in 0..2 {
        let r: Vec<f64> = m
            .iter()
            .zip(&rhs)
            .map(|(row, &b)| {
                let mut terms: Vec<f64> = vec![b];
                for (a, xi) in row.iter().zip(&x) {
                    let p = a * xi;
                    terms.push(-p);
                    terms.push(-a.mul_add(*xi, -p));
                }
                // Sort by magnitude so cancellation happens among the large terms first.
                terms.sort_by(|u, v| v.abs().total_cmp(&u.abs()));
                let mut acc = 0.0;
                let mut comp = 0.0;
                for t in terms {
                    let y = t - comp;
                    let s = acc + y;
                    comp = (s - acc) - y;
                    acc = s;
                }
                acc
            })
            .collect();
        let dx = eliminate(m.clone(), r)?;
        for (xi, d) in x.iter_mut().zip(dx) {
            *xi += d;
        }
    }
    Some(x)
}

fn eliminate(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (mut pr, mut pc, mut best) = (k, k, 0.0);
        for i in k..n {
            for j in k..n {
                if m[i][j].abs() > best {
                    best = m[i][j].abs();
                    pr = i;
                    pc = j;
                }
            }
        }
        if best < 1e-11 {
            return None;
        }
        m.swap(k, pr);
        rhs.swap(k, pr);
        for row in m.iter_mut() {
            row.swap(k, pc);
        }
        perm.swap(k, pc);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
            rhs[i] -= f * rhs[k];
        }
    }
    let mut y = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| m[k][j] * y[j]).sum();
        y[k] = (rhs[k] - s) / m[k][k];
    }
    let mut x = vec![0.0; n];
    for (k, &p) in perm.iter().enumerate() {
        x[p] = y[k];
    }
    Some(x)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn feasible(poly: &Polyhedron, x: &[f64], tol: f64) -> bool {
    poly.a().iter().zip(poly.b()).all(|(row, &b)| dot(row, x) <= b + tol)
}

/// Every basic feasible point: solve each N-subset of rows as equalities.
pub fn brute_vertices(poly: &Polyhedron) -> Vec<Vec<f64>> {
    let n = poly.dim();
    let mut out: Vec<Vec<f64>> = Vec::new();
    for rows in (0..poly.num_constraints()).combinations(n) {
        let m: Vec<Vec<f64>> = rows.iter().map(|&i| poly.a()[i].clone()).collect();
        let rhs: Vec<f64> = rows.iter().map(|&i| poly.b()[i]).collect();
        if let Some(x) = solve_square(m, rhs) {
            if feasible(poly, &x, 1e-9) && !out.iter().any(|v| v.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-7)) {
                out.push(x);
            }
        }
    }
    out
}

/// `(best value, best vertex, second-best value)` over the brute-force vertices.
pub fn brute_optimum(vertices: &[Vec<f64>], theta: &[f64]) -> (f64, Vec<f64>, f64) {
    let mut scored: Vec<(f64, &Vec<f64>)> = vertices.iter().map(|v| (dot(theta, v), v)).collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let second = scored.get(1).map_or(f64::NEG_INFINITY, |s| s.0);
    (scored[0].0, scored[0].1.clone(), second)
}

/// Largest `z ≥ 0` with `anchor + z e_axis` feasible, by bisection.
pub fn bisect_reach(poly: &Polyhedron, anchor: &[f64], axis: usize) -> f64 {
    let at = |z: f64| {
        let mut x = anchor.to_vec();
        x[axis] += z;
        feasible(poly, &x, 0.0)
    };
    let mut hi = 1.0;
    while at(hi) {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Random bounded polyhedron with unit-norm rows and the origin strictly
/// inside, generated without the library's generator.
pub fn random_polytope(rng: &mut impl Rng, n: usize, m: usize) -> Polyhedron {
    loop {
        let a: Vec<Vec<f64>> = (0..m)
            .map(|_| {
                let r: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let norm = dot(&r, &r).sqrt();
                r.iter().map(|x| x / norm).collect()
            })
            .collect();
        let b: Vec<f64> = (0..m).map(|_| rng.gen_range(0.3..1.5)).collect();
        if let Ok(p) = Polyhedron::new(a, b) {
            return p;
        }
    }
}

/// Closed-form SEE schedule on `n` origin arms: per-arm exploration plays
/// and total steps, following `2c+1` explore plays per arm and
/// `⌊2^{c²/(1+ε)}⌋` exploit plays, truncated at `horizon`.
pub struct ScheduleReplay {
    pub explore_per_arm: Vec<u64>,
    /// `(cycle, steps at the end of its exploitation block)` for every
    /// cycle completed inside the horizon.
    pub boundaries: Vec<(u64, u64)>,
}

pub fn replay_see_schedule(n: usize, epsilon: f64, start: u64, horizon: u64) -> ScheduleReplay {
    let mut t = 0u64;
    let mut per_arm = vec![0u64; n];
    let mut boundaries = Vec::new();
    let mut c = start;
    'outer: loop {
        for arm in per_arm.iter_mut() {
            let plays = (2 * c + 1).min(horizon - t);
            *arm += plays;
            t += plays;
            if t == horizon {
                break 'outer;
            }
        }
        let e = (c * c) as f64 / (1.0 + epsilon);
        let block = if e >= 62.0 { 1u64 << 62 } else { (e.exp2().floor() as u64).max(1) };
        let plays = block.min(horizon - t);
        t += plays;
        if plays == block {
            boundaries.push((c, t));
        }
        if t == horizon {
            break;
        }
        c += 1;
    }
    ScheduleReplay { explore_per_arm: per_arm, boundaries }
}

/// Gaussian-KL lower-bound slope for arms `{e_n} ∪ {0}`, written directly
/// from the two-armed example's arithmetic.
pub fn kl_slope(theta: &[f64], r: f64) -> f64 {
    let mut sorted = theta.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let star = sorted[0];
    let delta = star - sorted[1].max(0.0);
    let mut kls: Vec<f64> = sorted[1..].iter().map(|t| (star - t) * (star - t) / (2.0 * r * r)).collect();
    kls.push(star * star / (2.0 * r * r));
    let max_kl = kls.into_iter().fold(0.0, f64::max);
    (theta.len() as f64 - 1.0) * delta / max_kl
}
