//! Dense two-phase simplex with Bland's anti-cycling rule.
//!
//! Solves `max c'x  s.t.  A x ≤ b,  E x = f` with `x` free. Free variables are
//! split as `x = u − v` and each inequality gets a slack. Once the simplex
//! terminates, the optimum is pushed along directions of the optimal face
//! until it sits on a vertex (rank-N active set); when the objective is
//! constant along a face the simplex can otherwise stop at a non-basic point
//! in `x` space.

use crate::linalg::{dot, rank_and_null_vector, Lu};
use crate::polytope::Polyhedron;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Pivot-eligibility tolerance for reduced costs and column entries.
pub const PIVOT_TOL: f64 = 1e-10;
/// Feasibility tolerance shared with the geometric predicates.
pub const FEAS_TOL: f64 = 1e-9;

const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("objective has {got} entries, constraints have {expected} columns")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("equality row has {got} entries, expected {expected}")]
    EqualityDimension { expected: usize, got: usize },
    #[error("linear program has no constraint rows")]
    NoConstraints,
    #[error("simplex exceeded {0} pivots")]
    IterationLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

/// `max objective'x` over `constraints`, optionally intersected with
/// equality rows `e'x = f`.
#[derive(Debug, Clone)]
pub struct LpProblem<'a> {
    pub objective: Vec<f64>,
    pub constraints: &'a Polyhedron,
    pub equalities: Vec<(Vec<f64>, f64)>,
}

impl<'a> LpProblem<'a> {
    pub fn new(objective: Vec<f64>, constraints: &'a Polyhedron) -> Self {
        Self { objective, constraints, equalities: Vec::new() }
    }

    pub fn with_equality(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.equalities.push((row, rhs));
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    /// Optimal vertex; empty unless `status` is `Optimal`.
    pub point: Vec<f64>,
    pub value: f64,
    pub status: LpStatus,
    /// Inequality rows tight at `point` (within `FEAS_TOL`).
    pub active_set: Vec<usize>,
}

impl LpSolution {
    fn unbounded() -> Self {
        Self { point: Vec::new(), value: f64::INFINITY, status: LpStatus::Unbounded, active_set: Vec::new() }
    }

    fn infeasible() -> Self {
        Self { point: Vec::new(), value: f64::NEG_INFINITY, status: LpStatus::Infeasible, active_set: Vec::new() }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Solves the problem, returning an optimal vertex when one exists.
///
/// Identical inputs give bit-identical outputs, and positively scaling the
/// objective does not change which vertex is returned: Bland's rule only
/// looks at the signs of the reduced costs.
pub fn maximize(problem: &LpProblem<'_>) -> Result<LpSolution, LpError> {
    let poly = problem.constraints;
    let n = poly.dim();
    if problem.objective.len() != n {
        return Err(LpError::DimensionMismatch { expected: n, got: problem.objective.len() });
    }
    for (row, _) in &problem.equalities {
        if row.len() != n {
            return Err(LpError::EqualityDimension { expected: n, got: row.len() });
        }
    }
    if poly.num_constraints() == 0 && problem.equalities.is_empty() {
        return Err(LpError::NoConstraints);
    }

    let mut tab = Tableau::build(poly, &problem.equalities);
    let feasible = tab.phase_one()?;
    if !feasible {
        return Ok(LpSolution::infeasible());
    }
    let mut cost = vec![0.0; tab.ncols];
    for j in 0..n {
        cost[j] = problem.objective[j];
        cost[n + j] = -problem.objective[j];
    }
    tab.set_objective(&cost);
    if !tab.optimize(tab.n_real)? {
        return Ok(LpSolution::unbounded());
    }
    let x = tab.extract_x(n);
    let (point, active_set) = purify_to_vertex(poly, &problem.equalities, x);
    let value = dot(&problem.objective, &point);
    Ok(LpSolution { point, value, status: LpStatus::Optimal, active_set })
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    /// Reduced costs `c_j − z_j`; the last entry holds `−objective`.
    obj: Vec<f64>,
    basis: Vec<usize>,
    ncols: usize,
    /// Columns before the artificials.
    n_real: usize,
    pivots: usize,
}

impl Tableau {
    fn build(poly: &Polyhedron, eqs: &[(Vec<f64>, f64)]) -> Self {
        let n = poly.dim();
        let m = poly.num_constraints();
        let n_real = 2 * n + m;
        let n_art = poly.b().iter().filter(|&&bi| bi < 0.0).count() + eqs.len();
        let ncols = n_real + n_art;
        let mut rows = Vec::with_capacity(m + eqs.len());
        let mut basis = Vec::with_capacity(m + eqs.len());
        let mut next_art = n_real;
        for (i, (a, &bi)) in poly.a().iter().zip(poly.b()).enumerate() {
            let mut row = vec![0.0; ncols + 1];
            let sign = if bi < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                row[j] = sign * a[j];
                row[n + j] = -sign * a[j];
            }
            row[2 * n + i] = sign;
            row[ncols] = sign * bi;
            if bi < 0.0 {
                row[next_art] = 1.0;
                basis.push(next_art);
                next_art += 1;
            } else {
                basis.push(2 * n + i);
            }
            rows.push(row);
        }
        for (e, f) in eqs {
            let mut row = vec![0.0; ncols + 1];
            let sign = if *f < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                row[j] = sign * e[j];
                row[n + j] = -sign * e[j];
            }
            row[ncols] = sign * f;
            row[next_art] = 1.0;
            basis.push(next_art);
            next_art += 1;
            rows.push(row);
        }
        Self { rows, obj: vec![0.0; ncols + 1], basis, ncols, n_real, pivots: 0 }
    }

    fn set_objective(&mut self, cost: &[f64]) {
        self.obj = vec![0.0; self.ncols + 1];
        self.obj[..cost.len()].copy_from_slice(cost);
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            let cb = self.obj[bv];
            if cb != 0.0 {
                for (o, r) in self.obj.iter_mut().zip(row) {
                    *o -= cb * r;
                }
            }
        }
    }

    /// Returns whether the constraints are feasible. Leaves a feasible basis
    /// free of artificial variables (redundant equality rows are dropped).
    fn phase_one(&mut self) -> Result<bool, LpError> {
        if self.ncols == self.n_real {
            return Ok(true);
        }
        let mut cost = vec![0.0; self.ncols];
        for c in cost.iter_mut().skip(self.n_real) {
            *c = -1.0;
        }
        self.set_objective(&cost);
        // Phase one is bounded above by zero, so "unbounded" cannot happen.
        self.optimize(self.ncols)?;
        let scale = 1.0 + self.rows.iter().map(|r| r[self.ncols].abs()).fold(0.0, f64::max);
        if -self.obj[self.ncols] < -FEAS_TOL * scale {
            return Ok(false);
        }
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.n_real {
                let col = (0..self.n_real).find(|&j| self.rows[r][j].abs() > PIVOT_TOL);
                match col {
                    Some(j) => self.pivot(r, j),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        Ok(true)
    }

    /// Runs Bland-rule pivots over columns `< allowed`. Returns `false` if
    /// the objective is unbounded.
    fn optimize(&mut self, allowed: usize) -> Result<bool, LpError> {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.obj[j] > PIVOT_TOL) else {
                return Ok(true);
            };
            let rhs = self.ncols;
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[enter];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = row[rhs].max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                        if ratio < br && !tie || tie && self.basis[i] < self.basis[bi] {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Ok(false);
            };
            self.pivot(r, enter);
            self.pivots += 1;
            if self.pivots > MAX_PIVOTS {
                return Err(LpError::IterationLimit(MAX_PIVOTS));
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= f * y;
                }
                row[c] = 0.0;
            }
        }
        let f = self.obj[c];
        if f != 0.0 {
            for (x, y) in self.obj.iter_mut().zip(&prow) {
                *x -= f * y;
            }
            self.obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    fn extract_x(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            let val = row[self.ncols];
            if bv < n {
                x[bv] += val;
            } else if bv < 2 * n {
                x[bv - n] -= val;
            }
        }
        x
    }
}

/// Moves an optimal point within its optimal face until the active rows
/// have rank N, then re-solves the point from N independent active rows.
///
/// Every direction in the null space of the active rows is feasible in both
/// orientations for a small step, so the objective is constant along it and
/// optimality is preserved. A bounded polyhedron always stops such a walk.
fn purify_to_vertex(poly: &Polyhedron, eqs: &[(Vec<f64>, f64)], mut x: Vec<f64>) -> (Vec<f64>, Vec<usize>) {
    let n = poly.dim();
    let rows: Vec<(&[f64], f64)> = poly
        .a()
        .iter()
        .map(Vec::as_slice)
        .zip(poly.b().iter().copied())
        .chain(eqs.iter().map(|(e, f)| (e.as_slice(), *f)))
        .collect();
    let m = poly.num_constraints();
    let is_tight = |x: &[f64], i: usize| {
        let (a, b) = rows[i];
        i >= m || (dot(a, x) - b).abs() <= FEAS_TOL
    };

    for _ in 0..=n {
        let tight: Vec<Vec<f64>> =
            (0..rows.len()).filter(|&i| is_tight(&x, i)).map(|i| rows[i].0.to_vec()).collect();
        let (_, null) = rank_and_null_vector(&tight, n, 1e-9);
        let Some(d) = null else { break };
        let step = |dir: f64| -> Option<f64> {
            (0..m)
                .filter(|&i| !is_tight(&x, i))
                .filter_map(|i| {
                    let (a, b) = rows[i];
                    let ad = dir * dot(a, &d);
                    (ad > PIVOT_TOL).then(|| (b - dot(a, &x)) / ad)
                })
                .min_by(f64::total_cmp)
        };
        let (dir, t) = match step(1.0) {
            Some(t) => (1.0, t),
            None => match step(-1.0) {
                Some(t) => (-1.0, t),
                None => break,
            },
        };
        for (xi, di) in x.iter_mut().zip(&d) {
            *xi += dir * t * di;
        }
    }

    // Pick N independent active rows (lowest indices first) and solve.
    let mut basis_rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for i in (0..rows.len()).filter(|&i| is_tight(&x, i)) {
        if basis_rows.len() == n {
            break;
        }
        basis_rows.push(rows[i].0.to_vec());
        let (rank, _) = rank_and_null_vector(&basis_rows, n, 1e-9);
        if rank < basis_rows.len() {
            basis_rows.pop();
        } else {
            rhs.push(rows[i].1);
        }
    }
    if basis_rows.len() == n {
        if let Some(lu) = Lu::factor(&basis_rows) {
            x = lu.solve_refined(&basis_rows, &rhs);
        }
    }
    let active = (0..m).filter(|&i| is_tight(&x, i)).collect();
    (x, active)
}
