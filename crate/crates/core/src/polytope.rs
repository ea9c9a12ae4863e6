//! Bounded polyhedra `{x : A x ≤ b}` and the geometry the policies need:
//! membership, axis reaches, interior anchors, exploration bases, vertex
//! enumeration and the sub-optimality gap.

use crate::linalg::{dist_inf, dot, Lu};
use crate::lp::{self, LpError, LpProblem, LpStatus};
use itertools::Itertools;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Absolute tolerance for membership and constraint activity.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Two vertices closer than this (L∞) are the same vertex.
pub const VERTEX_DEDUP_TOL: f64 = 1e-7;
/// Largest dimension accepted by [`Polyhedron::enumerate_vertices`].
pub const MAX_ENUM_DIM: usize = 12;
/// Largest number of row subsets [`Polyhedron::enumerate_vertices`] will try.
pub const MAX_ENUM_SUBSETS: u128 = 1_000_000;

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("constraint row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("polyhedron has zero dimension")]
    ZeroDimension,
    #[error("polyhedron is empty")]
    Infeasible,
    #[error("polyhedron is unbounded along axis {axis}")]
    Unbounded { axis: usize },
    #[error("point lies outside the polyhedron")]
    OutsidePolyhedron,
    #[error("reach along axis {axis} is {reach:e}: anchor sits on the facing boundary")]
    DegenerateReach { axis: usize, reach: f64 },
    #[error("axis index {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("no interior point with positive reach along every axis (alpha = {alpha:e})")]
    DegenerateAnchor { alpha: f64 },
    #[error("vertex enumeration refused: dimension {dim}, {subsets} row subsets")]
    EnumerationTooLarge { dim: usize, subsets: u128 },
    #[error("need at least two distinct vertices, found {0}")]
    TooFewVertices(usize),
    #[error("tied optimum: best and second-best vertex differ by {delta:e}")]
    TiedOptimum { delta: f64 },
    #[error("cannot generate a polyhedron: {0}")]
    Generator(String),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("reading polyhedron file: {0}")]
    Io(#[from] std::io::Error),
    #[error("parsing polyhedron file: {0}")]
    Json(#[from] serde_json::Error),
}

/// The arm set `{x ∈ Rᴺ : A x ≤ b}`.
///
/// [`Polyhedron::new`] and [`Polyhedron::load`] only accept bounded,
/// nonempty polyhedra. [`Polyhedron::from_rows`] checks shapes only, which
/// is what the boundedness check itself and the LP layer need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyhedron {
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl Polyhedron {
    pub fn from_rows(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self, PolytopeError> {
        if a.len() != b.len() {
            return Err(PolytopeError::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        let n = a.first().map_or(0, Vec::len);
        if n == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        if let Some((row, r)) = a.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(PolytopeError::RaggedRow { row, expected: n, got: r.len() });
        }
        Ok(Self { a, b })
    }

    /// Builds a polyhedron and verifies it is nonempty and bounded.
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self, PolytopeError> {
        let p = Self::from_rows(a, b)?;
        p.ensure_bounded()?;
        Ok(p)
    }

    pub fn from_json_str(s: &str) -> Result<Self, PolytopeError> {
        let raw: Polyhedron = serde_json::from_str(s)?;
        Self::new(raw.a, raw.b)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PolytopeError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polyhedron serializes")
    }

    /// The unit hypercube `[0,1]ᴺ`.
    pub fn hypercube(n: usize) -> Self {
        let mut a = Vec::with_capacity(2 * n);
        let mut b = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut up = vec![0.0; n];
            up[i] = 1.0;
            let mut down = vec![0.0; n];
            down[i] = -1.0;
            a.push(up);
            b.push(1.0);
            a.push(down);
            b.push(0.0);
        }
        Self { a, b }
    }

    /// The standard simplex `{x ≥ 0, Σx ≤ 1}`.
    pub fn simplex(n: usize) -> Self {
        let mut a = Vec::with_capacity(n + 1);
        let mut b = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut row = vec![0.0; n];
            row[i] = -1.0;
            a.push(row);
            b.push(0.0);
        }
        a.push(vec![1.0; n]);
        b.push(1.0);
        Self { a, b }
    }

    /// A random bounded polytope with `m` facets whose interior contains the
    /// origin: unit normals drawn uniformly on the sphere, offsets uniform on
    /// `[0.5, 1.5]`. Draws are repeated until the result is bounded.
    pub fn random(n: usize, m: usize, seed: u64) -> Result<Self, PolytopeError> {
        if n == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        if m <= n {
            return Err(PolytopeError::Generator(format!("need more than {n} facets to bound {n}-space, got {m}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10_000 {
            let a: Vec<Vec<f64>> = (0..m)
                .map(|_| {
                    let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
                    let norm = dot(&v, &v).sqrt();
                    v.into_iter().map(|x| x / norm).collect()
                })
                .collect();
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(0.5..1.5)).collect();
            let p = Self { a, b };
            if p.check_bounded()? {
                return Ok(p);
            }
        }
        Err(PolytopeError::Generator(format!("no bounded draw with n={n}, m={m}")))
    }

    pub fn dim(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    pub fn num_constraints(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    fn check_dim(&self, x: &[f64]) -> Result<(), PolytopeError> {
        if x.len() != self.dim() {
            return Err(PolytopeError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    /// `A x ≤ b + tol` componentwise.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool, PolytopeError> {
        self.check_dim(x)?;
        Ok(self.a.iter().zip(&self.b).all(|(row, &bi)| dot(row, x) <= bi + tol))
    }

    /// Indices of rows with `|A_i x − b_i| ≤ tol`.
    pub fn active_rows(&self, x: &[f64], tol: f64) -> Vec<usize> {
        self.a
            .iter()
            .zip(&self.b)
            .enumerate()
            .filter(|(_, (row, &bi))| (dot(row, x) - bi).abs() <= tol)
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `max ±x_n` over the polyhedron is finite for every axis.
    /// An empty polyhedron is reported as [`PolytopeError::Infeasible`].
    pub fn check_bounded(&self) -> Result<bool, PolytopeError> {
        Ok(self.unbounded_axis()?.is_none())
    }

    fn unbounded_axis(&self) -> Result<Option<usize>, PolytopeError> {
        let n = self.dim();
        for axis in 0..n {
            for sign in [1.0, -1.0] {
                let mut c = vec![0.0; n];
                c[axis] = sign;
                let sol = lp::maximize(&LpProblem::new(c, self))?;
                match sol.status {
                    LpStatus::Infeasible => return Err(PolytopeError::Infeasible),
                    LpStatus::Unbounded => return Ok(Some(axis)),
                    LpStatus::Optimal => {}
                }
            }
        }
        Ok(None)
    }

    fn ensure_bounded(&self) -> Result<(), PolytopeError> {
        match self.unbounded_axis()? {
            Some(axis) => Err(PolytopeError::Unbounded { axis }),
            None => Ok(()),
        }
    }

    /// `max{z ≥ 0 : anchor + z·e_axis ∈ C}` by the ratio test over rows with
    /// a positive coefficient on `axis`.
    pub fn axis_reach(&self, anchor: &[f64], axis: usize, tol: f64) -> Result<f64, PolytopeError> {
        self.check_dim(anchor)?;
        if axis >= self.dim() {
            return Err(PolytopeError::AxisOutOfRange { axis, dim: self.dim() });
        }
        if !self.contains(anchor, tol)? {
            return Err(PolytopeError::OutsidePolyhedron);
        }
        let reach = self
            .a
            .iter()
            .zip(&self.b)
            .filter(|(row, _)| row[axis] > 0.0)
            .map(|(row, &bi)| ((bi - dot(row, anchor)) / row[axis]).max(0.0))
            .fold(f64::INFINITY, f64::min);
        if reach.is_infinite() {
            return Err(PolytopeError::Unbounded { axis });
        }
        if reach <= tol {
            return Err(PolytopeError::DegenerateReach { axis, reach });
        }
        Ok(reach)
    }

    /// Interior point whose smallest two-sided axis reach is largest.
    ///
    /// Solves, over `(x, y, α)`,
    /// `max α  s.t.  A x ≤ b,  α ≤ y_i,  A(x ± y_i e_i) ≤ b,  α ≥ 0`
    /// and returns `(x, y, α)`. Fails when `α ≤ tol`.
    pub fn interior_anchor(&self, tol: f64) -> Result<InteriorAnchor, PolytopeError> {
        let n = self.dim();
        let nv = 2 * n + 1;
        let alpha_col = 2 * n;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (row, &bi) in self.a.iter().zip(&self.b) {
            let mut r = vec![0.0; nv];
            r[..n].copy_from_slice(row);
            a.push(r);
            b.push(bi);
        }
        for i in 0..n {
            let mut r = vec![0.0; nv];
            r[alpha_col] = 1.0;
            r[n + i] = -1.0;
            a.push(r);
            b.push(0.0);
        }
        for i in 0..n {
            for sign in [1.0, -1.0] {
                for (row, &bi) in self.a.iter().zip(&self.b) {
                    let mut r = vec![0.0; nv];
                    r[..n].copy_from_slice(row);
                    r[n + i] = sign * row[i];
                    a.push(r);
                    b.push(bi);
                }
            }
        }
        let mut r = vec![0.0; nv];
        r[alpha_col] = -1.0;
        a.push(r);
        b.push(0.0);

        let lifted = Self { a, b };
        let mut c = vec![0.0; nv];
        c[alpha_col] = 1.0;
        let sol = lp::maximize(&LpProblem::new(c, &lifted))?;
        match sol.status {
            LpStatus::Infeasible => return Err(PolytopeError::Infeasible),
            LpStatus::Unbounded => return Err(PolytopeError::Unbounded { axis: 0 }),
            LpStatus::Optimal => {}
        }
        let alpha = sol.point[alpha_col];
        if alpha <= tol {
            return Err(PolytopeError::DegenerateAnchor { alpha });
        }
        Ok(InteriorAnchor { point: sol.point[..n].to_vec(), half_widths: sol.point[n..2 * n].to_vec(), alpha })
    }

    /// The N exploration arms `anchor + reach_n e_n`.
    ///
    /// With `use_origin` the anchor is the origin; otherwise it is the
    /// interior anchor and each arm is stretched along `+e_n` until it hits
    /// the boundary.
    pub fn exploration_basis(&self, use_origin: bool) -> Result<ExplorationBasis, PolytopeError> {
        let anchor =
            if use_origin { vec![0.0; self.dim()] } else { self.interior_anchor(DEFAULT_TOL)?.point };
        ExplorationBasis::at_anchor(self, anchor, !use_origin)
    }

    /// All vertices, by solving every N-subset of rows and keeping the
    /// feasible, pairwise-distinct solutions.
    pub fn enumerate_vertices(&self) -> Result<VertexSet, PolytopeError> {
        let n = self.dim();
        let m = self.num_constraints();
        let subsets = binomial(m as u128, n as u128);
        if n > MAX_ENUM_DIM || subsets > MAX_ENUM_SUBSETS {
            return Err(PolytopeError::EnumerationTooLarge { dim: n, subsets });
        }
        let mut vertices: Vec<Vec<f64>> = Vec::new();
        for rows in (0..m).combinations(n) {
            let sys: Vec<Vec<f64>> = rows.iter().map(|&i| self.a[i].clone()).collect();
            let Some(lu) = Lu::factor(&sys) else { continue };
            let rhs: Vec<f64> = rows.iter().map(|&i| self.b[i]).collect();
            let v = lu.solve_refined(&sys, &rhs);
            if !self.contains(&v, DEFAULT_TOL)? {
                continue;
            }
            if vertices.iter().all(|u| dist_inf(u, &v) > VERTEX_DEDUP_TOL) {
                vertices.push(v);
            }
        }
        Ok(VertexSet { vertices, values: None })
    }

    /// Sub-optimality gap between the best and second-best vertex under
    /// `theta`. A gap at or below `DEFAULT_TOL` is a tied optimum.
    pub fn gap(&self, theta: &[f64]) -> Result<Gap, PolytopeError> {
        self.check_dim(theta)?;
        self.enumerate_vertices()?.gap(theta)
    }

    /// `max_{x ∈ C} ‖x‖₁`, attained at a vertex.
    pub fn max_l1_norm(&self) -> Result<f64, PolytopeError> {
        let vs = self.enumerate_vertices()?;
        Ok(vs.vertices.iter().map(|v| v.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max))
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Result of the interior-anchor program.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorAnchor {
    pub point: Vec<f64>,
    /// Two-sided reach certified by the program along each axis.
    pub half_widths: Vec<f64>,
    pub alpha: f64,
}

/// Anchor plus one boundary arm per coordinate axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplorationBasis {
    pub anchor: Vec<f64>,
    pub reaches: Vec<f64>,
    pub arms: Vec<Vec<f64>>,
    /// Whether the anchor itself is played (difference estimation).
    pub anchored: bool,
}

impl ExplorationBasis {
    /// Builds the basis around an arbitrary anchor inside `poly`.
    pub fn at_anchor(poly: &Polyhedron, anchor: Vec<f64>, anchored: bool) -> Result<Self, PolytopeError> {
        let n = poly.dim();
        let reaches = (0..n).map(|axis| poly.axis_reach(&anchor, axis, DEFAULT_TOL)).collect::<Result<Vec<_>, _>>()?;
        let arms = reaches
            .iter()
            .enumerate()
            .map(|(axis, &z)| {
                let mut arm = anchor.clone();
                arm[axis] += z;
                arm
            })
            .collect();
        Ok(Self { anchor, reaches, arms, anchored })
    }

    pub fn dim(&self) -> usize {
        self.anchor.len()
    }
}

/// Gap between the best vertex and the runner-up.
#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub delta: f64,
    pub best: Vec<f64>,
    pub best_value: f64,
    pub second: Vec<f64>,
    pub second_value: f64,
}

/// Extremal points of a polyhedron, optionally scored under some `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet {
    pub vertices: Vec<Vec<f64>>,
    pub values: Option<Vec<f64>>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn scored(mut self, theta: &[f64]) -> Self {
        self.values = Some(self.vertices.iter().map(|v| dot(v, theta)).collect());
        self
    }

    /// Index of the vertex within `VERTEX_DEDUP_TOL` of `x`, if any.
    pub fn position(&self, x: &[f64]) -> Option<usize> {
        self.vertices.iter().position(|v| dist_inf(v, x) <= VERTEX_DEDUP_TOL)
    }

    /// Best value among vertices other than `skip`.
    pub fn best_value_excluding(&self, theta: &[f64], skip: Option<usize>) -> Option<(usize, f64)> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(i, v)| (i, dot(v, theta)))
            .fold(None, |best: Option<(usize, f64)>, cur| match best {
                Some(b) if b.1 >= cur.1 => Some(b),
                _ => Some(cur),
            })
    }

    pub fn gap(&self, theta: &[f64]) -> Result<Gap, PolytopeError> {
        if self.len() < 2 {
            return Err(PolytopeError::TooFewVertices(self.len()));
        }
        let (bi, best_value) = self.best_value_excluding(theta, None).expect("nonempty");
        let (si, second_value) = self.best_value_excluding(theta, Some(bi)).expect("two vertices");
        let delta = best_value - second_value;
        if delta <= DEFAULT_TOL {
            return Err(PolytopeError::TiedOptimum { delta });
        }
        Ok(Gap {
            delta,
            best: self.vertices[bi].clone(),
            best_value,
            second: self.vertices[si].clone(),
            second_value,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_pm1() -> Polyhedron {
        Polyhedron::new(
            vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
            vec![1.0, 1.0, 1.0, 1.0],
        )
        .unwrap()
    }

    fn triangle() -> Polyhedron {
        Polyhedron::new(vec![vec![-1.0, 0.0], vec![0.0, -1.0], vec![1.0, 1.0]], vec![0.0, 0.0, 2.0]).unwrap()
    }

    fn sorted(mut vs: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        for v in vs.iter_mut() {
            for x in v.iter_mut() {
                *x = (*x * 1e9).round() / 1e9 + 0.0;
            }
        }
        vs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vs
    }

    #[test]
    fn membership() {
        let sq = Polyhedron::hypercube(2);
        assert!(sq.contains(&[0.5, 0.5], 1e-12).unwrap());
        assert!(!sq.contains(&[1.1, 0.0], 1e-12).unwrap());
        assert!(sq.contains(&[1.0, 1.0], 1e-12).unwrap());
        assert!(matches!(sq.contains(&[1.0], 1e-12), Err(PolytopeError::DimensionMismatch { .. })));
    }

    #[test]
    fn boundedness() {
        assert!(Polyhedron::hypercube(2).check_bounded().unwrap());
        let half = Polyhedron::from_rows(vec![vec![-1.0, 0.0]], vec![0.0]).unwrap();
        assert!(!half.check_bounded().unwrap());
        assert!(matches!(Polyhedron::new(vec![vec![-1.0, 0.0]], vec![0.0]), Err(PolytopeError::Unbounded { .. })));
        let empty = Polyhedron::from_rows(vec![vec![1.0], vec![-1.0]], vec![-1.0, -1.0]).unwrap();
        assert!(matches!(empty.check_bounded(), Err(PolytopeError::Infeasible)));
        // x >= 0, x1 + x2 <= 2
        assert!(triangle().check_bounded().unwrap());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = r#"{"A": [[1,0],[0,1],[-1,-1]], "b": [1,1,0]}"#;
        let p = Polyhedron::from_json_str(s).unwrap();
        assert_eq!(p.num_constraints(), 3);
        assert_eq!(Polyhedron::from_json_str(&p.to_json()).unwrap(), p);
        assert!(Polyhedron::from_json_str(r#"{"A": [[1,0],[0]], "b": [1,1]}"#).is_err());
        assert!(Polyhedron::from_json_str(r#"{"A": [[1,0]], "b": [1,1]}"#).is_err());
        assert!(Polyhedron::from_json_str(r#"{"A": [[1,0],[0,1]], "b": [1,1]}"#).is_err());
    }

    #[test]
    fn axis_reach_examples() {
        let sq = Polyhedron::hypercube(2);
        assert_eq!(sq.axis_reach(&[0.0, 0.0], 0, DEFAULT_TOL).unwrap(), 1.0);
        // The ray leaves through x + y = 2 at x = 1.5, i.e. one unit from the anchor.
        assert_eq!(triangle().axis_reach(&[0.5, 0.5], 0, DEFAULT_TOL).unwrap(), 1.0);
        assert!(matches!(sq.axis_reach(&[1.0, 0.0], 0, DEFAULT_TOL), Err(PolytopeError::DegenerateReach { .. })));
        assert!(matches!(sq.axis_reach(&[2.0, 0.0], 0, DEFAULT_TOL), Err(PolytopeError::OutsidePolyhedron)));
        assert!(matches!(sq.axis_reach(&[0.0, 0.0], 2, DEFAULT_TOL), Err(PolytopeError::AxisOutOfRange { .. })));
    }

    #[test]
    fn interior_anchor_examples() {
        let a = square_pm1().interior_anchor(DEFAULT_TOL).unwrap();
        assert!((a.alpha - 1.0).abs() < 1e-9);
        assert!(a.point.iter().all(|x| x.abs() < 1e-9));

        let a = Polyhedron::simplex(2).interior_anchor(DEFAULT_TOL).unwrap();
        assert!((a.alpha - 1.0 / 3.0).abs() < 1e-9);
        assert!((a.point[0] - 1.0 / 3.0).abs() < 1e-9 && (a.point[1] - 1.0 / 3.0).abs() < 1e-9);

        let slice = Polyhedron::new(
            vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
            vec![0.0, 0.0, 1.0, 0.0],
        )
        .unwrap();
        assert!(matches!(slice.interior_anchor(DEFAULT_TOL), Err(PolytopeError::DegenerateAnchor { .. })));
    }

    #[test]
    fn exploration_basis_examples() {
        let cube = Polyhedron::hypercube(3);
        let b = cube.exploration_basis(true).unwrap();
        assert_eq!(b.reaches, vec![1.0, 1.0, 1.0]);
        assert_eq!(b.arms, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);

        let b = square_pm1().exploration_basis(true).unwrap();
        assert_eq!(b.reaches, vec![1.0, 1.0]);

        let tri = triangle();
        let b = tri.exploration_basis(false).unwrap();
        assert!(b.anchored);
        for arm in &b.arms {
            assert!(tri.contains(arm, DEFAULT_TOL).unwrap());
            assert!(!tri.active_rows(arm, DEFAULT_TOL).is_empty());
        }
    }

    #[test]
    fn vertex_enumeration_examples() {
        let v = Polyhedron::hypercube(2).enumerate_vertices().unwrap();
        assert_eq!(sorted(v.vertices), vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]);
        let v = triangle().enumerate_vertices().unwrap();
        assert_eq!(sorted(v.vertices), vec![vec![0.0, 0.0], vec![0.0, 2.0], vec![2.0, 0.0]]);
        assert_eq!(Polyhedron::hypercube(3).enumerate_vertices().unwrap().len(), 8);
        let big = Polyhedron::hypercube(13);
        assert!(matches!(big.enumerate_vertices(), Err(PolytopeError::EnumerationTooLarge { .. })));
    }

    #[test]
    fn redundant_constraints_do_not_duplicate_vertices() {
        let mut a = Polyhedron::hypercube(2).a().to_vec();
        let mut b = Polyhedron::hypercube(2).b().to_vec();
        a.push(vec![1.0, 1.0]);
        b.push(2.0);
        let p = Polyhedron::new(a, b).unwrap();
        assert_eq!(p.enumerate_vertices().unwrap().len(), 4);
    }

    #[test]
    fn gap_examples() {
        let sq = Polyhedron::hypercube(2);
        let g = sq.gap(&[0.3, 0.5]).unwrap();
        assert_eq!(g.best, vec![1.0, 1.0]);
        assert!((g.best_value - 0.8).abs() < 1e-12);
        assert!((g.second_value - 0.5).abs() < 1e-12);
        assert!((g.delta - 0.3).abs() < 1e-12);

        let g = sq.gap(&[0.5, 0.5]).unwrap();
        assert!((g.delta - 0.5).abs() < 1e-12);

        assert!(matches!(sq.gap(&[0.0, 1.0]), Err(PolytopeError::TiedOptimum { .. })));
    }

    #[test]
    fn random_polyhedra_are_bounded_and_contain_origin() {
        for seed in 0..20 {
            let p = Polyhedron::random(3, 6, seed).unwrap();
            assert!(p.check_bounded().unwrap());
            assert!(p.contains(&[0.0; 3], 0.0).unwrap());
        }
        assert!(Polyhedron::random(3, 3, 0).is_err());
    }

    #[test]
    fn max_l1_norm_of_cube() {
        assert_eq!(Polyhedron::hypercube(4).max_l1_norm().unwrap(), 4.0);
    }
}
