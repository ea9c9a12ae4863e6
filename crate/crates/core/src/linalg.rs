//! Small dense linear algebra on row-major `Vec<Vec<f64>>` matrices.
//!
//! Every system in this crate is at most a few dozen unknowns, so plain
//! Gaussian elimination with partial pivoting is all we need.

/// Relative pivot threshold below which a matrix is treated as singular.
pub(crate) const SINGULAR_EPS: f64 = 1e-12;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub(crate) fn dist_inf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

/// LU factorization with partial pivoting, `P·M = L·U`, stored packed.
#[derive(Debug, Clone)]
pub(crate) struct Lu {
    lu: Vec<Vec<f64>>,
    perm: Vec<usize>,
}

impl Lu {
    /// Factorizes a square matrix. Returns `None` when a pivot falls below
    /// `SINGULAR_EPS` times the largest entry of the input.
    pub(crate) fn factor(m: &[Vec<f64>]) -> Option<Self> {
        let n = m.len();
        let scale = m.iter().map(|r| norm_inf(r)).fold(0.0_f64, f64::max);
        if n == 0 || scale == 0.0 {
            return None;
        }
        let mut lu: Vec<Vec<f64>> = m.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i][k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= SINGULAR_EPS * scale {
                return None;
            }
            lu.swap(k, p);
            perm.swap(k, p);
            for i in (k + 1)..n {
                let f = lu[i][k] / lu[k][k];
                lu[i][k] = f;
                for j in (k + 1)..n {
                    lu[i][j] -= f * lu[k][j];
                }
            }
        }
        Some(Self { lu, perm })
    }

    pub(crate) fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.lu.len();
        let mut x: Vec<f64> = self.perm.iter().map(|&i| rhs[i]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu[i][j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= self.lu[i][j] * x[j];
            }
            x[i] /= self.lu[i][i];
        }
        x
    }

    /// Solves `m x = rhs` (with `m` the factorized matrix) and polishes the
    /// result by iterative refinement against a compensated residual, which
    /// recovers nearly full accuracy on moderately ill-conditioned systems.
    pub(crate) fn solve_refined(&self, m: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
        let mut x = self.solve(rhs);
        for _ in 0..2 {
            let r: Vec<f64> = m.iter().zip(rhs).map(|(row, &b)| residual(row, &x, b)).collect();
            let dx = self.solve(&r);
            for (xi, d) in x.iter_mut().zip(dx) {
                *xi += d;
            }
        }
        x
    }

    pub(crate) fn inverse(&self) -> Vec<Vec<f64>> {
        let n = self.lu.len();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            cols.push(self.solve(&e));
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }
}

/// `b − row·x` accumulated in double-double arithmetic.
fn residual(row: &[f64], x: &[f64], b: f64) -> f64 {
    let (mut hi, mut lo) = (b, 0.0);
    for (&a, &xi) in row.iter().zip(x) {
        let p = -a * xi;
        let p_err = (-a).mul_add(xi, -p);
        let s = hi + p;
        let bb = s - hi;
        let s_err = (hi - (s - bb)) + (p - bb);
        hi = s;
        lo += s_err + p_err;
    }
    hi + lo
}

/// 1-norm condition number `‖M‖₁·‖M⁻¹‖₁`, or `None` if `M` is singular.
pub(crate) fn condition_number(m: &[Vec<f64>]) -> Option<f64> {
    let lu = Lu::factor(m)?;
    let inv = lu.inverse();
    Some(norm_1(m) * norm_1(&inv))
}

fn norm_1(m: &[Vec<f64>]) -> f64 {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| m.iter().map(|r| r[j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Row-reduces `rows` and returns the rank together with one nonzero vector
/// of the null space (if the rank is below the column count). The null
/// vector is built from the lowest-index free column, so it is deterministic.
pub(crate) fn rank_and_null_vector(rows: &[Vec<f64>], ncols: usize, tol: f64) -> (usize, Option<Vec<f64>>) {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let (p, pmax) = (r..m.len())
            .map(|i| (i, m[i][c].abs()))
            .fold((r, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax <= tol {
            continue;
        }
        m.swap(r, p);
        let piv = m[r][c];
        for v in m[r].iter_mut() {
            *v /= piv;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0.0 {
                let f = m[i][c];
                for j in 0..ncols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if r == ncols {
        return (r, None);
    }
    let free = (0..ncols).find(|c| !pivot_cols.contains(c)).expect("rank < ncols");
    let mut d = vec![0.0; ncols];
    d[free] = 1.0;
    for (row, &pc) in pivot_cols.iter().enumerate() {
        d[pc] = -m[row][free];
    }
    (r, Some(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refinement_tightens_ill_conditioned_solves() {
        // Hilbert matrix of order 6, condition ~1.5e7; exact solution all ones.
        let n = 6;
        let m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| 1.0 / (i + j + 1) as f64).collect()).collect();
        let rhs: Vec<f64> = m.iter().map(|r| r.iter().sum()).collect();
        let lu = Lu::factor(&m).unwrap();
        let plain = dist_inf(&lu.solve(&rhs), &vec![1.0; n]);
        let refined = dist_inf(&lu.solve_refined(&m, &rhs), &vec![1.0; n]);
        assert!(refined <= plain && refined < 1e-8, "{plain:e} -> {refined:e}");
    }

    #[test]
    fn solves_small_system() {
        let m = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = Lu::factor(&m).unwrap().solve(&[3.0, 5.0]);
        assert!((x[0] - 0.8).abs() < 1e-12);
        assert!((x[1] - 1.4).abs() < 1e-12);
    }

    #[test]
    fn singular_is_rejected() {
        let m = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(Lu::factor(&m).is_none());
        assert!(condition_number(&m).is_none());
    }

    #[test]
    fn null_vector_is_orthogonal_to_rows() {
        let rows = vec![vec![1.0, 1.0, 0.0]];
        let (rank, d) = rank_and_null_vector(&rows, 3, 1e-12);
        assert_eq!(rank, 1);
        let d = d.unwrap();
        assert!(dot(&rows[0], &d).abs() < 1e-12);
        assert!(norm_inf(&d) > 0.0);
    }
}
