//! Dense Gaussian elimination with partial pivoting and multi-RHS solves.
//!
//! Every exact algorithm in this crate reduces to dense linear systems
//! (hitting times, harmonic extensions, charge balance, subset recursions).
//! Systems stay small enough at desk scale that a dense LU with partial
//! pivoting is the right tool; the factorization is kept so that extra
//! right-hand sides and one step of iterative refinement cost only O(n^2).

use thiserror::Error;

/// Pivot magnitudes below this signal a singular system. The systems built
/// in this crate (grounded Laplacians, killed-walk balances) are provably
/// nonsingular on connected graphs, so hitting this is an internal bug.
const PIVOT_TOLERANCE: f64 = 1e-12;

/// Solutions must satisfy `max|A x - b| <= RESIDUAL_TOLERANCE * (1 + max|b|)`
/// per right-hand side; one order tighter than the 1e-8 cross-method
/// comparisons performed on top of the solver.
const RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("coefficient table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("right-hand side row count {rows} does not match system size {n}")]
    RhsMismatch { rows: usize, n: usize },
    #[error("right-hand side rows have inconsistent widths")]
    RaggedRhs,
    #[error("singular to tolerance: pivot {pivot:e} in column {column}")]
    Singular { column: usize, pivot: f64 },
    #[error("residual {residual:e} exceeds tolerance after refinement")]
    PrecisionLoss { residual: f64 },
}

/// A dense square system `A X = B` with one or more right-hand sides.
#[derive(Debug, Clone)]
pub struct DenseSystem {
    coefficients: Vec<Vec<f64>>,
    right_hand_sides: Vec<Vec<f64>>,
    width: usize,
}

impl DenseSystem {
    /// `coefficients` is an `n x n` table, `right_hand_sides` an `n x k`
    /// table (row `i` holds the `i`-th entry of each of the `k` RHS columns).
    pub fn new(
        coefficients: Vec<Vec<f64>>,
        right_hand_sides: Vec<Vec<f64>>,
    ) -> Result<Self, SolveError> {
        let n = coefficients.len();
        for (row, r) in coefficients.iter().enumerate() {
            if r.len() != n {
                return Err(SolveError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        if right_hand_sides.len() != n {
            return Err(SolveError::RhsMismatch {
                rows: right_hand_sides.len(),
                n,
            });
        }
        let width = right_hand_sides.first().map_or(0, Vec::len);
        if right_hand_sides.iter().any(|r| r.len() != width) {
            return Err(SolveError::RaggedRhs);
        }
        Ok(Self {
            coefficients,
            right_hand_sides,
            width,
        })
    }

    /// Convenience constructor for a single right-hand side column.
    pub fn with_single_rhs(
        coefficients: Vec<Vec<f64>>,
        rhs: Vec<f64>,
    ) -> Result<Self, SolveError> {
        let columns = rhs.into_iter().map(|v| vec![v]).collect();
        Self::new(coefficients, columns)
    }

    /// Solve for all right-hand sides; returns an `n x k` table.
    pub fn solve(self) -> Result<Vec<Vec<f64>>, SolveError> {
        let n = self.coefficients.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lu = Lu::factor(self.coefficients.clone())?;
        let mut solution = vec![vec![0.0; self.width]; n];
        let mut b = vec![0.0; n];
        for col in 0..self.width {
            for (bi, row) in b.iter_mut().zip(&self.right_hand_sides) {
                *bi = row[col];
            }
            let x = self.solve_refined(&lu, &b)?;
            for (out, xi) in solution.iter_mut().zip(&x) {
                out[col] = *xi;
            }
        }
        Ok(solution)
    }

    fn solve_refined(&self, lu: &Lu, b: &[f64]) -> Result<Vec<f64>, SolveError> {
        let tol = RESIDUAL_TOLERANCE * (1.0 + max_abs(b));
        let mut x = lu.solve(b);
        for _ in 0..2 {
            let r = self.residual(&x, b);
            if max_abs(&r) <= tol {
                return Ok(x);
            }
            let dx = lu.solve(&r);
            for (xi, di) in x.iter_mut().zip(&dx) {
                *xi += di;
            }
        }
        let residual = max_abs(&self.residual(&x, b));
        if residual <= tol {
            Ok(x)
        } else {
            Err(SolveError::PrecisionLoss { residual })
        }
    }

    /// `b - A x`.
    fn residual(&self, x: &[f64], b: &[f64]) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(b)
            .map(|(row, bi)| bi - row.iter().zip(x).map(|(a, xi)| a * xi).sum::<f64>())
            .collect()
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

/// Row-pivoted LU factorization, `P A = L U` stored compactly.
struct Lu {
    rows: Vec<Vec<f64>>,
    pivots: Vec<usize>,
}

impl Lu {
    fn factor(mut rows: Vec<Vec<f64>>) -> Result<Self, SolveError> {
        let n = rows.len();
        let mut pivots = Vec::with_capacity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))
                .expect("non-empty pivot range");
            let pivot = rows[pivot_row][col];
            if pivot.abs() < PIVOT_TOLERANCE {
                return Err(SolveError::Singular { column: col, pivot });
            }
            rows.swap(col, pivot_row);
            pivots.push(pivot_row);
            let (upper, lower) = rows.split_at_mut(col + 1);
            let pivot_row_data = &upper[col];
            for row in lower.iter_mut() {
                let factor = row[col] / pivot;
                if factor != 0.0 {
                    row[col] = factor;
                    for (rj, pj) in row[col + 1..].iter_mut().zip(&pivot_row_data[col + 1..]) {
                        *rj -= factor * pj;
                    }
                } else {
                    row[col] = 0.0;
                }
            }
        }
        Ok(Self { rows, pivots })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut x = b.to_vec();
        for (col, &p) in self.pivots.iter().enumerate() {
            x.swap(col, p);
        }
        // Forward substitution with unit lower factor.
        for i in 1..n {
            let mut acc = x[i];
            for (j, xj) in x[..i].iter().enumerate() {
                acc -= self.rows[i][j] * xj;
            }
            x[i] = acc;
        }
        // Back substitution with the upper factor.
        for i in (0..n).rev() {
            let (head, tail) = x.split_at_mut(i + 1);
            let mut acc = head[i];
            for (rj, xj) in self.rows[i][i + 1..].iter().zip(tail.iter()) {
                acc -= rj * xj;
            }
            head[i] = acc / self.rows[i][i];
        }
        x
    }
}
