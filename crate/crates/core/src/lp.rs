//! Small dense linear programming: minimize cᵀx subject to Ax = b, x ≥ 0,
//! by a two-phase primal simplex method with Bland's anti-cycling rule.
//!
//! Determinism: entering variable = lowest index with negative reduced
//! cost; leaving variable = minimum ratio, ties by lowest basic index.
//! All tolerances are pinned constants, so identical inputs produce
//! identical pivot sequences and solutions. Built for the desk-scale
//! problems of the minimization demos (tens of rows and columns).

use crate::error::{Error, Result};
use crate::linalg::Mat;

/// Entries smaller than this are treated as zero when pivoting.
pub const PIVOT_TOL: f64 = 1e-9;
/// Reduced costs above −COST_TOL count as nonnegative (optimal).
pub const COST_TOL: f64 = 1e-9;
/// Phase-1 objective above this proves infeasibility.
pub const PHASE1_TOL: f64 = 1e-7;
/// Iteration cap across both phases.
pub const MAX_ITERS: usize = 200_000;

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective_value: f64,
    pub iterations: usize,
}

struct Tableau {
    /// m×(n+m) constraint matrix in current reduced form (originals then
    /// artificials), kept dense.
    a: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    n: usize,
    iterations: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let scale = self.a[row][col];
        for v in self.a[row].iter_mut() {
            *v /= scale;
        }
        self.rhs[row] /= scale;
        for i in 0..self.a.len() {
            if i == row {
                continue;
            }
            let factor = self.a[i][col];
            if factor.abs() <= f64::EPSILON {
                continue;
            }
            for j in 0..self.a[i].len() {
                let delta = factor * self.a[row][j];
                self.a[i][j] -= delta;
            }
            self.rhs[i] -= factor * self.rhs[row];
        }
        self.basis[row] = col;
    }

    /// Run simplex iterations for the given costs over the allowed columns.
    /// Returns Err(Unbounded) if a negative-cost column has no positive
    /// entry.
    fn optimize(&mut self, cost: &[f64], allowed: usize) -> Result<()> {
        loop {
            self.iterations += 1;
            if self.iterations > MAX_ITERS {
                return Err(Error::ResourceLimit(
                    "simplex iteration cap reached".into(),
                ));
            }
            // reduced costs recomputed fresh each round: d_j = c_j − c_B·B⁻¹A_j
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j];
                for (i, &bi) in self.basis.iter().enumerate() {
                    d -= cost[bi] * self.a[i][j];
                }
                if d < -COST_TOL {
                    entering = Some(j); // Bland: lowest index wins
                    break;
                }
            }
            let Some(col) = entering else { return Ok(()) };
            let mut leaving: Option<(usize, f64)> = None;
            for i in 0..self.a.len() {
                if self.a[i][col] > PIVOT_TOL {
                    let ratio = self.rhs[i] / self.a[i][col];
                    let better = match leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - PIVOT_TOL
                                || (ratio < lr + PIVOT_TOL && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Err(Error::Unbounded);
            };
            self.pivot(row, col);
        }
    }
}

/// Solve min cᵀx, Ax = b, x ≥ 0. Errors: [`Error::Infeasible`],
/// [`Error::Unbounded`], [`Error::ResourceLimit`].
pub fn solve_lp(c: &[f64], a: &Mat<f64>, b: &[f64]) -> Result<LpSolution> {
    let (m, n) = (a.rows, a.cols);
    if c.len() != n || b.len() != m {
        return Err(Error::DimMismatch(c.len(), n));
    }
    // copy with nonnegative right-hand sides
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row: Vec<f64> = (0..n).map(|j| flip * a[(i, j)]).collect();
        // artificial block: identity
        row.extend((0..m).map(|k| if k == i { 1.0 } else { 0.0 }));
        rows.push(row);
        rhs.push(flip * b[i]);
    }
    let mut t = Tableau {
        a: rows,
        rhs,
        basis: (n..n + m).collect(),
        n,
        iterations: 0,
    };

    // phase 1: minimize the artificial sum
    let phase1_cost: Vec<f64> = (0..n + m).map(|j| if j < n { 0.0 } else { 1.0 }).collect();
    t.optimize(&phase1_cost, n + m)?;
    let infeasibility: f64 = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bi, _)| bi >= n)
        .map(|(_, &v)| v)
        .sum();
    if infeasibility > PHASE1_TOL {
        return Err(Error::Infeasible);
    }
    // drive zero-valued artificials out of the basis; a row where no
    // original column can pivot is redundant and is dropped
    let mut i = 0;
    while i < t.a.len() {
        if t.basis[i] >= t.n {
            let col = (0..t.n).find(|&j| t.a[i][j].abs() > PIVOT_TOL);
            match col {
                Some(j) => t.pivot(i, j),
                None => {
                    t.a.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // phase 2: original objective, artificial columns barred from entering
    let mut phase2_cost: Vec<f64> = c.to_vec();
    phase2_cost.extend(std::iter::repeat_n(0.0, m));
    t.optimize(&phase2_cost, t.n)?;

    let mut x = vec![0.0; n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            x[bi] = t.rhs[i];
        }
    }
    let objective_value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution { x, objective_value, iterations: t.iterations })
}
