//! Small dense linear algebra, generic over the float scalar.
//!
//! Everything here runs on matrices of desk scale (k, n ≤ a few dozen, grids
//! of a few thousand unknowns), so the implementations favor clarity and
//! determinism over blocking: Gram–Schmidt with a fixed sign convention,
//! partial-pivot LU, and a Jacobi eigensolver for symmetric matrices.

use crate::error::{Error, Result};
use crate::scalar::{r, Real};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Real> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.concat() }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other[(l, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: T) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| a * s).collect() }
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &a| m.max(a.abs()))
    }

    /// Frobenius symmetry defect ‖A − Aᵀ‖∞.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

pub fn axpy<T: Real>(y: &mut [T], alpha: T, x: &[T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + alpha * xi;
    }
}

/// Modified Gram–Schmidt preserving the input orientation: each output vector
/// keeps a positive component along its input (positive R diagonal), so the
/// span AND the orientation of the frame survive.
pub fn gram_schmidt<T: Real>(vectors: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let mut out: Vec<Vec<T>> = Vec::with_capacity(vectors.len());
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for q in &out {
            let c = dot(&w, q);
            axpy(&mut w, -c, q);
        }
        // second pass for numerical orthogonality
        for q in &out {
            let c = dot(&w, q);
            axpy(&mut w, -c, q);
        }
        let len = norm(&w);
        let scale_floor = r::<T>(1e-12) * norm(v).max(T::one());
        if len <= scale_floor {
            return Err(Error::RankDeficient(idx));
        }
        for wi in &mut w {
            *wi = *wi / len;
        }
        out.push(w);
    }
    Ok(out)
}

/// Extend `frame` (orthonormal, k vectors in ℝⁿ) to an orthonormal basis of
/// ℝⁿ deterministically: each round orthogonalizes every coordinate axis
/// against the current basis and keeps the axis with the largest residual.
/// With m vectors collected the residual projector has trace n − m, so the
/// best axis always has residual norm² ≥ (n − m)/n and the sweep completes
/// for any orthonormal input.
pub fn complete_basis<T: Real>(frame: &[Vec<T>], n: usize) -> Vec<Vec<T>> {
    let mut basis: Vec<Vec<T>> = frame.to_vec();
    while basis.len() < n {
        let mut best: Option<(T, Vec<T>)> = None;
        for axis in 0..n {
            let mut w = vec![T::zero(); n];
            w[axis] = T::one();
            for q in &basis {
                let c = dot(&w, q);
                axpy(&mut w, -c, q);
            }
            // second pass for numerical orthogonality
            for q in &basis {
                let c = dot(&w, q);
                axpy(&mut w, -c, q);
            }
            let len = norm(&w);
            if best.as_ref().is_none_or(|(b, _)| len > *b) {
                best = Some((len, w));
            }
        }
        let (len, mut w) = best.expect("at least one candidate axis");
        debug_assert!(len > r(1e-8), "orthonormal frame left no residual direction");
        for wi in &mut w {
            *wi = *wi / len;
        }
        basis.push(w);
    }
    basis
}

/// Solve A x = b by LU with partial pivoting. A is consumed as a working copy.
pub fn solve<T: Real>(a: &Mat<T>, b: &[T]) -> Result<Vec<T>> {
    let n = a.rows;
    assert_eq!(a.rows, a.cols);
    assert_eq!(b.len(), n);
    let mut m = a.clone();
    let mut x = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|i| (i, m[(i, col)].abs()))
            .fold((col, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
        if mag <= r(1e-300) {
            return Err(Error::NoConvergence(format!("singular matrix at column {col}")));
        }
        if piv != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(piv, j)];
                m[(piv, j)] = tmp;
            }
            x.swap(col, piv);
            perm.swap(col, piv);
        }
        let d = m[(col, col)];
        for i in col + 1..n {
            let f = m[(i, col)] / d;
            if f == T::zero() {
                continue;
            }
            m[(i, col)] = T::zero();
            for j in col + 1..n {
                let v = m[(col, j)];
                m[(i, j)] = m[(i, j)] - f * v;
            }
            x[i] = x[i] - f * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] = x[col] / m[(col, col)];
        let xc = x[col];
        for i in 0..col {
            x[i] = x[i] - m[(i, col)] * xc;
        }
    }
    Ok(x)
}

/// Determinant by LU (partial pivoting).
pub fn det<T: Real>(a: &Mat<T>) -> T {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut sign = T::one();
    let mut prod = T::one();
    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|i| (i, m[(i, col)].abs()))
            .fold((col, T::zero()), |best, cur| if cur.1 > best.1 { cur } else { best });
        if mag == T::zero() {
            return T::zero();
        }
        if piv != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(piv, j)];
                m[(piv, j)] = tmp;
            }
            sign = -sign;
        }
        let d = m[(col, col)];
        prod = prod * d;
        for i in col + 1..n {
            let f = m[(i, col)] / d;
            for j in col + 1..n {
                let v = m[(col, j)];
                m[(i, j)] = m[(i, j)] - f * v;
            }
        }
    }
    sign * prod
}

/// Inverse via `solve` against identity columns.
pub fn inverse<T: Real>(a: &Mat<T>) -> Result<Mat<T>> {
    let n = a.rows;
    let mut out = Mat::zeros(n, n);
    for j in 0..n {
        let mut e = vec![T::zero(); n];
        e[j] = T::one();
        let col = solve(a, &e)?;
        for i in 0..n {
            out[(i, j)] = col[i];
        }
    }
    Ok(out)
}

/// Eigenvalues of a symmetric matrix by the cyclic Jacobi method, ascending.
pub fn sym_eigenvalues<T: Real>(a: &Mat<T>) -> Vec<T> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let tol = r::<T>(1e-14) * m.max_abs().max(T::one());
    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[(p, q)].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= tol * r(1e-2) {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (r::<T>(2.0) * apq);
                let t = {
                    let s = if theta >= T::zero() { T::one() } else { -T::one() };
                    s / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = c * mip - s * miq;
                    m[(i, q)] = s * mip + c * miq;
                }
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = c * mpj - s * mqj;
                    m[(q, j)] = s * mpj + c * mqj;
                }
            }
        }
    }
    let mut evals: Vec<T> = (0..n).map(|i| m[(i, i)]).collect();
    evals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    evals
}
