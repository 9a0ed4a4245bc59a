//! Dense matrices and the numeric kernel behind the analysis.
//!
//! Everything is stored densely in row-major order; networks are small
//! enough that sparsity would only complicate the exact norm and product
//! code.

mod adjacency;
mod spectral;
mod stationary;

pub use adjacency::{layer_adjacency, multiplex_adjacency};
pub use spectral::spectral_radius;
pub use stationary::{stationary_distribution, Distribution};

use std::fmt;

use crate::error::{Error, Result};

/// Row-sum tolerance used when classifying a matrix.
pub const ROW_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    /// Nonnegative, square, every row sums to one.
    RowStochastic,
    /// Nonnegative, square, rows sum to at most one and at least one falls short.
    Substochastic,
    /// Anything else (negative entries, rectangular, rows above one).
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixNorm {
    /// Induced 1-norm: maximum absolute column sum.
    One,
    /// Induced ∞-norm: maximum absolute row sum.
    Inf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorNorm {
    Two,
    Inf,
}

/// Dense real matrix, row-major, with its stochastic kind classified at
/// construction.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    kind: MatrixKind,
}

impl Matrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        let kind = classify(rows, cols, &data);
        Ok(Self { rows, cols, data, kind })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(r, c, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![0.0; rows * cols]).expect("sizes agree")
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self::from_vec(n, n, data).expect("sizes agree")
    }

    /// `1 · w^T`: every row equals `w`.
    pub fn rank_one_rows(n: usize, w: &[f64]) -> Self {
        let data = (0..n).flat_map(|_| w.iter().copied()).collect();
        Self::from_vec(n, w.len(), data).expect("sizes agree")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let mut out = vec![0.0; n * p];
        for i in 0..n {
            let out_row = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Matrix::from_vec(n, p, out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    pub fn scale(&self, s: f64) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix::from_vec(self.rows, self.cols, data).expect("same shape")
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        Matrix::from_vec(self.cols, self.rows, data).expect("same size")
    }

    /// Sub-matrix picking the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j)))
            .collect();
        Matrix::from_vec(rows.len(), cols.len(), data).expect("sizes agree")
    }

    /// `self^t` by binary exponentiation.
    pub fn pow(&self, mut t: u64) -> Result<Matrix> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(n);
        let mut base = self.clone();
        while t > 0 {
            if t & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            t >>= 1;
            if t > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn induced_norm(&self, p: MatrixNorm) -> f64 {
        match p {
            MatrixNorm::Inf => (0..self.rows)
                .map(|i| self.row(i).iter().map(|a| a.abs()).sum::<f64>())
                .fold(0.0, f64::max),
            MatrixNorm::One => (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.get(i, j).abs()).sum::<f64>())
                .fold(0.0, f64::max),
        }
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} ({:?})", self.rows, self.cols, self.kind)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

pub fn vector_norm(x: &[f64], p: VectorNorm) -> f64 {
    match p {
        VectorNorm::Two => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
        VectorNorm::Inf => x.iter().map(|v| v.abs()).fold(0.0, f64::max),
    }
}

fn classify(rows: usize, cols: usize, data: &[f64]) -> MatrixKind {
    if rows != cols || rows == 0 || data.iter().any(|&a| a < 0.0 || !a.is_finite()) {
        return MatrixKind::General;
    }
    let mut short = false;
    for row in data.chunks(cols) {
        let s: f64 = row.iter().sum();
        if s > 1.0 + ROW_SUM_TOL {
            return MatrixKind::General;
        }
        if s < 1.0 - ROW_SUM_TOL {
            short = true;
        }
    }
    if short {
        MatrixKind::Substochastic
    } else {
        MatrixKind::RowStochastic
    }
}
