use serde::Serialize;

use super::{Matrix, MatrixKind};
use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-10;
const PIVOT_TOL: f64 = 1e-12;

/// Probability vector: nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("distribution needs non-empty support".into()));
        }
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
            return Err(Error::InvalidArgument("distribution has a negative weight".into()));
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidArgument(format!("distribution sums to {s}")));
        }
        Ok(Self(weights))
    }

    pub fn point_mass(n: usize, at: usize) -> Self {
        let mut w = vec![0.0; n];
        w[at] = 1.0;
        Self(w)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Solves `π^T P = π^T`, `Σπ = 1` by dense elimination on the stacked
/// system `[(P^T − I); 1^T] π = [0; 1]`.
///
/// Aperiodicity is required in its cheap sufficient form: some diagonal
/// entry of `P` must be positive.
pub fn stationary_distribution(p: &Matrix) -> Result<Distribution> {
    if !p.is_square() {
        return Err(Error::NotSquare { rows: p.rows(), cols: p.cols() });
    }
    if p.kind() != MatrixKind::RowStochastic {
        return Err(Error::InvalidArgument(format!("expected a row-stochastic matrix, got {:?}", p.kind())));
    }
    let n = p.rows();
    if !(0..n).any(|i| p.get(i, i) > 0.0) {
        return Err(Error::Aperiodicity);
    }

    // augmented (n + 1) x (n + 1): n unknowns plus rhs column
    let w = n + 1;
    let mut a = vec![0.0; (n + 1) * w];
    for i in 0..n {
        for j in 0..n {
            a[i * w + j] = p.get(j, i) - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..n {
        a[n * w + j] = 1.0;
    }
    a[n * w + n] = 1.0;

    for col in 0..n {
        let pivot = (col..=n)
            .max_by(|&r1, &r2| a[r1 * w + col].abs().total_cmp(&a[r2 * w + col].abs()))
            .expect("non-empty range");
        if a[pivot * w + col].abs() < PIVOT_TOL {
            return Err(Error::Reducible);
        }
        if pivot != col {
            for j in 0..w {
                a.swap(pivot * w + j, col * w + j);
            }
        }
        let d = a[col * w + col];
        for r in 0..=n {
            if r == col {
                continue;
            }
            let f = a[r * w + col] / d;
            if f != 0.0 {
                for j in col..w {
                    a[r * w + j] -= f * a[col * w + j];
                }
            }
        }
    }
    // the leftover row must be consistent (0 = 0)
    if a[n * w + n].abs() > 1e-9 {
        return Err(Error::Reducible);
    }

    let mut pi: Vec<f64> = (0..n).map(|i| a[i * w + n] / a[i * w + i]).collect();
    for v in &mut pi {
        if *v < 0.0 {
            if *v < -1e-12 {
                return Err(Error::NumericalInconsistency(format!("stationary weight {v} is negative")));
            }
            *v = 0.0;
        }
    }
    let s: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|v| *v /= s);

    let residual = (0..n)
        .map(|j| ((0..n).map(|i| pi[i] * p.get(i, j)).sum::<f64>() - pi[j]).abs())
        .fold(0.0, f64::max);
    if residual >= RESIDUAL_TOL {
        return Err(Error::NumericalInconsistency(format!("stationary residual {residual:e}")));
    }
    Distribution::new(pi)
}
