use super::{Matrix, MatrixNorm};
use crate::error::{Error, Result};

const MAX_SQUARINGS: u32 = 40;
const REL_CHANGE_TOL: f64 = 1e-6;

/// Spectral radius via Gelfand's formula, `ρ(A) = lim ‖A^(2^m)‖∞^(1/2^m)`.
///
/// The powers are renormalized after every squaring and the scale is
/// carried in log space, so strongly contracting matrices do not underflow
/// before the estimate settles. A power that becomes exactly zero means
/// the matrix is nilpotent and `0` is returned.
///
/// The stopping test only applies once the exponent `2^m` reaches the
/// dimension: before that a substochastic block can keep `‖A^(2^m)‖∞ = 1`
/// (states that stay transient for several steps) and look converged.
pub fn spectral_radius(a: &Matrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.rows() == 0 {
        return Ok(0.0);
    }
    let norm = a.induced_norm(MatrixNorm::Inf);
    if norm == 0.0 {
        return Ok(0.0);
    }
    // A^(2^m) = exp(log_norm) * unit, with ‖unit‖∞ = 1
    let mut log_norm = norm.ln();
    let mut unit = a.scale(1.0 / norm);
    let mut estimate = norm;
    let min_squarings = usize::BITS - (a.rows() - 1).leading_zeros() + 1;
    for m in 1..=MAX_SQUARINGS {
        let sq = unit.matmul(&unit)?;
        let sq_norm = sq.induced_norm(MatrixNorm::Inf);
        if sq_norm == 0.0 {
            return Ok(0.0);
        }
        log_norm = 2.0 * log_norm + sq_norm.ln();
        unit = sq.scale(1.0 / sq_norm);
        let next = (log_norm / (1u64 << m) as f64).exp();
        let change = (next - estimate).abs() / estimate;
        estimate = next;
        if m >= min_squarings && change < REL_CHANGE_TOL {
            break;
        }
    }
    Ok(estimate)
}
