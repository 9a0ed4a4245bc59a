use serde::Serialize;

use super::OpinionVector;
use crate::error::{Error, Result};
use crate::stochastic::{vector_norm, VectorNorm};

/// Inputs of the convergence-rate envelope
/// `2·U·‖A₁^(t mod 2)‖₁·q^⌊t/2⌋·‖x(0)‖₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParameters {
    pub u: f64,
    pub q: f64,
    pub norm_x0: f64,
    pub a1_norm1: f64,
}

impl BoundParameters {
    pub fn new(u: f64, q: f64, norm_x0: f64, a1_norm1: f64) -> Result<Self> {
        if u.is_nan() || u <= 0.0 {
            return Err(Error::InvalidArgument(format!("U must be positive, got {u}")));
        }
        if !(0.0..1.0).contains(&q) {
            return Err(Error::InvalidArgument(format!("q must lie in [0, 1), got {q}")));
        }
        Ok(Self { u, q, norm_x0, a1_norm1 })
    }
}

/// `t − 2⌊t/2⌋` is 0 or 1, so the matrix-power norm is either the identity's
/// (1) or `‖A₁‖₁`.
fn shape(q: f64, a1_norm1: f64, t: usize) -> f64 {
    let parity = if t % 2 == 1 { a1_norm1 } else { 1.0 };
    parity * q.powi((t / 2) as i32)
}

pub fn bound_value(bp: &BoundParameters, t: usize) -> f64 {
    2.0 * bp.u * shape(bp.q, bp.a1_norm1, t) * bp.norm_x0
}

/// Both reported choices of the constant `U`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Calibration {
    /// Smallest `U` whose envelope dominates every recorded error with a
    /// non-zero envelope.
    pub u_min_dominating: f64,
    /// `‖x(0) − x̄‖∞ / (2‖x(0)‖₂)`: the smallest `U` valid at `t = 0`.
    pub u_t0_prior: f64,
}

/// Calibrates `U` against a recorded error series.
///
/// Steps where the envelope shape is exactly zero (`q = 0`, `t ≥ 2`) cannot
/// be dominated by any `U` and are left out. When the error series is
/// identically zero any `U` works and the prior is used, floored at the
/// smallest positive double so that `U > 0` holds.
pub fn calibrate_u(
    x0: &OpinionVector,
    x_bar: &[f64],
    err_series: &[f64],
    q: f64,
    a1_norm1: f64,
) -> Result<Calibration> {
    if err_series.is_empty() {
        return Err(Error::Calibration("empty error series".into()));
    }
    if x_bar.len() != x0.len() {
        return Err(Error::DimensionMismatch { expected: x0.len(), found: x_bar.len() });
    }
    if !(0.0..1.0).contains(&q) {
        return Err(Error::Calibration(format!("contraction factor {q} is not below one")));
    }
    let first = err_series[0];
    let last = *err_series.last().expect("non-empty");
    if err_series.len() > 1 && first > 0.0 && last >= first {
        return Err(Error::Calibration(format!("error series does not decay ({first:e} -> {last:e})")));
    }

    let norm_x0 = vector_norm(x0.values(), VectorNorm::Two);
    let diff: Vec<f64> = x0.values().iter().zip(x_bar).map(|(a, b)| a - b).collect();
    let prior = if norm_x0 > 0.0 { vector_norm(&diff, VectorNorm::Inf) / (2.0 * norm_x0) } else { 0.0 };
    let prior = prior.max(f64::MIN_POSITIVE);

    let mut u_min = 0.0f64;
    for (t, &err) in err_series.iter().enumerate() {
        let denom = 2.0 * shape(q, a1_norm1, t) * norm_x0;
        if denom > 0.0 {
            u_min = u_min.max(err / denom);
        } else if err > 0.0 {
            log::debug!("t = {t}: envelope is zero but error is {err:e}; step excluded from calibration");
        }
    }
    let u_min = if u_min > 0.0 { u_min } else { prior };
    Ok(Calibration { u_min_dominating: u_min, u_t0_prior: prior })
}
