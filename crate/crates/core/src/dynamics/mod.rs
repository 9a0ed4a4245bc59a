//! Opinion dynamics `x(t) = A(t)·x(t−1)` and trajectory recording.
//!
//! Time starts at `x(0)`; the first update uses `A(1) = A₁`, and layer 2
//! first joins at `t = 2`. Two consecutive updates therefore compose to the
//! two-step matrix `C = A(2)·A₁` analysed in [`crate::markov`].

mod bound;
mod cost;

pub use bound::{bound_value, calibrate_u, BoundParameters, Calibration};
pub use cost::{best_response, cost, cost_at};

use crate::error::{Error, Result};
use crate::markov::analyze;
use crate::network::MultiplexNetwork;
use crate::stochastic::{multiplex_adjacency, vector_norm, VectorNorm};

pub const OPINION_MIN: f64 = 0.0;
pub const OPINION_MAX: f64 = 10.0;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_T_MAX: usize = 10_000;

/// Opinion profile with every entry in `[0, 10]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OpinionVector(Vec<f64>);

impl OpinionVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (index, &value) in values.iter().enumerate() {
            if !(OPINION_MIN..=OPINION_MAX).contains(&value) {
                return Err(Error::OpinionOutOfRange { index, value });
            }
        }
        Ok(Self(values))
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `max − min`; zero exactly at consensus.
    pub fn spread(&self) -> f64 {
        if self.0.is_empty() {
            0.0
        } else {
            self.max() - self.min()
        }
    }
}

/// One update: returns `A(t)·x`.
pub fn step(net: &MultiplexNetwork, x: &OpinionVector, t: usize) -> Result<OpinionVector> {
    if x.len() != net.n() {
        return Err(Error::DimensionMismatch { expected: net.n(), found: x.len() });
    }
    // averaging keeps the result inside the hull of x, so no range check
    Ok(OpinionVector(multiplex_adjacency(net, t)?.matvec(x.values())?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub t_max: usize,
    pub tol: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self { t_max: DEFAULT_T_MAX, tol: DEFAULT_TOL }
    }
}

/// Recorded run. `states[t]` is `x(t)`, starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<OpinionVector>,
    pub converged_at: Option<usize>,
    /// `‖x(t) − x̄‖∞` per recorded step, when a prediction was available.
    pub err_series: Option<Vec<f64>>,
    pub bound_series: Option<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> &OpinionVector {
        self.states.last().expect("trajectory holds x(0)")
    }

    /// Last recorded time index.
    pub fn t_end(&self) -> usize {
        self.states.len() - 1
    }

    pub fn attach_bound(&mut self, bp: &BoundParameters) {
        self.bound_series = Some((0..self.states.len()).map(|t| bound_value(bp, t)).collect());
    }
}

/// Steps after convergence that are still recorded.
pub const GRACE_STEPS: usize = 1;

/// Runs the dynamics and, when the analysis applies, measures the error
/// against its predicted fixed point.
pub fn simulate(net: &MultiplexNetwork, x0: &OpinionVector, cfg: &SimConfig) -> Result<Trajectory> {
    let x_bar = match analyze(net, x0.values()) {
        Ok(report) => Some(report.fixed_point),
        Err(e) => {
            log::info!("no fixed-point prediction, error series skipped: {e}");
            None
        }
    };
    simulate_against(net, x0, cfg, x_bar.as_deref())
}

/// Like [`simulate`], with the reference fixed point supplied by the caller.
pub fn simulate_against(
    net: &MultiplexNetwork,
    x0: &OpinionVector,
    cfg: &SimConfig,
    x_bar: Option<&[f64]>,
) -> Result<Trajectory> {
    if cfg.t_max < 1 {
        return Err(Error::InvalidArgument("t_max must be at least 1".into()));
    }
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", cfg.tol)));
    }
    if x0.len() != net.n() {
        return Err(Error::DimensionMismatch { expected: net.n(), found: x0.len() });
    }
    if let Some(xb) = x_bar {
        if xb.len() != net.n() {
            return Err(Error::DimensionMismatch { expected: net.n(), found: xb.len() });
        }
    }

    let mut states = vec![x0.clone()];
    let mut converged_at = None;
    let mut t_stop = cfg.t_max;
    let mut t = 1;
    while t <= t_stop {
        let next = step(net, states.last().expect("non-empty"), t)?;
        if converged_at.is_none() && next.spread() < cfg.tol {
            converged_at = Some(t);
            t_stop = t_stop.min(t + GRACE_STEPS);
            log::debug!("spread below {} at t = {t}", cfg.tol);
        }
        states.push(next);
        t += 1;
    }

    let err_series = x_bar.map(|xb| {
        states
            .iter()
            .map(|x| {
                let diff: Vec<f64> = x.values().iter().zip(xb).map(|(a, b)| a - b).collect();
                vector_norm(&diff, VectorNorm::Inf)
            })
            .collect()
    });
    Ok(Trajectory { states, converged_at, err_series, bound_series: None })
}
