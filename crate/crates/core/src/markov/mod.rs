//! Absorbing-chain analysis of the two-step matrix `C = A(2)·A₁`.
//!
//! Over one full activation period the dynamics act through `C`. Read as
//! a Markov transition matrix (state `i` moves to `j` with probability
//! `C[i][j]`), `C` has exactly one closed class for networks that reach
//! consensus: the union leader, or a strongly connected group of agents.
//! Permuting that class first gives the block form `[[P, 0], [R, Q]]`,
//! from which the limit `1·π^T`, the consensus value and the contraction
//! factor follow.

mod report;

pub use report::{analyze, AnalysisReport, ClassReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::{strongly_connected_components, ClosedAlong, CommClass, Digraph, LayerId, MultiplexNetwork};
use crate::stochastic::{
    layer_adjacency, multiplex_adjacency, spectral_radius, stationary_distribution, Distribution, Matrix,
    MatrixKind, MatrixNorm,
};

const LIMIT_CHECK_TOL: f64 = 1e-8;
const BLOCK_DECAY_TOL: f64 = 1e-10;
const MAX_CHECK_SQUARINGS: u32 = 20;

/// `C = A(2)·A₁`, the transition matrix of one full activation period.
pub fn two_step_matrix(net: &MultiplexNetwork) -> Result<Matrix> {
    if net.activation_period() != 2 {
        return Err(Error::UnsupportedPeriod(net.activation_period()));
    }
    multiplex_adjacency(net, 2)?.matmul(&layer_adjacency(net, LayerId::Layer1)?)
}

/// Communication classes of a chain together with its closed/transient split.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorbingStructure {
    pub classes: Vec<CommClass>,
    pub closed: Vec<Vec<usize>>,
    pub transient: Vec<usize>,
}

fn chain_graph(c: &Matrix) -> Digraph {
    let mut g = Digraph::new(c.rows());
    for i in 0..c.rows() {
        for j in 0..c.cols() {
            if c.get(i, j) > 0.0 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Splits the chain into closed classes and transient states; rejects
/// chains with more than one closed class.
pub fn absorbing_structure(c: &Matrix) -> Result<AbsorbingStructure> {
    if c.kind() != MatrixKind::RowStochastic {
        return Err(Error::InvalidArgument(format!("expected a row-stochastic chain, got {:?}", c.kind())));
    }
    let classes = strongly_connected_components(&chain_graph(c), ClosedAlong::Forward);
    let closed: Vec<Vec<usize>> = classes.iter().filter(|k| k.closed).map(|k| k.members.clone()).collect();
    if closed.len() != 1 {
        return Err(Error::MultipleClosedClasses { classes: closed });
    }
    let mut transient: Vec<usize> = classes
        .iter()
        .filter(|k| !k.closed)
        .flat_map(|k| k.members.iter().copied())
        .collect();
    transient.sort_unstable();
    Ok(AbsorbingStructure { classes, closed, transient })
}

/// Block form `[[P, 0], [R, Q]]` of a chain with a single closed class.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    /// `permutation[k]` is the original state placed at position `k`.
    pub permutation: Vec<usize>,
    pub p: Matrix,
    pub r: Matrix,
    pub q: Matrix,
    pub closed_class: Vec<usize>,
    pub transient: Vec<usize>,
}

pub fn canonical_form(c: &Matrix) -> Result<CanonicalForm> {
    let structure = absorbing_structure(c)?;
    let closed_class = structure.closed.into_iter().next().expect("exactly one closed class");
    let transient = structure.transient;
    let permutation: Vec<usize> = closed_class.iter().chain(&transient).copied().collect();
    Ok(CanonicalForm {
        p: c.select(&closed_class, &closed_class),
        r: c.select(&transient, &closed_class),
        q: c.select(&transient, &transient),
        permutation,
        closed_class,
        transient,
    })
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.permutation.len()
    }

    /// True when the closed class is a single absorbing state (a leader).
    pub fn is_leader_case(&self) -> bool {
        self.closed_class.len() == 1
    }

    /// Undoes the permutation, rebuilding the chain in original order.
    pub fn reassemble(&self) -> Matrix {
        let n = self.n();
        let c = self.closed_class.len();
        let mut data = vec![0.0; n * n];
        for (a, &i) in self.permutation.iter().enumerate() {
            for (b, &j) in self.permutation.iter().enumerate() {
                data[i * n + j] = match (a < c, b < c) {
                    (true, true) => self.p.get(a, b),
                    (true, false) => 0.0,
                    (false, true) => self.r.get(a - c, b),
                    (false, false) => self.q.get(a - c, b - c),
                };
            }
        }
        Matrix::from_vec(n, n, data).expect("square")
    }

    /// Stationary distribution of `P` over the closed class.
    pub fn closed_stationary(&self) -> Result<Distribution> {
        if self.is_leader_case() {
            return Ok(Distribution::point_mass(1, 0));
        }
        stationary_distribution(&self.p)
    }

    /// `π` spread over all agents, zero on transient states.
    pub fn extended_stationary(&self) -> Result<Vec<f64>> {
        let pi = self.closed_stationary()?;
        let mut ext = vec![0.0; self.n()];
        for (&i, &w) in self.closed_class.iter().zip(pi.weights()) {
            ext[i] = w;
        }
        Ok(ext)
    }
}

/// `lim C^t = 1·π_ext^T`, checked against a matrix power of `C` once both
/// `Q^T` and `P^T − 1π^T` have decayed below `1e-10`.
pub fn limit_matrix(cf: &CanonicalForm) -> Result<Matrix> {
    let pi_ext = cf.extended_stationary()?;
    let pi_closed = cf.closed_stationary()?;
    let limit = Matrix::rank_one_rows(cf.n(), &pi_ext);
    let p_limit = Matrix::rank_one_rows(cf.closed_class.len(), pi_closed.weights());

    let mut c_pow = cf.reassemble();
    let mut q_pow = cf.q.clone();
    let mut p_pow = cf.p.clone();
    let mut squarings = 0;
    while squarings < MAX_CHECK_SQUARINGS {
        let q_done = q_pow.rows() == 0 || q_pow.induced_norm(MatrixNorm::Inf) < BLOCK_DECAY_TOL;
        let p_done = p_pow.sub(&p_limit)?.induced_norm(MatrixNorm::Inf) < BLOCK_DECAY_TOL;
        if q_done && p_done {
            break;
        }
        c_pow = c_pow.matmul(&c_pow)?;
        q_pow = q_pow.matmul(&q_pow)?;
        p_pow = p_pow.matmul(&p_pow)?;
        squarings += 1;
    }
    let gap = c_pow.sub(&limit)?.induced_norm(MatrixNorm::Inf);
    if gap >= LIMIT_CHECK_TOL {
        return Err(Error::NumericalInconsistency(format!(
            "C^{} differs from the predicted limit by {gap:e}",
            1u64 << squarings
        )));
    }
    log::debug!("limit verified at C^{} (gap {gap:e})", 1u64 << squarings);
    Ok(limit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConsensusMode {
    /// Everyone adopts the union leader's initial opinion.
    Leader,
    /// Everyone adopts a π-weighted mix of the closed class's initial opinions.
    AbsorbingClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointPrediction {
    pub x_bar: Vec<f64>,
    pub pi: Distribution,
    pub mode: ConsensusMode,
}

impl FixedPointPrediction {
    pub fn consensus_value(&self) -> f64 {
        self.x_bar[0]
    }
}

pub fn predicted_fixed_point(cf: &CanonicalForm, x0: &[f64]) -> Result<FixedPointPrediction> {
    if x0.len() != cf.n() {
        return Err(Error::DimensionMismatch { expected: cf.n(), found: x0.len() });
    }
    let limit = limit_matrix(cf)?;
    Ok(FixedPointPrediction {
        x_bar: limit.matvec(x0)?,
        pi: cf.closed_stationary()?,
        mode: if cf.is_leader_case() { ConsensusMode::Leader } else { ConsensusMode::AbsorbingClass },
    })
}

/// Geometric rate of the two-step chain: the larger of `ρ(Q)` and the
/// second eigenvalue modulus of `P`, the latter read off as `ρ(P − 1π^T)`.
pub fn contraction_factor(cf: &CanonicalForm) -> Result<f64> {
    let q_part = if cf.q.rows() == 0 { 0.0 } else { spectral_radius(&cf.q)? };
    let pi = cf.closed_stationary()?;
    let deflated = cf.p.sub(&Matrix::rank_one_rows(cf.closed_class.len(), pi.weights()))?;
    let p_part = spectral_radius(&deflated)?;
    Ok(q_part.max(p_part))
}
