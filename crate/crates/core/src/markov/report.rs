use indexmap::IndexMap;
use serde::Serialize;

use super::{canonical_form, contraction_factor, predicted_fixed_point, two_step_matrix, CanonicalForm, ConsensusMode};
use crate::error::{Error, Result};
use crate::network::{validate_assumptions, AgentId, LayerId, MultiplexNetwork};
use crate::stochastic::{layer_adjacency, Matrix, MatrixNorm};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub members: Vec<AgentId>,
    pub closed: bool,
}

/// Everything the analysis predicts about a network and initial profile.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub mode: ConsensusMode,
    pub leaders_union: Vec<AgentId>,
    pub leaders_layer1: Vec<AgentId>,
    pub leaders_layer2: Vec<AgentId>,
    /// Communication classes of the two-step chain.
    pub communication_classes: Vec<ClassReport>,
    pub closed_class: Vec<AgentId>,
    pub transient: Vec<AgentId>,
    /// Stationary weights over the closed class, keyed by label.
    pub pi: IndexMap<String, f64>,
    pub consensus_value: f64,
    pub fixed_point: Vec<f64>,
    pub q: f64,
    /// Induced 1-norm of the layer-1 adjacency.
    pub a1_norm1: f64,
    #[serde(skip)]
    pub two_step: Matrix,
    #[serde(skip)]
    pub canonical: CanonicalForm,
}

/// Validates, builds `C`, and derives the consensus prediction for `x0`.
pub fn analyze(net: &MultiplexNetwork, x0: &[f64]) -> Result<AnalysisReport> {
    let validation = validate_assumptions(net);
    if !validation.is_valid() {
        return Err(Error::AssumptionViolated(validation.summary()));
    }
    let c = two_step_matrix(net)?;
    let structure = super::absorbing_structure(&c)?;
    let cf = canonical_form(&c)?;
    let fp = predicted_fixed_point(&cf, x0)?;
    let q = contraction_factor(&cf)?;
    let a1_norm1 = layer_adjacency(net, LayerId::Layer1)?.induced_norm(MatrixNorm::One);

    let pi = cf
        .closed_class
        .iter()
        .zip(fp.pi.weights())
        .map(|(&i, &w)| (net.agents()[i].label.clone(), w))
        .collect();
    Ok(AnalysisReport {
        mode: fp.mode,
        leaders_union: validation.leaders_union,
        leaders_layer1: validation.leaders_layer1,
        leaders_layer2: validation.leaders_layer2,
        communication_classes: structure
            .classes
            .iter()
            .map(|k| ClassReport { members: net.ids(k.members.iter().copied()), closed: k.closed })
            .collect(),
        closed_class: net.ids(cf.closed_class.iter().copied()),
        transient: net.ids(cf.transient.iter().copied()),
        pi,
        consensus_value: fp.consensus_value(),
        fixed_point: fp.x_bar,
        q,
        a1_norm1,
        two_step: c,
        canonical: cf,
    })
}
