use std::collections::BTreeSet;

use super::OpinionVector;
use crate::error::{Error, Result};
use crate::network::{LayerId, MultiplexNetwork};

fn active_layers(net: &MultiplexNetwork, t: usize) -> &'static [LayerId] {
    if net.both_layers_active(t) {
        &[LayerId::Layer1, LayerId::Layer2]
    } else {
        &[LayerId::Layer1]
    }
}

fn neighbors(net: &MultiplexNetwork, i: usize, layer: LayerId) -> Result<&BTreeSet<usize>> {
    let nb = net.layer(layer).in_neighbors(i);
    if nb.is_empty() {
        return Err(Error::EmptyNeighborSet { agent: net.agents()[i].label.clone(), layer: layer.number() });
    }
    Ok(nb)
}

/// Coordination cost of agent `i` choosing opinion `y` while everyone
/// else (including `i`'s own current opinion, via a self-loop) stays at `x`.
///
/// With only layer 1 active this is `½ Σ_{j∈δ_i1} (y − x_j)²`. With both
/// layers active each layer's sum runs over that layer's neighbor set
/// separately and is scaled by `1/|δ_iα|`, so both layers carry equal
/// weight; an agent neighboring `i` on both layers appears in both sums.
pub fn cost_at(net: &MultiplexNetwork, x: &OpinionVector, i: usize, t: usize, y: f64) -> Result<f64> {
    net.agent(i)?;
    if x.len() != net.n() {
        return Err(Error::DimensionMismatch { expected: net.n(), found: x.len() });
    }
    let xs = x.values();
    let both = net.both_layers_active(t);
    let mut total = 0.0;
    for &layer in active_layers(net, t) {
        let nb = neighbors(net, i, layer)?;
        let sum: f64 = nb.iter().map(|&j| (y - xs[j]).powi(2)).sum();
        total += if both { sum / nb.len() as f64 } else { sum };
    }
    Ok(0.5 * total)
}

/// Cost at the agent's current opinion; self-loop terms vanish.
pub fn cost(net: &MultiplexNetwork, x: &OpinionVector, i: usize, t: usize) -> Result<f64> {
    let xi = *x
        .values()
        .get(i)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown agent index {i}")))?;
    cost_at(net, x, i, t, xi)
}

/// Minimizer of [`cost_at`] over `y`: the mean of neighbor opinions on each
/// active layer, averaged across layers.
pub fn best_response(net: &MultiplexNetwork, x: &OpinionVector, i: usize, t: usize) -> Result<f64> {
    net.agent(i)?;
    if x.len() != net.n() {
        return Err(Error::DimensionMismatch { expected: net.n(), found: x.len() });
    }
    let xs = x.values();
    let layers = active_layers(net, t);
    let mut acc = 0.0;
    for &layer in layers {
        let nb = neighbors(net, i, layer)?;
        acc += nb.iter().map(|&j| xs[j]).sum::<f64>() / nb.len() as f64;
    }
    Ok(acc / layers.len() as f64)
}
