use super::Matrix;
use crate::error::{Error, Result};
use crate::network::{LayerId, MultiplexNetwork};

/// Equal-weight adjacency of one layer: row `i` puts `1/|δ_i|` on each of
/// agent `i`'s neighbors.
pub fn layer_adjacency(net: &MultiplexNetwork, which: LayerId) -> Result<Matrix> {
    let n = net.n();
    let layer = net.layer(which);
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        let nb = layer.in_neighbors(i);
        if nb.is_empty() {
            return Err(Error::EmptyNeighborSet {
                agent: net.agents()[i].label.clone(),
                layer: which.number(),
            });
        }
        let w = 1.0 / nb.len() as f64;
        for &j in nb {
            data[i * n + j] = w;
        }
    }
    Matrix::from_vec(n, n, data)
}

/// `A(t)`: the mean of both layers when `t ≡ 0 mod k`, layer 1 otherwise.
pub fn multiplex_adjacency(net: &MultiplexNetwork, t: usize) -> Result<Matrix> {
    if t == 0 {
        return Err(Error::InvalidArgument("time steps start at t = 1".into()));
    }
    let a1 = layer_adjacency(net, LayerId::Layer1)?;
    if net.both_layers_active(t) {
        let a2 = layer_adjacency(net, LayerId::Layer2)?;
        Ok(a1.add(&a2)?.scale(0.5))
    } else {
        Ok(a1)
    }
}
