//! Two-layer multiplex network model.
//!
//! Edge direction convention: an edge `(source, target)` means *source
//! influences target*, i.e. `source` belongs to the neighbor set of
//! `target`. A self-loop `(i, i)` keeps agent `i`'s own opinion in its
//! update. Leaders are never declared; an agent is a leader on a scope when
//! its neighbor set there is exactly `{itself}`.

mod graph;
mod validate;

pub use graph::{has_spanning_tree, strongly_connected_components, ClosedAlong, CommClass, Digraph};
pub use validate::{validate_assumptions, ValidationReport, Violation, ViolationCode};

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default activation period: layer 2 joins on every second step.
pub const DEFAULT_ACTIVATION_PERIOD: usize = 2;

/// An agent: contiguous index plus a unique label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentId {
    pub index: usize,
    pub label: String,
}

impl Serialize for AgentId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label)
    }
}

/// One of the two layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayerId {
    Layer1,
    Layer2,
}

impl LayerId {
    pub fn number(self) -> u8 {
        match self {
            LayerId::Layer1 => 1,
            LayerId::Layer2 => 2,
        }
    }
}

/// Where a neighbor query looks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Layer1,
    Layer2,
    Union,
}

impl From<LayerId> for Scope {
    fn from(layer: LayerId) -> Self {
        match layer {
            LayerId::Layer1 => Scope::Layer1,
            LayerId::Layer2 => Scope::Layer2,
        }
    }
}

/// Directed edge set over `n` agents, with in-neighbor sets cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    in_neighbors: Vec<BTreeSet<usize>>,
}

impl Layer {
    /// Builds a layer from `(source, target)` pairs. Duplicates collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut in_neighbors = vec![BTreeSet::new(); n];
        for (s, t) in edges {
            if s >= n || t >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({s}, {t}) has an endpoint outside [0, {n})"
                )));
            }
            set.insert((s, t));
            in_neighbors[t].insert(s);
        }
        Ok(Self { n, edges: set, in_neighbors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(source, target)`, sorted.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Agents influencing `i` on this layer.
    pub fn in_neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.in_neighbors[i]
    }

    pub fn has_self_loop(&self, i: usize) -> bool {
        self.in_neighbors[i].contains(&i)
    }
}

/// Agents plus two directed layers over the same agent set.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplexNetwork {
    agents: Vec<AgentId>,
    layer1: Layer,
    layer2: Layer,
    activation_period: usize,
}

impl MultiplexNetwork {
    pub fn new(
        labels: Vec<String>,
        layer1: Layer,
        layer2: Layer,
        activation_period: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if layer1.n() != n || layer2.n() != n {
            return Err(Error::InvalidArgument(format!(
                "layers cover {} and {} agents, expected {n}",
                layer1.n(),
                layer2.n()
            )));
        }
        if activation_period < 2 {
            return Err(Error::InvalidArgument(format!(
                "activation period must be at least 2, got {activation_period}"
            )));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate agent label `{label}`")));
            }
        }
        let agents = labels
            .into_iter()
            .enumerate()
            .map(|(index, label)| AgentId { index, label })
            .collect();
        Ok(Self { agents, layer1, layer2, activation_period })
    }

    /// Convenience constructor from index edge lists with period 2.
    pub fn from_edges(
        labels: &[&str],
        layer1: &[(usize, usize)],
        layer2: &[(usize, usize)],
    ) -> Result<Self> {
        let n = labels.len();
        Self::new(
            labels.iter().map(|s| s.to_string()).collect(),
            Layer::new(n, layer1.iter().copied())?,
            Layer::new(n, layer2.iter().copied())?,
            DEFAULT_ACTIVATION_PERIOD,
        )
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn agent(&self, i: usize) -> Result<&AgentId> {
        self.agents
            .get(i)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown agent index {i}")))
    }

    pub fn agent_by_label(&self, label: &str) -> Option<&AgentId> {
        self.agents.iter().find(|a| a.label == label)
    }

    pub fn layer(&self, which: LayerId) -> &Layer {
        match which {
            LayerId::Layer1 => &self.layer1,
            LayerId::Layer2 => &self.layer2,
        }
    }

    pub fn activation_period(&self) -> usize {
        self.activation_period
    }

    /// Whether layer 2 is active at step `t` (`t ≡ 0 mod k`).
    pub fn both_layers_active(&self, t: usize) -> bool {
        t.is_multiple_of(self.activation_period)
    }

    /// Agents whose opinion influences agent `i` within `scope`.
    pub fn neighbor_set(&self, i: usize, scope: Scope) -> Result<BTreeSet<usize>> {
        self.agent(i)?;
        Ok(match scope {
            Scope::Layer1 => self.layer1.in_neighbors(i).clone(),
            Scope::Layer2 => self.layer2.in_neighbors(i).clone(),
            Scope::Union => self
                .layer1
                .in_neighbors(i)
                .union(self.layer2.in_neighbors(i))
                .copied()
                .collect(),
        })
    }

    /// Agents whose neighbor set within `scope` is exactly themselves.
    pub fn leaders(&self, scope: Scope) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| {
                let nb = self.neighbor_set(i, scope).expect("index in range");
                nb.len() == 1 && nb.contains(&i)
            })
            .collect()
    }

    /// Whether `i` has a self-loop on either layer.
    pub fn has_self_loop(&self, i: usize) -> bool {
        self.layer1.has_self_loop(i) || self.layer2.has_self_loop(i)
    }

    /// Influence-direction graph (edge `s -> t` when `s` influences `t`).
    pub fn influence_graph(&self, scope: Scope) -> Digraph {
        let mut g = Digraph::new(self.n());
        let mut add = |layer: &Layer| {
            for &(s, t) in layer.edges() {
                g.add_edge(s, t);
            }
        };
        match scope {
            Scope::Layer1 => add(&self.layer1),
            Scope::Layer2 => add(&self.layer2),
            Scope::Union => {
                add(&self.layer1);
                add(&self.layer2);
            }
        }
        g
    }

    /// Bidirectional counterpart: every non-loop edge `(u, v)` gains its
    /// reverse `(v, u)` unless `u` is a union leader, so a leader never
    /// acquires a neighbor other than itself.
    pub fn symmetrize(&self) -> MultiplexNetwork {
        let union_leaders: BTreeSet<usize> = self.leaders(Scope::Union).into_iter().collect();
        let sym = |layer: &Layer| {
            let mut edges = layer.edges().clone();
            for &(u, v) in layer.edges() {
                if u != v && !union_leaders.contains(&u) {
                    edges.insert((v, u));
                }
            }
            Layer::new(layer.n(), edges).expect("endpoints already validated")
        };
        MultiplexNetwork {
            agents: self.agents.clone(),
            layer1: sym(&self.layer1),
            layer2: sym(&self.layer2),
            activation_period: self.activation_period,
        }
    }

    pub fn ids(&self, indices: impl IntoIterator<Item = usize>) -> Vec<AgentId> {
        indices.into_iter().map(|i| self.agents[i].clone()).collect()
    }
}
