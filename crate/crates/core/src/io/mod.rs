//! Network files, CSV trajectories and run summaries.
//!
//! A network file is UTF-8 JSON:
//!
//! ```json
//! {
//!   "agents": ["A", "B"],
//!   "layers": [
//!     [{"source": "A", "target": "A"}, {"source": "A", "target": "B"}],
//!     [{"source": "A", "target": "A"}, {"source": "B", "target": "B"}]
//!   ],
//!   "initial_opinions": {"A": 4.74, "B": 0.11},
//!   "activation_period": 2
//! }
//! ```
//!
//! Each edge reads *source influences target*: `source` is in `target`'s
//! neighbor set. Self-loops are written as edges from an agent to itself.
//! `activation_period` is optional and defaults to 2.

mod csv;

pub use self::csv::{format_float, write_trajectory_csv};

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::dynamics::OpinionVector;
use crate::error::{Error, Result};
use crate::markov::ConsensusMode;
use crate::network::{Layer, LayerId, MultiplexNetwork, DEFAULT_ACTIVATION_PERIOD};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
}

/// On-disk network description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkFile {
    pub agents: Vec<String>,
    pub layers: Vec<Vec<EdgeRecord>>,
    pub initial_opinions: IndexMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub activation_period: Option<usize>,
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(Error::Schema("agent labels must be non-empty".into()));
    }
    if label.chars().any(|c| c == ',' || c == '"' || c.is_control()) {
        return Err(Error::Schema(format!("agent label `{label}` contains a comma, quote or control character")));
    }
    Ok(())
}

impl NetworkFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network files always serialize") + "\n"
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Checks the schema and builds the network plus initial opinions in
    /// agent order.
    pub fn to_model(&self) -> Result<(MultiplexNetwork, OpinionVector)> {
        let mut index = HashMap::new();
        for (i, label) in self.agents.iter().enumerate() {
            check_label(label)?;
            if index.insert(label.as_str(), i).is_some() {
                return Err(Error::Schema(format!("agents: duplicate label `{label}`")));
            }
        }
        if self.layers.len() != 2 {
            return Err(Error::Schema(format!("layers: expected exactly 2 edge lists, found {}", self.layers.len())));
        }
        let n = self.agents.len();
        let mut layers = Vec::with_capacity(2);
        for (li, edges) in self.layers.iter().enumerate() {
            let mut pairs = Vec::with_capacity(edges.len());
            for (ei, e) in edges.iter().enumerate() {
                let lookup = |label: &str, field: &str| {
                    index.get(label).copied().ok_or_else(|| {
                        Error::Schema(format!("layers[{li}][{ei}].{field}: unknown agent `{label}`"))
                    })
                };
                pairs.push((lookup(&e.source, "source")?, lookup(&e.target, "target")?));
            }
            layers.push(Layer::new(n, pairs)?);
        }

        for label in self.initial_opinions.keys() {
            if !index.contains_key(label.as_str()) {
                return Err(Error::Schema(format!("initial_opinions: unknown agent `{label}`")));
            }
        }
        let mut x0 = Vec::with_capacity(n);
        for label in &self.agents {
            let v = *self
                .initial_opinions
                .get(label)
                .ok_or_else(|| Error::Schema(format!("initial_opinions: missing opinion for agent `{label}`")))?;
            if !(0.0..=10.0).contains(&v) {
                return Err(Error::Schema(format!("initial_opinions.{label}: {v} is outside [0, 10]")));
            }
            x0.push(v);
        }

        let layer2 = layers.pop().expect("two layers");
        let layer1 = layers.pop().expect("two layers");
        let k = self.activation_period.unwrap_or(DEFAULT_ACTIVATION_PERIOD);
        if k < 2 {
            return Err(Error::Schema(format!("activation_period: must be at least 2, got {k}")));
        }
        let net = MultiplexNetwork::new(self.agents.clone(), layer1, layer2, k)?;
        Ok((net, OpinionVector::new(x0)?))
    }

    /// Serializes a network; edges come out sorted by `(source, target)` index.
    pub fn from_model(net: &MultiplexNetwork, x0: &OpinionVector) -> Result<Self> {
        if x0.len() != net.n() {
            return Err(Error::DimensionMismatch { expected: net.n(), found: x0.len() });
        }
        let label = |i: usize| net.agents()[i].label.clone();
        let layer = |which| {
            net.layer(which)
                .edges()
                .iter()
                .map(|&(s, t)| EdgeRecord { source: label(s), target: label(t) })
                .collect()
        };
        Ok(Self {
            agents: net.agents().iter().map(|a| a.label.clone()).collect(),
            layers: vec![layer(LayerId::Layer1), layer(LayerId::Layer2)],
            initial_opinions: net.agents().iter().map(|a| a.label.clone()).zip(x0.values().iter().copied()).collect(),
            activation_period: Some(net.activation_period()),
        })
    }

    /// Edge lists as sorted label pairs, for order-insensitive comparison.
    pub fn canonical_edges(&self) -> Vec<BTreeSet<(String, String)>> {
        self.layers
            .iter()
            .map(|edges| edges.iter().map(|e| (e.source.clone(), e.target.clone())).collect())
            .collect()
    }
}

/// Command-line run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub t_max: usize,
    pub tol: f64,
    pub emit_bound: bool,
    pub output_path: std::path::PathBuf,
    /// Reserved for randomized features; the core never reads it.
    pub seed: u64,
}

/// JSON summary written after a simulation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub converged_at: Option<usize>,
    pub consensus_value: Option<f64>,
    pub q: Option<f64>,
    #[serde(rename = "U_min_dominating")]
    pub u_min_dominating: Option<f64>,
    #[serde(rename = "U_t0_prior")]
    pub u_t0_prior: Option<f64>,
    pub mode: Option<ConsensusMode>,
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "agents": ["A", "B"],
        "layers": [
            [{"source": "A", "target": "A"}, {"source": "A", "target": "B"}],
            [{"source": "A", "target": "A"}, {"source": "B", "target": "B"}]
        ],
        "initial_opinions": {"A": 4.74, "B": 0.11}
    }"#;

    #[test]
    fn parses_and_defaults_period() {
        let f = NetworkFile::from_json(SMALL).unwrap();
        let (net, x0) = f.to_model().unwrap();
        assert_eq!(net.activation_period(), 2);
        assert_eq!(x0.values(), &[4.74, 0.11]);
        assert!(net.layer(LayerId::Layer1).edges().contains(&(0, 1)));
    }

    #[test]
    fn round_trip() {
        let (net, x0) = NetworkFile::from_json(SMALL).unwrap().to_model().unwrap();
        let back = NetworkFile::from_json(&NetworkFile::from_model(&net, &x0).unwrap().to_json()).unwrap();
        let (net2, x02) = back.to_model().unwrap();
        assert_eq!(net, net2);
        assert_eq!(x0, x02);
    }

    fn schema_error(text: &str) -> String {
        match NetworkFile::from_json(text).and_then(|f| f.to_model()) {
            Err(e) => e.to_string(),
            Ok(_) => panic!("expected an error"),
        }
    }

    #[test]
    fn missing_opinion_names_agent() {
        let msg = schema_error(&SMALL.replace(r#", "B": 0.11"#, ""));
        assert!(msg.contains("missing opinion for agent `B`"), "{msg}");
    }

    #[test]
    fn other_schema_errors() {
        assert!(schema_error(&SMALL.replace(r#""target": "B""#, r#""target": "Z""#)).contains("unknown agent `Z`"));
        assert!(schema_error(&SMALL.replace("4.74", "11")).contains("outside [0, 10]"));
        assert!(schema_error(&SMALL.replace(r#"["A", "B"]"#, r#"["A", "A"]"#)).contains("duplicate"));
        assert!(schema_error(r#"{"agents": [], "layers": [[]], "initial_opinions": {}}"#).contains("exactly 2"));
        assert!(schema_error(&SMALL.replace("\"agents\"", "\"agentz\"")).contains("JSON"));
        let bad_json = schema_error("{\n\"agents\": [\"A\",\n}");
        assert!(bad_json.contains("line"), "{bad_json}");
    }
}
