use serde::Serialize;

use super::{has_spanning_tree, strongly_connected_components, AgentId, ClosedAlong, MultiplexNetwork, Scope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    /// More than one agent leads the union of both layers.
    MultipleLeaders,
    /// The union graph has no spanning tree from the leader (or from any node).
    NoSpanningTree,
    /// A layer-1 communication class has no self-loop agent (no-leader case).
    ClassWithoutSelfLoop,
    /// An agent with no neighbors at all lacks a self-loop.
    IsolatedWithoutSelfLoop,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
    pub agents: Vec<AgentId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub leaders_layer1: Vec<AgentId>,
    pub leaders_layer2: Vec<AgentId>,
    pub leaders_union: Vec<AgentId>,
    pub spanning_tree_root: Option<AgentId>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// The unique union leader, if the network has one and is valid.
    pub fn leader(&self) -> Option<&AgentId> {
        match self.leaders_union.as_slice() {
            [l] => Some(l),
            _ => None,
        }
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| format!("{:?}: {}", v.code, v.message))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn labels(agents: &[AgentId]) -> String {
    agents.iter().map(|a| a.label.as_str()).collect::<Vec<_>>().join(", ")
}

/// Checks the structural assumptions under which consensus is guaranteed.
/// Every failure is collected; nothing short-circuits.
pub fn validate_assumptions(net: &MultiplexNetwork) -> ValidationReport {
    let n = net.n();
    let leaders_union = net.leaders(Scope::Union);
    let union = net.influence_graph(Scope::Union);
    let mut violations = Vec::new();
    let mut spanning_tree_root = None;

    match leaders_union.as_slice() {
        [] => {
            let layer1 = net.influence_graph(Scope::Layer1);
            let l1 = net.layer(super::LayerId::Layer1);
            for class in strongly_connected_components(&layer1, ClosedAlong::Forward) {
                if !class.members.iter().any(|&i| l1.has_self_loop(i)) {
                    let agents = net.ids(class.members.iter().copied());
                    violations.push(Violation {
                        code: ViolationCode::ClassWithoutSelfLoop,
                        message: format!("layer-1 class {{{}}} has no self-loop agent", labels(&agents)),
                        agents,
                    });
                }
            }
            spanning_tree_root =
                (0..n).find(|&r| has_spanning_tree(&union, r).expect("root in range"));
            if spanning_tree_root.is_none() && n > 0 {
                violations.push(Violation {
                    code: ViolationCode::NoSpanningTree,
                    message: "no agent reaches every other agent in the union graph".into(),
                    agents: Vec::new(),
                });
            }
        }
        [leader] => {
            let reach = union.reachable_from(*leader);
            let missing: Vec<usize> = (0..n).filter(|&i| !reach[i]).collect();
            if missing.is_empty() {
                spanning_tree_root = Some(*leader);
            } else {
                let agents = net.ids(missing);
                violations.push(Violation {
                    code: ViolationCode::NoSpanningTree,
                    message: format!(
                        "leader {} does not reach {{{}}} in the union graph",
                        net.agents()[*leader].label,
                        labels(&agents)
                    ),
                    agents,
                });
            }
        }
        many => {
            let agents = net.ids(many.iter().copied());
            violations.push(Violation {
                code: ViolationCode::MultipleLeaders,
                message: format!("union of layers has {} leaders {{{}}}; consensus is impossible", many.len(), labels(&agents)),
                agents,
            });
        }
    }

    for i in 0..n {
        let nb = net.neighbor_set(i, Scope::Union).expect("index in range");
        if nb.is_empty() {
            violations.push(Violation {
                code: ViolationCode::IsolatedWithoutSelfLoop,
                message: format!("isolated agent {} has no self-loop", net.agents()[i].label),
                agents: net.ids([i]),
            });
        }
    }

    ValidationReport {
        leaders_layer1: net.ids(net.leaders(Scope::Layer1)),
        leaders_layer2: net.ids(net.leaders(Scope::Layer2)),
        leaders_union: net.ids(leaders_union),
        spanning_tree_root: spanning_tree_root.map(|r| net.agents()[r].clone()),
        violations,
    }
}
