//! Opinion dynamics on two-layer multiplex networks.
//!
//! Layer 1 is active at every step; layer 2 joins every `k`-th step
//! (`k = 2` by default), when each agent weighs both layers equally. Agents
//! adopt the equal-weight mean of their neighbors' opinions, which is the
//! best response of a quadratic coordination game.
//!
//! The crate covers:
//! - [`network`]: the multiplex model, leaders, communication classes and
//!   the structural assumptions that guarantee consensus;
//! - [`stochastic`]: adjacency matrices and the dense numeric kernel;
//! - [`markov`]: absorbing-chain analysis of the two-step matrix, giving
//!   the consensus value and the contraction factor `q`;
//! - [`dynamics`]: simulation, the coordination cost and the
//!   convergence-rate envelope;
//! - [`io`]: the JSON network format, CSV trajectories and summaries.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod markov;
pub mod network;
pub mod stochastic;

pub use error::{Error, Result};
