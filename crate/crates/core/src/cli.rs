//! Command implementations behind the `muxdyn` binary.
//!
//! Exit codes: 0 success, 1 assumption violation (or an analysis that the
//! assumptions should have made possible failed), 2 input or I/O error.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use crate::dynamics::{calibrate_u, simulate_against, BoundParameters, SimConfig};
use crate::error::Error;
use crate::io::{write_trajectory_csv, NetworkFile, RunConfig, RunSummary};
use crate::markov::analyze;
use crate::network::validate_assumptions;
use crate::stochastic::{vector_norm, VectorNorm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// What a command printed and how it exits.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CmdOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutput {
    fn fail(err: &Error) -> Self {
        Self { code: exit_code(err), stdout: String::new(), stderr: format!("error: {err}\n") }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::AssumptionViolated(_)
        | Error::MultipleClosedClasses { .. }
        | Error::Aperiodicity
        | Error::Reducible
        | Error::NumericalInconsistency(_)
        | Error::Calibration(_) => EXIT_VIOLATION,
        _ => EXIT_INPUT,
    }
}

fn json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

macro_rules! try_cmd {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return CmdOutput::fail(&Error::from(err)),
        }
    };
}

pub fn cmd_validate(network_path: &Path) -> CmdOutput {
    let (net, _) = try_cmd!(NetworkFile::load(network_path).and_then(|f| f.to_model()));
    let report = validate_assumptions(&net);

    let names = |ids: &[crate::network::AgentId]| ids.iter().map(|a| a.label.as_str()).collect::<Vec<_>>().join(", ");
    let mut text = String::new();
    text.push_str(&format!("leaders (layer 1): {{{}}}\n", names(&report.leaders_layer1)));
    text.push_str(&format!("leaders (layer 2): {{{}}}\n", names(&report.leaders_layer2)));
    text.push_str(&format!("leaders (union):   {{{}}}\n", names(&report.leaders_union)));
    match &report.spanning_tree_root {
        Some(r) => text.push_str(&format!("spanning tree root: {}\n", r.label)),
        None => text.push_str("spanning tree root: none\n"),
    }
    if report.is_valid() {
        text.push_str("assumptions: satisfied\n");
    }
    for v in &report.violations {
        text.push_str(&format!("violation {}: {}\n", serde_json::to_string(&v.code).unwrap().trim_matches('"'), v.message));
    }
    CmdOutput {
        code: if report.is_valid() { EXIT_OK } else { EXIT_VIOLATION },
        stdout: json(&report),
        stderr: text,
    }
}

pub fn cmd_analyze(network_path: &Path) -> CmdOutput {
    let (net, x0) = try_cmd!(NetworkFile::load(network_path).and_then(|f| f.to_model()));
    let report = try_cmd!(analyze(&net, x0.values()));
    CmdOutput { code: EXIT_OK, stdout: json(&report), stderr: String::new() }
}

pub fn cmd_simulate(network_path: &Path, config: &RunConfig) -> CmdOutput {
    let (net, x0) = try_cmd!(NetworkFile::load(network_path).and_then(|f| f.to_model()));
    let report = try_cmd!(analyze(&net, x0.values()));
    let sim = SimConfig { t_max: config.t_max, tol: config.tol };
    let mut tr = try_cmd!(simulate_against(&net, &x0, &sim, Some(&report.fixed_point)));
    let err = tr.err_series.clone().expect("reference supplied");

    let calibration = calibrate_u(&x0, &report.fixed_point, &err, report.q, report.a1_norm1);
    let mut stderr = String::new();
    match (&calibration, config.emit_bound) {
        (Ok(cal), true) => {
            let bp = try_cmd!(BoundParameters::new(
                cal.u_min_dominating,
                report.q,
                vector_norm(x0.values(), VectorNorm::Two),
                report.a1_norm1,
            ));
            tr.attach_bound(&bp);
        }
        (Err(e), true) => return CmdOutput::fail(&Error::Calibration(e.to_string())),
        (Err(e), false) => stderr.push_str(&format!("warning: {e}\n")),
        (Ok(_), false) => {}
    }

    let file = try_cmd!(File::create(&config.output_path));
    try_cmd!(write_trajectory_csv(BufWriter::new(file), &net, &tr, config.emit_bound));

    let cal = calibration.ok();
    let summary = RunSummary {
        converged_at: tr.converged_at,
        consensus_value: Some(report.consensus_value),
        q: Some(report.q),
        u_min_dominating: cal.map(|c| c.u_min_dominating),
        u_t0_prior: cal.map(|c| c.u_t0_prior),
        mode: Some(report.mode),
    };
    CmdOutput { code: EXIT_OK, stdout: json(&summary), stderr }
}

/// Writes the bidirectional counterpart of a network; opinions are copied.
/// With no output path the file goes to stdout.
pub fn cmd_bidirectional(network_path: &Path, out_path: Option<&Path>) -> CmdOutput {
    let (net, x0) = try_cmd!(NetworkFile::load(network_path).and_then(|f| f.to_model()));
    let report = validate_assumptions(&net);
    if !report.is_valid() {
        return CmdOutput::fail(&Error::AssumptionViolated(report.summary()));
    }
    let sym = NetworkFile::from_model(&net.symmetrize(), &x0).expect("same agent count");
    match out_path {
        Some(p) => {
            try_cmd!(sym.save(p));
            CmdOutput { code: EXIT_OK, stdout: String::new(), stderr: String::new() }
        }
        None => CmdOutput { code: EXIT_OK, stdout: sym.to_json(), stderr: String::new() },
    }
}
