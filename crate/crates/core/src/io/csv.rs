use std::io::Write;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::network::MultiplexNetwork;

const SIG_DIGITS: i32 = 12;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside `[1e-5, 1e12)`.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    // rounding can bump the exponent (9.9999999999995 -> 10.0000000000)
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, v);
    let (mantissa, e) = sci.split_once('e').expect("exponent present");
    let e: i32 = e.parse().expect("integer exponent");
    let exp = exp.max(e);
    if (-5..SIG_DIGITS).contains(&exp) {
        let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), e)
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Writes `t,x_<label>...,err_inf[,bound]`, one row per recorded step, LF
/// line endings.
pub fn write_trajectory_csv<W: Write>(mut out: W, net: &MultiplexNetwork, tr: &Trajectory, emit_bound: bool) -> Result<()> {
    let err = tr
        .err_series
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("trajectory has no error series".into()))?;
    let bound = if emit_bound {
        Some(tr.bound_series.as_ref().ok_or_else(|| Error::InvalidArgument("trajectory has no bound series".into()))?)
    } else {
        None
    };

    let mut header = vec!["t".to_string()];
    header.extend(net.agents().iter().map(|a| format!("x_{}", a.label)));
    header.push("err_inf".into());
    if emit_bound {
        header.push("bound".into());
    }
    writeln!(out, "{}", header.join(","))?;

    for (t, x) in tr.states.iter().enumerate() {
        let mut row = vec![t.to_string()];
        row.extend(x.values().iter().map(|&v| format_float(v)));
        row.push(format_float(err[t]));
        if let Some(b) = bound {
            row.push(format_float(b[t]));
        }
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}
