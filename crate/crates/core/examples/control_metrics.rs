//! Correlations and fidelities of noisy channels on encoded states.
//!
//! Run with `cargo run --example control_metrics`.

use std::fmt::Write;

use num_rational::Rational64;
use subpure::codes::{bitflip_errors, collective_dephasing, make_code, CodeKind, NoiseChannel};
use subpure::linops::{ComplexMatrix, StateVector};
use subpure::metrics::metrics_report;
use subpure::spps::WeightParam;

/// Drops round-off so exact zeros print without a sign.
fn tidy(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

pub fn run_example() -> subpure::Result<String> {
    let mut out = String::new();
    let cases = [
        (CodeKind::Dfs2, NoiseChannel::identity(2)),
        (CodeKind::Dfs2, collective_dephasing(2, 0.9)),
        (CodeKind::Qec3, bitflip_errors(3, Some(2))?),
    ];
    let half = WeightParam::new(Rational64::new(1, 2))?;
    for (kind, channel) in cases {
        let code = make_code(kind);
        let n = code.nqubits();
        let psi = StateVector::basis(2, 0);
        let m = metrics_report(&channel, &code.encoding, &psi, half, &ComplexMatrix::identity(1 << n))?;
        writeln!(
            out,
            "{kind} / {}: C = {:.4}  C*_LL = {:.4}  F = {:.4}  F_L = {:.4}",
            channel.label(),
            m.c_total,
            m.c_star_ll.unwrap_or(f64::NAN),
            tidy(m.f_bar),
            tidy(m.f_bar_l)
        )
        .unwrap();
    }
    Ok(out)
}

fn main() -> subpure::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
