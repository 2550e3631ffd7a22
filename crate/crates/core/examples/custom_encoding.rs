//! Custom layouts: capacity, closed-form spectrum and JSON round trip.
//!
//! Run with `cargo run --example custom_encoding`.

use std::fmt::Write;

use subpure::decomp::{capacity_check, EncodingMap, SubsystemLayout};
use subpure::linops::StateVector;
use subpure::spps::{direct_optimal_weight, optimize_weight, spectrum_direct, WeightParam, WeightProblem};

pub fn run_example() -> subpure::Result<String> {
    let mut out = String::new();
    let layout = SubsystemLayout::new(5, 2, 1)?;

    let cap = capacity_check(5, 2, 2);
    writeln!(out, "capacity: required {} available {} holds {}", cap.required, cap.available, cap.holds).unwrap();

    let a = WeightParam::new(direct_optimal_weight(&layout))?;
    writeln!(out, "a* = {a}").unwrap();
    for class in spectrum_direct(5, 2, 1, a)? {
        writeln!(out, "  eigenvalue {} x{}", class.value, class.multiplicity).unwrap();
    }
    let report = optimize_weight(WeightProblem::Direct(layout))?;
    writeln!(out, "alpha = {}  snr_proxy = {}", report.alpha.exact.unwrap(), report.snr_proxy.exact.unwrap()).unwrap();

    // A pair code written out column by column, then read back.
    let pair = SubsystemLayout::new(2, 1, 0)?;
    let e = EncodingMap::new(pair, vec![(0, StateVector::basis(4, 1)), (2, StateVector::basis(4, 2))])?;
    let text = e.to_json().to_string();
    let back = EncodingMap::from_json(&serde_json::from_str(&text).map_err(|x| subpure::Error::Parse(x.to_string()))?)?;
    writeln!(out, "round trip unitary error: {:.1e}", back.unitary().max_abs_diff(e.unitary())).unwrap();
    Ok(out)
}

fn main() -> subpure::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
