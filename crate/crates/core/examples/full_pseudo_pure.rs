//! Signal lost when the whole register is made pseudo-pure.
//!
//! Run with `cargo run --example full_pseudo_pure`.

use std::fmt::Write;

use subpure::linops::StateVector;
use subpure::spps::{build_full_pp, full_pp_ratio};

pub fn run_example() -> subpure::Result<String> {
    let mut out = String::new();
    writeln!(out, "N  alpha  ratio_total  N/(2^N-1)").unwrap();
    for n in 2..=8 {
        let (_, report) = build_full_pp(n, &StateVector::basis(1 << n, 0))?;
        let ratio = report.ratio_total.expect("full pseudo-pure reports its ratio");
        writeln!(
            out,
            "{n}  {}  {}  {}",
            report.alpha.exact.expect("rational alpha"),
            ratio.exact.expect("rational ratio"),
            full_pp_ratio(n)
        )
        .unwrap();
    }
    Ok(out)
}

fn main() -> subpure::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
