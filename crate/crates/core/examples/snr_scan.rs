//! Optimal weight and signal of the dfs2 tensor construction versus size.
//!
//! Prints the same rows as `spps scan-snr --n 10`, with the regime of the
//! optimum and the factor-count threshold that separates the regimes.
//!
//! Run with `cargo run --example snr_scan`.

use std::fmt::Write;

use subpure::report::scan_rows;
use subpure::spps::tensor_threshold;

pub fn run_example() -> subpure::Result<String> {
    let mut out = String::new();
    writeln!(out, "regime threshold on the pair count: {:.4}", tensor_threshold(2, 0)).unwrap();
    writeln!(out, "N  a*  regime  spps  full_pp").unwrap();
    for row in scan_rows(10)? {
        writeln!(
            out,
            "{}  {:.6}  {:?}  {:.6}  {:.6}",
            row.n,
            row.a_star.value,
            row.regime.expect("tensor rows carry a regime"),
            row.spps_snr.value,
            row.full_pp_snr.value
        )
        .unwrap();
    }
    Ok(out)
}

fn main() -> subpure::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
