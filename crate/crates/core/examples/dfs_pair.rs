//! Logical qubits in the decoherence-free pair `{|01⟩, |10⟩}`.
//!
//! Builds the one- and two-pair states at `a = 1/2`, compares their signal
//! with the full pseudo-pure state and checks that collective dephasing
//! leaves the logical block untouched.
//!
//! Run with `cargo run --example dfs_pair`.

use std::fmt::Write;

use num_rational::Rational64;
use subpure::codes::{collective_dephasing, make_code, protection_report, CodeKind};
use subpure::linops::StateVector;
use subpure::pauli::expand;
use subpure::spps::{deviation, full_pp_ratio, WeightParam};

pub fn run_example() -> subpure::Result<String> {
    let mut out = String::new();
    let half = WeightParam::new(Rational64::new(1, 2))?;
    let ground = StateVector::basis(2, 0);

    let pair = make_code(CodeKind::Dfs2);
    let rho = pair.build_spps(std::slice::from_ref(&ground), half)?;
    writeln!(out, "dfs2 deviation: {}", expand(&deviation(&rho))).unwrap();

    let two = make_code(CodeKind::Dfs4x2);
    let (target, _, report) = two.analyze(&[ground], half)?;
    writeln!(out, "dfs4x2 state: {}", expand(&target)).unwrap();
    writeln!(out, "dfs4x2 alpha: {}", report.alpha.exact.expect("rational alpha")).unwrap();
    writeln!(
        out,
        "dfs4x2 ratio_total: {} (full pseudo-pure: {})",
        report.ratio_total.and_then(|r| r.exact).expect("rational ratio"),
        full_pp_ratio(4)
    )
    .unwrap();

    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let phi = k as f64 * std::f64::consts::TAU / 20.0;
        let p = protection_report(&two, &collective_dephasing(4, phi), &target)?;
        worst = worst.max(p.leakage.abs());
    }
    writeln!(out, "largest leakage over 20 dephasing angles: {worst:.1e}").unwrap();
    Ok(out)
}

fn main() -> subpure::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
