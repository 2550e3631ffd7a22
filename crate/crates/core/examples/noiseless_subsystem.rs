//! Three-spin noiseless subsystem protecting against collective rotations.
//!
//! The logical qubit lives in the two `j = 1/2` doublets; the doublet index
//! `j_z` is the syndrome and stays mixed.
//!
//! Run with `cargo run --example noiseless_subsystem`.

use std::fmt::Write;

use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subpure::codes::{collective_rotation, make_code, protection_report, random_axis, CodeKind};
use subpure::linops::StateVector;
use subpure::spps::WeightParam;

pub fn run_example() -> subpure::Result<String> {
    let mut out = String::new();
    let ns = make_code(CodeKind::Ns3);
    let ground = [StateVector::basis(2, 0)];

    for a in [Rational64::new(1, 1), Rational64::new(1, 2)] {
        let (target, _, report) = ns.analyze(&ground, WeightParam::new(a)?)?;
        writeln!(
            out,
            "a = {a}: decoded {}  ratio_total {}",
            ns.decoded_polynomial(&target)?,
            report.ratio_total.and_then(|r| r.exact).expect("rational ratio")
        )
        .unwrap();
    }

    let rho = ns.build_spps(&ground, WeightParam::one())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let channel = collective_rotation(3, random_axis(&mut rng), 0.3 * k as f64)?;
        let p = protection_report(&ns, &channel, &rho)?;
        let c = p.logical_correlation.expect("logical block stays populated");
        worst = worst.max((c - 1.0).abs());
    }
    writeln!(out, "largest logical correlation loss over 20 rotations: {worst:.1e}").unwrap();
    Ok(out)
}

fn main() -> subpure::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
