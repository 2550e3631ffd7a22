//! Three-qubit bit-flip code started from mixed error sectors.
//!
//! Encodes `a|ψ⟩⟨ψ|_L + (1−a)(I − P_L)/6`, applies each single flip, decodes,
//! and prints the corrected qubit-1 deviation and the ancilla state. At
//! `a = 1` the ancillas show the syndrome; at `a = 1/4` they are maximally
//! mixed, yet qubit 1 still carries `a(|ψ⟩⟨ψ| − I/2)`.
//!
//! Run with `cargo run --example bitflip_code`.

use std::fmt::Write;

use num_rational::Rational64;
use subpure::codes::{bitflip_errors, make_code, qec_cycle, CodeKind};
use subpure::linops::{partial_trace, StateVector};
use subpure::pauli::expand;
use subpure::spps::{deviation, WeightParam};

pub fn run_example() -> subpure::Result<String> {
    let mut out = String::new();
    let qec = make_code(CodeKind::Qec3);
    let quarter = WeightParam::new(Rational64::new(1, 4))?;
    let (_, _, report) = qec.analyze(&[StateVector::basis(2, 0)], quarter)?;
    writeln!(
        out,
        "a* = {}  ratio_total = {}",
        report.a_star.exact.expect("rational optimum"),
        report.ratio_total.and_then(|r| r.exact).expect("rational ratio")
    )
    .unwrap();

    for w in [WeightParam::one(), quarter] {
        writeln!(out, "a = {w}").unwrap();
        let rho = qec.build_spps(&[StateVector::basis(2, 0)], w)?;
        for site in [None, Some(1), Some(2), Some(3)] {
            let decoded = qec_cycle(&qec, &rho, &bitflip_errors(3, site)?)?;
            let qubit1 = expand(&deviation(&partial_trace(&decoded, &[1])?));
            let ancillas = expand(&partial_trace(&decoded, &[2, 3])?);
            let label = site.map_or("none".to_string(), |q| format!("x{q}"));
            writeln!(out, "  {label}: qubit 1 deviation {qubit1}  ancillas {ancillas}").unwrap();
        }
    }
    Ok(out)
}

fn main() -> subpure::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
