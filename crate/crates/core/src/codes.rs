//! Built-in encodings, their noise channels and the bit-flip correction cycle.
//!
//! | code     | N | l | s | protects against        | readout  |
//! |----------|---|---|---|-------------------------|----------|
//! | `dfs2`   | 2 | 1 | 0 | collective dephasing    | physical |
//! | `dfs4x2` | 4 | 2 | 0 | collective dephasing    | physical |
//! | `ns3`    | 3 | 1 | 1 | collective rotations    | decoded  |
//! | `qec3`   | 3 | 1 | 0 | single bit flips        | physical |
//!
//! The readout frame is where `σ_z` magnetization is summed for
//! [`snr_ratio_total`]. The noiseless subsystem stores its logical qubit in
//! spin-coupling labels that carry no net physical magnetization, so its
//! signal is read after decoding.
//!
//! Bit-flip syndrome table of the `qec3` decoder (ancillas are qubits 2, 3):
//!
//! | error | ancillas |
//! |-------|----------|
//! | none  | `00`     |
//! | σx¹   | `11`     |
//! | σx²   | `10`     |
//! | σx³   | `01`     |

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::decomp::{EncodingMap, SubspaceProjectors, SubsystemLayout};
use crate::linops::{kron, kron_all, partial_trace, ComplexMatrix, StateVector};
use crate::pauli::{expand, pauli_matrix, Pauli, PauliPolynomial, PauliString};
use crate::spps::{
    alpha_bound, build_spps_direct, build_spps_tensor, deviation, direct_optimal_weight,
    prepare_scaled, snr_ratio_total, tensor_optimal_weight, SnrReport, WeightParam,
};
use crate::{Error, Result, TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Dfs2,
    Dfs4x2,
    Ns3,
    Qec3,
}

impl CodeKind {
    pub const ALL: [CodeKind; 4] = [CodeKind::Dfs2, CodeKind::Dfs4x2, CodeKind::Ns3, CodeKind::Qec3];

    pub fn name(self) -> &'static str {
        match self {
            CodeKind::Dfs2 => "dfs2",
            CodeKind::Dfs4x2 => "dfs4x2",
            CodeKind::Ns3 => "ns3",
            CodeKind::Qec3 => "qec3",
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CodeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown code {s:?} (expected dfs2, dfs4x2, ns3 or qec3)")))
    }
}

/// Frame in which the longitudinal signal of a code is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Readout {
    Physical,
    Decoded,
}

/// Noise the code is designed against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseFamily {
    CollectiveDephasing,
    CollectiveRotation,
    SingleBitFlip,
}

#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub kind: CodeKind,
    pub encoding: EncodingMap,
    /// Single-factor encoding of a tensor-product code.
    pub factor: Option<EncodingMap>,
    /// Qubit relabeling applied to decoded Pauli expansions for display:
    /// the letter on decoded qubit `q` moves to `relabel[q−1]`.
    pub relabel: Vec<usize>,
    /// Orthogonal error sectors inside `R`, if the code defines them.
    pub sectors: Vec<ComplexMatrix>,
    pub readout: Readout,
    pub noise_family: NoiseFamily,
}

fn real_state(dim: usize, entries: &[(usize, f64)]) -> StateVector {
    let mut amps = vec![0.0; dim];
    for &(i, x) in entries {
        amps[i] = x;
    }
    StateVector::from_real(&amps).expect("code basis vectors are normalized")
}

fn dfs2_encoding() -> EncodingMap {
    let layout = SubsystemLayout::new(2, 1, 0).expect("valid layout");
    EncodingMap::new(
        layout,
        vec![(0, StateVector::basis(4, 0b01)), (2, StateVector::basis(4, 0b10))],
    )
    .expect("orthonormal columns")
}

/// Spin-1/2 doublets of three spins. Qubits 2 and 3 are coupled first;
/// the logical label is their intermediate spin (0 or 1), the syndrome
/// label is `j_z` (`|0⟩` is spin up), and the third decoded qubit
/// separates `j = 1/2` (ancilla `0`) from `j = 3/2`.
fn ns3_encoding() -> EncodingMap {
    let layout = SubsystemLayout::new(3, 1, 1).expect("valid layout");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = 1.0 / 6f64.sqrt();
    let columns = vec![
        (0b000, real_state(8, &[(0b001, h), (0b010, -h)])),
        (0b010, real_state(8, &[(0b101, h), (0b110, -h)])),
        (0b100, real_state(8, &[(0b100, 2.0 * t), (0b001, -t), (0b010, -t)])),
        (0b110, real_state(8, &[(0b101, t), (0b110, t), (0b011, -2.0 * t)])),
    ];
    EncodingMap::new(layout, columns).expect("orthonormal columns")
}

fn permutation(n: usize, f: impl Fn(usize) -> usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(1 << n);
    for c in 0..(1 << n) {
        m[(f(c), c)] = Complex64::new(1.0, 0.0);
    }
    m
}

fn bit(n: usize, q: usize) -> usize {
    1 << (n - q)
}

/// Controlled-NOT on 1-based qubits.
pub fn cnot(n: usize, control: usize, target: usize) -> ComplexMatrix {
    permutation(n, |c| if c & bit(n, control) != 0 { c ^ bit(n, target) } else { c })
}

/// Doubly-controlled NOT on 1-based qubits.
pub fn toffoli(n: usize, c1: usize, c2: usize, target: usize) -> ComplexMatrix {
    let mask = bit(n, c1) | bit(n, c2);
    permutation(n, |c| if c & mask == mask { c ^ bit(n, target) } else { c })
}

/// Majority decoder: CNOT(1→2), CNOT(1→3), then Toffoli(2,3→1).
pub fn qec_decoder() -> ComplexMatrix {
    let first = &cnot(3, 1, 3) * &cnot(3, 1, 2);
    &toffoli(3, 2, 3, 1) * &first
}

fn qec3_encoding() -> EncodingMap {
    let layout = SubsystemLayout::new(3, 1, 0).expect("valid layout");
    EncodingMap::from_unitary(layout, qec_decoder().adjoint()).expect("permutation is unitary")
}

/// Projectors onto `σ_x^i span{|000⟩, |111⟩}` for `i = 1, 2, 3`.
fn qec3_sectors() -> Vec<ComplexMatrix> {
    (1..=3)
        .map(|q| {
            let flip = bit(3, q);
            ComplexMatrix::from_real_diag(
                &(0..8)
                    .map(|i| if i == flip || i == 0b111 ^ flip { 1.0 } else { 0.0 })
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

pub fn make_code(kind: CodeKind) -> CodeSpec {
    match kind {
        CodeKind::Dfs2 => CodeSpec {
            kind,
            encoding: dfs2_encoding(),
            factor: None,
            relabel: vec![1, 2],
            sectors: Vec::new(),
            readout: Readout::Physical,
            noise_family: NoiseFamily::CollectiveDephasing,
        },
        CodeKind::Dfs4x2 => {
            let single = dfs2_encoding();
            CodeSpec {
                kind,
                encoding: EncodingMap::tensor_power(&single, 2).expect("valid tensor power"),
                factor: Some(single),
                relabel: vec![1, 2, 3, 4],
                sectors: Vec::new(),
                readout: Readout::Physical,
                noise_family: NoiseFamily::CollectiveDephasing,
            }
        }
        CodeKind::Ns3 => CodeSpec {
            kind,
            encoding: ns3_encoding(),
            factor: None,
            relabel: vec![1, 3, 2],
            sectors: Vec::new(),
            readout: Readout::Decoded,
            noise_family: NoiseFamily::CollectiveRotation,
        },
        CodeKind::Qec3 => CodeSpec {
            kind,
            encoding: qec3_encoding(),
            factor: None,
            relabel: vec![1, 2, 3],
            sectors: qec3_sectors(),
            readout: Readout::Physical,
            noise_family: NoiseFamily::SingleBitFlip,
        },
    }
}

impl CodeSpec {
    pub fn layout(&self) -> &SubsystemLayout {
        self.encoding.layout()
    }

    pub fn nqubits(&self) -> usize {
        self.layout().nqubits()
    }

    pub fn projectors(&self) -> SubspaceProjectors {
        let mut p = self.encoding.projectors();
        p.sectors = self.sectors.clone();
        p
    }

    /// Optimal logical weight: `2^{s+1−N}` for direct codes, the tensor
    /// optimum for product codes.
    pub fn optimal_weight(&self) -> Result<WeightParam> {
        match &self.factor {
            None => WeightParam::new(direct_optimal_weight(self.layout())),
            Some(single) => {
                let sl = single.layout();
                let copies = self.layout().logical();
                Ok(tensor_optimal_weight(sl.nqubits(), sl.syndrome(), copies)?.0)
            }
        }
    }

    /// Target state for logical input `psi` at weight `w`.
    ///
    /// Direct codes take one state on all logical qubits. Product codes take
    /// one single-qubit state per factor, or one state shared by all factors.
    pub fn build_spps(&self, psi: &[StateVector], w: WeightParam) -> Result<ComplexMatrix> {
        match &self.factor {
            None => match psi {
                [single] => build_spps_direct(&self.encoding, single, w),
                _ => Err(Error::InvalidLayout(format!(
                    "{} takes one logical state, got {}",
                    self.kind,
                    psi.len()
                ))),
            },
            Some(single) => {
                let copies = self.layout().logical();
                let states: Vec<StateVector> = match psi.len() {
                    1 => vec![psi[0].clone(); copies],
                    n if n == copies => psi.to_vec(),
                    n => {
                        return Err(Error::InvalidLayout(format!(
                            "{} takes 1 or {copies} factor states, got {n}",
                            self.kind
                        )))
                    }
                };
                build_spps_tensor(single, &states, w)
            }
        }
    }

    /// State in which the code's signal is read.
    pub fn readout_frame(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        match self.readout {
            Readout::Physical => Ok(rho.clone()),
            Readout::Decoded => self.encoding.decode(rho),
        }
    }

    /// Pauli expansion of the decoded state, relabeled for display.
    pub fn decoded_polynomial(&self, rho: &ComplexMatrix) -> Result<PauliPolynomial> {
        Ok(expand(&self.encoding.decode(rho)?).permute_qubits(&self.relabel))
    }

    /// Builds the target, scales it to the α bound and reports its SNR.
    ///
    /// Returns `(target, prepared, report)`.
    pub fn analyze(
        &self,
        psi: &[StateVector],
        w: WeightParam,
    ) -> Result<(ComplexMatrix, ComplexMatrix, SnrReport)> {
        let n = self.nqubits();
        let target = self.build_spps(psi, w)?;
        let alpha = alpha_bound(&target, n)?;
        let prepared = prepare_scaled(&target, alpha.value);
        let ratio = snr_ratio_total(&self.readout_frame(&prepared)?, n)?;
        let a_star = self.optimal_weight()?;
        let regime = match &self.factor {
            None => None,
            Some(single) => Some(
                tensor_optimal_weight(
                    single.layout().nqubits(),
                    single.layout().syndrome(),
                    self.layout().logical(),
                )?
                .1,
            ),
        };
        let report = SnrReport {
            a: w.as_scalar(),
            a_star: a_star.as_scalar(),
            alpha,
            snr_proxy: crate::rational::Scalar::from_f64(
                w.as_f64() * alpha.value * self.layout().logical() as f64,
            ),
            ratio_total: Some(ratio),
            spectrum: deviation(&target).herm_spectrum()?,
            regime,
        };
        Ok((target, prepared, report))
    }
}

/// Completely positive trace-preserving map in Kraus form.
#[derive(Clone, Debug)]
pub struct NoiseChannel {
    kraus: Vec<ComplexMatrix>,
    label: String,
}

impl NoiseChannel {
    /// Checks `Σ A_μ†A_μ = I` within the crate tolerance.
    pub fn new(kraus: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidChannel(format!("{label}: no Kraus operators")))?;
        let dim = first.dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for a in &kraus {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: a.dim(),
                });
            }
            sum = &sum + &(&a.adjoint() * a);
        }
        let err = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if err > TOLERANCE {
            return Err(Error::InvalidChannel(format!(
                "{label}: Kraus operators are not trace preserving (deviation {err:e})"
            )));
        }
        Ok(Self { kraus, label })
    }

    pub fn unitary(u: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        Self::new(vec![u], label)
    }

    pub fn identity(nqubits: usize) -> Self {
        Self {
            kraus: vec![ComplexMatrix::identity(1 << nqubits)],
            label: "identity".into(),
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    /// `Σ_μ A_μ ρ A_μ†`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: rho.dim(),
            });
        }
        let mut out = ComplexMatrix::zeros(rho.dim());
        for a in &self.kraus {
            out = &out + &rho.conjugate_by(a);
        }
        Ok(out)
    }
}

/// `exp(−iφ J_z / 2)` with `J_z = Σ_i σ_z^i`.
pub fn collective_dephasing(nqubits: usize, phi: f64) -> NoiseChannel {
    let diag: Vec<Complex64> = (0..(1usize << nqubits))
        .map(|i| {
            let jz = nqubits as f64 - 2.0 * i.count_ones() as f64;
            Complex64::from_polar(1.0, -phi * jz / 2.0)
        })
        .collect();
    NoiseChannel {
        kraus: vec![ComplexMatrix::from_diag(&diag)],
        label: format!("collective-z(phi={phi})"),
    }
}

/// `exp(−iθ (n̂·J⃗)/2)`: the same single-spin rotation on every qubit.
pub fn collective_rotation(nqubits: usize, axis: [f64; 3], theta: f64) -> Result<NoiseChannel> {
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > TOLERANCE {
        return Err(Error::InvalidChannel(format!(
            "rotation axis must be a unit vector, |axis| = {norm}"
        )));
    }
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut u = ComplexMatrix::identity(2).scale_real(c);
    for (k, letter) in [Pauli::X, Pauli::Y, Pauli::Z].into_iter().enumerate() {
        u = &u + &pauli_matrix(letter).scale(Complex64::new(0.0, -s * axis[k]));
    }
    let factors = vec![u; nqubits];
    Ok(NoiseChannel {
        kraus: vec![kron_all(&factors)],
        label: format!(
            "collective(axis=[{}, {}, {}], theta={theta})",
            axis[0], axis[1], axis[2]
        ),
    })
}

/// Uniformly random unit vector.
pub fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    let axis = [r * phi.cos(), r * phi.sin(), z];
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    axis.map(|x| x / norm)
}

/// Deterministic error `σ_x^site`, or the identity for `None`.
pub fn bitflip_errors(nqubits: usize, site: Option<usize>) -> Result<NoiseChannel> {
    match site {
        None => Ok(NoiseChannel::identity(nqubits)),
        Some(q) if q == 0 || q > nqubits => Err(Error::QubitOutOfRange { index: q, nqubits }),
        Some(q) => Ok(NoiseChannel {
            kraus: vec![PauliString::single(nqubits, q, Pauli::X).to_matrix()],
            label: format!("x{q}"),
        }),
    }
}

/// `{√(1−p) I, √(p/N) σ_x^i}`: at most one flip, on a uniformly chosen qubit.
pub fn bitflip_channel(nqubits: usize, p: f64) -> Result<NoiseChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidChannel(format!("flip probability {p} is outside [0, 1]")));
    }
    let mut kraus = vec![ComplexMatrix::identity(1 << nqubits).scale_real((1.0 - p).sqrt())];
    let each = (p / nqubits as f64).sqrt();
    for q in 1..=nqubits {
        kraus.push(PauliString::single(nqubits, q, Pauli::X).to_matrix().scale_real(each));
    }
    NoiseChannel::new(kraus, format!("bitflip(p={p})"))
}

/// Applies `error`, then the majority decoder. Qubit 1 of the result holds
/// the corrected logical state, qubits 2 and 3 the syndrome.
pub fn qec_cycle(spec: &CodeSpec, rho: &ComplexMatrix, error: &NoiseChannel) -> Result<ComplexMatrix> {
    if spec.kind != CodeKind::Qec3 {
        return Err(Error::InvalidLayout(format!(
            "correction cycle needs the qec3 code, got {}",
            spec.kind
        )));
    }
    spec.encoding.decode(&error.apply(rho)?)
}

/// Replaces the syndrome qubits of a decoded `qec3` state by fresh `|00⟩`
/// ancillas and re-encodes, ready for another cycle.
pub fn reinitialize_ancillas(spec: &CodeSpec, decoded: &ComplexMatrix) -> Result<ComplexMatrix> {
    if spec.kind != CodeKind::Qec3 {
        return Err(Error::InvalidLayout(format!(
            "ancilla reset needs the qec3 code, got {}",
            spec.kind
        )));
    }
    let logical = partial_trace(decoded, &[1])?;
    let fresh = StateVector::basis(4, 0).projector();
    spec.encoding.encode(&kron(&logical, &fresh))
}

/// Normalized logical-qubit state of `rho`: decode, keep the block with all
/// ancillas in `|0⟩`, trace out the syndrome. `None` if the block is empty.
pub fn logical_marginal(e: &EncodingMap, rho: &ComplexMatrix) -> Result<Option<ComplexMatrix>> {
    let layout = e.layout();
    let decoded = e.decode(rho)?;
    let indices = layout.protected_indices();
    let block = ComplexMatrix::from_fn(indices.len(), |i, j| decoded[(indices[i], indices[j])]);
    let weight = block.trace().re;
    if weight < 1e-12 {
        return Ok(None);
    }
    let keep: Vec<usize> = (1..=layout.logical()).collect();
    let reduced = partial_trace(&block, &keep)?;
    Ok(Some(reduced.scale_real(1.0 / weight)))
}

/// `−Σ λ log₂ λ`.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    Ok(rho
        .herm_spectrum()?
        .into_iter()
        .filter(|&x| x > 1e-15)
        .map(|x| -x * x.log2())
        .sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct ProtectionReport {
    pub code: CodeKind,
    pub channel: String,
    /// `Tr(P_R ℰ(P_L ρ P_L))`.
    pub leakage: f64,
    /// Leakage relative to `Tr(P_L ρ P_L)`.
    pub leakage_fraction: Option<f64>,
    /// Normalized overlap of the logical state before and after the channel.
    pub logical_correlation: Option<f64>,
    /// Entropy of the decoded non-logical qubits, before and after.
    pub syndrome_entropy_before: f64,
    pub syndrome_entropy_after: f64,
    pub syndrome_entropy_change: f64,
}

fn syndrome_entropy(spec: &CodeSpec, rho: &ComplexMatrix) -> Result<f64> {
    let layout = spec.layout();
    let keep: Vec<usize> = (layout.logical() + 1..=layout.nqubits()).collect();
    let decoded = spec.encoding.decode(rho)?;
    von_neumann_entropy(&partial_trace(&decoded, &keep)?)
}

pub fn protection_report(
    spec: &CodeSpec,
    channel: &NoiseChannel,
    rho_spps: &ComplexMatrix,
) -> Result<ProtectionReport> {
    let p = spec.projectors();
    let inside = rho_spps.conjugate_by(&p.p_logical);
    let weight = inside.trace().re;
    let leakage = channel.apply(&inside)?.trace_product(&p.p_rest).re;
    let after = channel.apply(rho_spps)?;
    let logical_correlation = match (
        logical_marginal(&spec.encoding, rho_spps)?,
        logical_marginal(&spec.encoding, &after)?,
    ) {
        (Some(x), Some(y)) => {
            Some(x.trace_product(&y).re / (x.trace_square() * y.trace_square()).sqrt())
        }
        _ => None,
    };
    let before_s = syndrome_entropy(spec, rho_spps)?;
    let after_s = syndrome_entropy(spec, &after)?;
    Ok(ProtectionReport {
        code: spec.kind,
        channel: channel.label().to_string(),
        leakage,
        leakage_fraction: (weight > 1e-12).then(|| leakage / weight),
        logical_correlation,
        syndrome_entropy_before: before_s,
        syndrome_entropy_after: after_s,
        syndrome_entropy_change: after_s - before_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ket(bits: &[(usize, f64)], dim: usize) -> StateVector {
        real_state(dim, bits)
    }

    fn random_qubit(theta: f64, phi: f64) -> StateVector {
        StateVector::new(vec![
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ])
        .unwrap()
    }

    fn w(p: i64, q: i64) -> WeightParam {
        WeightParam::new(Rational64::new(p, q)).unwrap()
    }

    #[test]
    fn logical_bases() {
        let dfs = make_code(CodeKind::Dfs2);
        assert_eq!(dfs.encoding.logical_basis()[0], StateVector::basis(4, 0b01));
        assert_eq!(dfs.encoding.logical_basis()[1], StateVector::basis(4, 0b10));
        let qec = make_code(CodeKind::Qec3);
        let u = qec.encoding.unitary();
        assert_eq!(u.apply(StateVector::basis(8, 0).amplitudes())[0], Complex64::new(1.0, 0.0));
        assert_eq!(u.apply(StateVector::basis(8, 4).amplitudes())[7], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn ns3_unit_weight_decodes_to_product_form() {
        let ns = make_code(CodeKind::Ns3);
        let rho = ns.build_spps(&[StateVector::basis(2, 0)], WeightParam::one()).unwrap();
        let poly = ns.decoded_polynomial(&rho).unwrap();
        assert_eq!(poly.to_string(), "1/8*III + 1/8*ZII + 1/8*IZI + 1/8*ZZI");
    }

    #[test]
    fn collective_dephasing_examples() {
        let id = collective_dephasing(2, 0.0);
        assert!(id.kraus()[0].max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        let bell = ket(&[(0b01, 1.0), (0b10, 1.0)], 4);
        let bell = StateVector::normalized(bell.amplitudes().to_vec()).unwrap();
        let phi = 1.234;
        let ch = collective_dephasing(2, phi);
        let out = ch.apply(&bell.projector()).unwrap();
        assert!(out.max_abs_diff(&bell.projector()) < 1e-15);

        let plus = StateVector::from_real(&[
            std::f64::consts::FRAC_1_SQRT_2,
            0.0,
            0.0,
            std::f64::consts::FRAC_1_SQRT_2,
        ])
        .unwrap();
        let out = ch.apply(&plus.projector()).unwrap();
        let expected = Complex64::from_polar(0.5, -2.0 * phi);
        assert!((out[(0, 3)] - expected).norm() < 1e-15);
        assert!((ch.kraus()[0][(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rotation_about_z_is_dephasing() {
        let a = collective_rotation(3, [0.0, 0.0, 1.0], 0.7).unwrap();
        let b = collective_dephasing(3, 0.7);
        assert!(a.kraus()[0].max_abs_diff(&b.kraus()[0]) < 1e-15);
        assert!(collective_rotation(3, [1.0, 1.0, 0.0], 0.7).is_err());
        let id = collective_rotation(2, [1.0, 0.0, 0.0], 0.0).unwrap();
        assert!(id.kraus()[0].max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn bitflip_examples() {
        assert!(bitflip_errors(3, Some(4)).is_err());
        assert!(bitflip_errors(3, Some(0)).is_err());
        let none = bitflip_errors(3, None).unwrap();
        assert_eq!(none.kraus()[0], ComplexMatrix::identity(8));

        let qec = make_code(CodeKind::Qec3);
        let zero_l = StateVector::basis(8, 0);
        let flipped = bitflip_errors(3, Some(2)).unwrap().apply(&zero_l.projector()).unwrap();
        let sector = &qec.sectors[1];
        assert!(flipped.conjugate_by(sector).max_abs_diff(&flipped) < 1e-15);

        assert!(bitflip_channel(3, 0.3).is_ok());
        assert!(bitflip_channel(3, 1.3).is_err());
    }

    #[test]
    fn rejects_non_trace_preserving_kraus() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(NoiseChannel::new(vec![half], "bad"), Err(Error::InvalidChannel(_))));
    }

    #[test]
    fn syndrome_table() {
        let qec = make_code(CodeKind::Qec3);
        let psi = random_qubit(1.1, 0.4);
        let encoded = qec
            .encoding
            .encode_state(&psi, &StateVector::basis(1, 0))
            .unwrap()
            .projector();
        for (site, syndrome) in [(None, 0b00), (Some(1), 0b11), (Some(2), 0b10), (Some(3), 0b01)] {
            let out = qec_cycle(&qec, &encoded, &bitflip_errors(3, site).unwrap()).unwrap();
            let expected = kron(&psi.projector(), &StateVector::basis(4, syndrome).projector());
            assert!(out.max_abs_diff(&expected) < 1e-12, "site {site:?}");
        }
    }

    #[test]
    fn qec_cycle_rejects_other_codes() {
        let dfs = make_code(CodeKind::Dfs2);
        let rho = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(qec_cycle(&dfs, &rho, &NoiseChannel::identity(2)).is_err());
    }

    #[test]
    fn qec_spps_cycle_closed_form() {
        let qec = make_code(CodeKind::Qec3);
        let psi = random_qubit(0.8, 2.1);
        let a = 0.25;
        let rho = qec.build_spps(std::slice::from_ref(&psi), w(1, 4)).unwrap();
        for (site, syndrome) in [(Some(1), 0b11), (Some(2), 0b10), (Some(3), 0b01)] {
            let out = qec_cycle(&qec, &rho, &bitflip_errors(3, site).unwrap()).unwrap();
            let head = &psi.projector().scale_real(a) - &ComplexMatrix::identity(2).scale_real((1.0 - a) / 6.0);
            let expected = &kron(&head, &StateVector::basis(4, syndrome).projector())
                + &ComplexMatrix::identity(8).scale_real((1.0 - a) / 6.0);
            assert!(out.max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn reinitialized_ancillas_survive_second_error() {
        let qec = make_code(CodeKind::Qec3);
        let psi = random_qubit(2.0, 1.0);
        let rho = qec.build_spps(std::slice::from_ref(&psi), WeightParam::one()).unwrap();
        let once = qec_cycle(&qec, &rho, &bitflip_errors(3, Some(1)).unwrap()).unwrap();
        let fresh = reinitialize_ancillas(&qec, &once).unwrap();
        let twice = qec_cycle(&qec, &fresh, &bitflip_errors(3, Some(3)).unwrap()).unwrap();
        let marginal = partial_trace(&twice, &[1]).unwrap();
        assert!(marginal.max_abs_diff(&psi.projector()) < 1e-12);
    }

    #[test]
    fn dfs_protection_report() {
        let dfs = make_code(CodeKind::Dfs2);
        let rho = dfs.build_spps(&[random_qubit(0.3, 0.2)], w(1, 2)).unwrap();
        let report = protection_report(&dfs, &collective_dephasing(2, 0.9), &rho).unwrap();
        assert!(report.leakage.abs() < 1e-12);
        assert!((report.logical_correlation.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qec_flip_leaks_whole_sector() {
        let qec = make_code(CodeKind::Qec3);
        let rho = qec.build_spps(&[StateVector::basis(2, 0)], w(1, 4)).unwrap();
        let report = protection_report(&qec, &bitflip_errors(3, Some(2)).unwrap(), &rho).unwrap();
        assert!((report.leakage - 0.25).abs() < 1e-12);
        assert!((report.leakage_fraction.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ns3_rotation_keeps_logical_correlation() {
        let ns = make_code(CodeKind::Ns3);
        let rho = ns.build_spps(&[random_qubit(1.3, 0.6)], WeightParam::one()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ch = collective_rotation(3, random_axis(&mut rng), 2.2).unwrap();
        let report = protection_report(&ns, &ch, &rho).unwrap();
        assert!(report.leakage.abs() < 1e-12);
        assert!((report.logical_correlation.unwrap() - 1.0).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn dfs_logical_block_invariant(phi in -10.0f64..10.0, th in 0.0f64..3.2, ph in 0.0f64..6.3) {
            for kind in [CodeKind::Dfs2, CodeKind::Dfs4x2] {
                let code = make_code(kind);
                let rho = code.build_spps(&[random_qubit(th, ph)], WeightParam::one()).unwrap();
                let ch = collective_dephasing(code.nqubits(), phi);
                let out = ch.apply(&rho).unwrap();
                let pl = &code.projectors().p_logical;
                prop_assert!(out.conjugate_by(pl).max_abs_diff(&rho.conjugate_by(pl)) < 1e-12);
            }
        }

        #[test]
        fn ns3_logical_paulis_invariant(seed in any::<u64>(), theta in 0.0f64..6.3, th in 0.0f64..3.2, ph in 0.0f64..6.3) {
            let ns = make_code(CodeKind::Ns3);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ch = collective_rotation(3, random_axis(&mut rng), theta).unwrap();
            let rho = ns.build_spps(&[random_qubit(th, ph)], WeightParam::one()).unwrap();
            let out = ch.apply(&rho).unwrap();
            for letter in [Pauli::X, Pauli::Y, Pauli::Z] {
                let op = ns.encoding.logical_operator(&pauli_matrix(letter)).unwrap();
                let before = op.trace_product(&rho).re;
                let after = op.trace_product(&out).re;
                prop_assert!((before - after).abs() < 1e-9);
            }
        }

        #[test]
        fn channels_preserve_trace_and_hermiticity(p in 0.0f64..1.0, th in 0.0f64..3.2) {
            let rho = qec_spps_state(th);
            for ch in [bitflip_channel(3, p).unwrap(), collective_dephasing(3, th), collective_rotation(3, [0.6, 0.0, 0.8], p).unwrap()] {
                let out = ch.apply(&rho).unwrap();
                prop_assert!((out.trace().re - 1.0).abs() < 1e-12);
                prop_assert!(out.hermiticity_error() < 1e-12);
            }
        }
    }

    fn qec_spps_state(theta: f64) -> ComplexMatrix {
        make_code(CodeKind::Qec3)
            .build_spps(&[random_qubit(theta, 0.5)], w(1, 3))
            .unwrap()
    }
}
