//! Control metrics: attenuated correlation, its split over the blocks of
//! `H = L ⊕ R`, and average fidelities on the full space and on `L`.
//!
//! Fidelities are normalized so that the ideal channel scores 1: the
//! state average is divided by the number of basis operators, and the Kraus
//! form divides by `d_L²`. Over a full orthonormal operator basis the state
//! average equals the entanglement fidelity `F_e`;
//! [`average_from_entanglement`] converts it to the average gate fidelity.

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::codes::NoiseChannel;
use crate::decomp::{Block, EncodingMap, SubspaceProjectors};
use crate::linops::{ComplexMatrix, StateVector};
use crate::pauli::PauliString;
use crate::spps::{build_spps_direct, WeightParam};
use crate::{Error, Result};

const DENOMINATOR_FLOOR: f64 = 1e-14;

/// `Tr(ρ_th ρ_exp) / √(Tr(ρ_th²) Tr(ρ_in²))`.
pub fn attenuated_correlation(
    rho_th: &ComplexMatrix,
    rho_exp: &ComplexMatrix,
    rho_in: &ComplexMatrix,
) -> Result<f64> {
    for m in [rho_exp, rho_in] {
        if m.dim() != rho_th.dim() {
            return Err(Error::DimensionMismatch {
                expected: rho_th.dim(),
                actual: m.dim(),
            });
        }
    }
    let denom = rho_th.trace_square() * rho_in.trace_square();
    if denom <= DENOMINATOR_FLOOR {
        return Err(Error::Degenerate("state with zero purity in correlation denominator".into()));
    }
    Ok(rho_th.trace_product(rho_exp).re / denom.sqrt())
}

/// Values indexed by a pair of blocks `(K, H)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockTable<T> {
    entries: [[T; 2]; 2],
}

fn block_index(b: Block) -> usize {
    match b {
        Block::L => 0,
        Block::R => 1,
    }
}

impl<T> BlockTable<T> {
    pub fn from_fn(mut f: impl FnMut(Block, Block) -> T) -> Self {
        Self {
            entries: [
                [f(Block::L, Block::L), f(Block::L, Block::R)],
                [f(Block::R, Block::L), f(Block::R, Block::R)],
            ],
        }
    }

    pub fn get(&self, k: Block, h: Block) -> &T {
        &self.entries[block_index(k)][block_index(h)]
    }

    /// `(label, value)` in the order LL, LR, RL, RR.
    pub fn iter(&self) -> impl Iterator<Item = (String, &T)> {
        Block::BOTH.into_iter().flat_map(move |k| {
            Block::BOTH
                .into_iter()
                .map(move |h| (format!("{}{}", k.label(), h.label()), self.get(k, h)))
        })
    }
}

impl<T: Serialize> Serialize for BlockTable<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        for (label, value) in self.iter() {
            map.serialize_entry(&label, value)?;
        }
        map.end()
    }
}

/// Kraus operator cut into `A_KH = P_K A P_H`.
#[derive(Clone, Debug)]
pub struct KrausBlocks {
    pub blocks: BlockTable<ComplexMatrix>,
}

impl KrausBlocks {
    pub fn get(&self, k: Block, h: Block) -> &ComplexMatrix {
        self.blocks.get(k, h)
    }

    /// `Σ_{K,H} A_KH`.
    pub fn reassemble(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.get(Block::L, Block::L).dim());
        for (_, m) in self.blocks.iter() {
            out = &out + m;
        }
        out
    }
}

fn check_projectors(channel: &NoiseChannel, proj: &SubspaceProjectors) -> Result<()> {
    if proj.p_logical.dim() != channel.dim() {
        return Err(Error::DimensionMismatch {
            expected: channel.dim(),
            actual: proj.p_logical.dim(),
        });
    }
    Ok(())
}

pub fn kraus_block_split(channel: &NoiseChannel, proj: &SubspaceProjectors) -> Result<Vec<KrausBlocks>> {
    check_projectors(channel, proj)?;
    Ok(channel
        .kraus()
        .iter()
        .map(|a| KrausBlocks {
            blocks: BlockTable::from_fn(|k, h| &(proj.block(k) * a) * proj.block(h)),
        })
        .collect())
}

/// Block correlations `C_KH` and their weights `α_KH`.
///
/// `C_KH` is absent when its denominator vanishes, e.g. when `ρ_in` has no
/// weight on `H`.
#[derive(Clone, Debug, Serialize)]
pub struct SubspaceCorrelations {
    pub c: BlockTable<Option<f64>>,
    pub alpha: BlockTable<f64>,
    /// `Tr(P_K ρ_th Σ_μ A_KH ρ_in A_KH†)` before normalization.
    #[serde(skip)]
    pub numerators: BlockTable<f64>,
}

impl SubspaceCorrelations {
    /// `Σ α_KH C_KH` over the present blocks.
    pub fn weighted_sum(&self) -> f64 {
        Block::BOTH
            .into_iter()
            .flat_map(|k| Block::BOTH.into_iter().map(move |h| (k, h)))
            .filter_map(|(k, h)| self.c.get(k, h).map(|c| c * self.alpha.get(k, h)))
            .sum()
    }
}

/// `C_KH = Tr(P_K ρ_th Σ_μ A_KH (P_H ρ_in P_H) A_KH†) / √(Tr((P_H ρ_in)²) Tr((P_K ρ_th)²))`
/// and `α_KH = √(Tr((P_H ρ_in)²) Tr((P_K ρ_th)²) / (Tr(ρ_in²) Tr(ρ_th²)))`,
/// so that `α_KH C_KH` sums to the attenuated correlation whenever the
/// cross terms vanish.
pub fn subspace_correlations(
    channel: &NoiseChannel,
    proj: &SubspaceProjectors,
    rho_th: &ComplexMatrix,
    rho_in: &ComplexMatrix,
) -> Result<SubspaceCorrelations> {
    let split = kraus_block_split(channel, proj)?;
    let purity_in = |h: Block| (proj.block(h) * rho_in).trace_square();
    let purity_th = |k: Block| (proj.block(k) * rho_th).trace_square();
    let total = rho_in.trace_square() * rho_th.trace_square();
    if total <= DENOMINATOR_FLOOR {
        return Err(Error::Degenerate("state with zero purity in correlation denominator".into()));
    }
    let numerators = BlockTable::from_fn(|k, h| {
        let input = rho_in.conjugate_by(proj.block(h));
        let mut evolved = ComplexMatrix::zeros(rho_in.dim());
        for blocks in &split {
            evolved = &evolved + &input.conjugate_by(blocks.get(k, h));
        }
        (proj.block(k) * rho_th).trace_product(&evolved).re
    });
    let c = BlockTable::from_fn(|k, h| {
        let denom = purity_in(h) * purity_th(k);
        (denom > DENOMINATOR_FLOOR).then(|| numerators.get(k, h) / denom.sqrt())
    });
    let alpha = BlockTable::from_fn(|k, h| (purity_in(h) * purity_th(k) / total).sqrt());
    Ok(SubspaceCorrelations { c, alpha, numerators })
}

/// Correlation observable on the logical qubits alone for the input
/// `ρ_in = a|ψ⟩⟨ψ|_L ⊗ I_S/2^s + (1−a) I_R/d_R`:
/// `a·C_LL + (1−a)·Tr(U_th ψ_L U_th† ℰ(I_R/d_R)) / (√Tr((P_L ρ_in P_L)²) √Tr((P_L ρ_th P_L)²))`
/// with `ψ_L = P_L ρ_in P_L / a`.
pub fn measured_logical_correlation(
    channel: &NoiseChannel,
    e: &EncodingMap,
    psi: &StateVector,
    w: WeightParam,
    u_th: &ComplexMatrix,
) -> Result<f64> {
    let a = w.as_f64();
    if a <= 0.0 {
        return Err(Error::InvalidWeight(
            "a = 0 leaves no logical state to correlate with".into(),
        ));
    }
    let rho_in = build_spps_direct(e, psi, w)?;
    let rho_th = rho_in.conjugate_by(u_th);
    let proj = e.projectors();
    let blocks = subspace_correlations(channel, &proj, &rho_th, &rho_in)?;
    let c_ll = blocks
        .c
        .get(Block::L, Block::L)
        .ok_or_else(|| Error::Degenerate("logical block of the input is empty".into()))?;
    if w.is_one() {
        return Ok(c_ll);
    }
    let in_ll = rho_in.conjugate_by(&proj.p_logical);
    let th_ll = rho_th.conjugate_by(&proj.p_logical);
    let psi_l = in_ll.scale_real(1.0 / a).conjugate_by(u_th);
    let d_r = proj.dim_rest() as f64;
    let mixed_rest = channel.apply(&proj.p_rest.scale_real(1.0 / d_r))?;
    let denom = (in_ll.trace_square() * th_ll.trace_square()).sqrt();
    let second = psi_l.trace_product(&mixed_rest).re / denom;
    Ok(a * c_ll + (1.0 - a) * second)
}

/// Checks `Tr(B_i† B_j) = δ_ij` within 1e-9.
pub fn check_orthonormal(basis: &[ComplexMatrix]) -> Result<()> {
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate().skip(i) {
            let overlap = x.adjoint().trace_product(y);
            let expected = if i == j { 1.0 } else { 0.0 };
            if (overlap - Complex64::new(expected, 0.0)).norm() > 1e-9 {
                return Err(Error::NotOrthonormal(format!(
                    "Tr(B{i}† B{j}) = {overlap}, expected {expected}"
                )));
            }
        }
    }
    Ok(())
}

/// `(1/|B|) Σ_j Tr((U_th ρ_j U_th†)† ℰ(ρ_j))` over an orthonormal operator
/// basis `B`.
pub fn average_gate_fidelity(
    channel: &NoiseChannel,
    u_th: &ComplexMatrix,
    basis: &[ComplexMatrix],
) -> Result<f64> {
    if basis.is_empty() {
        return Err(Error::NotOrthonormal("empty operator basis".into()));
    }
    check_orthonormal(basis)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for rho in basis {
        let ideal = rho.conjugate_by(u_th);
        sum += ideal.adjoint().trace_product(&channel.apply(rho)?);
    }
    Ok(sum.re / basis.len() as f64)
}

/// `(d·F_e + 1)/(d + 1)`.
pub fn average_from_entanglement(f_e: f64, dim: usize) -> f64 {
    let d = dim as f64;
    (d * f_e + 1.0) / (d + 1.0)
}

/// Pauli strings scaled by `2^{−N/2}`.
pub fn pauli_operator_basis(nqubits: usize) -> Vec<ComplexMatrix> {
    let scale = 1.0 / ((1u64 << nqubits) as f64).sqrt();
    PauliString::all(nqubits)
        .map(|p| p.to_matrix().scale_real(scale))
        .collect()
}

/// Matrix units `|v_i⟩⟨v_j|` over an orthonormal basis `{v_i}` of `L`.
pub fn logical_operator_basis(proj: &SubspaceProjectors) -> Result<Vec<ComplexMatrix>> {
    let eig = proj.p_logical.eigh()?;
    let vectors: Vec<Vec<Complex64>> = (0..proj.dim_logical()).map(|k| eig.vector(k)).collect();
    let mut out = Vec::with_capacity(vectors.len() * vectors.len());
    for u in &vectors {
        for v in &vectors {
            out.push(ComplexMatrix::outer_pair(u, v));
        }
    }
    Ok(out)
}

fn check_preserves_logical(u_th: &ComplexMatrix, proj: &SubspaceProjectors) -> Result<()> {
    let commutator = &(u_th * &proj.p_logical) - &(&proj.p_logical * u_th);
    let err = commutator.frobenius_norm();
    if err > 1e-9 {
        return Err(Error::InvalidChannel(format!(
            "ideal unitary does not preserve the logical subspace (‖[U, P_L]‖ = {err:e})"
        )));
    }
    Ok(())
}

/// `F̄_L` as the state average over an orthonormal operator basis of `L`.
pub fn logical_fidelity_states(
    channel: &NoiseChannel,
    u_th: &ComplexMatrix,
    proj: &SubspaceProjectors,
) -> Result<f64> {
    check_projectors(channel, proj)?;
    check_preserves_logical(u_th, proj)?;
    average_gate_fidelity(channel, u_th, &logical_operator_basis(proj)?)
}

/// `F̄_L = Σ_μ |Tr(U_th† A_μ,LL)|² / d_L²`.
pub fn logical_fidelity_kraus(
    channel: &NoiseChannel,
    u_th: &ComplexMatrix,
    proj: &SubspaceProjectors,
) -> Result<f64> {
    check_projectors(channel, proj)?;
    check_preserves_logical(u_th, proj)?;
    let d_l = proj.dim_logical() as f64;
    if d_l == 0.0 {
        return Err(Error::Degenerate("logical subspace is empty".into()));
    }
    let u_dag = u_th.adjoint();
    let total: f64 = kraus_block_split(channel, proj)?
        .iter()
        .map(|b| u_dag.trace_product(b.get(Block::L, Block::L)).norm_sqr())
        .sum();
    Ok(total / (d_l * d_l))
}

#[derive(Clone, Debug, Serialize)]
pub struct MetricsReport {
    pub c_total: f64,
    pub c_blocks: BlockTable<Option<f64>>,
    pub alpha_blocks: BlockTable<f64>,
    pub c_star_ll: Option<f64>,
    pub f_bar: f64,
    /// Average gate fidelity `(d·F̄ + 1)/(d + 1)`.
    pub f_bar_gate: f64,
    pub f_bar_l: f64,
    /// `F̄_L` recomputed as a state average over `L`.
    pub f_bar_l_states: f64,
}

/// All metrics for the subsystem pseudo-pure input of `e` at weight `w`,
/// evolved by `channel` against the ideal unitary `u_th`.
pub fn metrics_report(
    channel: &NoiseChannel,
    e: &EncodingMap,
    psi: &StateVector,
    w: WeightParam,
    u_th: &ComplexMatrix,
) -> Result<MetricsReport> {
    let rho_in = build_spps_direct(e, psi, w)?;
    let rho_th = rho_in.conjugate_by(u_th);
    let rho_exp = channel.apply(&rho_in)?;
    let proj = e.projectors();
    let blocks = subspace_correlations(channel, &proj, &rho_th, &rho_in)?;
    let c_star_ll = if w.as_f64() > 0.0 {
        Some(measured_logical_correlation(channel, e, psi, w, u_th)?)
    } else {
        None
    };
    let n = e.layout().nqubits();
    let f_bar = average_gate_fidelity(channel, u_th, &pauli_operator_basis(n))?;
    Ok(MetricsReport {
        c_total: attenuated_correlation(&rho_th, &rho_exp, &rho_in)?,
        c_blocks: blocks.c,
        alpha_blocks: blocks.alpha,
        c_star_ll,
        f_bar,
        f_bar_gate: average_from_entanglement(f_bar, 1 << n),
        f_bar_l: logical_fidelity_kraus(channel, u_th, &proj)?,
        f_bar_l_states: logical_fidelity_states(channel, u_th, &proj)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{bitflip_errors, collective_dephasing, make_code, CodeKind};
    use crate::decomp::SubsystemLayout;
    use crate::pauli::{pauli_matrix, Pauli};
    use num_rational::Rational64;
    use proptest::prelude::*;

    fn w(p: i64, q: i64) -> WeightParam {
        WeightParam::new(Rational64::new(p, q)).unwrap()
    }

    fn depolarizing_1q() -> NoiseChannel {
        let mut kraus = vec![ComplexMatrix::identity(2).scale_real(0.5)];
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            kraus.push(pauli_matrix(p).scale_real(0.5));
        }
        NoiseChannel::new(kraus, "depolarizing").unwrap()
    }

    /// Swaps `|00⟩ ↔ |01⟩` and `|10⟩ ↔ |11⟩`: maps the DFS pair onto its
    /// complement and back.
    fn dfs_swap() -> NoiseChannel {
        let mut u = ComplexMatrix::zeros(4);
        for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            u[(i, j)] = Complex64::new(1.0, 0.0);
        }
        NoiseChannel::unitary(u, "swap").unwrap()
    }

    #[test]
    fn correlation_examples() {
        let pure = StateVector::basis(4, 0).projector();
        assert!((attenuated_correlation(&pure, &pure, &pure).unwrap() - 1.0).abs() < 1e-15);
        let mixed = ComplexMatrix::identity(4).scale_real(0.25);
        assert!((attenuated_correlation(&pure, &mixed, &pure).unwrap() - 0.25).abs() < 1e-15);
        let zero = ComplexMatrix::zeros(4);
        assert!(attenuated_correlation(&zero, &pure, &pure).is_err());
    }

    #[test]
    fn identity_split() {
        let qec = make_code(CodeKind::Qec3);
        let proj = qec.projectors();
        let split = kraus_block_split(&NoiseChannel::identity(3), &proj).unwrap();
        assert!(split[0].get(Block::L, Block::L).max_abs_diff(&proj.p_logical) < 1e-15);
        assert!(split[0].get(Block::R, Block::R).max_abs_diff(&proj.p_rest) < 1e-15);
        assert!(split[0].get(Block::L, Block::R).frobenius_norm() < 1e-15);
    }

    #[test]
    fn bitflip_split_is_pure_swap() {
        let qec = make_code(CodeKind::Qec3);
        let split = kraus_block_split(&bitflip_errors(3, Some(2)).unwrap(), &qec.projectors()).unwrap();
        assert!(split[0].get(Block::L, Block::L).frobenius_norm() < 1e-15);
        assert!(split[0].get(Block::R, Block::L).frobenius_norm() > 1.0);
    }

    #[test]
    fn bitflip_empties_logical_numerator() {
        let qec = make_code(CodeKind::Qec3);
        let rho = StateVector::basis(8, 0).projector();
        let ch = bitflip_errors(3, Some(2)).unwrap();
        let blocks = subspace_correlations(&ch, &qec.projectors(), &rho, &rho).unwrap();
        assert_eq!(*blocks.numerators.get(Block::L, Block::L), 0.0);
        assert_eq!(*blocks.c.get(Block::L, Block::R), None);
    }

    #[test]
    fn identity_channel_blocks() {
        let qec = make_code(CodeKind::Qec3);
        let rho = StateVector::basis(8, 7).projector();
        let blocks = subspace_correlations(&NoiseChannel::identity(3), &qec.projectors(), &rho, &rho).unwrap();
        assert!((blocks.c.get(Block::L, Block::L).unwrap() - 1.0).abs() < 1e-12);
        assert!((blocks.alpha.get(Block::L, Block::L) - 1.0).abs() < 1e-12);
        assert_eq!(*blocks.c.get(Block::R, Block::R), None);
        assert_eq!(*blocks.alpha.get(Block::R, Block::R), 0.0);
    }

    #[test]
    fn depolarizing_fidelities() {
        let f_e = average_gate_fidelity(&depolarizing_1q(), &ComplexMatrix::identity(2), &pauli_operator_basis(1))
            .unwrap();
        assert!((f_e - 0.25).abs() < 1e-15);
        assert!((average_from_entanglement(f_e, 2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_orthonormal_basis() {
        let basis = vec![ComplexMatrix::identity(2), pauli_matrix(Pauli::Z)];
        assert!(matches!(
            average_gate_fidelity(&NoiseChannel::identity(1), &ComplexMatrix::identity(2), &basis),
            Err(Error::NotOrthonormal(_))
        ));
    }

    #[test]
    fn logical_fidelity_ignores_rest_scrambling() {
        // Identity on the DFS pair, σx-like swap of |00⟩ and |11⟩.
        let mut u = ComplexMatrix::zeros(4);
        for (i, j) in [(0, 3), (3, 0), (1, 1), (2, 2)] {
            u[(i, j)] = Complex64::new(1.0, 0.0);
        }
        let ch = NoiseChannel::unitary(u, "scramble R").unwrap();
        let proj = make_code(CodeKind::Dfs2).projectors();
        let id = ComplexMatrix::identity(4);
        assert!((logical_fidelity_kraus(&ch, &id, &proj).unwrap() - 1.0).abs() < 1e-12);
        assert!((logical_fidelity_states(&ch, &id, &proj).unwrap() - 1.0).abs() < 1e-12);
        assert!(average_gate_fidelity(&ch, &id, &pauli_operator_basis(2)).unwrap() < 1.0);
    }

    #[test]
    fn bitflip_logical_fidelity_zero() {
        let proj = make_code(CodeKind::Qec3).projectors();
        let ch = bitflip_errors(3, Some(2)).unwrap();
        assert_eq!(logical_fidelity_kraus(&ch, &ComplexMatrix::identity(8), &proj).unwrap(), 0.0);
    }

    #[test]
    fn measured_correlation_examples() {
        let dfs = make_code(CodeKind::Dfs2);
        let psi = StateVector::basis(2, 1);
        let id = ComplexMatrix::identity(4);
        for (p, q) in [(1, 4), (1, 2), (3, 4)] {
            let c = measured_logical_correlation(&NoiseChannel::identity(2), &dfs.encoding, &psi, w(p, q), &id)
                .unwrap();
            assert!((c - p as f64 / q as f64).abs() < 1e-12);
        }
        let mixing =
            measured_logical_correlation(&dfs_swap(), &dfs.encoding, &psi, w(1, 2), &id).unwrap();
        assert!(mixing > 0.0);

        let empty = EncodingMap::identity(SubsystemLayout::new(2, 1, 1).unwrap());
        assert!(measured_logical_correlation(
            &NoiseChannel::identity(2),
            &empty,
            &StateVector::basis(2, 0),
            w(1, 2),
            &id
        )
        .is_err());
    }

    #[test]
    fn report_serializes_block_keys() {
        let dfs = make_code(CodeKind::Dfs2);
        let report = metrics_report(
            &collective_dephasing(2, 0.4),
            &dfs.encoding,
            &StateVector::basis(2, 0),
            w(1, 2),
            &ComplexMatrix::identity(4),
        )
        .unwrap();
        let json = serde_json::to_value(&report).unwrap();
        let keys: Vec<_> = json["c_blocks"].as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["LL", "LR", "RL", "RR"]);
        assert!((report.f_bar_l - 1.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn reassembly_and_two_path_fidelity(phi in -5.0f64..5.0, p in 0.0f64..1.0) {
            let qec = make_code(CodeKind::Qec3);
            let proj = qec.projectors();
            let id = ComplexMatrix::identity(8);
            for ch in [collective_dephasing(3, phi), crate::codes::bitflip_channel(3, p).unwrap()] {
                for (a, blocks) in ch.kraus().iter().zip(kraus_block_split(&ch, &proj).unwrap()) {
                    prop_assert!(blocks.reassemble().max_abs_diff(a) < 1e-14);
                }
                let k = logical_fidelity_kraus(&ch, &id, &proj).unwrap();
                let s = logical_fidelity_states(&ch, &id, &proj).unwrap();
                prop_assert!((k - s).abs() < 1e-9);
            }
        }

        #[test]
        fn block_diagonal_decomposition(phi in -5.0f64..5.0, th in 0.0f64..3.2) {
            let dfs = make_code(CodeKind::Dfs2);
            let psi = StateVector::new(vec![
                Complex64::new((th / 2.0).cos(), 0.0),
                Complex64::new((th / 2.0).sin(), 0.0),
            ]).unwrap();
            let rho_in = dfs.build_spps(&[psi], WeightParam::one()).unwrap();
            let ch = collective_dephasing(2, phi);
            let blocks = subspace_correlations(&ch, &dfs.projectors(), &rho_in, &rho_in).unwrap();
            let c = attenuated_correlation(&rho_in, &ch.apply(&rho_in).unwrap(), &rho_in).unwrap();
            let ll = blocks.c.get(Block::L, Block::L).unwrap() * blocks.alpha.get(Block::L, Block::L);
            prop_assert!((c - ll).abs() < 1e-9);
            prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&c));
        }
    }
}
