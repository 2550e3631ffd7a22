//! Subsystem layouts `H ≅ L⊗S ⊕ R`, encoding unitaries and projectors.
//!
//! After decoding, the logical qubits occupy positions `1..=l`, the
//! syndrome qubits follow, and every remaining qubit sits in `|0⟩`:
//! `U_enc |ψ⟩_l |φ⟩_s |0…0⟩ = |ψ⟩_L |φ⟩_S`.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::linops::{ComplexMatrix, StateVector};
use crate::{Error, Result, TOLERANCE};

/// Canonical basis vectors whose Gram–Schmidt residual falls below this
/// are skipped during unitary completion.
const COMPLETION_RESIDUAL: f64 = 1e-8;

/// Dimensions of a single protected sector `L⊗S` plus the remainder `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsystemLayout {
    nqubits: usize,
    logical: usize,
    syndrome: usize,
}

impl SubsystemLayout {
    pub fn new(nqubits: usize, logical: usize, syndrome: usize) -> Result<Self> {
        if logical == 0 {
            return Err(Error::InvalidLayout("at least one logical qubit is required".into()));
        }
        if logical + syndrome > nqubits {
            return Err(Error::InvalidLayout(format!(
                "l + s = {} exceeds N = {nqubits}",
                logical + syndrome
            )));
        }
        if nqubits > 10 {
            return Err(Error::InvalidLayout(format!("N = {nqubits} exceeds the 10-qubit limit")));
        }
        Ok(Self {
            nqubits,
            logical,
            syndrome,
        })
    }

    /// Physical qubit count `N`.
    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    /// Logical qubit count `l`.
    pub fn logical(&self) -> usize {
        self.logical
    }

    /// Syndrome qubit count `s`.
    pub fn syndrome(&self) -> usize {
        self.syndrome
    }

    pub fn dim(&self) -> usize {
        1 << self.nqubits
    }

    /// `dim(L⊗S) = 2^{l+s}`.
    pub fn dim_protected(&self) -> usize {
        1 << (self.logical + self.syndrome)
    }

    /// `dim(R) = 2^N − 2^{l+s}`.
    pub fn dim_rest(&self) -> usize {
        self.dim() - self.dim_protected()
    }

    /// Qubits left in `|0⟩` after decoding.
    pub fn ancillas(&self) -> usize {
        self.nqubits - self.logical - self.syndrome
    }

    /// Decoded basis index of `|ψ⟩_l |φ⟩_s |0…0⟩`.
    pub fn protected_index(&self, psi: usize, phi: usize) -> usize {
        debug_assert!(psi < (1 << self.logical) && phi < (1 << self.syndrome));
        ((psi << self.syndrome) | phi) << self.ancillas()
    }

    /// Decoded indices spanning `L⊗S`, logical index major.
    pub fn protected_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dim_protected());
        for psi in 0..(1 << self.logical) {
            for phi in 0..(1 << self.syndrome) {
                out.push(self.protected_index(psi, phi));
            }
        }
        out
    }
}

/// Unitary completion of a partial isometry.
///
/// `columns` pins column `index` of the result to the given vector. The
/// free columns are filled, in ascending index order, by Gram–Schmidt over
/// the canonical basis vectors `e_0, e_1, …`, skipping any vector whose
/// residual is below `1e-8`.
pub fn complete_unitary(dim: usize, columns: &[(usize, StateVector)]) -> Result<ComplexMatrix> {
    crate::linops::check_power_of_two(dim)?;
    let mut assigned: Vec<Option<Vec<Complex64>>> = vec![None; dim];
    for (index, v) in columns {
        if *index >= dim {
            return Err(Error::NotOrthonormal(format!("column index {index} out of range")));
        }
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: v.dim(),
            });
        }
        if assigned[*index].is_some() {
            return Err(Error::NotOrthonormal(format!("column {index} given twice")));
        }
        assigned[*index] = Some(v.amplitudes().to_vec());
    }
    for (a, (ia, va)) in columns.iter().enumerate() {
        for (ib, vb) in columns.iter().skip(a + 1) {
            let overlap = va.inner(vb).norm();
            if overlap > TOLERANCE {
                return Err(Error::NotOrthonormal(format!(
                    "columns {ia} and {ib} overlap by {overlap:e}"
                )));
            }
        }
    }

    let mut basis: Vec<Vec<Complex64>> = columns.iter().map(|(_, v)| v.amplitudes().to_vec()).collect();
    let free_slots: Vec<usize> = (0..dim).filter(|&i| assigned[i].is_none()).collect();
    let mut free = free_slots.into_iter();
    let mut next_free = free.next();
    for k in 0..dim {
        let Some(slot) = next_free else { break };
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[k] = Complex64::new(1.0, 0.0);
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < COMPLETION_RESIDUAL {
            continue;
        }
        for z in &mut v {
            *z /= norm;
        }
        basis.push(v.clone());
        assigned[slot] = Some(v);
        next_free = free.next();
    }

    let cols: Vec<Vec<Complex64>> = assigned
        .into_iter()
        .map(|c| c.ok_or_else(|| Error::NotOrthonormal("completion ran out of basis vectors".into())))
        .collect::<Result<_>>()?;
    Ok(ComplexMatrix::from_fn(dim, |i, j| cols[j][i]))
}

/// Projectors onto the encoded subspace and its complement.
#[derive(Clone, Debug)]
pub struct SubspaceProjectors {
    pub p_logical: ComplexMatrix,
    pub p_rest: ComplexMatrix,
    /// Optional orthogonal split of `P_R` into error sectors.
    pub sectors: Vec<ComplexMatrix>,
}

impl SubspaceProjectors {
    pub fn from_logical(p_logical: ComplexMatrix) -> Self {
        let p_rest = &ComplexMatrix::identity(p_logical.dim()) - &p_logical;
        Self {
            p_logical,
            p_rest,
            sectors: Vec::new(),
        }
    }

    /// Projector onto the block labelled `L` or `R`.
    pub fn block(&self, block: Block) -> &ComplexMatrix {
        match block {
            Block::L => &self.p_logical,
            Block::R => &self.p_rest,
        }
    }

    pub fn dim_logical(&self) -> usize {
        self.p_logical.trace().re.round() as usize
    }

    pub fn dim_rest(&self) -> usize {
        self.p_rest.trace().re.round() as usize
    }
}

/// Subspace label used by the block decompositions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    L,
    R,
}

impl Block {
    pub const BOTH: [Block; 2] = [Block::L, Block::R];

    pub fn label(self) -> &'static str {
        match self {
            Block::L => "L",
            Block::R => "R",
        }
    }
}

/// Encoding unitary together with its layout.
#[derive(Clone, Debug)]
pub struct EncodingMap {
    layout: SubsystemLayout,
    unitary: ComplexMatrix,
    logical_basis: Vec<StateVector>,
    columns: Vec<(usize, StateVector)>,
}

impl EncodingMap {
    /// Encoding fixed by a partial isometry; every protected decoded index
    /// `|ψ⟩_l|φ⟩_s|0…0⟩` must be among the given columns.
    pub fn new(layout: SubsystemLayout, columns: Vec<(usize, StateVector)>) -> Result<Self> {
        for idx in layout.protected_indices() {
            if !columns.iter().any(|(i, _)| *i == idx) {
                return Err(Error::InvalidLayout(format!(
                    "column for protected index {idx} is not specified"
                )));
            }
        }
        let unitary = complete_unitary(layout.dim(), &columns)?;
        Ok(Self::assemble(layout, unitary, columns))
    }

    /// Encoding given by a full unitary.
    pub fn from_unitary(layout: SubsystemLayout, unitary: ComplexMatrix) -> Result<Self> {
        if unitary.dim() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                actual: unitary.dim(),
            });
        }
        if !unitary.is_unitary(TOLERANCE) {
            return Err(Error::NotOrthonormal("encoding matrix is not unitary".into()));
        }
        let columns = (0..layout.dim())
            .map(|j| {
                let col = (0..layout.dim()).map(|i| unitary[(i, j)]).collect();
                StateVector::normalized(col).map(|v| (j, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(layout, unitary, columns))
    }

    /// Trivial encoding: logical and syndrome qubits are the leading
    /// physical qubits.
    pub fn identity(layout: SubsystemLayout) -> Self {
        let unitary = ComplexMatrix::identity(layout.dim());
        let columns = layout
            .protected_indices()
            .into_iter()
            .map(|i| (i, StateVector::basis(layout.dim(), i)))
            .collect();
        Self::assemble(layout, unitary, columns)
    }

    fn assemble(
        layout: SubsystemLayout,
        unitary: ComplexMatrix,
        columns: Vec<(usize, StateVector)>,
    ) -> Self {
        let dim = layout.dim();
        let logical_basis = layout
            .protected_indices()
            .into_iter()
            .map(|j| {
                let col: Vec<Complex64> = (0..dim).map(|i| unitary[(i, j)]).collect();
                StateVector::normalized(col).expect("unitary column")
            })
            .collect();
        Self {
            layout,
            unitary,
            logical_basis,
            columns,
        }
    }

    /// Tensor power of a single-logical-qubit encoding.
    ///
    /// The result has layout `(n·l, l, s·l)` and keeps the decoded ordering
    /// convention: all logical qubits first, then every syndrome qubit, then
    /// the ancillas. Factor `i` occupies physical qubits `(i−1)n+1..=i·n`.
    pub fn tensor_power(single: &EncodingMap, copies: usize) -> Result<Self> {
        let sl = single.layout;
        if sl.logical != 1 {
            return Err(Error::InvalidLayout(
                "tensor construction needs one logical qubit per factor".into(),
            ));
        }
        if copies == 0 {
            return Err(Error::InvalidLayout("need at least one factor".into()));
        }
        let (n, s) = (sl.nqubits, sl.syndrome);
        let layout = SubsystemLayout::new(n * copies, copies, s * copies)?;
        let big_n = layout.nqubits;
        let anc = n - 1 - s;

        // Source position (1-based, decoded combined order) of every qubit in
        // factor-major order.
        let mut source = Vec::with_capacity(big_n);
        for i in 0..copies {
            source.push(i + 1);
            for k in 0..s {
                source.push(copies + i * s + k + 1);
            }
            for k in 0..anc {
                source.push(copies + copies * s + i * anc + k + 1);
            }
        }
        let dim = layout.dim();
        let mut perm = ComplexMatrix::zeros(dim);
        for c in 0..dim {
            let mut f = 0usize;
            for &src in &source {
                let bit = (c >> (big_n - src)) & 1;
                f = (f << 1) | bit;
            }
            perm[(f, c)] = Complex64::new(1.0, 0.0);
        }
        let factors = vec![single.unitary.clone(); copies];
        let product = crate::linops::kron_all(&factors);
        Self::from_unitary(layout, &product * &perm)
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// Images of `|ψ⟩_l|φ⟩_s|0…0⟩`, logical index major.
    pub fn logical_basis(&self) -> &[StateVector] {
        &self.logical_basis
    }

    /// Columns that define the encoding (before completion).
    pub fn columns(&self) -> &[(usize, StateVector)] {
        &self.columns
    }

    /// `U_enc ρ U_enc†`.
    pub fn encode(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(rho)?;
        Ok(rho.conjugate_by(&self.unitary))
    }

    /// `U_enc† ρ U_enc`.
    pub fn decode(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_dim(rho)?;
        Ok(rho.conjugate_by_adjoint(&self.unitary))
    }

    /// Encoded physical state of `|ψ⟩_l |φ⟩_s`.
    pub fn encode_state(&self, psi: &StateVector, phi: &StateVector) -> Result<StateVector> {
        let l = &self.layout;
        if psi.dim() != 1 << l.logical || phi.dim() != 1 << l.syndrome {
            return Err(Error::DimensionMismatch {
                expected: 1 << l.logical,
                actual: psi.dim(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); l.dim()];
        for (a, &pa) in psi.amplitudes().iter().enumerate() {
            for (b, &pb) in phi.amplitudes().iter().enumerate() {
                let coeff = pa * pb;
                let basis = &self.logical_basis[(a << l.syndrome) | b];
                for (out, v) in amps.iter_mut().zip(basis.amplitudes()) {
                    *out += coeff * v;
                }
            }
        }
        StateVector::normalized(amps)
    }

    /// Physical operator `U_enc (op_l ⊗ I_S ⊗ |0…0⟩⟨0…0|) U_enc†` for an
    /// operator acting on the logical qubits.
    pub fn logical_operator(&self, op: &ComplexMatrix) -> Result<ComplexMatrix> {
        let l = &self.layout;
        if op.dim() != 1 << l.logical {
            return Err(Error::DimensionMismatch {
                expected: 1 << l.logical,
                actual: op.dim(),
            });
        }
        let mut decoded = ComplexMatrix::zeros(l.dim());
        for a in 0..(1 << l.logical) {
            for b in 0..(1 << l.logical) {
                for phi in 0..(1 << l.syndrome) {
                    decoded[(l.protected_index(a, phi), l.protected_index(b, phi))] = op[(a, b)];
                }
            }
        }
        Ok(decoded.conjugate_by(&self.unitary))
    }

    pub fn projectors(&self) -> SubspaceProjectors {
        projectors(self)
    }

    fn check_dim(&self, rho: &ComplexMatrix) -> Result<()> {
        if rho.dim() != self.layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.layout.dim(),
                actual: rho.dim(),
            });
        }
        Ok(())
    }

    /// `{"n":…, "l":…, "s":…, "columns":[[index, [re,im], …], …]}`.
    pub fn to_json(&self) -> Value {
        let columns: Vec<Value> = self
            .columns
            .iter()
            .map(|(idx, v)| {
                let mut entry = vec![json!(idx)];
                entry.extend(v.amplitudes().iter().map(|z| json!([z.re, z.im])));
                Value::Array(entry)
            })
            .collect();
        json!({
            "n": self.layout.nqubits,
            "l": self.layout.logical,
            "s": self.layout.syndrome,
            "columns": columns,
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |name: &str| {
            value
                .get(name)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("missing integer field {name:?}")))
        };
        let layout = SubsystemLayout::new(field("n")?, field("l")?, field("s")?)?;
        let raw = value
            .get("columns")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"columns\" array".into()))?;
        let mut columns = Vec::with_capacity(raw.len());
        for entry in raw {
            let items = entry
                .as_array()
                .ok_or_else(|| Error::Parse("column entry must be an array".into()))?;
            let (head, amps) = items
                .split_first()
                .ok_or_else(|| Error::Parse("empty column entry".into()))?;
            let idx = head
                .as_u64()
                .ok_or_else(|| Error::Parse("column index must be an integer".into()))?;
            let amps = amps
                .iter()
                .map(|z| match z.as_array().map(Vec::as_slice) {
                    Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                        (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                        _ => Err(Error::Parse("amplitude parts must be numbers".into())),
                    },
                    _ => Err(Error::Parse("amplitude must be [re, im]".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            columns.push((idx as usize, StateVector::normalized(amps)?));
        }
        Self::new(layout, columns)
    }
}

/// `U_enc† ρ U_enc`.
pub fn decode_state(e: &EncodingMap, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    e.decode(rho)
}

/// `P_L = Σ_b |b⟩⟨b|` over the logical basis and `P_R = I − P_L`.
pub fn projectors(e: &EncodingMap) -> SubspaceProjectors {
    let dim = e.layout.dim();
    let mut p = ComplexMatrix::zeros(dim);
    for b in &e.logical_basis {
        p = &p + &b.projector();
    }
    SubspaceProjectors::from_logical(p)
}

/// Outcome of the zero-eigenvalue capacity count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CapacityCheck {
    pub holds: bool,
    /// `(2^l − 1)·d_s`.
    pub required: u128,
    /// `C(N, ⌊N/2⌋)`.
    pub available: u128,
    pub slack: i128,
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Checks `(2^l − 1)·d_s ≤ C(N, ⌊N/2⌋)`.
pub fn capacity_check(nqubits: usize, logical: usize, d_s: u64) -> CapacityCheck {
    let required = ((1u128 << logical) - 1) * d_s as u128;
    let available = binomial(nqubits as u64, nqubits as u64 / 2);
    CapacityCheck {
        holds: required <= available,
        required,
        available,
        slack: available as i128 - required as i128,
    }
}
