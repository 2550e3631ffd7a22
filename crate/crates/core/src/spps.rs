//! Full and subsystem pseudo-pure states.
//!
//! Every prepared state is written `I/2^N − α(ρ_target − I/2^N)` with unit
//! polarization, where `α` sits exactly at the spectral-norm bound
//! `‖ρ_eq‖ / ‖ρ_target − I/2^N‖`. All reported figures are ratios in which
//! the polarization cancels.

use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Num, One, Zero};
use serde::Serialize;

use crate::decomp::{EncodingMap, SubsystemLayout};
use crate::linops::{kron_all, ComplexMatrix, StateVector};
use crate::pauli::{Pauli, PauliString, ThermalModel};
use crate::rational::{snap, to_f64, Scalar};
use crate::{Error, Result, TOLERANCE};

/// Weight `a ∈ [0, 1]` placed on the logical sector.
///
/// Carries an exact rational form when one is known; optimal weights of
/// the tensor construction are generally irrational.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightParam {
    exact: Option<Rational64>,
    value: f64,
}

impl WeightParam {
    pub fn new(a: Rational64) -> Result<Self> {
        if a < Rational64::zero() || a > Rational64::one() {
            return Err(Error::InvalidWeight(format!("a = {a} is outside [0, 1]")));
        }
        Ok(Self {
            exact: Some(a),
            value: to_f64(a),
        })
    }

    /// Weight from a float, snapped to a small rational when possible.
    pub fn from_f64(a: f64) -> Result<Self> {
        match snap(a) {
            Some(r) => Self::new(r),
            None if (0.0..=1.0).contains(&a) => Ok(Self { exact: None, value: a }),
            None => Err(Error::InvalidWeight(format!("a = {a} is outside [0, 1]"))),
        }
    }

    pub fn from_scalar(a: Scalar) -> Result<Self> {
        match a.exact {
            Some(r) => Self::new(r),
            None => Self::from_f64(a.value),
        }
    }

    pub fn one() -> Self {
        Self {
            exact: Some(Rational64::one()),
            value: 1.0,
        }
    }

    pub fn exact(&self) -> Option<Rational64> {
        self.exact
    }

    pub fn as_f64(&self) -> f64 {
        self.value
    }

    pub fn as_scalar(&self) -> Scalar {
        Scalar {
            exact: self.exact,
            value: self.value,
        }
    }

    pub fn is_one(&self) -> bool {
        self.value == 1.0
    }

    fn require_exact(&self) -> Result<Rational64> {
        self.exact
            .ok_or_else(|| Error::InvalidWeight(format!("a = {} has no exact rational form", self.value)))
    }
}

impl fmt::Display for WeightParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{}", self.value),
        }
    }
}

/// Eigenvalue with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenClass<T> {
    pub value: T,
    pub multiplicity: usize,
}

impl EigenClass<Rational64> {
    pub fn to_f64(&self) -> EigenClass<f64> {
        EigenClass {
            value: to_f64(self.value),
            multiplicity: self.multiplicity,
        }
    }
}

/// Expands classes into a descending list of eigenvalues.
pub fn expand_classes(classes: &[EigenClass<f64>]) -> Vec<f64> {
    let mut out: Vec<f64> = classes
        .iter()
        .flat_map(|c| std::iter::repeat_n(c.value, c.multiplicity))
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Largest `|λ|` over non-empty classes.
pub fn class_norm<T: Copy + Into<f64>>(classes: &[EigenClass<T>]) -> f64 {
    classes
        .iter()
        .filter(|c| c.multiplicity > 0)
        .map(|c| c.value.into().abs())
        .fold(0.0, f64::max)
}

fn rational_norm(classes: &[EigenClass<Rational64>]) -> Rational64 {
    classes
        .iter()
        .filter(|c| c.multiplicity > 0)
        .map(|c| if c.value < Rational64::zero() { -c.value } else { c.value })
        .max()
        .unwrap_or_else(Rational64::zero)
}

/// Optimal-weight regime of the tensor construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TensorRegime {
    /// Few factors: the norm reaches its floor `2^{−N}` for `a ≤ 2^{s+1/l−n}`.
    Saturated,
    /// Many factors: optimum where the logical and remainder eigenvalues meet.
    Balanced,
    /// The remainder of each factor is empty, so `a = 1`.
    NoRemainder,
}

/// SNR figures of a prepared state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SnrReport {
    /// Weight at which the figures are evaluated.
    pub a: Scalar,
    /// Optimal weight for the same layout.
    pub a_star: Scalar,
    /// Scaling factor at the spectral-norm bound.
    pub alpha: Scalar,
    /// `a·α·l`.
    pub snr_proxy: Scalar,
    /// `Σ_i |Tr(σ_z^i ρ_P)| / N` of the α-scaled state in its readout frame.
    pub ratio_total: Option<Scalar>,
    /// Eigenvalues of the traceless part of the target state, descending.
    pub spectrum: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<TensorRegime>,
}

fn pow2<T: Num + Clone>(exp: i64) -> T {
    let two = T::one() + T::one();
    let mut out = T::one();
    for _ in 0..exp.unsigned_abs() {
        out = out * two.clone();
    }
    if exp < 0 {
        T::one() / out
    } else {
        out
    }
}

/// `ρ − I/dim`.
pub fn deviation(rho: &ComplexMatrix) -> ComplexMatrix {
    let shift = ComplexMatrix::identity(rho.dim()).scale_real(1.0 / rho.dim() as f64);
    rho - &shift
}

fn check_state(rho: &ComplexMatrix) -> Result<()> {
    let herm = rho.hermiticity_error();
    if herm > 1e-12 {
        return Err(Error::NotHermitian(herm));
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > TOLERANCE {
        return Err(Error::Degenerate(format!("state has trace {tr}, expected 1")));
    }
    Ok(())
}

/// Upper bound `‖ρ_eq‖ / ‖ρ_target − I/2^N‖` on the achievable scaling.
pub fn alpha_bound(rho_target: &ComplexMatrix, nqubits: usize) -> Result<Scalar> {
    if rho_target.dim() != 1 << nqubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << nqubits,
            actual: rho_target.dim(),
        });
    }
    check_state(rho_target)?;
    let norm = deviation(rho_target).spectral_norm()?;
    if norm < 1e-14 {
        return Err(Error::Degenerate(
            "target is the maximally mixed state; its deviation has zero norm".into(),
        ));
    }
    let rho_eq = to_f64(ThermalModel::unit(nqubits).rho_eq_norm());
    Ok(Scalar::from_f64(rho_eq / norm))
}

/// `I/2^N − α(ρ_target − I/2^N)`.
pub fn prepare_scaled(rho_target: &ComplexMatrix, alpha: f64) -> ComplexMatrix {
    let dim = rho_target.dim();
    let mixed = ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64);
    &mixed - &deviation(rho_target).scale_real(alpha)
}

/// Scales `rho_target` to the α bound and returns the prepared state with α.
pub fn prepare_at_bound(rho_target: &ComplexMatrix) -> Result<(ComplexMatrix, Scalar)> {
    let alpha = alpha_bound(rho_target, rho_target.nqubits())?;
    Ok((prepare_scaled(rho_target, alpha.value), alpha))
}

/// Signal magnitude `√(Tr(Σσ_z ρ)² + Tr(Σσ_x ρ)² + Tr(Σσ_y ρ)²)` summed over
/// `info_qubits` (1-based).
pub fn snr_signal(rho: &ComplexMatrix, info_qubits: &[usize]) -> Result<f64> {
    let n = rho.nqubits();
    let herm = rho.hermiticity_error();
    if herm > 1e-12 {
        return Err(Error::NotHermitian(herm));
    }
    if let Some(&q) = info_qubits.iter().find(|&&q| q == 0 || q > n) {
        return Err(Error::QubitOutOfRange { index: q, nqubits: n });
    }
    let total = |letter: Pauli| -> f64 {
        info_qubits
            .iter()
            .map(|&q| PauliString::single(n, q, letter).trace_with(rho).re)
            .sum()
    };
    let (x, y, z) = (total(Pauli::X), total(Pauli::Y), total(Pauli::Z));
    Ok((x * x + y * y + z * z).sqrt())
}

/// Total longitudinal signal of an α-scaled state relative to the thermal
/// state: `Σ_i |Tr(σ_z^i ρ_P)| / N` at unit polarization.
///
/// Per-spin magnitudes are summed so that antiparallel logical
/// encodings such as `σ_z^1 − σ_z^2` are not cancelled.
pub fn snr_ratio_total(rho_prepared: &ComplexMatrix, nqubits: usize) -> Result<Scalar> {
    if rho_prepared.dim() != 1 << nqubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << nqubits,
            actual: rho_prepared.dim(),
        });
    }
    let total: f64 = (1..=nqubits)
        .map(|q| PauliString::single(nqubits, q, Pauli::Z).trace_with(rho_prepared).re.abs())
        .sum();
    Ok(Scalar::from_f64(total / nqubits as f64))
}

/// Full pseudo-pure state `I/2^N − α(|ψ⟩⟨ψ| − I/2^N)` at the α bound.
pub fn build_full_pp(nqubits: usize, psi: &StateVector) -> Result<(ComplexMatrix, SnrReport)> {
    if psi.dim() != 1 << nqubits {
        return Err(Error::DimensionMismatch {
            expected: 1 << nqubits,
            actual: psi.dim(),
        });
    }
    let target = psi.projector();
    let (prepared, alpha) = prepare_at_bound(&target)?;
    let spectrum = deviation(&target).herm_spectrum()?;
    let proxy = Scalar::from_f64(alpha.value * nqubits as f64);
    let report = SnrReport {
        a: Scalar::exact(Rational64::one()),
        a_star: Scalar::exact(Rational64::one()),
        alpha,
        snr_proxy: proxy,
        ratio_total: Some(snr_ratio_total(&prepared, nqubits)?),
        spectrum,
        regime: None,
    };
    Ok((prepared, report))
}

/// Closed-form loss `N/(2^N − 1)` of a full pseudo-pure state.
pub fn full_pp_ratio(nqubits: usize) -> Rational64 {
    Rational64::new(nqubits as i64, (1i64 << nqubits) - 1)
}

/// Subsystem pseudo-pure state in the decoded frame:
/// `a(|ψ⟩⟨ψ| ⊗ I_S/2^s ⊗ |0…0⟩⟨0…0|) + (1−a)/dim(R) · (I − P_{L⊗S})`.
pub fn spps_decoded(
    layout: &SubsystemLayout,
    psi_logical: &StateVector,
    w: WeightParam,
) -> Result<ComplexMatrix> {
    let l = layout.logical();
    let s = layout.syndrome();
    if psi_logical.dim() != 1 << l {
        return Err(Error::DimensionMismatch {
            expected: 1 << l,
            actual: psi_logical.dim(),
        });
    }
    if layout.dim_rest() == 0 && !w.is_one() {
        return Err(Error::InvalidWeight(format!(
            "a = {w} needs a non-empty remainder, but dim(R) = 0"
        )));
    }
    let a = w.as_f64();
    let dim = layout.dim();
    let mut rho = ComplexMatrix::zeros(dim);
    let amps = psi_logical.amplitudes();
    let syndrome_weight = a / (1u64 << s) as f64;
    for x in 0..(1 << l) {
        for y in 0..(1 << l) {
            let c = amps[x] * amps[y].conj() * syndrome_weight;
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            for phi in 0..(1 << s) {
                rho[(layout.protected_index(x, phi), layout.protected_index(y, phi))] = c;
            }
        }
    }
    if layout.dim_rest() > 0 {
        let rest = (1.0 - a) / layout.dim_rest() as f64;
        let protected = layout.protected_indices();
        for i in 0..dim {
            if !protected.contains(&i) {
                rho[(i, i)] = Complex64::new(rest, 0.0);
            }
        }
    }
    Ok(rho)
}

/// Subsystem pseudo-pure state `a(|ψ⟩⟨ψ|_L ⊗ I_S/2^s) + (1−a)/(2^N − 2^{s+l}) I_R`
/// in the physical basis.
pub fn build_spps_direct(
    e: &EncodingMap,
    psi_logical: &StateVector,
    w: WeightParam,
) -> Result<ComplexMatrix> {
    let decoded = spps_decoded(e.layout(), psi_logical, w)?;
    e.encode(&decoded)
}

fn direct_classes<T: Num + Clone>(
    nqubits: usize,
    logical: usize,
    syndrome: usize,
    a: T,
) -> Vec<EigenClass<T>> {
    let floor: T = pow2(-(nqubits as i64));
    let dim_rest = (1usize << nqubits) - (1usize << (syndrome + logical));
    let mut classes = vec![
        EigenClass {
            value: a.clone() / pow2::<T>(syndrome as i64) - floor.clone(),
            multiplicity: 1 << syndrome,
        },
        EigenClass {
            value: T::zero() - floor.clone(),
            multiplicity: (1 << (syndrome + logical)) - (1 << syndrome),
        },
    ];
    if dim_rest > 0 {
        let mut d = T::zero();
        for _ in 0..dim_rest {
            d = d + T::one();
        }
        classes.push(EigenClass {
            value: (T::one() - a) / d - floor,
            multiplicity: dim_rest,
        });
    }
    classes
}

/// Closed-form spectrum of the traceless part of a direct subsystem
/// pseudo-pure state: `{a/2^s − 2^{−N}, −2^{−N}, (1−a)/(2^N−2^{s+l}) − 2^{−N}}`
/// with multiplicities `{2^s, 2^{s+l} − 2^s, 2^N − 2^{s+l}}`.
pub fn spectrum_direct(
    nqubits: usize,
    logical: usize,
    syndrome: usize,
    w: WeightParam,
) -> Result<Vec<EigenClass<Rational64>>> {
    let layout = SubsystemLayout::new(nqubits, logical, syndrome)?;
    if layout.dim_rest() == 0 && !w.is_one() {
        return Err(Error::InvalidWeight(format!(
            "a = {w} needs a non-empty remainder, but dim(R) = 0"
        )));
    }
    Ok(direct_classes(nqubits, logical, syndrome, w.require_exact()?))
}

/// Floating-point direct spectrum, for weights without an exact form.
pub fn spectrum_direct_f64(
    nqubits: usize,
    logical: usize,
    syndrome: usize,
    w: WeightParam,
) -> Result<Vec<EigenClass<f64>>> {
    let layout = SubsystemLayout::new(nqubits, logical, syndrome)?;
    if layout.dim_rest() == 0 && !w.is_one() {
        return Err(Error::InvalidWeight(format!(
            "a = {w} needs a non-empty remainder, but dim(R) = 0"
        )));
    }
    Ok(direct_classes(nqubits, logical, syndrome, w.as_f64()))
}

fn check_tensor(n: usize, s: usize, l: usize) -> Result<()> {
    if n <= s {
        return Err(Error::NoUsefulSolution(format!(
            "n = {n} physical qubits per factor cannot host s = {s} syndrome qubits and a logical qubit"
        )));
    }
    if l == 0 {
        return Err(Error::InvalidLayout("at least one factor is required".into()));
    }
    if n * l > 10 {
        return Err(Error::InvalidLayout(format!("N = {} exceeds the 10-qubit limit", n * l)));
    }
    Ok(())
}

/// Per-factor remainder dimension `2^n − 2^{s+1}`.
fn factor_rest(n: usize, s: usize) -> usize {
    (1 << n) - (1 << (s + 1))
}

fn tensor_classes<T: Num + Clone>(n: usize, s: usize, l: usize, a: T) -> Vec<EigenClass<T>> {
    let big_n = (n * l) as i64;
    let floor: T = pow2(-big_n);
    let rest = factor_rest(n, s);
    let logical_value = a.clone() / pow2::<T>(s as i64);
    let mut out = Vec::new();
    let mut used = 0usize;
    for p in 0..=l {
        if p > 0 && rest == 0 {
            break;
        }
        let rest_value = if rest > 0 {
            let mut d = T::zero();
            for _ in 0..rest {
                d = d + T::one();
            }
            (T::one() - a.clone()) / d
        } else {
            T::zero()
        };
        let mut product = T::one();
        for _ in 0..(l - p) {
            product = product * logical_value.clone();
        }
        for _ in 0..p {
            product = product * rest_value.clone();
        }
        let multiplicity =
            binomial(l, p) * (1usize << (s * (l - p))) * rest.pow(p as u32);
        used += multiplicity;
        out.push(EigenClass {
            value: product - floor.clone(),
            multiplicity,
        });
    }
    out.push(EigenClass {
        value: T::zero() - floor,
        multiplicity: (1usize << (n * l)) - used,
    });
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form spectrum of the traceless part of the tensor construction:
/// `(a/2^s)^{l−p} ((1−a)/(2^n−2^{s+1}))^p − 2^{−N}` for `p = 0..=l`, plus
/// `−2^{−N}` for every product that involves a zero eigenvalue.
pub fn spectrum_tensor(
    n: usize,
    s: usize,
    l: usize,
    w: WeightParam,
) -> Result<Vec<EigenClass<Rational64>>> {
    check_tensor(n, s, l)?;
    if factor_rest(n, s) == 0 && !w.is_one() {
        return Err(Error::InvalidWeight(format!(
            "a = {w} needs a non-empty remainder in each factor"
        )));
    }
    Ok(tensor_classes(n, s, l, w.require_exact()?))
}

/// Floating-point tensor spectrum, for weights without an exact form.
pub fn spectrum_tensor_f64(n: usize, s: usize, l: usize, w: WeightParam) -> Result<Vec<EigenClass<f64>>> {
    check_tensor(n, s, l)?;
    if factor_rest(n, s) == 0 && !w.is_one() {
        return Err(Error::InvalidWeight(format!(
            "a = {w} needs a non-empty remainder in each factor"
        )));
    }
    Ok(tensor_classes(n, s, l, w.as_f64()))
}

/// Tensor product of per-factor direct states, one logical qubit each.
///
/// `psi` holds one logical state per factor; all factors share the weight.
pub fn build_spps_tensor(
    e_single: &EncodingMap,
    psi: &[StateVector],
    w: WeightParam,
) -> Result<ComplexMatrix> {
    let layout = e_single.layout();
    if layout.logical() != 1 {
        return Err(Error::InvalidLayout(
            "tensor construction needs one logical qubit per factor".into(),
        ));
    }
    check_tensor(layout.nqubits(), layout.syndrome(), psi.len())?;
    let factors = psi
        .iter()
        .map(|p| build_spps_direct(e_single, p, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(kron_all(&factors))
}

/// Direct-construction SNR figures at weight `w`, from the closed-form spectrum.
pub fn direct_report(layout: &SubsystemLayout, w: WeightParam) -> Result<SnrReport> {
    let (n, l, s) = (layout.nqubits(), layout.logical(), layout.syndrome());
    let a_star = Scalar::exact(direct_optimal_weight(layout));
    match w.exact() {
        Some(a) => {
            let classes = spectrum_direct(n, l, s, w)?;
            let alpha = ThermalModel::unit(n).rho_eq_norm() / rational_norm(&classes);
            let spectrum = expand_classes(&classes.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
            Ok(SnrReport {
                a: Scalar::exact(a),
                a_star,
                alpha: Scalar::exact(alpha),
                snr_proxy: Scalar::exact(a * alpha * Rational64::from_integer(l as i64)),
                ratio_total: None,
                spectrum,
                regime: None,
            })
        }
        None => {
            let classes = spectrum_direct_f64(n, l, s, w)?;
            let alpha = n as f64 * 2f64.powi(-(n as i32)) / class_norm(&classes);
            Ok(SnrReport {
                a: w.as_scalar(),
                a_star,
                alpha: Scalar::from_f64(alpha),
                snr_proxy: Scalar::from_f64(w.as_f64() * alpha * l as f64),
                ratio_total: None,
                spectrum: expand_classes(&classes),
                regime: None,
            })
        }
    }
}

/// `a* = 2^{s+1−N}`, or `1` when the remainder is empty.
pub fn direct_optimal_weight(layout: &SubsystemLayout) -> Rational64 {
    if layout.dim_rest() == 0 {
        return Rational64::one();
    }
    pow2(layout.syndrome() as i64 + 1 - layout.nqubits() as i64)
}

/// Threshold `−1/log₂(1 − 2^{s−n})` on the factor count separating the
/// two tensor regimes.
pub fn tensor_threshold(n: usize, s: usize) -> f64 {
    -1.0 / (1.0 - 2f64.powi(s as i32 - n as i32)).log2()
}

/// Optimal weight of the tensor construction and its regime.
pub fn tensor_optimal_weight(n: usize, s: usize, l: usize) -> Result<(WeightParam, TensorRegime)> {
    check_tensor(n, s, l)?;
    if factor_rest(n, s) == 0 {
        return Ok((WeightParam::one(), TensorRegime::NoRemainder));
    }
    if (l as f64) <= tensor_threshold(n, s) {
        // 2^{s + 1/l − n}
        let a = 2f64.powf(s as f64 + 1.0 / l as f64 - n as f64);
        let w = if l == 1 {
            WeightParam::new(pow2::<Rational64>(s as i64 + 1 - n as i64))?
        } else {
            WeightParam::from_f64(a)?
        };
        Ok((w, TensorRegime::Saturated))
    } else {
        let a = Rational64::new(1 << s, (1 << n) - (1 << s));
        Ok((WeightParam::new(a)?, TensorRegime::Balanced))
    }
}

/// Closed-form optimal `a·α` of the tensor construction.
///
/// Saturated regime: `N·2^{s+1/l−n}`. Balanced regime:
/// `N·2^s(2^n−2^s)^{l−1} / (2^N − (2^n−2^s)^l)`.
pub fn tensor_optimal_signal(n: usize, s: usize, l: usize) -> Result<f64> {
    let (_, regime) = tensor_optimal_weight(n, s, l)?;
    let big_n = (n * l) as f64;
    Ok(match regime {
        TensorRegime::NoRemainder => {
            let classes = tensor_classes(n, s, l, 1.0);
            big_n * 2f64.powi(-((n * l) as i32)) / class_norm(&classes)
        }
        TensorRegime::Saturated => big_n * 2f64.powf(s as f64 + 1.0 / l as f64 - n as f64),
        TensorRegime::Balanced => {
            let gap = 2f64.powi(n as i32) - 2f64.powi(s as i32);
            big_n * 2f64.powi(s as i32) * gap.powi(l as i32 - 1)
                / (2f64.powi((n * l) as i32) - gap.powi(l as i32))
        }
    })
}

/// Tensor-construction SNR figures at weight `a`, from the closed-form spectrum.
pub fn tensor_report(n: usize, s: usize, l: usize, w: WeightParam) -> Result<SnrReport> {
    let (a_star, regime) = tensor_optimal_weight(n, s, l)?;
    let big_n = n * l;
    let classes: Vec<EigenClass<f64>> = match w.exact() {
        Some(_) => spectrum_tensor(n, s, l, w)?.iter().map(|c| c.to_f64()).collect(),
        None => spectrum_tensor_f64(n, s, l, w)?,
    };
    let norm = class_norm(&classes);
    let alpha = big_n as f64 * 2f64.powi(-(big_n as i32)) / norm;
    Ok(SnrReport {
        a: w.as_scalar(),
        a_star: a_star.as_scalar(),
        alpha: Scalar::from_f64(alpha),
        snr_proxy: Scalar::from_f64(w.as_f64() * alpha * l as f64),
        ratio_total: None,
        spectrum: expand_classes(&classes),
        regime: Some(regime),
    })
}

/// What to optimize the logical weight for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightProblem {
    /// One protected sector `L⊗S ⊕ R`.
    Direct(SubsystemLayout),
    /// `l` factors of one logical qubit in `n` physical qubits with `s`
    /// syndrome qubits each.
    Tensor { n: usize, s: usize, l: usize },
}

/// Optimal weight and the SNR figures it yields.
pub fn optimize_weight(problem: WeightProblem) -> Result<SnrReport> {
    match problem {
        WeightProblem::Direct(layout) => {
            direct_report(&layout, WeightParam::new(direct_optimal_weight(&layout))?)
        }
        WeightProblem::Tensor { n, s, l } => {
            let (a_star, _) = tensor_optimal_weight(n, s, l)?;
            tensor_report(n, s, l, a_star)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::expand;

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    fn w(p: i64, q: i64) -> WeightParam {
        WeightParam::new(r(p, q)).unwrap()
    }

    fn ground(dim: usize) -> StateVector {
        StateVector::basis(dim, 0)
    }

    fn dfs2() -> EncodingMap {
        let layout = SubsystemLayout::new(2, 1, 0).unwrap();
        EncodingMap::new(
            layout,
            vec![(0, StateVector::basis(4, 1)), (2, StateVector::basis(4, 2))],
        )
        .unwrap()
    }

    /// Brute-force norm of the tensor deviation: product of per-factor
    /// decoded diagonals over every basis index.
    fn brute_force_tensor_norm(n: usize, s: usize, l: usize, a: f64) -> f64 {
        let rest = ((1 << n) - (1 << (s + 1))) as f64;
        let factor: Vec<f64> = (0..(1usize << n))
            .map(|i| {
                let anc_bits = i & ((1 << (n - 1 - s)) - 1);
                if anc_bits == 0 {
                    if i >> (n - 1) == 0 {
                        a / (1 << s) as f64
                    } else {
                        0.0
                    }
                } else {
                    (1.0 - a) / rest
                }
            })
            .collect();
        let floor = 2f64.powi(-((n * l) as i32));
        let mut norm: f64 = 0.0;
        for idx in 0..(1usize << (n * l)) {
            let mut prod = 1.0;
            for k in 0..l {
                prod *= factor[(idx >> (n * (l - 1 - k))) & ((1 << n) - 1)];
            }
            norm = norm.max((prod - floor).abs());
        }
        norm
    }

    fn grid_scan(objective: impl Fn(f64) -> f64) -> (f64, f64) {
        (0..=10_000)
            .map(|k| k as f64 * 1e-4)
            .map(|a| (a, objective(a)))
            .fold((0.0, f64::MIN), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    #[test]
    fn weight_bounds() {
        assert!(WeightParam::new(r(3, 2)).is_err());
        assert!(WeightParam::new(r(-1, 2)).is_err());
        assert!(WeightParam::new(r(0, 1)).is_ok());
    }

    #[test]
    fn full_pp_losses() {
        for (n, expected) in [(2, r(2, 3)), (3, r(3, 7)), (4, r(4, 15))] {
            let (rho, report) = build_full_pp(n, &ground(1 << n)).unwrap();
            assert_eq!(report.ratio_total.unwrap().exact, Some(expected));
            assert_eq!(report.alpha.exact, Some(expected));
            assert!((rho.trace().re - 1.0).abs() < 1e-12);
            assert!(report.spectrum.iter().sum::<f64>().abs() < 1e-10);
        }
    }

    #[test]
    fn dfs_pair_half_weight_deviation() {
        let rho = build_spps_direct(&dfs2(), &ground(2), w(1, 2)).unwrap();
        let p = expand(&deviation(&rho));
        assert_eq!(p.to_string(), "1/8*ZI - 1/8*IZ");
    }

    #[test]
    fn qec_quarter_weight_diagonal() {
        // Repetition code with the identity completion is enough to check
        // the diagonal weights: |000⟩ ↦ 1/4, |111⟩ ↦ 0, the rest 1/8.
        let layout = SubsystemLayout::new(3, 1, 0).unwrap();
        let e = EncodingMap::new(
            layout,
            vec![(0, StateVector::basis(8, 0)), (4, StateVector::basis(8, 7))],
        )
        .unwrap();
        let rho = build_spps_direct(&e, &ground(2), w(1, 4)).unwrap();
        let diag: Vec<f64> = rho.diagonal().iter().map(|z| z.re).collect();
        assert_eq!(diag, vec![0.25, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.0]);
    }

    #[test]
    fn unit_weight_is_pure_on_logical_sector() {
        let layout = SubsystemLayout::new(3, 1, 1).unwrap();
        let rho = spps_decoded(&layout, &ground(2), WeightParam::one()).unwrap();
        let diag: Vec<f64> = rho.diagonal().iter().map(|z| z.re).collect();
        assert_eq!(diag, vec![0.5, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn empty_remainder_requires_unit_weight() {
        let layout = SubsystemLayout::new(2, 1, 1).unwrap();
        let e = EncodingMap::identity(layout);
        assert!(matches!(
            build_spps_direct(&e, &ground(2), w(1, 2)),
            Err(Error::InvalidWeight(_))
        ));
        assert!(build_spps_direct(&e, &ground(2), WeightParam::one()).is_ok());
        assert!(spectrum_direct(2, 1, 1, w(1, 2)).is_err());
    }

    #[test]
    fn direct_spectrum_examples() {
        let classes = spectrum_direct(3, 1, 0, w(1, 4)).unwrap();
        let values: Vec<_> = classes.iter().map(|c| c.value).collect();
        assert_eq!(values, vec![r(1, 8), r(-1, 8), r(0, 1)]);
        let mults: Vec<_> = classes.iter().map(|c| c.multiplicity).collect();
        assert_eq!(mults, vec![1, 1, 6]);

        let classes = spectrum_direct(3, 1, 1, w(1, 2)).unwrap();
        let values: Vec<_> = classes.iter().map(|c| c.value).collect();
        assert_eq!(values, vec![r(1, 8), r(-1, 8), r(0, 1)]);

        for (n, l, s) in [(3, 1, 0), (4, 1, 1), (5, 2, 1)] {
            let layout = SubsystemLayout::new(n, l, s).unwrap();
            let a = direct_optimal_weight(&layout);
            let classes = spectrum_direct(n, l, s, WeightParam::new(a).unwrap()).unwrap();
            assert_eq!(classes[0].value, r(1, 1 << n));
        }
    }

    #[test]
    fn direct_spectrum_matches_numeric() {
        let layout = SubsystemLayout::new(3, 1, 1).unwrap();
        let rho = build_spps_direct(&EncodingMap::identity(layout), &ground(2), w(3, 10)).unwrap();
        let numeric = deviation(&rho).herm_spectrum().unwrap();
        let closed = expand_classes(
            &spectrum_direct(3, 1, 1, w(3, 10))
                .unwrap()
                .iter()
                .map(|c| c.to_f64())
                .collect::<Vec<_>>(),
        );
        for (x, y) in numeric.iter().zip(&closed) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn tensor_state_matches_four_qubit_dfs_polynomial() {
        let rho = build_spps_tensor(&dfs2(), &[ground(2), ground(2)], w(1, 2)).unwrap();
        let expected: crate::PauliPolynomial = "1/4*II + 1/8*ZI - 1/8*IZ".parse().unwrap();
        let expected = expected.tensor(&expected);
        assert_eq!(expand(&rho), expected);
        assert_eq!(expected.coefficient(&PauliString::identity(4)), r(1, 16));
    }

    #[test]
    fn tensor_spectrum_examples() {
        let classes = spectrum_tensor(2, 0, 2, w(1, 2)).unwrap();
        assert_eq!(rational_norm(&classes), r(3, 16));
        let total: usize = classes.iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, 16);
        let trace: Rational64 = classes
            .iter()
            .map(|c| c.value * Rational64::from_integer(c.multiplicity as i64))
            .sum();
        assert_eq!(trace, r(0, 1));

        let unit = spectrum_tensor(2, 0, 3, WeightParam::one()).unwrap();
        assert_eq!(unit[0].value, r(1, 1) - r(1, 64));
        assert_eq!(unit.last().unwrap().value, r(-1, 64));

        let single = spectrum_tensor(3, 1, 1, w(2, 5)).unwrap();
        let direct = spectrum_direct(3, 1, 1, w(2, 5)).unwrap();
        let a = expand_classes(&single.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
        let b = expand_classes(&direct.iter().map(|c| c.to_f64()).collect::<Vec<_>>());
        assert_eq!(a, b);
    }

    #[test]
    fn tensor_rejects_no_useful_solution() {
        assert!(matches!(
            spectrum_tensor(2, 2, 2, w(1, 2)),
            Err(Error::NoUsefulSolution(_))
        ));
        assert!(matches!(
            tensor_optimal_weight(1, 1, 3),
            Err(Error::NoUsefulSolution(_))
        ));
    }

    #[test]
    fn alpha_examples() {
        let (_, report) = build_full_pp(3, &ground(8)).unwrap();
        assert_eq!(report.alpha.exact, Some(r(3, 7)));

        let ns = ComplexMatrix::from_real_diag(&[0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(alpha_bound(&ns, 3).unwrap().exact, Some(r(1, 1)));

        let mixed = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(matches!(alpha_bound(&mixed, 2), Err(Error::Degenerate(_))));
    }

    #[test]
    fn signal_examples() {
        let rho = ground(4).projector();
        assert!((snr_signal(&rho, &[1, 2]).unwrap() - 2.0).abs() < 1e-15);
        let mixed = ComplexMatrix::identity(8).scale_real(0.125);
        assert_eq!(snr_signal(&mixed, &[1, 2, 3]).unwrap(), 0.0);
        assert!(snr_signal(&mixed, &[4]).is_err());
    }

    #[test]
    fn direct_optimum_matches_grid_scan() {
        for (n, l, s) in [(3, 1, 0), (3, 1, 1), (4, 2, 0), (5, 1, 2)] {
            let layout = SubsystemLayout::new(n, l, s).unwrap();
            let report = optimize_weight(WeightProblem::Direct(layout)).unwrap();
            let objective = |a: f64| {
                let classes = direct_classes(n, l, s, a);
                a * (n as f64 / (1 << n) as f64) / class_norm(&classes)
            };
            let (a_grid, best) = grid_scan(objective);
            assert!((a_grid - report.a_star.value).abs() < 1e-3);
            assert!((best - objective(report.a_star.value)).abs() < 1e-6 * best.max(1.0) + 1e-3 * best);
        }
        let qec = optimize_weight(WeightProblem::Direct(SubsystemLayout::new(3, 1, 0).unwrap()))
            .unwrap();
        assert_eq!(qec.a_star.exact, Some(r(1, 4)));
        let ns = optimize_weight(WeightProblem::Direct(SubsystemLayout::new(3, 1, 1).unwrap()))
            .unwrap();
        assert_eq!(ns.a_star.exact, Some(r(1, 2)));
    }

    #[test]
    fn tensor_optimum_matches_brute_force_grid() {
        for (n, s, l) in [(2, 0, 1), (2, 0, 2), (2, 0, 3), (2, 0, 4), (3, 0, 2), (3, 1, 2), (4, 1, 2)] {
            let report = optimize_weight(WeightProblem::Tensor { n, s, l }).unwrap();
            let big_n = n * l;
            let objective =
                |a: f64| a * big_n as f64 * 2f64.powi(-(big_n as i32)) / brute_force_tensor_norm(n, s, l, a);
            let (a_grid, best) = grid_scan(objective);
            assert!(
                (a_grid - report.a_star.value).abs() < 1e-3,
                "(n={n}, s={s}, l={l}): grid {a_grid} vs closed {}",
                report.a_star.value
            );
            let closed = tensor_optimal_signal(n, s, l).unwrap();
            assert!((objective(report.a_star.value) - closed).abs() < 1e-9);
            assert!(best <= closed * (1.0 + 1e-9));
            assert!((report.snr_proxy.value - closed * l as f64).abs() < 1e-9);
        }
        let (a, regime) = tensor_optimal_weight(2, 0, 2).unwrap();
        assert_eq!(regime, TensorRegime::Saturated);
        assert!((a.as_f64() - 2f64.powf(-1.5)).abs() < 1e-15);
        assert!((tensor_threshold(2, 0) - 2.409).abs() < 1e-3);
    }
}
