//! Exact Pauli-string algebra and the thermal equilibrium state.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::linops::ComplexMatrix;
use crate::rational::{to_f64, to_rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// 2×2 matrix of a single Pauli operator.
pub fn pauli_matrix(p: Pauli) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let data = match p {
        Pauli::I => vec![one, z, z, one],
        Pauli::X => vec![z, one, one, z],
        Pauli::Y => vec![z, -i, i, z],
        Pauli::Z => vec![one, z, z, -one],
    };
    ComplexMatrix::from_vec(2, data).expect("2x2 Pauli")
}

/// Tensor product of single-qubit Paulis; `letters[0]` acts on qubit 1.
///
/// Strings order like base-4 numbers whose most significant digit is the
/// last qubit, which lists `III, ZII, IZI, ZZI` in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self { letters }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![Pauli::I; n])
    }

    /// `p` on qubit `q` (1-based), identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        assert!(q >= 1 && q <= n, "qubit {q} out of range 1..={n}");
        let mut letters = vec![Pauli::I; n];
        letters[q - 1] = p;
        Self::new(letters)
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&p| p == Pauli::I)
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// Index bits flipped by the string.
    pub fn x_mask(&self) -> usize {
        let n = self.len();
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| matches!(p, Pauli::X | Pauli::Y))
            .fold(0, |acc, (k, _)| acc | (1 << (n - 1 - k)))
    }

    /// Phase picked up by `|column⟩`: `P|column⟩ = phase · |column ⊕ x_mask⟩`.
    fn column_phase(&self, column: usize) -> Complex64 {
        let n = self.len();
        let mut phase = Complex64::new(1.0, 0.0);
        for (k, &p) in self.letters.iter().enumerate() {
            let bit = (column >> (n - 1 - k)) & 1;
            match p {
                Pauli::I | Pauli::X => {}
                Pauli::Y => {
                    phase *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    }
                }
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        phase
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let dim = 1usize << self.len();
        let x = self.x_mask();
        let mut m = ComplexMatrix::zeros(dim);
        for col in 0..dim {
            m[(col ^ x, col)] = self.column_phase(col);
        }
        m
    }

    /// `Tr(P · m)`.
    pub fn trace_with(&self, m: &ComplexMatrix) -> Complex64 {
        let x = self.x_mask();
        (0..m.dim())
            .map(|k| self.column_phase(k) * m[(k, k ^ x)])
            .sum()
    }

    /// Relabels qubits: the letter on qubit `q` moves to qubit `perm[q - 1]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len());
        let mut letters = vec![Pauli::I; self.len()];
        for (k, &p) in self.letters.iter().enumerate() {
            letters[perm[k] - 1] = p;
        }
        Self::new(letters)
    }

    /// Tensor product, `self` on the leading qubits.
    pub fn tensor(&self, other: &PauliString) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::new(letters)
    }

    /// All `4^n` strings in canonical order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        (0..(1usize << (2 * n))).map(move |code| {
            let letters = (0..n)
                .map(|k| Pauli::ALL[(code >> (2 * k)) & 3])
                .collect();
            PauliString::new(letters)
        })
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.iter().rev().cmp(other.letters.iter().rev()))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.letters {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| Pauli::from_symbol(c).ok_or_else(|| Error::Parse(format!("bad Pauli {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        Ok(Self::new(letters))
    }
}

/// Real-coefficient sum of `n`-qubit Pauli strings with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliPolynomial {
    nqubits: usize,
    terms: BTreeMap<PauliString, Rational64>,
}

impl PauliPolynomial {
    pub fn zero(nqubits: usize) -> Self {
        Self {
            nqubits,
            terms: BTreeMap::new(),
        }
    }

    /// `c · I`.
    pub fn identity(nqubits: usize, c: Rational64) -> Self {
        let mut p = Self::zero(nqubits);
        p.add_term(PauliString::identity(nqubits), c);
        p
    }

    pub fn from_terms(
        nqubits: usize,
        terms: impl IntoIterator<Item = (PauliString, Rational64)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nqubits);
        for (s, c) in terms {
            if s.len() != nqubits {
                return Err(Error::DimensionMismatch {
                    expected: nqubits,
                    actual: s.len(),
                });
            }
            p.add_term(s, c);
        }
        Ok(p)
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Rational64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &PauliString) -> Rational64 {
        self.terms.get(s).copied().unwrap_or_else(Rational64::zero)
    }

    /// Adds `c · s`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, s: PauliString, c: Rational64) {
        assert_eq!(s.len(), self.nqubits, "Pauli string length mismatch");
        let entry = self.terms.entry(s.clone()).or_insert_with(Rational64::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn scale(&self, c: Rational64) -> Self {
        if c.is_zero() {
            return Self::zero(self.nqubits);
        }
        Self {
            nqubits: self.nqubits,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &PauliPolynomial) -> Self {
        assert_eq!(self.nqubits, other.nqubits);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), *v);
        }
        out
    }

    pub fn sub(&self, other: &PauliPolynomial) -> Self {
        self.add(&other.scale(-Rational64::one()))
    }

    /// Tensor product, `self` on the leading qubits.
    pub fn tensor(&self, other: &PauliPolynomial) -> Self {
        let mut out = Self::zero(self.nqubits + other.nqubits);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.tensor(b), ca * cb);
            }
        }
        out
    }

    /// Relabels qubits with `perm` (see [`PauliString::permute`]).
    pub fn permute_qubits(&self, perm: &[usize]) -> Self {
        Self {
            nqubits: self.nqubits,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.permute(perm), *v))
                .collect(),
        }
    }

    /// Traceless part: the polynomial without its identity term.
    pub fn traceless(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&PauliString::identity(self.nqubits));
        out
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        to_matrix(self)
    }
}

impl fmt::Display for PauliPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (s, c)) in self.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            write!(f, "{}*{}", c.abs(), s)?;
        }
        Ok(())
    }
}

impl FromStr for PauliPolynomial {
    type Err = Error;

    /// Parses the canonical text form, e.g. `"1/8*III + 1/8*ZII - 1/4*IZI"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(0));
        }
        let tokens = s.split_whitespace();
        let mut parsed: Vec<(PauliString, Rational64)> = Vec::new();
        let mut sign = Rational64::one();
        for tok in tokens {
            match tok {
                "+" => sign = Rational64::one(),
                "-" => sign = -Rational64::one(),
                term => {
                    let (coeff, word) = term
                        .split_once('*')
                        .ok_or_else(|| Error::Parse(format!("term without '*': {term:?}")))?;
                    let coeff = crate::rational::parse_rational(coeff)?;
                    parsed.push((word.parse()?, sign * coeff));
                    sign = Rational64::one();
                }
            }
        }
        let n = parsed
            .first()
            .map(|(p, _)| p.len())
            .ok_or_else(|| Error::Parse("empty polynomial".into()))?;
        Self::from_terms(n, parsed)
    }
}

/// Matrix realization of a Pauli polynomial.
pub fn to_matrix(p: &PauliPolynomial) -> ComplexMatrix {
    let dim = 1usize << p.nqubits;
    let mut m = ComplexMatrix::zeros(dim);
    for (s, &c) in &p.terms {
        let x = s.x_mask();
        let c = to_f64(c);
        for col in 0..dim {
            m[(col ^ x, col)] += s.column_phase(col) * c;
        }
    }
    m
}

/// Nonzero coefficients `Tr(P m)/2^N` of the Hermitian part of `m`, in
/// canonical string order. Coefficients within `1e-10` of zero are dropped.
pub fn pauli_coefficients(m: &ComplexMatrix) -> Vec<(PauliString, f64)> {
    let n = m.nqubits();
    let dim = m.dim();
    let zero = Complex64::new(0.0, 0.0);
    // A string only sees the entries (c ^ x, c) of its X mask x.
    let active: Vec<bool> = (0..dim)
        .map(|x| (0..dim).any(|c| m[(c ^ x, c)] != zero))
        .collect();
    let scale = 1.0 / dim as f64;
    PauliString::all(n)
        .filter(|s| active[s.x_mask()])
        .filter_map(|s| {
            let c = s.trace_with(m).re * scale;
            (c.abs() > crate::rational::SNAP_TOLERANCE).then_some((s, c))
        })
        .collect()
}

/// Pauli expansion `Σ_P Tr(P m)/2^N · P` of the Hermitian part of `m`.
///
/// Coefficients within `1e-10` of a small rational are snapped to it;
/// coefficients below that threshold are dropped.
pub fn expand(m: &ComplexMatrix) -> PauliPolynomial {
    let mut out = PauliPolynomial::zero(m.nqubits());
    for (s, c) in pauli_coefficients(m) {
        let r = to_rational(c);
        if !r.is_zero() {
            out.terms.insert(s, r);
        }
    }
    out
}

/// `Σ_i Z_i` over `n` qubits, the collective dephasing generator.
pub fn collective_z(n: usize) -> PauliPolynomial {
    assert!(n >= 1);
    let mut p = PauliPolynomial::zero(n);
    for q in 1..=n {
        p.add_term(PauliString::single(n, q, Pauli::Z), Rational64::one());
    }
    p
}

/// `Σ_i P_i` for a single-qubit Pauli letter.
pub fn collective(n: usize, letter: Pauli) -> PauliPolynomial {
    let mut p = PauliPolynomial::zero(n);
    for q in 1..=n {
        p.add_term(PauliString::single(n, q, letter), Rational64::one());
    }
    p
}

/// High-temperature thermal state `I/2^N − ε ρ_eq` with
/// `ρ_eq = Σ_i Z_i / 2^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThermalModel {
    nqubits: usize,
    epsilon: Rational64,
}

impl ThermalModel {
    pub fn new(nqubits: usize, epsilon: Rational64) -> Result<Self> {
        if nqubits == 0 {
            return Err(Error::InvalidLayout("thermal model needs at least one qubit".into()));
        }
        if !epsilon.is_positive() {
            return Err(Error::Parse(format!("polarization must be positive, got {epsilon}")));
        }
        Ok(Self { nqubits, epsilon })
    }

    /// Unit polarization; every ratio reported by the crate is independent of ε.
    pub fn unit(nqubits: usize) -> Self {
        Self::new(nqubits, Rational64::one()).expect("valid thermal model")
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    pub fn epsilon(&self) -> Rational64 {
        self.epsilon
    }

    /// `ρ_eq = Σ_i Z_i / 2^N`.
    pub fn rho_eq(&self) -> PauliPolynomial {
        collective_z(self.nqubits).scale(Rational64::new(1, 1 << self.nqubits))
    }

    /// Traceless deviation `−ε ρ_eq`.
    pub fn deviation(&self) -> PauliPolynomial {
        self.rho_eq().scale(-self.epsilon)
    }

    /// `I/2^N − ε ρ_eq` as a polynomial.
    pub fn polynomial(&self) -> PauliPolynomial {
        PauliPolynomial::identity(self.nqubits, Rational64::new(1, 1 << self.nqubits))
            .add(&self.deviation())
    }

    /// Spectral norm of `ρ_eq`, `N/2^N`.
    pub fn rho_eq_norm(&self) -> Rational64 {
        Rational64::new(self.nqubits as i64, 1 << self.nqubits)
    }
}

pub fn thermal_state(t: &ThermalModel) -> ComplexMatrix {
    t.polynomial().to_matrix()
}
