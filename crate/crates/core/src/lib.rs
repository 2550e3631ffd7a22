//! Subsystem pseudo-pure states for logically encoded qubits.
//!
//! `subpure` builds and analyzes mixed states that are pseudo-pure only on
//! the logical subsystem of an encoding (decoherence-free subspaces,
//! noiseless subsystems, bit-flip codes), leaving syndrome and unprotected
//! sectors maximally mixed. Everything is exact dense density-matrix
//! simulation at desk scale (up to ten qubits).
//!
//! The crate is organized bottom-up:
//!
//! - [`linops`]: dense complex matrices, Kronecker products, partial traces
//!   and a cyclic Jacobi Hermitian eigensolver.
//! - [`pauli`]: exact rational Pauli polynomials and the thermal state.
//! - [`decomp`]: subsystem layouts `H = L⊗S ⊕ R`, encoding unitaries and
//!   subspace projectors.
//! - [`spps`]: full and subsystem pseudo-pure state builders, closed-form
//!   spectra, the spectral-norm scaling bound, SNR figures and the optimal
//!   logical weight.
//! - [`codes`]: the four built-in encodings (`dfs2`, `dfs4x2`, `ns3`, `qec3`),
//!   their noise channels and the bit-flip correction cycle.
//! - [`metrics`]: attenuated correlations, Kraus block decomposition and
//!   logical-subspace gate fidelities.
//! - [`report`]: JSON/CSV report assembly behind the `spps` binary.
//!
//! ```
//! use subpure::spps::{build_full_pp, snr_ratio_total};
//! use subpure::linops::StateVector;
//! use num_rational::Rational64;
//!
//! let (rho, report) = build_full_pp(3, &StateVector::basis(8, 0)).unwrap();
//! assert_eq!(report.ratio_total.unwrap().exact, Some(Rational64::new(3, 7)));
//! assert_eq!(snr_ratio_total(&rho, 3).unwrap().exact, Some(Rational64::new(3, 7)));
//! ```

pub mod codes;
pub mod decomp;
pub mod linops;
pub mod metrics;
pub mod pauli;
pub mod rational;
pub mod report;
pub mod spps;

pub use linops::{ComplexMatrix, StateVector};
pub use pauli::{PauliPolynomial, PauliString};

/// Absolute tolerance used for floating-point comparisons throughout the crate.
pub const TOLERANCE: f64 = 1e-10;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("qubit index {index} out of range for {nqubits} qubits")]
    QubitOutOfRange { index: usize, nqubits: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("state vector is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("columns are not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("no useful solution: {0}")]
    NoUsefulSolution(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
