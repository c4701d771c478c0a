//! Classical numerics for Lindblad-evolution circuit constructions.
//!
//! A Lindbladian over n qubits is specified by a Hamiltonian H and jump
//! operators L_1..L_m, each given as a non-negatively weighted sum of phased
//! Pauli strings.  This crate builds, at desk scale (1–3 qubits), every stage
//! of the channel-LCU simulation pipeline for e^{Lt}:
//!
//!   spec → M_δ Kraus operators → per-Kraus LCU rows → the W gadget
//!        → the r-fold segment Ŵ → oblivious amplitude amplification F
//!        → the implemented channel N,
//!
//! and cross-checks each stage against an exact matrix-exponential oracle.
//! Companion modules cover the Hamming-weight ancilla truncation with its
//! register/gate counting, and the reset-interleaved Hamiltonian-dilation
//! discretization together with its Ω(√N) total-evolution-time scan.

pub mod channels;
pub mod dilation;
pub mod lcu;
pub mod numerics;
pub mod oaa;
pub mod pauli;
pub mod resource;

pub use numerics::{ComplexMatrix, StateVector};
pub use pauli::{LinearCombinationOfPaulis, LindbladSpec, PauliString};

/// Version string embedded in every CLI report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
