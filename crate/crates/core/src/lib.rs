//! Density-matrix simulator of a two-transmon quantum processor running the
//! four-object Grover search.
//!
//! The register is a fixed pair of qubits (I, II) in the computational basis
//! |00⟩, |01⟩, |10⟩, |11⟩ with qubit I as the left (most-significant) factor.
//! The crate is organized along the experiment pipeline:
//!
//! - [`qmat`] — dense complex linear algebra for dimensions 2 and 4, pure
//!   states, density matrices, and the two-qubit Pauli set.
//! - [`gates`] — symbolic gates compiled to unitaries under an explicit,
//!   test-pinned convention set; the coupling-Hamiltonian evolution serves as
//!   an independent physics cross-check of the iSWAP family.
//! - [`noise`] — amplitude-damping and pure-dephasing Kraus channels applied
//!   per gate duration.
//! - [`readout`] — assignment errors, shelving, crosstalk, the 4×4 readout
//!   matrix R, seeded single-shot sampling, and R⁻¹ correction.
//! - [`tomography`] — Pauli-set estimation with readout correction, linear
//!   inversion, and projection to the closest physical state.
//! - [`grover`] — the search sequence itself (prepare, oracle, decode),
//!   success-probability and fidelity accounting, and the calibration sweep.
//! - [`config`] / [`cli`] — flat key = value configuration and the command
//!   front end used by the `grover2q` binary.
//!
//! All operations are pure functions of their inputs; every random quantity
//! is derived from an explicit seed through the counter-based scheme in
//! [`rng`], so results are reproducible and independent of evaluation order.

pub mod cli;
pub mod config;
pub mod error;
pub mod gates;
pub mod grover;
pub mod noise;
pub mod qmat;
pub mod readout;
pub mod rng;
pub mod testutil;
pub mod tol;
pub mod tomography;

pub use error::{Error, Result};
