//! Numerical tolerances, kept in one place so library code and tests agree.

/// Entrywise Hermiticity tolerance for physical density matrices.
pub const HERMITIAN: f64 = 1e-12;

/// Trace-one tolerance for physical density matrices.
pub const TRACE_ONE: f64 = 1e-12;

/// Eigenvalue floor for physical states: eigenvalues must be ≥ −PSD_FLOOR.
pub const PSD_FLOOR: f64 = 1e-10;

/// Norm tolerance for pure-state amplitudes.
pub const PURE_NORM: f64 = 1e-12;

/// Unitarity tolerance accepted by `apply_unitary` (‖u†u − 1‖_max).
pub const UNITARY: f64 = 1e-10;

/// Unitarity required of every compiled gate.
pub const GATE_UNITARY: f64 = 1e-12;

/// Largest imaginary part silently discarded from a Pauli expectation value.
pub const EXPECTATION_IMAG: f64 = 1e-10;

/// Kraus completeness: ‖Σ K†K − 1‖_max.
pub const KRAUS_COMPLETENESS: f64 = 1e-12;

/// Column-sum tolerance for the readout matrix.
pub const COLUMN_STOCHASTIC: f64 = 1e-12;

/// Probability-vector normalization tolerance.
pub const DISTRIBUTION_SUM: f64 = 1e-10;

/// Hermiticity/trace slack accepted on raw (pre-projection) tomography output.
pub const RAW_TOMOGRAPHY: f64 = 1e-8;

/// Smallest |det R| for which readout correction is attempted.
pub const READOUT_DET_FLOOR: f64 = 1e-9;

/// Off-diagonal Frobenius norm at which the Jacobi eigensolver stops.
pub const EIGEN_OFF_DIAGONAL: f64 = 1e-14;
