//! Amplitude-damping and pure-dephasing Kraus channels.
//!
//! Decoherence is applied as a post-gate channel for the gate's full
//! duration rather than integrated concurrently with the drive; for gate
//! times far below T1 and Tφ the difference is second order, and it keeps
//! gates exactly unitary and channels exactly CPTP. Pure dephasing (Tφ) is
//! kept separate from the T1-induced dephasing, so the combined off-diagonal
//! decay over a time t is exp(−t/2T1)·exp(−t/Tφ).

use crate::error::{Error, Result};
use crate::gates::{gate_unitary, Conventions, Gate, Qubit};
use crate::qmat::{apply_unitary, tensor_product, ComplexMatrix, DensityMatrix};
use crate::tol;

/// Per-qubit relaxation and pure-dephasing times, in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    pub t1_i_ns: f64,
    pub t1_ii_ns: f64,
    pub tphi_i_ns: f64,
    pub tphi_ii_ns: f64,
    pub enabled: bool,
}

impl NoiseParams {
    pub fn new(t1_i_ns: f64, t1_ii_ns: f64, tphi_i_ns: f64, tphi_ii_ns: f64, enabled: bool) -> Result<Self> {
        if enabled {
            for (name, value) in [
                ("t1_i_ns", t1_i_ns),
                ("t1_ii_ns", t1_ii_ns),
                ("tphi_i_ns", tphi_i_ns),
                ("tphi_ii_ns", tphi_ii_ns),
            ] {
                if !(value > 0.0) || !value.is_finite() {
                    return Err(Error::invalid(format!("{name} = {value} must be positive")));
                }
            }
        }
        Ok(NoiseParams { t1_i_ns, t1_ii_ns, tphi_i_ns, tphi_ii_ns, enabled })
    }

    /// The coupling-point device values: T1 = 450/500 ns, Tφ = 2 µs.
    pub fn device_defaults() -> Self {
        NoiseParams {
            t1_i_ns: 450.0,
            t1_ii_ns: 500.0,
            tphi_i_ns: 2000.0,
            tphi_ii_ns: 2000.0,
            enabled: true,
        }
    }

    pub fn disabled() -> Self {
        NoiseParams { enabled: false, ..Self::device_defaults() }
    }

    fn t1(&self, qubit: Qubit) -> f64 {
        match qubit {
            Qubit::I => self.t1_i_ns,
            Qubit::II => self.t1_ii_ns,
        }
    }

    fn tphi(&self, qubit: Qubit) -> f64 {
        match qubit {
            Qubit::I => self.tphi_i_ns,
            Qubit::II => self.tphi_ii_ns,
        }
    }
}

/// A single-qubit channel in operator-sum form, Σ K ρ K†.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validates the completeness relation Σ K†K = 1.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::invalid("Kraus channel needs at least one operator"));
        }
        let mut sum = ComplexMatrix::zeros(2)?;
        for k in &operators {
            if k.dim() != 2 {
                return Err(Error::invalid("Kraus operators must be 2x2"));
            }
            sum = sum.add(&k.dagger().mul(k)?)?;
        }
        let id = ComplexMatrix::identity(2)?;
        if sum.max_abs_diff(&id) > tol::KRAUS_COMPLETENESS {
            return Err(Error::invalid(format!(
                "Kraus completeness violated by {:.3e}",
                sum.max_abs_diff(&id)
            )));
        }
        Ok(KrausChannel { operators })
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn identity() -> Self {
        KrausChannel { operators: vec![ComplexMatrix::identity(2).expect("dim 2")] }
    }
}

/// T1 relaxation for a time t: decay probability γ = 1 − exp(−t/T1),
/// K0 = diag(1, √(1−γ)), K1 = |0⟩⟨1|·√γ.
pub fn amplitude_damping(t_ns: f64, t1_ns: f64) -> Result<KrausChannel> {
    if t_ns < 0.0 || !t_ns.is_finite() {
        return Err(Error::invalid(format!("duration {t_ns} ns is negative")));
    }
    if !(t1_ns > 0.0) {
        return Err(Error::invalid(format!("T1 = {t1_ns} ns must be positive")));
    }
    let gamma = 1.0 - (-t_ns / t1_ns).exp();
    let k0 = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, (1.0 - gamma).sqrt()])?;
    let k1 = ComplexMatrix::from_real(2, &[0.0, gamma.sqrt(), 0.0, 0.0])?;
    KrausChannel::new(vec![k0, k1])
}

/// Pure dephasing for a time t: populations untouched, off-diagonals scaled
/// by exp(−t/Tφ). Realized as K0 = √(1−p)·1, K1 = √p·σ_z with
/// p = (1 − exp(−t/Tφ))/2.
pub fn pure_dephasing(t_ns: f64, tphi_ns: f64) -> Result<KrausChannel> {
    if t_ns < 0.0 || !t_ns.is_finite() {
        return Err(Error::invalid(format!("duration {t_ns} ns is negative")));
    }
    if !(tphi_ns > 0.0) {
        return Err(Error::invalid(format!("Tphi = {tphi_ns} ns must be positive")));
    }
    let p = 0.5 * (1.0 - (-t_ns / tphi_ns).exp());
    let k0 = ComplexMatrix::from_real(2, &[(1.0 - p).sqrt(), 0.0, 0.0, (1.0 - p).sqrt()])?;
    let k1 = ComplexMatrix::from_real(2, &[p.sqrt(), 0.0, 0.0, -p.sqrt()])?;
    KrausChannel::new(vec![k0, k1])
}

/// Apply a single-qubit channel to one qubit of the register:
/// ρ ← Σ (K ⊗ 1) ρ (K ⊗ 1)† (or 1 ⊗ K for qubit II).
pub fn apply_channel(rho: &DensityMatrix, channel: &KrausChannel, target: Qubit) -> Result<DensityMatrix> {
    let id = ComplexMatrix::identity(2)?;
    let mut out = ComplexMatrix::zeros(4)?;
    for k in channel.operators() {
        let embedded = match target {
            Qubit::I => tensor_product(k, &id)?,
            Qubit::II => tensor_product(&id, k)?,
        };
        let term = embedded.mul(rho.matrix())?.mul(&embedded.dagger())?;
        out = out.add(&term)?;
    }
    DensityMatrix::from_evolution(out)
}

/// One pipeline step: the ideal gate unitary, then relaxation and dephasing
/// on both qubits for the gate's duration. With noise disabled this is
/// exactly `apply_unitary`.
pub fn evolve_step(
    rho: &DensityMatrix,
    gate: &Gate,
    params: &NoiseParams,
    conventions: &Conventions,
) -> Result<DensityMatrix> {
    let u = gate_unitary(gate, conventions)?;
    let mut state = apply_unitary(rho, &u)?;
    if params.enabled && gate.duration_ns > 0.0 {
        for qubit in [Qubit::I, Qubit::II] {
            let damping = amplitude_damping(gate.duration_ns, params.t1(qubit))?;
            state = apply_channel(&state, &damping, qubit)?;
            let dephasing = pure_dephasing(gate.duration_ns, params.tphi(qubit))?;
            state = apply_channel(&state, &dephasing, qubit)?;
        }
    }
    Ok(state)
}

/// Evolve through a whole gate sequence.
pub fn evolve_sequence(
    rho: &DensityMatrix,
    gates: &[Gate],
    params: &NoiseParams,
    conventions: &Conventions,
) -> Result<DensityMatrix> {
    let mut state = rho.clone();
    for gate in gates {
        state = evolve_step(&state, gate, params, conventions)?;
    }
    Ok(state)
}
