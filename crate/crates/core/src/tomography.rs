//! State tomography: simulate finite-shot Pauli-set measurements with
//! readout correction, reconstruct by linear inversion, and project to the
//! closest physical state in Hilbert–Schmidt distance.
//!
//! Readout correction operates on empirical outcome frequencies before the
//! expectation conversion, since R is defined on outcome space. Correction
//! may leave negative quasi-probabilities; physicality is restored only by
//! the final projection. The tomography prerotations are themselves noisy
//! when noise is enabled, unless `idealize_pulses` is set.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gates::{Conventions, Gate, GateSequence, GateTimings, Qubit};
use crate::noise::{evolve_sequence, NoiseParams};
use crate::qmat::{
    apply_unitary, eigh, pauli_operator, ComplexMatrix, DensityMatrix, Pauli, PauliLabel,
};
use crate::readout::{correct_distribution, outcome_distribution, ReadoutMatrix, Sampling};
use crate::rng::subseed;
use crate::tol;
use num_complex::Complex64;

/// Statistical slack allowed on stored Pauli estimates beyond [−1, 1].
const ESTIMATE_SLACK: f64 = 0.2;

/// Estimated expectation values for the 15 non-identity Pauli labels.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliEstimates {
    values: BTreeMap<PauliLabel, f64>,
    shots_per_setting: u64,
}

impl PauliEstimates {
    /// All 15 extended labels must be present exactly once;
    /// `shots_per_setting` of 0 records the exact-distribution path.
    pub fn new(values: BTreeMap<PauliLabel, f64>, shots_per_setting: u64) -> Result<Self> {
        for label in PauliLabel::extended() {
            match values.get(&label) {
                None => return Err(Error::invalid(format!("missing Pauli estimate for {label}"))),
                Some(v) if v.abs() > 1.0 + ESTIMATE_SLACK => {
                    return Err(Error::invalid(format!("estimate {v} for {label} out of range")))
                }
                _ => {}
            }
        }
        if values.len() != 15 {
            return Err(Error::invalid(format!("expected 15 estimates, got {}", values.len())));
        }
        Ok(PauliEstimates { values, shots_per_setting })
    }

    pub fn value(&self, label: PauliLabel) -> Option<f64> {
        self.values.get(&label).copied()
    }

    pub fn shots_per_setting(&self) -> u64 {
        self.shots_per_setting
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliLabel, &f64)> {
        self.values.iter()
    }
}

/// Output of a reconstruction: the raw linear-inversion matrix (possibly
/// unphysical), the projected physical state, and the Hilbert–Schmidt
/// distance between them.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub raw: ComplexMatrix,
    pub physical: DensityMatrix,
    pub distance_moved: f64,
}

impl ReconstructionResult {
    /// The density-matrix text dump plus the one-line summary
    /// `fidelity=<f> distance_moved=<d> shots=<n> seed=<s>`.
    pub fn serialize(&self, fidelity: f64, shots: u64, seed: u64) -> String {
        let mut out = crate::qmat::format_density_matrix(&self.physical);
        out.push_str(&format!(
            "fidelity={:.6} distance_moved={:.6} shots={shots} seed={seed}\n",
            fidelity, self.distance_moved
        ));
        out
    }
}

/// How measurement simulation runs: shot handling, seeding, conventions,
/// noise on the prerotation pulses, and gate timings.
#[derive(Debug, Clone, Copy)]
pub struct TomographySettings {
    pub sampling: Sampling,
    pub seed: u64,
    pub conventions: Conventions,
    pub noise: NoiseParams,
    pub timings: GateTimings,
    /// Simulate the tomography pulses noiselessly even when noise is on.
    pub idealize_pulses: bool,
}

impl TomographySettings {
    pub fn exact_ideal(conventions: Conventions) -> Self {
        TomographySettings {
            sampling: Sampling::Exact,
            seed: 0,
            conventions,
            noise: NoiseParams::disabled(),
            timings: GateTimings::default(),
            idealize_pulses: true,
        }
    }
}

/// The single-qubit rotations mapping a Pauli-label measurement onto the
/// computational basis: an X component is rotated about Y, a Y component
/// about X; Z and I need no pulse. The angles depend on the rotation-sign
/// convention so that the round-trip estimate equals the true expectation.
pub fn prerotation_sequence(
    label: PauliLabel,
    conventions: &Conventions,
    timings: &GateTimings,
) -> GateSequence {
    let sign = conventions.rotation_sign.value();
    let quarter = std::f64::consts::FRAC_PI_2;
    let mut seq = GateSequence::new();
    for (qubit, pauli) in [(Qubit::I, label.first), (Qubit::II, label.second)] {
        let gate = match pauli {
            // exp(−i·s·θ·σ_y/2) with s·θ = −π/2 maps σ_x onto σ_z.
            Pauli::X => Some(Gate::ry(qubit, -sign * quarter, timings.single_qubit_ns)),
            // exp(−i·s·θ·σ_x/2) with s·θ = +π/2 maps σ_y onto σ_z.
            Pauli::Y => Some(Gate::rx(qubit, sign * quarter, timings.single_qubit_ns)),
            Pauli::Z | Pauli::I => None,
        };
        if let Some(gate) = gate {
            seq.push(gate.expect("valid rotation gate"));
        }
    }
    seq
}

/// Eigenvalue sign of outcome bit `bit` for one label factor: +1 for an
/// identity factor, otherwise +1 for bit 0 and −1 for bit 1.
fn factor_sign(pauli: Pauli, bit: usize) -> f64 {
    if pauli != Pauli::I && bit == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Simulate the 15-setting Pauli measurement of a state: prerotate (noisily
/// unless idealized), read out through R, sample (or keep the exact
/// distribution), correct by R⁻¹, and convert frequencies to expectation
/// values. Setting i draws from the derived seed `subseed(seed, i)`, so
/// settings may be evaluated in any order.
pub fn simulate_pauli_estimates(
    rho: &DensityMatrix,
    r: &ReadoutMatrix,
    settings: &TomographySettings,
) -> Result<PauliEstimates> {
    let mut values = BTreeMap::new();
    for (index, label) in PauliLabel::extended().enumerate() {
        let seq = prerotation_sequence(label, &settings.conventions, &settings.timings);
        let rotated = if settings.noise.enabled && !settings.idealize_pulses {
            evolve_sequence(rho, seq.gates(), &settings.noise, &settings.conventions)?
        } else {
            let u = crate::gates::sequence_unitary(&seq, &settings.conventions)?;
            apply_unitary(rho, &u)?
        };
        let q = outcome_distribution(&rotated, r);
        let freq = settings.sampling.frequencies(&q, subseed(settings.seed, index as u64))?;
        let corrected = correct_distribution(&freq, r)?;

        let mut estimate = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                estimate += factor_sign(label.first, a)
                    * factor_sign(label.second, b)
                    * corrected[2 * a + b];
            }
        }
        values.insert(label, estimate);
    }
    PauliEstimates::new(values, settings.sampling.shot_count())
}

/// Linear inversion: ρ_raw = ¼(1 + Σ_P est_P·P). Hermitian by construction
/// with trace exactly one; possibly indefinite.
pub fn linear_inversion(estimates: &PauliEstimates) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::identity(4)?;
    for label in PauliLabel::extended() {
        let value = estimates
            .value(label)
            .ok_or_else(|| Error::invalid(format!("missing Pauli estimate for {label}")))?;
        m = m.add(&pauli_operator(label).scale(Complex64::new(value, 0.0)))?;
    }
    Ok(m.scale(Complex64::new(0.25, 0.0)))
}

/// Project the eigenvalue vector onto the probability simplex by the
/// iterative rule: zero the most negative eigenvalue and spread its value
/// uniformly over the remaining nonzero ones, until none is negative.
/// Order-independent because the redistribution is uniform.
fn project_eigenvalues(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    let mut vals = eigenvalues.to_vec();
    let mut zeroed = vec![false; vals.len()];
    loop {
        let most_negative = vals
            .iter()
            .enumerate()
            .filter(|(_, v)| **v < 0.0)
            .min_by(|(_, a), (_, b)| a.total_cmp(b))
            .map(|(i, _)| i);
        let Some(index) = most_negative else {
            return Ok(vals);
        };
        let deficit = vals[index];
        vals[index] = 0.0;
        zeroed[index] = true;
        let recipients: Vec<usize> = (0..vals.len())
            .filter(|&j| !zeroed[j] && vals[j] != 0.0)
            .collect();
        if recipients.is_empty() {
            return Err(Error::InternalConsistency(
                "eigenvalue projection ran out of mass; trace was not 1".into(),
            ));
        }
        let share = deficit / recipients.len() as f64;
        for j in recipients {
            vals[j] += share;
        }
    }
}

/// The closest trace-one PSD matrix to `raw` in Hilbert–Schmidt distance:
/// eigendecompose, project the spectrum onto the simplex, and reassemble in
/// the same eigenbasis.
pub fn project_to_physical(raw: &ComplexMatrix) -> Result<ReconstructionResult> {
    if raw.dim() != 4 {
        return Err(Error::invalid("projection expects a 4x4 matrix"));
    }
    if !raw.is_hermitian(tol::RAW_TOMOGRAPHY) {
        return Err(Error::invalid("projection input is not Hermitian"));
    }
    let trace = raw.trace();
    if (trace.re - 1.0).abs() > tol::RAW_TOMOGRAPHY || trace.im.abs() > tol::RAW_TOMOGRAPHY {
        return Err(Error::invalid(format!("projection input trace {trace} is not 1")));
    }

    let hermitian = raw.hermitize();
    let (eigenvalues, vectors) = eigh(&hermitian);
    let projected = project_eigenvalues(&eigenvalues)?;

    let mut lambda = ComplexMatrix::zeros(4)?;
    for (i, &l) in projected.iter().enumerate() {
        lambda.set(i, i, Complex64::new(l, 0.0));
    }
    let rebuilt = vectors.mul(&lambda)?.mul(&vectors.dagger())?.hermitize();
    // Reassembly keeps the trace at Σ projected = 1 up to rounding; pin it.
    let correction = 1.0 - rebuilt.trace().re;
    let mut pinned = rebuilt;
    if correction.abs() > 0.0 {
        let bump = correction / 4.0;
        for i in 0..4 {
            let d = pinned.get(i, i);
            pinned.set(i, i, Complex64::new(d.re + bump, 0.0));
        }
    }
    let physical = DensityMatrix::new(pinned)?;
    let distance_moved = raw.frobenius_distance(physical.matrix());
    Ok(ReconstructionResult { raw: raw.clone(), physical, distance_moved })
}

/// Full pipeline: simulate the measurement set, invert, project.
pub fn reconstruct(
    rho_true: &DensityMatrix,
    r: &ReadoutMatrix,
    settings: &TomographySettings,
) -> Result<ReconstructionResult> {
    let estimates = simulate_pauli_estimates(rho_true, r, settings)?;
    let raw = linear_inversion(&estimates)?;
    project_to_physical(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{expectation, state_fidelity, trace_distance, PureState};
    use crate::readout::{build_readout_matrix, ReadoutErrorRates};
    use crate::rng::Stream;
    use crate::testutil::{random_density_matrix, random_hermitian_trace_one};

    fn exact_settings() -> TomographySettings {
        TomographySettings::exact_ideal(Conventions::canonical())
    }

    fn device_r() -> ReadoutMatrix {
        build_readout_matrix(&ReadoutErrorRates::device_rates(true, 0.0).unwrap()).unwrap()
    }

    #[test]
    fn prerotation_zz_is_empty() {
        let seq = prerotation_sequence(
            PauliLabel::new(Pauli::Z, Pauli::Z),
            &Conventions::canonical(),
            &GateTimings::default(),
        );
        assert!(seq.is_empty());
    }

    #[test]
    fn prerotation_xi_touches_only_qubit_one() {
        let seq = prerotation_sequence(
            PauliLabel::new(Pauli::X, Pauli::I),
            &Conventions::canonical(),
            &GateTimings::default(),
        );
        assert_eq!(seq.gates().len(), 1);
        assert_eq!(seq.gates()[0].target, crate::gates::Target::Qubit(Qubit::I));
    }

    #[test]
    fn prerotation_round_trip_reproduces_expectations() {
        // Trace oracle over all 15 labels and random states, both rotation
        // sign conventions.
        let mut stream = Stream::new(0x707);
        for sign in [crate::gates::RotationSign::Positive, crate::gates::RotationSign::Negative] {
            let conventions = Conventions { rotation_sign: sign, ..Conventions::canonical() };
            let settings = TomographySettings::exact_ideal(conventions);
            for _ in 0..25 {
                let rho = random_density_matrix(&mut stream);
                let estimates =
                    simulate_pauli_estimates(&rho, &ReadoutMatrix::ideal(), &settings).unwrap();
                for label in PauliLabel::extended() {
                    let expected = expectation(&rho, label).unwrap();
                    let got = estimates.value(label).unwrap();
                    assert!(
                        (got - expected).abs() < 1e-10,
                        "label {label}: estimate {got} vs {expected}"
                    );
                }
            }
        }
    }

    #[test]
    fn ground_state_zi_estimate_is_exactly_one() {
        let rho = DensityMatrix::basis(0).unwrap();
        let estimates =
            simulate_pauli_estimates(&rho, &ReadoutMatrix::ideal(), &exact_settings()).unwrap();
        assert_eq!(estimates.value(PauliLabel::new(Pauli::Z, Pauli::I)), Some(1.0));
    }

    #[test]
    fn exact_path_with_device_readout_still_exact() {
        // Correction undoes R exactly on the exact-distribution path.
        let mut stream = Stream::new(0x1111);
        let r = device_r();
        for _ in 0..10 {
            let rho = random_density_matrix(&mut stream);
            let estimates = simulate_pauli_estimates(&rho, &r, &exact_settings()).unwrap();
            for label in PauliLabel::extended() {
                let expected = expectation(&rho, label).unwrap();
                assert!((estimates.value(label).unwrap() - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn sampled_xx_estimate_concentrates_near_one() {
        // Binomial-propagation check: at 10⁴ shots the (X,X) estimate of the
        // uniform superposition stays within 0.06 of +1 for ≥95% of seeds.
        let rho = DensityMatrix::from_pure(&PureState::uniform_superposition()).unwrap();
        let r = device_r();
        let mut hits = 0;
        let total = 100;
        for seed in 0..total {
            let settings = TomographySettings {
                sampling: Sampling::Shots(10_000),
                seed,
                ..exact_settings()
            };
            let estimates = simulate_pauli_estimates(&rho, &r, &settings).unwrap();
            let xx = estimates.value(PauliLabel::new(Pauli::X, Pauli::X)).unwrap();
            if (xx - 1.0).abs() < 0.06 {
                hits += 1;
            }
        }
        assert!(hits >= 95, "only {hits}/{total} seeds within 0.06");
    }

    #[test]
    fn linear_inversion_of_zero_estimates_is_maximally_mixed() {
        let values: BTreeMap<PauliLabel, f64> =
            PauliLabel::extended().map(|l| (l, 0.0)).collect();
        let estimates = PauliEstimates::new(values, 0).unwrap();
        let raw = linear_inversion(&estimates).unwrap();
        assert!(raw.max_abs_diff(DensityMatrix::maximally_mixed().matrix()) < 1e-15);
    }

    #[test]
    fn linear_inversion_recovers_exact_states() {
        let mut stream = Stream::new(0x11FE);
        for _ in 0..20 {
            let rho = random_density_matrix(&mut stream);
            let estimates =
                simulate_pauli_estimates(&rho, &ReadoutMatrix::ideal(), &exact_settings()).unwrap();
            let raw = linear_inversion(&estimates).unwrap();
            assert!(raw.max_abs_diff(rho.matrix()) < 1e-12);
        }
    }

    #[test]
    fn linear_inversion_can_be_unphysical() {
        // Eigenvalue oracle: (Z,I) = 1.1, rest 0 → diag(0.525, 0.525, −0.025, −0.025).
        let values: BTreeMap<PauliLabel, f64> = PauliLabel::extended()
            .map(|l| (l, if l == PauliLabel::new(Pauli::Z, Pauli::I) { 1.1 } else { 0.0 }))
            .collect();
        let estimates = PauliEstimates::new(values, 0).unwrap();
        let raw = linear_inversion(&estimates).unwrap();
        let (eigenvalues, _) = eigh(&raw);
        assert!((eigenvalues[0] + 0.025).abs() < 1e-12);
        assert!((raw.trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn estimates_require_all_labels() {
        let mut values: BTreeMap<PauliLabel, f64> =
            PauliLabel::extended().map(|l| (l, 0.0)).collect();
        values.remove(&PauliLabel::new(Pauli::X, Pauli::Y));
        assert!(PauliEstimates::new(values, 0).is_err());
    }

    #[test]
    fn projection_of_physical_state_is_identity() {
        let mut stream = Stream::new(0xF00D);
        for _ in 0..10 {
            let rho = random_density_matrix(&mut stream);
            let result = project_to_physical(rho.matrix()).unwrap();
            assert!(result.distance_moved < 1e-12);
            assert!(result.physical.matrix().max_abs_diff(rho.matrix()) < 1e-11);
        }
    }

    #[test]
    fn projection_moves_specified_spectra() {
        // Brute-force-confirmed examples on diagonal inputs.
        let raw = ComplexMatrix::from_real(4, &[
            0.6, 0.0, 0.0, 0.0,
            0.0, 0.6, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, -0.2,
        ])
        .unwrap();
        let result = project_to_physical(&raw).unwrap();
        let pops = result.physical.populations();
        assert!((pops[0] - 0.5).abs() < 1e-12);
        assert!((pops[1] - 0.5).abs() < 1e-12);
        assert!(pops[2].abs() < 1e-12);
        assert!(pops[3].abs() < 1e-12);

        let raw = ComplexMatrix::from_real(4, &[
            1.1, 0.0, 0.0, 0.0,
            0.0, -0.1, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
        ])
        .unwrap();
        let result = project_to_physical(&raw).unwrap();
        let pops = result.physical.populations();
        assert!((pops[0] - 1.0).abs() < 1e-12);
        assert!(pops[1].abs() < 1e-12 && pops[2].abs() < 1e-12 && pops[3].abs() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent() {
        let mut stream = Stream::new(0x1DE);
        for _ in 0..25 {
            let raw = random_hermitian_trace_one(&mut stream);
            let once = project_to_physical(&raw).unwrap();
            let twice = project_to_physical(once.physical.matrix()).unwrap();
            assert!(twice.distance_moved < 1e-12);
            assert!(once.physical.matrix().max_abs_diff(twice.physical.matrix()) < 1e-12);
        }
    }

    #[test]
    fn projection_preserves_eigenbasis() {
        // raw and physical commute: the projection only moves eigenvalues.
        let mut stream = Stream::new(0xBA51);
        for _ in 0..25 {
            let raw = random_hermitian_trace_one(&mut stream);
            let result = project_to_physical(&raw).unwrap();
            let ab = raw.mul(result.physical.matrix()).unwrap();
            let ba = result.physical.matrix().mul(&raw).unwrap();
            assert!(ab.max_abs_diff(&ba) < 1e-10);
        }
    }

    #[test]
    fn projection_beats_random_physical_candidates() {
        // 100 raw inputs, 1000 random trace-one PSD candidates each.
        let mut stream = Stream::new(0x0071);
        let candidate = |stream: &mut Stream| -> ComplexMatrix {
            let mut g = ComplexMatrix::zeros(4).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    g.set(i, j, Complex64::new(stream.range(-1.0, 1.0), stream.range(-1.0, 1.0)));
                }
            }
            let gram = g.mul(&g.dagger()).unwrap();
            let trace = gram.trace().re;
            gram.scale(Complex64::new(1.0 / trace, 0.0))
        };
        for _ in 0..100 {
            let raw = random_hermitian_trace_one(&mut stream);
            let result = project_to_physical(&raw).unwrap();
            for _ in 0..1000 {
                let psd = candidate(&mut stream);
                let candidate_distance = raw.frobenius_distance(&psd);
                assert!(
                    result.distance_moved <= candidate_distance + 1e-12,
                    "random candidate closer than projection"
                );
            }
        }
    }

    #[test]
    fn projection_rejects_bad_input() {
        let mut non_hermitian = ComplexMatrix::identity(4).unwrap().scale(Complex64::new(0.25, 0.0));
        non_hermitian.set(0, 1, Complex64::new(0.3, 0.0));
        assert!(project_to_physical(&non_hermitian).is_err());

        let wrong_trace = ComplexMatrix::identity(4).unwrap();
        assert!(project_to_physical(&wrong_trace).is_err());
    }

    #[test]
    fn reconstruct_exact_pipeline_is_identity() {
        let mut stream = Stream::new(0x7777);
        for _ in 0..10 {
            let rho = random_density_matrix(&mut stream);
            let result = reconstruct(&rho, &ReadoutMatrix::ideal(), &exact_settings()).unwrap();
            assert!(trace_distance(&result.physical, &rho) < 1e-9);
        }
    }

    #[test]
    fn reconstruct_sampled_superposition_is_close() {
        // Statistical check at reduced scale; the acceptance suite runs the
        // full 100-seed version.
        let rho = DensityMatrix::from_pure(&PureState::uniform_superposition()).unwrap();
        let r = device_r();
        let mut distances: Vec<f64> = (0..20)
            .map(|seed| {
                let settings = TomographySettings {
                    sampling: Sampling::Shots(10_000),
                    seed,
                    ..exact_settings()
                };
                let result = reconstruct(&rho, &r, &settings).unwrap();
                trace_distance(&result.physical, &rho)
            })
            .collect();
        distances.sort_by(f64::total_cmp);
        assert!(distances[18] < 0.05, "p95 distance {}", distances[18]);
    }

    #[test]
    fn reconstruct_maximally_mixed_eigenvalues() {
        let rho = DensityMatrix::maximally_mixed();
        let r = device_r();
        for seed in 0..5 {
            let settings = TomographySettings {
                sampling: Sampling::Shots(10_000),
                seed,
                ..exact_settings()
            };
            let result = reconstruct(&rho, &r, &settings).unwrap();
            let (eigenvalues, _) = eigh(result.physical.matrix());
            for &l in &eigenvalues {
                assert!((l - 0.25).abs() < 0.05, "eigenvalue {l} far from 0.25");
            }
        }
    }

    #[test]
    fn estimator_is_unbiased() {
        // Mean over 500 seeds at 10³ shots within 3 standard errors.
        let rho = DensityMatrix::from_pure(&PureState::uniform_superposition()).unwrap();
        let r = device_r();
        let seeds = 500u64;
        let shots = 1000u64;
        let mut sums: BTreeMap<PauliLabel, f64> = PauliLabel::extended().map(|l| (l, 0.0)).collect();
        let mut sq_sums: BTreeMap<PauliLabel, f64> =
            PauliLabel::extended().map(|l| (l, 0.0)).collect();
        for seed in 0..seeds {
            let settings = TomographySettings {
                sampling: Sampling::Shots(shots),
                seed: crate::rng::subseed(0xBEEF, seed),
                ..exact_settings()
            };
            let estimates = simulate_pauli_estimates(&rho, &r, &settings).unwrap();
            for label in PauliLabel::extended() {
                let v = estimates.value(label).unwrap();
                *sums.get_mut(&label).unwrap() += v;
                *sq_sums.get_mut(&label).unwrap() += v * v;
            }
        }
        for label in PauliLabel::extended() {
            let truth = expectation(&rho, label).unwrap();
            let mean = sums[&label] / seeds as f64;
            let var = (sq_sums[&label] / seeds as f64 - mean * mean).max(0.0);
            let standard_error = (var / seeds as f64).sqrt().max(1e-9);
            assert!(
                (mean - truth).abs() < 3.0 * standard_error,
                "label {label}: mean {mean} vs {truth} (se {standard_error})"
            );
        }
    }

    #[test]
    fn serialization_includes_summary_line() {
        let rho = DensityMatrix::basis(0).unwrap();
        let result = project_to_physical(rho.matrix()).unwrap();
        let fidelity = state_fidelity(&result.physical, &PureState::basis(4, 0).unwrap()).unwrap();
        let text = result.serialize(fidelity, 10_000, 42);
        assert!(text.contains("fidelity=1.000000"));
        assert!(text.contains("shots=10000 seed=42"));
        assert_eq!(text.lines().count(), 5);
    }
}
