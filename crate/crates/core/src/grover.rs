//! The four-object Grover search: preparation, phase-encoding oracles,
//! universal decode, success-probability and fidelity accounting, and the
//! calibration sweep against the reference device's published numbers.
//!
//! The search over a four-state register needs a single oracle query: prepare
//! the uniform superposition, apply the oracle O_uv (an iSWAP followed by a
//! Z(±π/2) on each qubit, the four sign pairs tagging the four basis
//! states), then decode with an iSWAP followed by π/2 equatorial rotations.
//! Noiselessly the register ends in |uv⟩ with certainty.
//!
//! Two accounting schemes coexist, as on the device: the raw single-run
//! outcome statistics (success probability P_S at the configured readout
//! errors, never corrected), and tomography-based state fidelities with
//! readout correction (F_int after the oracle, F_final after decode).

use crate::error::{Error, Result};
use crate::gates::{Conventions, Gate, GateSequence, GateTimings, Qubit};
use crate::noise::{evolve_sequence, evolve_step, NoiseParams};
use crate::qmat::{state_fidelity, trace_distance, DensityMatrix, PureState};
use crate::readout::{outcome_distribution, sample_shots, ReadoutMatrix, Sampling};
use crate::rng::subseed;
use crate::tomography::{reconstruct, ReconstructionResult, TomographySettings};
use num_complex::Complex64;

/// Reference single-run success probabilities for oracles 00, 01, 10, 11.
pub const REFERENCE_SUCCESS: [f64; 4] = [0.67, 0.55, 0.62, 0.52];

/// Reference tomography fidelities after the oracle.
pub const REFERENCE_FIDELITY_INTERMEDIATE: [f64; 4] = [0.87, 0.80, 0.84, 0.82];

/// Reference tomography fidelities at the end of the algorithm.
pub const REFERENCE_FIDELITY_FINAL: [f64; 4] = [0.70, 0.62, 0.67, 0.66];

// Seed salts for the independent sampling stages of one run.
const SALT_SHOTS: u64 = 0x01;
const SALT_TOMO_AFTER_ORACLE: u64 = 0x02;
const SALT_TOMO_FINAL: u64 = 0x03;

/// One of the four oracles, identified by the basis state uv it tags.
/// The Z-rotation sign pair maps as (−,−)→00, (+,−)→01, (−,+)→10, (+,+)→11.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleId {
    tag: usize,
}

impl OracleId {
    pub const ALL: [OracleId; 4] =
        [OracleId { tag: 0 }, OracleId { tag: 1 }, OracleId { tag: 2 }, OracleId { tag: 3 }];

    pub fn from_tag(tag: usize) -> Result<Self> {
        if tag > 3 {
            return Err(Error::invalid(format!("oracle tag {tag} must be 0..=3")));
        }
        Ok(OracleId { tag })
    }

    pub fn from_bits(u: u8, v: u8) -> Result<Self> {
        if u > 1 || v > 1 {
            return Err(Error::invalid("oracle bits must be 0 or 1"));
        }
        Ok(OracleId { tag: (u as usize) * 2 + v as usize })
    }

    /// Basis index of the tagged state (0..=3 for 00..11).
    pub fn tag(&self) -> usize {
        self.tag
    }

    /// The (s_I, s_II) rotation signs. The iSWAP inside the oracle exchanges
    /// the qubits, so the sign on qubit I selects bit v and the sign on
    /// qubit II selects bit u.
    pub fn signs(&self) -> (f64, f64) {
        let u = (self.tag >> 1) & 1;
        let v = self.tag & 1;
        let s_i = if v == 1 { 1.0 } else { -1.0 };
        let s_ii = if u == 1 { 1.0 } else { -1.0 };
        (s_i, s_ii)
    }

    pub fn label(&self) -> &'static str {
        ["00", "01", "10", "11"][self.tag]
    }
}

/// Preparation: Y(π/2) on each qubit, producing |φ⟩ = ½ Σ |uv⟩ from |00⟩.
pub fn prep_sequence(_conventions: &Conventions, timings: &GateTimings) -> GateSequence {
    let quarter = std::f64::consts::FRAC_PI_2;
    GateSequence::from_gates(vec![
        Gate::ry(Qubit::I, quarter, timings.single_qubit_ns).expect("valid gate"),
        Gate::ry(Qubit::II, quarter, timings.single_qubit_ns).expect("valid gate"),
    ])
}

/// Oracle O_uv: iSWAP, then Z(s_I·π/2) on qubit I and Z(s_II·π/2) on
/// qubit II.
pub fn oracle_sequence(id: OracleId, _conventions: &Conventions, timings: &GateTimings) -> GateSequence {
    let quarter = std::f64::consts::FRAC_PI_2;
    let (s_i, s_ii) = id.signs();
    GateSequence::from_gates(vec![
        Gate::iswap(timings.iswap_ns()).expect("valid gate"),
        Gate::rz(Qubit::I, s_i * quarter, timings.z_rotation_ns).expect("valid gate"),
        Gate::rz(Qubit::II, s_ii * quarter, timings.z_rotation_ns).expect("valid gate"),
    ])
}

/// Universal decode: iSWAP, then π/2 rotations about the convention's decode
/// axis on each qubit. Independent of the oracle.
pub fn decode_sequence(conventions: &Conventions, timings: &GateTimings) -> GateSequence {
    let quarter = std::f64::consts::FRAC_PI_2;
    let axis = conventions.decode_axis;
    let make = |qubit| {
        let gate = match axis {
            crate::gates::DecodeAxis::X => Gate::rx(qubit, quarter, timings.single_qubit_ns),
            crate::gates::DecodeAxis::Y => Gate::ry(qubit, quarter, timings.single_qubit_ns),
        };
        gate.expect("valid gate")
    };
    GateSequence::from_gates(vec![
        Gate::iswap(timings.iswap_ns()).expect("valid gate"),
        make(Qubit::I),
        make(Qubit::II),
    ])
}

/// The tagged pure state ψ_uv: the uniform superposition with the sign of
/// component uv flipped.
pub fn tagged_pure_state(id: OracleId) -> PureState {
    let amplitudes: Vec<Complex64> = (0..4)
        .map(|r| {
            let sign = if r == id.tag() { -0.5 } else { 0.5 };
            Complex64::new(sign, 0.0)
        })
        .collect();
    PureState::new(amplitudes).expect("normalized")
}

/// The ideal post-oracle density matrix: every entry has magnitude ¼ and
/// phase π(δ_rt + δ_st). Pure and rank one.
pub fn ideal_tagged_state(id: OracleId) -> DensityMatrix {
    DensityMatrix::from_pure(&tagged_pure_state(id)).expect("pure state")
}

/// Everything a run needs besides the oracle choice, the readout matrix and
/// the seed.
#[derive(Debug, Clone, Copy)]
pub struct GroverSettings {
    pub noise: NoiseParams,
    pub conventions: Conventions,
    pub timings: GateTimings,
    /// Shot handling of the raw single-run outcomes.
    pub sampling: Sampling,
    /// Shot handling of each tomography setting.
    pub tomography_sampling: Sampling,
    /// Simulate tomography prerotations without decoherence.
    pub idealize_tomography_pulses: bool,
    /// Optional idle before the uncorrected single-shot readout, modeling
    /// relaxation during the readout pulse. Applied to the raw-outcome path
    /// only; the assignment-error rates already include readout decay, so
    /// this knob exists to study the F_final − P_S gap.
    pub prereadout_idle_ns: f64,
}

impl GroverSettings {
    pub fn ideal() -> Self {
        GroverSettings {
            noise: NoiseParams::disabled(),
            conventions: Conventions::canonical(),
            timings: GateTimings::default(),
            sampling: Sampling::Exact,
            tomography_sampling: Sampling::Exact,
            idealize_tomography_pulses: true,
            prereadout_idle_ns: 0.0,
        }
    }

    /// Device noise, canonical conventions, sampled shots.
    pub fn device(shots: u64, tomography_shots: u64) -> Self {
        GroverSettings {
            noise: NoiseParams::device_defaults(),
            conventions: Conventions::canonical(),
            timings: GateTimings::default(),
            sampling: Sampling::Shots(shots),
            tomography_sampling: Sampling::Shots(tomography_shots),
            idealize_tomography_pulses: false,
            prereadout_idle_ns: 0.0,
        }
    }
}

/// Reconstructed states and fidelities from the tomography branch of a run.
#[derive(Debug, Clone)]
pub struct TomographyOutcome {
    pub after_oracle: ReconstructionResult,
    pub final_state: ReconstructionResult,
    /// Fidelity of the reconstructed post-oracle state vs the ideal tagged state.
    pub f_int: f64,
    /// Fidelity of the reconstructed final state vs |uv⟩.
    pub f_final: f64,
}

/// Result of one oracle's run.
#[derive(Debug, Clone)]
pub struct AlgorithmResult {
    pub oracle: OracleId,
    /// Raw outcome counts; absent on the exact-distribution path.
    pub outcome_counts: Option<[u64; 4]>,
    /// Raw outcome frequencies (counts/shots, or the exact distribution).
    pub outcome_frequencies: [f64; 4],
    /// Fraction of runs whose raw two-bit outcome equals the tag.
    pub success_probability: f64,
    /// ⟨ψ_uv|ρ|ψ_uv⟩ directly from the simulated post-oracle state.
    pub fidelity_after_oracle: f64,
    /// ⟨uv|ρ|uv⟩ directly from the simulated final state (no readout error).
    pub fidelity_final: f64,
    pub tomography: Option<TomographyOutcome>,
}

/// Run the full sequence for one oracle: |00⟩ → prep → oracle → decode, then
/// raw readout statistics and, optionally, tomography of the post-oracle and
/// final states through fresh simulated measurement runs with independent
/// derived seeds. Success probability uses raw, uncorrected outcomes;
/// tomography applies readout correction.
pub fn run_algorithm(
    id: OracleId,
    r: &ReadoutMatrix,
    settings: &GroverSettings,
    seed: u64,
    with_tomography: bool,
) -> Result<AlgorithmResult> {
    let conventions = settings.conventions;
    let rho0 = DensityMatrix::basis(0)?;
    let after_prep = evolve_sequence(
        &rho0,
        prep_sequence(&conventions, &settings.timings).gates(),
        &settings.noise,
        &conventions,
    )?;
    let after_oracle = evolve_sequence(
        &after_prep,
        oracle_sequence(id, &conventions, &settings.timings).gates(),
        &settings.noise,
        &conventions,
    )?;
    let after_decode = evolve_sequence(
        &after_oracle,
        decode_sequence(&conventions, &settings.timings).gates(),
        &settings.noise,
        &conventions,
    )?;

    // Raw single-shot branch, optionally with pre-readout relaxation.
    let at_readout = if settings.prereadout_idle_ns > 0.0 {
        evolve_step(
            &after_decode,
            &Gate::idle(settings.prereadout_idle_ns)?,
            &settings.noise,
            &conventions,
        )?
    } else {
        after_decode.clone()
    };
    let q = outcome_distribution(&at_readout, r);
    let (outcome_counts, outcome_frequencies) = match settings.sampling {
        Sampling::Exact => (None, q),
        Sampling::Shots(n) => {
            let counts = sample_shots(&q, n, subseed(seed, SALT_SHOTS))?;
            let total = n as f64;
            let freq = [
                counts[0] as f64 / total,
                counts[1] as f64 / total,
                counts[2] as f64 / total,
                counts[3] as f64 / total,
            ];
            (Some(counts), freq)
        }
    };
    let success_probability = outcome_frequencies[id.tag()];

    let fidelity_after_oracle = state_fidelity(&after_oracle, &tagged_pure_state(id))?;
    let fidelity_final = state_fidelity(&after_decode, &PureState::basis(4, id.tag())?)?;

    let tomography = if with_tomography {
        let base = TomographySettings {
            sampling: settings.tomography_sampling,
            seed: 0,
            conventions,
            noise: settings.noise,
            timings: settings.timings,
            idealize_pulses: settings.idealize_tomography_pulses,
        };
        let after_oracle_rec = reconstruct(
            &after_oracle,
            r,
            &TomographySettings { seed: subseed(seed, SALT_TOMO_AFTER_ORACLE), ..base },
        )?;
        let final_rec = reconstruct(
            &after_decode,
            r,
            &TomographySettings { seed: subseed(seed, SALT_TOMO_FINAL), ..base },
        )?;
        let f_int = state_fidelity(&after_oracle_rec.physical, &tagged_pure_state(id))?;
        let f_final = state_fidelity(&final_rec.physical, &PureState::basis(4, id.tag())?)?;
        Some(TomographyOutcome { after_oracle: after_oracle_rec, final_state: final_rec, f_int, f_final })
    } else {
        None
    };

    Ok(AlgorithmResult {
        oracle: id,
        outcome_counts,
        outcome_frequencies,
        success_probability,
        fidelity_after_oracle,
        fidelity_final,
        tomography,
    })
}

/// Conditional outcome probabilities p_{ab/|uv⟩}: row ab, column uv.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalTable {
    entries: [[f64; 4]; 4],
}

impl ConditionalTable {
    pub fn new(entries: [[f64; 4]; 4]) -> Result<Self> {
        for col in 0..4 {
            let sum: f64 = (0..4).map(|row| entries[row][col]).sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::invalid(format!("table column {col} sums to {sum}, not 1")));
            }
        }
        Ok(ConditionalTable { entries })
    }

    pub fn entry(&self, outcome: usize, oracle: usize) -> f64 {
        self.entries[outcome][oracle]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("ab/uv,00,01,10,11\n");
        for (row, label) in ["00", "01", "10", "11"].iter().enumerate() {
            out.push_str(label);
            for col in 0..4 {
                out.push_str(&format!(",{:.6}", self.entries[row][col]));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines().skip(1) {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(Error::invalid(format!("table row `{line}` needs 5 fields")));
            }
            let mut row = [0.0; 4];
            for (i, field) in fields[1..].iter().enumerate() {
                row[i] = field
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad probability `{field}`")))?;
            }
            rows.push(row);
        }
        if rows.len() != 4 {
            return Err(Error::invalid(format!("table needs 4 rows, got {}", rows.len())));
        }
        ConditionalTable::new([rows[0], rows[1], rows[2], rows[3]])
    }
}

/// The golden measured conditional-probability table shipped with the crate
/// (`data/table1.csv`).
pub fn reference_table() -> ConditionalTable {
    ConditionalTable::from_csv(include_str!("../data/table1.csv")).expect("golden table is valid")
}

/// Run all four oracles (per-oracle derived seeds) and assemble the
/// conditional table from the raw outcome frequencies.
pub fn conditional_table(
    r: &ReadoutMatrix,
    settings: &GroverSettings,
    seed: u64,
) -> Result<ConditionalTable> {
    let mut entries = [[0.0; 4]; 4];
    for id in OracleId::ALL {
        let result = run_algorithm(id, r, settings, subseed(seed, id.tag() as u64), false)?;
        for row in 0..4 {
            entries[row][id.tag()] = result.outcome_frequencies[row];
        }
    }
    ConditionalTable::new(entries)
}

/// Per-outcome fidelities f_ab = p_{ab/|ab⟩} / Σ_uv p_{ab/|uv⟩} and their
/// mean: the probability that outcome ab identifies the oracle actually
/// applied, for a uniformly random oracle.
pub fn outcome_fidelity(table: &ConditionalTable) -> Result<([f64; 4], f64)> {
    let mut fidelities = [0.0; 4];
    for ab in 0..4 {
        let row_sum: f64 = (0..4).map(|uv| table.entry(ab, uv)).sum();
        if row_sum <= 0.0 {
            return Err(Error::DegenerateTable(format!("outcome {ab:02b} never occurs")));
        }
        fidelities[ab] = table.entry(ab, ab) / row_sum;
    }
    let average = fidelities.iter().sum::<f64>() / 4.0;
    Ok((fidelities, average))
}

/// Convention sets under which the noiseless algorithm is exact: the
/// post-oracle state matches the ideal tagged state for every oracle, and
/// the decoded register lands on the tag with probability 1.
pub fn convention_search() -> Vec<Conventions> {
    let timings = GateTimings::default();
    Conventions::all()
        .filter(|conventions| {
            OracleId::ALL.iter().all(|&id| {
                noiseless_oracle_is_exact(id, conventions, &timings).unwrap_or(false)
            })
        })
        .collect()
}

fn noiseless_oracle_is_exact(
    id: OracleId,
    conventions: &Conventions,
    timings: &GateTimings,
) -> Result<bool> {
    let noise = NoiseParams::disabled();
    let rho0 = DensityMatrix::basis(0)?;
    let after_prep = evolve_sequence(&rho0, prep_sequence(conventions, timings).gates(), &noise, conventions)?;
    let after_oracle = evolve_sequence(
        &after_prep,
        oracle_sequence(id, conventions, timings).gates(),
        &noise,
        conventions,
    )?;
    if trace_distance(&after_oracle, &ideal_tagged_state(id)) > 1e-10 {
        return Ok(false);
    }
    let after_decode = evolve_sequence(
        &after_oracle,
        decode_sequence(conventions, timings).gates(),
        &noise,
        conventions,
    )?;
    Ok((after_decode.populations()[id.tag()] - 1.0).abs() < 1e-10)
}

/// Result of the calibration sweep.
#[derive(Debug, Clone, Copy)]
pub struct CalibrationResult {
    pub chi: f64,
    pub prereadout_idle_ns: f64,
    /// Exact-path success probabilities at the best-fit parameters.
    pub success: [f64; 4],
    /// Direct final-state fidelities at the best-fit parameters.
    pub fidelity_final: [f64; 4],
    /// Σ (P_S − reference)² at the best fit.
    pub residual: f64,
}

/// Sweep χ ∈ [0, 0.05] (and optionally the pre-readout idle ∈ [0, 300] ns)
/// on the exact-distribution path, minimizing the squared error of the
/// success-probability quadruple against [`REFERENCE_SUCCESS`]. The readout
/// rates are rebuilt per χ from `shelving`; everything else comes from
/// `settings`.
pub fn calibrate(
    settings: &GroverSettings,
    shelving: bool,
    sweep_idle: bool,
) -> Result<CalibrationResult> {
    let chi_steps = 21;
    let idle_values: Vec<f64> = if sweep_idle {
        (0..=10).map(|i| i as f64 * 30.0).collect()
    } else {
        vec![settings.prereadout_idle_ns]
    };

    let mut best: Option<CalibrationResult> = None;
    for chi_index in 0..chi_steps {
        let chi = 0.05 * chi_index as f64 / (chi_steps - 1) as f64;
        let rates = crate::readout::ReadoutErrorRates::device_rates(shelving, chi)?;
        let r = crate::readout::build_readout_matrix(&rates)?;
        for &idle in &idle_values {
            let run_settings = GroverSettings {
                sampling: Sampling::Exact,
                prereadout_idle_ns: idle,
                ..*settings
            };
            let mut success = [0.0; 4];
            let mut fidelity_final = [0.0; 4];
            for id in OracleId::ALL {
                let result = run_algorithm(id, &r, &run_settings, 0, false)?;
                success[id.tag()] = result.success_probability;
                fidelity_final[id.tag()] = result.fidelity_final;
            }
            let residual: f64 = success
                .iter()
                .zip(&REFERENCE_SUCCESS)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let candidate =
                CalibrationResult { chi, prereadout_idle_ns: idle, success, fidelity_final, residual };
            if best.as_ref().is_none_or(|b| candidate.residual < b.residual) {
                best = Some(candidate);
            }
        }
    }
    best.ok_or_else(|| Error::InternalConsistency("empty calibration sweep".into()))
}
