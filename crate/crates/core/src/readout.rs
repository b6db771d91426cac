//! Single-shot readout model: per-qubit assignment errors, the shelving
//! rate switch, outcome crosstalk, the 4×4 readout matrix R, seeded shot
//! sampling, and readout-error correction.
//!
//! Readout is treated as projective-then-noisily-reported: crosstalk flips
//! an outcome bit with probability χ when the *other* qubit's projected
//! state is |1⟩, rather than disturbing the partner's state. The numeric R
//! of the device is not published, so it is constructed from the scalar
//! error rates plus the single crosstalk parameter, which calibration tunes.

use crate::error::{Error, Result};
use crate::qmat::DensityMatrix;
use crate::rng::uniform;
use crate::tol;

/// Per-qubit misassignment probabilities. `e0` is the probability of reading
/// 1 when the projected state is |0⟩ and `e1` the probability of reading 0
/// when it is |1⟩. With shelving active the `e1` slots hold the |2⟩-readout
/// rates; shelving is purely a switch between rate tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadoutErrorRates {
    pub e0_i: f64,
    pub e1_i: f64,
    pub e0_ii: f64,
    pub e1_ii: f64,
    pub shelving: bool,
    pub crosstalk: f64,
}

impl ReadoutErrorRates {
    pub fn new(
        e0_i: f64,
        e1_i: f64,
        e0_ii: f64,
        e1_ii: f64,
        shelving: bool,
        crosstalk: f64,
    ) -> Result<Self> {
        for (name, value) in [("e0_i", e0_i), ("e1_i", e1_i), ("e0_ii", e0_ii), ("e1_ii", e1_ii)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::invalid(format!("{name} = {value} must be in [0, 1]")));
            }
        }
        if e0_i + e1_i >= 1.0 || e0_ii + e1_ii >= 1.0 {
            return Err(Error::invalid("e0 + e1 must stay below 1 (positive contrast)"));
        }
        if !(0.0..=0.1).contains(&crosstalk) {
            return Err(Error::invalid(format!("crosstalk = {crosstalk} must be in [0, 0.1]")));
        }
        Ok(ReadoutErrorRates { e0_i, e1_i, e0_ii, e1_ii, shelving, crosstalk })
    }

    /// The measured simultaneous-readout rates of the device, per shelving
    /// mode: with |1⟩→|2⟩ shelving e = (5%, 11%) / (5%, 12%); without,
    /// e = (10%, 16%) / (12%, 15%).
    pub fn device_rates(shelving: bool, crosstalk: f64) -> Result<Self> {
        if shelving {
            Self::new(0.05, 0.11, 0.05, 0.12, true, crosstalk)
        } else {
            Self::new(0.10, 0.16, 0.12, 0.15, false, crosstalk)
        }
    }

    /// Per-qubit contrasts (1 − e0 − e1).
    pub fn contrasts(&self) -> (f64, f64) {
        (1.0 - self.e0_i - self.e1_i, 1.0 - self.e0_ii - self.e1_ii)
    }
}

/// Column-stochastic 4×4 matrix: entry (ab, uv) is the probability of
/// reporting outcome ab when the register was projected onto |uv⟩.
/// Rows and columns are ordered 00, 01, 10, 11.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadoutMatrix {
    entries: [[f64; 4]; 4],
}

/// Shot-noise handling: either the exact outcome distribution (the
/// infinite-statistics limit) or a finite number of sampled shots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    Exact,
    Shots(u64),
}

impl Sampling {
    /// Shot count for reporting; the exact path reports 0.
    pub fn shot_count(&self) -> u64 {
        match self {
            Sampling::Exact => 0,
            Sampling::Shots(n) => *n,
        }
    }

    /// The outcome frequencies for a distribution q: q itself on the exact
    /// path, or sampled counts normalized by n.
    pub fn frequencies(&self, q: &[f64; 4], seed: u64) -> Result<[f64; 4]> {
        match self {
            Sampling::Exact => Ok(*q),
            Sampling::Shots(n) => {
                let counts = sample_shots(q, *n, seed)?;
                let total = *n as f64;
                Ok([
                    counts[0] as f64 / total,
                    counts[1] as f64 / total,
                    counts[2] as f64 / total,
                    counts[3] as f64 / total,
                ])
            }
        }
    }
}

/// A single two-bit readout outcome (a, b) for qubits (I, II).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotOutcome {
    pub bits: (u8, u8),
}

impl ShotOutcome {
    pub fn from_index(index: usize) -> Self {
        ShotOutcome { bits: (((index >> 1) & 1) as u8, (index & 1) as u8) }
    }

    pub fn index(&self) -> usize {
        (self.bits.0 as usize) * 2 + self.bits.1 as usize
    }
}

impl ReadoutMatrix {
    /// Identity readout: no assignment errors.
    pub fn ideal() -> Self {
        let mut entries = [[0.0; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        ReadoutMatrix { entries }
    }

    pub fn entry(&self, outcome: usize, input: usize) -> f64 {
        self.entries[outcome][input]
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    fn from_entries(entries: [[f64; 4]; 4]) -> Result<Self> {
        for col in 0..4 {
            let sum: f64 = (0..4).map(|row| entries[row][col]).sum();
            if (sum - 1.0).abs() > tol::COLUMN_STOCHASTIC {
                return Err(Error::invalid(format!("column {col} sums to {sum}, not 1")));
            }
            for row in 0..4 {
                if !(0.0..=1.0).contains(&entries[row][col]) {
                    return Err(Error::invalid(format!(
                        "entry ({row},{col}) = {} outside [0, 1]",
                        entries[row][col]
                    )));
                }
            }
        }
        let det = det4(&entries);
        if det.abs() < tol::READOUT_DET_FLOOR {
            return Err(Error::invalid(format!(
                "readout matrix is numerically singular (det {det:.3e})"
            )));
        }
        Ok(ReadoutMatrix { entries })
    }

    /// q = R·p for a probability vector p over projected states.
    pub fn forward(&self, p: &[f64; 4]) -> [f64; 4] {
        let mut q = [0.0; 4];
        for (row, q_slot) in q.iter_mut().enumerate() {
            for col in 0..4 {
                *q_slot += self.entries[row][col] * p[col];
            }
        }
        q
    }

    /// |det R|, the invertibility check used before correction.
    pub fn determinant(&self) -> f64 {
        det4(&self.entries)
    }

    /// R⁻¹ · q by Gaussian elimination with partial pivoting.
    pub fn invert_apply(&self, q: &[f64; 4]) -> Result<[f64; 4]> {
        if self.determinant().abs() < tol::READOUT_DET_FLOOR {
            return Err(Error::SingularMatrix(format!(
                "readout matrix determinant {:.3e} below floor",
                self.determinant()
            )));
        }
        let mut a = self.entries;
        let mut b = *q;
        for col in 0..4 {
            let pivot_row = (col..4)
                .max_by(|&r1, &r2| a[r1][col].abs().total_cmp(&a[r2][col].abs()))
                .expect("nonempty range");
            if a[pivot_row][col].abs() < 1e-14 {
                return Err(Error::SingularMatrix("zero pivot inverting readout matrix".into()));
            }
            a.swap(col, pivot_row);
            b.swap(col, pivot_row);
            let pivot = a[col][col];
            for row in 0..4 {
                if row == col {
                    continue;
                }
                let factor = a[row][col] / pivot;
                for k in col..4 {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
        let mut x = [0.0; 4];
        for i in 0..4 {
            x[i] = b[i] / a[i][i];
        }
        Ok(x)
    }

    /// CSV in the published layout: columns are input states |00⟩..|11⟩,
    /// rows are outcomes 00..11.
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
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot_row = (col..4)
            .max_by(|&r1, &r2| a[r1][col].abs().total_cmp(&a[r2][col].abs()))
            .expect("nonempty range");
        if a[pivot_row][col].abs() < 1e-300 {
            return 0.0;
        }
        if pivot_row != col {
            a.swap(col, pivot_row);
            det = -det;
        }
        det *= a[col][col];
        for row in (col + 1)..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    det
}

/// Build R from the error rates: the tensor product of the per-qubit 2×2
/// confusion matrices [[1−e0, e1], [e0, 1−e1]], then crosstalk applied per
/// column as an outcome-bit flip with probability χ conditioned on the other
/// qubit's projected state being |1⟩. χ = 0 reduces exactly to the tensor
/// product.
pub fn build_readout_matrix(rates: &ReadoutErrorRates) -> Result<ReadoutMatrix> {
    // Confusion matrices: conf[outcome][true_state].
    let conf_i = [[1.0 - rates.e0_i, rates.e1_i], [rates.e0_i, 1.0 - rates.e1_i]];
    let conf_ii = [[1.0 - rates.e0_ii, rates.e1_ii], [rates.e0_ii, 1.0 - rates.e1_ii]];
    let chi = rates.crosstalk;

    let mut entries = [[0.0; 4]; 4];
    for u in 0..2usize {
        for v in 0..2usize {
            let col = 2 * u + v;
            // Base column, then conditional flips of each outcome bit.
            let mut column = [0.0; 4];
            for a in 0..2usize {
                for b in 0..2usize {
                    column[2 * a + b] = conf_i[a][u] * conf_ii[b][v];
                }
            }
            if chi > 0.0 {
                // Qubit I's outcome bit flips iff the partner was projected
                // onto |1⟩ (v = 1), and symmetrically for qubit II.
                if v == 1 {
                    column = flip_bit_with_probability(&column, 0, chi);
                }
                if u == 1 {
                    column = flip_bit_with_probability(&column, 1, chi);
                }
            }
            let sum: f64 = column.iter().sum();
            for a in 0..2usize {
                for b in 0..2usize {
                    entries[2 * a + b][col] = column[2 * a + b] / sum;
                }
            }
        }
    }
    ReadoutMatrix::from_entries(entries)
}

/// Mix a column with its bit-flipped image: out = (1−χ)·col + χ·flip(col).
/// `bit` 0 flips qubit I's outcome bit, 1 flips qubit II's.
fn flip_bit_with_probability(column: &[f64; 4], bit: usize, chi: f64) -> [f64; 4] {
    let mask = if bit == 0 { 2usize } else { 1usize };
    let mut out = [0.0; 4];
    for (idx, slot) in out.iter_mut().enumerate() {
        *slot = (1.0 - chi) * column[idx] + chi * column[idx ^ mask];
    }
    out
}

/// Outcome distribution q = R·p from the diagonal of a physical state.
/// Diagonal values in [−1e-10, 0) are clipped to zero and the vector
/// renormalized before applying R.
pub fn outcome_distribution(rho: &DensityMatrix, r: &ReadoutMatrix) -> [f64; 4] {
    let mut p = rho.populations();
    for v in p.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let sum: f64 = p.iter().sum();
    for v in p.iter_mut() {
        *v /= sum;
    }
    r.forward(&p)
}

/// n categorical draws from q, deterministic in (seed, shot index): shot i
/// uses the sub-seeded uniform `uniform(seed, i)`, so any partition of the
/// shot range over threads or batches yields identical counts.
pub fn sample_shots(q: &[f64; 4], n: u64, seed: u64) -> Result<[u64; 4]> {
    if n == 0 {
        return Err(Error::invalid("shot count must be at least 1"));
    }
    let sum: f64 = q.iter().sum();
    if (sum - 1.0).abs() > tol::DISTRIBUTION_SUM || q.iter().any(|&p| p < -1e-12) {
        return Err(Error::invalid(format!("outcome distribution not normalized (sum {sum})")));
    }
    let mut cumulative = [0.0; 4];
    let mut acc = 0.0;
    for (i, &p) in q.iter().enumerate() {
        acc += p.max(0.0);
        cumulative[i] = acc;
    }
    cumulative[3] = f64::INFINITY; // guard against rounding at the top end

    let mut counts = [0u64; 4];
    for shot in 0..n {
        let u = uniform(seed, shot);
        let mut outcome = 3;
        for (i, &edge) in cumulative.iter().enumerate() {
            if u < edge {
                outcome = i;
                break;
            }
        }
        counts[outcome] += 1;
    }
    Ok(counts)
}

/// Readout-error correction: p̂ = R⁻¹·q̂. Entries may be negative or exceed
/// one (statistical noise); no clipping happens here — physicality is
/// restored downstream by the tomography projection.
pub fn correct_distribution(q_hat: &[f64; 4], r: &ReadoutMatrix) -> Result<[f64; 4]> {
    r.invert_apply(q_hat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;
    use crate::testutil::random_density_matrix;
    use crate::tol;

    fn device_rates() -> ReadoutErrorRates {
        ReadoutErrorRates::device_rates(true, 0.0).unwrap()
    }

    #[test]
    fn zero_errors_give_identity_matrix() {
        let rates = ReadoutErrorRates::new(0.0, 0.0, 0.0, 0.0, false, 0.0).unwrap();
        let r = build_readout_matrix(&rates).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_eq!(r.entry(i, j), expected);
            }
        }
    }

    #[test]
    fn device_rate_column_for_00() {
        // Product oracle: column |00⟩ = (0.95·0.95, 0.95·0.05, 0.05·0.95, 0.05·0.05).
        let r = build_readout_matrix(&device_rates()).unwrap();
        let expected = [0.9025, 0.0475, 0.0475, 0.0025];
        for (row, &e) in expected.iter().enumerate() {
            assert!((r.entry(row, 0) - e).abs() < 1e-15, "row {row}");
        }
    }

    #[test]
    fn columns_are_stochastic_for_random_rates() {
        let mut stream = Stream::new(0x57C);
        for _ in 0..100 {
            let e0_i = stream.range(0.0, 0.4);
            let e1_i = stream.range(0.0, 0.5);
            let e0_ii = stream.range(0.0, 0.4);
            let e1_ii = stream.range(0.0, 0.5);
            let chi = stream.range(0.0, 0.1);
            let rates = ReadoutErrorRates::new(e0_i, e1_i, e0_ii, e1_ii, false, chi).unwrap();
            let r = build_readout_matrix(&rates).unwrap();
            for col in 0..4 {
                let sum: f64 = (0..4).map(|row| r.entry(row, col)).sum();
                assert!((sum - 1.0).abs() < tol::COLUMN_STOCHASTIC);
            }
        }
    }

    #[test]
    fn chi_zero_factorizes_as_tensor_product() {
        let rates = ReadoutErrorRates::new(0.07, 0.12, 0.04, 0.09, false, 0.0).unwrap();
        let r = build_readout_matrix(&rates).unwrap();
        let conf_i = [[0.93, 0.12], [0.07, 0.88]];
        let conf_ii = [[0.96, 0.09], [0.04, 0.91]];
        for a in 0..2 {
            for b in 0..2 {
                for u in 0..2 {
                    for v in 0..2 {
                        let expected = conf_i[a][u] * conf_ii[b][v];
                        let got = r.entry(2 * a + b, 2 * u + v);
                        assert!((got - expected).abs() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn contrasts_match_device_values() {
        let (c1, c2) = ReadoutErrorRates::device_rates(true, 0.0).unwrap().contrasts();
        assert!((c1 - 0.84).abs() < 1e-12);
        assert!((c2 - 0.83).abs() < 1e-12);
        let (c1, c2) = ReadoutErrorRates::device_rates(false, 0.0).unwrap().contrasts();
        assert!((c1 - 0.74).abs() < 1e-12);
        assert!((c2 - 0.73).abs() < 1e-12);
    }

    #[test]
    fn invalid_rates_rejected() {
        assert!(ReadoutErrorRates::new(-0.1, 0.1, 0.1, 0.1, false, 0.0).is_err());
        assert!(ReadoutErrorRates::new(0.6, 0.5, 0.1, 0.1, false, 0.0).is_err());
        assert!(ReadoutErrorRates::new(0.1, 0.1, 0.1, 0.1, false, 0.2).is_err());
    }

    #[test]
    fn outcome_distribution_of_basis_state() {
        let rho = DensityMatrix::basis(0).unwrap();
        let q = outcome_distribution(&rho, &ReadoutMatrix::ideal());
        assert_eq!(q, [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn outcome_distribution_of_maximally_mixed_is_row_sums() {
        let r = build_readout_matrix(&device_rates()).unwrap();
        let rho = DensityMatrix::maximally_mixed();
        let q = outcome_distribution(&rho, &r);
        for row in 0..4 {
            let expected: f64 = (0..4).map(|col| r.entry(row, col)).sum::<f64>() / 4.0;
            assert!((q[row] - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn outcome_distribution_of_11_is_last_column() {
        // Matrix-vector oracle against the |11⟩ column.
        let r = build_readout_matrix(&device_rates()).unwrap();
        let rho = DensityMatrix::basis(3).unwrap();
        let q = outcome_distribution(&rho, &r);
        for row in 0..4 {
            assert!((q[row] - r.entry(row, 3)).abs() < 1e-14);
        }
        // Column 4 explicitly: (0.11·0.12, 0.11·0.88, 0.89·0.12, 0.89·0.88).
        let expected = [0.0132, 0.0968, 0.1068, 0.7832];
        for (row, &e) in expected.iter().enumerate() {
            assert!((q[row] - e).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_certain_distribution() {
        let counts = sample_shots(&[1.0, 0.0, 0.0, 0.0], 1000, 7).unwrap();
        assert_eq!(counts, [1000, 0, 0, 0]);
    }

    #[test]
    fn sampling_is_deterministic() {
        let q = [0.4, 0.3, 0.2, 0.1];
        let a = sample_shots(&q, 5000, 99).unwrap();
        let b = sample_shots(&q, 5000, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_shots(&q, 5000, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_matches_binomial_statistics() {
        // 5σ band around n·p with σ = √(n·p(1−p)) ≈ 43.3 for p = ¼, n = 10⁴.
        let q = [0.25; 4];
        let n = 10_000u64;
        let sigma = (n as f64 * 0.25 * 0.75).sqrt();
        for seed in 0..20 {
            let counts = sample_shots(&q, n, seed).unwrap();
            assert_eq!(counts.iter().sum::<u64>(), n);
            for &c in &counts {
                assert!((c as f64 - 2500.0).abs() < 5.0 * sigma, "count {c} too far from 2500");
            }
        }
    }

    #[test]
    fn sampling_partition_invariance() {
        // Same per-shot seeds, whether drawn in one run or assembled from
        // arbitrary sub-ranges.
        let q = [0.1, 0.2, 0.3, 0.4];
        let n = 2000u64;
        let seed = 31;
        let full = sample_shots(&q, n, seed).unwrap();
        let mut merged = [0u64; 4];
        for shot in 0..n {
            let u = crate::rng::uniform(seed, shot);
            let mut acc = 0.0;
            let mut outcome = 3;
            for (i, &p) in q.iter().enumerate() {
                acc += p;
                if u < acc {
                    outcome = i;
                    break;
                }
            }
            merged[outcome] += 1;
        }
        assert_eq!(full, merged);
    }

    #[test]
    fn sampling_rejects_bad_input() {
        assert!(sample_shots(&[0.5, 0.1, 0.1, 0.1], 10, 0).is_err());
        assert!(sample_shots(&[0.25; 4], 0, 0).is_err());
    }

    #[test]
    fn correction_round_trips_exact_distributions() {
        let r = build_readout_matrix(&device_rates()).unwrap();
        let p = [0.6, 0.1, 0.2, 0.1];
        let q = r.forward(&p);
        let back = correct_distribution(&q, &r).unwrap();
        for (a, b) in p.iter().zip(&back) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((back.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn correction_with_identity_is_identity() {
        let q = [0.3, 0.3, 0.2, 0.2];
        let out = correct_distribution(&q, &ReadoutMatrix::ideal()).unwrap();
        for (a, b) in q.iter().zip(&out) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn correction_recovers_basis_from_r_column() {
        // Inverse oracle: feeding back the |00⟩ column must give e_00.
        let r = build_readout_matrix(&device_rates()).unwrap();
        let q = [r.entry(0, 0), r.entry(1, 0), r.entry(2, 0), r.entry(3, 0)];
        let p = correct_distribution(&q, &r).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-10);
        for &v in &p[1..] {
            assert!(v.abs() < 1e-10);
        }
    }

    #[test]
    fn correction_inverts_forward_for_random_states() {
        let mut stream = Stream::new(0xC0C0);
        let r = build_readout_matrix(
            &ReadoutErrorRates::new(0.05, 0.11, 0.05, 0.12, true, 0.02).unwrap(),
        )
        .unwrap();
        for _ in 0..100 {
            let rho = random_density_matrix(&mut stream);
            let p = rho.populations();
            let q = outcome_distribution(&rho, &r);
            let back = correct_distribution(&q, &r).unwrap();
            for (a, b) in p.iter().zip(&back) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}
