//! Dense complex linear algebra and quantum-state primitives for the
//! two-qubit register (dimensions 2 and 4).
//!
//! Basis ordering is |00⟩, |01⟩, |10⟩, |11⟩ with qubit I as the left
//! (most-significant) factor, and σ_z|0⟩ = +|0⟩ so that |0⟩ is the ground
//! state of a −νσ_z/2 qubit Hamiltonian. Every module in the crate shares
//! these conventions.

mod eigen;
mod text;

pub use eigen::eigh;
pub use text::{
    format_complex_matrix, format_density_matrix, parse_complex_matrix, parse_density_matrix,
};

use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64;

/// A dense row-major complex matrix of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    fn check_dim(dim: usize) -> Result<()> {
        if dim == 2 || dim == 4 {
            Ok(())
        } else {
            Err(Error::invalid(format!("matrix dimension must be 2 or 4, got {dim}")))
        }
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(ComplexMatrix { dim, entries: vec![Complex64::ZERO; dim * dim] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        Ok(m)
    }

    /// Build from row-major entries; the length must equal dim².
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(ComplexMatrix { dim, entries })
    }

    /// Build from row-major real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_entries(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::invalid(format!(
                "dimension mismatch in matrix product: {} vs {}",
                self.dim, other.dim
            )));
        }
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n)?;
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::invalid("dimension mismatch in matrix sum"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix::from_entries(self.dim, entries)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::invalid("dimension mismatch in matrix difference"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix::from_entries(self.dim, entries)
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix { dim: n, entries: vec![Complex64::ZERO; n * n] };
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise |a − b|.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius (Hilbert–Schmidt) distance to another matrix.
    pub fn frobenius_distance(&self, other: &ComplexMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tolerance {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_unitary(&self, tolerance: f64) -> bool {
        let gram = self.dagger().mul(self).expect("same dim");
        let id = ComplexMatrix::identity(self.dim).expect("valid dim");
        gram.max_abs_diff(&id) <= tolerance
    }

    /// Hermitian part (A + A†)/2.
    pub fn hermitize(&self) -> ComplexMatrix {
        let dag = self.dagger();
        let mut out = self.clone();
        for i in 0..self.dim * self.dim {
            out.entries[i] = (self.entries[i] + dag.entries[i]) * 0.5;
        }
        out
    }

    /// Apply to a column vector.
    pub fn apply_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::invalid("vector length does not match matrix dimension"));
        }
        let mut out = vec![Complex64::ZERO; self.dim];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, &x) in v.iter().enumerate() {
                *o += self.get(i, j) * x;
            }
        }
        Ok(out)
    }
}

/// Kronecker product of two 2×2 matrices; qubit I is the left factor.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::invalid(format!(
            "tensor_product expects two 2x2 matrices, got {}x{} and {}x{}",
            a.dim(),
            a.dim(),
            b.dim(),
            b.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.set(2 * i + k, 2 * j + l, a.get(i, j) * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Single-qubit Pauli operator, including the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// The 2×2 matrix, with σ_z = diag(1, −1).
    pub fn matrix(self) -> ComplexMatrix {
        let i = Complex64::I;
        let one = Complex64::ONE;
        let zero = Complex64::ZERO;
        let entries = match self {
            Pauli::I => vec![one, zero, zero, one],
            Pauli::X => vec![zero, one, one, zero],
            Pauli::Y => vec![zero, -i, i, zero],
            Pauli::Z => vec![one, zero, zero, -one],
        };
        ComplexMatrix::from_entries(2, entries).expect("static 2x2")
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        }
    }
}

/// A two-qubit Pauli label; the 15 non-(I,I) labels form the extended set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliLabel {
    pub first: Pauli,
    pub second: Pauli,
}

impl PauliLabel {
    pub fn new(first: Pauli, second: Pauli) -> Self {
        PauliLabel { first, second }
    }

    /// All 16 labels in row-major (first, second) order.
    pub fn all() -> impl Iterator<Item = PauliLabel> {
        Pauli::ALL
            .into_iter()
            .flat_map(|f| Pauli::ALL.into_iter().map(move |s| PauliLabel::new(f, s)))
    }

    /// The 15 measurement labels, excluding (I, I).
    pub fn extended() -> impl Iterator<Item = PauliLabel> {
        Self::all().filter(|l| !l.is_identity())
    }

    pub fn is_identity(self) -> bool {
        self.first == Pauli::I && self.second == Pauli::I
    }
}

impl std::fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.first.symbol(), self.second.symbol())
    }
}

/// The 4×4 operator for a two-qubit Pauli label.
pub fn pauli_operator(label: PauliLabel) -> ComplexMatrix {
    tensor_product(&label.first.matrix(), &label.second.matrix()).expect("2x2 inputs")
}

/// A normalized pure state of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if dim != 2 && dim != 4 {
            return Err(Error::invalid(format!("state dimension must be 2 or 4, got {dim}")));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::PURE_NORM {
            return Err(Error::invalid(format!("state norm {norm} is not 1")));
        }
        Ok(PureState { amplitudes })
    }

    /// Computational basis state |index⟩.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::invalid(format!("basis index {index} out of range for dim {dim}")));
        }
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        PureState::new(amplitudes)
    }

    /// |φ⟩ = ½ Σ_uv |uv⟩, the uniform two-qubit superposition.
    pub fn uniform_superposition() -> Self {
        let half = Complex64::new(0.5, 0.0);
        PureState::new(vec![half; 4]).expect("normalized")
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::invalid("dimension mismatch in inner product"));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// u|self⟩ for a unitary u of matching dimension.
    pub fn apply(&self, u: &ComplexMatrix) -> Result<PureState> {
        if u.dim() != self.dim() {
            return Err(Error::invalid("dimension mismatch applying operator to state"));
        }
        if !u.is_unitary(tol::UNITARY) {
            return Err(Error::invalid("operator applied to pure state is not unitary"));
        }
        let amplitudes = u.apply_vec(&self.amplitudes)?;
        PureState::new(amplitudes)
    }
}

/// A physical two-qubit density matrix: 4×4, Hermitian, trace one, PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate all physicality invariants, including the eigenvalue floor.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::invalid("density matrix must be 4x4"));
        }
        if !matrix.is_hermitian(tol::HERMITIAN) {
            return Err(Error::invalid("density matrix is not Hermitian"));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::TRACE_ONE || tr.im.abs() > tol::TRACE_ONE {
            return Err(Error::invalid(format!("density matrix trace {tr} is not 1")));
        }
        let (eigenvalues, _) = eigh(&matrix);
        if eigenvalues.iter().any(|&l| l < -tol::PSD_FLOOR) {
            return Err(Error::invalid(format!(
                "density matrix has negative eigenvalue {:.3e}",
                eigenvalues[0]
            )));
        }
        Ok(DensityMatrix { matrix })
    }

    /// Fast-path constructor for outputs of unitaries and CPTP channels,
    /// which preserve positivity exactly in exact arithmetic. The result is
    /// re-hermitized; trace is still checked.
    pub(crate) fn from_evolution(matrix: ComplexMatrix) -> Result<Self> {
        let matrix = matrix.hermitize();
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol::TRACE_ONE {
            return Err(Error::InternalConsistency(format!(
                "evolved state trace drifted to {}",
                tr.re
            )));
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn from_pure(state: &PureState) -> Result<Self> {
        if state.dim() != 4 {
            return Err(Error::invalid("density matrix requires a two-qubit state"));
        }
        let mut m = ComplexMatrix::zeros(4)?;
        for r in 0..4 {
            for s in 0..4 {
                m.set(r, s, state.amplitude(r) * state.amplitude(s).conj());
            }
        }
        Ok(DensityMatrix { matrix: m })
    }

    /// |index⟩⟨index| in the computational basis.
    pub fn basis(index: usize) -> Result<Self> {
        Self::from_pure(&PureState::basis(4, index)?)
    }

    pub fn maximally_mixed() -> Self {
        let m = ComplexMatrix::identity(4).expect("dim 4").scale(Complex64::new(0.25, 0.0));
        DensityMatrix { matrix: m }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Real parts of the diagonal, i.e. the computational-basis populations.
    pub fn populations(&self) -> [f64; 4] {
        let mut p = [0.0; 4];
        for (i, slot) in p.iter_mut().enumerate() {
            *slot = self.matrix.get(i, i).re;
        }
        p
    }
}

/// u·ρ·u† for a unitary u (checked within [`tol::UNITARY`]).
pub fn apply_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    if u.dim() != 4 {
        return Err(Error::invalid("unitary must be 4x4"));
    }
    if !u.is_unitary(tol::UNITARY) {
        return Err(Error::invalid("operator is not unitary"));
    }
    let evolved = u.mul(rho.matrix())?.mul(&u.dagger())?;
    DensityMatrix::from_evolution(evolved)
}

/// tr(ρ·P) for a two-qubit Pauli label; the imaginary part must be below
/// [`tol::EXPECTATION_IMAG`] and is then discarded.
pub fn expectation(rho: &DensityMatrix, label: PauliLabel) -> Result<f64> {
    let value = rho.matrix().mul(&pauli_operator(label))?.trace();
    if value.im.abs() > tol::EXPECTATION_IMAG {
        return Err(Error::InternalConsistency(format!(
            "expectation of {label} has imaginary part {:.3e}",
            value.im
        )));
    }
    Ok(value.re)
}

/// State fidelity F = ⟨ψ|ρ|ψ⟩.
pub fn state_fidelity(rho: &DensityMatrix, psi: &PureState) -> Result<f64> {
    if psi.dim() != 4 {
        return Err(Error::invalid("fidelity requires a two-qubit pure state"));
    }
    let rho_psi = rho.matrix().apply_vec(psi.amplitudes())?;
    let value: Complex64 = psi
        .amplitudes()
        .iter()
        .zip(&rho_psi)
        .map(|(a, b)| a.conj() * b)
        .sum();
    if value.im.abs() > tol::EXPECTATION_IMAG {
        return Err(Error::InternalConsistency(format!(
            "fidelity has imaginary part {:.3e}",
            value.im
        )));
    }
    Ok(value.re)
}

/// Trace distance ½·Σ|λ_i(a − b)|.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let diff = a.matrix().sub(b.matrix()).expect("both 4x4");
    let (eigenvalues, _) = eigh(&diff);
    0.5 * eigenvalues.iter().map(|l| l.abs()).sum::<f64>()
}
