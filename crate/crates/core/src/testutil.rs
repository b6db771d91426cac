//! Seeded random states and matrices, shared by unit, property, and
//! acceptance tests.

use crate::qmat::{ComplexMatrix, DensityMatrix, PureState};
use crate::rng::Stream;
use num_complex::Complex64;

/// Random physical density matrix: ρ = G·G† / tr(G·G†) for a random complex
/// G, which is PSD and trace-one by construction.
pub fn random_density_matrix(stream: &mut Stream) -> DensityMatrix {
    let mut g = ComplexMatrix::zeros(4).expect("dim 4");
    for i in 0..4 {
        for j in 0..4 {
            g.set(i, j, Complex64::new(stream.range(-1.0, 1.0), stream.range(-1.0, 1.0)));
        }
    }
    let gram = g.mul(&g.dagger()).expect("same dim");
    let trace = gram.trace().re;
    let normalized = gram.scale(Complex64::new(1.0 / trace, 0.0));
    DensityMatrix::new(normalized.hermitize()).expect("construction is physical")
}

/// Random normalized two-qubit pure state.
pub fn random_pure_state(stream: &mut Stream) -> PureState {
    loop {
        let amps: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(stream.range(-1.0, 1.0), stream.range(-1.0, 1.0)))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            let normalized = amps.into_iter().map(|a| a / norm).collect();
            return PureState::new(normalized).expect("normalized");
        }
    }
}

/// Random Hermitian trace-one (not necessarily positive) matrix, as produced
/// by noisy linear-inversion tomography.
pub fn random_hermitian_trace_one(stream: &mut Stream) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4).expect("dim 4");
    for i in 0..4 {
        for j in 0..4 {
            m.set(i, j, Complex64::new(stream.range(-0.5, 0.5), stream.range(-0.5, 0.5)));
        }
    }
    let mut h = m.hermitize();
    let shift = (1.0 - h.trace().re) / 4.0;
    for i in 0..4 {
        let d = h.get(i, i);
        h.set(i, i, Complex64::new(d.re + shift, 0.0));
    }
    h
}
