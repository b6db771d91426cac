//! Hermitian eigendecomposition by cyclic complex Jacobi sweeps.
//!
//! The matrices here are 2×2 or 4×4, so robustness matters more than speed:
//! Jacobi converges unconditionally for Hermitian input and keeps the
//! accumulated eigenvector matrix unitary to machine precision.

use super::ComplexMatrix;
use crate::tol;
use num_complex::Complex64;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of the Hermitian part of `m`.
///
/// Returns `(eigenvalues, vectors)` with eigenvalues ascending and the i-th
/// column of `vectors` the corresponding eigenvector, so that
/// m = vectors · diag(eigenvalues) · vectors†.
pub fn eigh(m: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = m.dim();
    let mut a = m.hermitize();
    let mut u = ComplexMatrix::identity(n).expect("valid dim");

    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j).norm())
        .fold(1.0_f64, f64::max);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= tol::EIGEN_OFF_DIAGONAL * scale {
            break;
        }

        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                // Factor out the phase of a_pq, then rotate the remaining
                // real-symmetric 2x2 block: tan(2θ) = 2|a_pq| / (a_pp − a_qq).
                let phase = apq / mag;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let theta = 0.5 * (2.0 * mag).atan2(app - aqq);
                let c = theta.cos();
                let s = theta.sin();

                // v is the plane rotation diag-embedded at (p, q):
                //   v[p][p] = c, v[p][q] = −s, v[q][p] = conj(phase)·s,
                //   v[q][q] = conj(phase)·c.
                let vpp = Complex64::new(c, 0.0);
                let vpq = Complex64::new(-s, 0.0);
                let vqp = phase.conj() * s;
                let vqq = phase.conj() * c;

                // a ← v† a v applied to columns/rows p, q only.
                for r in 0..n {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, arp * vpp + arq * vqp);
                    a.set(r, q, arp * vpq + arq * vqq);
                }
                for col in 0..n {
                    let apc = a.get(p, col);
                    let aqc = a.get(q, col);
                    a.set(p, col, vpp.conj() * apc + vqp.conj() * aqc);
                    a.set(q, col, vpq.conj() * apc + vqq.conj() * aqc);
                }
                a.set(p, q, Complex64::ZERO);
                a.set(q, p, Complex64::ZERO);

                for r in 0..n {
                    let urp = u.get(r, p);
                    let urq = u.get(r, q);
                    u.set(r, p, urp * vpp + urq * vqp);
                    u.set(r, q, urp * vpq + urq * vqq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n).expect("valid dim");
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, u.get(r, old_col));
        }
    }
    (eigenvalues, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{pauli_operator, PauliLabel, Pauli};
    use crate::rng::Stream;

    fn reconstruct(eigenvalues: &[f64], vectors: &ComplexMatrix) -> ComplexMatrix {
        let n = vectors.dim();
        let mut lambda = ComplexMatrix::zeros(n).unwrap();
        for (i, &l) in eigenvalues.iter().enumerate() {
            lambda.set(i, i, Complex64::new(l, 0.0));
        }
        vectors.mul(&lambda).unwrap().mul(&vectors.dagger()).unwrap()
    }

    fn random_hermitian(dim: usize, stream: &mut Stream) -> ComplexMatrix {
        let mut g = ComplexMatrix::zeros(dim).unwrap();
        for i in 0..dim {
            for j in 0..dim {
                g.set(i, j, Complex64::new(stream.range(-1.0, 1.0), stream.range(-1.0, 1.0)));
            }
        }
        g.hermitize()
    }

    #[test]
    fn diagonal_matrix_is_its_own_decomposition() {
        let m = ComplexMatrix::from_real(4, &[
            3.0, 0.0, 0.0, 0.0,
            0.0, -1.0, 0.0, 0.0,
            0.0, 0.0, 2.0, 0.0,
            0.0, 0.0, 0.0, 0.5,
        ])
        .unwrap();
        let (vals, vecs) = eigh(&m);
        assert_eq!(vals, vec![-1.0, 0.5, 2.0, 3.0]);
        assert!(vecs.is_unitary(1e-12));
    }

    #[test]
    fn pauli_zz_eigenvalues() {
        let zz = pauli_operator(PauliLabel::new(Pauli::Z, Pauli::Z));
        let (vals, _) = eigh(&zz);
        assert!((vals[0] + 1.0).abs() < 1e-13);
        assert!((vals[1] + 1.0).abs() < 1e-13);
        assert!((vals[2] - 1.0).abs() < 1e-13);
        assert!((vals[3] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut stream = Stream::new(0xE16E);
        for _ in 0..100 {
            let m = random_hermitian(4, &mut stream);
            let (vals, vecs) = eigh(&m);
            assert!(vecs.is_unitary(1e-12));
            let rebuilt = reconstruct(&vals, &vecs);
            assert!(m.max_abs_diff(&rebuilt) < 1e-11, "reconstruction error too large");
            for w in vals.windows(2) {
                assert!(w[0] <= w[1], "eigenvalues not sorted");
            }
        }
    }

    #[test]
    fn trace_equals_eigenvalue_sum() {
        let mut stream = Stream::new(0xACE);
        for _ in 0..50 {
            let m = random_hermitian(4, &mut stream);
            let (vals, _) = eigh(&m);
            assert!((m.trace().re - vals.iter().sum::<f64>()).abs() < 1e-11);
        }
    }

    #[test]
    fn dim2_also_supported() {
        let mut stream = Stream::new(0xD2);
        for _ in 0..50 {
            let m = random_hermitian(2, &mut stream);
            let (vals, vecs) = eigh(&m);
            let rebuilt = reconstruct(&vals, &vecs);
            assert!(m.max_abs_diff(&rebuilt) < 1e-12);
        }
    }
}
