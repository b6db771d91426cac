//! Text serialization of 4×4 matrices: four rows of four "re±im i" pairs,
//! row-major, 12 significant digits. Used by the CLI dump commands.

use super::{ComplexMatrix, DensityMatrix};
use crate::error::{Error, Result};
use num_complex::Complex64;

fn format_complex(z: Complex64) -> String {
    format!("{:+.11e}{:+.11e}i", z.re, z.im)
}

/// One line per row, entries separated by single spaces.
pub fn format_complex_matrix(m: &ComplexMatrix) -> String {
    let n = m.dim();
    let mut out = String::new();
    for r in 0..n {
        let row: Vec<String> = (0..n).map(|c| format_complex(m.get(r, c))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_density_matrix(rho: &DensityMatrix) -> String {
    format_complex_matrix(rho.matrix())
}

fn parse_complex(token: &str) -> Result<Complex64> {
    let body = token
        .strip_suffix('i')
        .ok_or_else(|| Error::invalid(format!("complex entry `{token}` missing trailing i")))?;
    // The imaginary part starts at the last sign that is not an exponent sign
    // and not the leading sign of the real part.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let b = bytes[idx];
        if (b == b'+' || b == b'-') && bytes[idx - 1] != b'e' && bytes[idx - 1] != b'E' {
            split = Some(idx);
            break;
        }
    }
    let split = split.ok_or_else(|| Error::invalid(format!("cannot split `{token}` into re/im")))?;
    let re: f64 = body[..split]
        .parse()
        .map_err(|_| Error::invalid(format!("bad real part in `{token}`")))?;
    let im: f64 = body[split..]
        .parse()
        .map_err(|_| Error::invalid(format!("bad imaginary part in `{token}`")))?;
    Ok(Complex64::new(re, im))
}

/// Parse the output of [`format_complex_matrix`] back into a 4×4 matrix.
pub fn parse_complex_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut entries = Vec::with_capacity(16);
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        for token in line.split_whitespace() {
            entries.push(parse_complex(token)?);
        }
    }
    ComplexMatrix::from_entries(4, entries)
}

/// Parse and validate a physical density matrix.
pub fn parse_density_matrix(text: &str) -> Result<DensityMatrix> {
    DensityMatrix::new(parse_complex_matrix(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::PureState;

    #[test]
    fn round_trip_preserves_entries() {
        let rho = DensityMatrix::from_pure(&PureState::uniform_superposition()).unwrap();
        let text = format_density_matrix(&rho);
        let back = parse_density_matrix(&text).unwrap();
        assert!(rho.matrix().max_abs_diff(back.matrix()) < 1e-11);
    }

    #[test]
    fn twelve_significant_digits() {
        let z = Complex64::new(0.25, -1.0 / 3.0);
        let s = format_complex(z);
        assert_eq!(s, "+2.50000000000e-1-3.33333333333e-1i");
        let back = parse_complex(&s).unwrap();
        assert!((back - z).norm() < 1e-11);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_complex("1.0+2.0").is_err());
        assert!(parse_complex("fooi").is_err());
    }
}
