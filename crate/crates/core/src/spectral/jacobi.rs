use serde::{Deserialize, Serialize};

use super::{IntMatrix, SpectralError};

pub const MAX_SWEEPS: usize = 50;
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericSpectrum {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Off-diagonal Frobenius norm when iteration stopped.
    pub residual: f64,
    pub sweeps: usize,
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * s).sqrt()
}

/// Eigenvalues of a symmetric integer matrix by cyclic Jacobi rotations.
pub fn numeric_spectrum(m: &IntMatrix) -> Result<NumericSpectrum, SpectralError> {
    if !m.is_symmetric() {
        return Err(SpectralError::NotSymmetric);
    }
    jacobi_eigenvalues(m.to_f64(), m.size())
}

/// Cyclic Jacobi on a dense row-major symmetric matrix.
///
/// Pairs are visited in row-major upper-triangle order. Exactly zero
/// off-diagonal entries are skipped, so a block-diagonal input never couples
/// its blocks and costs only the work of its blocks' rotations.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<NumericSpectrum, SpectralError> {
    assert_eq!(a.len(), n * n);
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tol = RELATIVE_TOLERANCE * (1.0 + norm);
    let mut residual = off_norm(&a, n);
    let mut sweeps = 0;
    while residual >= tol {
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::NoConvergence { sweeps, residual });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    if g == 0.0 && h == 0.0 {
                        continue;
                    }
                    let np = c * g - s * h;
                    let nq = s * g + c * h;
                    a[r * n + p] = np;
                    a[p * n + r] = np;
                    a[r * n + q] = nq;
                    a[q * n + r] = nq;
                }
            }
        }
        residual = off_norm(&a, n);
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(f64::total_cmp);
    Ok(NumericSpectrum {
        values,
        residual,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_laplacian() {
        let m = IntMatrix::from_rows(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let s = numeric_spectrum(&m).unwrap();
        for (got, want) in s.values.iter().zip([0.0, 3.0, 3.0]) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn diagonal_is_exact() {
        let m = IntMatrix::from_rows(&[vec![5, 0, 0], vec![0, -2, 0], vec![0, 0, 7]]);
        let s = numeric_spectrum(&m).unwrap();
        assert_eq!(s.values, vec![-2.0, 5.0, 7.0]);
        assert_eq!(s.sweeps, 0);
    }

    #[test]
    fn golden_ratio_pair() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 1]]);
        let s = numeric_spectrum(&m).unwrap();
        let r5 = 5f64.sqrt();
        assert!((s.values[0] - (1.0 - r5) / 2.0).abs() < 1e-12);
        assert!((s.values[1] - (1.0 + r5) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![2, 0]]);
        assert!(matches!(
            numeric_spectrum(&m),
            Err(SpectralError::NotSymmetric)
        ));
    }

    #[test]
    fn empty_matrix() {
        let s = numeric_spectrum(&IntMatrix::zeros(0)).unwrap();
        assert!(s.values.is_empty());
    }
}
