use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::{jacobi_eigenvalues, IntMatrix, NumericSpectrum, SpectralError};
use crate::graph::CliqueDecomposition;
use crate::rational::{self, Rational};

/// Multiset of exact eigenvalues, ascending, without zero multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExactSpectrum {
    pub pairs: Vec<(Rational, u64)>,
}

impl ExactSpectrum {
    /// Sorts, merges equal eigenvalues and drops zero multiplicities.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, u64)>) -> Self {
        let mut merged: BTreeMap<Rational, u64> = BTreeMap::new();
        for (v, mult) in pairs {
            if mult > 0 {
                *merged.entry(v).or_insert(0) += mult;
            }
        }
        Self {
            pairs: merged.into_iter().collect(),
        }
    }

    pub fn from_integers(pairs: impl IntoIterator<Item = (i128, u64)>) -> Self {
        Self::from_pairs(pairs.into_iter().map(|(v, m)| (rational::int(v), m)))
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.pairs.iter().map(|p| p.1).sum()
    }

    pub fn trace(&self) -> Rational {
        self.pairs
            .iter()
            .map(|(v, m)| v * Rational::from_integer(BigInt::from(*m)))
            .sum()
    }

    pub fn is_integral(&self) -> bool {
        self.pairs.iter().all(|(v, _)| v.is_integer())
    }

    /// Σ multiplicity · |λ − Δ|.
    pub fn energy(&self, delta: &Rational) -> Rational {
        self.pairs
            .iter()
            .map(|(v, m)| (v - delta).abs() * Rational::from_integer(BigInt::from(*m)))
            .sum()
    }

    /// Eigenvalues repeated by multiplicity, as floats.
    pub fn expanded_f64(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(rational::to_f64(v), *m as usize))
            .collect()
    }

    /// `[[num, den, mult], ...]`
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.pairs
                .iter()
                .map(|(v, m)| {
                    let mut item = rational::to_json(v).as_array().cloned().unwrap_or_default();
                    item.push(Value::from(*m));
                    Value::Array(item)
                })
                .collect(),
        )
    }

    /// `{0^9, 24^5}` style rendering.
    pub fn to_text(&self) -> String {
        let items: Vec<String> = self
            .pairs
            .iter()
            .map(|(v, m)| format!("{}^{}", rational::to_text(v), m))
            .collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// CNL and CNSL spectra of a disjoint union of complete graphs.
///
/// Each copy of K_m contributes CNL eigenvalues 0 (once) and m(m-2)
/// (m-1 times), and CNSL eigenvalues 2(m-1)(m-2) (once) and (m-2)^2
/// (m-1 times).
pub fn exact_spectrum_clique_union(d: &CliqueDecomposition) -> (ExactSpectrum, ExactSpectrum) {
    let mut cnl = Vec::new();
    let mut cnsl = Vec::new();
    for &(m, l) in &d.parts {
        let mi = m as i128;
        cnl.push((0, l));
        cnl.push((mi * (mi - 2), l * (m - 1)));
        cnsl.push((2 * (mi - 1) * (mi - 2), l));
        cnsl.push(((mi - 2) * (mi - 2), l * (m - 1)));
    }
    (
        ExactSpectrum::from_integers(cnl),
        ExactSpectrum::from_integers(cnsl),
    )
}

/// Δ = tr(CNRS)/|V| for a clique union: every vertex of K_m has row sum (m-1)(m-2).
pub fn delta_clique_union(d: &CliqueDecomposition) -> Rational {
    let n = d.vertex_count();
    if n == 0 {
        return Rational::zero();
    }
    let trace: i128 = d
        .parts
        .iter()
        .map(|&(m, l)| {
            let m = m as i128;
            l as i128 * m * (m - 1) * (m - 2)
        })
        .sum();
    rational::ratio(trace, n as i128)
}

/// Δ = tr(CNRS)/n.
pub fn delta_of_cnrs(cnrs: &IntMatrix) -> Rational {
    if cnrs.size() == 0 {
        return Rational::zero();
    }
    rational::ratio(cnrs.trace(), cnrs.size() as i128)
}

/// Energy of the complete graph K_n: 2(n-1)(n-2).
pub fn complete_graph_energy(n: u64) -> Rational {
    let n = n as i128;
    if n < 2 {
        return Rational::zero();
    }
    rational::int(2 * (n - 1) * (n - 2))
}

pub fn numeric_energy(values: &[f64], delta: f64) -> f64 {
    values.iter().map(|v| (v - delta).abs()).sum()
}

fn to_big(m: &IntMatrix, shift: i64) -> Vec<Vec<BigInt>> {
    (0..m.size())
        .map(|i| {
            (0..m.size())
                .map(|j| BigInt::from(m.get(i, j) - if i == j { shift } else { 0 }))
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination. Returns (rank, determinant).
///
/// The determinant is 0 whenever the rank is deficient.
pub fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let n = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut negate = false;
    for col in 0..cols {
        if rank == n {
            break;
        }
        let Some(pivot) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            a.swap(pivot, rank);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = &prow[col] * &row[j] - &factor * &prow[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = prow[col].clone();
        rank += 1;
    }
    let det = if rank == n && n == cols {
        if n == 0 {
            BigInt::one()
        } else if negate {
            -a[n - 1][n - 1].clone()
        } else {
            a[n - 1][n - 1].clone()
        }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

pub fn determinant(m: &IntMatrix) -> BigInt {
    m.irreducible_blocks()
        .iter()
        .map(|b| bareiss(to_big(&m.submatrix(b), 0)).1)
        .product()
}

/// dim ker(M − cI), summed over the irreducible blocks of M.
pub fn nullity_shifted(m: &IntMatrix, blocks: &[Vec<usize>], c: i64) -> usize {
    blocks
        .iter()
        .map(|b| b.len() - bareiss(to_big(&m.submatrix(b), c)).0)
        .sum()
}

pub const CLUSTER_TOLERANCE: f64 = 1e-6;

fn checked_matmul(a: &[i128], b: &[i128], n: usize) -> Option<Vec<i128>> {
    let mut out = vec![0i128; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let y = b[k * n + j];
                if y != 0 {
                    let cell = &mut out[i * n + j];
                    *cell = cell.checked_add(x.checked_mul(y)?)?;
                }
            }
        }
    }
    Some(out)
}

/// Exact check that the spectrum is `clusters`, without elimination.
///
/// Each block B gets its own candidate set S from a Jacobi run on B alone.
/// A symmetric matrix has all eigenvalues in S iff the product of (B − cI)
/// over c in S vanishes; given that, the power traces tr(B^j) for j < |S|
/// fix the multiplicities (Vandermonde). The per-block multiplicities must
/// add up to `clusters`. Returns `None` when this route cannot decide
/// (non-integral block candidates or i128 overflow).
fn annihilator_certificate(
    m: &IntMatrix,
    blocks: &[Vec<usize>],
    clusters: &BTreeMap<i64, usize>,
) -> Option<bool> {
    let mut total: BTreeMap<i64, usize> = BTreeMap::new();
    for block in blocks {
        let b = block.len();
        let sub = m.submatrix(block);
        let local = jacobi_eigenvalues(sub.to_f64(), b).ok()?;
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for v in &local.values {
            let r = v.round();
            if (v - r).abs() > CLUSTER_TOLERANCE {
                return None;
            }
            *counts.entry(r as i64).or_insert(0) += 1;
        }
        let base: Vec<i128> = (0..b * b).map(|x| sub.get(x / b, x % b) as i128).collect();
        let values: Vec<i128> = counts.keys().map(|&c| c as i128).collect();
        let shifted = |c: i128| -> Vec<i128> {
            let mut s = base.clone();
            for i in 0..b {
                s[i * b + i] -= c;
            }
            s
        };
        let mut product = shifted(values[0]);
        for &c in &values[1..] {
            product = checked_matmul(&product, &shifted(c), b)?;
        }
        if product.iter().any(|&x| x != 0) {
            return Some(false);
        }
        let mut power = base.clone();
        for j in 1..values.len() {
            if j > 1 {
                power = checked_matmul(&power, &base, b)?;
            }
            let trace: i128 = (0..b).map(|i| power[i * b + i]).sum();
            let mut expected = 0i128;
            for (&c, &count) in &counts {
                let term = (c as i128)
                    .checked_pow(j as u32)?
                    .checked_mul(count as i128)?;
                expected = expected.checked_add(term)?;
            }
            if expected != trace {
                return Some(false);
            }
        }
        for (c, k) in counts {
            *total.entry(c).or_insert(0) += k;
        }
    }
    Some(&total == clusters)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityCertificate {
    pub integral: bool,
    /// (integer eigenvalue, exact multiplicity) for every candidate checked.
    pub witness: Vec<(i64, usize)>,
}

impl IntegralityCertificate {
    pub fn spectrum(&self) -> ExactSpectrum {
        ExactSpectrum::from_integers(self.witness.iter().map(|&(c, k)| (c as i128, k as u64)))
    }
}

/// Proves the spectrum of a symmetric integer matrix is integral.
///
/// Numeric eigenvalues within [`CLUSTER_TOLERANCE`] of an integer are
/// grouped. The grouping is first checked with a vanishing matrix
/// polynomial plus power traces; if that route cannot decide, each
/// candidate c is certified by the exact nullity of M − cI (Bareiss). For a
/// symmetric matrix nullity is the full multiplicity, so nullities summing
/// to n prove every eigenvalue is an integer.
pub fn certify_integral(
    m: &IntMatrix,
    spec: &NumericSpectrum,
) -> Result<IntegralityCertificate, SpectralError> {
    let n = m.size();
    if spec.values.len() != n {
        return Err(SpectralError::SizeMismatch {
            matrix: n,
            spectrum: spec.values.len(),
        });
    }
    let rounded: Vec<i64> = spec.values.iter().map(|v| v.round() as i64).collect();
    let far = spec
        .values
        .iter()
        .zip(&rounded)
        .find(|(v, r)| (*v - **r as f64).abs() > CLUSTER_TOLERANCE);
    if let Some((&value, _)) = far {
        let sum: i128 = rounded.iter().map(|&r| r as i128).sum();
        let sq: i128 = rounded.iter().map(|&r| r as i128 * r as i128).sum();
        if sum == m.trace() && sq == m.frobenius_sq() {
            return Err(SpectralError::AmbiguousCluster { value });
        }
        return Ok(IntegralityCertificate {
            integral: false,
            witness: Vec::new(),
        });
    }
    let mut clusters: BTreeMap<i64, usize> = BTreeMap::new();
    for r in rounded {
        *clusters.entry(r).or_insert(0) += 1;
    }
    let blocks = m.irreducible_blocks();
    if annihilator_certificate(m, &blocks, &clusters) == Some(true) {
        return Ok(IntegralityCertificate {
            integral: true,
            witness: clusters.into_iter().collect(),
        });
    }
    let mut witness = Vec::with_capacity(clusters.len());
    let mut integral = true;
    for (&c, &count) in &clusters {
        let nullity = nullity_shifted(m, &blocks, c);
        integral &= nullity == count;
        witness.push((c, nullity));
    }
    integral &= witness.iter().map(|w| w.1).sum::<usize>() == n;
    Ok(IntegralityCertificate { integral, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::numeric_spectrum;

    fn qd16() -> CliqueDecomposition {
        CliqueDecomposition::from_parts([(2, 4), (6, 1)])
    }

    #[test]
    fn qd16_spectra() {
        let (cnl, cnsl) = exact_spectrum_clique_union(&qd16());
        assert_eq!(cnl, ExactSpectrum::from_integers([(0, 9), (24, 5)]));
        assert_eq!(
            cnsl,
            ExactSpectrum::from_integers([(0, 8), (16, 5), (40, 1)])
        );
        let delta = delta_clique_union(&qd16());
        assert_eq!(delta, rational::ratio(60, 7));
        assert_eq!(cnl.energy(&delta), rational::ratio(1080, 7));
        assert_eq!(cnsl.energy(&delta), rational::ratio(960, 7));
    }

    #[test]
    fn sz2_cnl_spectrum() {
        let (cnl, cnsl) =
            exact_spectrum_clique_union(&CliqueDecomposition::from_parts([(3, 5), (4, 1)]));
        assert_eq!(cnl, ExactSpectrum::from_integers([(0, 6), (3, 10), (8, 3)]));
        assert_eq!(
            cnsl,
            ExactSpectrum::from_integers([(1, 10), (4, 8), (12, 1)])
        );
    }

    #[test]
    fn isolated_vertices() {
        let (cnl, cnsl) = exact_spectrum_clique_union(&CliqueDecomposition::from_parts([(1, 5)]));
        assert_eq!(cnl, ExactSpectrum::from_integers([(0, 5)]));
        assert_eq!(cnsl, ExactSpectrum::from_integers([(0, 5)]));
    }

    #[test]
    fn bareiss_small() {
        let m = IntMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(determinant(&m), BigInt::from(4));
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&swap), BigInt::from(-1));
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(bareiss(to_big(&singular, 0)), (1, BigInt::zero()));
    }

    #[test]
    fn certify_k3() {
        let m = IntMatrix::from_rows(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let cert = certify_integral(&m, &numeric_spectrum(&m).unwrap()).unwrap();
        assert!(cert.integral);
        assert_eq!(cert.witness, vec![(0, 1), (3, 2)]);
    }

    #[test]
    fn annihilator_agrees_with_elimination() {
        let g = crate::graph::CommutingGraph::clique_union(&[(3, 2), (5, 1), (1, 2)]);
        let mats = crate::spectral::cnrs_cnl_cnsl(&crate::spectral::cn_matrix(
            &g,
            crate::spectral::CnMode::AllPairs,
        ));
        for m in [&mats.cnl, &mats.cnsl] {
            let cert = certify_integral(m, &numeric_spectrum(m).unwrap()).unwrap();
            assert!(cert.integral);
            let blocks = m.irreducible_blocks();
            for &(c, k) in &cert.witness {
                assert_eq!(nullity_shifted(m, &blocks, c), k);
            }
        }
    }

    #[test]
    fn annihilator_rejects_extra_root() {
        let m = IntMatrix::from_rows(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let blocks = m.irreducible_blocks();
        let only_three: BTreeMap<i64, usize> = [(3, 3)].into_iter().collect();
        assert_eq!(
            annihilator_certificate(&m, &blocks, &only_three),
            Some(false)
        );
        let right: BTreeMap<i64, usize> = [(0, 1), (3, 2)].into_iter().collect();
        assert_eq!(annihilator_certificate(&m, &blocks, &right), Some(true));
    }

    #[test]
    fn golden_matrix_is_not_integral() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 1]]);
        let cert = certify_integral(&m, &numeric_spectrum(&m).unwrap()).unwrap();
        assert!(!cert.integral);
    }

    #[test]
    fn wrong_numeric_multiplicities_fail_certification() {
        let m = IntMatrix::from_rows(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let fake = NumericSpectrum {
            values: vec![0.0, 0.0, 3.0],
            residual: 0.0,
            sweeps: 0,
        };
        assert!(!certify_integral(&m, &fake).unwrap().integral);
    }

    #[test]
    fn ambiguous_cluster_is_reported() {
        // Rounding the fake values reproduces trace and Frobenius norm exactly.
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]);
        let fake = NumericSpectrum {
            values: vec![1.0 + 1e-3, 2.0],
            residual: 0.0,
            sweeps: 0,
        };
        assert!(matches!(
            certify_integral(&m, &fake),
            Err(SpectralError::AmbiguousCluster { .. })
        ));
    }
}
