use serde::{Deserialize, Serialize};

use crate::graph::CommutingGraph;

/// Dense square integer matrix.
///
/// Entries are i64: CN entries are bounded by the vertex count and row sums
/// by its square, far inside range for graphs of at most a few thousand
/// vertices. Exact elimination promotes to big integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            data: rows.concat(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> i128 {
        (0..self.n).map(|i| self.get(i, i) as i128).sum()
    }

    /// Squared Frobenius norm.
    pub fn frobenius_sq(&self) -> i128 {
        self.data.iter().map(|&x| x as i128 * x as i128).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|&x| x as f64).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .collect()
    }

    /// Connected components of the off-diagonal nonzero pattern.
    ///
    /// The matrix is a direct sum of its restrictions to these index sets.
    pub fn irreducible_blocks(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut block = Vec::new();
            while let Some(u) = stack.pop() {
                block.push(u);
                for v in 0..n {
                    if !seen[v] && (self.get(u, v) != 0 || self.get(v, u) != 0) {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    pub fn submatrix(&self, idx: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }
}

/// Which vertex pairs receive a common-neighbour count.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CnMode {
    /// Every pair of distinct vertices.
    #[default]
    AllPairs,
    /// Only adjacent pairs; non-adjacent entries are 0.
    AdjacentOnly,
}

pub fn cn_matrix(g: &CommutingGraph, mode: CnMode) -> IntMatrix {
    let n = g.vertex_count();
    let mut cn = IntMatrix::zeros(n);
    for i in 0..n {
        let ri = g.row(i);
        for j in i + 1..n {
            if mode == CnMode::AdjacentOnly && !g.adjacent(i, j) {
                continue;
            }
            let c: u32 = ri
                .iter()
                .zip(g.row(j))
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            cn.set(i, j, c as i64);
            cn.set(j, i, c as i64);
        }
    }
    cn
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnMatrices {
    pub cn: IntMatrix,
    pub cnrs: IntMatrix,
    pub cnl: IntMatrix,
    pub cnsl: IntMatrix,
}

pub fn cnrs_cnl_cnsl(cn: &IntMatrix) -> CnMatrices {
    let n = cn.size();
    let mut cnrs = IntMatrix::zeros(n);
    let mut cnl = IntMatrix::zeros(n);
    let mut cnsl = IntMatrix::zeros(n);
    for i in 0..n {
        let s: i64 = cn.row(i).iter().sum();
        cnrs.set(i, i, s);
        for j in 0..n {
            let d = if i == j { s } else { 0 };
            cnl.set(i, j, d - cn.get(i, j));
            cnsl.set(i, j, d + cn.get(i, j));
        }
    }
    CnMatrices {
        cn: cn.clone(),
        cnrs,
        cnl,
        cnsl,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cn_of_complete_graph() {
        for m in 2..8 {
            let cn = cn_matrix(&CommutingGraph::complete(m), CnMode::AllPairs);
            for i in 0..m {
                for j in 0..m {
                    let want = if i == j { 0 } else { m as i64 - 2 };
                    assert_eq!(cn.get(i, j), want);
                }
            }
        }
    }

    #[test]
    fn cn_of_two_edges_is_zero() {
        let g = CommutingGraph::clique_union(&[(2, 2)]);
        assert_eq!(cn_matrix(&g, CnMode::AllPairs), IntMatrix::zeros(4));
        let m = cnrs_cnl_cnsl(&IntMatrix::zeros(4));
        assert_eq!(m.cnl, IntMatrix::zeros(4));
        assert_eq!(m.cnsl, IntMatrix::zeros(4));
    }

    #[test]
    fn modes_differ_on_a_path() {
        let g = CommutingGraph::from_json(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(cn_matrix(&g, CnMode::AllPairs).get(0, 2), 1);
        assert_eq!(cn_matrix(&g, CnMode::AdjacentOnly).get(0, 2), 0);
    }

    #[test]
    fn k3_laplacians() {
        let m = cnrs_cnl_cnsl(&cn_matrix(&CommutingGraph::complete(3), CnMode::AllPairs));
        assert_eq!(
            m.cnl.to_rows(),
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
        );
        for i in 0..3 {
            assert_eq!(m.cnrs.get(i, i), 2);
            assert_eq!(m.cnl.row(i).iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn blocks_of_a_clique_union() {
        let g = CommutingGraph::clique_union(&[(1, 1), (3, 2)]);
        let m = cnrs_cnl_cnsl(&cn_matrix(&g, CnMode::AllPairs));
        let blocks = m.cnl.irreducible_blocks();
        assert_eq!(blocks, vec![vec![0], vec![1, 2, 3], vec![4, 5, 6]]);
    }
}
