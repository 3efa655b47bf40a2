use std::fmt;

use super::{full_mask, Graph, GraphError};
use crate::spectra::{IntMatrix, SymMatrix};

/// Hop-count distance matrix of a connected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// One bitset BFS per source vertex.
    pub fn from_graph(g: &Graph) -> Result<Self, GraphError> {
        let n = g.order();
        let all = full_mask(n);
        let mut d = vec![0u32; n * n];
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            let mut seen = 1u64 << s;
            let mut frontier = seen;
            let mut level = 0u32;
            while frontier != 0 {
                level += 1;
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= g.neighbors(v);
                }
                frontier = next & !seen;
                seen |= frontier;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    row[v] = level;
                }
            }
            if seen != all {
                return Err(GraphError::Disconnected);
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn max_entry(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, i64::from(self.get(i, j)));
            }
        }
        m
    }

    pub fn to_sym_matrix(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| f64::from(self.get(i, j)))
    }

    /// Sum of the entries of row `i` restricted to the columns in `cols`.
    pub fn row_sum_over(&self, i: usize, cols: &[usize]) -> u64 {
        cols.iter().map(|&j| u64::from(self.get(i, j))).sum()
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.n).map(|i| self.row(i)).collect();
        f.debug_struct("DistanceMatrix")
            .field("n", &self.n)
            .field("d", &rows)
            .finish()
    }
}
