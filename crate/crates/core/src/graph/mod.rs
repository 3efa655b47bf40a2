//! Simple undirected graphs on at most 64 vertices.
//!
//! Each vertex keeps its neighbourhood as a single `u64` bitset, so
//! complement, BFS and edge tests are word operations.

mod canon;
mod distance;
mod graph6;

use std::fmt;

use thiserror::Error;

pub use canon::{is_isomorphic, CanonicalForm, MAX_ISO_ORDER};
pub use distance::DistanceMatrix;
pub use graph6::Graph6Error;

use crate::spectra::IntMatrix;

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("isomorphism testing supports at most {max} vertices, got {order}")]
    TooLarge { order: usize, max: usize },
}

/// Simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from neighbour bitsets. Bits are masked to `0..n`,
    /// the diagonal is cleared and the relation is symmetrised.
    pub fn from_adjacency_bits(bits: &[u64]) -> Result<Self, GraphError> {
        let n = bits.len();
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for (v, &row) in bits.iter().enumerate() {
            g.adj[v] = row & all & !(1u64 << v);
        }
        for v in 0..n {
            let mut row = g.adj[v];
            while row != 0 {
                let u = row.trailing_zeros() as usize;
                row &= row - 1;
                g.adj[u] |= 1u64 << v;
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn adjacency_bits(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
        Ok(())
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let mut row = self.adj[u] & !full_mask(u + 1);
            std::iter::from_fn(move || {
                if row == 0 {
                    return None;
                }
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                Some((u, v))
            })
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Graph with the same vertices whose edges are exactly the non-edges of `self`.
    pub fn complement(&self) -> Graph {
        let all = full_mask(self.n);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &row)| !row & all & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1u64 << perm[v];
            adj[perm[v]] |= 1u64 << perm[u];
        }
        Graph { n: self.n, adj }
    }

    /// Induced subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(vertices.len())?;
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// Bitset of vertices reachable from `source`.
    pub fn component_of(&self, source: usize) -> u64 {
        let mut seen = 1u64 << source;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == full_mask(self.n)
    }

    pub fn distance_matrix(&self) -> Result<DistanceMatrix, GraphError> {
        DistanceMatrix::from_graph(self)
    }

    pub fn diameter(&self) -> Result<u32, GraphError> {
        Ok(self.distance_matrix()?.max_entry())
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n);
        for (u, v) in self.edges() {
            m.set(u, v, 1);
            m.set(v, u, 1);
        }
        m
    }

    /// Distance matrix of the complement.
    pub fn complement_distance_matrix(&self) -> Result<DistanceMatrix, GraphError> {
        self.complement().distance_matrix()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n && self.is_connected()
    }

    pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
        graph6::decode(text)
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm, GraphError> {
        CanonicalForm::of(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph({}, {:?})",
            self.to_graph6(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn order_bounds() {
        assert_eq!(Graph::empty(0), Err(GraphError::OrderOutOfRange(0)));
        assert_eq!(Graph::empty(65), Err(GraphError::OrderOutOfRange(65)));
        let g = Graph::complete(64).unwrap();
        assert_eq!(g.edge_count(), 64 * 63 / 2);
        assert!(g.complement().edges().next().is_none());
    }

    #[test]
    fn bad_edges_rejected() {
        let mut g = Graph::empty(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        ));
    }

    #[test]
    fn complement_basics() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(is_isomorphic(&c5, &c5.complement()).unwrap());
        let p = path(6);
        assert_eq!(p.complement().complement(), p);
    }

    #[test]
    fn connectivity() {
        assert!(path(5).is_connected());
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.distance_matrix(), Err(GraphError::Disconnected));
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn adjacency_plus_complement_is_all_ones() {
        let g = path(5);
        let a = g.adjacency_matrix();
        let ac = g.complement().adjacency_matrix();
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 0 } else { 1 };
                assert_eq!(a.get(i, j) + ac.get(i, j), expect);
            }
        }
        assert_eq!(
            Graph::empty(3).unwrap().adjacency_matrix(),
            IntMatrix::zeros(3)
        );
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap().adjacency_matrix();
        assert_eq!(e, IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap());
    }

    #[test]
    fn diameters() {
        assert_eq!(path(5).diameter().unwrap(), 4);
        assert_eq!(Graph::complete(4).unwrap().diameter().unwrap(), 1);
    }

    #[test]
    fn edges_iterate_upper_triangle() {
        let g = Graph::from_edges(4, &[(3, 0), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn from_bits_symmetrises() {
        let g = Graph::from_adjacency_bits(&[0b110, 0, 0b1111]).unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(1, 2));
        assert!(!g.has_edge(2, 2));
    }
}
