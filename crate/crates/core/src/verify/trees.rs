//! Trees up to isomorphism, and spanning trees of a fixed graph.

use std::collections::BTreeSet;

use crate::graph::{CanonicalForm, Graph, GraphError};

/// One canonical representative of every tree on `n` vertices, grown by
/// attaching a leaf to each tree on `n − 1` vertices.
pub fn trees(n: usize) -> Result<Vec<Graph>, GraphError> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(CanonicalForm::of(&Graph::empty(1)?)?);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for t in &level {
            let t = t.to_graph();
            let mut bits = t.adjacency_bits().to_vec();
            bits.push(0);
            for v in 0..m - 1 {
                let mut grown = bits.clone();
                grown[v] |= 1 << (m - 1);
                grown[m - 1] = 1 << v;
                next.insert(CanonicalForm::of(&Graph::from_adjacency_bits(&grown)?)?);
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(|c| c.to_graph()).collect())
}

/// Labeled spanning trees of a connected `g`, at most `cap` of them, in a
/// fixed order. The flag is true when the cap cut the list short.
pub fn spanning_trees(g: &Graph, cap: usize) -> (Vec<Graph>, bool) {
    let n = g.order();
    let edges: Vec<_> = g.edges().collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    let mut truncated = false;
    let mut parent: Vec<usize> = (0..n).collect();
    grow(
        n,
        &edges,
        0,
        &mut chosen,
        &mut parent,
        cap,
        &mut out,
        &mut truncated,
    );
    (out, truncated)
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

#[allow(clippy::too_many_arguments)]
fn grow(
    n: usize,
    edges: &[(usize, usize)],
    from: usize,
    chosen: &mut Vec<(usize, usize)>,
    parent: &mut Vec<usize>,
    cap: usize,
    out: &mut Vec<Graph>,
    truncated: &mut bool,
) {
    if *truncated {
        return;
    }
    if chosen.len() + 1 == n || n <= 1 {
        if out.len() == cap {
            *truncated = true;
            return;
        }
        out.push(Graph::from_edges(n, chosen).expect("edges of g"));
        return;
    }
    // not enough edges left to finish
    if edges.len() - from < n - 1 - chosen.len() {
        return;
    }
    for k in from..edges.len() {
        let (u, v) = edges[k];
        let (ru, rv) = (find(parent, u), find(parent, v));
        if ru == rv {
            continue;
        }
        let saved = parent.clone();
        parent[ru] = rv;
        chosen.push((u, v));
        grow(n, edges, k + 1, chosen, parent, cap, out, truncated);
        chosen.pop();
        *parent = saved;
        if *truncated {
            return;
        }
    }
}
