//! Isomorphism-canonical forms for small graphs.
//!
//! Vertices are first coloured by iterated degree refinement, which is
//! isomorphism invariant. The canonical code is the lexicographically largest
//! upper-triangle bit string over all vertex orders that list colour classes
//! in colour order. The search prunes on code prefixes and never reorders
//! twins (vertices with equal neighbourhoods apart from each other), since
//! swapping twins is an automorphism.

use super::{Graph, GraphError};

/// Largest order accepted by [`CanonicalForm::of`].
pub const MAX_ISO_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: u8,
    code: u128,
}

impl CanonicalForm {
    pub fn of(g: &Graph) -> Result<Self, GraphError> {
        let n = g.order();
        if n > MAX_ISO_ORDER {
            return Err(GraphError::TooLarge {
                order: n,
                max: MAX_ISO_ORDER,
            });
        }
        let colors = refine_colors(g);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (colors[v], v));
        // colour required at each position
        let slot_color: Vec<usize> = order.iter().map(|&v| colors[v]).collect();

        let twin_before: Vec<u64> = (0..n)
            .map(|v| {
                (0..v)
                    .filter(|&u| {
                        colors[u] == colors[v]
                            && g.neighbors(u) & !(1u64 << v) == g.neighbors(v) & !(1u64 << u)
                    })
                    .fold(0u64, |acc, u| acc | 1u64 << u)
            })
            .collect();

        let mut search = Search {
            g,
            colors: &colors,
            slot_color: &slot_color,
            twin_before: &twin_before,
            total_bits: n * n.saturating_sub(1) / 2,
            placed: Vec::with_capacity(n),
            used: 0,
            best: None,
        };
        search.run(0, 0, false);
        Ok(CanonicalForm {
            n: n as u8,
            code: search.best.unwrap_or(0),
        })
    }

    pub fn order(&self) -> usize {
        usize::from(self.n)
    }

    /// The canonically labelled representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let total = n * n.saturating_sub(1) / 2;
        let mut g = Graph::empty(n).expect("order validated on construction");
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.code >> (total - 1 - k) & 1 == 1 {
                    g.add_edge(i, j).expect("indices in range");
                }
                k += 1;
            }
        }
        g
    }
}

/// Iterated colour refinement starting from degrees. Colours are ranks of
/// sorted signatures, so relabelling the graph permutes but never renames them.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&u| g.has_edge(v, u))
                    .map(|u| colors[u])
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| uniq.binary_search(s).expect("signature present"))
            .collect();
        if uniq.len() == classes {
            return next;
        }
        classes = uniq.len();
        colors = next;
    }
}

struct Search<'a> {
    g: &'a Graph,
    colors: &'a [usize],
    slot_color: &'a [usize],
    twin_before: &'a [u64],
    total_bits: usize,
    placed: Vec<usize>,
    used: u64,
    best: Option<u128>,
}

impl Search<'_> {
    /// `code` holds the bits of columns `1..pos` (already shifted in).
    fn run(&mut self, pos: usize, code: u128, ahead: bool) {
        let n = self.slot_color.len();
        if pos == n {
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        let prefix_bits = pos * (pos + 1) / 2;
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.colors[v] != self.slot_color[pos] {
                continue;
            }
            if self.twin_before[v] & !self.used != 0 {
                continue;
            }
            let mut next = code;
            for &u in &self.placed {
                next = (next << 1) | u128::from(self.g.has_edge(u, v));
            }
            let mut now_ahead = ahead;
            if !ahead {
                if let Some(best) = self.best {
                    let best_prefix = best >> (self.total_bits - prefix_bits);
                    if next < best_prefix {
                        continue;
                    }
                    now_ahead = next > best_prefix;
                }
            }
            self.placed.push(v);
            self.used |= 1u64 << v;
            self.run(pos + 1, next, now_ahead);
            self.used &= !(1u64 << v);
            self.placed.pop();
        }
    }
}

/// True iff some vertex bijection maps the edges of `g` onto those of `h`.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    for x in [g, h] {
        if x.order() > MAX_ISO_ORDER {
            return Err(GraphError::TooLarge {
                order: x.order(),
                max: MAX_ISO_ORDER,
            });
        }
    }
    if g.order() != h.order()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return Ok(false);
    }
    Ok(CanonicalForm::of(g)? == CanonicalForm::of(h)?)
}
