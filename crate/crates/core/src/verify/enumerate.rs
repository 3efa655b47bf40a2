//! Labeled enumeration of small connected graphs by upper-triangle edge masks.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::graph::{full_mask, CanonicalForm, Graph};

use super::VerifyError;

/// Largest order the labeled scan accepts.
pub const MAX_SCAN_ORDER: usize = 8;

/// Mask ranges handed to workers. Fixed, so results never depend on the
/// worker count.
const CHUNKS: usize = 256;

/// Vertex pairs in graph6 order: bit `k` of a mask is the edge `PAIRS[k]`.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

fn adjacency(mask: u64, pairs: &[(usize, usize)], adj: &mut [u64; MAX_SCAN_ORDER]) {
    *adj = [0; MAX_SCAN_ORDER];
    let mut bits = mask;
    while bits != 0 {
        let (i, j) = pairs[bits.trailing_zeros() as usize];
        bits &= bits - 1;
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
}

fn expand(ball: u64, adj: &[u64]) -> u64 {
    let mut out = ball;
    let mut rest = ball;
    while rest != 0 {
        out |= adj[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    out
}

/// Diameter capped at 4, or `None` when disconnected.
pub(crate) fn capped_diameter(adj: &[u64]) -> Option<u32> {
    let n = adj.len();
    let full = full_mask(n);
    let mut ball = 1u64;
    loop {
        let next = expand(ball, adj);
        if next == ball {
            break;
        }
        ball = next;
    }
    if ball != full {
        return None;
    }
    let mut diam = 0;
    for v in 0..n {
        let mut ball = 1u64 << v;
        let mut ecc = 0;
        while ball != full && ecc < 4 {
            ball = expand(ball, adj);
            ecc += 1;
        }
        diam = diam.max(ecc);
        if diam == 4 {
            break;
        }
    }
    Some(diam)
}

pub(crate) fn check_order(n: usize, allow_n8: bool) -> Result<(), VerifyError> {
    if n == 0 || n > MAX_SCAN_ORDER {
        return Err(VerifyError::OrderUnsupported(n));
    }
    if n == MAX_SCAN_ORDER && !allow_n8 {
        return Err(VerifyError::NeedsOptIn(n));
    }
    Ok(())
}

/// Delivers every connected labeled graph on `n` vertices with diameter
/// greater than 3 exactly once, and returns how many there were.
pub fn enumerate_diam_gt3(n: usize, mut sink: impl FnMut(&Graph)) -> Result<u64, VerifyError> {
    check_order(n, true)?;
    let pairs = pairs(n);
    let mut adj = [0u64; MAX_SCAN_ORDER];
    let mut count = 0;
    for mask in 0..1u64 << pairs.len() {
        adjacency(mask, &pairs, &mut adj);
        if capped_diameter(&adj[..n]) == Some(4) {
            sink(&Graph::from_adjacency_bits(&adj[..n])?);
            count += 1;
        }
    }
    Ok(count)
}

/// Runs `visit` over all connected labeled graphs on `n` vertices whose
/// capped diameter passes `keep`, split into fixed mask ranges across
/// `workers` threads. Returns one state per range, in mask order.
pub(crate) fn par_masks<S, K, I, F>(
    n: usize,
    workers: usize,
    keep: K,
    init: I,
    visit: F,
) -> Result<Vec<S>, VerifyError>
where
    S: Send,
    K: Fn(u32) -> bool + Sync,
    I: Fn() -> S + Sync,
    F: Fn(&mut S, Graph) -> Result<(), VerifyError> + Sync,
{
    check_order(n, true)?;
    let pairs = pairs(n);
    let total = 1u64 << pairs.len();
    let chunks = CHUNKS.min(total as usize);
    let per = total / chunks as u64;
    let bounds = |c: usize| {
        let lo = c as u64 * per;
        let hi = if c + 1 == chunks { total } else { lo + per };
        lo..hi
    };
    let run_chunk = |c: usize| -> Result<S, VerifyError> {
        let mut state = init();
        let mut adj = [0u64; MAX_SCAN_ORDER];
        for mask in bounds(c) {
            adjacency(mask, &pairs, &mut adj);
            if capped_diameter(&adj[..n]).is_some_and(&keep) {
                visit(&mut state, Graph::from_adjacency_bits(&adj[..n])?)?;
            }
        }
        Ok(state)
    };
    par_map_indices(chunks, workers, run_chunk)
        .into_iter()
        .collect()
}

/// `f(0), …, f(len − 1)` computed on up to `workers` threads, in index order.
pub(crate) fn par_map_indices<T, F>(len: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let workers = workers.clamp(1, len.max(1));
    if workers == 1 {
        return (0..len).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..len).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= len {
                    break;
                }
                let out = f(i);
                slots.lock().expect("no worker panicked")[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|s| s.expect("every index visited"))
        .collect()
}

/// One canonical representative per isomorphism class of connected graphs
/// on `n` vertices with diameter greater than 3, sorted by canonical code.
pub fn class_representatives(n: usize, workers: usize) -> Result<Vec<Graph>, VerifyError> {
    let sets = par_masks(
        n,
        workers,
        |d| d == 4,
        BTreeSet::new,
        |set, g| {
            set.insert(CanonicalForm::of(&g)?);
            Ok(())
        },
    )?;
    let all: BTreeSet<CanonicalForm> = sets.into_iter().flatten().collect();
    Ok(all.into_iter().map(|c| c.to_graph()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slow_count(n: usize) -> u64 {
        let pairs = pairs(n);
        let mut count = 0;
        for mask in 0..1u64 << pairs.len() {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| pairs[k])
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if g.diameter().is_ok_and(|d| d > 3) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn matches_slow_filter() {
        for n in 1..=6 {
            let mut seen = BTreeSet::new();
            let count = enumerate_diam_gt3(n, |g| {
                assert!(g.diameter().unwrap() >= 4);
                assert!(g.complement().is_connected());
                assert!(seen.insert(g.clone()), "delivered twice");
            })
            .unwrap();
            assert_eq!(count, slow_count(n), "n = {n}");
        }
    }

    #[test]
    fn known_counts() {
        assert_eq!(enumerate_diam_gt3(5, |_| {}).unwrap(), 60);
        assert_eq!(enumerate_diam_gt3(6, |_| {}).unwrap(), 3240);
    }

    #[test]
    fn parallel_chunks_cover_the_stream() {
        for workers in [1, 3] {
            let counts = par_masks(
                6,
                workers,
                |d| d == 4,
                || 0u64,
                |c, _| {
                    *c += 1;
                    Ok(())
                },
            )
            .unwrap();
            assert_eq!(counts.iter().sum::<u64>(), 3240);
        }
    }

    #[test]
    fn representatives() {
        // 60 = 5!/2: every diameter-4 graph on 5 vertices is a labeled P5
        let reps = class_representatives(5, 2).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(
            crate::graph::is_isomorphic(&reps[0], &crate::families::build_path(5).unwrap())
                .unwrap()
        );
        let reps6 = class_representatives(6, 4).unwrap();
        assert_eq!(reps6, class_representatives(6, 1).unwrap());
    }

    #[test]
    fn order_limits() {
        assert!(matches!(
            check_order(9, true),
            Err(VerifyError::OrderUnsupported(9))
        ));
        assert!(matches!(
            check_order(8, false),
            Err(VerifyError::NeedsOptIn(8))
        ));
        assert!(check_order(7, false).is_ok());
    }
}
