//! Exhaustive minimum transversal for graphs of at most 32 vertices.

use std::sync::atomic::{AtomicU64, Ordering};

use super::{OctStats, Transversal};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{self, Execution};

pub const BRUTE_FORCE_MAX_VERTICES: usize = 32;

/// Smallest transversal; among equal sizes, the lexicographically smallest
/// sorted vertex list.
pub fn min_oct_bruteforce(g: &Graph) -> Result<Transversal> {
    min_oct_bruteforce_with(g, Execution::default()).map(|(t, _)| t)
}

pub fn min_oct_bruteforce_with(g: &Graph, exec: Execution) -> Result<(Transversal, OctStats)> {
    let n = g.n_vertices();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Guard {
            what: "brute-force transversal search",
            limit: BRUTE_FORCE_MAX_VERTICES,
            actual: n,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let tested = AtomicU64::new(0);
    let stats = |tested: &AtomicU64| OctStats {
        solver: "brute",
        nodes: tested.load(Ordering::Relaxed),
    };

    if bipartite_without(&adj, 0) {
        tested.fetch_add(1, Ordering::Relaxed);
        return Ok((Transversal::default(), stats(&tested)));
    }
    for size in 1..=n {
        // Splitting on the smallest chosen vertex keeps lexicographic order:
        // the first head with a hit holds the overall first subset.
        let hit = par::find_first(exec, 0..n, |head| {
            let mut rest = Vec::with_capacity(size - 1);
            let found = first_subset(&adj, head, size - 1, &mut rest, &tested);
            found.then(|| {
                let mut set = vec![head];
                set.extend(rest);
                set
            })
        });
        if let Some(set) = hit {
            return Ok((Transversal::new(set), stats(&tested)));
        }
    }
    unreachable!("deleting every vertex leaves an empty bipartite graph")
}

/// Searches lexicographically for `k` vertices above `head` that, together
/// with `head`, form a transversal. On success `chosen` holds them.
fn first_subset(adj: &[u32], head: usize, k: usize, chosen: &mut Vec<usize>, tested: &AtomicU64) -> bool {
    let n = adj.len();
    if head + k >= n && k > 0 {
        return false;
    }
    let mut idx: Vec<usize> = (head + 1..head + 1 + k).collect();
    let mut local = 0u64;
    let found = loop {
        let removed = idx.iter().fold(1u32 << head, |m, &v| m | 1 << v);
        local += 1;
        if bipartite_without(adj, removed) {
            break true;
        }
        // Advance to the next k-combination of head+1..n.
        let mut i = k;
        loop {
            if i == 0 {
                tested.fetch_add(local, Ordering::Relaxed);
                return false;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    };
    tested.fetch_add(local, Ordering::Relaxed);
    chosen.clear();
    chosen.extend(idx);
    found
}

fn bipartite_without(adj: &[u32], removed: u32) -> bool {
    let n = adj.len();
    let mut side = [0u8; BRUTE_FORCE_MAX_VERTICES];
    let mut stack = [0usize; BRUTE_FORCE_MAX_VERTICES];
    for root in 0..n {
        if removed >> root & 1 == 1 || side[root] != 0 {
            continue;
        }
        side[root] = 1;
        let mut top = 1;
        stack[0] = root;
        while top > 0 {
            top -= 1;
            let v = stack[top];
            let mut nb = adj[v] & !removed;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if side[w] == 0 {
                    side[w] = 3 - side[v];
                    stack[top] = w;
                    top += 1;
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}
