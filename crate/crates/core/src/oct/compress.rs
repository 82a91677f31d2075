//! Exact minimum transversal by iterative compression.
//!
//! Vertices are added in index order while an optimal transversal of the
//! induced prefix is maintained. When a new vertex closes an odd cycle, the
//! old solution plus that vertex (size `k + 1`) is compressed: each vertex of
//! it is either kept in the solution or placed on side 1 or side 2, and the
//! rest of the graph must then be split by a vertex separator of size at most
//! `k - |kept|`. If no branch succeeds the prefix optimum grew by one.

use std::sync::atomic::{AtomicU64, Ordering};

use super::flow::Separator;
use super::{OctStats, Transversal};
use crate::graph::Graph;
use crate::par::{self, Execution};

/// Below this many branches the compression loop stays on one thread.
const PARALLEL_BRANCH_THRESHOLD: usize = 729;

pub fn min_oct_exact(g: &Graph) -> Transversal {
    min_oct_exact_with(g, Execution::default()).0
}

pub fn min_oct_exact_with(g: &Graph, exec: Execution) -> (Transversal, OctStats) {
    let n = g.n_vertices();
    let mut active = vec![false; n];
    let mut solution: Vec<usize> = Vec::new();
    let branches = AtomicU64::new(0);

    for v in 0..n {
        active[v] = true;
        let mut removed: Vec<bool> = active.iter().map(|&a| !a).collect();
        for &x in &solution {
            removed[x] = true;
        }
        if g.is_bipartite_without(&removed) {
            continue;
        }
        let mut grown = solution.clone();
        grown.push(v);
        solution = compress(g, &active, &grown, exec, &branches).unwrap_or(grown);
    }

    debug_assert!(Transversal::new(solution.clone()).is_valid_for(g));
    (
        Transversal::new(solution),
        OctStats {
            solver: "exact",
            nodes: branches.load(Ordering::Relaxed),
        },
    )
}

/// Looks for a transversal of the active subgraph smaller than `current`.
fn compress(
    g: &Graph,
    active: &[bool],
    current: &[usize],
    exec: Execution,
    branches: &AtomicU64,
) -> Option<Vec<usize>> {
    let n = g.n_vertices();
    let k = current.len() - 1;
    let mut in_current = vec![false; n];
    for &x in current {
        in_current[x] = true;
    }
    // Reference coloring of the bipartite rest.
    let removed: Vec<bool> = (0..n).map(|v| !active[v] || in_current[v]).collect();
    let color = g
        .two_color(&removed)
        .expect("current set is a transversal of the active subgraph");
    let rest_alive: Vec<bool> = removed.iter().map(|&r| !r).collect();

    let total = 3usize
        .checked_pow(current.len() as u32)
        .expect("transversal too large to compress");
    let exec = if total < PARALLEL_BRANCH_THRESHOLD {
        Execution::Sequential
    } else {
        exec
    };

    par::find_first(exec, 0..total, |code| {
        let mut role = [0u8; 64];
        let mut c = code;
        for r in role.iter_mut().take(current.len()) {
            *r = (c % 3) as u8;
            c /= 3;
        }
        let role = &role[..current.len()];
        let kept = role.iter().filter(|&&r| r == 0).count();
        if kept > k {
            return None;
        }
        // Sides are interchangeable; fix the first placed vertex on side 1.
        if role.iter().find(|&&r| r != 0) != Some(&1) {
            return None;
        }
        branches.fetch_add(1, Ordering::Relaxed);

        let side_of = |v: usize| -> u8 { current.iter().position(|&x| x == v).map_or(0, |i| role[i]) };
        let mut flip0 = vec![false; n];
        let mut flip1 = vec![false; n];
        for (i, &x) in current.iter().enumerate() {
            let side = role[i];
            if side == 0 {
                continue;
            }
            for &w in g.neighbors(x) {
                if !active[w] {
                    continue;
                }
                if in_current[w] {
                    if side_of(w) == side {
                        return None;
                    }
                    continue;
                }
                // w must end on the side opposite to x.
                let wanted = 3 - side;
                if color[w] == wanted {
                    flip0[w] = true;
                } else {
                    flip1[w] = true;
                }
            }
        }
        let cut = Separator::new(n, &rest_alive, g.edges(), &flip0, &flip1).min_cut(k - kept)?;
        let mut out: Vec<usize> = current
            .iter()
            .zip(role)
            .filter(|(_, &r)| r == 0)
            .map(|(&x, _)| x)
            .collect();
        out.extend(cut);
        out.sort_unstable();
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oct::min_oct_bruteforce;

    #[test]
    fn small_graphs() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(min_oct_exact(&tri).len(), 1);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(min_oct_exact(&c4).is_empty());
        let k5 = Graph::from_edges(5, (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))));
        assert_eq!(min_oct_exact(&k5).len(), 3);
    }

    #[test]
    fn matches_brute_force_on_wheels_and_prisms() {
        // Odd wheel W5 needs 2; triangular prism needs 2.
        let wheel = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
                .into_iter()
                .chain((0..5).map(|i| (i, 5))),
        );
        let prism = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        );
        for g in [wheel, prism] {
            let exact = min_oct_exact(&g);
            assert!(exact.is_valid_for(&g));
            assert_eq!(exact.len(), min_oct_bruteforce(&g).unwrap().len());
        }
    }
}
