//! Randomized upper bound: greedy two-coloring along a shuffled breadth-first
//! order, evicting vertices that fit neither side, then local search.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{OctStats, Transversal};
use crate::graph::Graph;
use crate::par::{self, Execution};

const RESTARTS: usize = 16;

pub fn heuristic_oct_upper_bound(g: &Graph, seed: u64) -> Transversal {
    heuristic_oct_upper_bound_with(g, seed, Execution::default()).0
}

/// Best of several independent restarts, each on its own stream of the
/// seeded generator; ties go to the lowest restart.
pub fn heuristic_oct_upper_bound_with(g: &Graph, seed: u64, exec: Execution) -> (Transversal, OctStats) {
    let runs: Vec<usize> = (0..RESTARTS).collect();
    let results = par::map(exec, &runs, |&r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(r as u64);
        one_run(g, &mut rng)
    });
    let best = results.into_iter().min_by_key(Vec::len).expect("at least one restart");
    let tv = Transversal::new(best);
    debug_assert!(tv.is_valid_for(g));
    (
        tv,
        OctStats {
            solver: "heuristic",
            nodes: RESTARTS as u64,
        },
    )
}

fn one_run(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.n_vertices();
    let mut side = vec![0u8; n];
    let mut evicted = Vec::new();

    let mut roots: Vec<usize> = (0..n).collect();
    roots.shuffle(rng);
    let mut queued = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for root in roots {
        if queued[root] {
            continue;
        }
        queued[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            match free_sides(g, &side, v) {
                (true, true) => side[v] = rng.gen_range(1..=2),
                (true, false) => side[v] = 1,
                (false, true) => side[v] = 2,
                (false, false) => evicted.push(v),
            }
            let mut next: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !queued[w]).collect();
            next.shuffle(rng);
            for w in next {
                queued[w] = true;
                queue.push_back(w);
            }
        }
    }

    loop {
        let mut improved = false;
        evicted.shuffle(rng);
        let mut still = Vec::with_capacity(evicted.len());
        for &v in &evicted {
            if reinsert(g, &mut side, v) {
                improved = true;
            } else {
                still.push(v);
            }
        }
        evicted = still;
        if !improved {
            break;
        }
    }
    evicted
}

fn free_sides(g: &Graph, side: &[u8], v: usize) -> (bool, bool) {
    let mut one = true;
    let mut two = true;
    for &w in g.neighbors(v) {
        match side[w] {
            1 => one = false,
            2 => two = false,
            _ => {}
        }
    }
    (one, two)
}

/// Puts `v` back on a side, directly or after moving its single blocking
/// neighbor to the other side.
fn reinsert(g: &Graph, side: &mut [u8], v: usize) -> bool {
    match free_sides(g, side, v) {
        (true, _) => {
            side[v] = 1;
            return true;
        }
        (false, true) => {
            side[v] = 2;
            return true;
        }
        (false, false) => {}
    }
    for target in [1u8, 2] {
        let blockers: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| side[w] == target).collect();
        if let [u] = blockers[..] {
            let other = 3 - target;
            let u_can_move = g.neighbors(u).iter().all(|&w| w == v || side[w] != other);
            if u_can_move {
                side[u] = other;
                side[v] = target;
                // v now borders u on the other side, which is fine; v's other
                // neighbors were never on `target`.
                return true;
            }
        }
    }
    false
}
