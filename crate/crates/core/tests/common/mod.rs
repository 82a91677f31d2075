#![allow(dead_code)]

use std::collections::VecDeque;

use breakmin::{AuxiliaryGraph, HaAssignment, OctMap, Timetable};
use rand::Rng;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn timetable(name: &str) -> Timetable {
    Timetable::parse_csv(&fixture(name)).unwrap()
}

pub fn assignment(name: &str) -> HaAssignment {
    HaAssignment::parse_csv(&fixture(name)).unwrap()
}

pub fn octmap(name: &str) -> OctMap {
    OctMap::parse_csv(&fixture(name)).unwrap()
}

/// Swaps labels 1 and 2 on a random subset of the components left after
/// deleting the zeros, which keeps the map valid.
pub fn flip_random_components<R: Rng>(g: &AuxiliaryGraph, a: &OctMap, rng: &mut R) -> OctMap {
    let n = g.n_vertices();
    let mut labels = a.labels().to_vec();
    let mut seen = vec![false; n];
    for root in 0..n {
        if labels[root] == 0 || seen[root] {
            continue;
        }
        let flip = rng.gen_bool(0.5);
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if flip {
                labels[v] = 3 - labels[v];
            }
            for &w in g.graph().neighbors(v) {
                if labels[w] != 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    OctMap::new(a.n_teams(), a.n_slots(), labels).unwrap()
}
