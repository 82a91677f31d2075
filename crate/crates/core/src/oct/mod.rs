//! Odd cycle transversals of the auxiliary graph and their 0/1/2 label maps.
//!
//! A label map assigns 0 to transversal cells and 1/2 to the two sides of the
//! remaining bipartite graph. Cell `(t, s)` labelled 1 means team `t` is home
//! at slot `s` and away at `s + 1`; label 2 is the reverse; 0 leaves the
//! transition undetermined.

mod brute;
mod compress;
mod flow;
mod heuristic;

use std::fmt;

use serde::Serialize;

use crate::auxgraph::AuxiliaryGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::grid;
use crate::timetable::{HaAssignment, Venue};

pub use brute::{min_oct_bruteforce, min_oct_bruteforce_with, BRUTE_FORCE_MAX_VERTICES};
pub use compress::{min_oct_exact, min_oct_exact_with};
pub use heuristic::{heuristic_oct_upper_bound, heuristic_oct_upper_bound_with};

/// A sorted vertex set whose removal leaves the graph bipartite.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Transversal(Vec<usize>);

impl Transversal {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Transversal(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.0 {
            m[v] = true;
        }
        m
    }

    /// True if deleting the set from `g` leaves a bipartite graph.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.0.iter().all(|&v| v < g.n_vertices()) && g.is_bipartite_without(&self.mask(g.n_vertices()))
    }
}

/// Solver bookkeeping reported alongside a transversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OctStats {
    pub solver: &'static str,
    /// Search nodes: subsets tested, compression branches, or restarts.
    pub nodes: u64,
}

/// Labels over `team × slot` (slot ranging over the auxiliary graph's columns).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OctMap {
    n_teams: usize,
    n_slots: usize,
    labels: Vec<u8>,
}

impl OctMap {
    pub fn new(n_teams: usize, n_slots: usize, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != n_teams * n_slots {
            return Err(Error::Dimensions {
                expected: format!("{} labels", n_teams * n_slots),
                got: labels.len().to_string(),
            });
        }
        if let Some(i) = labels.iter().position(|&l| l > 2) {
            return Err(grid::parse_err(
                0,
                &format!("label {} at index {i} is not 0, 1 or 2", labels[i]),
            ));
        }
        Ok(OctMap {
            n_teams,
            n_slots,
            labels,
        })
    }

    pub fn zeros_like(n_teams: usize, n_slots: usize) -> Self {
        OctMap {
            n_teams,
            n_slots,
            labels: vec![0; n_teams * n_slots],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n_slots = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_slots) {
            return Err(Error::Dimensions {
                expected: format!("{n_slots} columns per row"),
                got: "ragged rows".into(),
            });
        }
        Self::new(rows.len(), n_slots, rows.concat())
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let cells = grid::read(text)?;
        let mut rows = Vec::with_capacity(cells.len());
        for (t, row) in cells.iter().enumerate() {
            let parsed = row
                .iter()
                .map(|c| match c.as_str() {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    "2" => Ok(2),
                    other => Err(grid::parse_err(t + 2, &format!("`{other}` is not one of 0, 1, 2"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            rows.push(parsed);
        }
        Self::from_rows(&rows)
    }

    pub fn to_csv(&self) -> String {
        grid::write(
            self.n_slots,
            (0..self.n_teams).map(|t| self.labels[t * self.n_slots..(t + 1) * self.n_slots].to_vec()),
        )
    }

    pub fn n_teams(&self) -> usize {
        self.n_teams
    }

    pub fn n_slots(&self) -> usize {
        self.n_slots
    }

    pub fn get(&self, team: usize, slot: usize) -> u8 {
        self.labels[team * self.n_slots + slot]
    }

    pub fn set(&mut self, team: usize, slot: usize, label: u8) {
        debug_assert!(label <= 2);
        self.labels[team * self.n_slots + slot] = label;
    }

    /// Labels in vertex order of the auxiliary graph.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn zero_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l == 0).count()
    }

    /// The 0-labelled vertices.
    pub fn transversal(&self) -> Transversal {
        Transversal(
            self.labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == 0)
                .map(|(v, _)| v)
                .collect(),
        )
    }

    /// Cells (0-based) whose label differs from `other`'s.
    pub fn diff(&self, other: &OctMap) -> Vec<(usize, usize)> {
        self.labels
            .iter()
            .zip(&other.labels)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| (i / self.n_slots, i % self.n_slots))
            .collect()
    }
}

impl fmt::Display for OctMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in 0..self.n_teams {
            let row: String = (0..self.n_slots).map(|s| char::from(b'0' + self.get(t, s))).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// True if no edge of `g` joins two 1-cells or two 2-cells.
pub fn octmap_is_valid(g: &AuxiliaryGraph, a: &OctMap) -> bool {
    if a.n_teams != g.n_teams() || a.n_slots != g.n_slots() {
        return false;
    }
    g.graph()
        .edges()
        .all(|(x, y)| a.labels[x] == 0 || a.labels[x] != a.labels[y])
}

/// Labels the transversal 0 and two-colors the rest, rooting each component
/// at its smallest vertex with label 1.
pub fn transversal_to_octmap(g: &AuxiliaryGraph, tv: &Transversal) -> Result<OctMap> {
    let n = g.n_vertices();
    if let Some(&v) = tv.vertices().iter().find(|&&v| v >= n) {
        return Err(Error::NotTransversal(v));
    }
    let labels = g.graph().two_color(&tv.mask(n)).map_err(Error::NotTransversal)?;
    OctMap::new(g.n_teams(), g.n_slots(), labels)
}

/// Transition labels of an assignment: 1 for home→away, 2 for away→home,
/// 0 for a repeat or any transition touching an open cell.
pub fn ha_to_octmap(z: &HaAssignment) -> OctMap {
    let n_slots = z.n_slots().saturating_sub(1);
    let mut a = OctMap::zeros_like(z.n_teams(), n_slots);
    for t in 0..z.n_teams() {
        for s in 0..n_slots {
            let label = match (z.get(t, s), z.get(t, s + 1)) {
                (Some(Venue::Home), Some(Venue::Away)) => 1,
                (Some(Venue::Away), Some(Venue::Home)) => 2,
                _ => 0,
            };
            a.set(t, s, label);
        }
    }
    a
}

/// The partial assignment a label map determines: a cell is home if its own
/// label is 1 or its left neighbor's is 2, away in the mirrored cases, open
/// otherwise.
pub fn octmap_to_partial(a: &OctMap) -> Result<HaAssignment> {
    let m = a.n_slots;
    let mut z = HaAssignment::open(a.n_teams, m + 1);
    for t in 0..a.n_teams {
        for s in 0..=m {
            let own = if s < m { a.get(t, s) } else { 0 };
            let left = if s > 0 { a.get(t, s - 1) } else { 0 };
            let home = own == 1 || left == 2;
            let away = own == 2 || left == 1;
            let venue = match (home, away) {
                (true, true) => {
                    return Err(Error::LabelConflict {
                        team: t + 1,
                        slot: s + 1,
                    })
                }
                (true, false) => Some(Venue::Home),
                (false, true) => Some(Venue::Away),
                (false, false) => None,
            };
            z.set(t, s, venue);
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxgraph::{build_aux_graph, EdgeClass};
    use crate::timetable::Timetable;

    fn table1() -> Timetable {
        Timetable::from_rows(&[vec![1, 2, 3], vec![0, 3, 2], vec![3, 0, 1], vec![2, 1, 0]]).unwrap()
    }

    #[test]
    fn all_ones_is_invalid() {
        let g = build_aux_graph(&table1());
        let ones = OctMap::new(4, 2, vec![1; 8]).unwrap();
        assert!(!octmap_is_valid(&g, &ones));
        assert!(octmap_is_valid(&g, &OctMap::zeros_like(4, 2)));
        assert!(!octmap_is_valid(&g, &OctMap::zeros_like(4, 3)));
    }

    #[test]
    fn path_coloring_and_full_transversal() {
        let g = build_aux_graph(&table1()).restricted(&[EdgeClass::Horizontal]);
        let a = transversal_to_octmap(&g, &Transversal::default()).unwrap();
        assert_eq!(a.labels(), &[1, 2, 1, 2, 1, 2, 1, 2]);

        let full = build_aux_graph(&table1());
        let all = Transversal::new((0..8).collect());
        let a = transversal_to_octmap(&full, &all).unwrap();
        assert_eq!(a.zero_count(), 8);
        assert!(matches!(
            transversal_to_octmap(&full, &Transversal::default()),
            Err(Error::NotTransversal(_))
        ));
    }

    #[test]
    fn all_zero_map_gives_open_assignment() {
        let z = octmap_to_partial(&OctMap::zeros_like(4, 2)).unwrap();
        assert_eq!(z, HaAssignment::open(4, 3));
    }

    #[test]
    fn conflicting_cell_is_rejected() {
        // (1,1) = 1 and (1,2) = 1 would make slot 2 both away and home.
        let a = OctMap::from_rows(&[vec![1, 1]]).unwrap();
        assert!(matches!(
            octmap_to_partial(&a),
            Err(Error::LabelConflict { team: 1, slot: 2 })
        ));
    }

    #[test]
    fn csv_round_trip_and_bad_labels() {
        let a = OctMap::from_rows(&[vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(OctMap::parse_csv(&a.to_csv()).unwrap(), a);
        assert!(OctMap::parse_csv("Slot,1\n1,3\n").is_err());
        assert!(OctMap::new(1, 1, vec![5]).is_err());
    }
}
