//! The auxiliary graph of a timetable.
//!
//! Vertices are `(team, slot)` for every slot except the last. Three edge
//! classes connect them:
//!
//! * `Horizontal`: `(t, s-1)`–`(t, s)`, consecutive cells of one team;
//! * `SameSlot`: the two teams of a match at slot `s`, at slot `s`;
//! * `NextSlot`: the two teams of a match at slot `s >= 2`, one slot earlier.
//!
//! `NextSlot` edges are generated for matches in every slot from the second
//! through the last, so last-slot matches contribute edges at the final
//! vertex column.

use std::fmt::{self, Write};

use crate::graph::Graph;
use crate::timetable::Timetable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeClass {
    Horizontal,
    SameSlot,
    NextSlot,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 3] = [EdgeClass::Horizontal, EdgeClass::SameSlot, EdgeClass::NextSlot];

    fn tag(self) -> &'static str {
        match self {
            EdgeClass::Horizontal => "H",
            EdgeClass::SameSlot => "0",
            EdgeClass::NextSlot => "1",
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassedEdge {
    pub a: usize,
    pub b: usize,
    pub class: EdgeClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    n_teams: usize,
    n_slots: usize,
    graph: Graph,
    edges: Vec<ClassedEdge>,
}

impl AuxiliaryGraph {
    pub fn build(tt: &Timetable) -> Self {
        let n_teams = tt.n_teams();
        let n_slots = tt.n_reduced_slots();
        let at = |t: usize, s: usize| t * n_slots + s;
        let mut edges = Vec::new();
        for t in 0..n_teams {
            for s in 1..n_slots {
                edges.push(ClassedEdge {
                    a: at(t, s - 1),
                    b: at(t, s),
                    class: EdgeClass::Horizontal,
                });
            }
        }
        for (s, a, b) in tt.matches() {
            if s < n_slots {
                edges.push(ClassedEdge {
                    a: at(a, s),
                    b: at(b, s),
                    class: EdgeClass::SameSlot,
                });
            }
            if s >= 1 {
                edges.push(ClassedEdge {
                    a: at(a, s - 1),
                    b: at(b, s - 1),
                    class: EdgeClass::NextSlot,
                });
            }
        }
        Self::from_parts(n_teams, n_slots, edges)
    }

    fn from_parts(n_teams: usize, n_slots: usize, mut edges: Vec<ClassedEdge>) -> Self {
        edges.sort_unstable();
        let graph = Graph::from_edges(n_teams * n_slots, edges.iter().map(|e| (e.a, e.b)));
        AuxiliaryGraph {
            n_teams,
            n_slots,
            graph,
            edges,
        }
    }

    /// Same vertex set, keeping only edges of the listed classes.
    pub fn restricted(&self, keep: &[EdgeClass]) -> Self {
        let edges = self.edges.iter().filter(|e| keep.contains(&e.class)).copied().collect();
        Self::from_parts(self.n_teams, self.n_slots, edges)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n_teams(&self) -> usize {
        self.n_teams
    }

    /// Number of slot columns (one fewer than the timetable's slots).
    pub fn n_slots(&self) -> usize {
        self.n_slots
    }

    pub fn n_vertices(&self) -> usize {
        self.n_teams * self.n_slots
    }

    pub fn vertex(&self, team: usize, slot: usize) -> usize {
        team * self.n_slots + slot
    }

    pub fn cell(&self, v: usize) -> (usize, usize) {
        (v / self.n_slots, v % self.n_slots)
    }

    /// Edges sorted by (smaller endpoint, larger endpoint, class).
    pub fn edges(&self) -> &[ClassedEdge] {
        &self.edges
    }

    pub fn count(&self, class: EdgeClass) -> usize {
        self.edges.iter().filter(|e| e.class == class).count()
    }
}

pub fn build_aux_graph(tt: &Timetable) -> AuxiliaryGraph {
    AuxiliaryGraph::build(tt)
}

/// The 4-cycle `(first, slot-1) – (first, slot) – (second, slot) – (second, slot-1)`
/// spanned by the match of `first` and `second` at `slot` (`slot >= 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RectangularCycle {
    pub slot: usize,
    pub first: usize,
    pub second: usize,
}

impl RectangularCycle {
    /// Cells in cycle order, as `(team, slot)`.
    pub fn cells(&self) -> [(usize, usize); 4] {
        [
            (self.first, self.slot - 1),
            (self.first, self.slot),
            (self.second, self.slot),
            (self.second, self.slot - 1),
        ]
    }

    /// The cycle's edges in order with their classes.
    pub fn edge_classes(&self) -> [EdgeClass; 4] {
        [
            EdgeClass::Horizontal,
            EdgeClass::SameSlot,
            EdgeClass::Horizontal,
            EdgeClass::NextSlot,
        ]
    }
}

/// One cycle per match at slots `1..n_teams-2` (0-based), ordered by slot
/// then smaller team.
pub fn rectangular_cycles(tt: &Timetable) -> Vec<RectangularCycle> {
    let n_slots = tt.n_reduced_slots();
    tt.matches()
        .into_iter()
        .filter(|&(s, _, _)| s >= 1 && s < n_slots)
        .map(|(slot, first, second)| RectangularCycle { slot, first, second })
        .collect()
}

/// Graphviz rendering; node ids are `t<team>s<slot>`, 1-based, and each edge
/// carries a `class` attribute of `H`, `0` or `1`.
pub fn emit_dot(g: &AuxiliaryGraph) -> String {
    let id = |v: usize| {
        let (t, s) = g.cell(v);
        format!("t{}s{}", t + 1, s + 1)
    };
    let mut out = String::from("graph auxiliary {\n");
    for v in 0..g.n_vertices() {
        let (t, s) = g.cell(v);
        let _ = writeln!(out, "  {} [label=\"({},{})\"];", id(v), t + 1, s + 1);
    }
    for e in g.edges() {
        let style = match e.class {
            EdgeClass::Horizontal => "solid",
            EdgeClass::SameSlot => "bold",
            EdgeClass::NextSlot => "dashed",
        };
        let _ = writeln!(
            out,
            "  {} -- {} [class=\"{}\", style={style}];",
            id(e.a),
            id(e.b),
            e.class
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> Timetable {
        Timetable::from_rows(&[vec![1, 2, 3], vec![0, 3, 2], vec![3, 0, 1], vec![2, 1, 0]]).unwrap()
    }

    #[test]
    fn small_graph_matches_drawing() {
        let g = build_aux_graph(&table1());
        assert_eq!(g.n_vertices(), 8);
        assert_eq!(g.graph().n_edges(), 12);
        for class in EdgeClass::ALL {
            assert_eq!(g.count(class), 4);
        }
        let has = |a: (usize, usize), b: (usize, usize), class| {
            let (x, y) = (g.vertex(a.0, a.1), g.vertex(b.0, b.1));
            g.edges()
                .iter()
                .any(|e| (e.a, e.b) == (x.min(y), x.max(y)) && e.class == class)
        };
        // Slot-3 matches (2 v 3, 1 v 4) show up in the second column.
        assert!(has((1, 1), (2, 1), EdgeClass::NextSlot));
        assert!(has((0, 1), (3, 1), EdgeClass::NextSlot));
        assert!(has((0, 0), (2, 0), EdgeClass::NextSlot));
        assert!(has((0, 0), (1, 0), EdgeClass::SameSlot));
        assert!(has((0, 1), (2, 1), EdgeClass::SameSlot));
        for v in 0..8 {
            assert_eq!(g.graph().degree(v), 3);
        }
    }

    #[test]
    fn cycles_of_small_timetable() {
        let cycles = rectangular_cycles(&table1());
        assert_eq!(
            cycles,
            vec![
                RectangularCycle {
                    slot: 1,
                    first: 0,
                    second: 2
                },
                RectangularCycle {
                    slot: 1,
                    first: 1,
                    second: 3
                },
            ]
        );
        assert_eq!(cycles[0].cells(), [(0, 0), (0, 1), (2, 1), (2, 0)]);
    }

    #[test]
    fn restriction_keeps_vertices() {
        let g = build_aux_graph(&table1()).restricted(&[EdgeClass::Horizontal]);
        assert_eq!(g.n_vertices(), 8);
        assert_eq!(g.graph().n_edges(), 4);
    }

    #[test]
    fn dot_output_is_stable() {
        let g = build_aux_graph(&table1());
        let dot = emit_dot(&g);
        assert_eq!(dot, emit_dot(&g));
        assert_eq!(dot.lines().filter(|l| l.contains("label=")).count(), 8);
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 12);
        assert!(dot.contains("t2s2 -- t3s2 [class=\"1\""));
    }
}
