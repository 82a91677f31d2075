//! Repair of label maps whose partial assignment clashes with the timetable.
//!
//! A rectangular cycle is inconsistent when its 2×2 label block is one of
//!
//! ```text
//! 2 0    1 0    0 1    0 2
//! 0 1    0 2    2 0    1 0
//! ```
//!
//! (rows: the two teams; columns: slots `s-1`, `s`). Each such block forces
//! both teams to the same venue in slot `s`. The repair loop fixes the
//! earliest one by moving a single nonzero label within the cycle, which
//! keeps the number of zeros and never creates a new inconsistency.

use crate::auxgraph::{build_aux_graph, rectangular_cycles, RectangularCycle};
use crate::oct::{octmap_is_valid, OctMap};
use crate::timetable::Timetable;

const CHECKED: bool = cfg!(any(debug_assertions, feature = "strict-repair"));

const INCONSISTENT: [[[u8; 2]; 2]; 4] = [[[2, 0], [0, 1]], [[1, 0], [0, 2]], [[0, 1], [2, 0]], [[0, 2], [1, 0]]];

/// Labels of a cycle as `[[first@s-1, first@s], [second@s-1, second@s]]`.
pub fn cycle_block(a: &OctMap, c: &RectangularCycle) -> [[u8; 2]; 2] {
    let s = c.slot;
    [
        [a.get(c.first, s - 1), a.get(c.first, s)],
        [a.get(c.second, s - 1), a.get(c.second, s)],
    ]
}

pub fn is_consistent_on_cycle(a: &OctMap, c: &RectangularCycle) -> bool {
    !INCONSISTENT.contains(&cycle_block(a, c))
}

/// True if no edge of the 4-cycle joins two equal nonzero labels.
pub fn is_locally_bipartite(a: &OctMap, c: &RectangularCycle) -> bool {
    let cells = c.cells();
    (0..4).all(|i| {
        let (t, s) = cells[i];
        let (u, r) = cells[(i + 1) % 4];
        let (x, y) = (a.get(t, s), a.get(u, r));
        x == 0 || x != y
    })
}

/// An inconsistent cycle located by [`find_earliest_inconsistent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InconsistencyRecord {
    pub cycle: RectangularCycle,
    /// The team with the nonzero label at `slot - 1`.
    pub leading: usize,
    /// The team with the nonzero label at `slot`.
    pub trailing: usize,
    /// Opponent of `trailing` one slot before the cycle's match.
    pub third: usize,
    pub block: [[u8; 2]; 2],
}

impl InconsistencyRecord {
    pub fn slot(&self) -> usize {
        self.cycle.slot
    }
}

pub fn inconsistent_cycles(a: &OctMap, tt: &Timetable) -> Vec<RectangularCycle> {
    rectangular_cycles(tt)
        .into_iter()
        .filter(|c| !is_consistent_on_cycle(a, c))
        .collect()
}

/// The inconsistent cycle with the smallest slot, ties broken by smaller team.
pub fn find_earliest_inconsistent(a: &OctMap, tt: &Timetable) -> Option<InconsistencyRecord> {
    let cycle = rectangular_cycles(tt)
        .into_iter()
        .find(|c| !is_consistent_on_cycle(a, c))?;
    let block = cycle_block(a, &cycle);
    let (leading, trailing) = if block[0][0] != 0 {
        (cycle.first, cycle.second)
    } else {
        (cycle.second, cycle.first)
    };
    Some(InconsistencyRecord {
        cycle,
        leading,
        trailing,
        third: tt.opponent(trailing, cycle.slot - 1),
        block,
    })
}

/// Which of the two single-label moves a repair step applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairMove {
    /// Zero the leading team's cell at `slot - 1` and give its label to the
    /// trailing team's cell at `slot - 1`.
    ShiftDown,
    /// Move the trailing team's label from `slot` back to `slot - 1`.
    ShiftBack,
}

/// Picks the move for `rec`, reading the trailing team's left neighbour `u`,
/// the third team's cell `v` beside it and that team's left neighbour `w`,
/// all normalized so that the leading label reads as 1.
pub fn choose_move(a: &OctMap, rec: &InconsistencyRecord) -> RepairMove {
    let s = rec.slot();
    let swap = a.get(rec.leading, s - 1) == 2;
    let norm = |l: u8| if swap && l != 0 { 3 - l } else { l };
    let u = if s >= 2 { norm(a.get(rec.trailing, s - 2)) } else { 0 };
    let v = norm(a.get(rec.third, s - 1));
    let w = if s >= 2 { norm(a.get(rec.third, s - 2)) } else { 0 };
    let pick = if u != 0 {
        3 - u
    } else if v != 0 {
        3 - v
    } else if w != 0 {
        w
    } else {
        1
    };
    if pick == 1 {
        RepairMove::ShiftDown
    } else {
        RepairMove::ShiftBack
    }
}

fn apply(a: &OctMap, rec: &InconsistencyRecord, mv: RepairMove) -> OctMap {
    let s = rec.slot();
    let mut out = a.clone();
    match mv {
        RepairMove::ShiftDown => {
            out.set(rec.leading, s - 1, 0);
            out.set(rec.trailing, s - 1, a.get(rec.leading, s - 1));
        }
        RepairMove::ShiftBack => {
            out.set(rec.trailing, s - 1, a.get(rec.trailing, s));
            out.set(rec.trailing, s, 0);
        }
    }
    out
}

/// One repair move. In checked builds, panics if the result is not a valid
/// map, changes the zero count, or fails to reduce the inconsistent cycles.
pub fn repair_step(a: &OctMap, rec: &InconsistencyRecord, tt: &Timetable) -> OctMap {
    let out = apply(a, rec, choose_move(a, rec));
    if CHECKED {
        assert!(
            octmap_is_valid(&build_aux_graph(tt), &out),
            "repair step produced an invalid map at {rec:?}"
        );
        assert_eq!(out.zero_count(), a.zero_count(), "repair step changed the zero count");
        let before = inconsistent_cycles(a, tt).len();
        let after = inconsistent_cycles(&out, tt).len();
        assert!(
            after < before,
            "repair step did not reduce inconsistent cycles ({before} -> {after})"
        );
    }
    out
}

/// Repairs until every rectangular cycle is consistent, returning the final
/// map and the records of the steps taken.
pub fn repair_traced(a: &OctMap, tt: &Timetable) -> (OctMap, Vec<InconsistencyRecord>) {
    let limit = inconsistent_cycles(a, tt).len();
    let mut cur = a.clone();
    let mut steps = Vec::new();
    while let Some(rec) = find_earliest_inconsistent(&cur, tt) {
        assert!(
            steps.len() < limit,
            "repair exceeded {limit} steps; input was not a valid map"
        );
        cur = repair_step(&cur, &rec, tt);
        steps.push(rec);
    }
    (cur, steps)
}

pub fn repair(a: &OctMap, tt: &Timetable) -> OctMap {
    repair_traced(a, tt).0
}
