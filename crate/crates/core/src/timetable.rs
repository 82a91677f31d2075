//! Round-robin timetables and home/away assignments.
//!
//! Teams and slots are dense 0-based indices everywhere in the library. The
//! CSV layer and `Display` impls translate to the 1-based numbering used in
//! files and messages.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid;

/// A single round robin for an even number of teams: `opponent(t, s)` is the
/// team `t` meets in slot `s`. Always valid once constructed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Timetable {
    n_teams: usize,
    opponent: Vec<usize>,
    meet_slot: Vec<usize>,
}

/// One broken timetable rule, located at a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TeamCount(usize),
    RowLength {
        team: usize,
        expected: usize,
        found: usize,
    },
    OutOfRange {
        team: usize,
        slot: usize,
    },
    SelfMatch {
        team: usize,
        slot: usize,
    },
    /// `opponent` already appeared earlier in the team's row.
    RepeatedOpponent {
        team: usize,
        slot: usize,
        opponent: usize,
    },
    /// The cell should name `expected` because that team names this one.
    Asymmetric {
        team: usize,
        slot: usize,
        expected: usize,
    },
    /// The pair is scheduled in `count` slots instead of exactly one.
    PairMeetings {
        first: usize,
        second: usize,
        count: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::TeamCount(n) => write!(f, "team count {n} is not even and at least 4"),
            Violation::RowLength { team, expected, found } => {
                write!(f, "row {}: expected {expected} slots, found {found}", team + 1)
            }
            Violation::OutOfRange { team, slot } => {
                write!(f, "({}, {}): opponent out of range", team + 1, slot + 1)
            }
            Violation::SelfMatch { team, slot } => {
                write!(f, "({}, {}): team plays itself", team + 1, slot + 1)
            }
            Violation::RepeatedOpponent { team, slot, opponent } => write!(
                f,
                "({}, {}): row is not a permutation, opponent {} repeated",
                team + 1,
                slot + 1,
                opponent + 1
            ),
            Violation::Asymmetric { team, slot, expected } => write!(
                f,
                "({}, {}): involution violated, expected opponent {}",
                team + 1,
                slot + 1,
                expected + 1
            ),
            Violation::PairMeetings { first, second, count } => write!(
                f,
                "teams {} and {} meet in {count} slots instead of one",
                first + 1,
                second + 1
            ),
        }
    }
}

/// Checks the timetable rules on a raw 0-based opponent matrix and returns
/// every violation found. Empty means valid.
pub fn validate(rows: &[Vec<usize>]) -> Vec<Violation> {
    let n = rows.len();
    if n < 4 || !n.is_multiple_of(2) {
        return vec![Violation::TeamCount(n)];
    }
    let n_slots = n - 1;
    let mut out = Vec::new();
    for (t, row) in rows.iter().enumerate() {
        if row.len() != n_slots {
            out.push(Violation::RowLength {
                team: t,
                expected: n_slots,
                found: row.len(),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }

    for (t, row) in rows.iter().enumerate() {
        let mut seen = vec![false; n];
        for (s, &o) in row.iter().enumerate() {
            if o >= n {
                out.push(Violation::OutOfRange { team: t, slot: s });
            } else if o == t {
                out.push(Violation::SelfMatch { team: t, slot: s });
            } else if std::mem::replace(&mut seen[o], true) {
                out.push(Violation::RepeatedOpponent {
                    team: t,
                    slot: s,
                    opponent: o,
                });
            }
        }
    }

    let mut flagged = vec![false; n * n_slots];
    for s in 0..n_slots {
        for t in 0..n {
            let o = rows[t][s];
            if o >= n || o == t {
                continue;
            }
            if rows[o][s] != t && !std::mem::replace(&mut flagged[o * n_slots + s], true) {
                out.push(Violation::Asymmetric {
                    team: o,
                    slot: s,
                    expected: t,
                });
            }
        }
    }

    for a in 0..n {
        for b in a + 1..n {
            let count = (0..n_slots).filter(|&s| rows[a][s] == b || rows[b][s] == a).count();
            if count != 1 {
                out.push(Violation::PairMeetings {
                    first: a,
                    second: b,
                    count,
                });
            }
        }
    }
    out
}

impl Timetable {
    /// Builds a timetable from a 0-based opponent matrix (rows are teams).
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let violations = validate(rows);
        if !violations.is_empty() {
            return Err(Error::InvalidTimetable(violations));
        }
        let n = rows.len();
        let opponent: Vec<usize> = rows.iter().flatten().copied().collect();
        let mut meet_slot = vec![usize::MAX; n * n];
        for (t, row) in rows.iter().enumerate() {
            for (s, &o) in row.iter().enumerate() {
                meet_slot[t * n + o] = s;
            }
        }
        Ok(Timetable {
            n_teams: n,
            opponent,
            meet_slot,
        })
    }

    /// Parses the CSV layout: `Slot,1,...,2n-1` then `t,opp,...` rows, 1-based.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let cells = grid::read(text)?;
        let n = cells.len();
        let mut rows = Vec::with_capacity(n);
        for (t, row) in cells.iter().enumerate() {
            let mut parsed = Vec::with_capacity(row.len());
            for (s, cell) in row.iter().enumerate() {
                let value: usize = cell
                    .parse()
                    .map_err(|_| grid::parse_err(t + 2, &format!("slot {}: `{cell}` is not a team number", s + 1)))?;
                // 0 and anything above n become out-of-range violations.
                parsed.push(value.checked_sub(1).unwrap_or(usize::MAX));
            }
            rows.push(parsed);
        }
        Self::from_rows(&rows)
    }

    pub fn to_csv(&self) -> String {
        grid::write(
            self.n_slots(),
            (0..self.n_teams).map(|t| self.row(t).iter().map(|o| o + 1).collect()),
        )
    }

    pub fn n_teams(&self) -> usize {
        self.n_teams
    }

    pub fn n_slots(&self) -> usize {
        self.n_teams - 1
    }

    /// Number of slots in the auxiliary graph's slot range (every slot but the last).
    pub fn n_reduced_slots(&self) -> usize {
        self.n_teams - 2
    }

    pub fn opponent(&self, team: usize, slot: usize) -> usize {
        self.opponent[team * self.n_slots() + slot]
    }

    pub fn row(&self, team: usize) -> &[usize] {
        let m = self.n_slots();
        &self.opponent[team * m..(team + 1) * m]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n_teams).map(|t| self.row(t).to_vec()).collect()
    }

    /// The slot in which two distinct teams meet.
    pub fn match_slot(&self, t1: usize, t2: usize) -> Result<usize> {
        if t1 == t2 {
            return Err(Error::SelfMatch(t1 + 1));
        }
        Ok(self.meet_slot[t1 * self.n_teams + t2])
    }

    /// All matches as `(slot, smaller team, larger team)`, by slot then team.
    pub fn matches(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.n_teams * self.n_slots() / 2);
        for s in 0..self.n_slots() {
            for t in 0..self.n_teams {
                let o = self.opponent(t, s);
                if t < o {
                    out.push((s, t, o));
                }
            }
        }
        out
    }

    /// Re-runs the rule checks; a constructed timetable always passes.
    pub fn validate(&self) -> Vec<Violation> {
        validate(&self.rows())
    }
}

/// Circle-method round robin. With a seed, team labels and slot order are
/// shuffled deterministically.
#[allow(clippy::needless_range_loop)]
pub fn generate_circle(n_teams: usize, seed: Option<u64>) -> Result<Timetable> {
    if n_teams < 4 || !n_teams.is_multiple_of(2) {
        return Err(Error::TeamCount(n_teams));
    }
    let pivot = n_teams - 1;
    let n_slots = n_teams - 1;
    let mut rows = vec![vec![0usize; n_slots]; n_teams];
    for r in 0..n_slots {
        rows[pivot][r] = r;
        rows[r][r] = pivot;
        for k in 1..n_teams / 2 {
            let a = (r + k) % pivot;
            let b = (r + pivot - k) % pivot;
            rows[a][r] = b;
            rows[b][r] = a;
        }
    }

    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut label: Vec<usize> = (0..n_teams).collect();
        label.shuffle(&mut rng);
        let mut order: Vec<usize> = (0..n_slots).collect();
        order.shuffle(&mut rng);
        let mut shuffled = vec![vec![0usize; n_slots]; n_teams];
        for t in 0..n_teams {
            for (new_s, &old_s) in order.iter().enumerate() {
                shuffled[label[t]][new_s] = label[rows[t][old_s]];
            }
        }
        rows = shuffled;
    }
    Timetable::from_rows(&rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Venue {
    Home,
    Away,
}

impl Venue {
    pub fn flip(self) -> Venue {
        match self {
            Venue::Home => Venue::Away,
            Venue::Away => Venue::Home,
        }
    }
}

/// Home/away matrix over teams × slots; `None` is an undetermined (`*`) cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HaAssignment {
    n_teams: usize,
    n_slots: usize,
    cells: Vec<Option<Venue>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakReport {
    pub total: usize,
    /// `(team, slot)` pairs, 0-based, where the team repeats its previous venue.
    pub positions: Vec<(usize, usize)>,
}

/// Two opponents given the same venue in one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clash {
    pub slot: usize,
    pub first: usize,
    pub second: usize,
    pub venue: Venue,
}

impl fmt::Display for Clash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.venue {
            Venue::Home => "home",
            Venue::Away => "away",
        };
        write!(
            f,
            "slot {}: teams {} and {} are both {what}",
            self.slot + 1,
            self.first + 1,
            self.second + 1
        )
    }
}

impl HaAssignment {
    pub fn open(n_teams: usize, n_slots: usize) -> Self {
        HaAssignment {
            n_teams,
            n_slots,
            cells: vec![None; n_teams * n_slots],
        }
    }

    pub fn from_rows(rows: &[Vec<Option<Venue>>]) -> Result<Self> {
        let n_slots = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_slots) {
            return Err(Error::Dimensions {
                expected: format!("{n_slots} slots per row"),
                got: bad.len().to_string(),
            });
        }
        Ok(HaAssignment {
            n_teams: rows.len(),
            n_slots,
            cells: rows.iter().flatten().copied().collect(),
        })
    }

    /// Parses rows like `H,A,*` (1-based labels, same header as timetables).
    pub fn parse_csv(text: &str) -> Result<Self> {
        let cells = grid::read(text)?;
        let mut rows = Vec::with_capacity(cells.len());
        for (t, row) in cells.iter().enumerate() {
            let parsed = row
                .iter()
                .map(|c| match c.as_str() {
                    "H" | "h" => Ok(Some(Venue::Home)),
                    "A" | "a" => Ok(Some(Venue::Away)),
                    "*" => Ok(None),
                    other => Err(grid::parse_err(t + 2, &format!("`{other}` is not one of H, A, *"))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        Self::from_rows(&rows)
    }

    pub fn to_csv(&self) -> String {
        grid::write(
            self.n_slots,
            (0..self.n_teams).map(|t| (0..self.n_slots).map(|s| symbol(self.get(t, s))).collect()),
        )
    }

    pub fn n_teams(&self) -> usize {
        self.n_teams
    }

    pub fn n_slots(&self) -> usize {
        self.n_slots
    }

    pub fn get(&self, team: usize, slot: usize) -> Option<Venue> {
        self.cells[team * self.n_slots + slot]
    }

    pub fn set(&mut self, team: usize, slot: usize, venue: Option<Venue>) {
        self.cells[team * self.n_slots + slot] = venue;
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    fn first_open(&self) -> Option<(usize, usize)> {
        let i = self.cells.iter().position(Option::is_none)?;
        Some((i / self.n_slots, i % self.n_slots))
    }

    /// Counts breaks of a full assignment.
    pub fn count_breaks(&self) -> Result<BreakReport> {
        if let Some((team, slot)) = self.first_open() {
            return Err(Error::OpenCell {
                team: team + 1,
                slot: slot + 1,
            });
        }
        let mut positions = Vec::new();
        for t in 0..self.n_teams {
            for s in 1..self.n_slots {
                if self.get(t, s - 1) == self.get(t, s) {
                    positions.push((t, s));
                }
            }
        }
        Ok(BreakReport {
            total: positions.len(),
            positions,
        })
    }

    fn matches_shape(&self, tt: &Timetable) -> bool {
        self.n_teams == tt.n_teams() && self.n_slots == tt.n_slots()
    }

    /// Every match whose two teams share a venue. Open cells never clash.
    pub fn clashes(&self, tt: &Timetable) -> Vec<Clash> {
        let mut out = Vec::new();
        if !self.matches_shape(tt) {
            return out;
        }
        for (s, a, b) in tt.matches() {
            if let (Some(x), Some(y)) = (self.get(a, s), self.get(b, s)) {
                if x == y {
                    out.push(Clash {
                        slot: s,
                        first: a,
                        second: b,
                        venue: x,
                    });
                }
            }
        }
        out
    }

    /// Consistency with `tt`; a shape mismatch counts as inconsistent.
    pub fn is_consistent(&self, tt: &Timetable) -> bool {
        self.matches_shape(tt) && self.clashes(tt).is_empty()
    }

    /// Fills open cells: a cell facing a fixed opponent takes the other venue;
    /// a match with both ends open gives home to the smaller team index.
    pub fn complete(&self, tt: &Timetable) -> Result<HaAssignment> {
        if !self.matches_shape(tt) {
            return Err(Error::Dimensions {
                expected: format!("{}x{}", tt.n_teams(), tt.n_slots()),
                got: format!("{}x{}", self.n_teams, self.n_slots),
            });
        }
        if let Some(c) = self.clashes(tt).first() {
            return Err(Error::Inconsistent {
                team: c.first + 1,
                slot: c.slot + 1,
            });
        }
        let mut out = self.clone();
        for (s, a, b) in tt.matches() {
            match (self.get(a, s), self.get(b, s)) {
                (Some(x), None) => out.set(b, s, Some(x.flip())),
                (None, Some(y)) => out.set(a, s, Some(y.flip())),
                (None, None) => {
                    out.set(a, s, Some(Venue::Home));
                    out.set(b, s, Some(Venue::Away));
                }
                (Some(_), Some(_)) => {}
            }
        }
        Ok(out)
    }
}

fn symbol(v: Option<Venue>) -> char {
    match v {
        Some(Venue::Home) => 'H',
        Some(Venue::Away) => 'A',
        None => '*',
    }
}

impl fmt::Display for HaAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in 0..self.n_teams {
            let row: String = (0..self.n_slots).map(|s| symbol(self.get(t, s))).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE1: &str = "Slot,1,2,3\n1,2,3,4\n2,1,4,3\n3,4,1,2\n4,3,2,1\n";

    fn ha(rows: &[&str]) -> HaAssignment {
        let rows: Vec<Vec<Option<Venue>>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        'H' => Some(Venue::Home),
                        'A' => Some(Venue::Away),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        HaAssignment::from_rows(&rows).unwrap()
    }

    #[test]
    fn parses_small_timetable() {
        let tt = Timetable::parse_csv(TABLE1).unwrap();
        assert_eq!(tt.n_teams(), 4);
        assert_eq!(tt.opponent(0, 0), 1);
        assert_eq!(tt.opponent(2, 1), 0);
        assert_eq!(tt.match_slot(0, 3).unwrap(), 2);
        assert!(matches!(tt.match_slot(2, 2), Err(Error::SelfMatch(3))));
        assert_eq!(Timetable::parse_csv(&tt.to_csv()).unwrap(), tt);
    }

    #[test]
    fn involution_violation_names_the_cell() {
        let text = "Slot,1,2,3\n1,2,3,4\n2,3,4,1\n3,4,1,2\n4,3,2,1\n";
        let Err(Error::InvalidTimetable(v)) = Timetable::parse_csv(text) else {
            panic!("expected violations");
        };
        assert!(v.contains(&Violation::Asymmetric {
            team: 1,
            slot: 0,
            expected: 0
        }));
    }

    #[test]
    fn duplicate_opponent_reported_at_second_occurrence() {
        let mut rows = Timetable::parse_csv(TABLE1).unwrap().rows();
        rows[0] = vec![1, 2, 2];
        let v = validate(&rows);
        assert!(v.contains(&Violation::RepeatedOpponent {
            team: 0,
            slot: 2,
            opponent: 2
        }));
        // Several rules break at once; all of them are listed.
        assert!(v.len() > 1);
    }

    #[test]
    fn rejects_bad_cells_and_counts() {
        assert!(matches!(
            Timetable::parse_csv("Slot,1,2,3\n1,2,x,4\n2,1,4,3\n3,4,1,2\n4,3,2,1\n"),
            Err(Error::Parse { .. })
        ));
        let Err(Error::InvalidTimetable(v)) = Timetable::parse_csv("Slot,1,2,3\n1,2,3,9\n2,1,4,3\n3,4,1,2\n4,3,2,1\n")
        else {
            panic!()
        };
        assert!(v.contains(&Violation::OutOfRange { team: 0, slot: 2 }));
        assert_eq!(validate(&[vec![1], vec![0]]), vec![Violation::TeamCount(2)]);
    }

    #[test]
    fn circle_generator() {
        let tt = generate_circle(4, None).unwrap();
        assert!(tt.validate().is_empty());
        assert_eq!(
            generate_circle(8, Some(7)).unwrap(),
            generate_circle(8, Some(7)).unwrap()
        );
        assert_ne!(
            generate_circle(8, Some(7)).unwrap(),
            generate_circle(8, Some(8)).unwrap()
        );
        assert!(matches!(generate_circle(5, None), Err(Error::TeamCount(5))));
        assert!(matches!(generate_circle(2, None), Err(Error::TeamCount(2))));
    }

    #[test]
    fn breaks_and_open_cells() {
        let z = ha(&["HAH", "AAH", "HHA", "AHA"]);
        let r = z.count_breaks().unwrap();
        assert_eq!(r.total, 2);
        assert_eq!(r.positions, vec![(1, 1), (2, 1)]);
        assert_eq!(ha(&["HAH", "AHA"]).count_breaks().unwrap().total, 0);
        assert!(matches!(
            ha(&["H*H"]).count_breaks(),
            Err(Error::OpenCell { team: 1, slot: 2 })
        ));
    }

    #[test]
    fn consistency_and_completion() {
        let tt = Timetable::parse_csv(TABLE1).unwrap();
        let partial = ha(&["HAH", "*AH", "*HA", "AHA"]);
        assert!(partial.is_consistent(&tt));
        let full = partial.complete(&tt).unwrap();
        assert_eq!(full, ha(&["HAH", "AAH", "HHA", "AHA"]));
        assert_eq!(full.complete(&tt).unwrap(), full);

        let open = HaAssignment::open(4, 3);
        assert!(open.is_consistent(&tt));
        let filled = open.complete(&tt).unwrap();
        for (s, a, b) in tt.matches() {
            assert_eq!(filled.get(a, s), Some(Venue::Home));
            assert_eq!(filled.get(b, s), Some(Venue::Away));
        }

        let bad = ha(&["AH*", "***", "*HA", "AH*"]);
        assert!(!bad.is_consistent(&tt));
        let clashes = bad.clashes(&tt);
        assert!(clashes.iter().any(|c| c.slot == 1 && (c.first, c.second) == (0, 2)));
        assert!(matches!(bad.complete(&tt), Err(Error::Inconsistent { .. })));
        assert!(!HaAssignment::open(4, 2).is_consistent(&tt));
    }

    #[test]
    fn ha_csv_round_trip() {
        let z = ha(&["HAH", "*AH", "*HA", "AHA"]);
        let text = z.to_csv();
        assert!(text.starts_with("Slot,1,2,3\n1,H,A,H\n2,*,A,H\n"));
        assert_eq!(HaAssignment::parse_csv(&text).unwrap(), z);
        assert!(HaAssignment::parse_csv("Slot,1\n1,X\n").is_err());
    }
}
