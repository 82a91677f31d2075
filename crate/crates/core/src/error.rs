use thiserror::Error;

use crate::timetable::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("csv line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid timetable: {}", format_violations(.0))]
    InvalidTimetable(Vec<Violation>),

    #[error("team count must be even and at least 4, got {0}")]
    TeamCount(usize),

    #[error("team {0} cannot play itself")]
    SelfMatch(usize),

    #[error("assignment has an open cell at team {team}, slot {slot}")]
    OpenCell { team: usize, slot: usize },

    #[error("assignment is inconsistent with the timetable at team {team}, slot {slot}")]
    Inconsistent { team: usize, slot: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimensions { expected: String, got: String },

    #[error("cell team {team}, slot {slot} would be both home and away")]
    LabelConflict { team: usize, slot: usize },

    #[error("vertex set is not an odd cycle transversal (conflict at vertex {0})")]
    NotTransversal(usize),

    #[error("{what} limited to {limit}, instance has {actual}")]
    Guard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn format_violations(v: &[Violation]) -> String {
    let shown: Vec<String> = v.iter().take(5).map(|x| x.to_string()).collect();
    let mut out = shown.join("; ");
    if v.len() > 5 {
        out.push_str(&format!("; and {} more", v.len() - 5));
    }
    out
}
