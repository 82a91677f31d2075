//! End-to-end break minimization and the independent checks around it.
//!
//! The solve path is: auxiliary graph → minimum transversal → label map →
//! repair → partial assignment → completion → break count. For an optimal
//! transversal the resulting break count equals the transversal size.

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::auxgraph::build_aux_graph;
use crate::error::{Error, Result};
use crate::oct::{
    heuristic_oct_upper_bound_with, min_oct_bruteforce_with, min_oct_exact_with, octmap_to_partial,
    transversal_to_octmap, OctMap,
};
use crate::par::{self, Execution};
use crate::repair::repair_traced;
use crate::timetable::{BreakReport, HaAssignment, Timetable};

pub const REPORT_SCHEMA: u32 = 1;

/// Largest match count the break oracle enumerates without an override
/// (covers up to six teams).
pub const BRUTE_FORCE_MAX_MATCHES: usize = 24;
/// Hard ceiling with the override, enough for eight teams.
pub const BRUTE_FORCE_OVERRIDE_MAX_MATCHES: usize = 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Exact,
    Brute,
    Heuristic { seed: u64 },
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Exact => "exact",
            Solver::Brute => "brute",
            Solver::Heuristic { .. } => "heuristic",
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Solver::Heuristic { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Every timetable needs at least `n_teams - 2` breaks.
    pub lower: usize,
    /// `(n - 1)^2` for `2n` teams, known achievable when `2n` is not a multiple of 4.
    pub upper_nm4: Option<usize>,
}

impl Bounds {
    pub fn for_teams(n_teams: usize) -> Self {
        let half = n_teams / 2;
        Bounds {
            lower: n_teams.saturating_sub(2),
            upper_nm4: (!n_teams.is_multiple_of(4)).then(|| (half - 1) * (half - 1)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveStats {
    pub solver: &'static str,
    pub elapsed_ms: f64,
    pub nodes: u64,
    pub repair_steps: usize,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub n_teams: usize,
    /// Breaks of the emitted assignment; the optimum when `optimal` is set.
    pub b_min: usize,
    pub oct_size: usize,
    /// False for heuristic solves, whose numbers are upper bounds.
    pub optimal: bool,
    pub assignment: HaAssignment,
    pub breaks: BreakReport,
    pub bounds: Bounds,
    pub octmap: OctMap,
    pub stats: SolveStats,
    pub warnings: Vec<String>,
}

impl SolveReport {
    /// JSON document with 1-based break positions.
    pub fn to_json(&self) -> serde_json::Value {
        let positions: Vec<[usize; 2]> = self.breaks.positions.iter().map(|&(t, s)| [t + 1, s + 1]).collect();
        json!({
            "schema": REPORT_SCHEMA,
            "teams": self.n_teams,
            "b_min": self.b_min,
            "oct_size": self.oct_size,
            "optimal": self.optimal,
            "breaks": { "total": self.breaks.total, "positions": positions },
            "bounds": {
                "lower": self.bounds.lower,
                "lower_ok": self.b_min >= self.bounds.lower,
                "upper_nm4": self.bounds.upper_nm4,
                "upper_ok": self.bounds.upper_nm4.map(|u| self.b_min <= u),
            },
            "stats": self.stats,
            "warnings": self.warnings,
        })
    }
}

pub fn solve_bmp(tt: &Timetable, solver: Solver) -> Result<SolveReport> {
    solve_bmp_with(tt, solver, Execution::default())
}

pub fn solve_bmp_with(tt: &Timetable, solver: Solver, exec: Execution) -> Result<SolveReport> {
    let start = Instant::now();
    let g = build_aux_graph(tt);
    let (tv, oct_stats) = match solver {
        Solver::Exact => min_oct_exact_with(g.graph(), exec),
        Solver::Brute => min_oct_bruteforce_with(g.graph(), exec)?,
        Solver::Heuristic { seed } => heuristic_oct_upper_bound_with(g.graph(), seed, exec),
    };
    let map = transversal_to_octmap(&g, &tv)?;
    let (repaired, steps) = repair_traced(&map, tt);
    let assignment = octmap_to_partial(&repaired)?.complete(tt)?;
    let breaks = assignment.count_breaks()?;

    if solver.is_exact() {
        debug_assert_eq!(breaks.total, tv.len(), "break count must equal the transversal size");
    }
    let bounds = Bounds::for_teams(tt.n_teams());
    let mut warnings = Vec::new();
    if let Some(upper) = bounds.upper_nm4 {
        if breaks.total > upper {
            warnings.push(format!("{} breaks exceeds the (n-1)^2 bound of {upper}", breaks.total));
        }
    }
    if breaks.total < bounds.lower {
        warnings.push(format!(
            "{} breaks is below the 2n-2 lower bound of {}",
            breaks.total, bounds.lower
        ));
    }

    Ok(SolveReport {
        n_teams: tt.n_teams(),
        b_min: breaks.total,
        oct_size: tv.len(),
        optimal: solver.is_exact(),
        assignment,
        breaks,
        bounds,
        octmap: repaired,
        stats: SolveStats {
            solver: solver.name(),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            nodes: oct_stats.nodes,
            repair_steps: steps.len(),
        },
        warnings,
    })
}

/// Solves many timetables, one instance per work item.
pub fn solve_batch(tts: &[Timetable], solver: Solver, exec: Execution) -> Vec<Result<SolveReport>> {
    par::map(exec, tts, |tt| solve_bmp_with(tt, solver, Execution::Sequential))
}

/// Minimum breaks by enumerating every home/away orientation of every match.
pub fn min_breaks_bruteforce(tt: &Timetable) -> Result<usize> {
    min_breaks_bruteforce_with(tt, false, Execution::default())
}

/// `allow_large` raises the match limit from 24 to 31 (eight teams).
pub fn min_breaks_bruteforce_with(tt: &Timetable, allow_large: bool, exec: Execution) -> Result<usize> {
    let matches = tt.matches();
    let limit = if allow_large {
        BRUTE_FORCE_OVERRIDE_MAX_MATCHES
    } else {
        BRUTE_FORCE_MAX_MATCHES
    };
    if matches.len() > limit {
        return Err(Error::Guard {
            what: "brute-force break enumeration (matches)",
            limit,
            actual: matches.len(),
        });
    }
    let n_slots = tt.n_slots();
    let pair_mask: u32 = (1u32 << (n_slots - 1)) - 1;
    let breaks = |row: u32| (!(row ^ (row >> 1)) & pair_mask).count_ones() as usize;

    // Reversing every venue keeps the break count, so match 0 stays fixed.
    let free = matches.len() - 1;
    let split = free.min(10);
    let low = free - split;

    let best = par::min_by_key(exec, 0..1usize << split, |chunk| {
        let mut rows = vec![0u32; tt.n_teams()];
        for (m, &(s, a, b)) in matches.iter().enumerate() {
            let swapped = m > low && (chunk >> (m - low - 1)) & 1 == 1;
            let home = if swapped { b } else { a };
            rows[home] |= 1 << s;
        }
        let mut total: usize = rows.iter().map(|&r| breaks(r)).sum();
        let mut best = total;
        // Gray-code walk over matches 1..=low.
        for i in 1usize..1 << low {
            let (s, a, b) = matches[1 + i.trailing_zeros() as usize];
            total -= breaks(rows[a]) + breaks(rows[b]);
            rows[a] ^= 1 << s;
            rows[b] ^= 1 << s;
            total += breaks(rows[a]) + breaks(rows[b]);
            best = best.min(total);
        }
        best
    });
    Ok(best.map(|(_, b)| b).expect("at least one orientation"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub breaks: Option<BreakReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Re-checks an assignment against a timetable and an optional claimed
/// break count. Failures are reported, not returned as errors.
pub fn verify(tt: &Timetable, z: &HaAssignment, claimed: Option<usize>) -> VerifyReport {
    let mut checks = Vec::new();
    let shape_ok = z.n_teams() == tt.n_teams() && z.n_slots() == tt.n_slots();
    checks.push(Check {
        name: "shape",
        passed: shape_ok,
        detail: format!(
            "assignment {}x{}, timetable {}x{}",
            z.n_teams(),
            z.n_slots(),
            tt.n_teams(),
            tt.n_slots()
        ),
    });
    if !shape_ok {
        return VerifyReport { checks, breaks: None };
    }

    let breaks = z.count_breaks().ok();
    checks.push(Check {
        name: "full",
        passed: breaks.is_some(),
        detail: if breaks.is_some() {
            "no open cells".into()
        } else {
            "assignment has open cells".into()
        },
    });

    let clashes = z.clashes(tt);
    checks.push(Check {
        name: "consistency",
        passed: clashes.is_empty(),
        detail: if clashes.is_empty() {
            "every match has one home and one away team".into()
        } else {
            clashes.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
        },
    });

    if let Some(b) = &breaks {
        if let Some(c) = claimed {
            checks.push(Check {
                name: "claimed",
                passed: b.total == c,
                detail: format!("counted {}, claimed {c}", b.total),
            });
        }
        let lower = Bounds::for_teams(tt.n_teams()).lower;
        checks.push(Check {
            name: "lower_bound",
            passed: b.total >= lower,
            detail: format!("{} breaks, lower bound {lower}", b.total),
        });
    }
    VerifyReport { checks, breaks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timetable::{generate_circle, Venue};

    fn table1() -> Timetable {
        Timetable::from_rows(&[vec![1, 2, 3], vec![0, 3, 2], vec![3, 0, 1], vec![2, 1, 0]]).unwrap()
    }

    /// Straight enumeration of all orientations, no symmetry or Gray code.
    fn naive_min_breaks(tt: &Timetable) -> usize {
        let matches = tt.matches();
        (0u64..1 << matches.len())
            .map(|code| {
                let mut z = HaAssignment::open(tt.n_teams(), tt.n_slots());
                for (i, &(s, a, b)) in matches.iter().enumerate() {
                    let (h, w) = if code >> i & 1 == 0 { (a, b) } else { (b, a) };
                    z.set(h, s, Some(Venue::Home));
                    z.set(w, s, Some(Venue::Away));
                }
                z.count_breaks().unwrap().total
            })
            .min()
            .unwrap()
    }

    #[test]
    fn break_oracle_matches_naive_enumeration() {
        assert_eq!(naive_min_breaks(&table1()), 2);
        assert_eq!(min_breaks_bruteforce(&table1()).unwrap(), 2);
        for seed in 0..4 {
            let tt = generate_circle(6, Some(seed)).unwrap();
            let expected = naive_min_breaks(&tt);
            for exec in [Execution::Sequential, Execution::Parallel] {
                assert_eq!(min_breaks_bruteforce_with(&tt, false, exec).unwrap(), expected);
            }
        }
    }

    #[test]
    fn break_oracle_guard() {
        let tt = generate_circle(8, None).unwrap();
        assert!(matches!(min_breaks_bruteforce(&tt), Err(Error::Guard { .. })));
    }

    #[test]
    fn bounds() {
        assert_eq!(
            Bounds::for_teams(6),
            Bounds {
                lower: 4,
                upper_nm4: Some(4)
            }
        );
        assert_eq!(
            Bounds::for_teams(8),
            Bounds {
                lower: 6,
                upper_nm4: None
            }
        );
    }

    #[test]
    fn solve_small_table() {
        for solver in [Solver::Exact, Solver::Brute, Solver::Heuristic { seed: 1 }] {
            let r = solve_bmp(&table1(), solver).unwrap();
            assert_eq!(r.b_min, 2);
            assert!(r.assignment.is_consistent(&table1()));
            assert_eq!(r.optimal, solver.is_exact());
        }
        let json = solve_bmp(&table1(), Solver::Exact).unwrap().to_json();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["b_min"], 2);
        assert_eq!(json["breaks"]["total"], 2);
        assert_eq!(json["bounds"]["lower"], 2);
        assert_eq!(json["stats"]["solver"], "exact");
    }

    #[test]
    fn verify_flags_clash() {
        let tt = table1();
        let mut z = solve_bmp(&tt, Solver::Exact).unwrap().assignment;
        assert!(verify(&tt, &z, Some(2)).passed());
        assert!(!verify(&tt, &z, Some(3)).passed());
        let flipped = z.get(0, 0).unwrap().flip();
        z.set(0, 0, Some(flipped));
        let r = verify(&tt, &z, None);
        assert!(!r.check("consistency").unwrap().passed);
        assert!(r.check("claimed").is_none());
    }
}
