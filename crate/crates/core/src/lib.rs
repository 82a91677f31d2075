//! Break minimization for single round-robin timetables.
//!
//! Given a timetable, the minimum number of breaks over all consistent
//! home/away assignments equals the size of a minimum odd cycle transversal
//! of the timetable's auxiliary graph. This crate builds that graph, solves
//! the transversal problem exactly (iterative compression) or heuristically,
//! repairs the resulting label map so it induces a consistent partial
//! assignment, and completes it into an optimal schedule.
//!
//! ```
//! use breakmin::{generate_circle, solve_bmp, Solver};
//!
//! let tt = generate_circle(6, Some(3)).unwrap();
//! let report = solve_bmp(&tt, Solver::Exact).unwrap();
//! assert!(report.assignment.is_consistent(&tt));
//! assert_eq!(report.b_min, report.oct_size);
//! ```

pub mod auxgraph;
pub mod cli;
pub mod error;
pub mod graph;
mod grid;
pub mod oct;
pub mod par;
pub mod pipeline;
pub mod repair;
pub mod timetable;

pub use auxgraph::{build_aux_graph, emit_dot, rectangular_cycles, AuxiliaryGraph, EdgeClass, RectangularCycle};
pub use error::{Error, Result};
pub use graph::Graph;
pub use oct::{
    ha_to_octmap, heuristic_oct_upper_bound, min_oct_bruteforce, min_oct_exact, octmap_is_valid, octmap_to_partial,
    transversal_to_octmap, OctMap, Transversal,
};
pub use par::Execution;
pub use pipeline::{min_breaks_bruteforce, solve_batch, solve_bmp, verify, SolveReport, Solver, VerifyReport};
pub use repair::{
    find_earliest_inconsistent, is_consistent_on_cycle, is_locally_bipartite, repair, repair_step, InconsistencyRecord,
};
pub use timetable::{generate_circle, BreakReport, HaAssignment, Timetable, Venue, Violation};
