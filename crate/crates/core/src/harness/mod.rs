//! Trace replay, workload generation and strategy benchmarking.

pub mod gen;
pub mod run;
pub mod solvers;
pub mod trace;

pub use gen::{gen, GenConfig, Model};
pub use run::{bench, comparison_table, replay, BenchReport, HarnessError, Histogram, ReplayOptions};
pub use solvers::{build_solver, Answer, Instance, Params, Problem, Solver, Strategy, Witness};
pub use trace::{Event, ParseError, TraceFile};
