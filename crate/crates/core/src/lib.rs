//! Builds the Cover-Small-Cuts instances in which `x* = (1/k, ..., 1/k)` is a
//! basic feasible solution, and certifies every property of them exactly.
//!
//! - [`construction`] builds the capacitated graph, the links, and `A`.
//! - [`cuts`] enumerates every cut of capacity below the threshold.
//! - [`certify`] checks the small-cut family, tightness, rank, and replays the
//!   row reduction of `A`.
//! - [`io`] holds the JSON documents, the LP and DOT writers, and the pipelines
//!   behind the command-line tool.

pub mod certify;
pub mod construction;
pub mod cuts;
pub mod exactmath;
pub mod io;

pub use certify::{verify_basic, Certificate, ReductionTrace};
pub use construction::{build_instance, Instance, ListedCut, LAMBDA};
pub use cuts::{Cut, CutFamily, NodeSet};
pub use exactmath::{IntMatrix, Rat};
