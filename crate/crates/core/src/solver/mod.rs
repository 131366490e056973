//! Feasibility, optimization and optimum counting on top of the counting
//! engine, plus a right-hand-side dynamic program for standard form.
//!
//! Every search is a binary search whose questions are "does this
//! restricted system have an integer point?", answered by
//! [`count_canonical`](crate::count_canonical).

mod feasible;
mod optimize;
mod report;
mod standard_dp;

pub use feasible::{feasible, recovery_call_cap};
pub use optimize::{optimize, optimize_and_count};
pub use report::{SolveReport, SolveStatus};
pub use standard_dp::standard_dp_optimize;
