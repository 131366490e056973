//! Command-line front end for `latcount`.
//!
//! Instance files are line-oriented; `#` starts a comment.
//!
//! ```text
//! canonical m n            # A x <= b
//! a11 .. a1n               # m rows of integers
//! rhs b1 .. bm             # integers or p/q rationals
//! objective c1 .. cn       # optional
//!
//! standard k n [with-mult] # A x = b, x >= 0 (x <= u)
//! ... k rows, rhs ...
//! mult u1 .. un            # required with `with-mult`
//! objective c1 .. cn       # optional
//!
//! hypergraph nv ne
//! 1 2 3                    # ne lines of 1-based vertex lists
//! edgebounds lo hi         # one line per edge, or one line for all;
//! vertexbounds lo hi       # `inf` / `-inf` for no bound
//! weights w1 ..            # optional
//! mult u1 ..               # optional
//! ```
//!
//! Reports are `key=value` lines on standard output. Exit status: 0 on
//! success, 2 for malformed input or usage, 3 when a work budget refuses
//! (`LATCOUNT_BUDGET` overrides the budgets), 4 when `--crosscheck`
//! disagrees, 1 for anything else.

mod commands;
mod instance;
mod report;

pub use commands::{run, Cli, Command, Input, Outcome, Problem, EXIT_BUDGET, EXIT_ERROR, EXIT_MISMATCH, EXIT_PARSE};
pub use instance::{parse_instance, parse_int_list, write_instance, Instance, ParseError};
pub use report::Report;
