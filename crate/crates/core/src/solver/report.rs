use std::fmt;

use crate::counting::Count;
use crate::linalg::Int;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Feasible,
    Infeasible,
    Unbounded,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Feasible => "FEASIBLE",
            SolveStatus::Infeasible => "INFEASIBLE",
            SolveStatus::Unbounded => "UNBOUNDED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Present iff the status is feasible.
    pub witness: Option<Vec<Int>>,
    pub optimum: Option<Int>,
    /// Number of optimal integer points (infinite when the optimal face
    /// is unbounded).
    pub optima_count: Option<Count>,
    /// Counting-oracle calls made while recovering the witness.
    pub oracle_calls: usize,
}

impl SolveReport {
    pub fn infeasible() -> Self {
        SolveReport {
            status: SolveStatus::Infeasible,
            witness: None,
            optimum: None,
            optima_count: None,
            oracle_calls: 0,
        }
    }

    pub fn unbounded(witness: Option<Vec<Int>>) -> Self {
        SolveReport {
            status: SolveStatus::Unbounded,
            witness,
            optimum: None,
            optima_count: None,
            oracle_calls: 0,
        }
    }

    pub fn feasible(witness: Vec<Int>) -> Self {
        SolveReport {
            status: SolveStatus::Feasible,
            witness: Some(witness),
            optimum: None,
            optima_count: None,
            oracle_calls: 0,
        }
    }
}
