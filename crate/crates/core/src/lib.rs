//! Exact integer-point counting, feasibility, optimization and optimum
//! counting for rational polyhedra.
//!
//! The counting engine decomposes a polytope into the tangent cones of its
//! vertices, computes a short rational exponential function for each cone
//! with a dynamic program over the cone's Smith group, and reads the count
//! off as the constant term of the summed Laurent expansion. Everything is
//! exact: integers are arbitrary precision and scalars are reduced
//! rationals.
//!
//! Module map:
//!
//! * [`linalg`]: determinants, adjugates, Hermite/Smith forms, sparsity
//!   diagnostics.
//! * [`polyhedron`]: canonical/standard systems, vertex enumeration,
//!   full-dimension reduction, perturbation, tangent cones, boxing.
//! * [`genfun`]: the per-cone group dynamic program and constant-term
//!   extraction.
//! * [`counting`]: the full counting pipeline.
//! * [`solver`]: feasibility, optimization and optimum counting on top of
//!   the counting oracle, plus a right-hand-side DP for standard form.
//! * [`hypergraph`]: multi-packing / multi-cover encodings.
//! * [`oracle`]: brute-force ground truth.

pub mod counting;
pub mod error;
pub mod genfun;
pub mod hypergraph;
pub mod limits;
pub mod linalg;
pub mod oracle;
mod par;
pub mod polyhedron;
pub mod solver;

pub use counting::{count_canonical, count_standard, Count, CountReport};
pub use error::{Error, Result};
pub use linalg::{Int, Matrix, Rat};
pub use polyhedron::{CanonicalSystem, StandardSystem};
pub use solver::{SolveReport, SolveStatus};
