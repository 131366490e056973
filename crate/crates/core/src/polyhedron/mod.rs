//! Polyhedra `{x : A x <= b}` and `{x : A x = b, 0 <= x (<= u)}`, and the
//! geometric preprocessing the counting pipeline needs.

mod bounded;
mod cone;
mod perturb;
mod reduce;
mod system;
mod vertices;

pub use bounded::{box_if_unbounded, is_bounded, kernel_vector, recession_ray};
pub use cone::{tangent_cone, TangentCone};
pub use perturb::{is_simple, perturb_to_simple};
pub use reduce::{reduce_to_full_dim, AffineMap, Reduction};
pub(crate) use reduce::{free_lattice, strip_explicit_equalities, vertex_points};
pub use system::{standard_to_canonical, CanonicalSystem, StandardSystem};
pub use vertices::{enumerate_vertices, vertex_count_bound, Vertex};

pub(crate) use vertices::enumerate_vertices_unchecked;
