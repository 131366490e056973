//! Short rational exponential functions of simplicial cones.
//!
//! For a nonsingular integer `A`, integer `b` and direction `c`, the sum
//! `sum_{z in Z^n, A z <= b} e^{<c,z> tau}` is a rational function of
//! `e^tau`. With `y = b - A z` the sum runs over `y >= 0` in the coset
//! `b + A Z^n`; grouping by `y mod r` (the orders of the unit vectors in
//! `G = Z^n / A Z^n`) leaves a finite numerator, computed here by a
//! dynamic program over `G`, over `prod (1 - e^{beta_i tau})`.

mod cone;
mod dp;
mod group;
mod series;

pub use cone::{cone_genfun, cone_genfun_continued, cone_weights, ConeGenFun};
pub(crate) use cone::PreparedCone;
pub use dp::{level_tables, LevelTable, Recurrence};
pub use group::GroupContext;
pub use series::{
    bernoulli_numbers, constant_term, constant_term_todd, evaluate_numeric, todd_polynomials,
    ShortRatExpFun,
};
