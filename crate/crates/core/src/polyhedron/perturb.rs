use num_traits::One;

use super::system::CanonicalSystem;
use super::vertices::{enumerate_vertices_unchecked, Vertex};
use crate::error::{Error, Result};
use crate::linalg::Rat;

const MAX_HALVINGS: usize = 64;

pub fn is_simple(vertices: &[Vertex]) -> bool {
    vertices.iter().all(Vertex::is_simple)
}

/// Shift row `i` outwards by `eps^(i+1)` after rounding `b` down. Since
/// every shift is below one and `A` is integral, no integer point enters
/// or leaves. `eps` starts at 1/2 and is halved until every vertex has
/// exactly `n` tight rows. Returns the system and its vertices.
pub fn perturb_to_simple(c: &CanonicalSystem) -> Result<(CanonicalSystem, Vec<Vertex>)> {
    let base = c.floored();
    let vertices = enumerate_vertices_unchecked(&base)?;
    if is_simple(&vertices) {
        return Ok((base, vertices));
    }
    let mut eps = Rat::new(1.into(), 2.into());
    for _ in 0..MAX_HALVINGS {
        let mut shift = Rat::one();
        let b: Vec<Rat> = base
            .rhs()
            .iter()
            .map(|v| {
                shift = &shift * &eps;
                v + &shift
            })
            .collect();
        let candidate = CanonicalSystem::new(base.matrix().clone(), b)?;
        let vertices = enumerate_vertices_unchecked(&candidate)?;
        if is_simple(&vertices) {
            return Ok((candidate, vertices));
        }
        eps = eps / Rat::from_integer(2.into());
    }
    Err(Error::Internal("no simple perturbation found".into()))
}
