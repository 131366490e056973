use super::system::CanonicalSystem;
use super::vertices::Vertex;
use crate::error::{Error, Result};
use crate::linalg::{Int, Matrix, Rat};

/// `{x : A_J x <= b_J}` for the rows `J` tight at a simple vertex, with
/// the right-hand side rounded down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCone {
    pub a: Matrix,
    pub b: Vec<Int>,
    pub rows: Vec<usize>,
    pub vertex: Vec<Rat>,
}

pub fn tangent_cone(c: &CanonicalSystem, v: &Vertex) -> Result<TangentCone> {
    if v.tight.len() != c.dim() {
        return Err(Error::Invalid(format!(
            "degenerate vertex: {} tight rows in dimension {}",
            v.tight.len(),
            c.dim()
        )));
    }
    let rows = v.tight.clone();
    Ok(TangentCone {
        a: c.matrix().select_rows(&rows),
        b: rows
            .iter()
            .map(|&r| c.rhs()[r].floor().to_integer())
            .collect(),
        rows,
        vertex: v.point.clone(),
    })
}
