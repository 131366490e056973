use num_traits::{One, Signed, Zero};

use super::system::CanonicalSystem;
use super::vertices::enumerate_vertices_unchecked;
use crate::error::{Error, Result};
use crate::linalg::{dot_rat, hnf, Int, Matrix, Rat};

/// `x = T y + t`: lifts points of a reduced system back to the original
/// variables. `T` has full column rank and extends to a unimodular
/// matrix, so the lift is a bijection on integer points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub t: Matrix,
    pub offset: Vec<Int>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        AffineMap {
            t: Matrix::identity(n),
            offset: vec![Int::zero(); n],
        }
    }

    pub fn source_dim(&self) -> usize {
        self.t.cols()
    }

    pub fn lift(&self, y: &[Int]) -> Vec<Int> {
        self.t
            .mul_vec(y)
            .into_iter()
            .zip(&self.offset)
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn lift_rat(&self, y: &[Rat]) -> Vec<Rat> {
        self.t
            .mul_rat_vec(y)
            .into_iter()
            .zip(&self.offset)
            .map(|(a, b)| a + Rat::from_integer(b.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// A full-dimensional system together with the lift back.
    FullDim {
        system: CanonicalSystem,
        map: AffineMap,
    },
    /// Every variable got fixed; the set is this single integer point.
    Point(Vec<Int>),
    /// The rational relaxation is empty.
    Empty,
    /// Nonempty over the rationals but an implicit equality forces a
    /// non-integer value.
    IntegerInfeasible,
}

fn first_implicit_equality(c: &CanonicalSystem) -> Result<Option<usize>> {
    let vertices = enumerate_vertices_unchecked(c)?;
    if vertices.is_empty() {
        return Ok(None);
    }
    let a = c.matrix();
    // a row is an implicit equality iff its minimum over the polytope
    // already reaches b_j, i.e. it is tight at every vertex
    Ok((0..c.num_rows()).find(|&j| {
        vertices
            .iter()
            .all(|v| dot_rat(a.row(j), &v.point) == c.rhs()[j])
    }))
}

enum Pair {
    Equality(usize),
    Contradiction,
}

/// Rows `a x <= b_j` and `-a x <= b_k`: an explicit equality when
/// `b_j + b_k = 0`, an empty system when it is negative. Found without
/// touching the vertices.
fn opposite_pair(a: &Matrix, b: &[Rat]) -> Option<Pair> {
    for j in 0..a.rows() {
        for k in j + 1..a.rows() {
            if a.row(j).iter().zip(a.row(k)).all(|(x, y)| x == &-y) {
                let s = &b[j] + &b[k];
                if s.is_negative() {
                    return Some(Pair::Contradiction);
                }
                if s.is_zero() {
                    return Some(Pair::Equality(j));
                }
            }
        }
    }
    None
}

fn has_vertices(c: &CanonicalSystem) -> Result<bool> {
    Ok(!enumerate_vertices_unchecked(c)?.is_empty())
}

/// Strip implicit equalities one at a time: transform the row to
/// `(1, 0, .., 0)` with its HNF, substitute the forced value and drop the
/// variable. The input must be bounded.
pub fn reduce_to_full_dim(c: &CanonicalSystem) -> Result<Reduction> {
    reduce(c, true)
}

/// Only the explicit equalities (pairs of opposite rows); no vertex
/// enumeration, so unbounded input is fine. `FullDim` then just means
/// "what is left". Fails with [`Error::Unbounded`] when no inequality
/// survives but variables do, i.e. the set is a whole lattice.
pub(crate) fn strip_explicit_equalities(c: &CanonicalSystem) -> Result<Reduction> {
    reduce(c, false)
}

/// Vertices of a bounded system, computed on the system without its
/// explicit equalities and lifted back. Meant for systems known to hold
/// integer points: an explicit equality with a fractional value yields
/// no vertices.
pub(crate) fn vertex_points(c: &CanonicalSystem) -> Result<Vec<Vec<Rat>>> {
    Ok(match strip_explicit_equalities(c)? {
        Reduction::FullDim { system, map } => enumerate_vertices_unchecked(&system)?
            .iter()
            .map(|v| map.lift_rat(&v.point))
            .collect(),
        Reduction::Point(p) => vec![p.into_iter().map(Rat::from_integer).collect()],
        Reduction::Empty | Reduction::IntegerInfeasible => vec![],
    })
}

/// When the explicit equalities of `c` consume every row, the map from
/// the integer points they leave; `None` otherwise.
pub(crate) fn free_lattice(c: &CanonicalSystem) -> Result<Option<AffineMap>> {
    Ok(match reduce_inner(c, false)? {
        Inner::Free(map) => Some(map),
        Inner::Done(_) => None,
    })
}

enum Inner {
    Done(Reduction),
    Free(AffineMap),
}

fn reduce(c: &CanonicalSystem, implicit: bool) -> Result<Reduction> {
    match reduce_inner(c, implicit)? {
        Inner::Done(r) => Ok(r),
        Inner::Free(_) => Err(Error::Unbounded),
    }
}

fn reduce_inner(c: &CanonicalSystem, implicit: bool) -> Result<Inner> {
    let mut map = AffineMap::identity(c.dim());
    let (mut a, mut b) = match c.deduplicated() {
        Some(ab) => ab,
        None => return Ok(Inner::Done(Reduction::Empty)),
    };
    loop {
        let n = a.cols();
        if a.rows() == 0 {
            // every row was an equality
            if n == 0 {
                return Ok(Inner::Done(Reduction::Point(map.offset)));
            }
            return Ok(Inner::Free(map));
        }
        let j = match opposite_pair(&a, &b) {
            Some(Pair::Equality(j)) => j,
            Some(Pair::Contradiction) => return Ok(Inner::Done(Reduction::Empty)),
            None => {
                let sys = CanonicalSystem::new(a.clone(), b.clone())?;
                if !implicit {
                    return Ok(Inner::Done(Reduction::FullDim { system: sys, map }));
                }
                if !has_vertices(&sys)? {
                    return Ok(Inner::Done(Reduction::Empty));
                }
                match first_implicit_equality(&sys)? {
                    None => return Ok(Inner::Done(Reduction::FullDim { system: sys, map })),
                    Some(j) => j,
                }
            }
        };
        if !b[j].is_integer() {
            return Ok(Inner::Done(Reduction::IntegerInfeasible));
        }
        let value = b[j].to_integer();
        let row = Matrix::from_int_rows(vec![a.row(j).to_vec()], n)?;
        let q = hnf(&row).q;
        debug_assert!(hnf(&row).h.get(0, 0).is_one());
        let aq = &a * &q;
        let first = aq.column(0);
        let rest_cols: Vec<usize> = (1..n).collect();
        let all_rows: Vec<usize> = (0..a.rows()).collect();
        let new_a = aq.select(&all_rows, &rest_cols);
        let new_b: Vec<Rat> = b
            .iter()
            .zip(&first)
            .map(|(bi, ai)| bi - Rat::from_integer(ai * &value))
            .collect();
        // x = T (Q y) + t with y_1 = value
        let tq = &map.t * &q;
        let shift = tq.column(0);
        let offset = map
            .offset
            .iter()
            .zip(&shift)
            .map(|(o, s)| o + s * &value)
            .collect();
        let t_rows: Vec<usize> = (0..tq.rows()).collect();
        map = AffineMap {
            t: tq.select(&t_rows, &rest_cols),
            offset,
        };
        if n == 1 {
            // every row now reads 0 <= b'
            if new_b.iter().any(|v| v.is_negative()) {
                return Ok(Inner::Done(Reduction::Empty));
            }
            return Ok(Inner::Done(Reduction::Point(map.offset)));
        }
        let reduced = CanonicalSystem::new(new_a, new_b)?;
        match reduced.deduplicated() {
            Some((ra, rb)) => {
                a = ra;
                b = rb;
            }
            None => return Ok(Inner::Done(Reduction::Empty)),
        }
    }
}
