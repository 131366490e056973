use std::collections::BTreeMap;

use num_traits::{One, Signed};

use super::bounded::recession_ray;
use super::system::CanonicalSystem;
use crate::error::{Error, Result};
use crate::limits::{self, binomial};
use crate::linalg::{rank, sparsity_stats, subsets, Int, Inverse, Rat};
use crate::par;

/// A vertex of `{x : A x <= b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<Rat>,
    /// Lexicographically first nonsingular `n`-subset of tight rows.
    pub basis: Vec<usize>,
    /// `det(A_basis)`, nonzero.
    pub basis_det: Int,
    /// Every row tight at `point`; equals `basis` when the vertex is simple.
    pub tight: Vec<usize>,
}

impl Vertex {
    pub fn is_simple(&self) -> bool {
        self.tight.len() == self.basis.len()
    }
}

/// Exact vertex set by exhaustive basis scan, sorted by basis.
///
/// Errors with [`Error::Unbounded`] when the recession cone is nontrivial
/// and [`Error::Dimension`] when `rank(A) < n`.
pub fn enumerate_vertices(c: &CanonicalSystem) -> Result<Vec<Vertex>> {
    if rank(c.matrix()) < c.dim() {
        return Err(Error::Dimension("vertex enumeration needs rank(A) = n".into()));
    }
    if recession_ray(c)?.is_some() {
        return Err(Error::Unbounded);
    }
    enumerate_vertices_unchecked(c)
}

/// Basis scan without the boundedness check.
pub(crate) fn enumerate_vertices_unchecked(c: &CanonicalSystem) -> Result<Vec<Vertex>> {
    let (m, n) = (c.num_rows(), c.dim());
    let needed = binomial(m, n);
    let limit = limits::current().basis_subsets;
    if needed > limit {
        return Err(Error::budget("basis scan", needed, limit));
    }
    let a = c.matrix();
    let bases = subsets(m, n);
    let found = par::map(&bases, |basis| {
        let sub = a.select_rows(basis);
        let inv = Inverse::of(&sub).ok()?;
        let d = Rat::from_integer(inv.det.clone());
        let rhs: Vec<Rat> = basis.iter().map(|&r| c.rhs()[r].clone()).collect();
        let point: Vec<Rat> = inv
            .adj
            .mul_rat_vec(&rhs)
            .into_iter()
            .map(|v| v / &d)
            .collect();
        if c.contains_rat(&point) {
            Some((point, basis.clone(), inv.det))
        } else {
            None
        }
    });
    // bases arrive in lexicographic order, so the first one kept per point
    // is the lexicographically smallest
    let mut by_point: BTreeMap<Vec<Rat>, (Vec<usize>, Int)> = BTreeMap::new();
    for (point, basis, det) in found.into_iter().flatten() {
        by_point.entry(point).or_insert((basis, det));
    }
    let mut out: Vec<Vertex> = by_point
        .into_iter()
        .map(|(point, (basis, basis_det))| {
            let tight = c.tight_rows(&point);
            Vertex {
                point,
                basis,
                basis_det,
                tight,
            }
        })
        .collect();
    out.sort_by(|x, y| x.basis.cmp(&y.basis));
    Ok(out)
}

/// Upper bound on the number of vertices: the smaller of
/// `2^n * totn(A)^n` and `(2 * maxNorm)^n * weakSparse^n`.
pub fn vertex_count_bound(c: &CanonicalSystem) -> Result<Int> {
    let a = c.matrix();
    let n = c.dim();
    let stats = sparsity_stats(a, a.rows().min(n))?;
    let two = Int::from(2);
    let pow = |x: Int| -> Int { num_traits::pow(x, n) };
    let by_totn = pow(&two * &stats.totn);
    let by_sparse = pow(&two * &stats.max_norm * Int::from(stats.weak_sparse()));
    let bound = by_totn.min(by_sparse);
    Ok(if bound.is_positive() { bound } else { Int::one() })
}
