use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::report::SolveReport;
use crate::counting::count_canonical;
use crate::error::{Error, Result};
use crate::linalg::{max_abs_subdeterminant, Int, Rat};
use crate::polyhedron::{
    box_if_unbounded, free_lattice, strip_explicit_equalities, vertex_points, CanonicalSystem,
    Reduction,
};

/// Counting calls allowed for witness recovery in dimension `n` when
/// every subdeterminant is at most `delta` in absolute value:
/// `n * (2 * ceil(log2(2 n delta + 1)) + 2)`.
pub fn recovery_call_cap(n: usize, delta: &Int) -> usize {
    let width = Int::from(2 * n) * delta + Int::one();
    n * (2 * ceil_log2(&width) + 2)
}

pub(crate) fn ceil_log2(v: &Int) -> usize {
    if v <= &Int::one() {
        return 0;
    }
    (v - Int::one()).bits() as usize
}

/// Has the system an integer point? Counts as one oracle call.
pub(crate) fn has_point(c: &CanonicalSystem, calls: &mut usize) -> Result<bool> {
    *calls += 1;
    Ok(count_canonical(c)?.count.is_positive())
}

/// Smallest `t` in `[lo, hi]` with `pred(t)`, given `pred` is monotone
/// (false then true) and `pred(hi)` holds.
pub(crate) fn first_true(
    lo: Int,
    hi: Int,
    mut pred: impl FnMut(&Int) -> Result<bool>,
) -> Result<Int> {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = (&lo + &hi).div_floor(&Int::from(2));
        if pred(&mid)? {
            hi = mid;
        } else {
            lo = mid + Int::one();
        }
    }
    Ok(lo)
}

/// Integer range of coordinate `k` over the polytope `q`, or `None` when
/// `q` has no vertex.
fn coordinate_range(q: &CanonicalSystem, k: usize) -> Result<Option<(Rat, Rat, Rat)>> {
    let vs = vertex_points(q)?;
    let first = match vs.first() {
        Some(v) => v[k].clone(),
        None => return Ok(None),
    };
    let lo = vs.iter().map(|v| &v[k]).min().unwrap().clone();
    let hi = vs.iter().map(|v| &v[k]).max().unwrap().clone();
    Ok(Some((first, lo, hi)))
}

/// Fix the coordinates of a bounded system one at a time. For a vertex
/// `v` of the current system some integer point lies within
/// `n * delta` of `v` in every coordinate, so each coordinate is
/// searched in that window only.
pub(crate) fn recover_witness(
    q: &CanonicalSystem,
    delta: Option<&Int>,
    calls: &mut usize,
) -> Result<Vec<Int>> {
    let n = q.dim();
    let mut cur = q.clone();
    let mut x = Vec::with_capacity(n);
    for k in 0..n {
        let (v, lp_lo, lp_hi) = coordinate_range(&cur, k)?
            .ok_or_else(|| Error::Internal("feasible system lost its vertices".into()))?;
        let mut lo = lp_lo.ceil().to_integer();
        let mut hi = lp_hi.floor().to_integer();
        if let Some(d) = delta {
            let radius = Rat::from_integer(Int::from(n) * d);
            lo = lo.max((&v - &radius).ceil().to_integer());
            hi = hi.min((&v + &radius).floor().to_integer());
        }
        if lo > hi {
            return Err(Error::Internal("empty proximity window".into()));
        }
        let window_lo = lo.clone();
        let t = first_true(lo, hi, |t| {
            has_point(&cur.with_slab(&unit(n, k), Some(&window_lo), Some(t))?, calls)
        })?;
        cur = cur.with_fixed(k, &t)?;
        x.push(t);
    }
    if !q.contains(&x) {
        return Err(Error::Internal("recovered point violates the system".into()));
    }
    Ok(x)
}

pub(crate) fn unit(n: usize, k: usize) -> Vec<Int> {
    let mut e = vec![Int::zero(); n];
    e[k] = Int::one();
    e
}

/// Largest absolute subdeterminant, or `None` when it is too costly to
/// enumerate (the search then uses the full LP range).
pub(crate) fn proximity_delta(c: &CanonicalSystem) -> Option<Int> {
    max_abs_subdeterminant(c.matrix()).ok().filter(|d| d.is_positive())
}

/// Decide whether `c` has an integer point and, if so, find one.
pub fn feasible(c: &CanonicalSystem) -> Result<SolveReport> {
    match strip_explicit_equalities(c) {
        Ok(Reduction::FullDim { system, map }) if map.source_dim() == c.dim() => {
            feasible_full(&system)
        }
        Ok(Reduction::FullDim { system, map }) => {
            let mut r = feasible_full(&system)?;
            r.witness = r.witness.map(|y| map.lift(&y));
            Ok(r)
        }
        Ok(Reduction::Point(p)) => Ok(SolveReport::feasible(p)),
        Ok(Reduction::Empty | Reduction::IntegerInfeasible) => Ok(SolveReport::infeasible()),
        Err(Error::Unbounded) => Ok(match free_lattice(c)? {
            Some(map) => SolveReport::feasible(map.lift(&vec![Int::zero(); map.source_dim()])),
            None => SolveReport::infeasible(),
        }),
        Err(e) => Err(e),
    }
}

fn feasible_full(c: &CanonicalSystem) -> Result<SolveReport> {
    let mut calls = 0usize;
    if !has_point(c, &mut calls)? {
        let mut r = SolveReport::infeasible();
        r.oracle_calls = calls;
        return Ok(r);
    }
    // boxing keeps an integer point and leaves subdeterminants unchanged
    let q = box_if_unbounded(c)?;
    let delta = proximity_delta(&q);
    let x = recover_witness(&q, delta.as_ref(), &mut calls)?;
    let mut r = SolveReport::feasible(x);
    r.oracle_calls = calls;
    Ok(r)
}
