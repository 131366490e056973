//! Brute-force ground truth: enumerate every integer point of a bounded
//! system inside a box.
//!
//! Deliberately shares nothing with the counting pipeline except the
//! number types: boxes come from Fourier-Motzkin elimination, points from
//! a plain odometer scan.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::Count;
use crate::error::{Error, Result};
use crate::limits;
use crate::linalg::{Int, Rat};
use crate::par;
use crate::polyhedron::CanonicalSystem;
use crate::solver::{SolveReport, SolveStatus};

/// Per-variable integer bounds `lo_i <= x_i <= hi_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxSpec {
    pub lo: Vec<Int>,
    pub hi: Vec<Int>,
}

impl BoxSpec {
    pub fn new(lo: Vec<Int>, hi: Vec<Int>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::Dimension("box bounds differ in length".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Invalid("box lower bound above upper bound".into()));
        }
        Ok(BoxSpec { lo, hi })
    }

    pub fn uniform(n: usize, lo: i64, hi: i64) -> Result<Self> {
        BoxSpec::new(vec![Int::from(lo); n], vec![Int::from(hi); n])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> Int {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| h - l + Int::one())
            .product()
    }
}

const FM_ROW_CAP: usize = 100_000;

type Row = (Vec<Rat>, Rat);

fn normalize(row: Row) -> Row {
    let (a, b) = row;
    let scale = a.iter().find(|v| !v.is_zero()).map(|v| v.abs());
    match scale {
        Some(s) => (a.iter().map(|v| v / &s).collect(), b / &s),
        None => (a, b),
    }
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut sorted: Vec<Row> = rows.into_iter().map(normalize).collect();
    sorted.sort();
    let mut out: Vec<Row> = Vec::with_capacity(sorted.len());
    for r in sorted {
        // sorted by (a, b): the first copy of each a has the smallest b
        if out.last().is_none_or(|last| last.0 != r.0) {
            out.push(r);
        }
    }
    out
}

/// Eliminate variable `k` from `rows` by pairing every upper with every
/// lower bound on it.
fn eliminate(rows: Vec<Row>, k: usize) -> Result<Vec<Row>> {
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.0[k].is_positive() {
            pos.push(r);
        } else if r.0[k].is_negative() {
            neg.push(r);
        } else {
            rest.push(r);
        }
    }
    if pos.len().saturating_mul(neg.len()) + rest.len() > FM_ROW_CAP {
        return Err(Error::budget(
            "Fourier-Motzkin elimination",
            (pos.len() * neg.len()) as u128,
            FM_ROW_CAP as u128,
        ));
    }
    for (pa, pb) in &pos {
        for (na, nb) in &neg {
            let (s, t) = (-&na[k], pa[k].clone());
            let a: Vec<Rat> = pa.iter().zip(na).map(|(x, y)| x * &s + y * &t).collect();
            rest.push((a, pb * &s + nb * &t));
        }
    }
    Ok(dedup(rest))
}

/// Tightest integer box around a bounded system, or `None` when the
/// system has no rational solution. Errors with [`Error::Unbounded`] when
/// some coordinate is unbounded.
pub fn derive_box(c: &CanonicalSystem) -> Result<Option<BoxSpec>> {
    let n = c.dim();
    let base: Vec<Row> = (0..c.num_rows())
        .map(|r| {
            let (a, b) = c.row(r);
            (a.iter().map(|v| Rat::from_integer(v.clone())).collect(), b.clone())
        })
        .collect();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        let mut rows = dedup(base.clone());
        for k in 0..n {
            if k != i {
                rows = eliminate(rows, k)?;
            }
        }
        let (mut l, mut h): (Option<Rat>, Option<Rat>) = (None, None);
        for (a, b) in &rows {
            let coef = &a[i];
            if coef.is_zero() {
                if b.is_negative() {
                    return Ok(None);
                }
            } else if coef.is_positive() {
                let v = b / coef;
                if h.as_ref().is_none_or(|h| &v < h) {
                    h = Some(v);
                }
            } else {
                let v = b / coef;
                if l.as_ref().is_none_or(|l| &v > l) {
                    l = Some(v);
                }
            }
        }
        let (Some(l), Some(h)) = (l, h) else {
            return Err(Error::Unbounded);
        };
        if l > h {
            return Ok(None);
        }
        let (l, h) = (l.ceil().to_integer(), h.floor().to_integer());
        if l > h {
            // rational points exist but this coordinate has no integer value
            return Ok(Some(BoxSpec {
                lo: vec![Int::one(); n],
                hi: vec![Int::zero(); n],
            }));
        }
        lo.push(l);
        hi.push(h);
    }
    Ok(Some(BoxSpec { lo, hi }))
}

fn check_budget(bx: &BoxSpec) -> Result<()> {
    let limit = limits::current().oracle_points;
    let volume = bx.volume().to_u128().unwrap_or(u128::MAX);
    if bx.lo.iter().zip(&bx.hi).any(|(l, h)| l > h) {
        return Ok(());
    }
    if volume > limit {
        return Err(Error::budget("oracle box", volume, limit));
    }
    Ok(())
}

/// Integer rows `A x <= floor(b)` in machine words, when every partial
/// sum over the box provably fits.
struct Fast {
    a: Vec<Vec<i64>>,
    b: Vec<i64>,
}

fn fast_form(c: &CanonicalSystem, bx: &BoxSpec) -> Option<Fast> {
    let reach = bx
        .lo
        .iter()
        .chain(&bx.hi)
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Int::zero);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for r in 0..c.num_rows() {
        let (row, rhs) = c.row(r);
        let mag: Int = row.iter().map(|v| v.abs()).sum::<Int>() * &reach;
        if mag.to_i64().is_none_or(|m| m > i64::MAX / 4) {
            return None;
        }
        a.push(row.iter().map(|v| v.to_i64()).collect::<Option<Vec<_>>>()?);
        b.push(rhs.floor().to_integer().to_i64()?);
    }
    Some(Fast { a, b })
}

/// Visit every integer point of `c` in `bx`, first coordinate fixed per
/// slice, in lexicographic order. Slices run in parallel; results are
/// concatenated in slice order.
fn scan<T, F>(c: &CanonicalSystem, bx: &BoxSpec, per_slice: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut dyn FnMut(&mut dyn FnMut(&[Int]))) -> T + Sync + Send,
{
    if c.dim() != bx.dim() {
        return Err(Error::Dimension("box and system differ in dimension".into()));
    }
    check_budget(bx)?;
    let n = c.dim();
    if bx.lo.iter().zip(&bx.hi).any(|(l, h)| l > h) || n == 0 {
        return Ok(Vec::new());
    }
    let mut first = Vec::new();
    let mut v = bx.lo[0].clone();
    while v <= bx.hi[0] {
        first.push(v.clone());
        v += 1;
    }
    let fast = fast_form(c, bx);
    let out = par::map(&first, |x0| {
        let mut walk = |visit: &mut dyn FnMut(&[Int])| {
            let mut x: Vec<Int> = bx.lo.clone();
            x[0] = x0.clone();
            loop {
                let inside = match &fast {
                    Some(f) => {
                        let xs: Vec<i64> = x.iter().map(|v| v.to_i64().unwrap()).collect();
                        f.a.iter().zip(&f.b).all(|(row, &rhs)| {
                            row.iter().zip(&xs).map(|(p, q)| p * q).sum::<i64>() <= rhs
                        })
                    }
                    None => c.contains(&x),
                };
                if inside {
                    visit(&x);
                }
                // odometer, last coordinate fastest
                let mut i = n;
                loop {
                    if i == 1 {
                        return;
                    }
                    i -= 1;
                    if x[i] < bx.hi[i] {
                        x[i] += 1;
                        break;
                    }
                    x[i] = bx.lo[i].clone();
                }
            }
        };
        per_slice(&mut walk)
    });
    Ok(out)
}

/// Every integer point of `c` inside `bx`, lexicographically sorted.
pub fn enumerate(c: &CanonicalSystem, bx: &BoxSpec) -> Result<Vec<Vec<Int>>> {
    let slices = scan(c, bx, |walk| {
        let mut pts = Vec::new();
        walk(&mut |x| pts.push(x.to_vec()));
        pts
    })?;
    Ok(slices.into_iter().flatten().collect())
}

pub fn oracle_count(c: &CanonicalSystem, bx: &BoxSpec) -> Result<Int> {
    let slices = scan(c, bx, |walk| {
        let mut k = 0u64;
        walk(&mut |_| k += 1);
        k
    })?;
    Ok(slices.into_iter().map(Int::from).sum())
}

/// `(max <obj, x>, number of maximizers, lexicographically first maximizer)`.
fn best(c: &CanonicalSystem, bx: &BoxSpec, obj: &[Int]) -> Result<Option<(Int, Int, Vec<Int>)>> {
    if obj.len() != c.dim() {
        return Err(Error::Dimension("objective length differs from dimension".into()));
    }
    let slices = scan(c, bx, |walk| {
        let mut top: Option<(Int, u64, Vec<Int>)> = None;
        walk(&mut |x| {
            let v: Int = obj.iter().zip(x).map(|(a, b)| a * b).sum();
            match &mut top {
                Some((t, k, _)) if *t == v => *k += 1,
                Some((t, _, _)) if *t > v => {}
                _ => top = Some((v, 1, x.to_vec())),
            }
        });
        top
    })?;
    let mut top: Option<(Int, Int, Vec<Int>)> = None;
    for (v, k, x) in slices.into_iter().flatten() {
        match &mut top {
            Some((t, cnt, _)) if *t == v => *cnt += Int::from(k),
            Some((t, _, _)) if *t > v => {}
            _ => top = Some((v, Int::from(k), x)),
        }
    }
    Ok(top)
}

pub fn oracle_optimize(c: &CanonicalSystem, bx: &BoxSpec, obj: &[Int]) -> Result<SolveReport> {
    Ok(match best(c, bx, obj)? {
        None => SolveReport::infeasible(),
        Some((v, _, x)) => SolveReport {
            optimum: Some(v),
            ..SolveReport::feasible(x)
        },
    })
}

pub fn oracle_optcount(c: &CanonicalSystem, bx: &BoxSpec, obj: &[Int]) -> Result<SolveReport> {
    Ok(match best(c, bx, obj)? {
        None => SolveReport::infeasible(),
        Some((v, k, x)) => SolveReport {
            status: SolveStatus::Feasible,
            witness: Some(x),
            optimum: Some(v),
            optima_count: Some(Count::Finite(k)),
            oracle_calls: 0,
        },
    })
}

/// Count over the derived box; errors for unbounded systems.
pub fn oracle_count_auto(c: &CanonicalSystem) -> Result<Int> {
    match derive_box(c)? {
        None => Ok(Int::zero()),
        Some(bx) => oracle_count(c, &bx),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn square() -> CanonicalSystem {
        CanonicalSystem::from_ints(&[[1, 0], [-1, 0], [0, 1], [0, -1]], &[2, 0, 2, 0]).unwrap()
    }

    fn triangle() -> CanonicalSystem {
        CanonicalSystem::from_ints(&[[-1, 0], [0, -1], [1, 1]], &[0, 0, 3]).unwrap()
    }

    #[test]
    fn counts() {
        let b = BoxSpec::uniform(2, 0, 2).unwrap();
        assert_eq!(enumerate(&square(), &b).unwrap().len(), 9);
        let b3 = BoxSpec::uniform(2, 0, 3).unwrap();
        assert_eq!(oracle_count(&triangle(), &b3).unwrap(), Int::from(10));
        let empty = CanonicalSystem::from_ints(&[[1], [-1]], &[0, -1]).unwrap();
        assert!(enumerate(&empty, &BoxSpec::uniform(1, -3, 3).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn lexicographic_order() {
        let pts = enumerate(&triangle(), &BoxSpec::uniform(2, -1, 4).unwrap()).unwrap();
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
        assert_eq!(pts[0], ints(&[0, 0]));
    }

    #[test]
    fn derived_boxes() {
        assert_eq!(
            derive_box(&triangle()).unwrap(),
            Some(BoxSpec::uniform(2, 0, 3).unwrap())
        );
        let empty = CanonicalSystem::from_ints(&[[1, 1], [-1, 0], [0, -1]], &[-1, 0, 0]).unwrap();
        assert_eq!(derive_box(&empty).unwrap(), None);
        let half = CanonicalSystem::from_ints(&[[-1, 0], [0, 1], [0, -1]], &[0, 1, 0]).unwrap();
        assert_eq!(derive_box(&half), Err(Error::Unbounded));
        assert_eq!(oracle_count_auto(&square()).unwrap(), Int::from(9));
    }

    #[test]
    fn optimization() {
        let b = BoxSpec::uniform(2, 0, 3).unwrap();
        let r = oracle_optcount(&triangle(), &b, &ints(&[1, 1])).unwrap();
        assert_eq!(r.optimum, Some(Int::from(3)));
        assert_eq!(r.optima_count, Some(Count::Finite(Int::from(4))));
        assert_eq!(r.witness, Some(ints(&[0, 3])));
        let seg = CanonicalSystem::from_ints(&[[1], [-1]], &[5, 0]).unwrap();
        let r = oracle_optcount(&seg, &BoxSpec::uniform(1, 0, 5).unwrap(), &ints(&[1])).unwrap();
        assert_eq!(r.optimum, Some(Int::from(5)));
        assert_eq!(r.optima_count, Some(Count::Finite(Int::one())));
        let sq = oracle_optimize(&square(), &BoxSpec::uniform(2, 0, 2).unwrap(), &ints(&[1, -1]))
            .unwrap();
        assert_eq!(sq.optimum, Some(Int::from(2)));
        assert_eq!(sq.witness, Some(ints(&[2, 0])));
    }
}
