use num_traits::{One, Signed, Zero};

use super::system::CanonicalSystem;
use crate::error::{Error, Result};
use crate::limits::{self, binomial};
use crate::linalg::{det_exact, hnf, max_abs_subdeterminant, rank, subsets, Int, Matrix, Rat};
use crate::par;

/// A nonzero integer vector in the kernel of `a`, if any.
pub fn kernel_vector(a: &Matrix) -> Option<Vec<Int>> {
    let r = rank(a);
    if r == a.cols() {
        return None;
    }
    // A Q = H has its nonzero columns first, so the trailing columns of Q
    // lie in the kernel
    let d = hnf(a);
    Some(d.q.column(a.cols() - 1))
}

/// Generalized cross product of `n - 1` rows in `R^n`: the vector whose
/// `j`-th entry is the signed minor with column `j` removed.
fn cross(rows: &Matrix) -> Vec<Int> {
    let n = rows.cols();
    let all: Vec<usize> = (0..rows.rows()).collect();
    (0..n)
        .map(|j| {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let d = det_exact(&rows.select(&all, &cols)).expect("square by construction");
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// A nonzero `d` with `A d <= 0`, when one exists.
///
/// With `rank(A) = n` the cone `{d : A d <= 0}` is pointed, so it is
/// nontrivial iff it has an extreme ray, and every extreme ray spans the
/// kernel of `n - 1` independent rows.
pub fn recession_ray(c: &CanonicalSystem) -> Result<Option<Vec<Int>>> {
    let a = c.matrix();
    let (m, n) = (a.rows(), a.cols());
    if let Some(k) = kernel_vector(a) {
        return Ok(Some(k));
    }
    let needed = binomial(m, n - 1);
    let limit = limits::current().basis_subsets;
    if needed > limit {
        return Err(Error::budget("recession cone scan", needed, limit));
    }
    let sets = subsets(m, n - 1);
    let rays = par::map(&sets, |s| {
        let d = cross(&a.select_rows(s));
        if d.iter().all(|v| v.is_zero()) {
            return None;
        }
        let ad = a.mul_vec(&d);
        if ad.iter().all(|v| !v.is_positive()) {
            return Some(d);
        }
        if ad.iter().all(|v| !v.is_negative()) {
            return Some(d.into_iter().map(|v| -v).collect());
        }
        None
    });
    Ok(rays.into_iter().flatten().next())
}

pub fn is_bounded(c: &CanonicalSystem) -> Result<bool> {
    Ok(recession_ray(c)?.is_none())
}

fn ceil_sqrt(v: &Int) -> Int {
    let r = v.sqrt();
    if &(&r * &r) < v {
        r + Int::one()
    } else {
        r
    }
}

/// Largest absolute subdeterminant of `(A | floor(b))`, or a Hadamard
/// bound on it when exact enumeration is over budget.
pub(crate) fn extended_delta(c: &CanonicalSystem) -> Int {
    let a = c.matrix();
    let n = a.cols();
    let rows: Vec<Vec<Int>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(c.rhs()[r].floor().to_integer());
            row
        })
        .collect();
    let ext = Matrix::from_int_rows(rows, n + 1).expect("uniform width");
    match max_abs_subdeterminant(&ext) {
        Ok(d) => d.max(Int::one()),
        Err(_) => {
            let k = (n + 1).min(ext.rows());
            let m = ext.max_abs().max(Int::one());
            ceil_sqrt(&num_traits::pow(Int::from(k), k)) * num_traits::pow(m, k)
        }
    }
}

/// Radius used to box an unbounded system: `(n + 1) * Delta_ext`.
pub(crate) fn box_radius(c: &CanonicalSystem) -> Int {
    Int::from(c.dim() + 1) * extended_delta(c)
}

/// Add `|x_i| <= (n + 1) * Delta_ext` when the system is unbounded. Any
/// system with an integer point keeps one inside the box.
pub fn box_if_unbounded(c: &CanonicalSystem) -> Result<CanonicalSystem> {
    if is_bounded(c)? {
        return Ok(c.clone());
    }
    Ok(with_box(c, &box_radius(c)))
}

pub(crate) fn with_box(c: &CanonicalSystem, radius: &Int) -> CanonicalSystem {
    let n = c.dim();
    let mut rows = Vec::with_capacity(2 * n);
    let mut rhs = Vec::with_capacity(2 * n);
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::from(sign);
            rows.push(e);
            rhs.push(Rat::from_integer(radius.clone()));
        }
    }
    let extra = Matrix::from_int_rows(rows, n).expect("uniform width");
    c.with_rows(&extra, &rhs).expect("same width")
}
