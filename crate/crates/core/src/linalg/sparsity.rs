use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::det::{det_exact, rank};
use super::matrix::{Int, Matrix};
use crate::error::{Error, Result};
use crate::limits::{self, binomial};
use crate::par;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn minor_pairs(m: usize, n: usize, orders: impl Iterator<Item = usize>) -> u128 {
    orders.fold(0u128, |acc, k| {
        acc.saturating_add(binomial(m, k).saturating_mul(binomial(n, k)))
    })
}

fn check_minor_budget(needed: u128) -> Result<()> {
    let limit = limits::current().minor_pairs;
    if needed > limit {
        return Err(Error::budget("minor enumeration", needed, limit));
    }
    Ok(())
}

/// Determinants of every `k x k` submatrix, visited in lexicographic
/// (row subset, column subset) order.
fn for_each_minor<T, F>(a: &Matrix, k: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[usize], &[usize], &Matrix, &Int) -> Option<T> + Sync + Send,
{
    let row_sets = subsets(a.rows(), k);
    let col_sets = subsets(a.cols(), k);
    par::map(&row_sets, |rs| {
        col_sets
            .iter()
            .filter_map(|cs| {
                let b = a.select(rs, cs);
                let d = det_exact(&b).expect("square by construction");
                f(rs, cs, &b, &d)
            })
            .collect::<Vec<T>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// `Delta_k(A)`: the largest absolute `k x k` minor (zero when `k`
/// exceeds either dimension, one for `k = 0`).
pub fn delta_k(a: &Matrix, k: usize) -> Result<Int> {
    if k == 0 {
        return Ok(Int::one());
    }
    if k > a.rows().min(a.cols()) {
        return Ok(Int::zero());
    }
    check_minor_budget(minor_pairs(a.rows(), a.cols(), std::iter::once(k)))?;
    Ok(for_each_minor(a, k, |_, _, _, d| Some(d.abs()))
        .into_iter()
        .max()
        .unwrap_or_else(Int::zero))
}

/// Largest absolute subdeterminant of any order.
pub fn max_abs_subdeterminant(a: &Matrix) -> Result<Int> {
    let top = a.rows().min(a.cols());
    check_minor_budget(minor_pairs(a.rows(), a.cols(), 1..=top))?;
    let mut best = Int::zero();
    for k in 1..=top {
        best = best.max(delta_k(a, k)?);
    }
    Ok(best)
}

/// `(t, Delta_t)` maximizing `Delta_t^(1/t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetLowerBound {
    pub order: usize,
    pub delta: Int,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsityStats {
    pub rank: usize,
    /// Orders `1..=max_order` covered by the minor-based fields.
    pub max_order: usize,
    pub row_sparse: usize,
    pub col_sparse: usize,
    pub weak_row_sparse: usize,
    pub weak_col_sparse: usize,
    /// Largest absolute row sum.
    pub norm1: Int,
    /// Largest absolute column sum.
    pub norm_inf: Int,
    pub max_norm: Int,
    pub gamma1: Int,
    pub gamma_inf: Int,
    /// `min(gamma1, gamma_inf)`.
    pub totn: Int,
    /// `delta_k[k]` for `k = 0..=max_order`; `delta_k[0] = 1`.
    pub delta_k: Vec<Int>,
    /// gcd of all minors of order `delta_gcd_order = min(rank, max_order)`.
    pub delta_gcd: Int,
    pub delta_gcd_order: usize,
    pub detlb: DetLowerBound,
}

impl SparsityStats {
    pub fn sparse(&self) -> usize {
        self.row_sparse.min(self.col_sparse)
    }

    pub fn weak_sparse(&self) -> usize {
        self.weak_row_sparse.min(self.weak_col_sparse)
    }

    pub fn delta(&self, k: usize) -> Option<&Int> {
        self.delta_k.get(k)
    }
}

struct MinorSummary {
    order: usize,
    abs_det: Int,
    row_sparse: usize,
    col_sparse: usize,
    norm1: Int,
    norm_inf: Int,
}

fn summarize(b: &Matrix, d: &Int) -> MinorSummary {
    let k = b.rows();
    let row_nz = (0..k)
        .map(|r| b.row(r).iter().filter(|v| !v.is_zero()).count())
        .max()
        .unwrap_or(0);
    let col_nz = (0..k)
        .map(|c| (0..k).filter(|&r| !b.get(r, c).is_zero()).count())
        .max()
        .unwrap_or(0);
    MinorSummary {
        order: k,
        abs_det: d.abs(),
        row_sparse: row_nz,
        col_sparse: col_nz,
        norm1: row_abs_sum_max(b),
        norm_inf: col_abs_sum_max(b),
    }
}

fn row_abs_sum_max(a: &Matrix) -> Int {
    (0..a.rows())
        .map(|r| a.row(r).iter().map(|v| v.abs()).sum::<Int>())
        .max()
        .unwrap_or_else(Int::zero)
}

fn col_abs_sum_max(a: &Matrix) -> Int {
    (0..a.cols())
        .map(|c| (0..a.rows()).map(|r| a.get(r, c).abs()).sum::<Int>())
        .max()
        .unwrap_or_else(Int::zero)
}

/// Exhaustive sparsity, norm and subdeterminant diagnostics.
///
/// The weak sparsities and `gamma` norms range over nondegenerate square
/// submatrices of order at most `max_order`; with
/// `max_order = min(rows, cols)` they are the exact definitions.
pub fn sparsity_stats(a: &Matrix, max_order: usize) -> Result<SparsityStats> {
    let top = a.rows().min(a.cols());
    if max_order > top {
        return Err(Error::Invalid(format!(
            "minor order {} exceeds min(rows, cols) = {}",
            max_order, top
        )));
    }
    check_minor_budget(minor_pairs(a.rows(), a.cols(), 1..=max_order))?;
    let rank = rank(a);
    let row_sparse = (0..a.rows())
        .map(|r| a.row(r).iter().filter(|v| !v.is_zero()).count())
        .max()
        .unwrap_or(0);
    let col_sparse = (0..a.cols())
        .map(|c| (0..a.rows()).filter(|&r| !a.get(r, c).is_zero()).count())
        .max()
        .unwrap_or(0);

    let mut delta = vec![Int::one()];
    let mut gcds = vec![Int::zero()];
    let (mut wrow, mut wcol) = (0usize, 0usize);
    let (mut g1, mut ginf) = (Int::zero(), Int::zero());
    for k in 1..=max_order {
        let minors = for_each_minor(a, k, |_, _, b, d| Some(summarize(b, d)));
        let mut dk = Int::zero();
        let mut gk = Int::zero();
        for s in &minors {
            gk = gk.gcd(&s.abs_det);
            if s.abs_det.is_zero() {
                continue;
            }
            debug_assert_eq!(s.order, k);
            dk = dk.max(s.abs_det.clone());
            wrow = wrow.max(s.row_sparse);
            wcol = wcol.max(s.col_sparse);
            g1 = g1.max(s.norm1.clone());
            ginf = ginf.max(s.norm_inf.clone());
        }
        delta.push(dk);
        gcds.push(gk);
    }

    let delta_gcd_order = rank.min(max_order);
    let mut detlb = DetLowerBound {
        order: 0,
        delta: Int::one(),
    };
    for (t, d) in delta.iter().enumerate().skip(1) {
        if d.is_zero() {
            continue;
        }
        // d^(1/t) > best^(1/s)  <=>  d^s > best^t
        let better = detlb.order == 0
            || num_traits::pow(d.clone(), detlb.order)
                > num_traits::pow(detlb.delta.clone(), t);
        if better {
            detlb = DetLowerBound {
                order: t,
                delta: d.clone(),
            };
        }
    }

    Ok(SparsityStats {
        rank,
        max_order,
        row_sparse,
        col_sparse,
        weak_row_sparse: wrow,
        weak_col_sparse: wcol,
        norm1: row_abs_sum_max(a),
        norm_inf: col_abs_sum_max(a),
        max_norm: a.max_abs(),
        totn: g1.clone().min(ginf.clone()),
        gamma1: g1,
        gamma_inf: ginf,
        delta_gcd: gcds[delta_gcd_order].clone(),
        delta_gcd_order,
        delta_k: delta,
        detlb,
    })
}
