use super::group::GroupContext;
use crate::error::{Error, Result};
use crate::limits;
use crate::par;

/// Which recurrence fills a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recurrence {
    /// `H_k(g) = sum_{j < r_k} x_k^j H_{k-1}(g - j g_k)`.
    Naive,
    /// One naive evaluation per coset of `<g_k>`, then
    /// `H_k(g) = x_k H_k(g - g_k) + (1 - x_k^{r_k}) H_{k-1}(g)`.
    SlidingWindow,
}

/// `H_k(g)` for every group element `g`: polynomials in `t` (where
/// `x_i = t^{w_i}`) stored densely over exponents `lo .. lo + width`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTable {
    pub lo: i64,
    pub width: usize,
    data: Vec<u64>,
    live: Vec<bool>,
}

impl LevelTable {
    fn zeros(order: usize, lo: i64, width: usize) -> Self {
        LevelTable {
            lo,
            width,
            data: vec![0; order * width],
            live: vec![false; order],
        }
    }

    /// Coefficients of `H_k(g)`, or `None` when it is the zero polynomial.
    pub fn get(&self, idx: usize) -> Option<&[u64]> {
        if self.live[idx] {
            Some(&self.data[idx * self.width..(idx + 1) * self.width])
        } else {
            None
        }
    }

    pub fn order(&self) -> usize {
        self.live.len()
    }
}

/// Exponent window `[lo_k, hi_k]` of every level `k = 0..=n`.
pub(crate) fn level_bounds(orders: &[u64], weights: &[i64]) -> Result<Vec<(i64, i64)>> {
    let mut out = vec![(0i64, 0i64)];
    let (mut lo, mut hi) = (0i64, 0i64);
    for (&r, &w) in orders.iter().zip(weights) {
        let span = i64::try_from(r - 1)
            .ok()
            .and_then(|r| r.checked_mul(w))
            .ok_or(Error::Overflow("exponent window"))?;
        if span < 0 {
            lo = lo.checked_add(span).ok_or(Error::Overflow("exponent window"))?;
        } else {
            hi = hi.checked_add(span).ok_or(Error::Overflow("exponent window"))?;
        }
        out.push((lo, hi));
    }
    Ok(out)
}

fn check_cells(order: usize, bounds: &[(i64, i64)]) -> Result<()> {
    let widest = bounds.iter().map(|(l, h)| (h - l) as u128 + 1).max().unwrap_or(1);
    let needed = widest.saturating_mul(order as u128);
    let limit = limits::current().dp_cells;
    if needed > limit {
        return Err(Error::budget("cone DP level", needed, limit));
    }
    Ok(())
}

/// `dst += t^shift * src`, exponents relative to each buffer's `lo`.
fn add_shifted(dst: &mut [u64], dst_lo: i64, src: &[u64], src_lo: i64, shift: i64) -> Result<()> {
    let offset = (src_lo + shift - dst_lo) as usize;
    for (i, &v) in src.iter().enumerate() {
        if v != 0 {
            let cell = &mut dst[offset + i];
            *cell = cell.checked_add(v).ok_or(Error::Overflow("DP coefficient"))?;
        }
    }
    Ok(())
}

fn sub_shifted(dst: &mut [u64], dst_lo: i64, src: &[u64], src_lo: i64, shift: i64) -> Result<()> {
    let offset = (src_lo + shift - dst_lo) as usize;
    for (i, &v) in src.iter().enumerate() {
        if v != 0 {
            let cell = &mut dst[offset + i];
            *cell = cell
                .checked_sub(v)
                .ok_or_else(|| Error::Internal("negative DP coefficient".into()))?;
        }
    }
    Ok(())
}

/// Cosets of `<g_k>`, each listed as `q, q + g_k, .., q + (r-1) g_k`.
fn cosets(ctx: &GroupContext, k: usize) -> Vec<Vec<usize>> {
    let next = ctx.translation(k);
    let r = ctx.orders[k] as usize;
    let mut seen = vec![false; ctx.order()];
    let mut out = Vec::with_capacity(ctx.order() / r);
    for start in 0..ctx.order() {
        if seen[start] {
            continue;
        }
        let mut coset = Vec::with_capacity(r);
        let mut e = start;
        for _ in 0..r {
            seen[e] = true;
            coset.push(e);
            e = next[e];
        }
        out.push(coset);
    }
    out
}

/// Naive value of `H_k(e_m)` for element `m` of a coset walk.
fn naive_at(
    prev: &LevelTable,
    coset: &[usize],
    m: usize,
    w: i64,
    lo: i64,
    width: usize,
) -> Result<Option<Vec<u64>>> {
    let r = coset.len();
    let mut out = vec![0u64; width];
    let mut live = false;
    for j in 0..r {
        let e = coset[(m + r - j) % r];
        if let Some(p) = prev.get(e) {
            add_shifted(&mut out, lo, p, prev.lo, j as i64 * w)?;
            live = true;
        }
    }
    Ok(live.then_some(out))
}

fn coset_values(
    prev: &LevelTable,
    coset: &[usize],
    w: i64,
    lo: i64,
    width: usize,
    rec: Recurrence,
) -> Result<Vec<Option<Vec<u64>>>> {
    let r = coset.len();
    if rec == Recurrence::Naive || r == 1 {
        return (0..r).map(|m| naive_at(prev, coset, m, w, lo, width)).collect();
    }
    let mut out = Vec::with_capacity(r);
    out.push(naive_at(prev, coset, 0, w, lo, width)?);
    // the recurrence passes through exponents up to |w| outside the window
    let pad = w.unsigned_abs() as usize;
    let tmp_lo = lo - pad as i64;
    let tmp_width = width + 2 * pad;
    for m in 1..r {
        let mut tmp = vec![0u64; tmp_width];
        let mut live = false;
        if let Some(before) = &out[m - 1] {
            add_shifted(&mut tmp, tmp_lo, before, lo, w)?;
            live = true;
        }
        if let Some(p) = prev.get(coset[m]) {
            add_shifted(&mut tmp, tmp_lo, p, prev.lo, 0)?;
            sub_shifted(&mut tmp, tmp_lo, p, prev.lo, r as i64 * w)?;
            live = true;
        }
        if !live {
            out.push(None);
            continue;
        }
        if tmp[..pad].iter().chain(&tmp[pad + width..]).any(|&v| v != 0) {
            return Err(Error::Internal("DP left its exponent window".into()));
        }
        let inner = tmp[pad..pad + width].to_vec();
        out.push(inner.iter().any(|&v| v != 0).then_some(inner));
    }
    Ok(out)
}

fn step(
    ctx: &GroupContext,
    prev: &LevelTable,
    k: usize,
    w: i64,
    (lo, hi): (i64, i64),
    rec: Recurrence,
) -> Result<LevelTable> {
    let width = (hi - lo) as usize + 1;
    let cosets = cosets(ctx, k);
    let values = par::try_map(&cosets, |coset| coset_values(prev, coset, w, lo, width, rec))?;
    let mut table = LevelTable::zeros(ctx.order(), lo, width);
    for (coset, vals) in cosets.iter().zip(values) {
        for (&e, v) in coset.iter().zip(vals) {
            if let Some(v) = v {
                table.data[e * width..(e + 1) * width].copy_from_slice(&v);
                table.live[e] = true;
            }
        }
    }
    Ok(table)
}

fn level_zero(ctx: &GroupContext) -> LevelTable {
    let mut t = LevelTable::zeros(ctx.order(), 0, 1);
    t.data[0] = 1;
    t.live[0] = true;
    t
}

/// Every level `H_0 .. H_n` (test and diagnostic use: keeps all levels).
pub fn level_tables(ctx: &GroupContext, weights: &[i64], rec: Recurrence) -> Result<Vec<LevelTable>> {
    let bounds = level_bounds(&ctx.orders, weights)?;
    check_cells(ctx.order(), &bounds)?;
    let mut out = vec![level_zero(ctx)];
    for k in 0..weights.len() {
        let t = step(ctx, &out[k], k, weights[k], bounds[k + 1], rec)?;
        out.push(t);
    }
    Ok(out)
}

/// `H_n(g_0)` as `(lo, coefficients)`. Streams two levels at a time and
/// evaluates only the target element on the last level.
pub(crate) fn target_numerator(ctx: &GroupContext, weights: &[i64]) -> Result<(i64, Vec<u64>)> {
    let n = weights.len();
    let bounds = level_bounds(&ctx.orders, weights)?;
    check_cells(ctx.order(), &bounds[..n])?;
    let (lo, hi) = bounds[n];
    let width = (hi - lo) as usize + 1;
    if n == 0 {
        return Ok((0, vec![1]));
    }
    let mut level = level_zero(ctx);
    for k in 0..n - 1 {
        level = step(ctx, &level, k, weights[k], bounds[k + 1], Recurrence::SlidingWindow)?;
    }
    let k = n - 1;
    let next = ctx.translation(k);
    let r = ctx.orders[k] as usize;
    // target - j g_k is the (r - j)-th step of the forward walk
    let mut forward = Vec::with_capacity(r);
    let mut e = ctx.target_index();
    for _ in 0..r {
        forward.push(e);
        e = next[e];
    }
    let walk: Vec<usize> = (0..r).map(|j| forward[(r - j) % r]).collect();
    let mut out = vec![0u64; width];
    for (j, &e) in walk.iter().enumerate() {
        if let Some(p) = level.get(e) {
            add_shifted(&mut out, lo, p, level.lo, j as i64 * weights[k])?;
        }
    }
    Ok((lo, out))
}
