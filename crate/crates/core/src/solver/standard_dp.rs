use num_traits::{Signed, ToPrimitive, Zero};

use super::report::{SolveReport, SolveStatus};
use crate::error::{Error, Result};
use crate::limits;
use crate::linalg::Int;
use crate::polyhedron::StandardSystem;

fn to_u64(v: &Int, what: &'static str) -> Result<u64> {
    v.to_u64().ok_or(Error::Overflow(what))
}

/// `max <w, x>` over `{A x = b, 0 <= x <= u, x integral}` for nonnegative
/// `A` and `b`, by a table over the right-hand sides `0 <= y <= b`.
/// Columns are added one at a time; a column with cap `u_j` is tried
/// `0..=u_j` times (unbounded while it still fits under `y`).
pub fn standard_dp_optimize(s: &StandardSystem, w: &[Int]) -> Result<SolveReport> {
    let a = s.matrix();
    let (k, n) = (a.rows(), a.cols());
    if w.len() != n {
        return Err(Error::Dimension(format!(
            "objective has {} entries for {} variables",
            w.len(),
            n
        )));
    }
    if a.entries().iter().any(|v| v.is_negative()) {
        return Err(Error::Invalid("the table DP needs a nonnegative matrix".into()));
    }
    if s.rhs().iter().any(|v| v.is_negative()) {
        return Err(Error::Invalid("the table DP needs a nonnegative right-hand side".into()));
    }
    if s.rhs().iter().any(|v| !v.is_integer()) {
        return Ok(SolveReport::infeasible());
    }
    let b: Vec<u64> = s
        .rhs()
        .iter()
        .map(|v| to_u64(&v.to_integer(), "right-hand side"))
        .collect::<Result<_>>()?;
    let cells = b
        .iter()
        .try_fold(1u128, |acc, &v| acc.checked_mul(v as u128 + 1))
        .unwrap_or(u128::MAX);
    let needed = cells.saturating_mul(n as u128 + 1);
    let limit = limits::current().dp_cells;
    if needed > limit {
        return Err(Error::budget("right-hand-side table", needed, limit));
    }
    let cells = cells as usize;
    let mut stride = vec![1usize; k];
    for i in 1..k {
        stride[i] = stride[i - 1] * (b[i - 1] as usize + 1);
    }
    let coords: Vec<Vec<u64>> = (0..cells)
        .map(|mut idx| {
            (0..k)
                .map(|i| {
                    let m = b[i] as usize + 1;
                    let c = (idx % m) as u64;
                    idx /= m;
                    c
                })
                .collect()
        })
        .collect();
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|j| (0..k).map(|i| to_u64(a.get(i, j), "matrix entry")).collect())
        .collect::<Result<_>>()?;
    let weights: Vec<i128> = w
        .iter()
        .map(|v| v.to_i128().ok_or(Error::Overflow("objective")))
        .collect::<Result<_>>()?;
    let caps: Option<Vec<u64>> = s
        .multiplicities()
        .map(|u| u.iter().map(|v| to_u64(v, "multiplicity")).collect::<Result<_>>())
        .transpose()?;

    let mut value: Vec<Option<i128>> = vec![None; cells];
    value[0] = Some(0);
    let mut choice: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut unbounded = false;
    for j in 0..n {
        let col = &cols[j];
        let cap = caps.as_ref().map(|u| u[j]);
        let wj = weights[j];
        let shift: usize = col.iter().zip(&stride).map(|(&c, &s)| c as usize * s).sum();
        let mut picked = vec![0u64; cells];
        if shift == 0 {
            // column touches no equation: take it as often as it pays
            let t = match (wj > 0, cap) {
                (false, _) => 0,
                (true, Some(u)) => u,
                (true, None) => {
                    unbounded = true;
                    0
                }
            };
            let gain = (t as i128).checked_mul(wj).ok_or(Error::Overflow("objective"))?;
            for (v, p) in value.iter_mut().zip(picked.iter_mut()) {
                if let Some(x) = v {
                    *x = x.checked_add(gain).ok_or(Error::Overflow("objective"))?;
                    *p = t;
                }
            }
            choice.push(picked);
            continue;
        }
        let mut next: Vec<Option<i128>> = vec![None; cells];
        for y in 0..cells {
            let fits = col
                .iter()
                .zip(&coords[y])
                .filter(|(&c, _)| c > 0)
                .map(|(&c, &yy)| yy / c)
                .min()
                .unwrap_or(0);
            let top = cap.map_or(fits, |u| u.min(fits));
            let mut best: Option<(i128, u64)> = None;
            for t in 0..=top {
                if let Some(prev) = value[y - t as usize * shift] {
                    let v = prev + t as i128 * wj;
                    if best.is_none_or(|(b, _)| v > b) {
                        best = Some((v, t));
                    }
                }
            }
            if let Some((v, t)) = best {
                next[y] = Some(v);
                picked[y] = t;
            }
        }
        value = next;
        choice.push(picked);
    }
    let target = cells - 1;
    let Some(opt) = value[target] else {
        return Ok(SolveReport::infeasible());
    };
    let mut x = vec![Int::zero(); n];
    let mut y = target;
    for j in (0..n).rev() {
        let t = choice[j][y];
        let shift: usize = cols[j].iter().zip(&stride).map(|(&c, &s)| c as usize * s).sum();
        y -= t as usize * shift;
        x[j] = Int::from(t);
    }
    debug_assert_eq!(y, 0);
    if unbounded {
        return Ok(SolveReport::unbounded(Some(x)));
    }
    Ok(SolveReport {
        status: SolveStatus::Feasible,
        witness: Some(x),
        optimum: Some(Int::from(opt)),
        optima_count: None,
        oracle_calls: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Matrix};

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn one_row(row: [i64; 2], rhs: i64, u: Option<[i64; 2]>) -> StandardSystem {
        StandardSystem::new(
            Matrix::from_rows(&[row]),
            vec![rat(rhs, 1)],
            u.map(|u| ints(&u)),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let r = standard_dp_optimize(&one_row([1, 1], 3, None), &ints(&[1, 0])).unwrap();
        assert_eq!(r.optimum, Some(Int::from(3)));
        let r = standard_dp_optimize(&one_row([1, 1], 3, Some([2, 2])), &ints(&[1, 0])).unwrap();
        assert_eq!(r.optimum, Some(Int::from(2)));
        assert_eq!(r.witness, Some(ints(&[2, 1])));
        let r = standard_dp_optimize(&one_row([2, 3], 7, None), &ints(&[0, 1])).unwrap();
        assert_eq!(r.optimum, Some(Int::from(1)));
        assert_eq!(r.witness, Some(ints(&[2, 1])));
    }

    #[test]
    fn infeasible_and_rejected() {
        let r = standard_dp_optimize(&one_row([2, 4], 3, None), &ints(&[1, 1])).unwrap();
        assert_eq!(r.status, SolveStatus::Infeasible);
        let neg = one_row([1, -1], 3, None);
        assert!(standard_dp_optimize(&neg, &ints(&[1, 1])).is_err());
    }

    #[test]
    fn free_column() {
        let s = StandardSystem::new(Matrix::from_rows(&[[1, 0]]), vec![rat(2, 1)], None).unwrap();
        let r = standard_dp_optimize(&s, &ints(&[1, 1])).unwrap();
        assert_eq!(r.status, SolveStatus::Unbounded);
        let s = StandardSystem::new(
            Matrix::from_rows(&[[1, 0]]),
            vec![rat(2, 1)],
            Some(ints(&[5, 4])),
        )
        .unwrap();
        let r = standard_dp_optimize(&s, &ints(&[1, 1])).unwrap();
        assert_eq!(r.optimum, Some(Int::from(6)));
        assert_eq!(r.witness, Some(ints(&[2, 4])));
    }
}
