use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Int, Matrix};

/// Smith normal form `s = p * a * q` with unimodular `p`, `q`.
///
/// `s` is diagonal with nonnegative entries and
/// `s[0][0] | s[1][1] | ...`; singular input leaves trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub s: Matrix,
    pub p: Matrix,
    pub q: Matrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Largest invariant factor (`sigma`); zero for an empty matrix.
    pub fn largest_factor(&self) -> Int {
        self.diagonal().last().cloned().unwrap_or_else(Int::zero)
    }

    pub fn has_divisibility_chain(&self) -> bool {
        let d = self.diagonal();
        d.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        }) && d.iter().all(|v| !v.is_negative())
    }
}

fn min_nonzero(s: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| &a < b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn snf(a: &Matrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut p = Matrix::identity(m);
    let mut q = Matrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let Some((i, j)) = min_nonzero(&s, t) else {
                return SnfDecomposition { s, p, q };
            };
            s.swap_rows(t, i);
            p.swap_rows(t, i);
            s.swap_cols(t, j);
            q.swap_cols(t, j);
            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let k = s.get(i, t).div_floor(&pivot);
                if !k.is_zero() {
                    let neg = -k;
                    s.add_row_multiple(i, t, &neg);
                    p.add_row_multiple(i, t, &neg);
                }
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let k = s.get(t, j).div_floor(&pivot);
                if !k.is_zero() {
                    let neg = -k;
                    s.add_col_multiple(j, t, &neg);
                    q.add_col_multiple(j, t, &neg);
                }
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = Int::from(1);
                    s.add_row_multiple(t, i, &one);
                    p.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            p.negate_row(t);
        }
    }
    SnfDecomposition { s, p, q }
}
