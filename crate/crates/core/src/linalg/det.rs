use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{Int, Matrix, Rat};
use crate::error::{Error, Result};

fn require_square(a: &Matrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(a.rows())
}

/// Determinant by Bareiss fraction-free elimination. Every intermediate
/// value is a minor of `a`, so nothing grows beyond the final size class.
pub fn det_exact(a: &Matrix) -> Result<Int> {
    let n = require_square(a)?;
    if n == 0 {
        return Ok(Int::one());
    }
    let mut m: Vec<Vec<Int>> = a.row_vecs();
    let mut negate = false;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Int::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Determinant together with the adjugate, `a * adj = det * I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inverse {
    pub det: Int,
    pub adj: Matrix,
}

impl Inverse {
    /// Fraction-free Gauss-Jordan on `[A | I]`. Ends at `[d I | d A^-1]`
    /// where `d = ±det(A)` depending on the row swaps taken.
    pub fn of(a: &Matrix) -> Result<Inverse> {
        let n = require_square(a)?;
        if n == 0 {
            return Ok(Inverse {
                det: Int::one(),
                adj: Matrix::zeros(0, 0),
            });
        }
        let w = 2 * n;
        let mut m: Vec<Vec<Int>> = (0..n)
            .map(|r| {
                let mut row = a.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Int::one() } else { Int::zero() }));
                row
            })
            .collect();
        let mut negate = false;
        let mut prev = Int::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Err(Error::Singular),
                }
            }
            let pivot_row = m[k].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let factor = row[k].clone();
                for j in 0..w {
                    let v = &pivot_row[k] * &row[j] - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
            }
            prev = pivot_row[k].clone();
        }
        let d = prev;
        let mut adj = Matrix::zeros(n, n);
        for (r, row) in m.iter().enumerate() {
            for c in 0..n {
                let v = row[n + c].clone();
                adj.set(r, c, if negate { -v } else { v });
            }
        }
        Ok(Inverse {
            det: if negate { -d } else { d },
            adj,
        })
    }
}

/// Adjugate `A*` with `A * A* = det(A) * I`. Refuses singular input.
pub fn adjugate(a: &Matrix) -> Result<Matrix> {
    Inverse::of(a).map(|inv| inv.adj)
}

/// Unique solution of the nonsingular square system `a x = b`.
pub fn solve(a: &Matrix, b: &[Rat]) -> Result<Vec<Rat>> {
    let inv = Inverse::of(a)?;
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "rhs of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let d = Rat::from_integer(inv.det.clone());
    Ok(inv
        .adj
        .mul_rat_vec(b)
        .into_iter()
        .map(|v| v / &d)
        .collect())
}

/// Rank of an integer matrix (fraction-free elimination).
pub fn rank(a: &Matrix) -> usize {
    let mut m = a.row_vecs();
    let rows = a.rows();
    let cols = a.cols();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let (a_rc, a_ic) = (m[r][c].clone(), m[i][c].clone());
            let g = a_rc.gcd(&a_ic);
            let (fr, fi) = (&a_ic / &g, &a_rc / &g);
            for j in c..cols {
                let v = &m[i][j] * &fi - &m[r][j] * &fr;
                m[i][j] = v;
            }
            // keep entries small
            let content = m[i][c..]
                .iter()
                .fold(Int::zero(), |acc, v| acc.gcd(v));
            if content > Int::one() {
                for v in m[i][c..].iter_mut() {
                    *v = &*v / &content;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of a rational matrix given as rows.
pub fn rational_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let nrows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..nrows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..cols {
                let v = &m[r][j] * &f;
                m[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}
