use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Int, Matrix};

/// Hermite normal form under unimodular column operations: `a * q = h`.
///
/// Convention: `h` is lower-triangular staircase, pivots are positive and
/// every entry left of a pivot lies in `[0, pivot)`. For a primitive row
/// vector the form is `(1, 0, .., 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfDecomposition {
    pub h: Matrix,
    pub q: Matrix,
}

pub(crate) fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Replace columns (p, c) of `m` by (x*p + y*c, u*p + v*c).
fn combine_cols(m: &mut Matrix, p: usize, c: usize, coef: [&Int; 4]) {
    let [x, y, u, v] = coef;
    for r in 0..m.rows() {
        let (mp, mc) = (m.get(r, p).clone(), m.get(r, c).clone());
        m.set(r, p, x * &mp + y * &mc);
        m.set(r, c, u * &mp + v * &mc);
    }
}

pub fn hnf(a: &Matrix) -> HnfDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut q = Matrix::identity(cols);
    let mut pc = 0;
    for r in 0..rows {
        if pc == cols {
            break;
        }
        for c in pc + 1..cols {
            if h.get(r, c).is_zero() {
                continue;
            }
            let (ap, bc) = (h.get(r, pc).clone(), h.get(r, c).clone());
            let (g, x, y) = ext_gcd(&ap, &bc);
            let u = -(&bc / &g);
            let v = &ap / &g;
            combine_cols(&mut h, pc, c, [&x, &y, &u, &v]);
            combine_cols(&mut q, pc, c, [&x, &y, &u, &v]);
        }
        if h.get(r, pc).is_zero() {
            continue;
        }
        if h.get(r, pc).is_negative() {
            h.negate_col(pc);
            q.negate_col(pc);
        }
        let pivot = h.get(r, pc).clone();
        for j in 0..pc {
            let k = h.get(r, j).div_floor(&pivot);
            if !k.is_zero() {
                let neg = -k;
                h.add_col_multiple(j, pc, &neg);
                q.add_col_multiple(j, pc, &neg);
            }
        }
        pc += 1;
    }
    HnfDecomposition { h, q }
}

impl HnfDecomposition {
    /// Checks the shape conventions (not the product identity).
    pub fn is_normal_form(&self) -> bool {
        let h = &self.h;
        let mut pc = 0;
        for r in 0..h.rows() {
            if (pc..h.cols()).skip(1).any(|c| !h.get(r, c).is_zero()) {
                return false;
            }
            if pc < h.cols() && !h.get(r, pc).is_zero() {
                let p = h.get(r, pc);
                if !p.is_positive() {
                    return false;
                }
                if (0..pc).any(|j| h.get(r, j).is_negative() || h.get(r, j) >= p) {
                    return false;
                }
                pc += 1;
            } else if pc < h.cols() && (pc..h.cols()).any(|c| !h.get(r, c).is_zero()) {
                return false;
            }
        }
        true
    }
}
