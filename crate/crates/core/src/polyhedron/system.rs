use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rational_rank, Int, Matrix, Rat};

/// `{x in R^n : A x <= b}` with integer `A` and rational `b`.
///
/// Rows are stored primitive: a row with content `g > 1` is divided by
/// `g` together with its right-hand side, which leaves the integer points
/// unchanged.
#[derive(Clone, PartialEq, Eq)]
pub struct CanonicalSystem {
    a: Matrix,
    b: Vec<Rat>,
}

fn row_content(row: &[Int]) -> Int {
    row.iter().fold(Int::zero(), |g, v| g.gcd(v))
}

impl CanonicalSystem {
    pub fn new(a: Matrix, b: Vec<Rat>) -> Result<Self> {
        if a.cols() == 0 {
            return Err(Error::Invalid("system needs at least one variable".into()));
        }
        if a.rows() == 0 {
            return Err(Error::Invalid("system needs at least one row".into()));
        }
        if a.rows() != b.len() {
            return Err(Error::Dimension(format!(
                "{} rows but {} right-hand sides",
                a.rows(),
                b.len()
            )));
        }
        let mut a = a;
        let mut b = b;
        for (r, rhs) in b.iter_mut().enumerate() {
            let g = row_content(a.row(r));
            if g > Int::one() {
                for c in 0..a.cols() {
                    let v = a.get(r, c) / &g;
                    a.set(r, c, v);
                }
                *rhs = &*rhs / Rat::from_integer(g);
            }
        }
        Ok(CanonicalSystem { a, b })
    }

    /// Small-integer convenience constructor.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R], rhs: &[i64]) -> Result<Self> {
        CanonicalSystem::new(
            Matrix::from_rows(rows),
            rhs.iter().map(|&v| Rat::from_integer(v.into())).collect(),
        )
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn rhs(&self) -> &[Rat] {
        &self.b
    }

    pub fn row(&self, i: usize) -> (&[Int], &Rat) {
        (self.a.row(i), &self.b[i])
    }

    /// Does the integer point satisfy every row?
    pub fn contains(&self, x: &[Int]) -> bool {
        assert_eq!(x.len(), self.dim());
        (0..self.num_rows()).all(|r| {
            let lhs: Int = self.a.row(r).iter().zip(x).map(|(a, v)| a * v).sum();
            Rat::from_integer(lhs) <= self.b[r]
        })
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        let lhs = self.a.mul_rat_vec(x);
        lhs.iter().zip(&self.b).all(|(l, r)| l <= r)
    }

    /// Rows `i` with `A_i x = b_i`.
    pub fn tight_rows(&self, x: &[Rat]) -> Vec<usize> {
        let lhs = self.a.mul_rat_vec(x);
        lhs.iter()
            .zip(&self.b)
            .enumerate()
            .filter(|(_, (l, r))| l == r)
            .map(|(i, _)| i)
            .collect()
    }

    /// Append rows `extra_a x <= extra_b`.
    pub fn with_rows(&self, extra_a: &Matrix, extra_b: &[Rat]) -> Result<Self> {
        let a = self.a.vstack(extra_a)?;
        let mut b = self.b.clone();
        b.extend_from_slice(extra_b);
        CanonicalSystem::new(a, b)
    }

    /// Append `lo <= <c, x> <= hi` (either side optional).
    pub fn with_slab(&self, c: &[Int], lo: Option<&Int>, hi: Option<&Int>) -> Result<Self> {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        if let Some(hi) = hi {
            rows.push(c.to_vec());
            rhs.push(Rat::from_integer(hi.clone()));
        }
        if let Some(lo) = lo {
            rows.push(c.iter().map(|v| -v).collect());
            rhs.push(Rat::from_integer(-lo));
        }
        if rows.is_empty() {
            return Ok(self.clone());
        }
        let extra = Matrix::from_int_rows(rows, self.dim())?;
        self.with_rows(&extra, &rhs)
    }

    /// Fix coordinate `i` to `value`.
    pub fn with_fixed(&self, i: usize, value: &Int) -> Result<Self> {
        let mut e = vec![Int::zero(); self.dim()];
        e[i] = Int::one();
        self.with_slab(&e, Some(value), Some(value))
    }

    /// Same integer points, right-hand side rounded down.
    pub fn floored(&self) -> Self {
        CanonicalSystem {
            a: self.a.clone(),
            b: self.b.iter().map(|v| Rat::from_integer(v.floor().to_integer())).collect(),
        }
    }

    pub fn floored_rhs(&self) -> Vec<Int> {
        self.b.iter().map(|v| v.floor().to_integer()).collect()
    }

    /// Drop zero rows and duplicate rows (keeping the tightest right-hand
    /// side). Returns `None` when a zero row reads `0 <= b` with `b < 0`.
    /// Row order of survivors is preserved.
    pub(crate) fn deduplicated(&self) -> Option<(Matrix, Vec<Rat>)> {
        let mut kept: Vec<(Vec<Int>, Rat)> = Vec::new();
        for r in 0..self.num_rows() {
            let row = self.a.row(r);
            let rhs = &self.b[r];
            if row.iter().all(|v| v.is_zero()) {
                if rhs.is_negative() {
                    return None;
                }
                continue;
            }
            if let Some(slot) = kept.iter_mut().find(|(k, _)| k.as_slice() == row) {
                if rhs < &slot.1 {
                    slot.1 = rhs.clone();
                }
            } else {
                kept.push((row.to_vec(), rhs.clone()));
            }
        }
        let n = self.dim();
        let (rows, rhs): (Vec<_>, Vec<_>) = kept.into_iter().unzip();
        Some((
            Matrix::from_int_rows(rows, n).expect("rows share the system width"),
            rhs,
        ))
    }
}

impl fmt::Debug for CanonicalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CanonicalSystem {}x{} {{", self.num_rows(), self.dim())?;
        for r in 0..self.num_rows() {
            let row: Vec<String> = self.a.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}] <= {}", row.join(" "), self.b[r])?;
        }
        write!(f, "}}")
    }
}

/// `{x : A x = b, 0 <= x, x <= u}` where the upper bounds `u` are optional
/// ("multiplicities"). Linearly dependent consistent rows are removed on
/// construction so `A` has full row rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardSystem {
    a: Matrix,
    b: Vec<Rat>,
    u: Option<Vec<Int>>,
}

impl StandardSystem {
    /// Errors when dimensions disagree, a multiplicity is negative, or the
    /// equations are inconsistent over the rationals.
    pub fn new(a: Matrix, b: Vec<Rat>, u: Option<Vec<Int>>) -> Result<Self> {
        let n = a.cols();
        if n == 0 {
            return Err(Error::Invalid("system needs at least one variable".into()));
        }
        if a.rows() != b.len() {
            return Err(Error::Dimension(format!(
                "{} equations but {} right-hand sides",
                a.rows(),
                b.len()
            )));
        }
        if let Some(u) = &u {
            if u.len() != n {
                return Err(Error::Dimension(format!(
                    "{} multiplicities for {} variables",
                    u.len(),
                    n
                )));
            }
            if u.iter().any(|v| v.is_negative()) {
                return Err(Error::Invalid("multiplicities must be nonnegative".into()));
            }
        }
        // keep a row only if it raises the rank of [A | b]; a row that
        // raises the augmented rank but not the rank of A is inconsistent
        let mut keep = Vec::new();
        let mut coef_rows: Vec<Vec<Rat>> = Vec::new();
        let mut aug_rows: Vec<Vec<Rat>> = Vec::new();
        for r in 0..a.rows() {
            let coef: Vec<Rat> = a.row(r).iter().map(|v| Rat::from_integer(v.clone())).collect();
            let mut aug = coef.clone();
            aug.push(b[r].clone());
            coef_rows.push(coef);
            aug_rows.push(aug);
            let rc = rational_rank(&coef_rows);
            let ra = rational_rank(&aug_rows);
            if rc < ra {
                return Err(Error::Invalid(format!("equation {} is inconsistent", r + 1)));
            }
            if rc == coef_rows.len() {
                keep.push(r);
            } else {
                coef_rows.pop();
                aug_rows.pop();
            }
        }
        let a = a.select_rows(&keep);
        let b = keep.iter().map(|&r| b[r].clone()).collect();
        Ok(StandardSystem { a, b, u })
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    /// Number of independent equations (the co-dimension).
    pub fn codim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn rhs(&self) -> &[Rat] {
        &self.b
    }

    pub fn multiplicities(&self) -> Option<&[Int]> {
        self.u.as_deref()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        if x.len() != self.dim() || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        if let Some(u) = &self.u {
            if x.iter().zip(u).any(|(v, cap)| v > cap) {
                return false;
            }
        }
        self.a
            .mul_vec(x)
            .into_iter()
            .zip(&self.b)
            .all(|(l, r)| &Rat::from_integer(l) == r)
    }
}

/// Stack `A x <= b`, `-A x <= -b`, `-x <= 0` and, with multiplicities,
/// `x <= u`.
pub fn standard_to_canonical(s: &StandardSystem) -> CanonicalSystem {
    let n = s.dim();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for r in 0..s.codim() {
        rows.push(s.a.row(r).to_vec());
        rhs.push(s.b[r].clone());
        rows.push(s.a.row(r).iter().map(|v| -v).collect());
        rhs.push(-s.b[r].clone());
    }
    for i in 0..n {
        let mut e = vec![Int::zero(); n];
        e[i] = -Int::one();
        rows.push(e);
        rhs.push(Rat::zero());
    }
    if let Some(u) = &s.u {
        for (i, cap) in u.iter().enumerate() {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::one();
            rows.push(e);
            rhs.push(Rat::from_integer(cap.clone()));
        }
    }
    let a = Matrix::from_int_rows(rows, n).expect("rows share the system width");
    CanonicalSystem::new(a, rhs).expect("at least the sign rows are present")
}
