use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dp::target_numerator;
use super::group::GroupContext;
use super::series::{constant_term_from_sums, ShortRatExpFun};
use crate::error::{Error, Result};
use crate::linalg::{dot, Int, Inverse, Matrix, Rat};

/// Output of the cone DP, kept in integer form.
///
/// Represents `sum_i coeffs[i - lo] e^{(shift - i) tau / delta}` over
/// `prod_k (1 - e^{-den_k tau / delta})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenFun {
    pub coeffs: Vec<u64>,
    pub lo: i64,
    /// `<c, A* b>` with `A* = delta A^-1`.
    pub shift: Int,
    /// `|det A|`.
    pub delta: Int,
    /// `r_k <c, h_k>`.
    pub den: Vec<Int>,
    /// Largest invariant factor of `A`.
    pub sigma: Int,
    /// `max_k |<c, h_k>|`.
    pub chi: Int,
}

impl ConeGenFun {
    pub fn to_short(&self) -> ShortRatExpFun {
        let d = Rat::from_integer(self.delta.clone());
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| {
                let i = Int::from(self.lo + k as i64);
                (Int::from(v), Rat::from_integer(&self.shift - i) / &d)
            })
            .collect();
        let denominators = self
            .den
            .iter()
            .map(|x| Rat::from_integer(-x) / &d)
            .collect();
        ShortRatExpFun::new(terms, denominators)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&v| v != 0).count()
    }

    /// Laurent constant term. Rescaling `tau` by `delta` leaves it
    /// unchanged and makes every exponent an integer.
    pub fn constant_term(&self) -> Result<Rat> {
        let n = self.den.len();
        let mut sums = vec![Int::zero(); n + 1];
        for (k, &v) in self.coeffs.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let alpha = &self.shift - Int::from(self.lo + k as i64);
            let mut p = Int::from(v);
            for s in sums.iter_mut() {
                *s += &p;
                p *= &alpha;
            }
        }
        let sums: Vec<Rat> = sums.into_iter().map(Rat::from_integer).collect();
        let dens: Vec<Rat> = self.den.iter().map(|x| Rat::from_integer(-x)).collect();
        constant_term_from_sums(&sums, &dens)
    }
}

/// `(delta, A*, w)` with `A* = sign(det A) adj(A)` and `w_k = <c, h_k>` for
/// the columns `h_k` of `A*`.
pub fn cone_weights(a: &Matrix, c: &[Int]) -> Result<(Int, Matrix, Vec<Int>)> {
    let (delta, star) = scaled_inverse(a)?;
    check_len(c, a.cols())?;
    let w = weights_of(&star, c);
    Ok((delta, star, w))
}

fn scaled_inverse(a: &Matrix) -> Result<(Int, Matrix)> {
    let inv = Inverse::of(a)?;
    let mut star = inv.adj;
    if inv.det.is_negative() {
        star = &star * &Matrix::diagonal(&vec![-Int::one(); a.cols()]);
    }
    Ok((inv.det.abs(), star))
}

fn check_len(c: &[Int], n: usize) -> Result<()> {
    if c.len() != n {
        return Err(Error::Dimension(format!(
            "direction has {} entries for {} variables",
            c.len(),
            n
        )));
    }
    Ok(())
}

fn weights_of(star: &Matrix, c: &[Int]) -> Vec<Int> {
    (0..star.cols())
        .map(|k| (0..star.rows()).map(|r| &c[r] * star.get(r, k)).sum())
        .collect()
}

/// A cone with its group and scaled inverse computed once, ready to be
/// evaluated for several directions.
#[derive(Debug, Clone)]
pub(crate) struct PreparedCone {
    ctx: GroupContext,
    star: Matrix,
    delta: Int,
    b: Vec<Int>,
}

impl PreparedCone {
    pub(crate) fn new(a: &Matrix, b: &[Int]) -> Result<Self> {
        let (delta, star) = scaled_inverse(a)?;
        let ctx = GroupContext::new(a, b)?;
        Ok(PreparedCone {
            ctx,
            star,
            delta,
            b: b.to_vec(),
        })
    }

    pub(crate) fn delta(&self) -> &Int {
        &self.delta
    }

    pub(crate) fn orders(&self) -> &[u64] {
        &self.ctx.orders
    }

    pub(crate) fn star(&self) -> &Matrix {
        &self.star
    }

    pub(crate) fn weights(&self, c: &[Int]) -> Vec<Int> {
        weights_of(&self.star, c)
    }

    pub(crate) fn evaluate(&self, c: &[Int], strict: bool) -> Result<ConeGenFun> {
        check_len(c, self.star.cols())?;
        let w = self.weights(c);
        for (index, wk) in w.iter().enumerate() {
            if wk.is_zero() || (strict && wk.is_negative()) {
                return Err(Error::Direction {
                    index,
                    value: wk.to_string(),
                });
            }
        }
        let weights: Vec<i64> = w
            .iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow("cone weight")))
            .collect::<Result<_>>()?;
        let (lo, coeffs) = target_numerator(&self.ctx, &weights)?;
        let den = w
            .iter()
            .zip(&self.ctx.orders)
            .map(|(x, &r)| x * Int::from(r))
            .collect();
        let chi = w.iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero);
        Ok(ConeGenFun {
            coeffs,
            lo,
            shift: dot(c, &self.star.mul_vec(&self.b)),
            delta: self.delta.clone(),
            den,
            sigma: self.ctx.sigma.clone(),
            chi,
        })
    }
}

fn run(a: &Matrix, b: &[Int], c: &[Int], strict: bool) -> Result<ConeGenFun> {
    PreparedCone::new(a, b)?.evaluate(c, strict)
}

/// Series of `{z in Z^n : A z <= b}` in direction `c`, requiring
/// `<c, h_k> > 0` for every column of `A*` so the sum converges for
/// `tau > 0`.
pub fn cone_genfun(a: &Matrix, b: &[Int], c: &[Int]) -> Result<ShortRatExpFun> {
    run(a, b, c, true).map(|g| g.to_short())
}

/// Same numerator and denominators, requiring only `<c, h_k> != 0`. For
/// mixed signs the result is the meromorphic continuation of the cone's
/// rational generating function, which is what the vertex decomposition
/// sums.
pub fn cone_genfun_continued(a: &Matrix, b: &[Int], c: &[Int]) -> Result<ConeGenFun> {
    run(a, b, c, false)
}
