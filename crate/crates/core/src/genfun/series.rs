use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Int, Rat};

/// `sum_i eps_i e^{alpha_i tau} / prod_k (1 - e^{beta_k tau})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortRatExpFun {
    /// `(eps_i, alpha_i)` pairs.
    pub terms: Vec<(Int, Rat)>,
    /// `beta_k`, one per denominator factor.
    pub denominators: Vec<Rat>,
}

impl ShortRatExpFun {
    pub fn new(terms: Vec<(Int, Rat)>, denominators: Vec<Rat>) -> Self {
        ShortRatExpFun {
            terms,
            denominators,
        }
    }

    pub fn num_factors(&self) -> usize {
        self.denominators.len()
    }

    /// Nonnegative coefficients and strictly negative denominator
    /// exponents: the shape of a convergent cone series.
    pub fn is_convergent_form(&self) -> bool {
        self.terms.iter().all(|(e, _)| !e.is_negative())
            && self.denominators.iter().all(|b| b.is_negative())
    }

    fn power_sums(&self, upto: usize) -> Vec<Rat> {
        let mut sums = vec![Rat::zero(); upto + 1];
        for (eps, alpha) in &self.terms {
            let mut p = Rat::from_integer(eps.clone());
            for s in sums.iter_mut() {
                *s += &p;
                p *= alpha;
            }
        }
        sums
    }
}

impl fmt::Display for ShortRatExpFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .terms
            .iter()
            .map(|(e, a)| format!("{e}*e^({a}t)"))
            .collect();
        let den: Vec<String> = self
            .denominators
            .iter()
            .map(|b| format!("(1-e^({b}t))"))
            .collect();
        let num = if num.is_empty() { "0".to_string() } else { num.join(" + ") };
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / {}", den.join(""))
        }
    }
}

fn factorials(upto: usize) -> Vec<Int> {
    let mut out = vec![Int::one()];
    for j in 1..=upto {
        let next = &out[j - 1] * Int::from(j);
        out.push(next);
    }
    out
}

fn check_denominators(dens: &[Rat]) -> Result<()> {
    if dens.iter().any(|b| b.is_zero()) {
        return Err(Error::Invalid("zero denominator exponent".into()));
    }
    Ok(())
}

/// Laurent constant term from the numerator power sums
/// `p_j = sum eps_i alpha_i^j`, by truncated series division:
/// `1 - e^{beta tau} = tau * D(tau)` with `D(0) = -beta`, and the answer is
/// the `tau^n` coefficient of `N(tau) / prod D_k(tau)`.
pub(crate) fn constant_term_from_sums(power_sums: &[Rat], dens: &[Rat]) -> Result<Rat> {
    check_denominators(dens)?;
    let n = dens.len();
    let fact = factorials(n + 1);
    let mut acc: Vec<Rat> = (0..=n)
        .map(|j| &power_sums[j] / Rat::from_integer(fact[j].clone()))
        .collect();
    for beta in dens {
        // D_j = -beta^{j+1} / (j+1)!
        let mut d = Vec::with_capacity(n + 1);
        let mut bp = beta.clone();
        for j in 0..=n {
            d.push(-&bp / Rat::from_integer(fact[j + 1].clone()));
            bp *= beta;
        }
        // acc <- acc / D, coefficient by coefficient
        let mut q: Vec<Rat> = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut v = acc[j].clone();
            for i in 1..=j {
                v -= &d[i] * &q[j - i];
            }
            q.push(v / &d[0]);
        }
        acc = q;
    }
    Ok(acc[n].clone())
}

/// Constant term of the Laurent expansion at `tau = 0` (series-division
/// path).
pub fn constant_term(f: &ShortRatExpFun) -> Result<Rat> {
    let n = f.num_factors();
    constant_term_from_sums(&f.power_sums(n), &f.denominators)
}

/// Bernoulli numbers `B_0 .. B_upto` with `B_1 = -1/2`.
pub fn bernoulli_numbers(upto: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = vec![Rat::one()];
    for m in 1..=upto {
        // sum_{k<=m} C(m+1, k) B_k = 0
        let mut binom = Int::one();
        let mut s = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Rat::from_integer(binom.clone()) * bk;
            binom = binom * Int::from(m + 1 - k) / Int::from(k + 1);
        }
        b.push(-s / Rat::from_integer(Int::from(m + 1)));
    }
    b
}

/// `td_0 .. td_upto` of `prod_k beta_k tau / (1 - e^{-beta_k tau})`,
/// multiplying the per-factor Bernoulli series `sum (-1)^j B_j (beta tau)^j / j!`.
pub fn todd_polynomials(betas: &[Rat], upto: usize) -> Vec<Rat> {
    let bern = bernoulli_numbers(upto);
    let fact = factorials(upto);
    let base: Vec<Rat> = (0..=upto)
        .map(|j| {
            let sign = if j % 2 == 1 { -Rat::one() } else { Rat::one() };
            sign * &bern[j] / Rat::from_integer(fact[j].clone())
        })
        .collect();
    let mut acc = vec![Rat::zero(); upto + 1];
    acc[0] = Rat::one();
    for beta in betas {
        let mut factor = Vec::with_capacity(upto + 1);
        let mut bp = Rat::one();
        for b in &base {
            factor.push(b * &bp);
            bp *= beta;
        }
        let mut next = vec![Rat::zero(); upto + 1];
        for i in 0..=upto {
            if acc[i].is_zero() {
                continue;
            }
            for j in 0..=upto - i {
                next[i + j] += &acc[i] * &factor[j];
            }
        }
        acc = next;
    }
    acc
}

/// Constant term via Todd polynomials:
/// `(1 / prod beta) * sum_i eps_i sum_j (-alpha_i)^j / j! * td_{n-j}(beta)`.
pub fn constant_term_todd(f: &ShortRatExpFun) -> Result<Rat> {
    check_denominators(&f.denominators)?;
    let n = f.num_factors();
    let td = todd_polynomials(&f.denominators, n);
    let fact = factorials(n);
    let mut total = Rat::zero();
    for (eps, alpha) in &f.terms {
        let mut p = Rat::one();
        let neg = -alpha;
        let mut s = Rat::zero();
        for j in 0..=n {
            s += &p / Rat::from_integer(fact[j].clone()) * &td[n - j];
            p *= &neg;
        }
        total += Rat::from_integer(eps.clone()) * s;
    }
    let prod: Rat = f.denominators.iter().fold(Rat::one(), |a, b| a * b);
    Ok(total / prod)
}

/// Floating-point value of the closed form at `tau`.
pub fn evaluate_numeric(f: &ShortRatExpFun, tau: &Rat) -> Result<f64> {
    if tau.is_negative() || (tau.is_zero() && !f.denominators.is_empty()) {
        return Err(Error::Invalid("evaluation point must be positive".into()));
    }
    let t = tau.to_f64().ok_or_else(|| Error::Invalid("tau out of range".into()))?;
    let num: f64 = f
        .terms
        .iter()
        .map(|(e, a)| e.to_f64().unwrap_or(f64::INFINITY) * (a.to_f64().unwrap_or(0.0) * t).exp())
        .sum();
    let den: f64 = f
        .denominators
        .iter()
        .map(|b| -(b.to_f64().unwrap_or(0.0) * t).exp_m1())
        .product();
    Ok(num / den)
}
