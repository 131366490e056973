//! Work budgets for the exhaustive parts of the toolkit.
//!
//! Every enumeration that can explode (basis scans, minor enumeration,
//! brute-force boxes, DP tables) checks its size against a process-wide
//! [`Limits`] value before starting, and refuses with
//! [`Error::Budget`](crate::Error::Budget) instead of running away.

use std::sync::RwLock;

/// Name of the environment variable that overrides every budget at once.
pub const BUDGET_ENV: &str = "LATCOUNT_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Number of row subsets scanned during vertex / ray enumeration.
    pub basis_subsets: u128,
    /// Number of (row subset, column subset) pairs visited when
    /// enumerating minors.
    pub minor_pairs: u128,
    /// Number of lattice points visited by the brute-force oracle.
    pub oracle_points: u128,
    /// Number of coefficients held by one level of the cone DP, or cells
    /// of the standard-form DP table.
    pub dp_cells: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            basis_subsets: 2_000_000,
            minor_pairs: 2_000_000,
            oracle_points: 10_000_000,
            dp_cells: 200_000_000,
        }
    }
}

impl Limits {
    /// All budgets set to the same value.
    pub fn uniform(value: u128) -> Self {
        Limits {
            basis_subsets: value,
            minor_pairs: value,
            oracle_points: value,
            dp_cells: value,
        }
    }

    /// Defaults, overridden by `LATCOUNT_BUDGET` when it holds a number.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => match v.trim().parse::<u128>() {
                Ok(n) => Limits::uniform(n),
                Err(_) => Limits::default(),
            },
            Err(_) => Limits::default(),
        }
    }
}

static LIMITS: RwLock<Option<Limits>> = RwLock::new(None);

/// The limits currently in force.
pub fn current() -> Limits {
    LIMITS
        .read()
        .ok()
        .and_then(|g| *g)
        .unwrap_or_default()
}

/// Replace the process-wide limits.
pub fn set(limits: Limits) {
    if let Ok(mut g) = LIMITS.write() {
        *g = Some(limits);
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
