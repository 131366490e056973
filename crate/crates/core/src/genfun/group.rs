use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits;
use crate::linalg::{snf, Int, Matrix, SnfDecomposition};

/// `G = Z^n / A Z^n` in Smith coordinates: `v` maps to `P v` reduced
/// componentwise modulo the nontrivial invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupContext {
    pub snf: SnfDecomposition,
    /// `|det A| = |G|`.
    pub delta: Int,
    /// Largest invariant factor.
    pub sigma: Int,
    /// Invariant factors greater than one.
    pub moduli: Vec<u64>,
    /// Residues of the unit vectors `e_1 .. e_n`.
    pub generators: Vec<Vec<u64>>,
    /// Order of each generator.
    pub orders: Vec<u64>,
    /// Residue of `b`.
    pub target: Vec<u64>,
}

fn residue(p: &Matrix, rows: &[usize], moduli: &[u64], v: &[Int]) -> Vec<u64> {
    let pv = p.mul_vec(v);
    rows.iter()
        .zip(moduli)
        .map(|(&r, &d)| {
            pv[r]
                .mod_floor(&Int::from(d))
                .to_u64()
                .expect("reduced below a u64 modulus")
        })
        .collect()
}

impl GroupContext {
    pub fn new(a: &Matrix, b: &[Int]) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.cols();
        if b.len() != n {
            return Err(Error::Dimension(format!("{} rows but {} entries in b", n, b.len())));
        }
        let d = snf(a);
        let diag = d.diagonal();
        if diag.iter().any(|v| v.is_zero()) {
            return Err(Error::Singular);
        }
        let delta: Int = diag.iter().product();
        let limit = limits::current().dp_cells;
        let order = delta.to_u128().unwrap_or(u128::MAX);
        if order > limit {
            return Err(Error::budget("group order", order, limit));
        }
        let sigma = diag.last().cloned().unwrap_or_else(Int::one);
        let rows: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
        let moduli: Vec<u64> = rows
            .iter()
            .map(|&i| diag[i].abs().to_u64().expect("bounded by the budget"))
            .collect();
        let generators: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let mut e = vec![Int::zero(); n];
                e[j] = Int::one();
                residue(&d.p, &rows, &moduli, &e)
            })
            .collect();
        let orders = generators
            .iter()
            .map(|g| {
                g.iter()
                    .zip(&moduli)
                    .fold(1u64, |acc, (&x, &m)| acc.lcm(&(m / x.gcd(&m))))
            })
            .collect();
        let target = residue(&d.p, &rows, &moduli, b);
        Ok(GroupContext {
            snf: d,
            delta,
            sigma,
            moduli,
            generators,
            orders,
            target,
        })
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    /// Mixed-radix index of a residue vector.
    pub fn index(&self, g: &[u64]) -> usize {
        let mut idx = 0usize;
        for (x, m) in g.iter().zip(&self.moduli).rev() {
            idx = idx * (*m as usize) + *x as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let x = idx % m as usize;
                idx /= m as usize;
                x as u64
            })
            .collect()
    }

    pub fn add(&self, g: &[u64], h: &[u64]) -> Vec<u64> {
        g.iter()
            .zip(h)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    /// `idx -> index(element(idx) + generator k)` for every element.
    pub(crate) fn translation(&self, k: usize) -> Vec<usize> {
        let g = &self.generators[k];
        (0..self.order())
            .map(|i| self.index(&self.add(&self.element(i), g)))
            .collect()
    }

    pub fn target_index(&self) -> usize {
        self.index(&self.target)
    }
}
