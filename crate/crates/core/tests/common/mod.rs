#![allow(dead_code)]

use latcount::oracle::derive_box;
use latcount::polyhedron::is_bounded;
use latcount::{CanonicalSystem, Int, Matrix, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn random_system(rng: &mut ChaCha8Rng, n: usize, m: usize, amax: i64, bmax: i64) -> CanonicalSystem {
    let rows: Vec<Vec<i64>> = (0..m)
        .map(|_| loop {
            let r: Vec<i64> = (0..n).map(|_| rng.gen_range(-amax..=amax)).collect();
            if r.iter().any(|&x| x != 0) {
                break r;
            }
        })
        .collect();
    let b: Vec<Rat> = (0..m)
        .map(|_| Rat::from_integer(rng.gen_range(-bmax..=bmax).into()))
        .collect();
    CanonicalSystem::new(Matrix::from_rows(&rows), b).unwrap()
}

/// Random bounded system with `n <= nmax`, `m <= mmax`.
pub fn random_bounded(rng: &mut ChaCha8Rng, nmax: usize, mmax: usize, amax: i64, bmax: i64) -> CanonicalSystem {
    let n = rng.gen_range(1..=nmax);
    loop {
        let m = rng.gen_range(n + 1..=mmax.max(n + 1));
        let c = random_system(rng, n, m, amax, bmax);
        if is_bounded(&c).unwrap() && desk_scale(&c) {
            return c;
        }
    }
}

/// Random bounded system that has at least one rational point near the
/// origin: rows are shifted so a random small point satisfies them.
pub fn random_bounded_nonempty(rng: &mut ChaCha8Rng, nmax: usize, mmax: usize, amax: i64, bmax: i64) -> CanonicalSystem {
    loop {
        let c = random_bounded(rng, nmax, mmax, amax, bmax);
        let n = c.dim();
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let a = c.matrix();
        let b: Vec<Rat> = (0..c.num_rows())
            .map(|r| {
                let lhs: i64 = a.row(r).iter().zip(&p).map(|(x, y)| i64::try_from(x).unwrap() * y).sum();
                let slack = rng.gen_range(0..=bmax.max(1) / 2);
                Rat::from_integer((lhs + slack).clamp(-bmax, bmax).into())
            })
            .collect();
        let c = CanonicalSystem::new(a.clone(), b).unwrap();
        if is_bounded(&c).unwrap() && desk_scale(&c) {
            return c;
        }
    }
}

/// Brute force stays cheap: the oracle box has at most `MAX_BOX` points.
pub const MAX_BOX: u64 = 200_000;

pub fn desk_scale(c: &CanonicalSystem) -> bool {
    match derive_box(c) {
        Ok(None) => true,
        Ok(Some(b)) => b.volume() <= Int::from(MAX_BOX),
        Err(_) => false,
    }
}

/// One representative edge list per isomorphism class of simple graphs
/// on `nv` vertices.
pub fn graphs_up_to_isomorphism(nv: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..nv)
        .flat_map(|i| (i + 1..nv).map(move |j| (i, j)))
        .collect();
    let mut index = vec![vec![0usize; nv]; nv];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = k;
        index[j][i] = k;
    }
    let perms = permutations(nv);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().fold(0u32, |acc, (k, &(i, j))| {
                    if mask >> k & 1 == 1 {
                        acc | 1 << index[p[i]][p[j]]
                    } else {
                        acc
                    }
                })
            })
            .min()
            .unwrap_or(mask);
        if seen.insert(canon) {
            out.push(
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| canon >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect(),
            );
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
