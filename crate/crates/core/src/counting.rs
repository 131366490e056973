//! Integer-point counting for arbitrary rational polyhedra.
//!
//! Pipeline: detect unboundedness (box and decide between 0 and
//! infinitely many), strip implicit equalities, perturb to a simple
//! polytope, enumerate vertices, pick a direction `c` that is generic for
//! every tangent cone, run the cone DP per vertex and add up the Laurent
//! constant terms.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::genfun::PreparedCone;
use crate::linalg::{Int, Rat};
use crate::par;
use crate::polyhedron::{
    box_if_unbounded, is_bounded, perturb_to_simple, reduce_to_full_dim, standard_to_canonical,
    strip_explicit_equalities,
    tangent_cone, CanonicalSystem, Reduction, StandardSystem, Vertex,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Count {
    Finite(Int),
    Infinite,
}

impl Count {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            Count::Finite(v) => Some(v),
            Count::Infinite => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Count::Finite(v) => v.is_positive(),
            Count::Infinite => true,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(v) => write!(f, "{v}"),
            Count::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Per-vertex parameters of the cone DP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDiagnostics {
    pub point: Vec<Rat>,
    pub delta: Int,
    pub sigma: Int,
    pub chi: Int,
    pub numerator_terms: usize,
    pub contribution: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub count: Count,
    /// Vertices of the (reduced, perturbed) polytope the DP ran on.
    pub vertex_count: usize,
    /// Dimension after removing implicit equalities.
    pub dimension: usize,
    pub delta_used: Int,
    pub sigma_max: Int,
    pub chi_max: Int,
    pub direction: Vec<Int>,
    pub per_vertex: Vec<VertexDiagnostics>,
}

impl CountReport {
    fn trivial(count: Int, dimension: usize) -> Self {
        CountReport {
            count: Count::Finite(count),
            vertex_count: 0,
            dimension,
            delta_used: Int::zero(),
            sigma_max: Int::zero(),
            chi_max: Int::zero(),
            direction: Vec::new(),
            per_vertex: Vec::new(),
        }
    }
}

/// DP work estimate for direction `c`: per cone, group order times the
/// numerator window.
fn direction_cost(cones: &[PreparedCone], c: &[Int]) -> Option<Int> {
    let mut total = Int::zero();
    for cone in cones {
        let w = cone.weights(c);
        if w.iter().any(|x| x.is_zero()) {
            return None;
        }
        let width: Int = w
            .iter()
            .zip(cone.orders())
            .map(|(x, &r)| x.abs() * Int::from(r.max(2) - 1))
            .sum();
        total += cone.delta() * (width + Int::one());
    }
    Some(total)
}

fn small_vectors(n: usize, radius: i64, cap: usize) -> Vec<Vec<Int>> {
    let side = (2 * radius + 1) as usize;
    let total = side.checked_pow(n as u32).unwrap_or(usize::MAX);
    let mut all: Vec<Vec<i64>> = Vec::new();
    if total <= 200_000 {
        for mut code in 0..total {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push((code % side) as i64 - radius);
                code /= side;
            }
            if v.iter().any(|&x| x != 0) {
                all.push(v);
            }
        }
    }
    all.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), v.clone()));
    all.truncate(cap);
    all.into_iter()
        .map(|v| v.into_iter().map(Int::from).collect())
        .collect()
}

const SMALL_CANDIDATES: usize = 160;
const BASIS_CANDIDATES: usize = 16;

fn choose_for_cones(cones: &[PreparedCone], bases: &[Vec<Int>], n: usize) -> Vec<Int> {
    let mut candidates: Vec<Vec<Int>> = bases.iter().take(BASIS_CANDIDATES).cloned().collect();
    candidates.extend(small_vectors(n, 2, SMALL_CANDIDATES));
    let scored = par::map(&candidates, |c| direction_cost(cones, c));
    let best = scored
        .into_iter()
        .zip(candidates)
        .filter_map(|(s, c)| s.map(|s| (s, c)))
        .min_by(|a, b| a.0.cmp(&b.0));
    if let Some((_, c)) = best {
        return c;
    }
    // moment curve (1, M, .., M^{n-1}): each <c, h> is a nonzero
    // polynomial in M with coefficients below M, so it cannot vanish
    let big = cones
        .iter()
        .map(|k| k.star().max_abs())
        .max()
        .unwrap_or_else(Int::one);
    let m = Int::from(2) * big + Int::one();
    let mut c = Vec::with_capacity(n);
    let mut p = Int::one();
    for _ in 0..n {
        c.push(p.clone());
        p *= &m;
    }
    c
}

fn prepare_cones(c: &CanonicalSystem, vertices: &[Vertex]) -> Result<Vec<PreparedCone>> {
    par::try_map(vertices, |v| {
        let cone = tangent_cone(c, v)?;
        PreparedCone::new(&cone.a, &cone.b)
    })
}

fn basis_sums(c: &CanonicalSystem, vertices: &[Vertex]) -> Vec<Vec<Int>> {
    vertices
        .iter()
        .map(|v| {
            (0..c.dim())
                .map(|j| v.basis.iter().map(|&r| c.matrix().get(r, j).clone()).sum())
                .collect()
        })
        .collect()
}

/// A direction with `<c, h> != 0` for every edge direction `h` of every
/// vertex cone, preferring the one with the cheapest DP. Candidates are
/// sums of basis rows, then short integer vectors; a moment-curve vector
/// is the guaranteed fallback. The input must be simple at `vertices`.
pub fn choose_direction(c: &CanonicalSystem, vertices: &[Vertex]) -> Result<Vec<Int>> {
    let cones = prepare_cones(c, vertices)?;
    Ok(choose_for_cones(&cones, &basis_sums(c, vertices), c.dim()))
}

/// Count of a full-dimensional bounded system.
fn count_full_dim(c: &CanonicalSystem) -> Result<CountReport> {
    let (simple, vertices) = perturb_to_simple(c)?;
    if vertices.is_empty() {
        return Ok(CountReport::trivial(Int::zero(), c.dim()));
    }
    let cones = prepare_cones(&simple, &vertices)?;
    let dir = choose_for_cones(&cones, &basis_sums(&simple, &vertices), simple.dim());
    let indices: Vec<usize> = (0..cones.len()).collect();
    let per_vertex = par::try_map(&indices, |&i| {
        let g = cones[i].evaluate(&dir, false)?;
        let contribution = g.constant_term()?;
        Ok::<_, Error>(VertexDiagnostics {
            point: vertices[i].point.clone(),
            delta: g.delta.clone(),
            sigma: g.sigma.clone(),
            chi: g.chi.clone(),
            numerator_terms: g.num_terms(),
            contribution,
        })
    })?;
    let total: Rat = per_vertex.iter().map(|d| d.contribution.clone()).sum();
    if !total.is_integer() || total.is_negative() {
        return Err(Error::Internal(format!("cone contributions sum to {total}")));
    }
    let max_of = |f: fn(&VertexDiagnostics) -> &Int| {
        per_vertex.iter().map(f).max().cloned().unwrap_or_else(Int::zero)
    };
    Ok(CountReport {
        count: Count::Finite(total.to_integer()),
        vertex_count: vertices.len(),
        dimension: c.dim(),
        delta_used: max_of(|d| &d.delta),
        sigma_max: max_of(|d| &d.sigma),
        chi_max: max_of(|d| &d.chi),
        direction: dir,
        per_vertex,
    })
}

fn count_bounded(c: &CanonicalSystem) -> Result<CountReport> {
    match reduce_to_full_dim(c)? {
        Reduction::Empty | Reduction::IntegerInfeasible => Ok(CountReport::trivial(Int::zero(), 0)),
        Reduction::Point(_) => Ok(CountReport::trivial(Int::one(), 0)),
        Reduction::FullDim { system, .. } => count_full_dim(&system),
    }
}

/// `|P ∩ Z^n|` for `P = {x : A x <= b}`; [`Count::Infinite`] when `P` is
/// unbounded and holds at least one integer point.
pub fn count_canonical(c: &CanonicalSystem) -> Result<CountReport> {
    let c = match strip_explicit_equalities(c) {
        Ok(Reduction::FullDim { system, .. }) => system,
        Ok(Reduction::Point(_)) => return Ok(CountReport::trivial(Int::one(), 0)),
        Ok(Reduction::Empty | Reduction::IntegerInfeasible) => {
            return Ok(CountReport::trivial(Int::zero(), 0))
        }
        Err(Error::Unbounded) => {
            let mut r = CountReport::trivial(Int::zero(), c.dim());
            r.count = Count::Infinite;
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let c = &c;
    if is_bounded(c)? {
        return count_bounded(c);
    }
    // an unbounded rational polyhedron with one integer point contains a
    // rational ray from it, hence infinitely many integer points
    let boxed = box_if_unbounded(c)?;
    let mut report = count_bounded(&boxed)?;
    if report.count.is_positive() {
        report.count = Count::Infinite;
    }
    Ok(report)
}

pub fn count_standard(s: &StandardSystem) -> Result<CountReport> {
    count_canonical(&standard_to_canonical(s))
}

/// Convenience: the finite count as `u128`, or `None` when infinite or
/// too large.
pub fn count_u128(c: &CanonicalSystem) -> Result<Option<u128>> {
    Ok(count_canonical(c)?.count.finite().and_then(|v| v.to_u128()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Matrix};

    fn count(c: &CanonicalSystem) -> Count {
        count_canonical(c).unwrap().count
    }

    fn fin(v: i64) -> Count {
        Count::Finite(Int::from(v))
    }

    #[test]
    fn square_and_triangle() {
        let sq = CanonicalSystem::from_ints(&[[1, 0], [-1, 0], [0, 1], [0, -1]], &[2, 0, 2, 0])
            .unwrap();
        assert_eq!(count(&sq), fin(9));
        let tri = CanonicalSystem::from_ints(&[[-1, 0], [0, -1], [1, 1]], &[0, 0, 3]).unwrap();
        assert_eq!(count(&tri), fin(10));
    }

    #[test]
    fn standard_examples() {
        let one_row = |row: [i64; 2], rhs: i64, u: Option<[i64; 2]>| {
            StandardSystem::new(
                Matrix::from_rows(&[row]),
                vec![rat(rhs, 1)],
                u.map(|u| u.iter().map(|&x| Int::from(x)).collect()),
            )
            .unwrap()
        };
        assert_eq!(count_standard(&one_row([2, 3], 7, None)).unwrap().count, fin(1));
        assert_eq!(count_standard(&one_row([1, 1], 3, None)).unwrap().count, fin(4));
        assert_eq!(count_standard(&one_row([1, 1], 3, Some([2, 2]))).unwrap().count, fin(2));
        let parity = StandardSystem::new(Matrix::from_rows(&[[2]]), vec![rat(3, 1)], None).unwrap();
        assert_eq!(count_standard(&parity).unwrap().count, fin(0));
    }

    #[test]
    fn unbounded_cases() {
        let half = CanonicalSystem::from_ints(&[[-1]], &[0]).unwrap();
        assert_eq!(count(&half), Count::Infinite);
        // 0 < 2x < 1 has no integer point even though x is unbounded in y
        let strip = CanonicalSystem::new(
            Matrix::from_rows(&[[2, 0], [-2, 0]]),
            vec![rat(1, 1), rat(-1, 2)],
        )
        .unwrap();
        assert_eq!(count(&strip), fin(0));
    }

    #[test]
    fn simplex_dilations() {
        for n in 1..=3usize {
            for t in 0..=4i64 {
                let mut rows: Vec<Vec<i64>> = (0..n)
                    .map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect())
                    .collect();
                rows.push(vec![1; n]);
                let mut rhs = vec![0; n];
                rhs.push(t);
                let c = CanonicalSystem::from_ints(&rows, &rhs).unwrap();
                let expect = crate::limits::binomial(t as usize + n, n) as i64;
                assert_eq!(count(&c), fin(expect), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn direction_is_generic_for_every_cone() {
        let c = CanonicalSystem::from_ints(
            &[[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [1, -1]],
            &[3, 0, 3, 0, 5, 2],
        )
        .unwrap();
        let (simple, vertices) = perturb_to_simple(&c).unwrap();
        let dir = choose_direction(&simple, &vertices).unwrap();
        for v in &vertices {
            let cone = tangent_cone(&simple, v).unwrap();
            let (_, _, w) = crate::genfun::cone_weights(&cone.a, &dir).unwrap();
            assert!(w.iter().all(|x| !x.is_zero()));
        }
    }

    #[test]
    fn moment_curve_fallback() {
        // edge directions (1,0), (0,1), (1,1), (1,-1) and their negatives kill
        // many short candidates; the chosen vector must still be generic
        let cones: Vec<PreparedCone> = [[[1, 0], [0, 1]], [[1, 1], [1, -1]]]
            .iter()
            .map(|rows| PreparedCone::new(&Matrix::from_rows(rows), &[Int::zero(), Int::zero()]).unwrap())
            .collect();
        let c = choose_for_cones(&cones, &[], 2);
        assert!(direction_cost(&cones, &c).is_some());
    }
}
