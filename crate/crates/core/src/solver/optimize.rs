use num_traits::{One, Signed, Zero};

use super::feasible::{first_true, has_point, proximity_delta, recover_witness};
use super::report::{SolveReport, SolveStatus};
use crate::counting::count_canonical;
use crate::error::{Error, Result};
use crate::linalg::{dot_rat, Int, Matrix, Rat};
use crate::polyhedron::{
    box_if_unbounded, enumerate_vertices_unchecked, free_lattice, is_bounded, strip_explicit_equalities,
    vertex_points, AffineMap, CanonicalSystem, Reduction,
};

/// Does `{d : A d <= 0}` contain a direction improving `obj`? Checked on
/// the vertices of its intersection with the unit cube.
fn improving_ray(c: &CanonicalSystem, obj: &[Int]) -> Result<bool> {
    let n = c.dim();
    let mut rows = c.matrix().row_vecs();
    let mut rhs = vec![Rat::zero(); rows.len()];
    for i in 0..n {
        for s in [1i64, -1] {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::from(s);
            rows.push(e);
            rhs.push(Rat::one());
        }
    }
    let cone = CanonicalSystem::new(Matrix::from_int_rows(rows, n)?, rhs)?;
    let vs = enumerate_vertices_unchecked(&cone)?;
    Ok(vs.iter().any(|v| dot_rat(obj, &v.point).is_positive()))
}

/// Integer bracket `[lo, hi]` for `<obj, x>` over a nonempty polytope.
fn objective_bracket(q: &CanonicalSystem, obj: &[Int]) -> Result<(Int, Int)> {
    let vs = vertex_points(q)?;
    let vals: Vec<Rat> = vs.iter().map(|v| dot_rat(obj, v)).collect();
    let lo = vals.iter().min().ok_or_else(|| Error::Internal("no vertices".into()))?;
    let hi = vals.iter().max().unwrap();
    Ok((lo.ceil().to_integer(), hi.floor().to_integer()))
}

struct Optimum {
    value: Int,
    witness: Vec<Int>,
    calls: usize,
}

enum Outcome {
    Infeasible(usize),
    Unbounded(Vec<Int>, usize),
    Optimal(Optimum),
}

fn solve(c: &CanonicalSystem, obj: &[Int]) -> Result<Outcome> {
    if obj.len() != c.dim() {
        return Err(Error::Dimension(format!(
            "objective has {} entries for {} variables",
            obj.len(),
            c.dim()
        )));
    }
    // explicit equalities cost dimensions in every step below; solve in
    // the coordinates they leave and lift back
    match strip_explicit_equalities(c) {
        Ok(Reduction::FullDim { system, map }) if map.source_dim() == c.dim() => {
            solve_full(&system, obj)
        }
        Ok(Reduction::FullDim { system, map }) => {
            let inner = map.t.transpose().mul_vec(obj);
            Ok(lifted(solve_full(&system, &inner)?, obj, &map))
        }
        Ok(Reduction::Point(p)) => Ok(Outcome::Optimal(Optimum {
            value: dot(obj, &p),
            witness: p,
            calls: 0,
        })),
        Ok(Reduction::Empty | Reduction::IntegerInfeasible) => Ok(Outcome::Infeasible(0)),
        // the equalities leave a whole lattice
        Err(Error::Unbounded) => {
            let map = match free_lattice(c)? {
                Some(m) => m,
                None => return Ok(Outcome::Infeasible(0)),
            };
            let y = vec![Int::zero(); map.source_dim()];
            let x = map.lift(&y);
            if map.t.transpose().mul_vec(obj).iter().all(Zero::is_zero) {
                Ok(Outcome::Optimal(Optimum {
                    value: dot(obj, &x),
                    witness: x,
                    calls: 0,
                }))
            } else {
                Ok(Outcome::Unbounded(x, 0))
            }
        }
        Err(e) => Err(e),
    }
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn lifted(out: Outcome, obj: &[Int], map: &AffineMap) -> Outcome {
    match out {
        Outcome::Infeasible(k) => Outcome::Infeasible(k),
        Outcome::Unbounded(y, k) => Outcome::Unbounded(map.lift(&y), k),
        Outcome::Optimal(o) => Outcome::Optimal(Optimum {
            value: o.value + dot(obj, &map.offset),
            witness: map.lift(&o.witness),
            calls: o.calls,
        }),
    }
}

fn solve_full(c: &CanonicalSystem, obj: &[Int]) -> Result<Outcome> {
    let mut calls = 0usize;
    if !has_point(c, &mut calls)? {
        return Ok(Outcome::Infeasible(calls));
    }
    let bounded = is_bounded(c)?;
    if !bounded && improving_ray(c, obj)? {
        let q = box_if_unbounded(c)?;
        let x = recover_witness(&q, proximity_delta(&q).as_ref(), &mut calls)?;
        return Ok(Outcome::Unbounded(x, calls));
    }
    // with a bounded objective some optimum lies in the box, since every
    // vertex of the integer hull does
    let q = box_if_unbounded(c)?;
    let (lo, hi) = objective_bracket(&q, obj)?;
    // largest t with an integer point on {<obj, x> >= t}
    let neg = -&hi;
    let top = -first_true(neg, -&lo, |t| {
        let bound = -t;
        has_point(&q.with_slab(obj, Some(&bound), None)?, &mut calls)
    })?;
    let face = q.with_slab(obj, Some(&top), Some(&top))?;
    let witness = recover_witness(&face, proximity_delta(&face).as_ref(), &mut calls)?;
    Ok(Outcome::Optimal(Optimum {
        value: top,
        witness,
        calls,
    }))
}

/// `max <obj, x>` over the integer points of `c`.
pub fn optimize(c: &CanonicalSystem, obj: &[Int]) -> Result<SolveReport> {
    Ok(match solve(c, obj)? {
        Outcome::Infeasible(calls) => SolveReport {
            oracle_calls: calls,
            ..SolveReport::infeasible()
        },
        Outcome::Unbounded(x, calls) => SolveReport {
            oracle_calls: calls,
            ..SolveReport::unbounded(Some(x))
        },
        Outcome::Optimal(o) => SolveReport {
            status: SolveStatus::Feasible,
            witness: Some(o.witness),
            optimum: Some(o.value),
            optima_count: None,
            oracle_calls: o.calls,
        },
    })
}

/// [`optimize`] plus the number of integer maximizers.
pub fn optimize_and_count(c: &CanonicalSystem, obj: &[Int]) -> Result<SolveReport> {
    let mut r = optimize(c, obj)?;
    if let Some(v) = &r.optimum {
        // count on the original system: the optimal face may be unbounded
        let face = c.with_slab(obj, Some(v), Some(v))?;
        r.optima_count = Some(count_canonical(&face)?.count);
    }
    Ok(r)
}
