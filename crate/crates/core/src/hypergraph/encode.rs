use num_traits::{Signed, Zero};

use super::graph::{Bounds, Hypergraph, HypergraphInstance};
use crate::error::{Error, Result};
use crate::linalg::{Int, Matrix, Rat};
use crate::polyhedron::{standard_to_canonical, CanonicalSystem, StandardSystem};
use crate::solver::{feasible, optimize_and_count, SolveReport, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Vertex-based problems: `c_E <= A(H)^T x <= p_E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexMode {
    /// Upper bounds only, maximize.
    StableMultiset,
    /// Lower bounds only, minimize.
    VertexMulticover,
    /// Both sides allowed, maximize.
    General,
}

/// Edge-based problems: `c_v <= A(H) x <= p_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeMode {
    /// Upper bounds only, maximize.
    MultiMatching,
    /// Lower bounds only, minimize.
    SetMulticover,
    /// Both sides allowed, maximize.
    General,
}

/// Which neighborhood a vertex dominates in [`dominating_multiset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Neighborhood {
    /// `N(v)`: the neighbors only.
    Open,
    /// `N[v]`: the neighbors and `v` itself.
    Closed,
}

/// A canonical-form program with the problem's own objective and sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded {
    pub system: CanonicalSystem,
    pub objective: Vec<Int>,
    pub sense: Sense,
}

impl Encoded {
    /// The objective as a maximization.
    pub fn max_objective(&self) -> Vec<Int> {
        signed(&self.objective, self.sense)
    }
}

/// A standard-form program `(A I) (x, s) = p` or `(-A I) (x, s) = -c`;
/// the first `vars` variables are the problem's own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedStandard {
    pub system: StandardSystem,
    pub objective: Vec<Int>,
    pub sense: Sense,
    pub vars: usize,
}

impl EncodedStandard {
    pub fn max_objective(&self) -> Vec<Int> {
        signed(&self.objective, self.sense)
    }
}

fn signed(obj: &[Int], sense: Sense) -> Vec<Int> {
    match sense {
        Sense::Maximize => obj.to_vec(),
        Sense::Minimize => obj.iter().map(|v| -v).collect(),
    }
}

enum Shape {
    UpperOnly,
    LowerOnly,
    Both,
}

fn check_shape(bounds: &[Bounds], shape: Shape) -> Result<()> {
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        let lower_used = lo.as_ref().is_some_and(|v| v.is_positive());
        match shape {
            Shape::UpperOnly if lower_used => {
                return Err(Error::Invalid(format!(
                    "constraint {} has a lower bound in a packing problem",
                    i + 1
                )))
            }
            Shape::LowerOnly if hi.is_some() => {
                return Err(Error::Invalid(format!(
                    "constraint {} has an upper bound in a covering problem",
                    i + 1
                )))
            }
            _ => {}
        }
        if let (Some(l), Some(h)) = (lo, hi) {
            if l > h {
                return Err(Error::Invalid(format!("constraint {} has lower > upper", i + 1)));
            }
        }
    }
    Ok(())
}

/// `x >= 0`, `x <= u`, and `lo_S <= sum_{i in S} x_i <= hi_S` for each
/// support set `S`.
fn build(nvars: usize, supports: &[Vec<usize>], bounds: &[Bounds], u: Option<&[Int]>) -> Result<CanonicalSystem> {
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for i in 0..nvars {
        let mut e = vec![Int::zero(); nvars];
        e[i] = Int::from(-1);
        rows.push(e);
        rhs.push(Rat::zero());
    }
    if let Some(u) = u {
        for (i, cap) in u.iter().enumerate() {
            let mut e = vec![Int::zero(); nvars];
            e[i] = Int::from(1);
            rows.push(e);
            rhs.push(Rat::from_integer(cap.clone()));
        }
    }
    for (support, (lo, hi)) in supports.iter().zip(bounds) {
        if let Some(h) = hi {
            let mut r = vec![Int::zero(); nvars];
            for &i in support {
                r[i] += 1;
            }
            rows.push(r);
            rhs.push(Rat::from_integer(h.clone()));
        }
        if let Some(l) = lo.as_ref().filter(|l| l.is_positive()) {
            let mut r = vec![Int::zero(); nvars];
            for &i in support {
                r[i] -= 1;
            }
            rows.push(r);
            rhs.push(Rat::from_integer(-l));
        }
    }
    if nvars == 0 {
        return Err(Error::Invalid("problem has no variables".into()));
    }
    CanonicalSystem::new(Matrix::from_int_rows(rows, nvars)?, rhs)
}

fn or_free(bounds: &Option<Vec<Bounds>>, n: usize) -> Vec<Bounds> {
    bounds.clone().unwrap_or_else(|| vec![(None, None); n])
}

/// Variables on vertices, one constraint per hyperedge.
pub fn encode_vertex_based(h: &HypergraphInstance, mode: VertexMode) -> Result<Encoded> {
    let g = &h.graph;
    let bounds = or_free(&h.edge_bounds, g.num_edges());
    let (shape, sense) = match mode {
        VertexMode::StableMultiset => (Shape::UpperOnly, Sense::Maximize),
        VertexMode::VertexMulticover => (Shape::LowerOnly, Sense::Minimize),
        VertexMode::General => (Shape::Both, Sense::Maximize),
    };
    check_shape(&bounds, shape)?;
    let n = g.num_vertices();
    let system = build(n, g.edges(), &bounds, h.mult_checked(n)?)?;
    Ok(Encoded {
        system,
        objective: h.weights_or_ones(n)?,
        sense,
    })
}

fn edges_at(g: &Hypergraph) -> Vec<Vec<usize>> {
    (0..g.num_vertices())
        .map(|v| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.contains(&v))
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

/// Variables on hyperedges, one constraint per vertex.
pub fn encode_edge_based(h: &HypergraphInstance, mode: EdgeMode) -> Result<Encoded> {
    let g = &h.graph;
    let bounds = or_free(&h.vertex_bounds, g.num_vertices());
    let (shape, sense) = match mode {
        EdgeMode::MultiMatching => (Shape::UpperOnly, Sense::Maximize),
        EdgeMode::SetMulticover => (Shape::LowerOnly, Sense::Minimize),
        EdgeMode::General => (Shape::Both, Sense::Maximize),
    };
    check_shape(&bounds, shape)?;
    let n = g.num_edges();
    let system = build(n, &edges_at(g), &bounds, h.mult_checked(n)?)?;
    Ok(Encoded {
        system,
        objective: h.weights_or_ones(n)?,
        sense,
    })
}

/// Slack form of the edge-based problems: `(A I) (x, s) = p` for
/// packing, `(-A I) (x, s) = -c` for covering. Every vertex needs a
/// finite bound on the relevant side.
pub fn encode_edge_based_standard(h: &HypergraphInstance, mode: EdgeMode) -> Result<EncodedStandard> {
    let g = &h.graph;
    let (nv, ne) = (g.num_vertices(), g.num_edges());
    let bounds = or_free(&h.vertex_bounds, nv);
    let (packing, sense) = match mode {
        EdgeMode::MultiMatching => (true, Sense::Maximize),
        EdgeMode::SetMulticover => (false, Sense::Minimize),
        EdgeMode::General => {
            return Err(Error::Invalid(
                "two-sided vertex bounds have no single-slack standard form".into(),
            ))
        }
    };
    check_shape(&bounds, if packing { Shape::UpperOnly } else { Shape::LowerOnly })?;
    let side: Vec<Int> = bounds
        .iter()
        .enumerate()
        .map(|(v, (lo, hi))| {
            let b = if packing { hi.clone() } else { Some(lo.clone().unwrap_or_else(Int::zero)) };
            b.ok_or_else(|| Error::Invalid(format!("vertex {} has no finite bound", v + 1)))
        })
        .collect::<Result<_>>()?;
    let inc = g.incidence();
    let sign = if packing { Int::from(1) } else { Int::from(-1) };
    let mut rows = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut r: Vec<Int> = inc.row(v).iter().map(|x| x * &sign).collect();
        r.extend((0..nv).map(|k| Int::from(i64::from(k == v))));
        rows.push(r);
    }
    let a = Matrix::from_int_rows(rows, ne + nv)?;
    let b: Vec<Rat> = side.iter().map(|x| Rat::from_integer(x * &sign)).collect();
    let u = match h.mult_checked(ne)? {
        None => None,
        Some(u) => {
            // slack caps implied by x <= u
            let au = inc.mul_vec(u);
            let slack: Vec<Int> = if packing {
                side.clone()
            } else {
                au.iter().zip(&side).map(|(x, c)| (x - c).max(Int::zero())).collect()
            };
            Some(u.iter().cloned().chain(slack).collect())
        }
    };
    let mut objective = h.weights_or_ones(ne)?;
    objective.extend(std::iter::repeat_n(Int::zero(), nv));
    Ok(EncodedStandard {
        system: StandardSystem::new(a, b, u)?,
        objective,
        sense,
        vars: ne,
    })
}

fn restore(mut r: SolveReport, sense: Sense, vars: usize) -> SolveReport {
    if sense == Sense::Minimize {
        r.optimum = r.optimum.map(|v| -v);
    }
    if let Some(w) = &mut r.witness {
        w.truncate(vars);
    }
    r
}

/// Optimum (in the problem's own sense), a witness and the number of
/// optimal solutions.
pub fn solve_encoded(e: &Encoded) -> Result<SolveReport> {
    let obj = e.max_objective();
    if let Some(r) = free_growth(&e.system, &obj)? {
        return Ok(restore(r, e.sense, e.system.dim()));
    }
    let r = optimize_and_count(&e.system, &obj)?;
    Ok(restore(r, e.sense, e.system.dim()))
}

/// A variable with positive objective that no row bounds from above
/// makes a feasible problem unbounded.
fn free_growth(c: &CanonicalSystem, obj: &[Int]) -> Result<Option<SolveReport>> {
    let a = c.matrix();
    let grows = (0..c.dim()).any(|i| obj[i].is_positive() && (0..a.rows()).all(|r| !a.get(r, i).is_positive()));
    if !grows {
        return Ok(None);
    }
    let f = feasible(c)?;
    Ok(Some(match f.status {
        SolveStatus::Infeasible => f,
        _ => {
            let mut r = SolveReport::unbounded(f.witness);
            r.oracle_calls = f.oracle_calls;
            r
        }
    }))
}

pub fn solve_encoded_standard(e: &EncodedStandard) -> Result<SolveReport> {
    let c = standard_to_canonical(&e.system);
    let r = optimize_and_count(&c, &e.max_objective())?;
    Ok(restore(r, e.sense, e.vars))
}

/// Set multi-cover over the neighborhoods of a graph: one variable per
/// vertex, and vertex `v` must be dominated at least `c_v` times.
pub fn encode_dominating(
    graph: &Hypergraph,
    demands: &[Int],
    weights: Option<&[Int]>,
    mult: Option<&[Int]>,
    nb: Neighborhood,
) -> Result<Encoded> {
    if graph.edges().iter().any(|e| e.len() != 2) {
        return Err(Error::Invalid("domination needs a graph".into()));
    }
    let nv = graph.num_vertices();
    if demands.len() != nv {
        return Err(Error::Dimension(format!("{} demands for {} vertices", demands.len(), nv)));
    }
    let sets: Vec<Vec<usize>> = (0..nv)
        .map(|v| {
            let mut s: Vec<usize> = graph
                .edges()
                .iter()
                .filter(|e| e.contains(&v))
                .flat_map(|e| e.iter().copied().filter(|&x| x != v))
                .collect();
            if nb == Neighborhood::Closed {
                s.push(v);
            }
            s
        })
        .collect();
    let h = Hypergraph::new(nv, sets)?;
    let mut inst = HypergraphInstance::new(h)
        .with_vertex_bounds(demands.iter().map(|c| (Some(c.clone()), None)).collect())?;
    if let Some(w) = weights {
        inst = inst.with_weights(w.to_vec());
    }
    if let Some(u) = mult {
        inst = inst.with_mult(u.to_vec())?;
    }
    encode_edge_based(&inst, EdgeMode::SetMulticover)
}

/// Minimum-weight multiset of vertices such that every vertex `v` is
/// dominated at least `c_v` times.
pub fn dominating_multiset(
    graph: &Hypergraph,
    demands: &[Int],
    weights: Option<&[Int]>,
    mult: Option<&[Int]>,
    nb: Neighborhood,
) -> Result<SolveReport> {
    solve_encoded(&encode_dominating(graph, demands, weights, mult, nb)?)
}

/// Merge repeated hyperedges of an unweighted edge-based instance into
/// one variable each (caps add up). Returns the glued instance and, for
/// every original edge, the index of its glued edge.
pub fn glue_duplicate_edges(h: &HypergraphInstance) -> Result<(HypergraphInstance, Vec<usize>)> {
    if !h.is_unweighted() {
        return Err(Error::Invalid("gluing needs an unweighted instance".into()));
    }
    let mut unique: Vec<Vec<usize>> = Vec::new();
    let mut map = Vec::with_capacity(h.graph.num_edges());
    for e in h.graph.edges() {
        match unique.iter().position(|u| u == e) {
            Some(i) => map.push(i),
            None => {
                map.push(unique.len());
                unique.push(e.clone());
            }
        }
    }
    let mult = h.mult.as_ref().map(|u| {
        let mut m = vec![Int::zero(); unique.len()];
        for (j, cap) in u.iter().enumerate() {
            m[map[j]] += cap;
        }
        m
    });
    let graph = Hypergraph::new(h.graph.num_vertices(), unique)?;
    Ok((
        HypergraphInstance {
            graph,
            edge_bounds: None,
            vertex_bounds: h.vertex_bounds.clone(),
            weights: None,
            mult,
        },
        map,
    ))
}
