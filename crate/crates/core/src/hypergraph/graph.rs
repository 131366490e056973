use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{Int, Matrix};

/// `(lower, upper)`; `None` stands for minus / plus infinity.
pub type Bounds = (Option<Int>, Option<Int>);

/// Vertex set `0..nv` with a multiset of nonempty hyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    nv: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Edges are given as vertex lists (0-based); repeated vertices inside
    /// an edge collapse, repeated edges are kept.
    pub fn new(nv: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::Invalid(format!("hyperedge {} is empty", i + 1)));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= nv) {
                return Err(Error::Invalid(format!(
                    "hyperedge {} names vertex {} of {}",
                    i + 1,
                    v + 1,
                    nv
                )));
            }
            clean.push(e);
        }
        Ok(Hypergraph { nv, edges: clean })
    }

    /// Simple graph from an edge list.
    pub fn graph(nv: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Hypergraph::new(nv, edges.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    pub fn complete(nv: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..nv {
            for b in a + 1..nv {
                edges.push(vec![a, b]);
            }
        }
        Hypergraph { nv, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.nv
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `nv x ne` with a one where the vertex lies in the edge.
    pub fn incidence(&self) -> Matrix {
        let mut m = Matrix::zeros(self.nv, self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e {
                m.set(v, j, Int::from(1));
            }
        }
        m
    }

    fn unique_edges(&self) -> Vec<&Vec<usize>> {
        let mut u: Vec<&Vec<usize>> = self.edges.iter().collect();
        u.sort();
        u.dedup();
        u
    }

    /// Largest number of distinct edges through one vertex.
    pub fn max_degree(&self) -> usize {
        let u = self.unique_edges();
        (0..self.nv)
            .map(|v| u.iter().filter(|e| e.contains(&v)).count())
            .max()
            .unwrap_or(0)
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Every edge has two vertices and no edge repeats.
    pub fn is_simple_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2) && self.unique_edges().len() == self.edges.len()
    }
}

/// A hypergraph with optional per-edge or per-vertex bounds, weights and
/// multiplicity caps. Which bounds, weights and caps apply depends on
/// whether the problem is vertex- or edge-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphInstance {
    pub graph: Hypergraph,
    pub edge_bounds: Option<Vec<Bounds>>,
    pub vertex_bounds: Option<Vec<Bounds>>,
    pub weights: Option<Vec<Int>>,
    pub mult: Option<Vec<Int>>,
}

fn check_bounds(bounds: &[Bounds], expect: usize, what: &str) -> Result<()> {
    if bounds.len() != expect {
        return Err(Error::Dimension(format!(
            "{} {what} bounds for {expect} {what}s",
            bounds.len()
        )));
    }
    for (lo, hi) in bounds {
        if lo.iter().chain(hi).any(|v| v.is_negative()) {
            return Err(Error::Invalid(format!("{what} bounds must be nonnegative")));
        }
    }
    Ok(())
}

impl HypergraphInstance {
    pub fn new(graph: Hypergraph) -> Self {
        HypergraphInstance {
            graph,
            edge_bounds: None,
            vertex_bounds: None,
            weights: None,
            mult: None,
        }
    }

    pub fn with_edge_bounds(mut self, b: Vec<Bounds>) -> Result<Self> {
        check_bounds(&b, self.graph.num_edges(), "edge")?;
        self.edge_bounds = Some(b);
        Ok(self)
    }

    pub fn with_vertex_bounds(mut self, b: Vec<Bounds>) -> Result<Self> {
        check_bounds(&b, self.graph.num_vertices(), "vertex")?;
        self.vertex_bounds = Some(b);
        Ok(self)
    }

    /// Same bounds on every edge.
    pub fn with_uniform_edge_bounds(self, lo: Option<i64>, hi: Option<i64>) -> Result<Self> {
        let b = (lo.map(Int::from), hi.map(Int::from));
        let n = self.graph.num_edges();
        self.with_edge_bounds(vec![b; n])
    }

    pub fn with_uniform_vertex_bounds(self, lo: Option<i64>, hi: Option<i64>) -> Result<Self> {
        let b = (lo.map(Int::from), hi.map(Int::from));
        let n = self.graph.num_vertices();
        self.with_vertex_bounds(vec![b; n])
    }

    pub fn with_weights(mut self, w: Vec<Int>) -> Self {
        self.weights = Some(w);
        self
    }

    pub fn with_mult(mut self, u: Vec<Int>) -> Result<Self> {
        if u.iter().any(|v| v.is_negative()) {
            return Err(Error::Invalid("multiplicities must be nonnegative".into()));
        }
        self.mult = Some(u);
        Ok(self)
    }

    pub(crate) fn weights_or_ones(&self, n: usize) -> Result<Vec<Int>> {
        match &self.weights {
            None => Ok(vec![Int::from(1); n]),
            Some(w) if w.len() == n => Ok(w.clone()),
            Some(w) => Err(Error::Dimension(format!("{} weights for {} variables", w.len(), n))),
        }
    }

    pub(crate) fn mult_checked(&self, n: usize) -> Result<Option<&[Int]>> {
        match &self.mult {
            None => Ok(None),
            Some(u) if u.len() == n => Ok(Some(u)),
            Some(u) => Err(Error::Dimension(format!(
                "{} multiplicities for {} variables",
                u.len(),
                n
            ))),
        }
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights
            .as_ref()
            .is_none_or(|w| w.iter().all(|v| v == &Int::from(1)))
    }
}
