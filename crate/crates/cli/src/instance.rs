use std::fmt::{self, Write as _};
use std::str::FromStr;

use latcount::hypergraph::{Bounds, Hypergraph, HypergraphInstance};
use latcount::{CanonicalSystem, Int, Matrix, Rat, StandardSystem};
use num_traits::Zero;

/// A parsed instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Canonical {
        system: CanonicalSystem,
        objective: Option<Vec<Int>>,
    },
    Standard {
        system: StandardSystem,
        objective: Option<Vec<Int>>,
    },
    Hypergraph(HypergraphInstance),
}

impl Instance {
    pub fn objective(&self) -> Option<&[Int]> {
        match self {
            Instance::Canonical { objective, .. } | Instance::Standard { objective, .. } => {
                objective.as_deref()
            }
            Instance::Hypergraph(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl Tok<'_> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: msg.into(),
        }
    }

    fn parse<T: FromStr>(&self, what: &str) -> Result<T, ParseError> {
        self.text
            .parse()
            .map_err(|_| self.err(format!("expected {what}, found `{}`", self.text)))
    }

    fn int(&self) -> Result<Int, ParseError> {
        self.parse("an integer")
    }

    fn rat(&self) -> Result<Rat, ParseError> {
        match self.text.split_once('/') {
            None => Ok(Rat::from_integer(self.int()?)),
            Some((p, q)) => {
                let bad = || self.err(format!("expected a rational, found `{}`", self.text));
                let p = Int::from_str(p).map_err(|_| bad())?;
                let q = Int::from_str(q).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(Rat::new(p, q))
            }
        }
    }

    /// `inf` / `-inf` or an integer.
    fn bound(&self) -> Result<Option<Int>, ParseError> {
        match self.text {
            "inf" | "+inf" | "-inf" => Ok(None),
            _ => self.int().map(Some),
        }
    }
}

/// Non-empty lines, comments stripped, split into positioned tokens.
fn tokenize(text: &str) -> Vec<Vec<Tok<'_>>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (j, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        toks.push(Tok {
                            text: &body[s..j],
                            line: i + 1,
                            col: s + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (!toks.is_empty()).then_some(toks)
        })
        .collect()
}

struct Lines<'a> {
    lines: std::iter::Peekable<std::vec::IntoIter<Vec<Tok<'a>>>>,
    last: (usize, usize),
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<Vec<Tok<'a>>, ParseError> {
        match self.lines.next() {
            Some(l) => {
                self.last = (l[0].line, l[0].col);
                Ok(l)
            }
            None => Err(ParseError {
                line: self.last.0,
                col: self.last.1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn next_keyword(&mut self, kw: &str) -> Option<Vec<Tok<'a>>> {
        if self.lines.peek().is_some_and(|l| l[0].text == kw) {
            self.lines.next()
        } else {
            None
        }
    }
}

fn expect_len(line: &[Tok<'_>], n: usize, what: &str) -> Result<(), ParseError> {
    if line.len() != n {
        let at = line.get(n).or(line.last()).unwrap();
        return Err(at.err(format!("{what}: expected {n} entries, found {}", line.len())));
    }
    Ok(())
}

fn ints(line: &[Tok<'_>], n: usize, what: &str) -> Result<Vec<Int>, ParseError> {
    expect_len(line, n, what)?;
    line.iter().map(Tok::int).collect()
}

fn lib_err<'a>(at: &'a Tok<'_>) -> impl Fn(latcount::Error) -> ParseError + 'a {
    move |e| at.err(e.to_string())
}

/// Parse an instance file (see the crate docs for the grammar).
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines {
        lines: tokenize(text).into_iter().peekable(),
        last: (1, 1),
    };
    let header = lines.next("a header line")?;
    let head = header[0];
    let inst = match head.text {
        "canonical" => parse_linear(&mut lines, &header, false)?,
        "standard" => parse_linear(&mut lines, &header, true)?,
        "hypergraph" => parse_hypergraph(&mut lines, &header)?,
        other => {
            return Err(head.err(format!(
                "unknown header `{other}` (expected canonical, standard or hypergraph)"
            )))
        }
    };
    if let Some(extra) = lines.lines.next() {
        return Err(extra[0].err(format!("unexpected `{}`", extra[0].text)));
    }
    Ok(inst)
}

fn parse_linear(lines: &mut Lines<'_>, header: &[Tok<'_>], standard: bool) -> Result<Instance, ParseError> {
    let with_mult = match header.get(3) {
        None => false,
        Some(t) if standard && t.text == "with-mult" => true,
        Some(t) => return Err(t.err(format!("unexpected `{}`", t.text))),
    };
    if header.len() < 3 {
        return Err(header[0].err("header needs row and column counts"));
    }
    let m: usize = header[1].parse("a row count")?;
    let n: usize = header[2].parse("a column count")?;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let l = lines.next("a matrix row")?;
        rows.push(ints(&l, n, &format!("row {}", i + 1))?);
    }
    let rhs_line = lines.next("the `rhs` line")?;
    if rhs_line[0].text != "rhs" {
        return Err(rhs_line[0].err(format!("expected `rhs`, found `{}`", rhs_line[0].text)));
    }
    if rhs_line.len() != m + 1 {
        return Err(rhs_line[0].err(format!("rhs: expected {m} entries, found {}", rhs_line.len() - 1)));
    }
    let rhs: Vec<Rat> = rhs_line[1..].iter().map(Tok::rat).collect::<Result<_, _>>()?;
    let mult = match lines.next_keyword("mult") {
        Some(l) if standard => Some(ints(&l[1..], n, "mult")?),
        Some(l) => return Err(l[0].err("`mult` only applies to standard systems")),
        None if with_mult => {
            return Err(header[3].err("`with-mult` needs a `mult` line after `rhs`"))
        }
        None => None,
    };
    if mult.is_some() && !with_mult {
        return Err(header[0].err("`mult` line needs `with-mult` in the header"));
    }
    let objective = match lines.next_keyword("objective") {
        Some(l) => Some(ints(&l[1..], n, "objective")?),
        None => None,
    };
    let a = Matrix::from_int_rows(rows, n).map_err(lib_err(&header[0]))?;
    Ok(if standard {
        Instance::Standard {
            system: StandardSystem::new(a, rhs, mult).map_err(lib_err(&header[0]))?,
            objective,
        }
    } else {
        Instance::Canonical {
            system: CanonicalSystem::new(a, rhs).map_err(lib_err(&header[0]))?,
            objective,
        }
    })
}

/// One `keyword lo hi` line for every item, or a single line for all.
fn parse_bounds(lines: &mut Lines<'_>, kw: &str, count: usize) -> Result<Option<Vec<Bounds>>, ParseError> {
    let mut out = Vec::new();
    let mut first = None;
    while let Some(l) = lines.next_keyword(kw) {
        first.get_or_insert(l[0]);
        expect_len(&l[1..], 2, kw)?;
        out.push((l[1].bound()?, l[2].bound()?));
    }
    let Some(first) = first else { return Ok(None) };
    if out.len() == 1 && count != 1 {
        return Ok(Some(vec![out[0].clone(); count]));
    }
    if out.len() != count {
        return Err(first.err(format!("expected 1 or {count} `{kw}` lines, found {}", out.len())));
    }
    Ok(Some(out))
}

fn parse_hypergraph(lines: &mut Lines<'_>, header: &[Tok<'_>]) -> Result<Instance, ParseError> {
    expect_len(&header[1..], 2, "hypergraph header")?;
    let nv: usize = header[1].parse("a vertex count")?;
    let ne: usize = header[2].parse("an edge count")?;
    let mut edges = Vec::with_capacity(ne);
    for _ in 0..ne {
        let l = lines.next("a hyperedge")?;
        let mut e = Vec::with_capacity(l.len());
        for t in &l {
            let v: usize = t.parse("a vertex index")?;
            if v == 0 || v > nv {
                return Err(t.err(format!("vertex {v} outside 1..={nv}")));
            }
            e.push(v - 1);
        }
        edges.push(e);
    }
    let graph = Hypergraph::new(nv, edges).map_err(lib_err(&header[0]))?;
    let mut inst = HypergraphInstance::new(graph);
    loop {
        let Some(next) = lines.lines.peek() else { break };
        let t = next[0];
        match t.text {
            "edgebounds" => {
                let b = parse_bounds(lines, "edgebounds", ne)?.expect("peeked");
                inst = inst.with_edge_bounds(b).map_err(lib_err(&t))?;
            }
            "vertexbounds" => {
                let b = parse_bounds(lines, "vertexbounds", nv)?.expect("peeked");
                inst = inst.with_vertex_bounds(b).map_err(lib_err(&t))?;
            }
            "weights" | "mult" => {
                let l = lines.next(t.text)?;
                let vals = ints(&l[1..], l.len() - 1, t.text)?;
                if t.text == "weights" {
                    inst = inst.with_weights(vals);
                } else {
                    inst = inst.with_mult(vals).map_err(lib_err(&t))?;
                }
            }
            _ => break,
        }
    }
    Ok(Instance::Hypergraph(inst))
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn bound(b: &Option<Int>, upper: bool) -> String {
    match b {
        Some(v) => v.to_string(),
        None if upper => "inf".into(),
        None => "-inf".into(),
    }
}

/// Normalized text form; `parse_instance` reads it back to an equal value.
pub fn write_instance(inst: &Instance) -> String {
    let mut s = String::new();
    match inst {
        Instance::Canonical { system, objective } => {
            let a = system.matrix();
            writeln!(s, "canonical {} {}", a.rows(), a.cols()).unwrap();
            for r in 0..a.rows() {
                writeln!(s, "{}", join(a.row(r))).unwrap();
            }
            writeln!(s, "rhs {}", join(system.rhs())).unwrap();
            if let Some(c) = objective {
                writeln!(s, "objective {}", join(c)).unwrap();
            }
        }
        Instance::Standard { system, objective } => {
            let a = system.matrix();
            let tag = if system.multiplicities().is_some() { " with-mult" } else { "" };
            writeln!(s, "standard {} {}{tag}", a.rows(), a.cols()).unwrap();
            for r in 0..a.rows() {
                writeln!(s, "{}", join(a.row(r))).unwrap();
            }
            writeln!(s, "rhs {}", join(system.rhs())).unwrap();
            if let Some(u) = system.multiplicities() {
                writeln!(s, "mult {}", join(u)).unwrap();
            }
            if let Some(c) = objective {
                writeln!(s, "objective {}", join(c)).unwrap();
            }
        }
        Instance::Hypergraph(h) => {
            let g = &h.graph;
            writeln!(s, "hypergraph {} {}", g.num_vertices(), g.num_edges()).unwrap();
            for e in g.edges() {
                let one_based: Vec<usize> = e.iter().map(|v| v + 1).collect();
                writeln!(s, "{}", join(&one_based)).unwrap();
            }
            for (kw, bounds) in [("edgebounds", &h.edge_bounds), ("vertexbounds", &h.vertex_bounds)] {
                for (lo, hi) in bounds.iter().flatten() {
                    writeln!(s, "{kw} {} {}", bound(lo, false), bound(hi, true)).unwrap();
                }
            }
            if let Some(w) = &h.weights {
                writeln!(s, "weights {}", join(w)).unwrap();
            }
            if let Some(u) = &h.mult {
                writeln!(s, "mult {}", join(u)).unwrap();
            }
        }
    }
    s
}

/// Comma-separated integers, as taken by `--objective`.
pub fn parse_int_list(text: &str) -> Result<Vec<Int>, String> {
    text.split(',')
        .map(|t| Int::from_str(t.trim()).map_err(|_| format!("`{t}` is not an integer")))
        .collect()
}
