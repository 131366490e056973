use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latcount::hypergraph::{
    encode_dominating, encode_edge_based, encode_edge_based_standard, encode_vertex_based,
    solve_encoded, solve_encoded_standard, EdgeMode, Encoded, HypergraphInstance, Neighborhood,
    Sense, VertexMode,
};
use latcount::limits::{self, Limits};
use latcount::linalg::{det_exact, sparsity_stats, subsets};
use latcount::oracle::{derive_box, oracle_count_auto, oracle_optcount, oracle_optimize, BoxSpec};
use latcount::polyhedron::standard_to_canonical;
use latcount::solver::{feasible, optimize, optimize_and_count};
use latcount::{count_canonical, CanonicalSystem, Count, Error, Int, Matrix, SolveReport, SolveStatus};
use num_traits::{Signed, Zero};

use crate::instance::{parse_instance, parse_int_list, Instance};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "latcount", version, about = "Exact lattice-point counting and integer optimization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Instance file.
    pub file: PathBuf,
    /// Re-check the answer by brute force.
    #[arg(long)]
    pub crosscheck: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of integer points.
    Count(Input),
    /// Find an integer point.
    Feasible(Input),
    /// Maximize an objective.
    Optimize {
        #[command(flatten)]
        input: Input,
        /// Comma-separated objective; overrides the file's.
        #[arg(long, allow_hyphen_values = true)]
        objective: Option<String>,
    },
    /// Maximize and count the maximizers.
    Optcount {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        objective: Option<String>,
    },
    /// Solve a packing / covering problem on a hypergraph file.
    Hyper {
        problem: Problem,
        #[command(flatten)]
        input: Input,
        /// Edge-based problems: go through the slack (standard) form.
        #[arg(long)]
        standard: bool,
        /// Domination: use open neighborhoods.
        #[arg(long)]
        open: bool,
    },
    /// Sparsity, norm and subdeterminant statistics of the matrix.
    Stats {
        #[command(flatten)]
        input: Input,
        /// Largest minor order to enumerate.
        #[arg(long)]
        max_order: Option<usize>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    StableMultiset,
    VertexMulticover,
    VertexGeneral,
    MultiMatching,
    SetMulticover,
    EdgeGeneral,
    DominatingMultiset,
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_ERROR: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

enum Failure {
    Usage(String),
    Lib(Error),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = Result<T, Failure>;

/// Run one command. Budgets come from `LATCOUNT_BUDGET` when set.
pub fn run(cli: &Cli) -> Outcome {
    limits::set(Limits::from_env());
    conclude(dispatch(&cli.command))
}

fn conclude(res: Res<(Report, Option<bool>)>) -> Outcome {
    match res {
        Ok((report, check)) => {
            let code = if check == Some(false) { EXIT_MISMATCH } else { 0 };
            let stderr = if code == 0 { String::new() } else { "error: crosscheck mismatch\n".into() };
            Outcome {
                code,
                stdout: report.to_string(),
                stderr,
            }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_PARSE, m),
                Failure::Lib(e) if e.is_budget() => (EXIT_BUDGET, e.to_string()),
                Failure::Lib(e) => (EXIT_ERROR, e.to_string()),
                Failure::Other(m) => (EXIT_ERROR, m),
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

fn load(input: &Input) -> Res<Instance> {
    let text = std::fs::read_to_string(&input.file)
        .map_err(|e| Failure::Other(format!("{}: {e}", input.file.display())))?;
    parse_instance(&text).map_err(|e| Failure::Usage(format!("{}: {e}", input.file.display())))
}

fn linear(inst: &Instance) -> Res<CanonicalSystem> {
    match inst {
        Instance::Canonical { system, .. } => Ok(system.clone()),
        Instance::Standard { system, .. } => Ok(standard_to_canonical(system)),
        Instance::Hypergraph(_) => Err(Failure::Usage(
            "this command needs a canonical or standard system; use `hyper` for hypergraphs".into(),
        )),
    }
}

fn objective_for(inst: &Instance, flag: &Option<String>, n: usize) -> Res<Vec<Int>> {
    let c = match flag {
        Some(s) => parse_int_list(s).map_err(|e| Failure::Usage(format!("--objective: {e}")))?,
        None => inst
            .objective()
            .map(|c| c.to_vec())
            .ok_or_else(|| Failure::Usage("no objective: pass --objective or add an `objective` line".into()))?,
    };
    if c.len() != n {
        return Err(Failure::Usage(format!("objective has {} entries for {} variables", c.len(), n)));
    }
    Ok(c)
}

fn dispatch(cmd: &Command) -> Res<(Report, Option<bool>)> {
    match cmd {
        Command::Count(input) => count(input),
        Command::Feasible(input) => feasibility(input),
        Command::Optimize { input, objective } => optimization(input, objective, false),
        Command::Optcount { input, objective } => optimization(input, objective, true),
        Command::Hyper {
            problem,
            input,
            standard,
            open,
        } => hyper(*problem, input, *standard, *open),
        Command::Stats { input, max_order } => stats(input, *max_order),
    }
}

fn finish(mut rep: Report, check: Option<bool>, asked: bool) -> (Report, Option<bool>) {
    if asked {
        rep.push(
            "crosscheck",
            match check {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skipped",
            },
        );
    }
    (rep, check)
}

fn count(input: &Input) -> Res<(Report, Option<bool>)> {
    let c = linear(&load(input)?)?;
    let r = count_canonical(&c)?;
    let mut rep = Report::new("count");
    rep.push("count", &r.count);
    rep.push("dimension", r.dimension);
    rep.push("vertices", r.vertex_count);
    rep.push("delta", &r.delta_used);
    rep.push("sigma", &r.sigma_max);
    rep.push("chi", &r.chi_max);
    rep.push_list("direction", &r.direction);
    let check = if !input.crosscheck {
        None
    } else {
        match &r.count {
            Count::Finite(k) => Some(&oracle_count_auto(&c)? == k),
            Count::Infinite => None,
        }
    };
    Ok(finish(rep, check, input.crosscheck))
}

fn push_solution(rep: &mut Report, r: &SolveReport) {
    rep.push("status", r.status);
    if let Some(v) = &r.optimum {
        rep.push("optimum", v);
    }
    if let Some(k) = &r.optima_count {
        rep.push("optima_count", k);
    }
    if let Some(w) = &r.witness {
        rep.push_list("witness", w);
    }
    rep.push("oracle_calls", r.oracle_calls);
}

fn feasibility(input: &Input) -> Res<(Report, Option<bool>)> {
    let c = linear(&load(input)?)?;
    let r = feasible(&c)?;
    let mut rep = Report::new("feasible");
    push_solution(&mut rep, &r);
    let check = match input.crosscheck {
        false => None,
        true => match derive_box(&c) {
            Err(Error::Unbounded) => r.witness.as_ref().map(|w| c.contains(w)),
            other => {
                let has = match other? {
                    Some(_) => oracle_count_auto(&c)?.is_positive(),
                    None => false,
                };
                let witness_ok = r.witness.as_ref().is_none_or(|w| c.contains(w));
                Some(has == (r.status == SolveStatus::Feasible) && witness_ok)
            }
        },
    };
    Ok(finish(rep, check, input.crosscheck))
}

fn value(w: &[Int], c: &[Int]) -> Int {
    w.iter().zip(c).map(|(a, b)| a * b).sum()
}

fn optimization(input: &Input, flag: &Option<String>, with_count: bool) -> Res<(Report, Option<bool>)> {
    let inst = load(input)?;
    let c = linear(&inst)?;
    let obj = objective_for(&inst, flag, c.dim())?;
    let r = if with_count {
        optimize_and_count(&c, &obj)?
    } else {
        optimize(&c, &obj)?
    };
    let mut rep = Report::new(if with_count { "optcount" } else { "optimize" });
    push_solution(&mut rep, &r);
    let check = match input.crosscheck {
        false => None,
        true => match derive_box(&c) {
            Err(Error::Unbounded) => None,
            other => {
                let expect = match other? {
                    Some(b) if with_count => oracle_optcount(&c, &b, &obj)?,
                    Some(b) => oracle_optimize(&c, &b, &obj)?,
                    None => SolveReport::infeasible(),
                };
                let witness_ok = r
                    .witness
                    .as_ref()
                    .is_none_or(|w| c.contains(w) && Some(value(w, &obj)) == r.optimum);
                Some(
                    expect.status == r.status
                        && expect.optimum == r.optimum
                        && (!with_count || expect.optima_count == r.optima_count)
                        && witness_ok,
                )
            }
        },
    };
    Ok(finish(rep, check, input.crosscheck))
}

fn dominating_demands(h: &HypergraphInstance) -> Vec<Int> {
    match &h.vertex_bounds {
        Some(b) => b.iter().map(|(lo, _)| lo.clone().unwrap_or_else(Int::zero)).collect(),
        None => vec![Int::from(1); h.graph.num_vertices()],
    }
}

fn encode(problem: Problem, h: &HypergraphInstance, open: bool) -> Res<Encoded> {
    Ok(match problem {
        Problem::StableMultiset => encode_vertex_based(h, VertexMode::StableMultiset)?,
        Problem::VertexMulticover => encode_vertex_based(h, VertexMode::VertexMulticover)?,
        Problem::VertexGeneral => encode_vertex_based(h, VertexMode::General)?,
        Problem::MultiMatching => encode_edge_based(h, EdgeMode::MultiMatching)?,
        Problem::SetMulticover => encode_edge_based(h, EdgeMode::SetMulticover)?,
        Problem::EdgeGeneral => encode_edge_based(h, EdgeMode::General)?,
        Problem::DominatingMultiset => {
            let nb = if open { Neighborhood::Open } else { Neighborhood::Closed };
            encode_dominating(&h.graph, &dominating_demands(h), h.weights.as_deref(), h.mult.as_deref(), nb)?
        }
    })
}

fn edge_mode(problem: Problem) -> Option<EdgeMode> {
    match problem {
        Problem::MultiMatching => Some(EdgeMode::MultiMatching),
        Problem::SetMulticover => Some(EdgeMode::SetMulticover),
        Problem::EdgeGeneral => Some(EdgeMode::General),
        _ => None,
    }
}

/// Oracle box for an encoded problem: the polytope's own box, or for a
/// minimization with positive weights `0 <= x <= max finite bound`
/// (a larger entry never appears in an optimum).
fn oracle_box(e: &Encoded) -> Res<Option<BoxSpec>> {
    match derive_box(&e.system) {
        Err(Error::Unbounded) => {}
        other => {
            return Ok(Some(
                other?.unwrap_or_else(|| BoxSpec::uniform(e.system.dim(), 1, 0).expect("valid box")),
            ))
        }
    }
    if e.sense != Sense::Minimize || e.objective.iter().any(|w| !w.is_positive()) {
        return Ok(None);
    }
    let cap = e
        .system
        .rhs()
        .iter()
        .map(|b| b.abs().ceil().to_integer())
        .max()
        .unwrap_or_else(Int::zero);
    let n = e.system.dim();
    Ok(Some(BoxSpec::new(vec![Int::zero(); n], vec![cap; n])?))
}

fn hyper(problem: Problem, input: &Input, standard: bool, open: bool) -> Res<(Report, Option<bool>)> {
    let Instance::Hypergraph(h) = load(input)? else {
        return Err(Failure::Usage("`hyper` needs a hypergraph file".into()));
    };
    let enc = encode(problem, &h, open)?;
    let r = match (standard, edge_mode(problem)) {
        (false, _) => solve_encoded(&enc)?,
        (true, Some(mode)) => solve_encoded_standard(&encode_edge_based_standard(&h, mode)?)?,
        (true, None) => {
            return Err(Failure::Usage("--standard applies to edge-based problems only".into()))
        }
    };
    let mut rep = Report::new("hyper");
    rep.push("problem", problem.to_possible_value().expect("no skipped variants").get_name());
    rep.push("variables", enc.system.dim());
    push_solution(&mut rep, &r);
    let check = match input.crosscheck {
        false => None,
        true => match (r.status, oracle_box(&enc)?) {
            (SolveStatus::Unbounded, _) | (_, None) => None,
            (_, Some(b)) => {
                let mut expect = oracle_optcount(&enc.system, &b, &enc.max_objective())?;
                if enc.sense == Sense::Minimize {
                    expect.optimum = expect.optimum.map(|v| -v);
                }
                Some(expect.status == r.status && expect.optimum == r.optimum && expect.optima_count == r.optima_count)
            }
        },
    };
    Ok(finish(rep, check, input.crosscheck))
}

/// `Delta_k` straight from the definition, for the crosscheck.
fn delta_by_definition(a: &Matrix, k: usize) -> Res<Int> {
    let mut best = Int::zero();
    for rs in subsets(a.rows(), k) {
        for cs in subsets(a.cols(), k) {
            best = best.max(det_exact(&a.select(&rs, &cs))?.abs());
        }
    }
    Ok(best)
}

fn stats(input: &Input, max_order: Option<usize>) -> Res<(Report, Option<bool>)> {
    let a = match load(input)? {
        Instance::Canonical { system, .. } => system.matrix().clone(),
        Instance::Standard { system, .. } => system.matrix().clone(),
        Instance::Hypergraph(h) => h.graph.incidence(),
    };
    let order = max_order.unwrap_or(a.rows().min(a.cols()));
    let s = sparsity_stats(&a, order)?;
    let mut rep = Report::new("stats");
    rep.push("rows", a.rows());
    rep.push("cols", a.cols());
    rep.push("rank", s.rank);
    rep.push("max_order", s.max_order);
    rep.push("row_sparse", s.row_sparse);
    rep.push("col_sparse", s.col_sparse);
    rep.push("weak_row_sparse", s.weak_row_sparse);
    rep.push("weak_col_sparse", s.weak_col_sparse);
    rep.push("norm1", &s.norm1);
    rep.push("norm_inf", &s.norm_inf);
    rep.push("max_norm", &s.max_norm);
    rep.push("gamma1", &s.gamma1);
    rep.push("gamma_inf", &s.gamma_inf);
    rep.push("totn", &s.totn);
    rep.push_list("delta_k", &s.delta_k[1..]);
    rep.push("delta_gcd", &s.delta_gcd);
    rep.push("delta_gcd_order", s.delta_gcd_order);
    rep.push("detlb_order", s.detlb.order);
    rep.push("detlb_delta", &s.detlb.delta);
    let check = if input.crosscheck {
        let mut ok = true;
        for k in 1..=s.max_order {
            ok &= delta_by_definition(&a, k)? == s.delta_k[k];
        }
        Some(ok)
    } else {
        None
    };
    Ok(finish(rep, check, input.crosscheck))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let rep = || Report::new("count");
        assert_eq!(conclude(Ok((rep(), None))).code, 0);
        assert_eq!(conclude(Ok((rep(), Some(true)))).code, 0);
        let (r, c) = finish(rep(), Some(false), true);
        let out = conclude(Ok((r, c)));
        assert_eq!(out.code, EXIT_MISMATCH);
        assert!(out.stdout.contains("crosscheck=fail"));
        assert_eq!(conclude(Err(Failure::Usage("x".into()))).code, EXIT_PARSE);
        assert_eq!(conclude(Err(Failure::Lib(Error::Unbounded))).code, EXIT_ERROR);
    }
}
