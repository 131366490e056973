mod common;

use std::collections::BTreeSet;

use common::*;
use latcount::hypergraph::{
    encode_edge_based, encode_edge_based_standard, encode_vertex_based, glue_duplicate_edges,
    solve_encoded, solve_encoded_standard, Bounds, EdgeMode, Hypergraph, HypergraphInstance,
    VertexMode,
};
use latcount::linalg::delta_k;
use latcount::{Count, Int, SolveStatus};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_hypergraph(r: &mut ChaCha8Rng, nv: usize, ne: usize) -> Hypergraph {
    let edges = (0..ne)
        .map(|_| {
            let mut e: Vec<usize> = (0..nv).filter(|_| r.gen_bool(0.5)).collect();
            if e.is_empty() {
                e.push(r.gen_range(0..nv));
            }
            e
        })
        .collect();
    Hypergraph::new(nv, edges).unwrap()
}

fn opt(v: &Option<Int>) -> Option<i64> {
    v.as_ref().map(|x| i64::try_from(x).unwrap())
}

/// Brute-force optimum and number of optima over `0 <= x <= cap`, with
/// `sets[k]` the variables summed by constraint `k`.
fn brute(
    caps: &[i64],
    sets: &[Vec<usize>],
    bounds: &[(Option<i64>, Option<i64>)],
    w: &[i64],
    minimize: bool,
) -> Option<(i64, u64)> {
    let n = caps.len();
    let mut x = vec![0i64; n];
    let mut best: Option<(i64, u64)> = None;
    loop {
        let ok = sets.iter().zip(bounds).all(|(s, (lo, hi))| {
            let v: i64 = s.iter().map(|&i| x[i]).sum();
            lo.is_none_or(|l| v >= l) && hi.is_none_or(|h| v <= h)
        });
        if ok {
            let mut val: i64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
            if minimize {
                val = -val;
            }
            best = match best {
                Some((b, k)) if b == val => Some((b, k + 1)),
                Some((b, k)) if b > val => Some((b, k)),
                _ => Some((val, 1)),
            };
        }
        let mut i = 0;
        while i < n && x[i] == caps[i] {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
    }
    best.map(|(v, k)| (if minimize { -v } else { v }, k))
}

fn to_bounds(b: &[(Option<i64>, Option<i64>)]) -> Vec<Bounds> {
    b.iter().map(|(l, h)| (l.map(Int::from), h.map(Int::from))).collect()
}

fn check(got: &latcount::SolveReport, expect: Option<(i64, u64)>, what: &str) {
    match expect {
        None => assert_eq!(got.status, SolveStatus::Infeasible, "{what}"),
        Some((v, k)) => {
            assert_eq!(got.status, SolveStatus::Feasible, "{what}");
            assert_eq!(opt(&got.optimum), Some(v), "{what}");
            assert_eq!(got.optima_count, Some(Count::Finite(Int::from(k))), "{what}");
        }
    }
}

#[test]
fn encodings_match_brute_force() {
    let mut r = rng(41);
    for round in 0..60 {
        let nv = r.gen_range(1..=3);
        let ne = r.gen_range(1..=3);
        let h = random_hypergraph(&mut r, nv, ne);
        let vertex_based = round % 2 == 0;
        let nvar = if vertex_based { nv } else { ne };
        let ncon = if vertex_based { ne } else { nv };
        let sets: Vec<Vec<usize>> = if vertex_based {
            h.edges().to_vec()
        } else {
            (0..nv)
                .map(|v| (0..ne).filter(|&j| h.edges()[j].contains(&v)).collect())
                .collect()
        };
        let caps: Vec<i64> = (0..nvar).map(|_| r.gen_range(0..=3)).collect();
        let w: Vec<i64> = (0..nvar).map(|_| r.gen_range(1..=3)).collect();
        let kind = round % 3;
        let bounds: Vec<(Option<i64>, Option<i64>)> = (0..ncon)
            .map(|_| {
                let a = r.gen_range(0..=2);
                let b = a + r.gen_range(0..=2);
                match kind {
                    0 => (None, Some(b)),
                    1 => (Some(a), None),
                    _ => (Some(a), Some(b)),
                }
            })
            .collect();
        let mut inst = HypergraphInstance::new(h.clone())
            .with_weights(w.iter().map(|&v| Int::from(v)).collect())
            .with_mult(caps.iter().map(|&v| Int::from(v)).collect())
            .unwrap();
        inst = if vertex_based {
            inst.with_edge_bounds(to_bounds(&bounds)).unwrap()
        } else {
            inst.with_vertex_bounds(to_bounds(&bounds)).unwrap()
        };
        let minimize = kind == 1;
        let expect = brute(&caps, &sets, &bounds, &w, minimize);
        let what = format!("{h:?} {bounds:?} caps={caps:?} w={w:?}");
        let got = if vertex_based {
            let mode = [VertexMode::StableMultiset, VertexMode::VertexMulticover, VertexMode::General][kind];
            solve_encoded(&encode_vertex_based(&inst, mode).unwrap()).unwrap()
        } else {
            let mode = [EdgeMode::MultiMatching, EdgeMode::SetMulticover, EdgeMode::General][kind];
            let got = solve_encoded(&encode_edge_based(&inst, mode).unwrap()).unwrap();
            if kind < 2 {
                let st = solve_encoded_standard(&encode_edge_based_standard(&inst, mode).unwrap()).unwrap();
                assert_eq!(st.status, got.status, "{what}");
                assert_eq!(st.optimum, got.optimum, "{what}");
                assert_eq!(st.optima_count, got.optima_count, "{what}");
            }
            got
        };
        check(&got, expect, &what);
    }
}

#[test]
fn gluing_keeps_optimum_and_distinct_solutions() {
    let mut r = rng(42);
    for _ in 0..25 {
        let nv = r.gen_range(1..=3);
        let ne0 = r.gen_range(1..=2);
        let base = random_hypergraph(&mut r, nv, ne0);
        let mut edges = base.edges().to_vec();
        edges.push(edges[0].clone());
        let ne = edges.len();
        let h = Hypergraph::new(nv, edges).unwrap();
        let caps: Vec<i64> = (0..ne).map(|_| r.gen_range(0..=2)).collect();
        let p: Vec<(Option<i64>, Option<i64>)> = (0..nv).map(|_| (None, Some(r.gen_range(0..=3)))).collect();
        let inst = HypergraphInstance::new(h.clone())
            .with_mult(caps.iter().map(|&v| Int::from(v)).collect())
            .unwrap()
            .with_vertex_bounds(to_bounds(&p))
            .unwrap();
        let (glued, map) = glue_duplicate_edges(&inst).unwrap();
        let direct = solve_encoded(&encode_edge_based(&inst, EdgeMode::MultiMatching).unwrap()).unwrap();
        let g = solve_encoded(&encode_edge_based(&glued, EdgeMode::MultiMatching).unwrap()).unwrap();
        assert_eq!(direct.optimum, g.optimum);

        // optimal direct solutions, folded onto the glued variables
        let best = opt(&direct.optimum).unwrap();
        let mut folded = BTreeSet::new();
        let mut x = vec![0i64; ne];
        loop {
            let ok = (0..nv).all(|v| {
                let load: i64 = (0..ne).filter(|&j| h.edges()[j].contains(&v)).map(|j| x[j]).sum();
                load <= p[v].1.unwrap()
            });
            if ok && x.iter().sum::<i64>() == best {
                let mut y = vec![0i64; glued.graph.num_edges()];
                for (j, &xj) in x.iter().enumerate() {
                    y[map[j]] += xj;
                }
                folded.insert(y);
            }
            let mut i = 0;
            while i < ne && x[i] == caps[i] {
                x[i] = 0;
                i += 1;
            }
            if i == ne {
                break;
            }
            x[i] += 1;
        }
        assert_eq!(g.optima_count, Some(Count::Finite(Int::from(folded.len()))));
    }
}

#[test]
fn graph_incidence_determinants_stay_small() {
    for nv in 1..=6 {
        let bound = Int::from(1u64 << (nv / 3));
        for edges in graphs_up_to_isomorphism(nv) {
            let g = Hypergraph::graph(nv, &edges).unwrap();
            let d = delta_k(&g.incidence(), nv).unwrap();
            assert!(d <= bound, "nv={nv} {edges:?}: {d}");
        }
    }
}

#[test]
fn isomorphism_classes_have_the_known_sizes() {
    let sizes: Vec<usize> = (1..=5).map(|n| graphs_up_to_isomorphism(n).len()).collect();
    assert_eq!(sizes, vec![1, 2, 4, 11, 34]);
}
