use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use latcount::hypergraph::{Hypergraph, HypergraphInstance};
use latcount::{CanonicalSystem, Int, Matrix, Rat, StandardSystem};
use latcount_cli::{parse_instance, write_instance, Instance};
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn latcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcount"))
        .args(args)
        .env_remove("LATCOUNT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(o: &Output, key: &str) -> Option<String> {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('=').map(str::to_string))
}

fn run_ok(args: &[&str]) -> Output {
    let o = latcount(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}\nstdout:\n{}\nstderr:\n{}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
    o
}

#[test]
fn counts_the_square() {
    let f = fixture("square.inst");
    let o = run_ok(&["count", f.to_str().unwrap()]);
    assert_eq!(field(&o, "count").as_deref(), Some("9"));
    assert_eq!(field(&o, "command").as_deref(), Some("count"));
}

#[test]
fn optcount_on_the_triangle() {
    let f = fixture("triangle.inst");
    let o = run_ok(&["optcount", f.to_str().unwrap(), "--objective", "1,1"]);
    assert_eq!(field(&o, "optimum").as_deref(), Some("3"));
    assert_eq!(field(&o, "optima_count").as_deref(), Some("4"));
    let o = run_ok(&["optcount", f.to_str().unwrap(), "--objective", "-1,-1"]);
    assert_eq!(field(&o, "optimum").as_deref(), Some("0"));
    assert_eq!(field(&o, "optima_count").as_deref(), Some("1"));
}

#[test]
fn stable_multiset_on_k3() {
    let f = fixture("k3.hg");
    let o = run_ok(&["hyper", "stable-multiset", f.to_str().unwrap(), "--crosscheck"]);
    assert_eq!(field(&o, "optimum").as_deref(), Some("1"));
    assert_eq!(field(&o, "optima_count").as_deref(), Some("3"));
    assert_eq!(field(&o, "crosscheck").as_deref(), Some("pass"));
}

#[test]
fn rational_right_hand_side() {
    let f = fixture("half.inst");
    let o = run_ok(&["count", f.to_str().unwrap()]);
    assert_eq!(field(&o, "count").as_deref(), Some("8"));
    let Instance::Canonical { system, .. } = parse_instance(&std::fs::read_to_string(&f).unwrap()).unwrap() else {
        panic!("canonical expected");
    };
    assert_eq!(system.rhs()[2], Rat::new(Int::from(15), Int::from(2)));
}

#[test]
fn unbounded_count_is_infinite() {
    let f = fixture("ray.inst");
    let o = run_ok(&["count", f.to_str().unwrap(), "--crosscheck"]);
    assert_eq!(field(&o, "count").as_deref(), Some("INFINITE"));
    assert_eq!(field(&o, "crosscheck").as_deref(), Some("skipped"));
}

const CROSSCHECKED: &[&[&str]] = &[
    &["count", "square.inst"],
    &["count", "triangle.inst"],
    &["count", "half.inst"],
    &["count", "empty.inst"],
    &["feasible", "empty.inst"],
    &["feasible", "ray.inst"],
    &["feasible", "knapsack.std"],
    &["optimize", "half.inst"],
    &["optimize", "knapsack.std"],
    &["optcount", "triangle.inst"],
    &["optcount", "knapsack.std"],
    &["hyper", "stable-multiset", "k3.hg"],
    &["hyper", "multi-matching", "star.hg"],
    &["hyper", "multi-matching", "star.hg", "--standard"],
    &["hyper", "set-multicover", "path4.hg"],
    &["hyper", "set-multicover", "path4.hg", "--standard"],
    &["hyper", "vertex-multicover", "cover.hg"],
    &["hyper", "vertex-general", "window.hg"],
    &["hyper", "dominating-multiset", "path4-dom.hg"],
    &["hyper", "dominating-multiset", "path4-dom.hg", "--open"],
    &["stats", "fano.hg"],
    &["stats", "knapsack.std"],
    &["stats", "triangle.inst"],
];

fn with_fixture_paths(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| {
            let p = fixture(a);
            if p.exists() {
                p.to_string_lossy().into_owned()
            } else {
                a.to_string()
            }
        })
        .collect()
}

#[test]
fn crosscheck_passes_on_fixtures() {
    for args in CROSSCHECKED {
        let mut v = with_fixture_paths(args);
        v.push("--crosscheck".into());
        let refs: Vec<&str> = v.iter().map(String::as_str).collect();
        let o = run_ok(&refs);
        assert_eq!(field(&o, "crosscheck").as_deref(), Some("pass"), "{args:?}\n{}", stdout(&o));
    }
}

#[test]
fn output_is_deterministic() {
    for args in CROSSCHECKED {
        let v = with_fixture_paths(args);
        let refs: Vec<&str> = v.iter().map(String::as_str).collect();
        let a = latcount(&refs);
        let b = latcount(&refs);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn malformed_input_exits_2() {
    let dir = std::env::temp_dir().join(format!("latcount-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.inst");
    std::fs::write(&bad, "canonical 2 2\n1 0\n0 1\nrhs 1\n").unwrap();
    let o = latcount(&["count", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();

    let sq = fixture("square.inst");
    assert_eq!(latcount(&["optimize", sq.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        latcount(&["optimize", sq.to_str().unwrap(), "--objective", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(latcount(&["count", fixture("k3.hg").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(latcount(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let f = fixture("half.inst");
    let o = Command::new(env!("CARGO_BIN_EXE_latcount"))
        .args(["count", f.to_str().unwrap()])
        .env("LATCOUNT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn k3_parses_to_the_hand_built_instance() {
    let text = std::fs::read_to_string(fixture("k3.hg")).unwrap();
    let g = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    let expect = HypergraphInstance::new(g).with_uniform_edge_bounds(None, Some(1)).unwrap();
    assert_eq!(parse_instance(&text).unwrap(), Instance::Hypergraph(expect));
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let inst = parse_instance(&text).unwrap();
        let again = parse_instance(&write_instance(&inst)).unwrap();
        assert_eq!(inst, again);
    }
}

fn small_int() -> impl Strategy<Value = i64> {
    -6i64..=6
}

fn canonical() -> impl Strategy<Value = Instance> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(m, n)| {
        (
            prop::collection::vec(prop::collection::vec(small_int(), n), m),
            prop::collection::vec((small_int(), 1i64..=4), m),
            prop::option::of(prop::collection::vec(small_int(), n)),
        )
            .prop_map(move |(rows, rhs, obj)| {
                let b = rhs
                    .into_iter()
                    .map(|(p, q)| Rat::new(Int::from(p), Int::from(q)))
                    .collect();
                Instance::Canonical {
                    system: CanonicalSystem::new(Matrix::from_rows(&rows), b).unwrap(),
                    objective: obj.map(|c| c.into_iter().map(Int::from).collect()),
                }
            })
    })
}

fn standard() -> impl Strategy<Value = Instance> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(k, n)| {
        (
            prop::collection::vec(prop::collection::vec(0i64..=5, n), k),
            prop::collection::vec(0i64..=9, n),
            prop::option::of(prop::collection::vec(0i64..=4, n)),
        )
            .prop_map(move |(rows, x, u)| {
                let a = Matrix::from_rows(&rows);
                // b = A x keeps the rows consistent
                let b = rows
                    .iter()
                    .map(|r| Rat::from_integer(Int::from(r.iter().zip(&x).map(|(p, q)| p * q).sum::<i64>())))
                    .collect();
                let u = u.map(|u| u.into_iter().map(Int::from).collect());
                Instance::Standard {
                    system: StandardSystem::new(a, b, u).unwrap(),
                    objective: None,
                }
            })
    })
}

fn bound() -> impl Strategy<Value = (Option<Int>, Option<Int>)> {
    (prop::option::of(0i64..=3), prop::option::of(3i64..=6))
        .prop_map(|(lo, hi)| (lo.map(Int::from), hi.map(Int::from)))
}

fn hypergraph() -> impl Strategy<Value = Instance> {
    (2usize..=5, 1usize..=5).prop_flat_map(|(nv, ne)| {
        (
            prop::collection::vec(prop::collection::btree_set(0..nv, 1..=nv), ne),
            prop::option::of(prop::collection::vec(bound(), ne)),
            prop::option::of(prop::collection::vec(bound(), nv)),
            prop::option::of(prop::collection::vec(1i64..=5, nv)),
        )
            .prop_map(move |(edges, eb, vb, w)| {
                let g = Hypergraph::new(nv, edges.into_iter().map(|e| e.into_iter().collect()).collect()).unwrap();
                let mut h = HypergraphInstance::new(g);
                if let Some(eb) = eb {
                    h = h.with_edge_bounds(eb).unwrap();
                }
                if let Some(vb) = vb {
                    h = h.with_vertex_bounds(vb).unwrap();
                }
                h.weights = w.map(|w| w.into_iter().map(Int::from).collect());
                Instance::Hypergraph(h)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn write_then_parse_is_identity(inst in prop_oneof![canonical(), standard(), hypergraph()]) {
        let text = write_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}
