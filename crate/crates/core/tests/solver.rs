mod common;

use common::*;
use latcount::linalg::max_abs_subdeterminant;
use latcount::oracle::{derive_box, oracle_optcount};
use latcount::polyhedron::standard_to_canonical;
use latcount::solver::{feasible, optimize_and_count, recovery_call_cap, standard_dp_optimize};
use latcount::{Int, Matrix, Rat, SolveStatus, StandardSystem};
use rand::Rng;

fn objective(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<Int> {
    (0..n).map(|_| Int::from(r.gen_range(-3..=3))).collect()
}

#[test]
fn optimum_and_count_match_the_oracle() {
    let mut r = rng(31);
    for i in 0..80 {
        let c = if i % 3 == 0 {
            random_bounded(&mut r, 3, 7, 3, 6)
        } else {
            random_bounded_nonempty(&mut r, 3, 7, 3, 6)
        };
        let obj = objective(&mut r, c.dim());
        let got = optimize_and_count(&c, &obj).unwrap();
        let expect = match derive_box(&c).unwrap() {
            Some(b) => oracle_optcount(&c, &b, &obj).unwrap(),
            None => latcount::SolveReport::infeasible(),
        };
        assert_eq!(got.status, expect.status, "{c:?} {obj:?}");
        assert_eq!(got.optimum, expect.optimum, "{c:?} {obj:?}");
        assert_eq!(got.optima_count, expect.optima_count, "{c:?} {obj:?}");
        if let Some(w) = &got.witness {
            assert!(c.contains(w));
            let val: Int = w.iter().zip(&obj).map(|(a, b)| a * b).sum();
            assert_eq!(Some(val), got.optimum);
        }
    }
}

#[test]
fn feasibility_stays_within_the_call_cap() {
    let mut r = rng(32);
    for _ in 0..80 {
        let c = random_bounded_nonempty(&mut r, 4, 8, 3, 6);
        let rep = feasible(&c).unwrap();
        if rep.status == SolveStatus::Feasible {
            assert!(c.contains(rep.witness.as_ref().unwrap()));
        }
        let delta = max_abs_subdeterminant(c.matrix()).unwrap();
        assert!(
            rep.oracle_calls <= recovery_call_cap(c.dim(), &delta),
            "{} calls on {c:?}",
            rep.oracle_calls
        );
    }
}

#[test]
fn unbounded_systems_get_witnesses() {
    let mut r = rng(33);
    let mut seen = 0;
    while seen < 25 {
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=n + 1);
        let c = random_system(&mut r, n, m, 3, 6);
        if latcount::polyhedron::is_bounded(&c).unwrap() {
            continue;
        }
        seen += 1;
        let rep = feasible(&c).unwrap();
        if let Some(w) = &rep.witness {
            assert!(c.contains(w));
        } else {
            assert_eq!(rep.status, SolveStatus::Infeasible);
        }
    }
}

#[test]
fn table_dp_agrees_with_the_counting_solver() {
    let mut r = rng(34);
    let mut compared = 0;
    while compared < 40 {
        let n = r.gen_range(2..=4);
        let k = r.gen_range(1..=2);
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..n).map(|_| r.gen_range(0..=3)).collect())
            .collect();
        if (0..n).any(|j| rows.iter().all(|row| row[j] == 0)) {
            continue;
        }
        let b: Vec<Rat> = (0..k).map(|_| Rat::from_integer(r.gen_range(0..=7).into())).collect();
        let u = if r.gen_bool(0.5) {
            Some((0..n).map(|_| Int::from(r.gen_range(0..=3))).collect())
        } else {
            None
        };
        let Ok(s) = StandardSystem::new(Matrix::from_rows(&rows), b, u) else {
            continue;
        };
        let w = objective(&mut r, n);
        let dp = standard_dp_optimize(&s, &w).unwrap();
        let full = optimize_and_count(&standard_to_canonical(&s), &w).unwrap();
        assert_eq!(dp.status, full.status, "{s:?} {w:?}");
        assert_eq!(dp.optimum, full.optimum, "{s:?} {w:?}");
        if let Some(x) = &dp.witness {
            assert!(s.contains(x));
        }
        compared += 1;
    }
}
