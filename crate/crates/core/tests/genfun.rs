mod common;

use std::collections::BTreeMap;

use common::*;
use latcount::genfun::{
    cone_genfun, constant_term, constant_term_todd, evaluate_numeric, level_tables, GroupContext,
    Recurrence, ShortRatExpFun,
};
use latcount::linalg::{det_exact, rat};
use latcount::oracle::{derive_box, enumerate};
use latcount::{CanonicalSystem, Int, Matrix, Rat};
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_square(rng: &mut ChaCha8Rng, max_delta: i64) -> Matrix {
    loop {
        let n = rng.gen_range(1..=3);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let a = Matrix::from_rows(&rows);
        let d = det_exact(&a).unwrap().abs();
        if !d.is_zero() && d <= Int::from(max_delta) {
            return a;
        }
    }
}

/// `H_n(g)` for every `g`, straight from the definition: sum over the
/// box `prod [0, r_i)` of `t^{<w, y>}`, bucketed by `sum y_i g_i`.
fn brute_levels(ctx: &GroupContext, w: &[i64]) -> BTreeMap<usize, BTreeMap<i64, u64>> {
    let n = w.len();
    let mut out: BTreeMap<usize, BTreeMap<i64, u64>> = BTreeMap::new();
    let mut y = vec![0u64; n];
    loop {
        let mut g = vec![0u64; ctx.moduli.len()];
        for (i, &yi) in y.iter().enumerate() {
            for _ in 0..yi {
                g = ctx.add(&g, &ctx.generators[i]);
            }
        }
        let e: i64 = y.iter().zip(w).map(|(&a, &b)| a as i64 * b).sum();
        *out.entry(ctx.index(&g)).or_default().entry(e).or_default() += 1;
        let mut i = 0;
        while i < n && y[i] + 1 == ctx.orders[i] {
            y[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        y[i] += 1;
    }
    out
}

#[test]
fn recurrences_agree_with_each_other_and_the_definition() {
    let mut r = rng(21);
    for _ in 0..40 {
        let a = random_square(&mut r, 30);
        let n = a.cols();
        let b: Vec<Int> = (0..n).map(|_| Int::from(r.gen_range(-5..=5))).collect();
        let w: Vec<i64> = (0..n)
            .map(|_| loop {
                let v = r.gen_range(-4..=4);
                if v != 0 {
                    break v;
                }
            })
            .collect();
        let ctx = GroupContext::new(&a, &b).unwrap();
        let naive = level_tables(&ctx, &w, Recurrence::Naive).unwrap();
        let slide = level_tables(&ctx, &w, Recurrence::SlidingWindow).unwrap();
        assert_eq!(naive, slide);
        let last = &naive[n];
        let brute = brute_levels(&ctx, &w);
        for idx in 0..ctx.order() {
            let got: BTreeMap<i64, u64> = last
                .get(idx)
                .map(|coeffs| {
                    coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (last.lo + k as i64, c))
                        .collect()
                })
                .unwrap_or_default();
            assert_eq!(got, brute.get(&idx).cloned().unwrap_or_default());
        }
    }
}

fn short_fun() -> impl Strategy<Value = ShortRatExpFun> {
    let term = (-3i64..=3, -9i64..=9, 1i64..=4).prop_map(|(e, p, q)| (Int::from(e), rat(p, q)));
    let den = (1i64..=6, 1i64..=4, any::<bool>())
        .prop_map(|(p, q, neg)| if neg { rat(-p, q) } else { rat(p, q) });
    (
        prop::collection::vec(term, 1..=5),
        prop::collection::vec(den, 0..=4),
    )
        .prop_map(|(t, d)| ShortRatExpFun::new(t, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn constant_term_paths_agree(f in short_fun()) {
        prop_assert_eq!(constant_term(&f).unwrap(), constant_term_todd(&f).unwrap());
    }
}

/// Direct sum of `e^{<c, z> tau}` over the cone points with
/// `<c, z> >= sum(b) - depth`; `c` is the row sum of `A`, so `<c, z> <=
/// sum(b)` on the whole cone and every ray lowers it by at least one.
fn truncated_sum(a: &Matrix, b: &[i64], tau: f64, depth: i64) -> f64 {
    let n = a.cols();
    let c: Vec<i64> = (0..n)
        .map(|j| (0..n).map(|i| a.get(i, j).to_i64().unwrap()).sum())
        .collect();
    let top: i64 = b.iter().sum();
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| a.row(i).iter().map(|v| v.to_i64().unwrap()).collect())
        .collect();
    rows.push(c.iter().map(|x| -x).collect());
    let mut rhs = b.to_vec();
    rhs.push(depth - top);
    let sys = CanonicalSystem::from_ints(&rows, &rhs).unwrap();
    let bx = derive_box(&sys).unwrap().unwrap();
    enumerate(&sys, &bx)
        .unwrap()
        .iter()
        .map(|z| {
            let s: i64 = z.iter().zip(&c).map(|(x, y)| x.to_i64().unwrap() * y).sum();
            (s as f64 * tau).exp()
        })
        .sum()
}

#[test]
fn cone_series_converge_to_the_lattice_sum() {
    let cones: Vec<(Vec<Vec<i64>>, Vec<i64>)> = vec![
        (vec![vec![1]], vec![3]),
        (vec![vec![2, 1], vec![-1, 3]], vec![3, -1]),
        (vec![vec![1, 1], vec![1, -1]], vec![0, 1]),
        (vec![vec![1, 2], vec![3, -1]], vec![2, 2]),
        (vec![vec![2, 0, 1], vec![0, 1, 1], vec![1, -1, 2]], vec![1, 2, 0]),
    ];
    for (rows, b) in cones {
        let a = Matrix::from_rows(&rows);
        let n = a.cols();
        let c: Vec<Int> = (0..n)
            .map(|j| (0..n).map(|i| a.get(i, j).clone()).sum())
            .collect();
        let f = cone_genfun(&a, &ints(&b), &c).unwrap();
        assert!(f.is_convergent_form());
        for (tau, depth) in [(rat(1, 1), 45), (rat(1, 2), 80)] {
            let closed = evaluate_numeric(&f, &tau).unwrap();
            let direct = truncated_sum(&a, &b, tau.to_f64().unwrap(), depth);
            // the dropped tail is below e^{-tau depth} times a polynomial in depth
            assert!(
                ((closed - direct) / closed).abs() < 1e-9,
                "{rows:?} tau={tau}: {closed} vs {direct}"
            );
        }
    }
}

#[test]
fn todd_numbers_match_known_values() {
    let td = latcount::genfun::todd_polynomials(&[Rat::from_integer(1.into())], 3);
    // x / (1 - e^{-x}) = 1 + x/2 + x^2/12 + 0 x^3
    assert_eq!(td, vec![rat(1, 1), rat(1, 2), rat(1, 12), rat(0, 1)]);
}
