use latcount::linalg::{adjugate, det_exact, hnf, rank, snf, Matrix};
use latcount::Int;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|ch| ch.to_vec()).collect();
            Matrix::from_rows(&rows)
        })
    })
}

fn square() -> impl Strategy<Value = Matrix> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(n).map(|ch| ch.to_vec()).collect();
            Matrix::from_rows(&rows)
        })
    })
}

fn unimodular(m: &Matrix) -> bool {
    det_exact(m).map(|d| d.abs().is_one()).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_is_a_factorization(a in matrix()) {
        let d = snf(&a);
        prop_assert_eq!(&(&d.p * &a) * &d.q, d.s.clone());
        prop_assert!(unimodular(&d.p));
        prop_assert!(unimodular(&d.q));
        prop_assert!(d.s.is_diagonal());
        prop_assert!(d.has_divisibility_chain());
        prop_assert!(d.diagonal().iter().all(|x| !x.is_negative()));
        prop_assert_eq!(d.diagonal().iter().filter(|x| !x.is_zero()).count(), rank(&a));
    }

    #[test]
    fn hermite_form_is_a_factorization(a in matrix()) {
        let d = hnf(&a);
        prop_assert_eq!(&a * &d.q, d.h.clone());
        prop_assert!(unimodular(&d.q));
        prop_assert!(d.is_normal_form());
    }

    #[test]
    fn adjugate_inverts_up_to_det(a in square()) {
        let det = det_exact(&a).unwrap();
        if det.is_zero() {
            prop_assert!(adjugate(&a).is_err());
            return Ok(());
        }
        let adj = adjugate(&a).unwrap();
        let n = a.rows();
        let expect = Matrix::diagonal(&vec![det.clone(); n]);
        prop_assert_eq!(&a * &adj, expect.clone());
        prop_assert_eq!(&adj * &a, expect);
    }

    #[test]
    fn determinant_of_product(a in square()) {
        let q = hnf(&a).q;
        let lhs = det_exact(&(&a * &q)).unwrap();
        let rhs = det_exact(&a).unwrap() * det_exact(&q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_product_is_gcd_of_maximal_minors(a in square()) {
        let d = snf(&a);
        let prod: Int = d.diagonal().iter().product();
        prop_assert_eq!(prod, det_exact(&a).unwrap().abs());
    }
}
