use proptest::prelude::*;

use coninv::certify::verify_decomposition;
use coninv::conisum::coninv_sum;
use coninv::matcore::json::{matrix_from_value, matrix_to_json};
use coninv::matcore::scalar::q;
use coninv::matcore::{CMat, Mat, Matrix, Tolerance, C64};
use coninv::skewsum::{m_block, skew_sum};

fn complex_matrix(n: usize) -> impl Strategy<Value = CMat> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n * n)
        .prop_map(move |v| CMat::from_vec(n, n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(m in (1usize..5).prop_flat_map(complex_matrix)) {
        let a = Matrix::Floating(m);
        prop_assert_eq!(matrix_from_value(&matrix_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn exact_json_round_trip(v in prop::collection::vec((-50i64..50, 1i64..20), 9)) {
        let a = Matrix::Exact(Mat::from_vec(3, 3, v.into_iter().map(|(n, d)| q(n, d)).collect()));
        prop_assert_eq!(matrix_from_value(&matrix_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn coninv_sums_certify(m in (2usize..6).prop_flat_map(complex_matrix)) {
        let a = Matrix::Floating(m);
        let d = coninv_sum(&a).unwrap();
        let cert = verify_decomposition(&a, &d, Tolerance::certify_default());
        prop_assert!(cert.pass, "{:?}", cert.failures);
    }

    #[test]
    fn skew_sums_certify(m in prop::sample::select(vec![2usize, 4]).prop_flat_map(complex_matrix)) {
        let a = Matrix::Floating(m);
        let d = skew_sum(&a).unwrap();
        let cert = verify_decomposition(&a, &d, Tolerance::certify_default());
        prop_assert!(cert.pass, "{:?}", cert.failures);
        prop_assert!(d.count() <= 5);
    }

    #[test]
    fn m_block_squares_to_minus_identity(an in -30i64..30, ad in 1i64..10, bn in 1i64..30, bd in 1i64..10, neg: bool) {
        let b = if neg { q(-bn, bd) } else { q(bn, bd) };
        let m = m_block(&q(an, ad), &b);
        prop_assert_eq!(&m * &m, -&Mat::identity(2));
    }
}
