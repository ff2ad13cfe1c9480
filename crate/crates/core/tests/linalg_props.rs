use proptest::prelude::*;

use modlie::field::{Field, Poly};
use modlie::linalg::{is_semisimple, p_min_poly, p_min_poly_literal, p_order, semisimple_exponent, split_eigenvalues, Matrix};
use modlie::rng::stream_rng;
use modlie::verify::random_test_matrix;

fn matrix() -> impl Strategy<Value = Matrix> {
    (prop::bool::ANY, any::<u64>()).prop_map(|(big, seed)| {
        let f = Field::new(5, if big { 2 } else { 1 }).unwrap();
        random_test_matrix(&f, &mut stream_rng(seed, 0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn p_min_poly_annihilates_and_is_minimal(u in matrix()) {
        let f = p_min_poly(&u);
        prop_assert!(f.eval_matrix(&u).is_zero());
        // the literal route searches p-powers of u for the first dependence
        prop_assert_eq!(f.monic(), p_min_poly_literal(&u).monic());
    }

    #[test]
    fn p_order_is_stable_under_p_powers(u in matrix()) {
        let p = u.field().p() as u64;
        prop_assert_eq!(p_order(&u.pow(p)), p_order(&u));
    }

    #[test]
    fn p_min_poly_factors_through_semisimple_power(u in matrix()) {
        let k = semisimple_exponent(&u);
        let q = (u.field().p() as u64).pow(k as u32);
        let f_u = p_min_poly(&u.pow(q)).frobenius_inv_coeffs(k);
        prop_assert_eq!(f_u.pow_p(k), p_min_poly(&u));
    }

    #[test]
    fn split_semisimple_p_min_poly_is_product_over_span(u in matrix()) {
        if is_semisimple(&u) {
            if let Ok(eigs) = split_eigenvalues(&u) {
                let span = modlie::linalg::fp_span_elements(u.field(), &eigs);
                prop_assert_eq!(p_min_poly(&u).monic().to_poly(), Poly::from_roots(u.field(), &span));
            }
        }
    }

    #[test]
    fn rref_is_deterministic(u in matrix()) {
        let (a, pa) = u.rref();
        let (b, pb) = u.clone().rref();
        prop_assert_eq!(a.data(), b.data());
        prop_assert_eq!(pa, pb);
        prop_assert_eq!(u.rank() + u.kernel().len(), u.cols());
    }
}
