use std::sync::OnceLock;

use proptest::prelude::*;

use modlie::cartan_w::{build_witt, WittAlgebra, DEFAULT_CAP};
use modlie::exec::Strategy as Exec;
use modlie::field::{Fe, Field};
use modlie::gen::{strata_census, ClassicalLadder, SamplingPlan};
use modlie::linalg::{add_vec, p_min_poly, scale_vec};
use modlie::liealg::{center, generated_subalgebra};
use modlie::pstruct::PMap;
use modlie::rng::{random_nonzero_vector, random_vector, stream_rng};
use modlie::verify::structure_suite;

fn restricted() -> &'static Vec<(WittAlgebra, PMap)> {
    static C: OnceLock<Vec<(WittAlgebra, PMap)>> = OnceLock::new();
    C.get_or_init(|| {
        let f = Field::prime(5).unwrap();
        [vec![1], vec![1, 1]]
            .iter()
            .map(|n| {
                let w = build_witt(n.len(), n, &f, DEFAULT_CAP).unwrap();
                let pm = PMap::new(&w.base).unwrap();
                (w, pm)
            })
            .collect()
    })
}

fn ladders() -> &'static Vec<ClassicalLadder> {
    static C: OnceLock<Vec<ClassicalLadder>> = OnceLock::new();
    C.get_or_init(|| {
        let f = Field::prime(5).unwrap();
        ["A1", "A2", "B2", "gl:2"].iter().map(|s| ClassicalLadder::new(&s.parse().unwrap(), &f, 2).unwrap()).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn p_power_matches_ad_power(i in 0usize..2, seed in any::<u64>()) {
        let (w, pm) = &restricted()[i];
        let y = random_vector(w.field(), w.dim(), &mut stream_rng(seed, 0));
        let z = pm.p_power(&y).unwrap();
        prop_assert_eq!(w.base.ad_matrix(&z), w.base.ad_matrix(&y).pow(5));
    }

    #[test]
    fn ad_p_min_poly_degree_is_bounded(i in 0usize..2, seed in any::<u64>()) {
        let (w, _) = &restricted()[i];
        let y = random_vector(w.field(), w.dim(), &mut stream_rng(seed, 1));
        let f = p_min_poly(&w.base.ad_matrix(&y));
        prop_assert!(f.p_degree().unwrap() <= w.m());
    }

    #[test]
    fn top_degree_structure_claims(i in 0usize..2, seed in any::<u64>()) {
        let (w, _) = &restricted()[i];
        let (bad, _, _) = structure_suite(w, 4, &mut stream_rng(seed, 2)).unwrap();
        prop_assert_eq!(bad, 0);
    }

    #[test]
    fn certificates_replay_and_are_gl2_invariant(
        i in 0usize..4,
        seed in any::<u64>(),
        m in prop::array::uniform4(0u32..5),
    ) {
        let ladder = &ladders()[i];
        let base = &ladder.base.base;
        let x = random_nonzero_vector(base.field(), base.dim(), &mut stream_rng(seed, 3));
        prop_assume!(!center(base).contains(&x));
        let (cert, j) = ladder.partner(&x, seed, 0).unwrap();
        let l = &ladder.rung(j).unwrap().base;
        prop_assert!(cert.generates(l));
        prop_assert!(cert.replay(l));
        let (again, j2) = ladder.partner(&x, seed, 0).unwrap();
        prop_assert_eq!(j, j2);
        prop_assert_eq!(&again.y, &cert.y);

        let f = l.field();
        let [a, b, c, d] = m.map(Fe);
        prop_assume!(f.sub(f.mul(a, d), f.mul(b, c)) != Fe::ZERO);
        let x2 = add_vec(f, &scale_vec(f, &cert.x, a), &scale_vec(f, &cert.y, b));
        let y2 = add_vec(f, &scale_vec(f, &cert.x, c), &scale_vec(f, &cert.y, d));
        prop_assert_eq!(generated_subalgebra(l, &x2, &y2).dim(), l.dim());
    }

    #[test]
    fn census_histograms_partition_the_sample(seed in any::<u64>(), count in 1u64..400) {
        let (w, _) = &restricted()[0];
        let plan = SamplingPlan::Random { seed, count };
        let seq = strata_census(&w.base, &plan, 1 << 20, Exec::Sequential).unwrap();
        let par = strata_census(&w.base, &plan, 1 << 20, Exec::Parallel).unwrap();
        prop_assert_eq!(seq.histogram.values().sum::<u64>(), count);
        prop_assert_eq!(&seq.histogram, &par.histogram);
        prop_assert!(seq.histogram.keys().all(|&d| d <= w.dim()));
    }
}
