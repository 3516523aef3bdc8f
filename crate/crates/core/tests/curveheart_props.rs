mod common;

use artinperv_core::curveheart::glued::{cokernel_via_cone, kernel_via_cone};
use artinperv_core::curveheart::random::{random_curve, random_glued, random_heart_morphism, random_heart_object};
use artinperv_core::curveheart::{
    composition_series, derived_hom_rank, heart_cokernel, heart_hom_basis, heart_isomorphic, heart_kernel, GluedComplex,
    NObject,
};
use artinperv_core::grouprep::random::seeded_rng;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_and_cokernel_are_universal(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let f = random_heart_morphism(&mut rng, &curve, 2);
        let t = random_heart_object(&mut rng, &curve, 2);
        prop_assert_eq!(common::kernel_is_universal(&f, &t), Ok(()));
        prop_assert_eq!(common::cokernel_is_universal(&f, &t), Ok(()));
    }

    #[test]
    fn image_agrees_with_coimage(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let f = random_heart_morphism(&mut rng, &curve, 2);
        prop_assert_eq!(common::image_is_coimage(&f), Ok(()));
    }

    #[test]
    fn cone_route_matches_componentwise(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let f = random_heart_morphism(&mut rng, &curve, 2);
        let (k, _) = heart_kernel(&f).unwrap();
        let (c, _) = heart_cokernel(&f).unwrap();
        prop_assert!(heart_isomorphic(&k, &kernel_via_cone(&f).unwrap()).unwrap());
        prop_assert!(heart_isomorphic(&c, &cokernel_via_cone(&f).unwrap()).unwrap());
    }

    #[test]
    fn six_term_sequence_is_exact(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let m = random_heart_object(&mut rng, &curve, 3);
        prop_assert_eq!(common::six_term_sequence(&m), Ok(()));
    }

    #[test]
    fn composition_factors_add_up(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let m = random_heart_object(&mut rng, &curve, 2);
        let factors = composition_series(&m).unwrap();
        let mut branches = vec![0; m.branches.len()];
        let mut points = vec![0; m.points.len()];
        for s in &factors {
            prop_assert!(!s.is_zero());
            for (t, r) in branches.iter_mut().zip(s.branch_ranks()) { *t += r; }
            for (t, r) in points.iter_mut().zip(s.point_ranks()) { *t += r; }
        }
        prop_assert_eq!(branches, m.branch_ranks());
        prop_assert_eq!(points, m.point_ranks());
    }

    #[test]
    fn nobject_round_trip(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let m = random_heart_object(&mut rng, &curve, 3);
        let n = NObject::from_heart(&m).unwrap();
        prop_assert!(n.is_valid());
        prop_assert!(heart_isomorphic(&n.to_heart().unwrap(), &m).unwrap());
    }

    #[test]
    fn derived_hom_in_degree_zero_is_heart_hom(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let x = random_heart_object(&mut rng, &curve, 2);
        let y = random_heart_object(&mut rng, &curve, 2);
        let gx = GluedComplex::from_heart(&x).unwrap();
        let gy = GluedComplex::from_heart(&y).unwrap();
        prop_assert_eq!(derived_hom_rank(&gx, &gy).unwrap(), heart_hom_basis(&x, &y).unwrap().len());
    }

    #[test]
    fn truncation_axioms(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let x = random_glued(&mut rng, &curve);
        let y = random_glued(&mut rng, &curve);
        prop_assert_eq!(common::triangle_is_exact(&x), Ok(()));
        prop_assert_eq!(common::truncation_is_idempotent(&x), Ok(()));
        let le = x.perverse_truncate().unwrap().le;
        let ge = y.perverse_truncate().unwrap().ge;
        prop_assert_eq!(derived_hom_rank(&le, &ge).unwrap(), 0);
    }

    #[test]
    fn perverse_cohomology_of_heart_objects(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let curve = random_curve(&mut rng);
        let m = random_heart_object(&mut rng, &curve, 2);
        let g = GluedComplex::from_heart(&m).unwrap();
        let amp = g.perverse_amplitude().unwrap();
        prop_assert!(amp.is_empty() || amp == vec![0]);
        prop_assert!(heart_isomorphic(&g.perverse_cohomology(0).unwrap(), &m).unwrap());
    }
}
