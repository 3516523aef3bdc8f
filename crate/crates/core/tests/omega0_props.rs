use std::sync::Arc;

use artinperv_core::exactalg::{Coefficients, QMatrix};
use artinperv_core::grouprep::{catalog, GSet, MarkedProfinite, TwistCharacter};
use artinperv_core::omega0field::geom::{self, BaseField, GeomDatum};
use artinperv_core::omega0field::{constructibility_verdict, omega0_pushforward, Verdict};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn base(p: u64) -> BaseField {
    let c2 = Arc::new(catalog::cyclic(2));
    BaseField::new(MarkedProfinite::unmarked(c2), p, TwistCharacter::Generators(vec![(-1).into()])).unwrap()
}

fn build(kind: u8, param: usize, p: u64) -> GeomDatum {
    let b = base(p);
    match kind % 6 {
        0 => geom::point(&b),
        1 => geom::finite_etale(&b, GSet::cosets(b.group().clone(), &[0])).unwrap(),
        2 => geom::projective_space(&b, param % 3),
        3 => geom::curve(&b, param % 3),
        4 => geom::abelian_variety(&b, 1 + param % 2),
        _ => geom::product(&geom::curve(&b, param % 2), &geom::projective_space(&b, 1)).unwrap(),
    }
}

fn coefficients() -> impl Strategy<Value = Coefficients> {
    prop_oneof![
        Just(Coefficients::Integers),
        Just(Coefficients::Rationals),
        Just(Coefficients::IntegersLocalizedAt(2)),
        Just(Coefficients::IntegersLocalizedAt(3)),
        (2u64..13).prop_map(Coefficients::IntegersMod),
    ]
}

fn is_permutation(m: &QMatrix) -> bool {
    (0..m.rows()).all(|i| {
        let row = m.row(i);
        row.iter().filter(|v| v.is_one()).count() == 1 && row.iter().all(|v| v.is_one() || v.is_zero())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_and_degree_one(kind in 0u8..6, param in 0usize..4, p in prop_oneof![Just(1u64), Just(2), Just(5)], r in coefficients()) {
        let x = build(kind, param, p);
        let c = omega0_pushforward(&x, &r).unwrap();
        let top = 2 * x.dimension as i64 + 1;
        prop_assert!(c.support().iter().all(|&n| n == 0 || (2..=top).contains(&n) || r.is_torsion()));
        if !r.is_torsion() {
            prop_assert!(c.degree(1).is_zero());
        }
        prop_assert!(c.degree(0).element_matrices().iter().all(is_permutation));
        let verdict = constructibility_verdict(&x, &r).unwrap();
        let first_bad = c.iter().find(|(_, m)| !m.module().is_finitely_presented()).map(|(n, _)| n);
        prop_assert_eq!(verdict, first_bad.map_or(Verdict::Constructible, Verdict::NotConstructible));
    }

    #[test]
    fn rational_collapse(kind in 0u8..6, param in 0usize..4) {
        let x = build(kind, param, 1);
        let c = omega0_pushforward(&x, &Coefficients::Rationals).unwrap();
        prop_assert_eq!(c.support(), vec![0]);
        prop_assert_eq!(c.degree(0).dim(), x.pi0.size());
    }

    #[test]
    fn disjoint_union_is_additive(k1 in 0u8..6, k2 in 0u8..6, param in 0usize..4, r in coefficients()) {
        let (x, y) = (build(k1, param, 1), build(k2, param + 1, 1));
        let u = geom::disjoint_union(&x, &y).unwrap();
        let lhs = omega0_pushforward(&u, &r).unwrap();
        let rhs = omega0_pushforward(&x, &r).unwrap().direct_sum(&omega0_pushforward(&y, &r).unwrap()).unwrap();
        prop_assert_eq!(lhs.support(), rhs.support());
        for n in lhs.support() {
            prop_assert_eq!(lhs.module(n), rhs.module(n));
        }
    }
}
