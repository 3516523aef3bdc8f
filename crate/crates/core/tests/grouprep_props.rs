use std::sync::Arc;

use artinperv_core::exactalg::{Coefficients, QMatrix, Q};
use artinperv_core::grouprep::ops::{
    character_is_class_function, hom_basis, hom_rank, induce, invariants, restrict, subgroup_hom, tate_twist,
    EquivariantMap,
};
use artinperv_core::grouprep::random::random_rep;
use artinperv_core::grouprep::{catalog, ArtinRep, FiniteGroup, TwistCharacter};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group(ix: usize) -> Arc<FiniteGroup> {
    let all = catalog::catalog();
    Arc::new(all[ix % all.len()].clone())
}

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// A random element of `Hom(m, n)` with small coefficients.
fn random_map(rng: &mut ChaCha8Rng, m: &ArtinRep, n: &ArtinRep) -> EquivariantMap {
    let basis = hom_basis(m, n).unwrap();
    let x = basis
        .iter()
        .fold(QMatrix::zeros(n.dim(), m.dim()), |acc, b| acc.add(&b.scale(&q(rng.gen_range(-2..=2)))));
    EquivariantMap::new(m.clone(), n.clone(), x).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn frobenius_reciprocity_ranks(gix in 0usize..64, hix in 0usize..64, seed in any::<u64>()) {
        let g = group(gix);
        let subs = g.all_subgroups();
        let iota = subgroup_hom(&g, &subs[hix % subs.len()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_rep(&mut rng, iota.source(), &Coefficients::Rationals, 3);
        let n = random_rep(&mut rng, &g, &Coefficients::Rationals, 4);
        let lhs = hom_rank(&induce(&m, &iota).unwrap(), &n).unwrap();
        let rhs = hom_rank(&m, &restrict(&n, &iota).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_formula_characters(gix in 0usize..64, hix in 0usize..64, seed in any::<u64>()) {
        let g = group(gix);
        let subs = g.all_subgroups();
        let iota = subgroup_hom(&g, &subs[hix % subs.len()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_rep(&mut rng, iota.source(), &Coefficients::Rationals, 2);
        let n = random_rep(&mut rng, &g, &Coefficients::Rationals, 3);
        let lhs = induce(&restrict(&n, &iota).unwrap().tensor(&m).unwrap(), &iota).unwrap();
        let rhs = n.tensor(&induce(&m, &iota).unwrap()).unwrap();
        prop_assert_eq!(lhs.dim(), rhs.dim());
        prop_assert_eq!(lhs.character(), rhs.character());
    }

    #[test]
    fn invariants_exact_over_q(gix in 0usize..64, seed in any::<u64>()) {
        let g = group(gix);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_rep(&mut rng, &g, &Coefficients::Rationals, 5);
        let n = random_rep(&mut rng, &g, &Coefficients::Rationals, 4);
        let f = random_map(&mut rng, &b, &n);
        let a = f.kernel().unwrap();
        let c = f.image().unwrap();
        prop_assert_eq!(a.rep.dim() + c.rep.dim(), b.dim());
        prop_assert!(f.matrix().mul(&a.map).is_zero());
        let all: Vec<usize> = (0..g.order()).collect();
        let inv = |r: &ArtinRep| invariants(r, &all).unwrap().free_rank();
        prop_assert_eq!(inv(&b), inv(&a.rep) + inv(&c.rep));
        let coker = f.cokernel().unwrap();
        prop_assert_eq!(coker.rep.dim() + c.rep.dim(), n.dim());
        prop_assert!(coker.map.mul(f.matrix()).is_zero());
    }

    #[test]
    fn integral_invariants_left_exact(gix in 0usize..64, seed in any::<u64>()) {
        let g = group(gix);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_rep(&mut rng, &g, &Coefficients::Integers, 4);
        let n = random_rep(&mut rng, &g, &Coefficients::Integers, 4);
        let f = random_map(&mut rng, &b, &n);
        let a = f.kernel().unwrap();
        let all: Vec<usize> = (0..g.order()).collect();
        // inv(A) = inv(B) ∩ A, so inv(A) -> inv(B) -> inv(N) has exact rank bookkeeping
        let inv_a = invariants(&a.rep, &all).unwrap().free_rank();
        let inv_b = invariants(&b, &all).unwrap().free_rank();
        let on_inv = artinperv_core::grouprep::ops::fixed_basis(&b, &all).unwrap();
        let image_rank = f.matrix().mul(&on_inv).rank();
        prop_assert_eq!(inv_a + image_rank, inv_b);
    }

    #[test]
    fn characters_are_class_functions(gix in 0usize..64, seed in any::<u64>()) {
        let g = group(gix);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_rep(&mut rng, &g, &Coefficients::Rationals, 6);
        prop_assert!(character_is_class_function(&m));
    }

    #[test]
    fn twists_compose(a in -4i64..=4, b in -4i64..=4, n in 2u64..30) {
        let g = Arc::new(catalog::cyclic(2));
        let chi = TwistCharacter::Generators(vec![BigInt::from(-1)]);
        let m = ArtinRep::trivial(g, Coefficients::IntegersMod(n), 2);
        let twice = tate_twist(&tate_twist(&m, a, &chi).unwrap(), b, &chi).unwrap();
        prop_assert_eq!(twice, tate_twist(&m, a + b, &chi).unwrap());
    }
}
