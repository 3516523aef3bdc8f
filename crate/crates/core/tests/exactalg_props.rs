use artinperv_core::exactalg::divisible::level_embeds;
use artinperv_core::exactalg::matrix::{int, Int, IntMatrix};
use artinperv_core::exactalg::snf::int_det;
use artinperv_core::exactalg::{smith_normal_form, Coefficients, DivisibleModule, FgModule, PrimeSupport};
use itertools_free::combinations;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

mod itertools_free {
    /// All increasing `k`-subsets of `0..n`.
    pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        go(0, n, k, &mut cur, &mut out);
        out
    }
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-20i64..=20, r * c)
            .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(int).collect()))
    })
}

/// gcd of all k x k minors.
fn determinantal_divisor(a: &IntMatrix, k: usize) -> Int {
    let mut g = Int::zero();
    for rows in combinations(a.rows(), k) {
        for cols in combinations(a.cols(), k) {
            let m = a.select_rows(&rows).select_columns(&cols);
            g = g.gcd(&int_det(&m));
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_is_a_unimodular_diagonalisation(a in matrix_strategy(8)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(int_det(&s.u).abs().is_one());
        prop_assert!(int_det(&s.v).abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(f.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn snf_matches_determinantal_divisors(a in matrix_strategy(4)) {
        let f = smith_normal_form(&a).invariant_factors();
        let mut prod = Int::one();
        for k in 1..=a.rows().min(a.cols()) {
            let dk = determinantal_divisor(&a, k);
            if k <= f.len() {
                prod *= &f[k - 1];
                prop_assert_eq!(prod.clone(), dk);
            } else {
                prop_assert!(dk.is_zero());
            }
        }
    }

    #[test]
    fn normalize_is_idempotent(a in matrix_strategy(6), which in 0usize..5) {
        let rings = [
            Coefficients::Integers,
            Coefficients::Rationals,
            Coefficients::IntegersLocalizedAt(3),
            Coefficients::IntegersMod(12),
            Coefficients::Integers.invert(2),
        ];
        let r = rings[which].clone();
        let m = FgModule::new(r, a).unwrap();
        let n = m.normalize();
        prop_assert_eq!(&n, &m);
        let nn = n.normalize();
        prop_assert_eq!(nn.relations(), n.relations());
    }

    #[test]
    fn torsion_split_reassembles(a in matrix_strategy(6), local in any::<bool>()) {
        let r = if local { Coefficients::IntegersLocalizedAt(2) } else { Coefficients::Integers };
        let m = FgModule::new(r, a).unwrap();
        let (t, f) = m.torsion_split().unwrap();
        prop_assert_eq!(t.direct_sum(&f).unwrap(), m);
        prop_assert_eq!(t.free_rank(), 0);
        prop_assert!(f.invariant_factors().is_empty());
    }

    #[test]
    fn level_embeds_into_larger_level(n in 1u64..=60, m in 1u64..=60, p in prop::sample::select(vec![1u64, 2, 3, 5, 7]), r in 1usize..4, t in -3i64..3) {
        let d = DivisibleModule::single(t, PrimeSupport::away_from(p), r)
            .direct_sum(&DivisibleModule::single(t - 1, PrimeSupport::Only([2u64, 5].into_iter().collect()), 1));
        prop_assert!(level_embeds(&d, n, m));
    }
}
