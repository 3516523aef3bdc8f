//! Seeded randomness and random representations for the property suites.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{FiniteGroup, GSet};
use super::rep::ArtinRep;
use crate::exactalg::{Coefficients, Int, QMatrix, Q};

const DEFAULT_SEED: u64 = 0x5eed_a271;

/// Base seed from `ARTINPERV_SEED`, falling back to a fixed default.
pub fn base_seed() -> u64 {
    std::env::var("ARTINPERV_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// A generator for one named stream of the base seed.
pub fn seeded_rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(base_seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Unit upper triangular times unit lower triangular, with small entries.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> (QMatrix, QMatrix) {
    let mut upper = QMatrix::identity(n);
    let mut lower = QMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                upper.set(i, j, Q::from_integer(Int::from(rng.gen_range(-2..=2))));
            }
            if rng.gen_bool(0.3) {
                lower.set(j, i, Q::from_integer(Int::from(rng.gen_range(-1..=1))));
            }
        }
    }
    let p = upper.mul(&lower);
    let inv = p.inverse().expect("unimodular");
    (p, inv)
}

/// A sum of sign characters and coset permutation modules in a random integral basis.
pub fn random_rep(rng: &mut impl Rng, group: &Arc<FiniteGroup>, coefficients: &Coefficients, max_dim: usize) -> ArtinRep {
    let subgroups = group.all_subgroups();
    let mut pieces = Vec::new();
    let mut dim = 0;
    let target = rng.gen_range(0..=max_dim);
    while dim < target {
        let piece = if rng.gen_bool(0.4) {
            let values: Vec<i64> = group.generators().iter().map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            ArtinRep::one_dimensional(group.clone(), coefficients.clone(), &values)
                .unwrap_or_else(|_| ArtinRep::trivial(group.clone(), coefficients.clone(), 1))
        } else {
            let h = &subgroups[rng.gen_range(0..subgroups.len())];
            ArtinRep::permutation(&GSet::cosets(group.clone(), h), coefficients.clone())
        };
        if dim + piece.dim() > max_dim {
            if dim == 0 {
                continue;
            }
            break;
        }
        dim += piece.dim();
        pieces.push(piece);
    }
    let sum = ArtinRep::direct_sum_all(group.clone(), coefficients.clone(), &pieces).expect("same context");
    conjugate(&sum, rng)
}

/// `P rho P^-1` for a random unimodular `P`.
pub fn conjugate(m: &ArtinRep, rng: &mut impl Rng) -> ArtinRep {
    let (p, inv) = random_unimodular(rng, m.dim());
    let c = m.coefficients();
    let elements = m.element_matrices().iter().map(|a| c.reduce_matrix(&p.mul(a).mul(&inv))).collect();
    ArtinRep::from_elements(m.group().clone(), c.clone(), m.dim(), elements)
}
