//! Decomposition of rational representations into simple summands.

use rand::Rng;

use super::ops::{average, hom_basis, hom_rank};
use super::random::seeded_rng;
use super::rep::{left_inverse, ArtinRep};
use crate::error::{Error, Result};
use num_traits::Zero;

use crate::exactalg::{Int, QMatrix, Q};

/// Simple summands with multiplicities, ordered by dimension and then by character.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parts: Vec<(ArtinRep, usize)>,
}

impl Decomposition {
    pub fn length(&self) -> usize {
        self.parts.iter().map(|(_, k)| k).sum()
    }
}

fn require_rational(m: &ArtinRep) -> Result<()> {
    if !m.coefficients().is_rational() || m.has_divisible_part() {
        return Err(Error::domain("semisimple decomposition needs a finite representation over Q"));
    }
    Ok(())
}

/// A singular nonzero endomorphism, searched among sparse small combinations of an `End` basis.
fn zero_divisor(m: &ArtinRep, basis: &[QMatrix]) -> Option<QMatrix> {
    let n = m.dim();
    let id = QMatrix::identity(n);
    let singular = |e: &QMatrix| !e.is_zero() && e.det().is_zero();
    for b in basis {
        for lambda in -3i64..=3 {
            let e = b.sub(&id.scale(&Q::from_integer(Int::from(lambda))));
            if singular(&e) {
                return Some(e);
            }
        }
    }
    let mut rng = seeded_rng(0x3a5c);
    for round in 0..400 {
        let width = 2 + round % 3;
        let mut e = QMatrix::zeros(n, n);
        for _ in 0..width {
            let k = rng.gen_range(0..basis.len());
            let c = rng.gen_range(-2i64..=2);
            e = e.add(&basis[k].scale(&Q::from_integer(Int::from(c))));
        }
        if singular(&e) {
            return Some(e);
        }
        for lambda in -2i64..=2 {
            let shifted = e.sub(&id.scale(&Q::from_integer(Int::from(lambda))));
            if singular(&shifted) {
                return Some(shifted);
            }
        }
    }
    None
}

/// Splits `m` into two nonzero summands, or returns `None` when no splitting is found.
pub fn split(m: &ArtinRep) -> Result<Option<(ArtinRep, ArtinRep)>> {
    require_rational(m)?;
    if m.dim() <= 1 {
        return Ok(None);
    }
    let basis = hom_basis(m, m)?;
    if basis.len() == 1 {
        return Ok(None);
    }
    let Some(e) = zero_divisor(m, &basis) else {
        return Ok(None);
    };
    let sub = e.kernel();
    let left = left_inverse(&sub).expect("kernel basis is independent");
    let proj = average(m, &sub.mul(&left));
    let complement = QMatrix::identity(m.dim()).sub(&proj).column_basis();
    Ok(Some((m.subrep(&sub)?, m.subrep(&complement)?)))
}

fn simple_summands(m: &ArtinRep, out: &mut Vec<ArtinRep>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    match split(m)? {
        None => out.push(m.clone()),
        Some((a, b)) => {
            simple_summands(&a, out)?;
            simple_summands(&b, out)?;
        }
    }
    Ok(())
}

/// Isotypic decomposition of a rational representation.
pub fn decompose(m: &ArtinRep) -> Result<Decomposition> {
    require_rational(m)?;
    let mut simples = Vec::new();
    simple_summands(m, &mut simples)?;
    let mut parts: Vec<(ArtinRep, usize)> = Vec::new();
    for s in simples {
        let mut found = false;
        for (rep, k) in parts.iter_mut() {
            if rep.dim() == s.dim() && hom_rank(rep, &s)? > 0 {
                *k += 1;
                found = true;
                break;
            }
        }
        if !found {
            parts.push((s, 1));
        }
    }
    parts.sort_by(|(a, _), (b, _)| a.dim().cmp(&b.dim()).then_with(|| b.character().cmp(&a.character())));
    Ok(Decomposition { parts })
}

pub fn is_simple(m: &ArtinRep) -> Result<bool> {
    Ok(m.dim() > 0 && split(m)?.is_none())
}
