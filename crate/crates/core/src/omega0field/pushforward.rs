//! Cohomology of the Artin truncation of the pushforward to the field.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::geom::GeomDatum;
use crate::error::{Error, Result};
use crate::exactalg::{AdmissibleModule, Coefficients, Int, QMatrix, Q};
use crate::grouprep::rep::twist_power;
use crate::grouprep::{tate_twist, ArtinRep, DivisibleBlock, FiniteGroup};

/// A bounded graded object of representations; missing degrees are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteComplex {
    pub group: Arc<FiniteGroup>,
    pub coefficients: Coefficients,
    degrees: BTreeMap<i64, ArtinRep>,
}

impl DiscreteComplex {
    pub fn zero(group: Arc<FiniteGroup>, coefficients: Coefficients) -> Self {
        DiscreteComplex { group, coefficients, degrees: BTreeMap::new() }
    }

    pub fn insert(&mut self, n: i64, rep: ArtinRep) -> Result<()> {
        if rep.group() != &self.group || rep.coefficients() != &self.coefficients {
            return Err(Error::domain("degree has a different group or coefficients"));
        }
        if rep.is_zero() {
            self.degrees.remove(&n);
        } else {
            self.degrees.insert(n, rep);
        }
        Ok(())
    }

    pub fn degree(&self, n: i64) -> ArtinRep {
        self.degrees
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ArtinRep::zero(self.group.clone(), self.coefficients.clone()))
    }

    pub fn module(&self, n: i64) -> AdmissibleModule {
        self.degree(n).module()
    }

    /// Degrees carrying a nonzero representation, increasing.
    pub fn support(&self) -> Vec<i64> {
        self.degrees.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &ArtinRep)> {
        self.degrees.iter().map(|(&n, r)| (n, r))
    }

    pub fn direct_sum(&self, other: &DiscreteComplex) -> Result<DiscreteComplex> {
        let mut out = self.clone();
        for (n, r) in other.iter() {
            let sum = out.degree(n).direct_sum(r)?;
            out.insert(n, sum)?;
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Constructible,
    /// Least degree whose cohomology is not finitely presented.
    NotConstructible(i64),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Constructible => write!(f, "Constructible"),
            Verdict::NotConstructible(n) => write!(f, "NotConstructible({n})"),
        }
    }
}

/// `blocks ⊗ R` as a purely divisible representation, or `None` when it vanishes.
pub(crate) fn divisible_rep(x: &GeomDatum, blocks: &[DivisibleBlock], r: &Coefficients) -> Result<Option<ArtinRep>> {
    let mut rep = ArtinRep::zero(x.base.group().clone(), r.clone());
    for b in blocks {
        if let Some(support) = b.support.tensor(r) {
            rep = rep.with_divisible(DivisibleBlock { support, ..b.clone() })?;
        }
    }
    if !rep.has_divisible_part() {
        return Ok(None);
    }
    Ok(Some(rep.with_character(x.base.cyclotomic.clone())?))
}

/// The `n`-torsion of `blocks` as a free `Z/n`-representation, twisted through the cyclotomic character.
fn level_rep(x: &GeomDatum, blocks: &[DivisibleBlock], n: u64) -> Result<ArtinRep> {
    let g = x.base.group();
    let nn = Int::from(n);
    let chi = x.base.cyclotomic.at_level(g, &nn)?;
    let mut out = ArtinRep::zero(g.clone(), Coefficients::IntegersMod(n));
    for b in blocks {
        if b.support.part(&nn) != nn {
            return Err(Error::domain(format!("level {n} is not supported by the divisible part")));
        }
        let elements: Vec<QMatrix> = (0..g.order())
            .map(|e| {
                let c = twist_power(&chi[e], b.twist, &nn);
                b.action[e].map(|v| Q::from_integer((v * &c).mod_floor(&nn)))
            })
            .collect();
        let gens = g.generators().iter().map(|&s| elements[s].clone()).collect();
        out = out.direct_sum(&ArtinRep::from_generators(g.clone(), out.coefficients().clone(), b.rank, gens)?)?;
    }
    Ok(out)
}

/// Graded cohomology of `ω⁰f_*1_X` as representations over `R[1/p]`.
pub fn omega0_pushforward(x: &GeomDatum, r: &Coefficients) -> Result<DiscreteComplex> {
    r.validate()?;
    let g = x.base.group().clone();
    let rp = r.invert(x.base.char_exponent);
    let mut out = DiscreteComplex::zero(g, rp.clone());
    if rp.is_zero_ring() {
        return Ok(out);
    }
    out.insert(0, ArtinRep::permutation(&x.pi0, rp.clone()))?;
    match &rp {
        Coefficients::Rationals => {}
        Coefficients::IntegersMod(n) => {
            for (&k, blocks) in &x.mu {
                out.insert(k as i64, level_rep(x, blocks, *n)?)?;
            }
        }
        _ => {
            for (&k, blocks) in &x.mu {
                if let Some(rep) = divisible_rep(x, blocks, &rp)? {
                    out.insert(k as i64 + 1, rep)?;
                }
            }
        }
    }
    Ok(out)
}

/// Graded cohomology of `ω⁰(f_*1_X(-m))` for `m >= 1`.
pub fn omega0_pushforward_twisted(x: &GeomDatum, r: &Coefficients, m: i64) -> Result<DiscreteComplex> {
    if m <= 0 {
        return Err(Error::domain(format!("twist must be positive, got {m}; use the untwisted pushforward")));
    }
    r.validate()?;
    let g = x.base.group().clone();
    let rp = r.invert(x.base.char_exponent);
    let mut out = DiscreteComplex::zero(g.clone(), rp.clone());
    if rp.is_zero_ring() || rp.is_rational() {
        return Ok(out);
    }
    let chi = &x.base.cyclotomic;
    if rp.is_torsion() {
        let untwisted = omega0_pushforward(x, r)?;
        for (k, rep) in untwisted.iter() {
            out.insert(k, tate_twist(rep, -m, chi)?)?;
        }
        return Ok(out);
    }
    let mut graded = vec![(0usize, vec![x.mu0()])];
    graded.extend(x.mu.iter().map(|(&k, b)| (k, b.clone())));
    for (k, blocks) in graded {
        if let Some(rep) = divisible_rep(x, &blocks, &rp)? {
            out.insert(k as i64 + 1, tate_twist(&rep, -m, chi)?)?;
        }
    }
    Ok(out)
}

/// Agrees with testing each degree of the pushforward for finite presentation.
pub fn constructibility_verdict(x: &GeomDatum, r: &Coefficients) -> Result<Verdict> {
    let c = omega0_pushforward(x, r)?;
    let witness = c.iter().find(|(_, rep)| !rep.module().is_finitely_presented()).map(|(n, _)| n);
    Ok(witness.map_or(Verdict::Constructible, Verdict::NotConstructible))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::PrimeSupport;
    use crate::grouprep::{catalog, GSet, MarkedProfinite, TwistCharacter};
    use crate::omega0field::geom::{self, BaseField};

    #[test]
    fn point_is_the_unit_in_degree_zero() {
        let base = BaseField::closed(1).unwrap();
        let c = omega0_pushforward(&geom::point(&base), &Coefficients::Integers).unwrap();
        assert_eq!(c.support(), vec![0]);
        assert_eq!(c.module(0).free_rank(), 1);
        assert_eq!(constructibility_verdict(&geom::point(&base), &Coefficients::Integers).unwrap(), Verdict::Constructible);
    }

    #[test]
    fn swapped_points_give_the_regular_representation() {
        let c2 = Arc::new(catalog::cyclic(2));
        let base = BaseField::new(MarkedProfinite::unmarked(c2.clone()), 1, TwistCharacter::Trivial).unwrap();
        let pts = geom::finite_etale(&base, GSet::cosets(c2.clone(), &[c2.identity()])).unwrap();
        let c = omega0_pushforward(&pts, &Coefficients::Rationals).unwrap();
        let reg = ArtinRep::regular(c2, Coefficients::Rationals);
        assert!(crate::grouprep::ops::is_isomorphic(&c.degree(0), &reg).unwrap());
    }

    #[test]
    fn twisted_point_and_projective_line() {
        let base = BaseField::closed(3).unwrap();
        let z = Coefficients::Integers;
        let pt = omega0_pushforward_twisted(&geom::point(&base), &z, 1).unwrap();
        assert_eq!(pt.support(), vec![1]);
        let d = pt.module(1).divisible;
        assert_eq!(d, crate::exactalg::DivisibleModule::single(-1, PrimeSupport::away_from(3), 1));
        let p1 = omega0_pushforward_twisted(&geom::projective_space(&base, 1), &z, 1).unwrap();
        assert_eq!(p1.support(), vec![1, 3]);
        assert_eq!(p1.module(3).divisible, crate::exactalg::DivisibleModule::single(-2, PrimeSupport::away_from(3), 1));
        assert!(omega0_pushforward_twisted(&geom::point(&base), &z, 0).is_err());
        assert!(omega0_pushforward_twisted(&geom::point(&base), &Coefficients::Rationals, 2).unwrap().is_zero());
    }

    #[test]
    fn torsion_coefficients_keep_finite_levels() {
        let base = BaseField::closed(1).unwrap();
        let e = geom::curve(&base, 1);
        let c = omega0_pushforward(&e, &Coefficients::IntegersMod(6)).unwrap();
        assert_eq!(c.support(), vec![0, 1, 2]);
        assert_eq!(c.degree(1).dim(), 2);
        assert_eq!(constructibility_verdict(&e, &Coefficients::IntegersMod(6)).unwrap(), Verdict::Constructible);
    }

    #[test]
    fn local_ring_at_the_characteristic_is_rational_after_inverting() {
        let base = BaseField::closed(5).unwrap();
        let x = geom::projective_space(&base, 2);
        let r = Coefficients::IntegersLocalizedAt(5);
        assert_eq!(constructibility_verdict(&x, &r).unwrap(), Verdict::Constructible);
        let r7 = Coefficients::IntegersLocalizedAt(7);
        assert_eq!(constructibility_verdict(&x, &r7).unwrap(), Verdict::NotConstructible(3));
    }
}
