//! Finitely generated modules over the coefficient rings, and admissible modules.

use std::fmt;

use num_traits::One;

use super::coefficients::Coefficients;
use super::divisible::DivisibleModule;
use super::matrix::{Int, IntMatrix};
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A finitely generated module given by generators and relations (rows of `relations`).
///
/// The normal form is computed on construction: invariant factors `d_1 | d_2 | ...`,
/// each a non-unit of the ring, plus a free rank. Over `Z/n` a summand `Z/n` counts
/// toward the free rank.
#[derive(Clone)]
pub struct FgModule {
    coefficients: Coefficients,
    relations: IntMatrix,
    factors: Vec<Int>,
    free_rank: usize,
}

impl FgModule {
    pub fn new(coefficients: Coefficients, relations: IntMatrix) -> Result<Self> {
        coefficients.validate()?;
        let (factors, free_rank) = normal_form(&coefficients, &relations);
        Ok(FgModule { coefficients, relations, factors, free_rank })
    }

    /// The module `R^rank`.
    pub fn free(coefficients: Coefficients, rank: usize) -> Self {
        Self::from_factors(coefficients, Vec::new(), rank)
    }

    pub fn zero(coefficients: Coefficients) -> Self {
        Self::free(coefficients, 0)
    }

    /// `R/d_1 ⊕ ... ⊕ R^free`; unit factors vanish.
    pub fn from_factors(coefficients: Coefficients, factors: Vec<Int>, free: usize) -> Self {
        let n = factors.len() + free;
        let mut rel = IntMatrix::zeros(factors.len(), n);
        for (i, d) in factors.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        let (factors, free_rank) = normal_form(&coefficients, &rel);
        FgModule { coefficients, relations: rel, factors, free_rank }
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generators(&self) -> usize {
        self.relations.cols()
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty() && self.free_rank == 0
    }

    /// The canonical diagonal presentation.
    pub fn normalize(&self) -> FgModule {
        let n = self.factors.len() + self.free_rank;
        let mut rel = IntMatrix::zeros(self.factors.len(), n);
        for (i, d) in self.factors.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        FgModule {
            coefficients: self.coefficients.clone(),
            relations: rel,
            factors: self.factors.clone(),
            free_rank: self.free_rank,
        }
    }

    /// Splits into (torsion, free) for rings where that is meaningful.
    pub fn torsion_split(&self) -> Result<(FgModule, FgModule)> {
        match self.coefficients {
            Coefficients::Rationals | Coefficients::IntegersMod(_) => {
                Err(Error::domain("no torsion theory needed"))
            }
            _ => Ok((
                Self::from_factors(self.coefficients.clone(), self.factors.clone(), 0),
                Self::free(self.coefficients.clone(), self.free_rank),
            )),
        }
    }

    pub fn direct_sum(&self, other: &FgModule) -> Result<FgModule> {
        if self.coefficients != other.coefficients {
            return Err(Error::domain("direct sum over different coefficient rings"));
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(Self::from_factors(self.coefficients.clone(), factors, self.free_rank + other.free_rank))
    }
}

fn normal_form(coefficients: &Coefficients, relations: &IntMatrix) -> (Vec<Int>, usize) {
    let gens = relations.cols();
    if coefficients.is_zero_ring() {
        return (Vec::new(), 0);
    }
    let mut rel = relations.clone();
    if let Coefficients::IntegersMod(n) = coefficients {
        rel = rel.vstack(&IntMatrix::identity(gens).scale(&Int::from(*n)));
    }
    let s = smith_normal_form(&rel);
    let diag = s.invariant_factors();
    let mut free = gens - diag.len();
    let mut factors = Vec::new();
    for d in &diag {
        let d = coefficients.nonunit_part(d);
        if d.is_one() {
            continue;
        }
        match coefficients {
            Coefficients::IntegersMod(n) if d == Int::from(*n) => free += 1,
            _ => factors.push(d),
        }
    }
    (factors, free)
}

impl PartialEq for FgModule {
    fn eq(&self, other: &Self) -> bool {
        self.coefficients == other.coefficients
            && self.factors == other.factors
            && self.free_rank == other.free_rank
    }
}

impl Eq for FgModule {}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgModule({self})")
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.coefficients;
        let mut parts: Vec<String> = self.factors.iter().map(|d| format!("{r}/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("{r}^{}", self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A finitely presented part plus a divisible part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibleModule {
    pub finite: FgModule,
    pub divisible: DivisibleModule,
}

impl AdmissibleModule {
    pub fn zero(coefficients: Coefficients) -> Self {
        AdmissibleModule { finite: FgModule::zero(coefficients), divisible: DivisibleModule::zero() }
    }

    pub fn finite(m: FgModule) -> Self {
        AdmissibleModule { finite: m, divisible: DivisibleModule::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_zero() && self.divisible.is_zero()
    }

    pub fn is_finitely_presented(&self) -> bool {
        self.divisible.is_zero()
    }

    pub fn direct_sum(&self, other: &AdmissibleModule) -> Result<AdmissibleModule> {
        Ok(AdmissibleModule {
            finite: self.finite.direct_sum(&other.finite)?,
            divisible: self.divisible.direct_sum(&other.divisible),
        })
    }

    pub fn free_rank(&self) -> usize {
        self.finite.free_rank()
    }

    pub fn divisible_rank(&self) -> usize {
        self.divisible.total_rank()
    }
}

impl fmt::Display for AdmissibleModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.finite.is_zero(), self.divisible.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.finite),
            (true, false) => write!(f, "{}", self.divisible),
            (false, false) => write!(f, "{} + {}", self.finite, self.divisible),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::{int, int_matrix};

    #[test]
    fn over_integers() {
        let m = FgModule::new(Coefficients::Integers, int_matrix(&[&[2, 4], &[6, 8]])).unwrap();
        assert_eq!(m.invariant_factors(), &[int(2), int(4)]);
        assert_eq!(m.free_rank(), 0);
    }

    #[test]
    fn unit_relation_kills_generator_locally() {
        let m = FgModule::new(Coefficients::IntegersLocalizedAt(2), int_matrix(&[&[3]])).unwrap();
        assert!(m.invariant_factors().is_empty());
        assert!(m.is_zero());
    }

    #[test]
    fn localization_keeps_p_part() {
        let m = FgModule::new(Coefficients::IntegersLocalizedAt(2), int_matrix(&[&[12]])).unwrap();
        assert_eq!(m.invariant_factors(), &[int(4)]);
    }

    #[test]
    fn rationals_see_only_rank() {
        let m = FgModule::new(Coefficients::Rationals, int_matrix(&[&[2, 0, 0], &[0, 3, 0]])).unwrap();
        assert!(m.invariant_factors().is_empty());
        assert_eq!(m.free_rank(), 1);
    }

    #[test]
    fn modular_free_rank() {
        let m = FgModule::new(Coefficients::IntegersMod(6), int_matrix(&[&[2, 0], &[0, 0]])).unwrap();
        assert_eq!(m.invariant_factors(), &[int(2)]);
        assert_eq!(m.free_rank(), 1);
    }

    #[test]
    fn normalize_is_idempotent() {
        let m = FgModule::new(Coefficients::Integers, int_matrix(&[&[4, 6, 0]])).unwrap();
        let n = m.normalize();
        assert_eq!(n, m);
        assert_eq!(n.normalize().relations(), n.relations());
    }

    #[test]
    fn torsion_split_refuses_fields_and_torsion_rings() {
        let q = FgModule::free(Coefficients::Rationals, 2);
        assert_eq!(q.torsion_split().unwrap_err().to_string(), "no torsion theory needed");
        let z = FgModule::new(Coefficients::Integers, int_matrix(&[&[2, 0, 0]])).unwrap();
        let (t, f) = z.torsion_split().unwrap();
        assert_eq!(t.invariant_factors(), &[int(2)]);
        assert_eq!(f.free_rank(), 2);
    }
}
