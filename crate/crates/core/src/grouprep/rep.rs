//! Artin representations: a free finite part and symbolic divisible blocks.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::group::{FiniteGroup, GSet};
use crate::error::{Error, Result};
use crate::exactalg::coefficients::mod_inverse;
use crate::exactalg::{
    AdmissibleModule, Coefficients, DivisibleModule, DivisibleSummand, FgModule, Int, IntMatrix, PrimeSupport, Q,
    QMatrix,
};

/// A character `G -> Z^x` compatible across levels, given by integer values on generators.
///
/// At level `N` the value of an element is the product of generator values along a word,
/// reduced modulo `N`; [`TwistCharacter::at_level`] checks that this is well defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TwistCharacter {
    Trivial,
    Generators(Vec<Int>),
}

impl TwistCharacter {
    pub fn is_trivial(&self) -> bool {
        match self {
            TwistCharacter::Trivial => true,
            TwistCharacter::Generators(v) => v.iter().all(One::is_one),
        }
    }

    /// Integer value along the canonical word of `g`.
    pub fn value(&self, group: &FiniteGroup, g: usize) -> Int {
        match self {
            TwistCharacter::Trivial => Int::one(),
            TwistCharacter::Generators(v) => group.word(g).iter().fold(Int::one(), |acc, &k| acc * &v[k]),
        }
    }

    /// Values in `(Z/N)^x` for every element; errors if not a homomorphism at this level.
    pub fn at_level(&self, group: &FiniteGroup, n: &Int) -> Result<Vec<Int>> {
        let vals: Vec<Int> = (0..group.order()).map(|g| self.value(group, g).mod_floor(n)).collect();
        for a in 0..group.order() {
            for b in 0..group.order() {
                if vals[group.mul(a, b)] != (&vals[a] * &vals[b]).mod_floor(n) {
                    return Err(Error::domain(format!("twist character is not defined at level {n}")));
                }
            }
            if !vals[a].gcd(n).is_one() && !n.is_one() {
                return Err(Error::domain(format!("twist character is not a unit at level {n}")));
            }
        }
        Ok(vals)
    }

    pub(crate) fn pullback(&self, target: &FiniteGroup, source: &FiniteGroup, map: &[usize]) -> TwistCharacter {
        match self {
            TwistCharacter::Trivial => TwistCharacter::Trivial,
            TwistCharacter::Generators(_) => TwistCharacter::Generators(
                source.generators().iter().map(|&h| self.value(target, map[h])).collect(),
            ),
        }
    }
}

/// `(Q/Z[1/P](twist))^rank` with an integral action twisted by the character.
///
/// At level `N` the element `g` acts by `action[g] * chi(g)^twist (mod N')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibleBlock {
    pub twist: i64,
    pub support: PrimeSupport,
    pub rank: usize,
    /// One invertible integer matrix per group element.
    pub action: Vec<IntMatrix>,
}

impl DivisibleBlock {
    pub fn trivial(group: &FiniteGroup, twist: i64, support: PrimeSupport, rank: usize) -> Self {
        DivisibleBlock { twist, support, rank, action: vec![IntMatrix::identity(rank); group.order()] }
    }

    pub fn summand(&self) -> DivisibleSummand {
        DivisibleSummand { twist: self.twist, support: self.support.clone(), rank: self.rank }
    }
}

/// A representation of a finite quotient on a free module over the coefficients,
/// possibly with divisible torsion blocks.
#[derive(Clone, PartialEq)]
pub struct ArtinRep {
    group: Arc<FiniteGroup>,
    coefficients: Coefficients,
    dim: usize,
    /// One matrix per group element, acting on column vectors.
    elements: Vec<QMatrix>,
    divisible: Vec<DivisibleBlock>,
    character: TwistCharacter,
}

impl ArtinRep {
    /// Builds the representation from generator matrices, validating the group law.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        coefficients: Coefficients,
        dim: usize,
        gens: Vec<QMatrix>,
    ) -> Result<Self> {
        coefficients.validate()?;
        if gens.len() != group.generators().len() {
            return Err(Error::domain(format!(
                "expected {} generator matrices for {}, got {}",
                group.generators().len(),
                group.name(),
                gens.len()
            )));
        }
        for m in &gens {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::domain(format!("generator matrix is not {dim}x{dim}")));
            }
            if let Some(bad) = m.entries().iter().find(|v| !coefficients.contains(v)) {
                return Err(Error::domain(format!("entry {bad} does not lie in {coefficients}")));
            }
        }
        let gens: Vec<QMatrix> = gens.iter().map(|m| coefficients.reduce_matrix(m)).collect();
        let elements = elements_from_generators(&group, &coefficients, dim, &gens);
        let rep = ArtinRep {
            group,
            coefficients,
            dim,
            elements,
            divisible: Vec::new(),
            character: TwistCharacter::Trivial,
        };
        rep.check_group_law(&gens)?;
        Ok(rep)
    }

    /// Unchecked constructor from per-element matrices.
    pub(crate) fn from_elements(group: Arc<FiniteGroup>, coefficients: Coefficients, dim: usize, elements: Vec<QMatrix>) -> Self {
        ArtinRep { group, coefficients, dim, elements, divisible: Vec::new(), character: TwistCharacter::Trivial }
    }

    fn check_group_law(&self, gens: &[QMatrix]) -> Result<()> {
        let g = &self.group;
        for a in 0..g.order() {
            for (k, &s) in g.generators().iter().enumerate() {
                let lhs = &self.elements[g.mul(a, s)];
                let rhs = self.coefficients.reduce_matrix(&self.elements[a].mul(&gens[k]));
                if *lhs != rhs {
                    return Err(Error::domain(format!(
                        "generator matrices do not satisfy the relations of {}",
                        g.name()
                    )));
                }
            }
        }
        if !self.elements[g.identity()].is_identity() {
            return Err(Error::domain("identity does not act trivially"));
        }
        if !self.coefficients.is_torsion() {
            for m in gens {
                let det = m.det();
                if det.is_zero() || !self.coefficients.contains(&det.recip()) {
                    return Err(Error::domain(format!("generator matrix is not invertible over {}", self.coefficients)));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>, coefficients: Coefficients, dim: usize) -> Self {
        let elements = vec![QMatrix::identity(dim); group.order()];
        Self::from_elements(group, coefficients, dim, elements)
    }

    pub fn zero(group: Arc<FiniteGroup>, coefficients: Coefficients) -> Self {
        Self::trivial(group, coefficients, 0)
    }

    /// Permutation module on a G-set.
    pub fn permutation(set: &GSet, coefficients: Coefficients) -> Self {
        let n = set.size();
        let g = set.group().clone();
        let elements = (0..g.order())
            .map(|a| {
                let mut m = QMatrix::zeros(n, n);
                for x in 0..n {
                    m.set(set.act(a, x), x, Q::one());
                }
                m
            })
            .collect();
        Self::from_elements(g, coefficients, n, elements)
    }

    pub fn regular(group: Arc<FiniteGroup>, coefficients: Coefficients) -> Self {
        let action = (0..group.order()).map(|a| (0..group.order()).map(|x| group.mul(a, x)).collect()).collect();
        let set = GSet::new(group.clone(), group.order(), action).expect("left regular action");
        Self::permutation(&set, coefficients)
    }

    /// One-dimensional representation with the given values on generators.
    pub fn one_dimensional(group: Arc<FiniteGroup>, coefficients: Coefficients, values: &[i64]) -> Result<Self> {
        let gens = values.iter().map(|&v| QMatrix::new(1, 1, vec![Q::from_integer(Int::from(v))])).collect();
        Self::from_generators(group, coefficients, 1, gens)
    }

    /// Purely divisible representation with trivial action.
    pub fn divisible_trivial(group: Arc<FiniteGroup>, coefficients: Coefficients, twist: i64, support: PrimeSupport, rank: usize) -> Self {
        let block = DivisibleBlock::trivial(&group, twist, support, rank);
        let mut r = Self::zero(group, coefficients);
        r.divisible.push(block);
        r
    }

    pub fn with_divisible(mut self, block: DivisibleBlock) -> Result<Self> {
        if block.action.len() != self.group.order()
            || block.action.iter().any(|m| m.rows() != block.rank || m.cols() != block.rank)
        {
            return Err(Error::domain("divisible block action has the wrong shape"));
        }
        if self.coefficients.is_rational() && block.rank > 0 {
            return Err(Error::domain("divisible torsion vanishes over Q"));
        }
        self.divisible.push(block);
        Ok(self)
    }

    pub fn with_character(mut self, character: TwistCharacter) -> Result<Self> {
        if let TwistCharacter::Generators(v) = &character {
            if v.len() != self.group.generators().len() {
                return Err(Error::domain("twist character needs one value per generator"));
            }
        }
        self.character = character;
        Ok(self)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &QMatrix {
        &self.elements[g]
    }

    pub fn element_matrices(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn generator_matrices(&self) -> Vec<QMatrix> {
        self.group.generators().iter().map(|&g| self.elements[g].clone()).collect()
    }

    pub fn divisible_blocks(&self) -> &[DivisibleBlock] {
        &self.divisible
    }

    pub fn twist_character(&self) -> &TwistCharacter {
        &self.character
    }

    pub fn divisible_module(&self) -> DivisibleModule {
        DivisibleModule::from_summands(self.divisible.iter().map(DivisibleBlock::summand).collect())
    }

    /// The underlying admissible module.
    pub fn module(&self) -> AdmissibleModule {
        AdmissibleModule { finite: FgModule::free(self.coefficients.clone(), self.dim), divisible: self.divisible_module() }
    }

    pub fn has_divisible_part(&self) -> bool {
        self.divisible.iter().any(|b| b.rank > 0 && !b.support.is_empty())
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0 && !self.has_divisible_part()
    }

    /// The finite part alone.
    pub fn finite_part(&self) -> ArtinRep {
        ArtinRep { divisible: Vec::new(), character: TwistCharacter::Trivial, ..self.clone() }
    }

    /// Traces of the finite part.
    pub fn character(&self) -> Vec<Q> {
        self.elements.iter().map(QMatrix::trace).collect()
    }

    /// The divisible part at level `N`: one `(part, matrices mod N')` per block.
    pub fn level_action(&self, n: u64) -> Result<Vec<(DivisibleSummand, Int, Vec<IntMatrix>)>> {
        let mut out = Vec::new();
        for b in &self.divisible {
            let order = b.support.part(&Int::from(n));
            if order <= Int::one() || b.rank == 0 {
                continue;
            }
            let chi = self.character.at_level(&self.group, &order)?;
            let mats = (0..self.group.order())
                .map(|g| {
                    let c = twist_power(&chi[g], b.twist, &order);
                    b.action[g].map(|v| (v * &c).mod_floor(&order))
                })
                .collect();
            out.push((b.summand(), order, mats));
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &ArtinRep) -> Result<ArtinRep> {
        self.same_context(other)?;
        let elements = self.elements.iter().zip(&other.elements).map(|(a, b)| a.block_diag(b)).collect();
        let mut divisible = self.divisible.clone();
        divisible.extend(other.divisible.iter().cloned());
        let character = merge_characters(&self.character, &other.character, &self.divisible, &other.divisible)?;
        Ok(ArtinRep {
            group: self.group.clone(),
            coefficients: self.coefficients.clone(),
            dim: self.dim + other.dim,
            elements,
            divisible,
            character,
        })
    }

    pub fn direct_sum_all(group: Arc<FiniteGroup>, coefficients: Coefficients, reps: &[ArtinRep]) -> Result<ArtinRep> {
        reps.iter().try_fold(Self::zero(group, coefficients), |acc, r| acc.direct_sum(r))
    }

    pub(crate) fn same_context(&self, other: &ArtinRep) -> Result<()> {
        if self.group != other.group {
            return Err(Error::domain(format!(
                "representations of different groups ({} and {})",
                self.group.name(),
                other.group.name()
            )));
        }
        if self.coefficients != other.coefficients {
            return Err(Error::domain(format!(
                "representations over different coefficients ({} and {})",
                self.coefficients, other.coefficients
            )));
        }
        Ok(())
    }

    /// Tensor product of finite parts.
    pub fn tensor(&self, other: &ArtinRep) -> Result<ArtinRep> {
        self.same_context(other)?;
        if self.has_divisible_part() || other.has_divisible_part() {
            return Err(Error::domain("tensor product is only formed on finite parts"));
        }
        let elements = self
            .elements
            .iter()
            .zip(&other.elements)
            .map(|(a, b)| self.coefficients.reduce_matrix(&a.kron(b)))
            .collect();
        Ok(Self::from_elements(self.group.clone(), self.coefficients.clone(), self.dim * other.dim, elements))
    }

    /// Contragredient of the finite part: `g` acts by the transpose of `rho(g^-1)`.
    pub fn dual(&self) -> ArtinRep {
        let g = &self.group;
        let elements = (0..g.order()).map(|a| self.elements[g.inv(a)].transpose()).collect();
        Self::from_elements(g.clone(), self.coefficients.clone(), self.dim, elements)
    }

    /// Change of coefficients along `Z -> R` style maps; entries must lie in the new ring.
    pub fn change_coefficients(&self, target: Coefficients) -> Result<ArtinRep> {
        for m in &self.elements {
            if let Some(bad) = m.entries().iter().find(|v| !target.contains(v)) {
                return Err(Error::domain(format!("entry {bad} does not lie in {target}")));
            }
        }
        let elements = self.elements.iter().map(|m| target.reduce_matrix(m)).collect();
        let divisible = self
            .divisible
            .iter()
            .filter_map(|b| b.support.tensor(&target).map(|support| DivisibleBlock { support, ..b.clone() }))
            .collect();
        Ok(ArtinRep { coefficients: target, elements, divisible, ..self.clone() })
    }

    /// Restriction to the subspace spanned by the columns of `basis`, which must be stable.
    pub fn subrep(&self, basis: &QMatrix) -> Result<ArtinRep> {
        let left = left_inverse(basis).ok_or_else(|| Error::domain("subspace basis is not independent"))?;
        let mut elements = Vec::with_capacity(self.group.order());
        for m in &self.elements {
            let image = m.mul(basis);
            let coords = left.mul(&image);
            if basis.mul(&coords) != image {
                return Err(Error::domain("subspace is not stable under the group"));
            }
            elements.push(coords);
        }
        Ok(Self::from_elements(self.group.clone(), self.coefficients.clone(), basis.cols(), elements))
    }

    /// Action on the quotient by the stable subspace spanned by `sub`, in the basis `complement`.
    pub fn quotient_rep(&self, sub: &QMatrix, complement: &QMatrix) -> Result<(ArtinRep, QMatrix)> {
        let full = sub.hstack(complement);
        let inv = full.inverse().ok_or_else(|| Error::domain("complement does not span the quotient"))?;
        let rows: Vec<usize> = (sub.cols()..full.cols()).collect();
        let proj = inv.select_rows(&rows);
        let elements = self.elements.iter().map(|m| proj.mul(m).mul(complement)).collect();
        Ok((Self::from_elements(self.group.clone(), self.coefficients.clone(), complement.cols(), elements), proj))
    }
}

/// `chi^twist` modulo `order`, inverting for negative twists.
pub(crate) fn twist_power(chi: &Int, twist: i64, order: &Int) -> Int {
    let e = twist.unsigned_abs();
    let base = if twist >= 0 {
        chi.clone()
    } else {
        mod_inverse(chi, order).unwrap_or_else(Int::zero)
    };
    base.modpow(&Int::from(e), order)
}

fn merge_characters(
    a: &TwistCharacter,
    b: &TwistCharacter,
    da: &[DivisibleBlock],
    db: &[DivisibleBlock],
) -> Result<TwistCharacter> {
    let uses = |c: &TwistCharacter, d: &[DivisibleBlock]| !c.is_trivial() && d.iter().any(|x| x.twist != 0);
    match (uses(a, da), uses(b, db)) {
        (false, false) => Ok(if a.is_trivial() { b.clone() } else { a.clone() }),
        (true, false) => Ok(a.clone()),
        (false, true) => Ok(b.clone()),
        (true, true) if a == b => Ok(a.clone()),
        _ => Err(Error::domain("direct sum of divisible parts with different twist characters")),
    }
}

fn elements_from_generators(group: &FiniteGroup, coefficients: &Coefficients, dim: usize, gens: &[QMatrix]) -> Vec<QMatrix> {
    let mut elements = vec![QMatrix::zeros(dim, dim); group.order()];
    for (x, parent) in group.spanning_tree() {
        elements[x] = match parent {
            None => QMatrix::identity(dim),
            Some((p, k)) => coefficients.reduce_matrix(&elements[p].mul(&gens[k])),
        };
    }
    elements
}

/// Some `L` with `L * b = I`, when `b` has independent columns.
pub fn left_inverse(b: &QMatrix) -> Option<QMatrix> {
    if b.cols() == 0 {
        return Some(QMatrix::zeros(0, b.rows()));
    }
    let rows = b.transpose().pivot_columns();
    if rows.len() != b.cols() {
        return None;
    }
    let square = b.select_rows(&rows);
    let inv = square.inverse()?;
    let mut l = QMatrix::zeros(b.cols(), b.rows());
    for (k, &r) in rows.iter().enumerate() {
        for i in 0..b.cols() {
            l.set(i, r, inv.get(i, k).clone());
        }
    }
    Some(l)
}

impl fmt::Debug for ArtinRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArtinRep({} over {}, dim {}", self.group.name(), self.coefficients, self.dim)?;
        if self.has_divisible_part() {
            write!(f, ", divisible {}", self.divisible_module())?;
        }
        write!(f, ")")
    }
}

/// Largest power of each integer fitting in `u64`, for level bookkeeping.
pub fn as_u64(n: &Int) -> Option<u64> {
    if n.is_negative() {
        None
    } else {
        n.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::q_matrix;
    use crate::grouprep::catalog;

    #[test]
    fn sign_rep_of_s3() {
        let g = Arc::new(catalog::symmetric3());
        let sign = ArtinRep::one_dimensional(g.clone(), Coefficients::Integers, &[-1, 1]).unwrap();
        assert_eq!(sign.character().iter().filter(|v| **v == Q::from_integer((-1).into())).count(), 3);
    }

    #[test]
    fn rejects_relations_violation() {
        let g = Arc::new(catalog::cyclic(3));
        let bad = q_matrix(&[&[-1]]);
        assert!(ArtinRep::from_generators(g, Coefficients::Rationals, 1, vec![bad]).is_err());
    }

    #[test]
    fn rejects_entries_outside_ring() {
        let g = Arc::new(catalog::cyclic(2));
        let m = QMatrix::new(1, 1, vec![Q::new(1.into(), 2.into())]);
        assert!(ArtinRep::from_generators(g, Coefficients::Integers, 1, vec![m]).is_err());
    }

    #[test]
    fn level_action_of_cyclotomic_twist() {
        let g = Arc::new(catalog::cyclic(2));
        let block = DivisibleBlock::trivial(&g, 1, PrimeSupport::away_from(3), 1);
        let r = ArtinRep::zero(g, Coefficients::Integers)
            .with_divisible(block)
            .unwrap()
            .with_character(TwistCharacter::Generators(vec![Int::from(-1)]))
            .unwrap();
        let lv = r.level_action(4).unwrap();
        assert_eq!(lv.len(), 1);
        assert_eq!(lv[0].1, Int::from(4));
        assert_eq!(lv[0].2[1].get(0, 0), &Int::from(3));
    }
}
