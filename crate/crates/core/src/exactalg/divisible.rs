//! Divisible torsion modules `(Q/Z[1/P](m))^r` tracked symbolically.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use super::coefficients::{prime_part, strip_prime, Coefficients};
use super::matrix::{Int, IntMatrix};
use super::module::{AdmissibleModule, FgModule};
use super::snf::smith_normal_form;

/// Which primary components of `Q/Z` survive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeSupport {
    /// `Q/Z[1/P]`: every prime except those listed.
    Inverting(BTreeSet<u64>),
    /// `⊕_{l in S} Q_l/Z_l`.
    Only(BTreeSet<u64>),
}

impl PrimeSupport {
    pub fn all() -> Self {
        PrimeSupport::Inverting(BTreeSet::new())
    }

    /// `Q/Z[1/p]`, or all of `Q/Z` when `p <= 1`.
    pub fn away_from(p: u64) -> Self {
        let mut s = BTreeSet::new();
        if p > 1 {
            s.insert(p);
        }
        PrimeSupport::Inverting(s)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSupport::Only(s) if s.is_empty())
    }

    pub fn contains(&self, l: u64) -> bool {
        match self {
            PrimeSupport::Inverting(p) => !p.contains(&l),
            PrimeSupport::Only(s) => s.contains(&l),
        }
    }

    /// The part of `n` supported on these primes.
    pub fn part(&self, n: &Int) -> Int {
        match self {
            PrimeSupport::Inverting(p) => p.iter().fold(n.clone(), |acc, &q| strip_prime(&acc, q)),
            PrimeSupport::Only(s) => s.iter().fold(Int::one(), |acc, &l| acc * prime_part(n, l)),
        }
    }

    /// Support of `Q/Z[1/P] ⊗ R`; `None` when the tensor product vanishes.
    pub fn tensor(&self, r: &Coefficients) -> Option<PrimeSupport> {
        let out = match r {
            Coefficients::Integers => self.clone(),
            Coefficients::Rationals | Coefficients::IntegersMod(_) => return None,
            Coefficients::IntegersLocalizedAt(l) => {
                if self.contains(*l) {
                    PrimeSupport::Only([*l].into_iter().collect())
                } else {
                    return None;
                }
            }
            Coefficients::IntegersInverting(ps) => match self {
                PrimeSupport::Inverting(p) => PrimeSupport::Inverting(p | ps),
                PrimeSupport::Only(s) => PrimeSupport::Only(s - ps),
            },
        };
        if out.is_empty() {
            None
        } else {
            Some(out)
        }
    }
}

impl fmt::Display for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            PrimeSupport::Inverting(p) if p.is_empty() => write!(f, "Q/Z"),
            PrimeSupport::Inverting(p) => write!(f, "Q/Z[1/{}]", list(p)),
            PrimeSupport::Only(s) => write!(f, "Q/Z{{{}}}", list(s)),
        }
    }
}

/// One summand `(Q/Z[1/P](twist))^rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisibleSummand {
    pub twist: i64,
    pub support: PrimeSupport,
    pub rank: usize,
}

/// A finite direct sum of divisible summands, kept merged and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DivisibleModule {
    summands: Vec<DivisibleSummand>,
}

/// `(Z/N')^rank` tagged with the twist of the summand it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPart {
    pub twist: i64,
    pub order: Int,
    pub rank: usize,
}

impl DivisibleModule {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(twist: i64, support: PrimeSupport, rank: usize) -> Self {
        Self::from_summands(vec![DivisibleSummand { twist, support, rank }])
    }

    pub fn from_summands(summands: Vec<DivisibleSummand>) -> Self {
        let mut merged: Vec<DivisibleSummand> = Vec::new();
        for s in summands {
            if s.rank == 0 || s.support.is_empty() {
                continue;
            }
            match merged.iter_mut().find(|m| m.twist == s.twist && m.support == s.support) {
                Some(m) => m.rank += s.rank,
                None => merged.push(s),
            }
        }
        merged.sort();
        DivisibleModule { summands: merged }
    }

    pub fn summands(&self) -> &[DivisibleSummand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.summands.iter().map(|s| s.rank).sum()
    }

    /// Rank of the `l`-primary part, i.e. the number of copies of `Q_l/Z_l`.
    pub fn rank_at(&self, l: u64) -> usize {
        self.summands.iter().filter(|s| s.support.contains(l)).map(|s| s.rank).sum()
    }

    pub fn direct_sum(&self, other: &DivisibleModule) -> DivisibleModule {
        let mut all = self.summands.clone();
        all.extend(other.summands.iter().cloned());
        Self::from_summands(all)
    }

    /// Shifts every twist by `m`.
    pub fn twist(&self, m: i64) -> DivisibleModule {
        Self::from_summands(
            self.summands.iter().map(|s| DivisibleSummand { twist: s.twist + m, ..s.clone() }).collect(),
        )
    }

    pub fn tensor(&self, r: &Coefficients) -> DivisibleModule {
        Self::from_summands(
            self.summands
                .iter()
                .filter_map(|s| s.support.tensor(r).map(|support| DivisibleSummand { support, ..s.clone() }))
                .collect(),
        )
    }

    /// `D[N]`, the `N`-torsion, one part per summand.
    pub fn level(&self, n: u64) -> Vec<LevelPart> {
        let n = Int::from(n);
        self.summands
            .iter()
            .filter_map(|s| {
                let order = s.support.part(&n);
                (order > Int::one()).then(|| LevelPart { twist: s.twist, order, rank: s.rank })
            })
            .collect()
    }

    /// `D[N]` as a plain module over `Z`.
    pub fn level_module(&self, n: u64) -> FgModule {
        let mut factors = Vec::new();
        for part in self.level(n) {
            factors.extend(std::iter::repeat_n(part.order.clone(), part.rank));
        }
        FgModule::from_factors(Coefficients::Integers, factors, 0)
    }
}

/// `N'` divides `(N*M)'` for every summand, so `D[N]` sits inside `D[NM]`.
pub fn level_embeds(d: &DivisibleModule, n: u64, m: u64) -> bool {
    let small = d.level(n);
    let big = d.level(n * m);
    small.iter().all(|p| {
        big.iter().any(|q| q.twist == p.twist && q.rank >= p.rank && (q.order.clone() % &p.order).is_zero())
    })
}

impl fmt::Display for DivisibleModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                let base = format!("{}({})", s.support, s.twist);
                if s.rank == 1 {
                    base
                } else {
                    format!("({base})^{}", s.rank)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::int;

    #[test]
    fn merges_equal_summands() {
        let d = DivisibleModule::from_summands(vec![
            DivisibleSummand { twist: 0, support: PrimeSupport::away_from(3), rank: 1 },
            DivisibleSummand { twist: 0, support: PrimeSupport::away_from(3), rank: 1 },
            DivisibleSummand { twist: -1, support: PrimeSupport::away_from(3), rank: 0 },
        ]);
        assert_eq!(d.summands().len(), 1);
        assert_eq!(d.total_rank(), 2);
    }

    #[test]
    fn level_six_away_from_three() {
        let d = DivisibleModule::single(0, PrimeSupport::away_from(3), 2);
        let parts = d.level(6);
        assert_eq!(parts, vec![LevelPart { twist: 0, order: int(2), rank: 2 }]);
        assert_eq!(d.level_module(6).invariant_factors(), &[int(2), int(2)]);
    }

    #[test]
    fn tensor_with_rings() {
        let d = DivisibleModule::single(-1, PrimeSupport::away_from(5), 1);
        assert!(d.tensor(&Coefficients::Rationals).is_zero());
        assert!(d.tensor(&Coefficients::IntegersLocalizedAt(5)).is_zero());
        let l = d.tensor(&Coefficients::IntegersLocalizedAt(3));
        assert_eq!(l.rank_at(3), 1);
        assert_eq!(l.rank_at(2), 0);
    }
}

/// Kernel of an integer matrix acting on `(Q/Z'(twist))^cols`: finite torsion plus a divisible part.
pub fn divisible_map_kernel(a: &IntMatrix, twist: i64, support: &PrimeSupport, coefficients: &Coefficients) -> AdmissibleModule {
    let s = smith_normal_form(a);
    let factors = s.invariant_factors().iter().map(|d| support.part(d)).filter(|d| !d.is_one()).collect();
    AdmissibleModule {
        finite: FgModule::from_factors(coefficients.clone(), factors, 0),
        divisible: DivisibleModule::single(twist, support.clone(), a.cols() - s.rank()),
    }
}

/// Cokernel of an integer matrix `(Q/Z'(twist))^cols -> (Q/Z'(twist))^rows`; always divisible.
pub fn divisible_map_cokernel(a: &IntMatrix, twist: i64, support: &PrimeSupport) -> DivisibleModule {
    DivisibleModule::single(twist, support.clone(), a.rows() - smith_normal_form(a).rank())
}
