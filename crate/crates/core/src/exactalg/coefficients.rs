use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{Int, Q, QMatrix};
use crate::error::{Error, Result};

/// Coefficient rings: localizations of `Z`, `Q`, and `Z/n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Rationals,
    IntegersLocalizedAt(u64),
    IntegersMod(u64),
    /// `Z[1/P]` for a nonempty finite set of primes `P`.
    IntegersInverting(BTreeSet<u64>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.insert(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

/// Removes every factor of `p` from `n`.
pub fn strip_prime(n: &Int, p: u64) -> Int {
    let p = Int::from(p);
    let mut n = n.clone();
    if n.is_zero() {
        return n;
    }
    while n.is_multiple_of(&p) {
        n /= &p;
    }
    n
}

/// The `p`-primary part of `n`.
pub fn prime_part(n: &Int, p: u64) -> Int {
    if n.is_zero() {
        return Int::zero();
    }
    n.abs() / strip_prime(&n.abs(), p)
}

impl Coefficients {
    pub fn localized(p: u64) -> Result<Self> {
        let c = Coefficients::IntegersLocalizedAt(p);
        c.validate()?;
        Ok(c)
    }

    pub fn modulo(n: u64) -> Result<Self> {
        let c = Coefficients::IntegersMod(n);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Coefficients::IntegersLocalizedAt(p) if !is_prime(*p) => {
                Err(Error::domain(format!("localization requires a prime, got {p}")))
            }
            Coefficients::IntegersMod(n) if *n < 2 => {
                Err(Error::domain(format!("modulus must be at least 2, got {n}")))
            }
            Coefficients::IntegersInverting(ps) if ps.is_empty() || ps.iter().any(|p| !is_prime(*p)) => {
                Err(Error::domain("inverted set must be a nonempty set of primes"))
            }
            _ => Ok(()),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Coefficients::Rationals)
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, Coefficients::IntegersMod(_))
    }

    /// `R[1/p]`; `p <= 1` leaves `R` unchanged.
    pub fn invert(&self, p: u64) -> Coefficients {
        if p <= 1 {
            return self.clone();
        }
        match self {
            Coefficients::Integers => Coefficients::IntegersInverting([p].into_iter().collect()),
            Coefficients::IntegersInverting(ps) => {
                let mut ps = ps.clone();
                ps.insert(p);
                Coefficients::IntegersInverting(ps)
            }
            Coefficients::IntegersLocalizedAt(l) if *l == p => Coefficients::Rationals,
            Coefficients::IntegersMod(n) => {
                let m = strip_prime(&Int::from(*n), p).to_u64().unwrap_or(1);
                if m <= 1 {
                    // Z/n[1/p] is the zero ring when n is a power of p.
                    Coefficients::IntegersMod(1)
                } else {
                    Coefficients::IntegersMod(m)
                }
            }
            other => other.clone(),
        }
    }

    /// Whether the ring is zero (only possible after inverting a prime dividing a modulus).
    pub fn is_zero_ring(&self) -> bool {
        matches!(self, Coefficients::IntegersMod(n) if *n <= 1)
    }

    /// Whether a nonzero integer is a unit.
    pub fn is_unit(&self, d: &Int) -> bool {
        if d.is_zero() {
            return matches!(self, Coefficients::IntegersMod(1));
        }
        match self {
            Coefficients::Rationals => true,
            Coefficients::Integers => d.abs().is_one(),
            Coefficients::IntegersLocalizedAt(p) => !d.is_multiple_of(&Int::from(*p)),
            Coefficients::IntegersInverting(ps) => {
                ps.iter().fold(d.abs(), |acc, &p| strip_prime(&acc, p)).is_one()
            }
            Coefficients::IntegersMod(n) => d.gcd(&Int::from(*n)).is_one(),
        }
    }

    /// The non-unit part of a nonzero integer; `Z/n` takes the gcd with `n`.
    pub fn nonunit_part(&self, d: &Int) -> Int {
        let d = d.abs();
        match self {
            Coefficients::Rationals => Int::one(),
            Coefficients::Integers => d,
            Coefficients::IntegersLocalizedAt(p) => prime_part(&d, *p),
            Coefficients::IntegersInverting(ps) => ps.iter().fold(d, |acc, &p| strip_prime(&acc, p)),
            Coefficients::IntegersMod(n) => d.gcd(&Int::from(*n)),
        }
    }

    /// Whether the rational number lies in the ring (for `Z/n`: denominator prime to `n`).
    pub fn contains(&self, x: &Q) -> bool {
        match self {
            Coefficients::Rationals => true,
            _ => self.is_unit(x.denom()),
        }
    }

    /// Canonical representative: reduces modulo `n` for `Z/n`.
    pub fn reduce(&self, x: &Q) -> Q {
        match self {
            Coefficients::IntegersMod(n) => {
                let n = Int::from(*n);
                let inv = mod_inverse(x.denom(), &n).unwrap_or_else(Int::zero);
                Q::from_integer((x.numer() * inv).mod_floor(&n))
            }
            _ => x.clone(),
        }
    }

    pub fn reduce_matrix(&self, m: &QMatrix) -> QMatrix {
        match self {
            Coefficients::IntegersMod(_) => m.map(|v| self.reduce(v)),
            _ => m.clone(),
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Coefficients::IntegersMod(n) => Some(*n),
            _ => None,
        }
    }
}

pub fn mod_inverse(a: &Int, n: &Int) -> Option<Int> {
    let e = a.mod_floor(n).extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::IntegersLocalizedAt(p) => write!(f, "Zp:{p}"),
            Coefficients::IntegersMod(n) => write!(f, "Zmod:{n}"),
            Coefficients::IntegersInverting(ps) => {
                let s: Vec<String> = ps.iter().map(u64::to_string).collect();
                write!(f, "Zinv:{}", s.join(","))
            }
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_u64 = |t: &str| {
            t.trim().parse::<u64>().map_err(|_| Error::parse(format!("bad integer in coefficients '{s}'")))
        };
        let c = match s {
            "Z" => Coefficients::Integers,
            "Q" => Coefficients::Rationals,
            _ => {
                if let Some(p) = s.strip_prefix("Zp:") {
                    Coefficients::IntegersLocalizedAt(parse_u64(p)?)
                } else if let Some(n) = s.strip_prefix("Zmod:") {
                    Coefficients::IntegersMod(parse_u64(n)?)
                } else if let Some(ps) = s.strip_prefix("Zinv:") {
                    let set = ps.split(',').map(parse_u64).collect::<Result<BTreeSet<_>>>()?;
                    Coefficients::IntegersInverting(set)
                } else {
                    return Err(Error::parse(format!("unknown coefficient ring '{s}'")));
                }
            }
        };
        c.validate()?;
        Ok(c)
    }
}
