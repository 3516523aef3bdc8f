//! Geometric data over a field: components, divisible cohomology and the builders.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::coefficients::is_prime;
use crate::exactalg::snf::int_det;
use crate::exactalg::{Int, IntMatrix, PrimeSupport};
use crate::grouprep::catalog;
use crate::grouprep::{DivisibleBlock, FiniteGroup, GSet, MarkedProfinite, TwistCharacter};

/// A field through a finite Galois quotient, with its characteristic exponent and cyclotomic character.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseField {
    pub galois: MarkedProfinite,
    pub char_exponent: u64,
    pub cyclotomic: TwistCharacter,
}

impl BaseField {
    pub fn new(galois: MarkedProfinite, char_exponent: u64, cyclotomic: TwistCharacter) -> Result<Self> {
        if char_exponent != 1 && !is_prime(char_exponent) {
            return Err(Error::domain(format!("characteristic exponent must be 1 or a prime, got {char_exponent}")));
        }
        if let TwistCharacter::Generators(v) = &cyclotomic {
            if v.len() != galois.quotient.generators().len() {
                return Err(Error::domain("cyclotomic character needs one value per generator"));
            }
        }
        Ok(BaseField { galois, char_exponent, cyclotomic })
    }

    /// An algebraically closed field of characteristic exponent `p`.
    pub fn closed(char_exponent: u64) -> Result<Self> {
        let trivial = Arc::new(catalog::cyclic(1));
        Self::new(MarkedProfinite::unmarked(trivial), char_exponent, TwistCharacter::Trivial)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.galois.quotient
    }

    /// `Q/Z[1/p]`.
    pub fn support(&self) -> PrimeSupport {
        PrimeSupport::away_from(self.char_exponent)
    }
}

/// Connected components and the divisible cohomology `mu^n` of a smooth variety over the field.
#[derive(Clone, Debug, PartialEq)]
pub struct GeomDatum {
    pub base: BaseField,
    pub pi0: GSet,
    /// Degree `n >= 1` to its divisible blocks over `Z`.
    pub mu: BTreeMap<usize, Vec<DivisibleBlock>>,
    pub dimension: usize,
}

impl GeomDatum {
    pub fn new(base: BaseField, pi0: GSet, mu: BTreeMap<usize, Vec<DivisibleBlock>>, dimension: usize) -> Result<Self> {
        if pi0.size() == 0 {
            return Err(Error::domain("pi0 must be nonempty"));
        }
        if pi0.group() != base.group() {
            return Err(Error::domain("pi0 is not a set over the Galois quotient"));
        }
        let order = base.group().order();
        for (&n, blocks) in &mu {
            if n == 0 {
                return Err(Error::domain("mu is indexed by degrees n >= 1"));
            }
            let nonzero = blocks.iter().any(|b| b.rank > 0);
            if nonzero && n > 2 * dimension {
                return Err(Error::domain(format!("mu({n}) must vanish above degree {}", 2 * dimension)));
            }
            for b in blocks {
                if b.action.len() != order || b.action.iter().any(|m| m.rows() != b.rank || !m.is_square()) {
                    return Err(Error::domain(format!("mu({n}) block action has the wrong shape")));
                }
            }
        }
        let mu = mu.into_iter().filter(|(_, b)| b.iter().any(|x| x.rank > 0)).collect();
        Ok(GeomDatum { base, pi0, mu, dimension })
    }

    pub fn mu(&self, n: usize) -> &[DivisibleBlock] {
        self.mu.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `mu^0 = (Q/Z')^{pi0}` with the permutation action.
    pub fn mu0(&self) -> DivisibleBlock {
        permutation_block(&self.pi0, 0, self.base.support())
    }

    /// Divisible blocks by degree including `mu^0`: ranks are the Betti numbers.
    fn betti_blocks(&self) -> BTreeMap<usize, Vec<DivisibleBlock>> {
        let mut out = self.mu.clone();
        out.insert(0, vec![self.mu0()]);
        out
    }
}

fn permutation_block(set: &GSet, twist: i64, support: PrimeSupport) -> DivisibleBlock {
    let n = set.size();
    let action = (0..set.group().order())
        .map(|g| {
            let mut m = IntMatrix::zeros(n, n);
            for x in 0..n {
                m.set(set.act(g, x), x, Int::one());
            }
            m
        })
        .collect();
    DivisibleBlock { twist, support, rank: n, action }
}

/// Per-element integer matrices from generator matrices, checking the group law.
pub fn expand_generators(group: &FiniteGroup, dim: usize, gens: &[IntMatrix]) -> Result<Vec<IntMatrix>> {
    if gens.len() != group.generators().len() || gens.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        return Err(Error::domain("one square matrix per generator is required"));
    }
    let mut elements = vec![IntMatrix::zeros(dim, dim); group.order()];
    for (x, parent) in group.spanning_tree() {
        elements[x] = match parent {
            None => IntMatrix::identity(dim),
            Some((p, k)) => elements[p].mul(&gens[k]),
        };
    }
    for a in 0..group.order() {
        for (k, &s) in group.generators().iter().enumerate() {
            if elements[group.mul(a, s)] != elements[a].mul(&gens[k]) {
                return Err(Error::domain(format!("matrices do not satisfy the relations of {}", group.name())));
            }
        }
    }
    Ok(elements)
}

/// `Λ^k` of an integer matrix in the basis of increasing `k`-subsets.
pub fn exterior_power(a: &IntMatrix, k: usize) -> IntMatrix {
    let subsets = subsets(a.rows(), k);
    let mut out = IntMatrix::zeros(subsets.len(), subsets.len());
    for (i, rows) in subsets.iter().enumerate() {
        for (j, cols) in subsets.iter().enumerate() {
            let minor = a.select_rows(rows).select_columns(cols);
            out.set(i, j, int_det(&minor));
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn point(base: &BaseField) -> GeomDatum {
    finite_etale(base, GSet::trivial(base.group().clone(), 1)).expect("point")
}

/// The finite étale algebra whose geometric points form `set`.
pub fn finite_etale(base: &BaseField, set: GSet) -> Result<GeomDatum> {
    GeomDatum::new(base.clone(), set, BTreeMap::new(), 0)
}

/// `P^n`: `mu(2k) = Q/Z'(-k)` for `1 <= k <= n`.
pub fn projective_space(base: &BaseField, n: usize) -> GeomDatum {
    let g = base.group();
    let mu = (1..=n)
        .map(|k| (2 * k, vec![DivisibleBlock::trivial(g, -(k as i64), base.support(), 1)]))
        .collect();
    GeomDatum::new(base.clone(), GSet::trivial(g.clone(), 1), mu, n).expect("projective space")
}

/// Smooth projective curve of genus `g` with trivial action on `mu(1)`.
pub fn curve(base: &BaseField, genus: usize) -> GeomDatum {
    let identity = vec![IntMatrix::identity(2 * genus); base.group().generators().len()];
    curve_with_action(base, genus, &identity).expect("trivial action")
}

/// Curve of genus `g` with the given generator action on `mu(1) = (Q/Z')^{2g}`.
pub fn curve_with_action(base: &BaseField, genus: usize, gens: &[IntMatrix]) -> Result<GeomDatum> {
    let g = base.group();
    let action = expand_generators(g, 2 * genus, gens)?;
    let mut mu = BTreeMap::new();
    mu.insert(1, vec![DivisibleBlock { twist: 0, support: base.support(), rank: 2 * genus, action }]);
    mu.insert(2, vec![DivisibleBlock::trivial(g, -1, base.support(), 1)]);
    GeomDatum::new(base.clone(), GSet::trivial(g.clone(), 1), mu, 1)
}

/// Abelian variety of dimension `g`: `mu(n) = Λ^n mu(1)`, rank `C(2g, n)`, twist `-floor(n/2)`.
pub fn abelian_variety(base: &BaseField, dim: usize) -> GeomDatum {
    let identity = vec![IntMatrix::identity(2 * dim); base.group().generators().len()];
    abelian_variety_with_action(base, dim, &identity).expect("trivial action")
}

pub fn abelian_variety_with_action(base: &BaseField, dim: usize, gens: &[IntMatrix]) -> Result<GeomDatum> {
    let g = base.group();
    let action = expand_generators(g, 2 * dim, gens)?;
    let mut mu = BTreeMap::new();
    for n in 1..=2 * dim {
        let powers: Vec<IntMatrix> = action.iter().map(|a| exterior_power(a, n)).collect();
        let rank = powers[0].rows();
        mu.insert(n, vec![DivisibleBlock { twist: -((n / 2) as i64), support: base.support(), rank, action: powers }]);
    }
    let datum = GeomDatum::new(base.clone(), GSet::trivial(g.clone(), 1), mu, dim)?;
    let top = datum.mu(2 * dim);
    debug_assert!(dim == 0 || (top.len() == 1 && top[0].rank == 1 && top[0].twist == -(dim as i64)));
    Ok(datum)
}

pub fn disjoint_union(x: &GeomDatum, y: &GeomDatum) -> Result<GeomDatum> {
    if x.base != y.base {
        return Err(Error::domain("disjoint union of data over different fields"));
    }
    let mut mu = x.mu.clone();
    for (&n, blocks) in &y.mu {
        mu.entry(n).or_default().extend(blocks.iter().cloned());
    }
    GeomDatum::new(x.base.clone(), x.pi0.disjoint_union(&y.pi0)?, mu, x.dimension.max(y.dimension))
}

/// Künneth at every level: Betti blocks multiply, twists add, actions are Kronecker products.
pub fn product(x: &GeomDatum, y: &GeomDatum) -> Result<GeomDatum> {
    if x.base != y.base {
        return Err(Error::domain("product of data over different fields"));
    }
    let (bx, by) = (x.betti_blocks(), y.betti_blocks());
    let mut mu: BTreeMap<usize, Vec<DivisibleBlock>> = BTreeMap::new();
    for (&a, xs) in &bx {
        for (&b, ys) in &by {
            if a + b == 0 {
                continue;
            }
            for u in xs {
                for v in ys {
                    let action = u.action.iter().zip(&v.action).map(|(p, q)| p.kron(q)).collect();
                    mu.entry(a + b).or_default().push(DivisibleBlock {
                        twist: u.twist + v.twist,
                        support: x.base.support(),
                        rank: u.rank * v.rank,
                        action,
                    });
                }
            }
        }
    }
    GeomDatum::new(x.base.clone(), x.pi0.product(&y.pi0)?, mu, x.dimension + y.dimension)
}

/// Total rank of `mu(n)`.
pub fn mu_rank(x: &GeomDatum, n: usize) -> usize {
    x.mu(n).iter().map(|b| b.rank).sum()
}
