//! Simple normal crossing configurations with their restriction data.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::{Int, IntMatrix};
use crate::grouprep::DivisibleBlock;
use crate::omega0field::geom::mu_rank;
use crate::omega0field::{BaseField, GeomDatum};

/// A pairwise intersection `X_ij` with its restrictions from `X_i` and `X_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Intersection {
    pub datum: GeomDatum,
    /// For each side, the component of `X_i` (resp. `X_j`) containing each component of `X_ij`.
    pub pi0_maps: [Vec<usize>; 2],
    /// Degree `m >= 1` to the restriction matrices `mu^m(X_i) -> mu^m(X_ij)` for each side.
    pub mu_maps: BTreeMap<usize, [IntMatrix; 2]>,
}

/// Components indexed by `0..n` and their pairwise intersections; triple intersections are empty.
#[derive(Clone, Debug, PartialEq)]
pub struct SNCData {
    pub base: BaseField,
    pub components: Vec<GeomDatum>,
    pub intersections: BTreeMap<(usize, usize), Intersection>,
}

/// Block-diagonal action of `g` on the concatenated blocks.
pub(crate) fn block_action(blocks: &[DivisibleBlock], g: usize) -> IntMatrix {
    let mats: Vec<IntMatrix> = blocks.iter().map(|b| b.action[g].clone()).collect();
    IntMatrix::direct_sum_all(&mats)
}

/// The twist of each coordinate of the concatenated blocks.
pub(crate) fn coordinate_twists(blocks: &[DivisibleBlock]) -> Vec<i64> {
    blocks.iter().flat_map(|b| std::iter::repeat_n(b.twist, b.rank)).collect()
}

/// Matrix of `R[pi0(X)] -> R[pi0(X_ij)]`, sending a component to the sum of the components over it.
pub(crate) fn pi0_matrix(map: &[usize], source_size: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(map.len(), source_size);
    for (c, &x) in map.iter().enumerate() {
        m.set(c, x, Int::from(1));
    }
    m
}

impl SNCData {
    pub fn new(
        base: BaseField,
        components: Vec<GeomDatum>,
        intersections: BTreeMap<(usize, usize), Intersection>,
    ) -> Result<Self> {
        if components.iter().any(|c| c.base != base) {
            return Err(Error::domain("every component must live over the same field"));
        }
        for (&(i, j), x) in &intersections {
            if i >= j || j >= components.len() {
                return Err(Error::domain(format!("intersection ({i}, {j}) does not name two components i < j")));
            }
            if x.datum.base != base {
                return Err(Error::domain(format!("intersection ({i}, {j}) lives over another field")));
            }
            let min_dim = components[i].dimension.min(components[j].dimension);
            if x.datum.dimension >= min_dim {
                return Err(Error::domain(format!(
                    "intersection ({i}, {j}) has dimension {} but the components have dimension {min_dim}",
                    x.datum.dimension
                )));
            }
            for (side, &k) in [i, j].iter().enumerate() {
                check_pi0_map(&components[k], &x.datum, &x.pi0_maps[side], (i, j))?;
            }
            for (&m, [a, b]) in &x.mu_maps {
                check_mu_map(&components[i], &x.datum, m, a, (i, j))?;
                check_mu_map(&components[j], &x.datum, m, b, (i, j))?;
            }
            for m in 1..=2 * x.datum.dimension {
                let needed = mu_rank(&x.datum, m) > 0
                    && (mu_rank(&components[i], m) > 0 || mu_rank(&components[j], m) > 0);
                if needed && !x.mu_maps.contains_key(&m) {
                    return Err(Error::domain(format!("missing restriction map for mu^{m} on ({i}, {j})")));
                }
            }
        }
        Ok(SNCData { base, components, intersections })
    }

    /// A single smooth component.
    pub fn single(x: GeomDatum) -> Self {
        SNCData { base: x.base.clone(), components: vec![x], intersections: BTreeMap::new() }
    }

    /// Restriction matrix on `mu^m` from component `k` of the pair, zero when absent.
    pub(crate) fn mu_map(&self, pair: (usize, usize), side: usize, m: usize) -> IntMatrix {
        let x = &self.intersections[&pair];
        let k = if side == 0 { pair.0 } else { pair.1 };
        x.mu_maps
            .get(&m)
            .map(|maps| maps[side].clone())
            .unwrap_or_else(|| IntMatrix::zeros(mu_rank(&x.datum, m), mu_rank(&self.components[k], m)))
    }
}

fn check_pi0_map(comp: &GeomDatum, x: &GeomDatum, map: &[usize], pair: (usize, usize)) -> Result<()> {
    if map.len() != x.pi0.size() || map.iter().any(|&c| c >= comp.pi0.size()) {
        return Err(Error::domain(format!("pi0 map on {pair:?} has the wrong shape")));
    }
    let g = comp.base.group();
    for a in 0..g.order() {
        for (c, &target) in map.iter().enumerate() {
            if map[x.pi0.act(a, c)] != comp.pi0.act(a, target) {
                return Err(Error::domain(format!("pi0 map on {pair:?} is not Galois equivariant")));
            }
        }
    }
    Ok(())
}

fn check_mu_map(comp: &GeomDatum, x: &GeomDatum, m: usize, a: &IntMatrix, pair: (usize, usize)) -> Result<()> {
    let (src, tgt) = (comp.mu(m), x.mu(m));
    if a.rows() != mu_rank(x, m) || a.cols() != mu_rank(comp, m) {
        return Err(Error::domain(format!("mu^{m} map on {pair:?} has the wrong shape")));
    }
    let (ts, tt) = (coordinate_twists(src), coordinate_twists(tgt));
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if ts[c] != tt[r] && *a.get(r, c) != Int::from(0) {
                return Err(Error::domain(format!("mu^{m} map on {pair:?} mixes Tate twists")));
            }
        }
    }
    for g in comp.base.group().generators() {
        if a.mul(&block_action(src, *g)) != block_action(tgt, *g).mul(a) {
            return Err(Error::domain(format!("mu^{m} map on {pair:?} is not Galois equivariant")));
        }
    }
    Ok(())
}
