//! The descent complex, its spectral sequence pages and the abutment.

use std::collections::{BTreeMap, BTreeSet};

use super::data::{coordinate_twists, pi0_matrix, SNCData};
use crate::error::{Error, Result};
use crate::exactalg::divisible::{divisible_map_cokernel, divisible_map_kernel};
use crate::exactalg::{AdmissibleModule, Coefficients, DivisibleModule, FgModule, IntMatrix, PrimeSupport, QMatrix};
use crate::grouprep::{ArtinRep, DivisibleBlock, EquivariantMap};
use crate::omega0field::pushforward::divisible_rep;
use crate::omega0field::{omega0_pushforward, DiscreteComplex, GeomDatum};

/// A map on a representation's finite part and on its concatenated divisible blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct CechMap {
    pub finite: QMatrix,
    pub divisible: IntMatrix,
}

impl CechMap {
    fn zeros(source: &ArtinRep, target: &ArtinRep) -> Self {
        CechMap {
            finite: QMatrix::zeros(target.dim(), source.dim()),
            divisible: IntMatrix::zeros(divisible_rank(target), divisible_rank(source)),
        }
    }
}

fn divisible_rank(r: &ArtinRep) -> usize {
    r.divisible_blocks().iter().map(|b| b.rank).sum()
}

/// Cosimplicial degrees 0 (components) and 1 (pairwise intersections) with the Čech codifferential.
#[derive(Clone, Debug)]
pub struct DescentComplex {
    pub coefficients: Coefficients,
    pub terms: [DiscreteComplex; 2],
    /// Cohomological degree to `d: terms[0] -> terms[1]`.
    pub differential: BTreeMap<i64, CechMap>,
}

/// Restriction from component `x` to the intersection `pair` on cohomological degree `k`.
fn restriction(s: &SNCData, pair: (usize, usize), side: usize, k: i64, source: &ArtinRep, target: &ArtinRep) -> CechMap {
    let x = &s.intersections[&pair];
    let comp = if side == 0 { &s.components[pair.0] } else { &s.components[pair.1] };
    let mut out = CechMap::zeros(source, target);
    if k == 0 && source.dim() > 0 {
        out.finite = pi0_matrix(&x.pi0_maps[side], comp.pi0.size()).to_q();
    } else if k > 0 {
        let c = source.coefficients();
        if c.is_torsion() && source.dim() + target.dim() > 0 {
            out.finite = c.reduce_matrix(&s.mu_map(pair, side, k as usize).to_q());
        } else if divisible_rank(source) + divisible_rank(target) > 0 {
            out.divisible = s.mu_map(pair, side, k as usize - 1);
        }
    }
    out
}

pub fn descent_complex(s: &SNCData, r: &Coefficients) -> Result<DescentComplex> {
    let group = s.base.group().clone();
    let rp = r.invert(s.base.char_exponent);
    let comps = s.components.iter().map(|x| omega0_pushforward(x, r)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = s.intersections.keys().copied().collect();
    let inters = pairs
        .iter()
        .map(|p| omega0_pushforward(&s.intersections[p].datum, r))
        .collect::<Result<Vec<_>>>()?;
    let sum = |cs: &[DiscreteComplex]| -> Result<DiscreteComplex> {
        cs.iter().try_fold(DiscreteComplex::zero(group.clone(), rp.clone()), |acc, c| acc.direct_sum(c))
    };
    let terms = [sum(&comps)?, sum(&inters)?];
    let degrees: BTreeSet<i64> = terms.iter().flat_map(|t| t.support()).collect();
    let mut differential = BTreeMap::new();
    for &k in &degrees {
        let (src, tgt) = (terms[0].degree(k), terms[1].degree(k));
        let mut d = CechMap::zeros(&src, &tgt);
        let offsets = |reps: Vec<ArtinRep>| {
            let mut acc = (0, 0);
            reps.into_iter()
                .map(|r| {
                    let o = acc;
                    acc = (acc.0 + r.dim(), acc.1 + divisible_rank(&r));
                    (o, r)
                })
                .collect::<Vec<_>>()
        };
        let comp_offsets = offsets(comps.iter().map(|c| c.degree(k)).collect());
        let pair_offsets = offsets(inters.iter().map(|c| c.degree(k)).collect());
        for (p, &pair) in pairs.iter().enumerate() {
            let ((fr, dr), ref target) = pair_offsets[p];
            for (side, &i) in [pair.0, pair.1].iter().enumerate() {
                let ((fc, dc), ref source) = comp_offsets[i];
                let mut block = restriction(s, pair, side, k, source, target);
                if side == 1 {
                    block.finite = block.finite.neg();
                    block.divisible = block.divisible.neg();
                }
                d.finite.set_block(fr, fc, &block.finite);
                d.divisible.set_block(dr, dc, &block.divisible);
            }
        }
        differential.insert(k, d);
    }
    Ok(DescentComplex { coefficients: rp, terms, differential })
}

/// `E_1^{n,m}` with `d_1`, and `E_2` computed from kernels and cokernels.
#[derive(Clone, Debug)]
pub struct BigradedPage {
    pub e1: BTreeMap<(usize, i64), ArtinRep>,
    pub d1: BTreeMap<i64, CechMap>,
    pub e2: BTreeMap<(usize, i64), AdmissibleModule>,
    pub coefficients: Coefficients,
}

impl BigradedPage {
    pub fn e1(&self, n: usize, m: i64) -> Option<&ArtinRep> {
        self.e1.get(&(n, m))
    }

    pub fn e2(&self, n: usize, m: i64) -> AdmissibleModule {
        self.e2.get(&(n, m)).cloned().unwrap_or_else(|| AdmissibleModule::zero(self.coefficients.clone()))
    }

    pub fn columns(&self) -> usize {
        self.e1.keys().map(|&(n, _)| n + 1).max().unwrap_or(0)
    }

    /// Two columns force degeneration at `E_2`.
    pub fn degenerates_at_e2(&self) -> bool {
        self.columns() <= 2
    }

    /// `d_1` only runs from column 0 to column 1 and `d_r`, `r >= 2`, lands in empty columns.
    pub fn d_squared_vanishes(&self) -> bool {
        self.columns() <= 2
    }

    pub fn abutment(&self) -> BTreeMap<i64, AdmissibleModule> {
        let degrees: BTreeSet<i64> = self.e2.keys().map(|&(n, m)| n as i64 + m).collect();
        let mut out = BTreeMap::new();
        for k in degrees {
            let h = self.e2(0, k).direct_sum(&self.e2(1, k - 1)).expect("same coefficients");
            if !h.is_zero() {
                out.insert(k, h);
            }
        }
        out
    }
}

/// Coordinates of each twist class among concatenated blocks.
fn twist_classes(blocks: &[DivisibleBlock]) -> BTreeMap<i64, (PrimeSupport, Vec<usize>)> {
    let mut out: BTreeMap<i64, (PrimeSupport, Vec<usize>)> = BTreeMap::new();
    let twists = coordinate_twists(blocks);
    let supports: Vec<&PrimeSupport> = blocks.iter().flat_map(|b| std::iter::repeat_n(&b.support, b.rank)).collect();
    for (i, t) in twists.into_iter().enumerate() {
        out.entry(t).or_insert_with(|| (supports[i].clone(), Vec::new())).1.push(i);
    }
    out
}

fn kernel_and_cokernel(src: &ArtinRep, tgt: &ArtinRep, d: &CechMap) -> Result<(AdmissibleModule, AdmissibleModule)> {
    let c = src.coefficients().clone();
    let f = EquivariantMap::new(src.finite_part(), tgt.finite_part(), d.finite.clone())?;
    let mut ker = AdmissibleModule::finite(f.kernel_module()?);
    let mut coker = AdmissibleModule::finite(f.cokernel_module()?);
    let (sc, tc) = (twist_classes(src.divisible_blocks()), twist_classes(tgt.divisible_blocks()));
    let twists: BTreeSet<i64> = sc.keys().chain(tc.keys()).copied().collect();
    for t in twists {
        let rows = tc.get(&t).map(|x| x.1.clone()).unwrap_or_default();
        let cols = sc.get(&t).map(|x| x.1.clone()).unwrap_or_default();
        let support = sc.get(&t).or(tc.get(&t)).map(|x| x.0.clone()).expect("class exists");
        let a = d.divisible.select_rows(&rows).select_columns(&cols);
        ker = ker.direct_sum(&divisible_map_kernel(&a, t, &support, &c))?;
        coker = coker.direct_sum(&AdmissibleModule {
            finite: FgModule::zero(c.clone()),
            divisible: divisible_map_cokernel(&a, t, &support),
        })?;
    }
    Ok((ker, coker))
}

pub fn e1_page(s: &SNCData, r: &Coefficients) -> Result<BigradedPage> {
    let dc = descent_complex(s, r)?;
    let mut e1 = BTreeMap::new();
    let mut e2 = BTreeMap::new();
    for (&k, d) in &dc.differential {
        let (src, tgt) = (dc.terms[0].degree(k), dc.terms[1].degree(k));
        let (ker, coker) = kernel_and_cokernel(&src, &tgt, d)?;
        for (n, rep, module) in [(0usize, src, ker), (1, tgt, coker)] {
            if !rep.is_zero() {
                e1.insert((n, k), rep);
            }
            if !module.is_zero() {
                e2.insert((n, k), module);
            }
        }
    }
    Ok(BigradedPage { e1, d1: dc.differential, e2, coefficients: dc.coefficients })
}

pub fn abutment(s: &SNCData, r: &Coefficients) -> Result<BTreeMap<i64, AdmissibleModule>> {
    Ok(e1_page(s, r)?.abutment())
}

/// `E_1^{n,m} = ⊕_{|J| = n+1} mu^{m-n-3}(X_J)(-n-1-r)` for the compactly supported variant.
pub fn shriek_page(s: &SNCData, r: i64, coeffs: &Coefficients) -> Result<BTreeMap<(usize, i64), ArtinRep>> {
    if r < 0 {
        return Err(Error::domain(format!("shriek twist offset must be nonnegative, got {r}")));
    }
    let rp = coeffs.invert(s.base.char_exponent);
    let mut out: BTreeMap<(usize, i64), ArtinRep> = BTreeMap::new();
    let columns: [Vec<&GeomDatum>; 2] =
        [s.components.iter().collect(), s.intersections.values().map(|x| &x.datum).collect()];
    for (n, data) in columns.iter().enumerate() {
        let shift = -(n as i64) - 1 - r;
        for x in data {
            let mut graded = vec![(0usize, vec![x.mu0()])];
            graded.extend(x.mu.iter().map(|(&q, b)| (q, b.clone())));
            for (q, blocks) in graded {
                let twisted: Vec<DivisibleBlock> =
                    blocks.into_iter().map(|b| DivisibleBlock { twist: b.twist + shift, ..b }).collect();
                let Some(rep) = divisible_rep(x, &twisted, &rp)? else { continue };
                let m = q as i64 + n as i64 + 3;
                let entry = match out.remove(&(n, m)) {
                    Some(prev) => prev.direct_sum(&rep)?,
                    None => rep,
                };
                out.insert((n, m), entry);
            }
        }
    }
    Ok(out)
}

/// Totalization of the compactly supported colimit; only a single column is supported.
pub fn shriek_complex(s: &SNCData, r: i64, coeffs: &Coefficients) -> Result<DiscreteComplex> {
    if !s.intersections.is_empty() {
        return Err(Error::domain(
            "totalizing the compactly supported colimit needs Gysin maps, which the configuration does not carry",
        ));
    }
    let page = shriek_page(s, r, coeffs)?;
    let mut out = DiscreteComplex::zero(s.base.group().clone(), coeffs.invert(s.base.char_exponent));
    for ((_, m), rep) in page {
        out.insert(m, rep)?;
    }
    Ok(out)
}

/// Divisible summands of a module by twist, for rank comparisons per twist class.
pub fn divisible_ranks_by_twist(d: &DivisibleModule) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for s in d.summands() {
        *out.entry(s.twist).or_insert(0) += s.rank;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Int;
    use crate::omega0field::geom::{self, BaseField};
    use crate::sncdescent::data::Intersection;

    fn two_lines(base: &BaseField) -> SNCData {
        let line = geom::projective_space(base, 1);
        let point = Intersection { datum: geom::point(base), pi0_maps: [vec![0], vec![0]], mu_maps: BTreeMap::new() };
        SNCData::new(base.clone(), vec![line.clone(), line], [((0, 1), point)].into_iter().collect()).unwrap()
    }

    #[test]
    fn two_lines_meeting_in_a_point() {
        let base = BaseField::closed(1).unwrap();
        let page = e1_page(&two_lines(&base), &Coefficients::Integers).unwrap();
        assert_eq!(page.e1(0, 0).unwrap().dim(), 2);
        assert_eq!(page.e1(1, 0).unwrap().dim(), 1);
        assert_eq!(page.e1(0, 3).unwrap().divisible_module(), DivisibleModule::single(-1, PrimeSupport::all(), 2));
        let d0 = &page.d1[&0].finite;
        assert_eq!(d0, &QMatrix::new(1, 2, vec![Int::from(1).into(), Int::from(-1).into()]));
        let h = page.abutment();
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(h[&0].free_rank(), 1);
        assert_eq!(h[&3].divisible, DivisibleModule::single(-1, PrimeSupport::all(), 2));
        assert!(page.d_squared_vanishes() && page.degenerates_at_e2());
    }

    #[test]
    fn disjoint_components_add_up() {
        let base = BaseField::closed(1).unwrap();
        let s = SNCData::new(base.clone(), vec![geom::curve(&base, 1), geom::point(&base)], BTreeMap::new()).unwrap();
        let h = abutment(&s, &Coefficients::Integers).unwrap();
        assert_eq!(h[&0].free_rank(), 2);
        assert_eq!(h[&2].divisible_rank(), 2);
        assert_eq!(h[&3].divisible_rank(), 1);
    }

    #[test]
    fn missing_mu_restriction_is_rejected() {
        let base = BaseField::closed(1).unwrap();
        let surface = geom::product(&geom::curve(&base, 1), &geom::projective_space(&base, 1)).unwrap();
        let e = geom::curve(&base, 1);
        let x = Intersection { datum: e, pi0_maps: [vec![0], vec![0]], mu_maps: BTreeMap::new() };
        let err = SNCData::new(base.clone(), vec![surface.clone(), surface], [((0, 1), x)].into_iter().collect());
        assert!(err.unwrap_err().to_string().contains("missing restriction map for mu^1"));
    }

    #[test]
    fn shriek_single_component() {
        let base = BaseField::closed(1).unwrap();
        let s = SNCData::single(geom::curve(&base, 1));
        let c0 = shriek_complex(&s, 0, &Coefficients::Integers).unwrap();
        assert_eq!(c0.module(3).divisible, DivisibleModule::single(-1, PrimeSupport::all(), 1));
        assert_eq!(c0.support(), vec![3, 4, 5]);
        let c1 = shriek_complex(&s, 1, &Coefficients::Integers).unwrap();
        for m in c0.support() {
            assert_eq!(c1.module(m).divisible, c0.module(m).divisible.twist(-1));
        }
        let empty = SNCData::new(base, Vec::new(), BTreeMap::new()).unwrap();
        assert!(shriek_complex(&empty, 0, &Coefficients::Integers).unwrap().is_zero());
        assert!(shriek_complex(&two_lines(&BaseField::closed(1).unwrap()), 0, &Coefficients::Integers).is_err());
    }
}
