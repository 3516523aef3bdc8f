//! Complexes on the curve as triples `(A, B_x, θ_x: B_x -> Ξ_x(A))`, with `j^* = A`, `i^* = B` and
//! `ω⁰i^! = fib(θ)`. Over `Q` every complex is quasi-isomorphic to its cohomology, so truncation and
//! perverse cohomology are read off the minimal model `(H A, H B, H θ)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::curve::CurveData;
use super::heart::{is_equivariant, require_rational, zero_rep, HeartMorphism, HeartObject};
use super::nobject::NObject;
use crate::error::{Error, Result};
use crate::exactalg::{Int, QMatrix, Q};
use crate::grouprep::ops::{coordinates, hom_basis, hom_rank, EquivariantMap};
use crate::grouprep::{ArtinRep, FiniteGroup};
use crate::Coefficients;

/// A bounded complex of representations; absent degrees are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct RepComplex {
    pub group: Arc<FiniteGroup>,
    pub coefficients: Coefficients,
    pub terms: BTreeMap<i64, ArtinRep>,
    /// `d^k: terms[k] -> terms[k + 1]`.
    pub diffs: BTreeMap<i64, QMatrix>,
}

/// `H^k` with cycles, the projection from cycle coordinates and a section into the term.
struct Cohomology {
    rep: ArtinRep,
    cycles: QMatrix,
    cycle_rep: ArtinRep,
    proj: QMatrix,
    section: QMatrix,
}

impl RepComplex {
    pub fn zero(group: Arc<FiniteGroup>, coefficients: Coefficients) -> Self {
        RepComplex { group, coefficients, terms: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    pub fn concentrated(m: ArtinRep, degree: i64) -> Self {
        let mut c = Self::zero(m.group().clone(), m.coefficients().clone());
        c.terms.insert(degree, m);
        c
    }

    pub fn term(&self, k: i64) -> ArtinRep {
        self.terms.get(&k).cloned().unwrap_or_else(|| ArtinRep::zero(self.group.clone(), self.coefficients.clone()))
    }

    pub fn dim(&self, k: i64) -> usize {
        self.terms.get(&k).map_or(0, ArtinRep::dim)
    }

    pub fn diff(&self, k: i64) -> QMatrix {
        self.diffs.get(&k).cloned().unwrap_or_else(|| QMatrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn degrees(&self) -> Option<(i64, i64)> {
        let live: Vec<i64> = self.terms.iter().filter(|(_, m)| m.dim() > 0).map(|(&k, _)| k).collect();
        Some((*live.first()?, *live.last()?))
    }

    fn check(&self, path: &str) -> Result<()> {
        for (k, m) in &self.terms {
            if m.group() != &self.group {
                return Err(Error::domain(format!("{path}[{k}]: wrong group")));
            }
        }
        for &k in self.diffs.keys() {
            let d = self.diff(k);
            if !is_equivariant(&self.term(k), &self.term(k + 1), &d) {
                return Err(Error::domain(format!("{path}: d^{k} is not an equivariant map")));
            }
            if !self.diff(k + 1).mul(&d).is_zero() {
                return Err(Error::domain(format!("{path}: d^{} d^{k} is not zero", k + 1)));
            }
        }
        Ok(())
    }

    fn cohomology(&self, k: i64) -> Result<Cohomology> {
        let term = self.term(k);
        let cycles = self.diff(k).kernel();
        let cycle_rep = term.subrep(&cycles)?;
        let boundaries = self.diff(k - 1).column_basis();
        let sub = coordinates(&cycles, &boundaries).ok_or_else(|| Error::domain("d^2 is not zero"))?;
        let complement = sub.complement_basis();
        let (rep, proj) = cycle_rep.quotient_rep(&sub, &complement)?;
        let section = cycles.mul(&complement);
        Ok(Cohomology { rep, cycles, cycle_rep, proj, section })
    }

    /// `X[1]`: degree `k` of the result is degree `k + 1` here, with negated differentials.
    pub fn shift(&self, n: i64) -> Self {
        let sign = if n % 2 == 0 { Q::from_integer(Int::from(1)) } else { Q::from_integer(Int::from(-1)) };
        RepComplex {
            group: self.group.clone(),
            coefficients: self.coefficients.clone(),
            terms: self.terms.iter().map(|(k, m)| (k - n, m.clone())).collect(),
            diffs: self.diffs.iter().map(|(k, d)| (k - n, d.scale(&sign))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GluedComplex {
    pub curve: Arc<CurveData>,
    pub a: Vec<RepComplex>,
    pub b: Vec<RepComplex>,
    /// `θ_x^k: B_x^k -> Ξ_x(A^k)`.
    pub theta: Vec<BTreeMap<i64, QMatrix>>,
}

impl GluedComplex {
    pub fn zero(curve: Arc<CurveData>) -> Self {
        let a = (0..curve.branches.len())
            .map(|e| RepComplex::zero(curve.branch_group(e).clone(), curve.coefficients.clone()))
            .collect();
        let b = (0..curve.points.len())
            .map(|x| RepComplex::zero(curve.point_group(x).clone(), curve.point_coefficients(x)))
            .collect();
        let theta = vec![BTreeMap::new(); curve.points.len()];
        GluedComplex { curve, a, b, theta }
    }

    pub fn branch_term(&self, k: i64) -> Vec<ArtinRep> {
        self.a.iter().map(|c| c.term(k)).collect()
    }

    pub fn xi_term(&self, x: usize, k: i64) -> Result<ArtinRep> {
        self.curve.xi(x, &self.branch_term(k))
    }

    pub fn theta(&self, x: usize, k: i64) -> Result<QMatrix> {
        match self.theta[x].get(&k) {
            Some(t) => Ok(t.clone()),
            None => Ok(QMatrix::zeros(self.xi_term(x, k)?.dim(), self.b[x].dim(k))),
        }
    }

    /// Smallest and largest degree with a nonzero term.
    pub fn degrees(&self) -> Option<(i64, i64)> {
        let ranges: Vec<(i64, i64)> = self.a.iter().chain(&self.b).filter_map(RepComplex::degrees).collect();
        Some((ranges.iter().map(|r| r.0).min()?, ranges.iter().map(|r| r.1).max()?))
    }

    pub fn is_zero(&self) -> bool {
        self.degrees().is_none()
    }

    fn xi_diff(&self, x: usize, k: i64) -> Result<QMatrix> {
        let diffs: Vec<QMatrix> = self.a.iter().map(|c| c.diff(k)).collect();
        self.curve.xi_map(x, &self.branch_term(k), &self.branch_term(k + 1), &diffs)
    }

    pub fn validate(&self) -> Result<()> {
        let c = &self.curve;
        if self.a.len() != c.branches.len() || self.b.len() != c.points.len() || self.theta.len() != c.points.len() {
            return Err(Error::domain("components do not match the curve"));
        }
        for (e, a) in self.a.iter().enumerate() {
            if &a.group != c.branch_group(e) {
                return Err(Error::domain(format!("A[{e}]: wrong group")));
            }
            a.check(&format!("A[{e}]"))?;
        }
        for (x, b) in self.b.iter().enumerate() {
            if &b.group != c.point_group(x) {
                return Err(Error::domain(format!("B[{x}]: wrong group")));
            }
            b.check(&format!("B[{x}]"))?;
        }
        let Some((lo, hi)) = self.degrees() else { return Ok(()) };
        for x in 0..self.b.len() {
            for k in lo - 1..=hi {
                let t = self.theta(x, k)?;
                if !is_equivariant(&self.b[x].term(k), &self.xi_term(x, k)?, &t) {
                    return Err(Error::domain(format!("theta[{x}]^{k} is not an equivariant map")));
                }
                let lhs = self.theta(x, k + 1)?.mul(&self.b[x].diff(k));
                let rhs = self.xi_diff(x, k)?.mul(&t);
                if lhs != rhs {
                    return Err(Error::domain(format!("theta[{x}] is not a chain map in degree {k}")));
                }
            }
        }
        Ok(())
    }

    /// `L` in degree `-1`; `M⁰`, `M¹` in degrees `-1`, `0`; `θ^{-1} = f`.
    pub fn from_nobject(n: &NObject) -> Result<Self> {
        if let Some(v) = n.validate().first() {
            return Err(Error::domain(v.to_string()));
        }
        let mut g = Self::zero(n.curve.clone());
        for (e, l) in n.branches.iter().enumerate() {
            g.a[e].terms.insert(-1, l.clone());
        }
        for (x, m) in n.points.iter().enumerate() {
            g.b[x].terms.insert(-1, m.m0.clone());
            g.b[x].terms.insert(0, m.m1.clone());
            g.b[x].diffs.insert(-1, m.d.clone());
            g.theta[x].insert(-1, n.f[x].clone());
        }
        Ok(g)
    }

    pub fn from_heart(h: &HeartObject) -> Result<Self> {
        Self::from_nobject(&NObject::from_heart(h)?)
    }

    /// `X[n]`.
    pub fn shift(&self, n: i64) -> Self {
        GluedComplex {
            curve: self.curve.clone(),
            a: self.a.iter().map(|c| c.shift(n)).collect(),
            b: self.b.iter().map(|c| c.shift(n)).collect(),
            theta: self.theta.iter().map(|t| t.iter().map(|(k, m)| (k - n, m.clone())).collect()).collect(),
        }
    }

    /// The cohomology triple `(H A, H B, H θ)` with zero differentials.
    pub fn minimal(&self) -> Result<GluedComplex> {
        require_rational(&self.curve)?;
        let mut out = Self::zero(self.curve.clone());
        let Some((lo, hi)) = self.degrees() else { return Ok(out) };
        for k in lo..=hi {
            let ha: Vec<Cohomology> = self.a.iter().map(|c| c.cohomology(k)).collect::<Result<_>>()?;
            let h_reps: Vec<ArtinRep> = ha.iter().map(|h| h.rep.clone()).collect();
            let z_reps: Vec<ArtinRep> = ha.iter().map(|h| h.cycle_rep.clone()).collect();
            let z_maps: Vec<QMatrix> = ha.iter().map(|h| h.cycles.clone()).collect();
            let q_maps: Vec<QMatrix> = ha.iter().map(|h| h.proj.clone()).collect();
            for (e, h) in ha.iter().enumerate() {
                if h.rep.dim() > 0 {
                    out.a[e].terms.insert(k, h.rep.clone());
                }
            }
            for x in 0..self.b.len() {
                let hb = self.b[x].cohomology(k)?;
                let xi_z = self.curve.xi_map(x, &z_reps, &self.branch_term(k), &z_maps)?;
                let xi_q = self.curve.xi_map(x, &z_reps, &h_reps, &q_maps)?;
                let v = self.theta(x, k)?.mul(&hb.section);
                let coords = coordinates(&xi_z, &v).ok_or_else(|| Error::domain("theta does not preserve cycles"))?;
                if hb.rep.dim() > 0 {
                    out.b[x].terms.insert(k, hb.rep);
                    out.theta[x].insert(k, xi_q.mul(&coords));
                }
            }
        }
        Ok(out)
    }

    /// `(X^{≤0}, X^{≥1})` computed on the minimal model, with the triangle maps.
    pub fn perverse_truncate(&self) -> Result<Truncation> {
        let m = self.minimal()?;
        let mut le = Self::zero(self.curve.clone());
        let mut ge = Self::zero(self.curve.clone());
        let mut incl = GluedMap::zero(&le, &m);
        let mut proj = GluedMap::zero(&m, &ge);
        for (e, a) in m.a.iter().enumerate() {
            for (&k, rep) in &a.terms {
                let id = QMatrix::identity(rep.dim());
                if k <= -1 {
                    le.a[e].terms.insert(k, rep.clone());
                    incl.a[e].insert(k, id);
                } else {
                    ge.a[e].terms.insert(k, rep.clone());
                    proj.a[e].insert(k, id);
                }
            }
        }
        for (x, b) in m.b.iter().enumerate() {
            for (&k, rep) in &b.terms {
                let id = QMatrix::identity(rep.dim());
                let t = m.theta(x, k)?;
                if k <= -1 {
                    le.b[x].terms.insert(k, rep.clone());
                    le.theta[x].insert(k, t);
                    incl.b[x].insert(k, id);
                } else if k >= 1 {
                    ge.b[x].terms.insert(k, rep.clone());
                    ge.theta[x].insert(k, t);
                    proj.b[x].insert(k, id);
                } else {
                    let ker = EquivariantMap::new(rep.clone(), m.xi_term(x, 0)?, t.clone())?.kernel()?;
                    let complement = ker.map.complement_basis();
                    let (quot, p) = rep.quotient_rep(&ker.map, &complement)?;
                    le.b[x].terms.insert(0, ker.rep);
                    incl.b[x].insert(0, ker.map);
                    ge.b[x].terms.insert(0, quot);
                    ge.theta[x].insert(0, t.mul(&complement));
                    proj.b[x].insert(0, p);
                }
            }
        }
        incl.target = m.clone();
        incl.source = le.clone();
        proj.source = m.clone();
        proj.target = ge.clone();
        Ok(Truncation { le, ge, minimal: m, incl, proj })
    }

    /// `pH^n` in point form: `L = H^{n-1} A`, `P = coker H^{n-1}θ ⊕ ker H^nθ`.
    pub fn perverse_cohomology(&self, n: i64) -> Result<HeartObject> {
        let m = self.minimal()?;
        let branches = m.branch_term(n - 1);
        let mut points = Vec::new();
        let mut c = Vec::new();
        for x in 0..m.b.len() {
            let xi = m.xi_term(x, n - 1)?;
            let coker = EquivariantMap::new(m.b[x].term(n - 1), xi.clone(), m.theta(x, n - 1)?)?.cokernel()?;
            let ker = EquivariantMap::new(m.b[x].term(n), m.xi_term(x, n)?, m.theta(x, n)?)?.kernel()?;
            let p = coker.rep.direct_sum(&ker.rep)?;
            c.push(coker.map.vstack(&QMatrix::zeros(ker.rep.dim(), xi.dim())));
            points.push(p);
        }
        HeartObject::new(self.curve.clone(), branches, points, c)
    }

    /// Degrees `n` with `pH^n ≠ 0`.
    pub fn perverse_amplitude(&self) -> Result<Vec<i64>> {
        let Some((lo, hi)) = self.degrees() else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        for n in lo..=hi + 1 {
            if !self.perverse_cohomology(n)?.is_zero() {
                out.push(n);
            }
        }
        Ok(out)
    }

    /// Ranks of `H^k(fib θ_x)` for every point and degree with a nonzero value.
    pub fn shriek_ranks(&self) -> Result<Vec<(usize, i64, usize)>> {
        let m = self.minimal()?;
        let mut out = Vec::new();
        let Some((lo, hi)) = m.degrees() else { return Ok(out) };
        for x in 0..m.b.len() {
            for k in lo..=hi + 1 {
                let t = m.theta(x, k)?;
                let prev = m.theta(x, k - 1)?;
                let r = (t.cols() - t.rank()) + (prev.rows() - prev.rank());
                if r > 0 {
                    out.push((x, k, r));
                }
            }
        }
        Ok(out)
    }

    /// `H^k(i^*)` ranks for every point and degree with a nonzero value.
    pub fn star_ranks(&self) -> Result<Vec<(usize, i64, usize)>> {
        let m = self.minimal()?;
        let mut out = Vec::new();
        for (x, b) in m.b.iter().enumerate() {
            for (&k, rep) in &b.terms {
                if rep.dim() > 0 {
                    out.push((x, k, rep.dim()));
                }
            }
        }
        Ok(out)
    }
}

/// Ranks of `Hom^0` in the derived category of triples.
///
/// With minimal models, `RHom(X, Y)` is the fiber of
/// `δ(α, β) = θ_Y β - Ξ(α) θ_X` from graded maps of `(A, B)` to graded maps `B_X -> Ξ(A_Y)`.
pub fn derived_hom_rank(x: &GluedComplex, y: &GluedComplex) -> Result<usize> {
    if x.curve != y.curve {
        return Err(Error::domain("complexes live on different curves"));
    }
    let xm = x.minimal()?;
    let ym = y.minimal()?;
    let d0 = delta(&xm, &ym, 0)?;
    let dm1 = delta(&xm, &ym, -1)?;
    Ok((d0.source_dim - d0.rank) + (dm1.target_dim - dm1.rank))
}

struct Delta {
    source_dim: usize,
    target_dim: usize,
    rank: usize,
}

fn delta(x: &GluedComplex, y: &GluedComplex, n: i64) -> Result<Delta> {
    let curve = &x.curve;
    let degrees: Vec<i64> = match x.degrees() {
        Some((lo, hi)) => (lo..=hi).collect(),
        None => Vec::new(),
    };
    // target layout: (point, degree) blocks of Hom(b^k, Ξ a'^{k+n}) flattened
    let mut target_dim = 0;
    let mut offsets = BTreeMap::new();
    let mut off = 0;
    for xp in 0..x.b.len() {
        for &k in &degrees {
            let b = x.b[xp].term(k);
            let xi = y.xi_term(xp, k + n)?;
            target_dim += hom_rank(&b, &xi)?;
            offsets.insert((xp, k), off);
            off += xi.dim() * b.dim();
        }
    }
    let mut columns: Vec<Vec<Q>> = Vec::new();
    let mut push = |blocks: Vec<((usize, i64), QMatrix)>| {
        let mut v = vec![Q::from_integer(Int::from(0)); off];
        for (key, m) in blocks {
            let o = offsets[&key];
            for (i, val) in m.entries().iter().enumerate() {
                v[o + i] += val.clone();
            }
        }
        columns.push(v);
    };
    let mut source_dim = 0;
    for &k in &degrees {
        let src = x.branch_term(k);
        let dst = y.branch_term(k + n);
        for e in 0..x.a.len() {
            for alpha in hom_basis(&src[e], &dst[e])? {
                source_dim += 1;
                let mut maps: Vec<QMatrix> = src.iter().zip(&dst).map(|(s, t)| QMatrix::zeros(t.dim(), s.dim())).collect();
                maps[e] = alpha;
                let mut blocks = Vec::new();
                for xp in 0..x.b.len() {
                    let xi = curve.xi_map(xp, &src, &dst, &maps)?;
                    blocks.push(((xp, k), xi.mul(&x.theta(xp, k)?).neg()));
                }
                push(blocks);
            }
        }
        for xp in 0..x.b.len() {
            for beta in hom_basis(&x.b[xp].term(k), &y.b[xp].term(k + n))? {
                source_dim += 1;
                push(vec![((xp, k), y.theta(xp, k + n)?.mul(&beta))]);
            }
        }
    }
    let rank = if columns.is_empty() || off == 0 {
        0
    } else {
        let mut m = QMatrix::zeros(off, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m.rank()
    };
    Ok(Delta { source_dim, target_dim, rank })
}

/// A strict map of triples: per-degree maps on `A` and `B` commuting with the differentials and `θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GluedMap {
    pub source: GluedComplex,
    pub target: GluedComplex,
    pub a: Vec<BTreeMap<i64, QMatrix>>,
    pub b: Vec<BTreeMap<i64, QMatrix>>,
}

impl GluedMap {
    pub fn zero(s: &GluedComplex, t: &GluedComplex) -> Self {
        GluedMap {
            source: s.clone(),
            target: t.clone(),
            a: vec![BTreeMap::new(); s.a.len()],
            b: vec![BTreeMap::new(); s.b.len()],
        }
    }

    pub fn a_map(&self, e: usize, k: i64) -> QMatrix {
        self.a[e].get(&k).cloned().unwrap_or_else(|| QMatrix::zeros(self.target.a[e].dim(k), self.source.a[e].dim(k)))
    }

    pub fn b_map(&self, x: usize, k: i64) -> QMatrix {
        self.b[x].get(&k).cloned().unwrap_or_else(|| QMatrix::zeros(self.target.b[x].dim(k), self.source.b[x].dim(k)))
    }

    fn range(&self) -> Option<(i64, i64)> {
        let r: Vec<(i64, i64)> = [self.source.degrees(), self.target.degrees()].into_iter().flatten().collect();
        Some((r.iter().map(|p| p.0).min()?, r.iter().map(|p| p.1).max()?))
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let Some((lo, hi)) = self.range() else { return Ok(()) };
        for k in lo - 1..=hi {
            for e in 0..s.a.len() {
                let f = self.a_map(e, k);
                if !is_equivariant(&s.a[e].term(k), &t.a[e].term(k), &f) {
                    return Err(Error::domain(format!("A[{e}]^{k}: not an equivariant map")));
                }
                if t.a[e].diff(k).mul(&f) != self.a_map(e, k + 1).mul(&s.a[e].diff(k)) {
                    return Err(Error::domain(format!("A[{e}]: not a chain map in degree {k}")));
                }
            }
            let fa: Vec<QMatrix> = (0..s.a.len()).map(|e| self.a_map(e, k)).collect();
            for x in 0..s.b.len() {
                let f = self.b_map(x, k);
                if !is_equivariant(&s.b[x].term(k), &t.b[x].term(k), &f) {
                    return Err(Error::domain(format!("B[{x}]^{k}: not an equivariant map")));
                }
                if t.b[x].diff(k).mul(&f) != self.b_map(x, k + 1).mul(&s.b[x].diff(k)) {
                    return Err(Error::domain(format!("B[{x}]: not a chain map in degree {k}")));
                }
                let xi = s.curve.xi_map(x, &s.branch_term(k), &t.branch_term(k), &fa)?;
                if t.theta(x, k)?.mul(&f) != xi.mul(&s.theta(x, k)?) {
                    return Err(Error::domain(format!("theta square at point {x} fails in degree {k}")));
                }
            }
        }
        Ok(())
    }

    /// The chain-level form of a heart morphism, through the two-term point complexes.
    pub fn from_heart(f: &HeartMorphism) -> Result<Self> {
        let s = GluedComplex::from_heart(&f.source)?;
        let t = GluedComplex::from_heart(&f.target)?;
        let mut g = GluedMap::zero(&s, &t);
        for (e, phi) in f.branch.iter().enumerate() {
            g.a[e].insert(-1, phi.clone());
        }
        for x in 0..f.point.len() {
            let xi = s.curve.xi_map(x, &f.source.branches, &f.target.branches, &f.branch)?;
            g.b[x].insert(-1, xi);
            g.b[x].insert(0, f.point[x].clone());
        }
        Ok(g)
    }

    /// `cone(f)^k = X^{k+1} ⊕ Y^k` with differential `[[-d_X, 0], [f, d_Y]]`.
    pub fn cone(&self) -> Result<GluedComplex> {
        let (s, t) = (&self.source, &self.target);
        let curve = s.curve.clone();
        let mut out = GluedComplex::zero(curve.clone());
        let Some((lo, hi)) = self.range() else { return Ok(out) };
        let sum = |x: &RepComplex, y: &RepComplex, k: i64| x.term(k + 1).direct_sum(&y.term(k));
        let cone_diff = |dx: QMatrix, dy: QMatrix, f: QMatrix| -> QMatrix {
            let top = dx.neg().hstack(&QMatrix::zeros(dx.rows(), dy.cols()));
            let bottom = f.hstack(&dy);
            top.vstack(&bottom)
        };
        for k in lo - 1..=hi {
            for e in 0..s.a.len() {
                let term = sum(&s.a[e], &t.a[e], k)?;
                if term.dim() > 0 {
                    out.a[e].terms.insert(k, term);
                }
                out.a[e].diffs.insert(k, cone_diff(s.a[e].diff(k + 1), t.a[e].diff(k), self.a_map(e, k + 1)));
            }
            for x in 0..s.b.len() {
                let term = sum(&s.b[x], &t.b[x], k)?;
                if term.dim() > 0 {
                    out.b[x].terms.insert(k, term);
                }
                out.b[x].diffs.insert(k, cone_diff(s.b[x].diff(k + 1), t.b[x].diff(k), self.b_map(x, k + 1)));
            }
        }
        // θ on the cone through the two embeddings of Ξ of the direct sum
        for k in lo - 1..=hi {
            let sa = s.branch_term(k + 1);
            let ta = t.branch_term(k);
            let ca = out.branch_term(k);
            let first: Vec<QMatrix> = sa.iter().zip(&ta).map(|(a, b)| block_embed(a.dim(), b.dim(), true)).collect();
            let second: Vec<QMatrix> = sa.iter().zip(&ta).map(|(a, b)| block_embed(a.dim(), b.dim(), false)).collect();
            for x in 0..s.b.len() {
                let e1 = curve.xi_map(x, &sa, &ca, &first)?;
                let e2 = curve.xi_map(x, &ta, &ca, &second)?;
                let th = e1.mul(&s.theta(x, k + 1)?).hstack(&e2.mul(&t.theta(x, k)?));
                if th.rows() > 0 && th.cols() > 0 {
                    out.theta[x].insert(k, th);
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn block_embed(a: usize, b: usize, first: bool) -> QMatrix {
    let (off, n) = if first { (0, a) } else { (a, b) };
    let mut m = QMatrix::zeros(a + b, n);
    for i in 0..n {
        m.set(off + i, i, Q::from_integer(Int::from(1)));
    }
    m
}

/// The triangle `X^{≤0} -> X -> X^{≥1}` on the minimal model of `X`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub le: GluedComplex,
    pub ge: GluedComplex,
    pub minimal: GluedComplex,
    pub incl: GluedMap,
    pub proj: GluedMap,
}

/// Kernel of a heart morphism computed as `pH^{-1}` of its cone.
pub fn kernel_via_cone(f: &HeartMorphism) -> Result<HeartObject> {
    GluedMap::from_heart(f)?.cone()?.perverse_cohomology(-1)
}

/// Cokernel of a heart morphism computed as `pH^0` of its cone.
pub fn cokernel_via_cone(f: &HeartMorphism) -> Result<HeartObject> {
    GluedMap::from_heart(f)?.cone()?.perverse_cohomology(0)
}

/// Zero representations on all branches, for building complexes from point data.
pub fn zero_branches(curve: &CurveData) -> Vec<ArtinRep> {
    (0..curve.branches.len()).map(|e| zero_rep(curve, Some(e), None)).collect()
}
