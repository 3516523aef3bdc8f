//! The heart over `Q` in point form: a local system `L` on each branch, a representation `P_x` at
//! each closed point and a map `c_x: Ξ_x(L) -> P_x`.
//!
//! `P_x` is the cokernel of `M⁰ -> M¹ ⊕ Ξ_x(L)` for the two-term complex description, so
//! `c_x` is surjective exactly when `i^*` sits in negative perverse degrees and `P_x = 0` exactly when
//! `ω⁰i^!` sits in positive ones.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use super::curve::CurveData;
use crate::error::{Error, Result};
use crate::exactalg::{Int, QMatrix, Q};
use crate::grouprep::maschke::decompose;
use crate::grouprep::ops::{coordinates, hom_basis, EquivariantMap};
use crate::grouprep::random::seeded_rng;
use crate::grouprep::rep::left_inverse;
use crate::grouprep::ArtinRep;

pub(crate) fn require_rational(curve: &CurveData) -> Result<()> {
    if !curve.coefficients.is_rational() {
        return Err(Error::domain(format!(
            "abelian operations in the heart are supported over Q only, not {}",
            curve.coefficients
        )));
    }
    Ok(())
}

pub(crate) fn is_equivariant(m: &ArtinRep, n: &ArtinRep, a: &QMatrix) -> bool {
    a.rows() == n.dim()
        && a.cols() == m.dim()
        && m.group().generators().iter().all(|&g| n.matrix(g).mul(a) == a.mul(m.matrix(g)))
}

pub(crate) fn right_inverse(a: &QMatrix) -> Option<QMatrix> {
    left_inverse(&a.transpose()).map(|l| l.transpose())
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeartObject {
    pub curve: Arc<CurveData>,
    pub branches: Vec<ArtinRep>,
    pub points: Vec<ArtinRep>,
    pub c: Vec<QMatrix>,
}

impl HeartObject {
    pub fn new(curve: Arc<CurveData>, branches: Vec<ArtinRep>, points: Vec<ArtinRep>, c: Vec<QMatrix>) -> Result<Self> {
        require_rational(&curve)?;
        if points.len() != curve.points.len() || c.len() != curve.points.len() {
            return Err(Error::domain("one point representation and one map per closed point"));
        }
        for (x, p) in points.iter().enumerate() {
            if p.group() != curve.point_group(x) || !p.coefficients().is_rational() {
                return Err(Error::domain(format!("point {}: representation is not over its residue group", curve.points[x].name)));
            }
        }
        let obj = HeartObject { curve, branches, points, c };
        for x in 0..obj.points.len() {
            let xi = obj.xi(x)?;
            if !is_equivariant(&xi, &obj.points[x], &obj.c[x]) {
                return Err(Error::domain(format!("point {}: structure map is not equivariant", obj.curve.points[x].name)));
            }
        }
        Ok(obj)
    }

    pub fn zero(curve: Arc<CurveData>) -> Result<Self> {
        let branches = (0..curve.branches.len()).map(|e| zero_rep(&curve, Some(e), None)).collect();
        Self::with_branches_only(curve, branches)
    }

    fn with_branches_only(curve: Arc<CurveData>, branches: Vec<ArtinRep>) -> Result<Self> {
        let points: Vec<ArtinRep> = (0..curve.points.len()).map(|x| zero_rep(&curve, None, Some(x))).collect();
        let mut obj = HeartObject { curve, branches, points, c: Vec::new() };
        obj.c = (0..obj.points.len()).map(|x| Ok(QMatrix::zeros(0, obj.xi(x)?.dim()))).collect::<Result<_>>()?;
        Self::new(obj.curve, obj.branches, obj.points, obj.c)
    }

    /// `j_! L`: `P_x = Ξ_x(L)` with the identity.
    pub fn j_shriek(curve: Arc<CurveData>, branches: Vec<ArtinRep>) -> Result<Self> {
        require_rational(&curve)?;
        let mut points = Vec::new();
        let mut c = Vec::new();
        for x in 0..curve.points.len() {
            let xi = curve.xi(x, &branches)?;
            c.push(QMatrix::identity(xi.dim()));
            points.push(xi);
        }
        Self::new(curve, branches, points, c)
    }

    /// `ω⁰j_* L`: no point contribution.
    pub fn omega0_j_star(curve: Arc<CurveData>, branches: Vec<ArtinRep>) -> Result<Self> {
        require_rational(&curve)?;
        curve.points.iter().enumerate().try_for_each(|(x, _)| curve.xi(x, &branches).map(|_| ()))?;
        Self::with_branches_only(curve, branches)
    }

    /// `i_{x*} W`.
    pub fn point_object(curve: Arc<CurveData>, x: usize, w: ArtinRep) -> Result<Self> {
        let mut obj = Self::zero(curve)?;
        if x >= obj.points.len() {
            return Err(Error::domain(format!("no closed point {x}")));
        }
        obj.c[x] = QMatrix::zeros(w.dim(), 0);
        obj.points[x] = w;
        Self::new(obj.curve, obj.branches, obj.points, obj.c)
    }

    pub fn xi(&self, x: usize) -> Result<ArtinRep> {
        self.curve.xi(x, &self.branches)
    }

    pub fn is_zero(&self) -> bool {
        self.branches.iter().all(|m| m.dim() == 0) && self.points.iter().all(|p| p.dim() == 0)
    }

    pub fn branch_ranks(&self) -> Vec<usize> {
        self.branches.iter().map(ArtinRep::dim).collect()
    }

    pub fn point_ranks(&self) -> Vec<usize> {
        self.points.iter().map(ArtinRep::dim).collect()
    }

    /// `i^*` lies in negative perverse degrees.
    pub fn c_surjective(&self) -> bool {
        self.c.iter().zip(&self.points).all(|(c, p)| c.rank() == p.dim())
    }

    pub fn direct_sum(&self, other: &HeartObject) -> Result<HeartObject> {
        let branches = self
            .branches
            .iter()
            .zip(&other.branches)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        let mut points = Vec::new();
        let mut c = Vec::new();
        for x in 0..self.points.len() {
            points.push(self.points[x].direct_sum(&other.points[x])?);
            let sources: Vec<ArtinRep> = self.branches.clone();
            let incl = self.branches.iter().zip(&other.branches).map(|(a, b)| embed(a.dim(), b.dim(), true)).collect::<Vec<_>>();
            let incl2 = self.branches.iter().zip(&other.branches).map(|(a, b)| embed(a.dim(), b.dim(), false)).collect::<Vec<_>>();
            let xi_l = self.curve.xi_map(x, &sources, &branches, &incl)?;
            let xi_r = self.curve.xi_map(x, &other.branches, &branches, &incl2)?;
            // c on the sum, expressed through the two embeddings of Ξ
            let both = xi_l.hstack(&xi_r);
            let inv = both.inverse().ok_or_else(|| Error::domain("Ξ does not preserve the direct sum"))?;
            let blocks = self.c[x].block_diag(&other.c[x]);
            c.push(blocks.mul(&inv));
        }
        HeartObject::new(self.curve.clone(), branches, points, c)
    }
}

/// Column embedding of the first (or second) summand of `Q^a ⊕ Q^b`.
pub(crate) fn embed(a: usize, b: usize, first: bool) -> QMatrix {
    let mut m = QMatrix::zeros(a + b, if first { a } else { b });
    let (off, n) = if first { (0, a) } else { (a, b) };
    for i in 0..n {
        m.set(off + i, i, Q::from_integer(Int::from(1)));
    }
    m
}

pub(crate) fn zero_rep(curve: &CurveData, branch: Option<usize>, point: Option<usize>) -> ArtinRep {
    match (branch, point) {
        (Some(e), _) => ArtinRep::zero(curve.branch_group(e).clone(), curve.coefficients.clone()),
        (_, Some(x)) => ArtinRep::zero(curve.point_group(x).clone(), curve.point_coefficients(x)),
        _ => unreachable!("a branch or a point"),
    }
}

/// A morphism `(Φ_η, π_x)` with `π_x c_x = c'_x Ξ_x(Φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeartMorphism {
    pub source: HeartObject,
    pub target: HeartObject,
    pub branch: Vec<QMatrix>,
    pub point: Vec<QMatrix>,
}

impl HeartMorphism {
    pub fn new(source: HeartObject, target: HeartObject, branch: Vec<QMatrix>, point: Vec<QMatrix>) -> Result<Self> {
        let f = HeartMorphism { source, target, branch, point };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if s.curve != t.curve || self.branch.len() != s.branches.len() || self.point.len() != s.points.len() {
            return Err(Error::domain("morphism components do not match the curve"));
        }
        for (e, phi) in self.branch.iter().enumerate() {
            if !is_equivariant(&s.branches[e], &t.branches[e], phi) {
                return Err(Error::domain(format!("branch {e}: map is not equivariant")));
            }
        }
        for (x, pi) in self.point.iter().enumerate() {
            if !is_equivariant(&s.points[x], &t.points[x], pi) {
                return Err(Error::domain(format!("point {x}: map is not equivariant")));
            }
            let xi = s.curve.xi_map(x, &s.branches, &t.branches, &self.branch)?;
            if pi.mul(&s.c[x]) != t.c[x].mul(&xi) {
                return Err(Error::domain(format!("point {x}: square with Ξ does not commute")));
            }
        }
        Ok(())
    }

    pub fn identity(m: &HeartObject) -> Self {
        HeartMorphism {
            source: m.clone(),
            target: m.clone(),
            branch: m.branches.iter().map(|r| QMatrix::identity(r.dim())).collect(),
            point: m.points.iter().map(|r| QMatrix::identity(r.dim())).collect(),
        }
    }

    pub fn zero(s: &HeartObject, t: &HeartObject) -> Self {
        HeartMorphism {
            source: s.clone(),
            target: t.clone(),
            branch: s.branches.iter().zip(&t.branches).map(|(a, b)| QMatrix::zeros(b.dim(), a.dim())).collect(),
            point: s.points.iter().zip(&t.points).map(|(a, b)| QMatrix::zeros(b.dim(), a.dim())).collect(),
        }
    }

    pub fn compose(&self, after: &HeartMorphism) -> Result<HeartMorphism> {
        if self.target != after.source {
            return Err(Error::domain("composition of incompatible morphisms"));
        }
        Ok(HeartMorphism {
            source: self.source.clone(),
            target: after.target.clone(),
            branch: self.branch.iter().zip(&after.branch).map(|(a, b)| b.mul(a)).collect(),
            point: self.point.iter().zip(&after.point).map(|(a, b)| b.mul(a)).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.branch.iter().chain(&self.point).all(QMatrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.branch.iter().chain(&self.point).all(|m| m.is_square() && (m.rows() == 0 || !m.det().is_zero()))
    }

    fn combine(basis: &[HeartMorphism], coeffs: &[i64]) -> Option<HeartMorphism> {
        let first = basis.first()?;
        let mut out = HeartMorphism::zero(&first.source, &first.target);
        for (b, &k) in basis.iter().zip(coeffs) {
            let k = Q::from_integer(Int::from(k));
            for (o, m) in out.branch.iter_mut().zip(&b.branch) {
                *o = o.add(&m.scale(&k));
            }
            for (o, m) in out.point.iter_mut().zip(&b.point) {
                *o = o.add(&m.scale(&k));
            }
        }
        Some(out)
    }
}

/// A basis of `Hom(X, Y)` in the heart.
pub fn heart_hom_basis(x: &HeartObject, y: &HeartObject) -> Result<Vec<HeartMorphism>> {
    if x.curve != y.curve {
        return Err(Error::domain("objects live on different curves"));
    }
    let curve = &x.curve;
    let mut pieces: Vec<HeartMorphism> = Vec::new();
    for e in 0..x.branches.len() {
        for phi in hom_basis(&x.branches[e], &y.branches[e])? {
            let mut m = HeartMorphism::zero(x, y);
            m.branch[e] = phi;
            pieces.push(m);
        }
    }
    for p in 0..x.points.len() {
        for pi in hom_basis(&x.points[p], &y.points[p])? {
            let mut m = HeartMorphism::zero(x, y);
            m.point[p] = pi;
            pieces.push(m);
        }
    }
    // constraint columns: π c - c' Ξ(Φ), flattened over points
    let rows: usize = (0..x.points.len()).map(|p| y.points[p].dim() * x.c[p].cols()).sum();
    let mut e = QMatrix::zeros(rows, pieces.len());
    for (j, m) in pieces.iter().enumerate() {
        let mut r = 0;
        for p in 0..x.points.len() {
            let xi = curve.xi_map(p, &x.branches, &y.branches, &m.branch)?;
            let v = m.point[p].mul(&x.c[p]).sub(&y.c[p].mul(&xi));
            for val in v.entries() {
                e.set(r, j, val.clone());
                r += 1;
            }
        }
    }
    let k = e.kernel();
    let mut out = Vec::with_capacity(k.cols());
    for j in 0..k.cols() {
        let mut m = HeartMorphism::zero(x, y);
        for (i, piece) in pieces.iter().enumerate() {
            let t = k.get(i, j);
            if t.is_zero() {
                continue;
            }
            for (o, b) in m.branch.iter_mut().zip(&piece.branch) {
                *o = o.add(&b.scale(t));
            }
            for (o, b) in m.point.iter_mut().zip(&piece.point) {
                *o = o.add(&b.scale(t));
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// An isomorphism found among random combinations of a `Hom` basis.
pub fn find_heart_isomorphism(x: &HeartObject, y: &HeartObject) -> Result<Option<HeartMorphism>> {
    if x.branch_ranks() != y.branch_ranks() || x.point_ranks() != y.point_ranks() {
        return Ok(None);
    }
    let basis = heart_hom_basis(x, y)?;
    if basis.is_empty() {
        return Ok(x.is_zero().then(|| HeartMorphism::zero(x, y)));
    }
    let mut rng = seeded_rng(0x4ea7);
    for attempt in 0..40 {
        let bound = if attempt < 10 { 3 } else { 1000 };
        let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-bound..=bound)).collect();
        let f = HeartMorphism::combine(&basis, &coeffs).expect("nonempty basis");
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn heart_isomorphic(x: &HeartObject, y: &HeartObject) -> Result<bool> {
    Ok(find_heart_isomorphism(x, y)?.is_some())
}

/// Kernel with its inclusion into the source.
pub fn heart_kernel(f: &HeartMorphism) -> Result<(HeartObject, HeartMorphism)> {
    require_rational(&f.source.curve)?;
    let (s, t) = (&f.source, &f.target);
    let curve = s.curve.clone();
    let mut branches = Vec::new();
    let mut incl_b = Vec::new();
    for e in 0..s.branches.len() {
        let k = EquivariantMap::new(s.branches[e].clone(), t.branches[e].clone(), f.branch[e].clone())?.kernel()?;
        branches.push(k.rep);
        incl_b.push(k.map);
    }
    let mut points = Vec::new();
    let mut incl_p = Vec::new();
    let mut c = Vec::new();
    for x in 0..s.points.len() {
        let k = EquivariantMap::new(s.points[x].clone(), t.points[x].clone(), f.point[x].clone())?.kernel()?;
        let xi = curve.xi_map(x, &branches, &s.branches, &incl_b)?;
        let image = s.c[x].mul(&xi);
        let cx = coordinates(&k.map, &image).ok_or_else(|| Error::domain("morphism does not restrict to kernels"))?;
        c.push(cx);
        points.push(k.rep);
        incl_p.push(k.map);
    }
    let k = HeartObject::new(curve, branches, points, c)?;
    let incl = HeartMorphism::new(k.clone(), s.clone(), incl_b, incl_p)?;
    Ok((k, incl))
}

/// Cokernel with its projection from the target.
pub fn heart_cokernel(f: &HeartMorphism) -> Result<(HeartObject, HeartMorphism)> {
    require_rational(&f.source.curve)?;
    let (s, t) = (&f.source, &f.target);
    let curve = s.curve.clone();
    let mut branches = Vec::new();
    let mut proj_b = Vec::new();
    for e in 0..s.branches.len() {
        let q = EquivariantMap::new(s.branches[e].clone(), t.branches[e].clone(), f.branch[e].clone())?.cokernel()?;
        branches.push(q.rep);
        proj_b.push(q.map);
    }
    let mut points = Vec::new();
    let mut proj_p = Vec::new();
    let mut c = Vec::new();
    for x in 0..s.points.len() {
        let q = EquivariantMap::new(s.points[x].clone(), t.points[x].clone(), f.point[x].clone())?.cokernel()?;
        let xi = curve.xi_map(x, &t.branches, &branches, &proj_b)?;
        let section = right_inverse(&xi).ok_or_else(|| Error::domain("Ξ of a surjection is not surjective"))?;
        c.push(q.map.mul(&t.c[x]).mul(&section));
        points.push(q.rep);
        proj_p.push(q.map);
    }
    let q = HeartObject::new(curve, branches, points, c)?;
    let proj = HeartMorphism::new(t.clone(), q.clone(), proj_b, proj_p)?;
    Ok((q, proj))
}

/// Image as a subobject of the target, with the factorization of `f` through it and the inclusion.
pub fn heart_image(f: &HeartMorphism) -> Result<(HeartObject, HeartMorphism, HeartMorphism)> {
    require_rational(&f.source.curve)?;
    let (s, t) = (&f.source, &f.target);
    let curve = s.curve.clone();
    let mut branches = Vec::new();
    let mut incl_b = Vec::new();
    for e in 0..s.branches.len() {
        let im = EquivariantMap::new(s.branches[e].clone(), t.branches[e].clone(), f.branch[e].clone())?.image()?;
        branches.push(im.rep);
        incl_b.push(im.map);
    }
    let mut points = Vec::new();
    let mut incl_p = Vec::new();
    let mut c = Vec::new();
    for x in 0..s.points.len() {
        let im = EquivariantMap::new(s.points[x].clone(), t.points[x].clone(), f.point[x].clone())?.image()?;
        let xi = curve.xi_map(x, &branches, &t.branches, &incl_b)?;
        let cx = coordinates(&im.map, &t.c[x].mul(&xi)).ok_or_else(|| Error::domain("image is not a subobject"))?;
        c.push(cx);
        points.push(im.rep);
        incl_p.push(im.map);
    }
    let im = HeartObject::new(curve, branches, points, c)?;
    let incl = HeartMorphism::new(im.clone(), t.clone(), incl_b.clone(), incl_p.clone())?;
    let coords = |basis: &QMatrix, m: &QMatrix| coordinates(basis, m).expect("lands in the image");
    let onto_b = incl_b.iter().zip(&f.branch).map(|(b, m)| coords(b, m)).collect();
    let onto_p = incl_p.iter().zip(&f.point).map(|(b, m)| coords(b, m)).collect();
    let onto = HeartMorphism::new(s.clone(), im.clone(), onto_b, onto_p)?;
    Ok((im, onto, incl))
}

/// The canonical map `j_! L -> ω⁰j_* L`.
pub fn canonical_map(curve: Arc<CurveData>, branches: Vec<ArtinRep>) -> Result<HeartMorphism> {
    let s = HeartObject::j_shriek(curve.clone(), branches.clone())?;
    let t = HeartObject::omega0_j_star(curve, branches)?;
    let branch = s.branches.iter().map(|m| QMatrix::identity(m.dim())).collect();
    let point = s.points.iter().map(|p| QMatrix::zeros(0, p.dim())).collect();
    HeartMorphism::new(s, t, branch, point)
}

/// `j_!* L`: the image of `j_! L -> ω⁰j_* L`.
pub fn intermediate_extension(curve: Arc<CurveData>, branches: Vec<ArtinRep>) -> Result<HeartObject> {
    Ok(heart_image(&canonical_map(curve, branches)?)?.0)
}

/// `ω⁰j_*` of the constant motive on the regular locus.
pub fn weightless_motive(curve: Arc<CurveData>) -> Result<HeartObject> {
    require_rational(&curve)?;
    let unit = (0..curve.branches.len())
        .map(|e| ArtinRep::trivial(curve.branch_group(e).clone(), curve.coefficients.clone(), 1))
        .collect();
    HeartObject::omega0_j_star(curve, unit)
}

/// `j_!*` of `l` on branch `eta`, zero elsewhere.
pub fn branch_extension(curve: &Arc<CurveData>, eta: usize, l: ArtinRep) -> Result<HeartObject> {
    let mut branches: Vec<ArtinRep> = (0..curve.branches.len()).map(|e| zero_rep(curve, Some(e), None)).collect();
    branches[eta] = l;
    intermediate_extension(curve.clone(), branches)
}

/// Simple objects mapping nontrivially into `m`: point simples first, then branch simples.
fn candidates(m: &HeartObject) -> Result<Vec<HeartObject>> {
    let curve = &m.curve;
    let mut out = Vec::new();
    for (x, p) in m.points.iter().enumerate() {
        if p.dim() > 0 {
            for (w, _) in decompose(p)?.parts {
                out.push(HeartObject::point_object(curve.clone(), x, w)?);
            }
        }
    }
    for (e, l) in m.branches.iter().enumerate() {
        if l.dim() > 0 {
            for (s, _) in decompose(l)?.parts {
                out.push(branch_extension(curve, e, s)?);
            }
        }
    }
    Ok(out)
}

/// Simple factors, extracted from the socle one at a time.
pub fn composition_series(m: &HeartObject) -> Result<Vec<HeartObject>> {
    require_rational(&m.curve)?;
    let mut rest = m.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let mut found = None;
        for s in candidates(&rest)? {
            if let Some(h) = heart_hom_basis(&s, &rest)?.into_iter().find(|h| !h.is_zero()) {
                found = Some((s, h));
                break;
            }
        }
        let (s, h) = found.ok_or_else(|| Error::domain("no simple subobject found"))?;
        rest = heart_cokernel(&h)?.0;
        out.push(s);
    }
    Ok(out)
}

/// Simple objects are `i_*W` with `W` simple and `j_!* L` with `L` simple on one branch.
pub fn is_simple(m: &HeartObject) -> Result<bool> {
    require_rational(&m.curve)?;
    let live_b: Vec<&ArtinRep> = m.branches.iter().filter(|r| r.dim() > 0).collect();
    let live_p: Vec<&ArtinRep> = m.points.iter().filter(|r| r.dim() > 0).collect();
    match (live_b.as_slice(), live_p.as_slice()) {
        ([l], []) => crate::grouprep::maschke::is_simple(l),
        ([], [w]) => crate::grouprep::maschke::is_simple(w),
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Coefficients;
    use crate::grouprep::catalog::cyclic;

    fn p1() -> Arc<CurveData> {
        Arc::new(CurveData::projective_line(Coefficients::Rationals, &["0"]).unwrap())
    }

    fn unit(c: &CurveData) -> Vec<ArtinRep> {
        vec![ArtinRep::trivial(c.branch_group(0).clone(), Coefficients::Rationals, 1)]
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let c = p1();
        let m = HeartObject::j_shriek(c.clone(), unit(&c)).unwrap();
        let (k, _) = heart_kernel(&HeartMorphism::identity(&m)).unwrap();
        assert!(k.is_zero());
        let (q, _) = heart_cokernel(&HeartMorphism::identity(&m)).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let c = p1();
        let m = HeartObject::j_shriek(c.clone(), unit(&c)).unwrap();
        let n = HeartObject::omega0_j_star(c.clone(), unit(&c)).unwrap();
        let (k, _) = heart_kernel(&HeartMorphism::zero(&m, &n)).unwrap();
        assert_eq!(k, m);
    }

    #[test]
    fn j_shriek_to_extension_has_point_kernel() {
        let c = p1();
        let f = canonical_map(c.clone(), unit(&c)).unwrap();
        let (k, _) = heart_kernel(&f).unwrap();
        assert_eq!(k.branch_ranks(), vec![0]);
        assert_eq!(k.point_ranks(), vec![1]);
        let (q, _) = heart_cokernel(&f).unwrap();
        assert!(q.is_zero());
        let iext = intermediate_extension(c.clone(), unit(&c)).unwrap();
        assert_eq!(iext.point_ranks(), vec![0]);
        assert!(is_simple(&iext).unwrap());
    }

    #[test]
    fn j_shriek_has_length_two() {
        let c = p1();
        let m = HeartObject::j_shriek(c.clone(), unit(&c)).unwrap();
        let series = composition_series(&m).unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series[0].point_ranks(), vec![1]);
        assert_eq!(series[1].branch_ranks(), vec![1]);
        assert!(!is_simple(&m).unwrap());
    }

    #[test]
    fn omega0_j_star_of_the_unit_is_the_extension() {
        let c = p1();
        let m = HeartObject::omega0_j_star(c.clone(), unit(&c)).unwrap();
        let iext = intermediate_extension(c.clone(), unit(&c)).unwrap();
        assert!(heart_isomorphic(&m, &iext).unwrap());
        assert_eq!(composition_series(&m).unwrap().len(), 1);
    }

    #[test]
    fn regular_local_system_splits() {
        let g = Arc::new(cyclic(3));
        let c = Arc::new(CurveData::single_branch("C", Coefficients::Rationals, g.clone(), &[("0", 1)]).unwrap());
        let reg = ArtinRep::regular(g, Coefficients::Rationals);
        let m = HeartObject::j_shriek(c.clone(), vec![reg]).unwrap();
        // Ξ(regular) has rank 1, so one point factor, then trivial and the 2-dimensional simple
        let series = composition_series(&m).unwrap();
        assert_eq!(series.iter().map(|s| (s.branch_ranks()[0], s.point_ranks()[0])).collect::<Vec<_>>(), vec![(0, 1), (1, 0), (2, 0)]);
        assert!(series.iter().all(|s| is_simple(s).unwrap()));
    }

    #[test]
    fn integral_curves_refuse_abelian_operations() {
        let c = Arc::new(CurveData::projective_line(Coefficients::Integers, &["0"]).unwrap());
        assert!(HeartObject::zero(c.clone()).is_err());
        assert!(weightless_motive(c).is_err());
    }

    #[test]
    fn direct_sum_adds_ranks() {
        let c = Arc::new(CurveData::nodal(Coefficients::Rationals).unwrap());
        let one = |e: usize| ArtinRep::trivial(c.branch_group(e).clone(), Coefficients::Rationals, 1);
        let a = HeartObject::j_shriek(c.clone(), vec![one(0), one(1)]).unwrap();
        let b = weightless_motive(c.clone()).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.branch_ranks(), vec![2, 2]);
        assert_eq!(s.point_ranks(), vec![2]);
        assert_eq!(composition_series(&s).unwrap().len(), 2 + 2 + 2);
    }
}
