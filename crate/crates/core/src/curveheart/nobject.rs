//! Objects given by local systems on the branches, a two-term complex `M_x` in degrees `[0, 1]` at
//! each closed point and a chain map `f_x: M_x -> Ξ_x(M)`, where `Ξ_x(M)` sits in degree 0.

use std::fmt;
use std::sync::Arc;

use super::curve::CurveData;
use super::heart::{is_equivariant, right_inverse, zero_rep, HeartMorphism, HeartObject};
use crate::error::{Error, Result};
use crate::exactalg::QMatrix;
use crate::grouprep::ops::EquivariantMap;
use crate::grouprep::ArtinRep;

/// `M⁰ -d-> M¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointComplex {
    pub m0: ArtinRep,
    pub m1: ArtinRep,
    pub d: QMatrix,
}

impl PointComplex {
    pub fn zero(curve: &CurveData, x: usize) -> Self {
        let z = zero_rep(curve, None, Some(x));
        PointComplex { m0: z.clone(), m1: z, d: QMatrix::zeros(0, 0) }
    }

    /// Dimensions of `H⁰` and `H¹`.
    pub fn cohomology_ranks(&self) -> (usize, usize) {
        let r = self.d.rank();
        (self.m0.dim() - r, self.m1.dim() - r)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NObject {
    pub curve: Arc<CurveData>,
    pub branches: Vec<ArtinRep>,
    pub points: Vec<PointComplex>,
    /// Degree-0 component of `f_x`, a map `M⁰ -> Ξ_x(M)`.
    pub f: Vec<QMatrix>,
}

/// A failed condition, with a path such as `points[0].f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn violation(path: impl Into<String>, message: impl Into<String>) -> Violation {
    Violation { path: path.into(), message: message.into() }
}

impl NObject {
    pub fn zero(curve: Arc<CurveData>) -> Self {
        let branches = (0..curve.branches.len()).map(|e| zero_rep(&curve, Some(e), None)).collect();
        let points = (0..curve.points.len()).map(|x| PointComplex::zero(&curve, x)).collect();
        let f = vec![QMatrix::zeros(0, 0); curve.points.len()];
        NObject { curve, branches, points, f }
    }

    /// `M_x = [Ξ_x(L) -id-> Ξ_x(L)]` with `f_x` the identity in degree 0.
    pub fn j_shriek(curve: Arc<CurveData>, branches: Vec<ArtinRep>) -> Result<Self> {
        let mut points = Vec::new();
        let mut f = Vec::new();
        for x in 0..curve.points.len() {
            let xi = curve.xi(x, &branches)?;
            let id = QMatrix::identity(xi.dim());
            points.push(PointComplex { m0: xi.clone(), m1: xi, d: id.clone() });
            f.push(id);
        }
        Ok(NObject { curve, branches, points, f })
    }

    /// `M_x = Ξ_x(L)` in degree 0 with `f_x` the identity.
    pub fn omega0_j_star(curve: Arc<CurveData>, branches: Vec<ArtinRep>) -> Result<Self> {
        let mut points = Vec::new();
        let mut f = Vec::new();
        for x in 0..curve.points.len() {
            let xi = curve.xi(x, &branches)?;
            let id = QMatrix::identity(xi.dim());
            points.push(PointComplex { m0: xi.clone(), m1: zero_rep(&curve, None, Some(x)), d: QMatrix::zeros(0, xi.dim()) });
            f.push(id);
        }
        Ok(NObject { curve, branches, points, f })
    }

    /// All failed conditions; empty when the object is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let c = &self.curve;
        let mut out = Vec::new();
        if self.branches.len() != c.branches.len() {
            out.push(violation("branches", format!("expected {} branches, got {}", c.branches.len(), self.branches.len())));
            return out;
        }
        for (e, m) in self.branches.iter().enumerate() {
            if m.group() != c.branch_group(e) {
                out.push(violation(format!("branches[{e}]"), format!("not a representation of {}", c.branch_group(e).name())));
            } else if *m.coefficients() != c.coefficients {
                out.push(violation(format!("branches[{e}]"), format!("coefficients must be {}", c.coefficients)));
            } else if m.has_divisible_part() {
                out.push(violation(format!("branches[{e}]"), "local systems must be finite free"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        if self.points.len() != c.points.len() || self.f.len() != c.points.len() {
            out.push(violation("points", format!("expected {} closed points", c.points.len())));
            return out;
        }
        for (x, mx) in self.points.iter().enumerate() {
            let path = |s: &str| format!("points[{x}].{s}");
            let gx = c.point_group(x);
            let rx = c.point_coefficients(x);
            let mut shape_ok = true;
            for (name, m) in [("m0", &mx.m0), ("m1", &mx.m1)] {
                if m.group() != gx {
                    out.push(violation(path(name), format!("not a representation of {}", gx.name())));
                    shape_ok = false;
                } else if *m.coefficients() != rx {
                    out.push(violation(path(name), format!("coefficients must be {rx}")));
                    shape_ok = false;
                }
            }
            if !shape_ok {
                continue;
            }
            if !is_equivariant(&mx.m0, &mx.m1, &mx.d) {
                out.push(violation(path("d"), "differential is not an equivariant map of the right shape"));
                continue;
            }
            let xi = match c.xi(x, &self.branches) {
                Ok(xi) => xi,
                Err(e) => {
                    out.push(violation(path("f"), e.to_string()));
                    continue;
                }
            };
            if !is_equivariant(&mx.m0, &xi, &self.f[x]) {
                out.push(violation(path("f"), "f is not an equivariant map M0 -> Xi of the right shape"));
                continue;
            }
            if mx.d.vstack(&self.f[x]).rank() != mx.m0.dim() {
                out.push(violation(path("f"), "H⁰(f_x) not injective"));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `P_x = coker(M⁰ -> M¹ ⊕ Ξ_x(L))` and `c_x` the induced map from `Ξ_x(L)`.
    pub fn to_heart(&self) -> Result<HeartObject> {
        if let Some(v) = self.validate().first() {
            return Err(Error::domain(v.to_string()));
        }
        let mut points = Vec::new();
        let mut c = Vec::new();
        for (x, mx) in self.points.iter().enumerate() {
            let xi = self.curve.xi(x, &self.branches)?;
            let target = mx.m1.direct_sum(&xi)?;
            let a = mx.d.vstack(&self.f[x].neg());
            let q = EquivariantMap::new(mx.m0.clone(), target, a)?.cokernel()?;
            let cols: Vec<usize> = (mx.m1.dim()..mx.m1.dim() + xi.dim()).collect();
            c.push(q.map.select_columns(&cols));
            points.push(q.rep);
        }
        HeartObject::new(self.curve.clone(), self.branches.clone(), points, c)
    }

    /// `M_x = [Ξ_x(L) -c-> P_x]` with `f_x` the identity.
    pub fn from_heart(h: &HeartObject) -> Result<Self> {
        let mut points = Vec::new();
        let mut f = Vec::new();
        for (x, p) in h.points.iter().enumerate() {
            let xi = h.xi(x)?;
            f.push(QMatrix::identity(xi.dim()));
            points.push(PointComplex { m0: xi, m1: p.clone(), d: h.c[x].clone() });
        }
        Ok(NObject { curve: h.curve.clone(), branches: h.branches.clone(), points, f })
    }
}

/// Branch maps and chain maps `(Φ⁰_x, Φ¹_x)` at the closed points.
#[derive(Clone, Debug, PartialEq)]
pub struct NMorphism {
    pub source: NObject,
    pub target: NObject,
    pub branch: Vec<QMatrix>,
    pub point: Vec<(QMatrix, QMatrix)>,
}

impl NMorphism {
    pub fn validate(&self) -> Vec<Violation> {
        let (s, t) = (&self.source, &self.target);
        let mut out: Vec<Violation> = s.validate().into_iter().chain(t.validate()).collect();
        if !out.is_empty() {
            return out;
        }
        if s.curve != t.curve {
            out.push(violation("target", "objects live on different curves"));
            return out;
        }
        if self.branch.len() != s.branches.len() || self.point.len() != s.points.len() {
            out.push(violation("morphism", "component counts do not match the curve"));
            return out;
        }
        for (e, phi) in self.branch.iter().enumerate() {
            if !is_equivariant(&s.branches[e], &t.branches[e], phi) {
                out.push(violation(format!("branch[{e}]"), "not an equivariant map"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (x, (p0, p1)) in self.point.iter().enumerate() {
            let (a, b) = (&s.points[x], &t.points[x]);
            let path = |k: &str| format!("point[{x}].{k}");
            if !is_equivariant(&a.m0, &b.m0, p0) || !is_equivariant(&a.m1, &b.m1, p1) {
                out.push(violation(path("components"), "not equivariant maps"));
                continue;
            }
            if b.d.mul(p0) != p1.mul(&a.d) {
                out.push(violation(path("chain"), "does not commute with the differentials"));
            }
            match s.curve.xi_map(x, &s.branches, &t.branches, &self.branch) {
                Ok(xi) if t.f[x].mul(p0) == xi.mul(&s.f[x]) => {}
                Ok(_) => out.push(violation(path("square"), "square with Ξ does not commute")),
                Err(e) => out.push(violation(path("square"), e.to_string())),
            }
        }
        out
    }

    /// The induced morphism of point forms.
    pub fn to_heart(&self) -> Result<HeartMorphism> {
        if let Some(v) = self.validate().first() {
            return Err(Error::domain(v.to_string()));
        }
        let (s, t) = (&self.source, &self.target);
        let hs = s.to_heart()?;
        let ht = t.to_heart()?;
        let mut point = Vec::new();
        for (x, (_, p1)) in self.point.iter().enumerate() {
            let (a, b) = (&s.points[x], &t.points[x]);
            let xi_s = s.curve.xi(x, &s.branches)?;
            let xi_t = t.curve.xi(x, &t.branches)?;
            let xi_map = s.curve.xi_map(x, &s.branches, &t.branches, &self.branch)?;
            let proj = |m: &PointComplex, xi: &ArtinRep, f: &QMatrix| -> Result<QMatrix> {
                let target = m.m1.direct_sum(xi)?;
                Ok(EquivariantMap::new(m.m0.clone(), target, m.d.vstack(&f.neg()))?.cokernel()?.map)
            };
            let ps = proj(a, &xi_s, &s.f[x])?;
            let pt = proj(b, &xi_t, &t.f[x])?;
            let section = right_inverse(&ps).ok_or_else(|| Error::domain("projection is not surjective"))?;
            point.push(pt.mul(&p1.block_diag(&xi_map)).mul(&section));
        }
        HeartMorphism::new(hs, ht, self.branch.clone(), point)
    }

    /// The chain-level form of a morphism of point forms.
    pub fn from_heart(f: &HeartMorphism) -> Result<Self> {
        let s = NObject::from_heart(&f.source)?;
        let t = NObject::from_heart(&f.target)?;
        let mut point = Vec::new();
        for x in 0..s.points.len() {
            let xi = s.curve.xi_map(x, &s.branches, &t.branches, &f.branch)?;
            point.push((xi, f.point[x].clone()));
        }
        Ok(NMorphism { source: s, target: t, branch: f.branch.clone(), point })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Coefficients;

    fn p1(c: Coefficients) -> Arc<CurveData> {
        Arc::new(CurveData::projective_line(c, &["0"]).unwrap())
    }

    #[test]
    fn zero_object_is_valid() {
        assert!(NObject::zero(p1(Coefficients::Rationals)).is_valid());
        assert!(NObject::zero(p1(Coefficients::Integers)).is_valid());
    }

    #[test]
    fn extensions_of_the_unit() {
        let c = p1(Coefficients::Rationals);
        let one = vec![ArtinRep::trivial(c.branch_group(0).clone(), Coefficients::Rationals, 1)];
        let js = NObject::j_shriek(c.clone(), one.clone()).unwrap();
        assert!(js.is_valid());
        assert_eq!(js.points[0].m1.dim(), 1);
        let os = NObject::omega0_j_star(c.clone(), one.clone()).unwrap();
        assert!(os.is_valid());
        assert_eq!((os.points[0].m0.dim(), os.points[0].m1.dim()), (1, 0));
        assert_eq!(js.to_heart().unwrap(), HeartObject::j_shriek(c.clone(), one.clone()).unwrap());
        assert_eq!(os.to_heart().unwrap(), HeartObject::omega0_j_star(c, one).unwrap());
    }

    #[test]
    fn zero_f_with_cohomology_is_rejected() {
        let c = p1(Coefficients::Rationals);
        let one = vec![ArtinRep::trivial(c.branch_group(0).clone(), Coefficients::Rationals, 1)];
        let mut m = NObject::omega0_j_star(c, one).unwrap();
        m.f[0] = QMatrix::zeros(1, 1);
        let v = m.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].path, "points[0].f");
        assert_eq!(v[0].message, "H⁰(f_x) not injective");
    }

    #[test]
    fn integral_objects_need_localized_points() {
        let r = Coefficients::IntegersLocalizedAt(2);
        let g1 = std::sync::Arc::new(crate::grouprep::catalog::cyclic(1));
        let c2 = std::sync::Arc::new(crate::grouprep::catalog::cyclic(2));
        let y = super::super::curve::FiberPoint { name: "y".into(), branch: 0, inertia: 0, decomposition: vec![0], residue_map: vec![0] };
        let x = super::super::curve::ClosedPoint {
            name: "x".into(),
            residue: crate::grouprep::MarkedProfinite::unmarked(c2.clone()),
            char_exponent: 2,
            fiber: vec![y],
        };
        let branch = super::super::curve::Branch { name: "eta".into(), galois: crate::grouprep::MarkedProfinite::unmarked(g1.clone()) };
        let c = Arc::new(CurveData::new("Spec", r.clone(), vec![branch], vec![x]).unwrap());
        let one = vec![ArtinRep::trivial(g1, r.clone(), 1)];
        let m = NObject::omega0_j_star(c.clone(), one.clone()).unwrap();
        assert!(m.is_valid());
        assert_eq!(m.points[0].m0.coefficients(), &Coefficients::Rationals);
        let mut bad = m.clone();
        bad.points[0].m0 = ArtinRep::regular(c2, r);
        assert_eq!(bad.validate()[0].path, "points[0].m0");
    }

    #[test]
    fn heart_round_trip() {
        let c = p1(Coefficients::Rationals);
        let one = vec![ArtinRep::trivial(c.branch_group(0).clone(), Coefficients::Rationals, 1)];
        let h = HeartObject::j_shriek(c, one).unwrap();
        let n = NObject::from_heart(&h).unwrap();
        assert!(n.is_valid());
        let back = n.to_heart().unwrap();
        assert_eq!(back.point_ranks(), h.point_ranks());
        let id = NMorphism::from_heart(&HeartMorphism::identity(&h)).unwrap();
        assert!(id.validate().is_empty());
        assert!(id.to_heart().unwrap().is_isomorphism());
    }
}
