//! Curve data: branches of the normalization, closed points and the points above them.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Coefficients, QMatrix};
use crate::grouprep::catalog::cyclic;
use crate::grouprep::ops::{fixed_basis, induce};
use crate::grouprep::rep::left_inverse;
use crate::grouprep::{ArtinRep, FiniteGroup, GroupHom, MarkedProfinite};

/// A point of the normalization over a closed point, with its tame local data.
///
/// `decomposition` lists elements of the branch quotient; `residue_map[i]` is the image of
/// `decomposition[i]` in the residue group of the closed point. The kernel of the residue map must be
/// the cyclic group generated by `inertia`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub name: String,
    pub branch: usize,
    pub inertia: usize,
    pub decomposition: Vec<usize>,
    pub residue_map: Vec<usize>,
}

impl FiberPoint {
    /// Decomposition group generated by the inertia element, trivial residue extension data.
    pub fn tame(name: impl Into<String>, branch: usize, inertia: usize, branch_group: &FiniteGroup, residue_identity: usize) -> Self {
        let decomposition = branch_group.closure(&[inertia]);
        let residue_map = vec![residue_identity; decomposition.len()];
        FiberPoint { name: name.into(), branch, inertia, decomposition, residue_map }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint {
    pub name: String,
    pub residue: MarkedProfinite,
    /// Residue characteristic exponent: 1 or a prime.
    pub char_exponent: u64,
    pub fiber: Vec<FiberPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub name: String,
    pub galois: MarkedProfinite,
}

/// Derived data of a fiber point: the residue group of `y` inside that of `x`, and lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FiberCache {
    inclusion: GroupHom,
    lifts: Vec<usize>,
    inertia: Vec<usize>,
}

/// A regular curve described through its normalization. The open set `U` is the complement of the
/// listed closed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub name: String,
    pub coefficients: Coefficients,
    pub branches: Vec<Branch>,
    pub points: Vec<ClosedPoint>,
    cache: Vec<Vec<FiberCache>>,
}

impl CurveData {
    pub fn new(name: impl Into<String>, coefficients: Coefficients, branches: Vec<Branch>, points: Vec<ClosedPoint>) -> Result<Self> {
        coefficients.validate()?;
        if coefficients.is_torsion() {
            return Err(Error::domain("curve coefficients must be torsion free"));
        }
        let mut cache = Vec::with_capacity(points.len());
        for x in &points {
            if x.char_exponent != 1 && !crate::exactalg::coefficients::is_prime(x.char_exponent) {
                return Err(Error::domain(format!("point {}: characteristic exponent {} is neither 1 nor prime", x.name, x.char_exponent)));
            }
            let gx = &x.residue.quotient;
            let mut row = Vec::with_capacity(x.fiber.len());
            for y in &x.fiber {
                row.push(fiber_cache(&branches, gx, x, y)?);
            }
            cache.push(row);
        }
        Ok(CurveData { name: name.into(), coefficients, branches, points, cache })
    }

    /// `P^1` (or any curve with a single branch) over an algebraically closed field with the given
    /// branch quotient and one inertia mark per removed point.
    pub fn single_branch(name: &str, coefficients: Coefficients, group: Arc<FiniteGroup>, marks: &[(&str, usize)]) -> Result<Self> {
        let trivial = Arc::new(cyclic(1));
        let inertia_marks = marks.iter().map(|(n, g)| (n.to_string(), *g)).collect();
        let galois = MarkedProfinite::new(group.clone(), None, inertia_marks)?;
        let points = marks
            .iter()
            .map(|(n, g)| ClosedPoint {
                name: n.to_string(),
                residue: MarkedProfinite::unmarked(trivial.clone()),
                char_exponent: 1,
                fiber: vec![FiberPoint::tame(*n, 0, *g, &group, 0)],
            })
            .collect();
        Self::new(name, coefficients, vec![Branch { name: "eta".into(), galois }], points)
    }

    /// `P^1` with trivial branch quotient and the given points removed.
    pub fn projective_line(coefficients: Coefficients, points: &[&str]) -> Result<Self> {
        let marks: Vec<(&str, usize)> = points.iter().map(|p| (*p, 0)).collect();
        Self::single_branch("P1", coefficients, Arc::new(cyclic(1)), &marks)
    }

    /// Two rational branches glued at one point over an algebraically closed field.
    pub fn nodal(coefficients: Coefficients) -> Result<Self> {
        let trivial = Arc::new(cyclic(1));
        let branches = (0..2)
            .map(|i| Branch { name: format!("eta{i}"), galois: MarkedProfinite::unmarked(trivial.clone()) })
            .collect();
        let fiber = (0..2).map(|i| FiberPoint::tame(format!("y{i}"), i, 0, &trivial, 0)).collect();
        let point = ClosedPoint {
            name: "node".into(),
            residue: MarkedProfinite::unmarked(trivial.clone()),
            char_exponent: 1,
            fiber,
        };
        Self::new("nodal", coefficients, branches, vec![point])
    }

    pub fn branch_group(&self, eta: usize) -> &Arc<FiniteGroup> {
        &self.branches[eta].galois.quotient
    }

    pub fn point_group(&self, x: usize) -> &Arc<FiniteGroup> {
        &self.points[x].residue.quotient
    }

    /// `R[1/p(x)]`.
    pub fn point_coefficients(&self, x: usize) -> Coefficients {
        self.coefficients.invert(self.points[x].char_exponent)
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|x| x.name == name)
    }

    /// The residue group of `y`, as a group with its inclusion into that of `x`.
    pub fn fiber_inclusion(&self, x: usize, y: usize) -> &GroupHom {
        &self.cache[x][y].inclusion
    }

    fn check_point(&self, x: usize, y: usize) -> Result<()> {
        match self.points.get(x) {
            Some(p) if y < p.fiber.len() => Ok(()),
            _ => Err(Error::domain(format!("unknown fiber point {y} over point {x}"))),
        }
    }

    fn check_branches(&self, reps: &[ArtinRep]) -> Result<()> {
        if reps.len() != self.branches.len() {
            return Err(Error::domain(format!("expected {} branch representations, got {}", self.branches.len(), reps.len())));
        }
        for (eta, m) in reps.iter().enumerate() {
            if m.group() != self.branch_group(eta) {
                return Err(Error::domain(format!("branch {eta}: representation is not over {}", self.branch_group(eta).name())));
            }
        }
        Ok(())
    }

    /// Inertia invariants of `m` (a representation of the branch of `y`) in a fixed basis.
    fn invariant_basis(&self, m: &ArtinRep, x: usize, y: usize) -> Result<QMatrix> {
        fixed_basis(m, &self.cache[x][y].inertia)
    }

    /// `∂_y M`: inertia invariants with the residual action, over `R[1/p(y)]`.
    pub fn partial(&self, m: &ArtinRep, x: usize, y: usize) -> Result<ArtinRep> {
        self.check_point(x, y)?;
        let fp = &self.points[x].fiber[y];
        if m.group() != self.branch_group(fp.branch) {
            return Err(Error::domain(format!("fiber point {}: representation is not over its branch", fp.name)));
        }
        if m.has_divisible_part() {
            return Err(Error::domain("residue functor is defined on finite parts"));
        }
        let v = self.invariant_basis(m, x, y)?;
        let left = left_inverse(&v).expect("independent basis");
        let cache = &self.cache[x][y];
        let elements = cache.lifts.iter().map(|&d| left.mul(m.matrix(d)).mul(&v)).collect();
        let rep = ArtinRep::from_elements(cache.inclusion.source().clone(), m.coefficients().clone(), v.cols(), elements);
        rep.change_coefficients(m.coefficients().invert(self.points[x].char_exponent))
    }

    /// `∂_y` on an equivariant map `phi: m -> n`.
    pub fn partial_map(&self, phi: &QMatrix, m: &ArtinRep, n: &ArtinRep, x: usize, y: usize) -> Result<QMatrix> {
        self.check_point(x, y)?;
        let vm = self.invariant_basis(m, x, y)?;
        let vn = self.invariant_basis(n, x, y)?;
        let left = left_inverse(&vn).expect("independent basis");
        Ok(left.mul(phi).mul(&vm))
    }

    /// `Ξ_x` of a family of branch representations.
    pub fn xi(&self, x: usize, reps: &[ArtinRep]) -> Result<ArtinRep> {
        self.check_branches(reps)?;
        let gx = self.point_group(x).clone();
        let mut parts = Vec::new();
        for (y, fp) in self.points[x].fiber.iter().enumerate() {
            let d = self.partial(&reps[fp.branch], x, y)?;
            parts.push(induce(&d, &self.cache[x][y].inclusion)?);
        }
        ArtinRep::direct_sum_all(gx, self.point_coefficients(x), &parts)
    }

    /// `Ξ_x` of a family of branch maps `maps[eta]: sources[eta] -> targets[eta]`.
    pub fn xi_map(&self, x: usize, sources: &[ArtinRep], targets: &[ArtinRep], maps: &[QMatrix]) -> Result<QMatrix> {
        self.check_branches(sources)?;
        self.check_branches(targets)?;
        let mut blocks = Vec::new();
        for (y, fp) in self.points[x].fiber.iter().enumerate() {
            let b = fp.branch;
            let local = self.partial_map(&maps[b], &sources[b], &targets[b], x, y)?;
            let k = self.point_group(x).order() / self.cache[x][y].inclusion.source().order();
            blocks.extend(std::iter::repeat(local).take(k));
        }
        Ok(QMatrix::direct_sum_all(&blocks))
    }
}

fn fiber_cache(branches: &[Branch], gx: &Arc<FiniteGroup>, x: &ClosedPoint, y: &FiberPoint) -> Result<FiberCache> {
    let err = |msg: &str| Error::domain(format!("fiber point {} over {}: {msg}", y.name, x.name));
    let branch = branches.get(y.branch).ok_or_else(|| err("unknown branch"))?;
    let g = &branch.galois.quotient;
    if y.inertia >= g.order() {
        return Err(err("inertia mark outside the branch quotient"));
    }
    if y.decomposition.len() != y.residue_map.len() {
        return Err(err("residue map and decomposition group differ in length"));
    }
    if !g.is_subgroup(&y.decomposition) {
        return Err(err("decomposition data is not a subgroup"));
    }
    if y.residue_map.iter().any(|&r| r >= gx.order()) {
        return Err(err("residue map leaves the residue group"));
    }
    let pos = |a: usize| y.decomposition.iter().position(|&d| d == a);
    for (i, &a) in y.decomposition.iter().enumerate() {
        for (j, &b) in y.decomposition.iter().enumerate() {
            let k = pos(g.mul(a, b)).expect("closed");
            if y.residue_map[k] != gx.mul(y.residue_map[i], y.residue_map[j]) {
                return Err(err("residue map is not a homomorphism"));
            }
        }
    }
    let inertia = g.closure(&[y.inertia]);
    let kernel: BTreeSet<usize> =
        y.decomposition.iter().zip(&y.residue_map).filter(|(_, &r)| r == gx.identity()).map(|(&d, _)| d).collect();
    if kernel != inertia.iter().copied().collect() {
        return Err(err("kernel of the residue map is not generated by the inertia mark"));
    }
    let image: BTreeSet<usize> = y.residue_map.iter().copied().collect();
    let image: Vec<usize> = image.into_iter().collect();
    let inclusion = gx.subgroup_as_group(format!("{}({})", gx.name(), y.name), &image)?;
    let lifts = inclusion
        .map()
        .iter()
        .map(|&h| y.decomposition[y.residue_map.iter().position(|&r| r == h).expect("in the image")])
        .collect();
    Ok(FiberCache { inclusion, lifts, inertia })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::q_matrix;
    use crate::grouprep::catalog::symmetric3;

    fn q() -> Coefficients {
        Coefficients::Rationals
    }

    #[test]
    fn trivial_rep_has_rank_one_residue() {
        let c = CurveData::projective_line(q(), &["0"]).unwrap();
        let l = ArtinRep::trivial(c.branch_group(0).clone(), q(), 1);
        let d = c.partial(&l, 0, 0).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(c.xi(0, &[l]).unwrap().dim(), 1);
    }

    #[test]
    fn regular_cyclic_has_rank_one_invariants() {
        for n in [2, 3, 5] {
            let g = Arc::new(cyclic(n));
            let c = CurveData::single_branch("C", q(), g.clone(), &[("0", g.generators()[0])]).unwrap();
            let reg = ArtinRep::regular(g, q());
            assert_eq!(c.partial(&reg, 0, 0).unwrap().dim(), 1, "n = {n}");
        }
    }

    #[test]
    fn sign_over_integers_has_no_invariants() {
        let g = Arc::new(cyclic(2));
        let c = CurveData::single_branch("C", Coefficients::Integers, g.clone(), &[("0", 1)]).unwrap();
        let sign = ArtinRep::one_dimensional(g, Coefficients::Integers, &[-1]).unwrap();
        assert_eq!(c.partial(&sign, 0, 0).unwrap().dim(), 0);
    }

    #[test]
    fn nodal_curve_sees_both_branches() {
        let c = CurveData::nodal(q()).unwrap();
        let reps: Vec<ArtinRep> = (0..2).map(|i| ArtinRep::trivial(c.branch_group(i).clone(), q(), 1)).collect();
        let xi = c.xi(0, &reps).unwrap();
        assert_eq!(xi.dim(), 2);
    }

    #[test]
    fn residue_extension_of_degree_two_doubles_rank() {
        // one branch with trivial quotient, residue group C2, fiber point with trivial residue image
        let c1 = Arc::new(cyclic(1));
        let c2 = Arc::new(cyclic(2));
        let y = FiberPoint { name: "y".into(), branch: 0, inertia: 0, decomposition: vec![0], residue_map: vec![0] };
        let x = ClosedPoint { name: "x".into(), residue: MarkedProfinite::unmarked(c2), char_exponent: 2, fiber: vec![y] };
        let branch = Branch { name: "eta".into(), galois: MarkedProfinite::unmarked(c1.clone()) };
        let c = CurveData::new("Z[sqrt5]", Coefficients::IntegersLocalizedAt(2), vec![branch], vec![x]).unwrap();
        let l = ArtinRep::trivial(c1, Coefficients::IntegersLocalizedAt(2), 1);
        let xi = c.xi(0, &[l]).unwrap();
        assert_eq!(xi.dim(), 2);
        assert_eq!(xi.coefficients(), &Coefficients::Rationals);
        assert_eq!(xi.matrix(1), &q_matrix(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn residual_action_comes_from_lifts() {
        // S3 branch; decomposition S3, inertia the 3-cycle, residue map onto C2
        let s3 = Arc::new(symmetric3());
        let c2 = Arc::new(cyclic(2));
        let r = s3.generators()[1];
        let decomposition: Vec<usize> = (0..6).collect();
        let inertia_group = s3.closure(&[r]);
        let residue_map = decomposition.iter().map(|&a| usize::from(!inertia_group.contains(&a))).collect();
        let y = FiberPoint { name: "y".into(), branch: 0, inertia: r, decomposition, residue_map };
        let x = ClosedPoint { name: "x".into(), residue: MarkedProfinite::unmarked(c2), char_exponent: 1, fiber: vec![y] };
        let branch = Branch { name: "eta".into(), galois: MarkedProfinite::unmarked(s3.clone()) };
        let c = CurveData::new("C", q(), vec![branch], vec![x]).unwrap();
        let sign = ArtinRep::one_dimensional(s3.clone(), q(), &[-1, 1]).unwrap();
        let d = c.partial(&sign, 0, 0).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(d.matrix(1), &q_matrix(&[&[-1]]));
        let reg = ArtinRep::regular(s3, q());
        let d = c.partial(&reg, 0, 0).unwrap();
        assert_eq!(d.dim(), 2);
    }

    #[test]
    fn rejects_bad_fiber_data() {
        let c1 = Arc::new(cyclic(1));
        let c2 = Arc::new(cyclic(2));
        // residue map with kernel larger than the inertia group
        let y = FiberPoint { name: "y".into(), branch: 0, inertia: 0, decomposition: vec![0, 1], residue_map: vec![0, 0] };
        let x = ClosedPoint { name: "x".into(), residue: MarkedProfinite::unmarked(c1), char_exponent: 1, fiber: vec![y] };
        let branch = Branch { name: "eta".into(), galois: MarkedProfinite::unmarked(c2) };
        assert!(CurveData::new("C", q(), vec![branch.clone()], vec![x.clone()]).is_err());
        let mut bad = x;
        bad.fiber[0].branch = 3;
        assert!(CurveData::new("C", q(), vec![branch], vec![bad]).is_err());
    }
}
