//! Random curves, heart objects, morphisms and complexes for the property suites.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::curve::{Branch, ClosedPoint, CurveData, FiberPoint};
use super::glued::{GluedComplex, RepComplex};
use super::heart::{heart_hom_basis, HeartMorphism, HeartObject};
use crate::exactalg::{Coefficients, Int, QMatrix, Q};
use crate::grouprep::catalog::{by_name, cyclic};
use crate::grouprep::maschke::decompose;
use crate::grouprep::ops::hom_basis;
use crate::grouprep::random::{random_rep, random_unimodular};
use crate::grouprep::{ArtinRep, FiniteGroup, MarkedProfinite};

const BRANCH_GROUPS: [&str; 11] = ["C1", "C2", "C3", "C4", "V4", "S3", "C6", "C8", "D4", "Q8", "C2xC4"];

fn qq() -> Coefficients {
    Coefficients::Rationals
}

fn small(rng: &mut impl Rng) -> Q {
    Q::from_integer(Int::from(rng.gen_range(-2i64..=2)))
}

/// A random `Q`-combination of the given maps, sparse and with small coefficients.
pub fn combine(rng: &mut impl Rng, basis: &[QMatrix], rows: usize, cols: usize) -> QMatrix {
    basis.iter().fold(QMatrix::zeros(rows, cols), |acc, b| if rng.gen_bool(0.6) { acc.add(&b.scale(&small(rng))) } else { acc })
}

pub fn random_equivariant(rng: &mut impl Rng, m: &ArtinRep, n: &ArtinRep) -> QMatrix {
    let basis = hom_basis(m, n).expect("finite representations");
    combine(rng, &basis, n.dim(), m.dim())
}

/// A fiber point over a closed point with cyclic residue group `C_m`, with decomposition group
/// `⟨g, s⟩` and residue map sending `s` to a generator power.
fn random_fiber_point(rng: &mut impl Rng, name: String, branch: usize, g: &FiniteGroup, gx: &FiniteGroup) -> FiberPoint {
    let m = gx.order();
    let inertia = rng.gen_range(0..g.order());
    let n: Vec<usize> = g.closure(&[inertia]);
    let nset: BTreeSet<usize> = n.iter().copied().collect();
    let mut options = Vec::new();
    for s in 0..g.order() {
        let sub = g.closure(&[inertia, s]);
        if !sub.iter().all(|&a| n.iter().all(|&h| nset.contains(&g.conj(a, h)))) {
            continue;
        }
        let k = sub.len() / n.len();
        if m % k != 0 || (1..k).any(|i| nset.contains(&g.pow(s, i))) {
            continue;
        }
        options.push((s, k, sub));
    }
    let (s, k, sub) = options.choose(rng).cloned().unwrap_or((g.identity(), 1, n.clone()));
    let gen = gx.generators().first().copied().unwrap_or(gx.identity());
    let mut residue = BTreeMap::new();
    for i in 0..k {
        for &h in &n {
            residue.insert(g.mul(g.pow(s, i), h), gx.pow(gen, (m / k) * i));
        }
    }
    let decomposition: Vec<usize> = sub;
    let residue_map = decomposition.iter().map(|d| residue[d]).collect();
    FiberPoint { name, branch, inertia, decomposition, residue_map }
}

/// One or two branches with quotients of order at most 8, one or two closed points.
pub fn random_curve(rng: &mut impl Rng) -> Arc<CurveData> {
    let nb = rng.gen_range(1..=2);
    let branches: Vec<Branch> = (0..nb)
        .map(|e| {
            let g = by_name(BRANCH_GROUPS.choose(rng).expect("nonempty")).expect("catalog group");
            Branch { name: format!("eta{e}"), galois: MarkedProfinite::unmarked(Arc::new(g)) }
        })
        .collect();
    let np = rng.gen_range(1..=2);
    let mut points = Vec::new();
    for x in 0..np {
        let gx = Arc::new(cyclic(rng.gen_range(1..=3)));
        let nf = rng.gen_range(1..=2);
        let fiber = (0..nf)
            .map(|y| {
                let b = rng.gen_range(0..nb);
                random_fiber_point(rng, format!("y{x}{y}"), b, &branches[b].galois.quotient, &gx)
            })
            .collect();
        points.push(ClosedPoint { name: format!("x{x}"), residue: MarkedProfinite::unmarked(gx), char_exponent: 1, fiber });
    }
    Arc::new(CurveData::new("random", qq(), branches, points).expect("consistent random curve"))
}

pub fn random_local_systems(rng: &mut impl Rng, curve: &CurveData, max_dim: usize) -> Vec<ArtinRep> {
    (0..curve.branches.len()).map(|e| random_rep(rng, curve.branch_group(e), &qq(), max_dim)).collect()
}

pub fn random_heart_object(rng: &mut impl Rng, curve: &Arc<CurveData>, max_dim: usize) -> HeartObject {
    let branches = random_local_systems(rng, curve, max_dim);
    let mut points = Vec::new();
    let mut c = Vec::new();
    for x in 0..curve.points.len() {
        let xi = curve.xi(x, &branches).expect("branch representations");
        let p = random_rep(rng, curve.point_group(x), &qq(), max_dim);
        c.push(random_equivariant(rng, &xi, &p));
        points.push(p);
    }
    HeartObject::new(curve.clone(), branches, points, c).expect("random object")
}

/// A random element of `Hom(x, y)`.
pub fn random_morphism(rng: &mut impl Rng, x: &HeartObject, y: &HeartObject) -> HeartMorphism {
    let basis = heart_hom_basis(x, y).expect("same curve");
    let mut f = HeartMorphism::zero(x, y);
    for b in &basis {
        if rng.gen_bool(0.6) {
            let k = small(rng);
            for (o, m) in f.branch.iter_mut().zip(&b.branch) {
                *o = o.add(&m.scale(&k));
            }
            for (o, m) in f.point.iter_mut().zip(&b.point) {
                *o = o.add(&m.scale(&k));
            }
        }
    }
    f
}

/// A morphism between random objects sharing a summand, so that kernels and cokernels are
/// typically both nonzero.
pub fn random_heart_morphism(rng: &mut impl Rng, curve: &Arc<CurveData>, max_dim: usize) -> HeartMorphism {
    let common = random_heart_object(rng, curve, max_dim);
    let x = common.direct_sum(&random_heart_object(rng, curve, max_dim)).expect("same curve");
    let y = random_heart_object(rng, curve, max_dim).direct_sum(&common).expect("same curve");
    random_morphism(rng, &x, &y)
}

/// A simple local system on a random branch.
pub fn random_simple_local_system(rng: &mut impl Rng, curve: &CurveData) -> (usize, ArtinRep) {
    let e = rng.gen_range(0..curve.branches.len());
    loop {
        let m = random_rep(rng, curve.branch_group(e), &qq(), 4);
        if m.dim() == 0 {
            continue;
        }
        let parts = decompose(&m).expect("rational representation").parts;
        let (s, _) = parts.choose(rng).expect("nonzero").clone();
        return (e, s);
    }
}

/// Pieces of one term: the cohomology part, the start of an acyclic pair, the end of one.
struct Pieces {
    formal: ArtinRep,
    start: ArtinRep,
    end: ArtinRep,
}

impl Pieces {
    fn term(&self) -> ArtinRep {
        self.formal.direct_sum(&self.start).and_then(|s| s.direct_sum(&self.end)).expect("same context")
    }

    fn embed(&self, which: usize) -> QMatrix {
        let dims = [self.formal.dim(), self.start.dim(), self.end.dim()];
        let total: usize = dims.iter().sum();
        let off: usize = dims[..which].iter().sum();
        let mut m = QMatrix::zeros(total, dims[which]);
        for i in 0..dims[which] {
            m.set(off + i, i, Q::from_integer(Int::from(1)));
        }
        m
    }

    fn project(&self, which: usize) -> QMatrix {
        self.embed(which).transpose()
    }
}

const LO: i64 = -2;
const HI: i64 = 1;

fn random_pieces(rng: &mut impl Rng, group: &Arc<FiniteGroup>, c: &Coefficients) -> (BTreeMap<i64, Pieces>, Option<i64>) {
    let zero = ArtinRep::zero(group.clone(), c.clone());
    let pair = rng.gen_bool(0.5).then(|| rng.gen_range(LO..HI));
    let n = random_rep(rng, group, c, 2);
    let mut out = BTreeMap::new();
    for k in LO..=HI {
        let formal = if rng.gen_bool(0.6) { random_rep(rng, group, c, 2) } else { zero.clone() };
        let start = if pair == Some(k) { n.clone() } else { zero.clone() };
        let end = if pair == Some(k - 1) { n.clone() } else { zero.clone() };
        out.insert(k, Pieces { formal, start, end });
    }
    (out, pair)
}

fn complex_from(pieces: &BTreeMap<i64, Pieces>, group: &Arc<FiniteGroup>, c: &Coefficients, pair: Option<i64>) -> RepComplex {
    let mut rc = RepComplex::zero(group.clone(), c.clone());
    for (&k, p) in pieces {
        rc.terms.insert(k, p.term());
    }
    if let Some(k) = pair {
        let d = pieces[&(k + 1)].embed(2).mul(&pieces[&k].project(1));
        rc.diffs.insert(k, d);
    }
    rc
}

/// A bounded complex in degrees `[-2, 1]` built from random cohomology, acyclic pairs and `θ`
/// components that vanish on cohomology, presented in a random basis.
pub fn random_glued(rng: &mut impl Rng, curve: &Arc<CurveData>) -> GluedComplex {
    let q = qq();
    let a_pieces: Vec<(BTreeMap<i64, Pieces>, Option<i64>)> =
        (0..curve.branches.len()).map(|e| random_pieces(rng, curve.branch_group(e), &q)).collect();
    let b_pieces: Vec<(BTreeMap<i64, Pieces>, Option<i64>)> =
        (0..curve.points.len()).map(|x| random_pieces(rng, curve.point_group(x), &curve.point_coefficients(x))).collect();
    let mut g = GluedComplex::zero(curve.clone());
    for (e, (p, pair)) in a_pieces.iter().enumerate() {
        g.a[e] = complex_from(p, curve.branch_group(e), &q, *pair);
    }
    for (x, (p, pair)) in b_pieces.iter().enumerate() {
        g.b[x] = complex_from(p, curve.point_group(x), &curve.point_coefficients(x), *pair);
    }
    for x in 0..curve.points.len() {
        for k in LO..=HI {
            let terms = g.branch_term(k);
            let piece_family = |which: usize| -> (Vec<ArtinRep>, Vec<QMatrix>) {
                a_pieces
                    .iter()
                    .map(|(p, _)| {
                        let pk = &p[&k];
                        let rep = [&pk.formal, &pk.start, &pk.end][which].clone();
                        (rep, pk.embed(which))
                    })
                    .unzip()
            };
            let (formal_a, formal_emb) = piece_family(0);
            let (end_a, end_emb) = piece_family(2);
            let xi_formal = curve.xi(x, &formal_a).expect("xi");
            let xi_end = curve.xi(x, &end_a).expect("xi");
            let emb_formal = curve.xi_map(x, &formal_a, &terms, &formal_emb).expect("xi map");
            let emb_end = curve.xi_map(x, &end_a, &terms, &end_emb).expect("xi map");
            let bp = &b_pieces[x].0[&k];
            let t_formal = random_equivariant(rng, &bp.formal, &xi_formal);
            let t_start = random_equivariant(rng, &bp.start, &xi_formal);
            let s_end = random_equivariant(rng, &bp.formal, &xi_end);
            let theta = emb_formal
                .mul(&t_formal.mul(&bp.project(0)).add(&t_start.mul(&bp.project(1))))
                .add(&emb_end.mul(&s_end).mul(&bp.project(0)));
            g.theta[x].insert(k, theta);
        }
    }
    scramble(rng, &g)
}

/// Presents the complex in random bases of every term.
fn scramble(rng: &mut impl Rng, g: &GluedComplex) -> GluedComplex {
    let conj = |rng: &mut _, rc: &RepComplex| -> (RepComplex, BTreeMap<i64, (QMatrix, QMatrix)>) {
        let mut changes = BTreeMap::new();
        let mut out = RepComplex::zero(rc.group.clone(), rc.coefficients.clone());
        for (&k, m) in &rc.terms {
            let (p, inv) = random_unimodular(rng, m.dim());
            let elements = m.element_matrices().iter().map(|a| p.mul(a).mul(&inv)).collect();
            out.terms.insert(k, ArtinRep::from_elements(m.group().clone(), m.coefficients().clone(), m.dim(), elements));
            changes.insert(k, (p, inv));
        }
        for (&k, d) in &rc.diffs {
            out.diffs.insert(k, changes[&(k + 1)].0.mul(d).mul(&changes[&k].1));
        }
        (out, changes)
    };
    let mut out = GluedComplex::zero(g.curve.clone());
    let mut a_changes = Vec::new();
    for (e, a) in g.a.iter().enumerate() {
        let (c, ch) = conj(rng, a);
        out.a[e] = c;
        a_changes.push(ch);
    }
    for (x, b) in g.b.iter().enumerate() {
        let (c, ch) = conj(rng, b);
        out.b[x] = c;
        for (&k, t) in &g.theta[x] {
            let old = g.branch_term(k);
            let new = out.branch_term(k);
            let ps: Vec<QMatrix> = a_changes
                .iter()
                .zip(&old)
                .map(|(ch, m)| ch.get(&k).map_or_else(|| QMatrix::zeros(0, m.dim()), |(p, _)| p.clone()))
                .collect();
            let xi = g.curve.xi_map(x, &old, &new, &ps).expect("xi map");
            let inv = ch.get(&k).map_or_else(|| QMatrix::zeros(0, 0), |(_, inv)| inv.clone());
            out.theta[x].insert(k, xi.mul(t).mul(&inv));
        }
    }
    out
}
