//! Checks shared by the heart property suites and the acceptance target.

#![allow(dead_code)]

use artinperv_core::curveheart::glued::{zero_branches, GluedComplex, GluedMap};
use artinperv_core::curveheart::{heart_cokernel, heart_hom_basis, heart_isomorphic, heart_kernel, HeartMorphism, HeartObject};
use artinperv_core::exactalg::QMatrix;
use artinperv_core::grouprep::rep::left_inverse;

/// Morphisms `t -> x` killed by `f` (or `y -> t` killing `f` when `after` is set), as a basis.
fn annihilated(t: &HeartObject, f: &HeartMorphism, after: bool) -> Vec<HeartMorphism> {
    let basis = if after { heart_hom_basis(&f.target, t).unwrap() } else { heart_hom_basis(t, &f.source).unwrap() };
    let composites: Vec<HeartMorphism> = basis
        .iter()
        .map(|b| if after { f.compose(b).unwrap() } else { b.compose(f).unwrap() })
        .collect();
    let rows: usize = composites.first().map_or(0, |c| c.branch.iter().chain(&c.point).map(|m| m.entries().len()).sum());
    let mut e = QMatrix::zeros(rows, basis.len());
    for (j, c) in composites.iter().enumerate() {
        let mut r = 0;
        for m in c.branch.iter().chain(&c.point) {
            for v in m.entries() {
                e.set(r, j, v.clone());
                r += 1;
            }
        }
    }
    let k = e.kernel();
    (0..k.cols())
        .map(|j| {
            let mut out = HeartMorphism::zero(&basis[0].source, &basis[0].target);
            for (i, b) in basis.iter().enumerate() {
                let s = k.get(i, j);
                for (o, m) in out.branch.iter_mut().zip(&b.branch) {
                    *o = o.add(&m.scale(s));
                }
                for (o, m) in out.point.iter_mut().zip(&b.point) {
                    *o = o.add(&m.scale(s));
                }
            }
            out
        })
        .collect()
}

fn right_inverse(a: &QMatrix) -> Option<QMatrix> {
    left_inverse(&a.transpose()).map(|l| l.transpose())
}

fn full_column_rank(m: &QMatrix) -> bool {
    m.rank() == m.cols()
}

fn full_row_rank(m: &QMatrix) -> bool {
    m.rank() == m.rows()
}

/// `ι: K -> X` is a monomorphism with `f ι = 0` through which every `ψ: T -> X` with `f ψ = 0` factors.
pub fn kernel_is_universal(f: &HeartMorphism, test: &HeartObject) -> Result<(), String> {
    let (_, iota) = heart_kernel(f).map_err(|e| e.to_string())?;
    if !iota.compose(f).unwrap().is_zero() {
        return Err("f ι ≠ 0".into());
    }
    if !iota.branch.iter().chain(&iota.point).all(full_column_rank) {
        return Err("ι is not a monomorphism".into());
    }
    for psi in annihilated(test, f, false) {
        let branch: Vec<QMatrix> = iota.branch.iter().zip(&psi.branch).map(|(i, p)| left_inverse(i).unwrap().mul(p)).collect();
        let point: Vec<QMatrix> = iota.point.iter().zip(&psi.point).map(|(i, p)| left_inverse(i).unwrap().mul(p)).collect();
        let u = HeartMorphism::new(test.clone(), iota.source.clone(), branch, point).map_err(|e| format!("factor: {e}"))?;
        if u.compose(&iota).unwrap() != psi {
            return Err("ψ does not factor through the kernel".into());
        }
    }
    Ok(())
}

/// `q: Y -> C` is an epimorphism with `q f = 0` through which every `ψ: Y -> T` with `ψ f = 0` factors.
pub fn cokernel_is_universal(f: &HeartMorphism, test: &HeartObject) -> Result<(), String> {
    let (_, q) = heart_cokernel(f).map_err(|e| e.to_string())?;
    if !f.compose(&q).unwrap().is_zero() {
        return Err("q f ≠ 0".into());
    }
    if !q.branch.iter().chain(&q.point).all(full_row_rank) {
        return Err("q is not an epimorphism".into());
    }
    for psi in annihilated(test, f, true) {
        let branch: Vec<QMatrix> = q.branch.iter().zip(&psi.branch).map(|(s, p)| p.mul(&right_inverse(s).unwrap())).collect();
        let point: Vec<QMatrix> = q.point.iter().zip(&psi.point).map(|(s, p)| p.mul(&right_inverse(s).unwrap())).collect();
        let v = HeartMorphism::new(q.target.clone(), test.clone(), branch, point).map_err(|e| format!("factor: {e}"))?;
        if q.compose(&v).unwrap() != psi {
            return Err("ψ does not factor through the cokernel".into());
        }
    }
    Ok(())
}

/// The canonical map `coim f -> im f` is an isomorphism.
pub fn image_is_coimage(f: &HeartMorphism) -> Result<(), String> {
    let (_, iota) = heart_kernel(f).map_err(|e| e.to_string())?;
    let (_, coim) = heart_cokernel(&iota).map_err(|e| e.to_string())?;
    let (_, q) = heart_cokernel(f).map_err(|e| e.to_string())?;
    let (_, im) = heart_kernel(&q).map_err(|e| e.to_string())?;
    let branch: Vec<QMatrix> = (0..f.branch.len())
        .map(|e| left_inverse(&im.branch[e]).unwrap().mul(&f.branch[e]).mul(&right_inverse(&coim.branch[e]).unwrap()))
        .collect();
    let point: Vec<QMatrix> = (0..f.point.len())
        .map(|x| left_inverse(&im.point[x]).unwrap().mul(&f.point[x]).mul(&right_inverse(&coim.point[x]).unwrap()))
        .collect();
    let g = HeartMorphism::new(coim.target.clone(), im.source.clone(), branch, point).map_err(|e| format!("canonical map: {e}"))?;
    if coim.compose(&g).unwrap().compose(&im).unwrap() != *f {
        return Err("f does not factor as coim -> im".into());
    }
    if !g.is_isomorphism() {
        return Err("coim -> im is not invertible".into());
    }
    Ok(())
}

/// `0 -> i_*H^{-1}i^*M -> j_!j^*M -> M -> i_*H^0 i^*M -> 0`, with `i^*` read from the complex.
pub fn six_term_sequence(m: &HeartObject) -> Result<(), String> {
    let js = HeartObject::j_shriek(m.curve.clone(), m.branches.clone()).map_err(|e| e.to_string())?;
    let branch = m.branches.iter().map(|l| QMatrix::identity(l.dim())).collect();
    let phi = HeartMorphism::new(js, m.clone(), branch, m.c.clone()).map_err(|e| e.to_string())?;
    let (k, iota) = heart_kernel(&phi).map_err(|e| e.to_string())?;
    let (c, q) = heart_cokernel(&phi).map_err(|e| e.to_string())?;
    if !iota.compose(&phi).unwrap().is_zero() || !phi.compose(&q).unwrap().is_zero() {
        return Err("consecutive maps do not compose to zero".into());
    }
    let minimal = GluedComplex::from_heart(m).and_then(|g| g.minimal()).map_err(|e| e.to_string())?;
    let star = |deg: i64| {
        let points: Vec<_> = minimal.b.iter().map(|b| b.term(deg)).collect();
        let c = points.iter().map(|w| QMatrix::zeros(w.dim(), 0)).collect();
        HeartObject::new(m.curve.clone(), zero_branches(&m.curve), points, c).unwrap()
    };
    if !heart_isomorphic(&k, &star(-1)).unwrap() {
        return Err("kernel differs from i_*H^{-1}i^*".into());
    }
    if !heart_isomorphic(&c, &star(0)).unwrap() {
        return Err("cokernel differs from i_*H^0 i^*".into());
    }
    Ok(())
}

/// Short exactness of `X^{≤0} -> X -> X^{≥1}` in every degree and component.
pub fn triangle_is_exact(x: &GluedComplex) -> Result<(), String> {
    let t = x.perverse_truncate().map_err(|e| e.to_string())?;
    t.incl.check().map_err(|e| format!("inclusion: {e}"))?;
    t.proj.check().map_err(|e| format!("projection: {e}"))?;
    let Some((lo, hi)) = t.minimal.degrees() else { return Ok(()) };
    let exact = |i: QMatrix, p: QMatrix, mid: usize| {
        i.rank() == i.cols() && p.rank() == p.rows() && p.mul(&i).is_zero() && i.cols() + p.rows() == mid
    };
    for k in lo..=hi {
        for e in 0..x.a.len() {
            if !exact(t.incl.a_map(e, k), t.proj.a_map(e, k), t.minimal.a[e].dim(k)) {
                return Err(format!("A[{e}] not short exact in degree {k}"));
            }
        }
        for p in 0..x.b.len() {
            if !exact(t.incl.b_map(p, k), t.proj.b_map(p, k), t.minimal.b[p].dim(k)) {
                return Err(format!("B[{p}] not short exact in degree {k}"));
            }
        }
    }
    Ok(())
}

fn same_ranks(x: &GluedComplex, y: &GluedComplex) -> bool {
    let span = |g: &GluedComplex| g.degrees().unwrap_or((0, -1));
    let (lo, hi) = span(x);
    let (lo2, hi2) = span(y);
    (lo.min(lo2)..=hi.max(hi2)).all(|k| {
        x.a.iter().zip(&y.a).all(|(p, q)| p.dim(k) == q.dim(k)) && x.b.iter().zip(&y.b).all(|(p, q)| p.dim(k) == q.dim(k))
    })
}

/// Truncating `X^{≤0}` or `X^{≥1}` again leaves it unchanged and the other half vanishes.
pub fn truncation_is_idempotent(x: &GluedComplex) -> Result<(), String> {
    let t = x.perverse_truncate().map_err(|e| e.to_string())?;
    let tl = t.le.perverse_truncate().map_err(|e| e.to_string())?;
    let tg = t.ge.perverse_truncate().map_err(|e| e.to_string())?;
    if !tl.ge.is_zero() || !same_ranks(&tl.le, &t.le) {
        return Err("truncating X^{≤0} changes it".into());
    }
    if !tg.le.is_zero() || !same_ranks(&tg.ge, &t.ge) {
        return Err("truncating X^{≥1} changes it".into());
    }
    Ok(())
}

pub fn glued_map_is_chain(g: &GluedMap) -> Result<(), String> {
    g.check().map_err(|e| e.to_string())
}

