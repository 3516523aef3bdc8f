//! Functors on representations: restriction, induction, invariants, Hom, and
//! kernels, images and cokernels of equivariant maps.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use super::group::{FiniteGroup, GroupHom};
use super::random::seeded_rng;
use super::rep::{left_inverse, twist_power, ArtinRep, DivisibleBlock, TwistCharacter};
use crate::error::{Error, Result};
use crate::exactalg::divisible::divisible_map_kernel;
use crate::exactalg::snf::{int_kernel, smith_normal_form};
use crate::exactalg::{
    AdmissibleModule, Coefficients, FgModule, Int, IntMatrix, QMatrix, Q,
};

enum Ring {
    Field,
    Lattice,
    Torsion(u64),
}

fn ring(c: &Coefficients) -> Ring {
    match c {
        Coefficients::Rationals => Ring::Field,
        Coefficients::IntegersMod(n) => Ring::Torsion(*n),
        _ => Ring::Lattice,
    }
}

/// Restriction along `phi: H -> G`.
pub fn restrict(m: &ArtinRep, phi: &GroupHom) -> Result<ArtinRep> {
    if phi.target() != m.group() {
        return Err(Error::domain(format!(
            "homomorphism {} -> {} does not land in {}",
            phi.source().name(),
            phi.target().name(),
            m.group().name()
        )));
    }
    let h = phi.source();
    let elements = (0..h.order()).map(|x| m.matrix(phi.apply(x)).clone()).collect();
    let mut out = ArtinRep::from_elements(h.clone(), m.coefficients().clone(), m.dim(), elements);
    for b in m.divisible_blocks() {
        let action = (0..h.order()).map(|x| b.action[phi.apply(x)].clone()).collect();
        out = out.with_divisible(DivisibleBlock { action, ..b.clone() })?;
    }
    out.with_character(m.twist_character().pullback(m.group(), h, phi.map()))
}

/// Induction along an injective `iota: H -> G`, with block permutation matrices on left coset representatives.
pub fn induce(m: &ArtinRep, iota: &GroupHom) -> Result<ArtinRep> {
    if iota.source() != m.group() {
        return Err(Error::domain("induction: representation is not over the source group"));
    }
    if !iota.is_injective() {
        return Err(Error::domain(format!(
            "induction along a non-injective map {} -> {}",
            iota.source().name(),
            iota.target().name()
        )));
    }
    let g = iota.target();
    let h = iota.source();
    let image = iota.image();
    let reps = g.left_coset_reps(&image);
    let k = reps.len();
    let preimage: Vec<Option<usize>> = {
        let mut p = vec![None; g.order()];
        for x in 0..h.order() {
            p[iota.apply(x)] = Some(x);
        }
        p
    };
    // g t_j = t_i h
    let locate = |a: usize, j: usize| -> (usize, usize) {
        let gt = g.mul(a, reps[j]);
        for (i, &t) in reps.iter().enumerate() {
            if let Some(x) = preimage[g.mul(g.inv(t), gt)] {
                return (i, x);
            }
        }
        unreachable!("coset representatives cover the group")
    };
    let d = m.dim();
    let elements = (0..g.order())
        .map(|a| {
            let mut out = QMatrix::zeros(k * d, k * d);
            for j in 0..k {
                let (i, x) = locate(a, j);
                out.set_block(i * d, j * d, m.matrix(x));
            }
            out
        })
        .collect();
    let mut out = ArtinRep::from_elements(g.clone(), m.coefficients().clone(), k * d, elements);
    if m.has_divisible_part() && !m.twist_character().is_trivial() {
        return Err(Error::domain("induction of twisted divisible parts needs a trivial twist character"));
    }
    for b in m.divisible_blocks() {
        let r = b.rank;
        let action = (0..g.order())
            .map(|a| {
                let mut out = IntMatrix::zeros(k * r, k * r);
                for j in 0..k {
                    let (i, x) = locate(a, j);
                    out.set_block(i * r, j * r, &b.action[x]);
                }
                out
            })
            .collect();
        out = out.with_divisible(DivisibleBlock { twist: b.twist, support: b.support.clone(), rank: k * r, action })?;
    }
    Ok(out)
}

fn stacked_minus_identity(m: &ArtinRep, elems: &[usize]) -> QMatrix {
    let d = m.dim();
    let blocks: Vec<QMatrix> = elems.iter().map(|&g| m.matrix(g).sub(&QMatrix::identity(d))).collect();
    blocks.iter().fold(QMatrix::zeros(0, d), |acc, b| acc.vstack(b))
}

/// Basis (columns) of the vectors fixed by `elems`; over lattices the basis is saturated.
pub fn fixed_basis(m: &ArtinRep, elems: &[usize]) -> Result<QMatrix> {
    let k = stacked_minus_identity(m, elems);
    match ring(m.coefficients()) {
        Ring::Field => Ok(k.kernel()),
        Ring::Lattice => Ok(int_kernel(&k.clear_denominators()).to_q()),
        Ring::Torsion(_) => Err(Error::domain("fixed vectors over Z/n need not form a free module")),
    }
}

/// Kernel of an integer matrix acting on `(Z/n)^cols`.
fn torsion_kernel_module(c: &Coefficients, k: &IntMatrix, n: u64) -> FgModule {
    let s = smith_normal_form(k);
    let nn = Int::from(n);
    let factors = (0..k.cols())
        .map(|i| if i < k.rows() { s.d.get(i, i).gcd(&nn) } else { nn.clone() })
        .collect();
    FgModule::from_factors(c.clone(), factors, 0)
}

/// Integer matrix whose kernel on `(Q/Z')^r` is the fixed part of block `b` under `g`.
fn divisible_fixed_matrix(m: &ArtinRep, b: &DivisibleBlock, g: usize) -> IntMatrix {
    let id = IntMatrix::identity(b.rank);
    let a = &b.action[g];
    if b.twist == 0 || m.twist_character().is_trivial() {
        return a.sub(&id);
    }
    let pow = m.twist_character().value(m.group(), g).pow(b.twist.unsigned_abs() as u32);
    if b.twist > 0 {
        a.scale(&pow).sub(&id)
    } else {
        a.sub(&id.scale(&pow))
    }
}

/// The submodule fixed by the subgroup generated by `elems`.
pub fn invariants(m: &ArtinRep, elems: &[usize]) -> Result<AdmissibleModule> {
    let g = m.group();
    if elems.iter().any(|&x| x >= g.order()) {
        return Err(Error::domain("invariants: element out of range"));
    }
    let c = m.coefficients();
    let finite = match ring(c) {
        Ring::Field | Ring::Lattice => FgModule::free(c.clone(), fixed_basis(m, elems)?.cols()),
        Ring::Torsion(n) => {
            let k = stacked_minus_identity(m, elems).clear_denominators();
            torsion_kernel_module(c, &k, n)
        }
    };
    let mut out = AdmissibleModule::finite(finite);
    for b in m.divisible_blocks() {
        if b.rank == 0 || b.support.is_empty() {
            continue;
        }
        let k = elems
            .iter()
            .map(|&x| divisible_fixed_matrix(m, b, x))
            .fold(IntMatrix::zeros(0, b.rank), |acc, blk| acc.vstack(&blk));
        out = out.direct_sum(&divisible_map_kernel(&k, b.twist, &b.support, c))?;
    }
    Ok(out)
}

/// Invariants under a named subgroup of the representation's group.
pub fn invariants_named(m: &ArtinRep, subgroup: &str) -> Result<AdmissibleModule> {
    let elems = m
        .group()
        .subgroup(subgroup)
        .ok_or_else(|| Error::domain(format!("unknown subgroup {subgroup} of {}", m.group().name())))?
        .to_vec();
    invariants(m, &elems)
}

/// Linear equations in `vec(X)` (row-major, `X` of shape `n x m`) for `N_g X = X M_g`.
fn hom_equations(m: &ArtinRep, n: &ArtinRep) -> QMatrix {
    let (dm, dn) = (m.dim(), n.dim());
    let gens = m.group().generators();
    let mut e = QMatrix::zeros(gens.len() * dn * dm, dn * dm);
    for (k, &g) in gens.iter().enumerate() {
        let (mg, ng) = (m.matrix(g), n.matrix(g));
        for i in 0..dn {
            for j in 0..dm {
                let row = k * dn * dm + i * dm + j;
                for a in 0..dn {
                    let v = ng.get(i, a);
                    if !v.is_zero() {
                        let cur = e.get(row, a * dm + j).clone();
                        e.set(row, a * dm + j, cur + v);
                    }
                }
                for b in 0..dm {
                    let v = mg.get(b, j);
                    if !v.is_zero() {
                        let cur = e.get(row, i * dm + b).clone();
                        e.set(row, i * dm + b, cur - v);
                    }
                }
            }
        }
    }
    e
}

fn unvec(v: &[Q], rows: usize, cols: usize) -> QMatrix {
    QMatrix::new(rows, cols, v.to_vec())
}

fn finite_only(m: &ArtinRep, n: &ArtinRep) -> Result<()> {
    m.same_context(n)?;
    if m.has_divisible_part() || n.has_divisible_part() {
        return Err(Error::domain("Hom is only computed between finite parts"));
    }
    Ok(())
}

/// A basis of `Hom_G(M, N)` as `dim N x dim M` matrices; a lattice basis over `Z`-like rings.
pub fn hom_basis(m: &ArtinRep, n: &ArtinRep) -> Result<Vec<QMatrix>> {
    finite_only(m, n)?;
    let e = hom_equations(m, n);
    let k = match ring(m.coefficients()) {
        Ring::Field => e.kernel(),
        Ring::Lattice => int_kernel(&e.clear_denominators()).to_q(),
        Ring::Torsion(_) => return Err(Error::domain("Hom over Z/n need not be free; use hom_space")),
    };
    Ok((0..k.cols()).map(|j| unvec(&k.column(j), n.dim(), m.dim())).collect())
}

/// `Hom_G(M, N)` as a module: the invariants of `M* (x) N`.
pub fn hom_space(m: &ArtinRep, n: &ArtinRep) -> Result<AdmissibleModule> {
    finite_only(m, n)?;
    let c = m.coefficients();
    let finite = match ring(c) {
        Ring::Torsion(q) => torsion_kernel_module(c, &hom_equations(m, n).clear_denominators(), q),
        _ => FgModule::free(c.clone(), hom_basis(m, n)?.len()),
    };
    Ok(AdmissibleModule::finite(finite))
}

pub fn hom_rank(m: &ArtinRep, n: &ArtinRep) -> Result<usize> {
    Ok(hom_space(m, n)?.finite.free_rank())
}

fn is_invertible_over(c: &Coefficients, x: &QMatrix) -> bool {
    if x.rows() == 0 {
        return true;
    }
    let det = x.det();
    match c {
        Coefficients::IntegersMod(n) => det.to_integer().gcd(&Int::from(*n)).is_one(),
        _ => !det.is_zero() && c.contains(&det.recip()),
    }
}

/// An isomorphism `M -> N`, found by testing random elements of `Hom(M, N)`.
pub fn find_isomorphism(m: &ArtinRep, n: &ArtinRep) -> Result<Option<QMatrix>> {
    finite_only(m, n)?;
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(QMatrix::zeros(0, 0)));
    }
    let basis = hom_basis(m, n)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = seeded_rng(0x150);
    for attempt in 0..40 {
        let bound = if attempt < 10 { 3 } else { 1000 };
        let x = basis.iter().fold(QMatrix::zeros(n.dim(), m.dim()), |acc, b| {
            acc.add(&b.scale(&Q::from_integer(Int::from(rng.gen_range(-bound..=bound)))))
        });
        if is_invertible_over(m.coefficients(), &x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &ArtinRep, n: &ArtinRep) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}

/// An equivariant map between finite parts.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantMap {
    source: ArtinRep,
    target: ArtinRep,
    matrix: QMatrix,
}

/// A subobject or quotient with its structure map.
#[derive(Clone, Debug)]
pub struct Induced {
    pub rep: ArtinRep,
    /// Inclusion into the target for kernels and images, projection from the target for cokernels.
    pub map: QMatrix,
}

impl EquivariantMap {
    pub fn new(source: ArtinRep, target: ArtinRep, matrix: QMatrix) -> Result<Self> {
        source.same_context(&target)?;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::domain(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let c = source.coefficients();
        if let Some(bad) = matrix.entries().iter().find(|v| !c.contains(v)) {
            return Err(Error::domain(format!("entry {bad} does not lie in {c}")));
        }
        let matrix = c.reduce_matrix(&matrix);
        for &g in source.group().generators() {
            let lhs = c.reduce_matrix(&target.matrix(g).mul(&matrix));
            let rhs = c.reduce_matrix(&matrix.mul(source.matrix(g)));
            if lhs != rhs {
                return Err(Error::domain("map does not commute with the group action"));
            }
        }
        Ok(EquivariantMap { source, target, matrix })
    }

    pub fn identity(m: &ArtinRep) -> Self {
        EquivariantMap { source: m.clone(), target: m.clone(), matrix: QMatrix::identity(m.dim()) }
    }

    pub fn zero(source: &ArtinRep, target: &ArtinRep) -> Self {
        EquivariantMap {
            source: source.clone(),
            target: target.clone(),
            matrix: QMatrix::zeros(target.dim(), source.dim()),
        }
    }

    pub fn source(&self) -> &ArtinRep {
        &self.source
    }

    pub fn target(&self) -> &ArtinRep {
        &self.target
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn compose(&self, after: &EquivariantMap) -> Result<EquivariantMap> {
        if after.source.dim() != self.target.dim() {
            return Err(Error::domain("composition of incompatible maps"));
        }
        let c = self.source.coefficients();
        Ok(EquivariantMap {
            source: self.source.clone(),
            target: after.target.clone(),
            matrix: c.reduce_matrix(&after.matrix.mul(&self.matrix)),
        })
    }

    fn lattice_matrix(&self) -> Result<IntMatrix> {
        match ring(self.source.coefficients()) {
            Ring::Torsion(_) => Err(Error::domain("representation-valued kernels over Z/n are not supported; use the module forms")),
            _ => Ok(self.matrix.clear_denominators()),
        }
    }

    pub fn kernel(&self) -> Result<Induced> {
        let basis = match ring(self.source.coefficients()) {
            Ring::Field => self.matrix.kernel(),
            _ => int_kernel(&self.lattice_matrix()?).to_q(),
        };
        Ok(Induced { rep: self.source.subrep(&basis)?, map: basis })
    }

    pub fn image(&self) -> Result<Induced> {
        let basis = match ring(self.source.coefficients()) {
            Ring::Field => self.matrix.column_basis(),
            _ => {
                let a = self.lattice_matrix()?;
                let s = smith_normal_form(&a);
                let uinv = s.u.to_q().inverse().expect("unimodular");
                let r = s.rank();
                let mut b = QMatrix::zeros(a.rows(), r);
                for i in 0..r {
                    let d = self.source.coefficients().nonunit_part(s.d.get(i, i));
                    for row in 0..a.rows() {
                        b.set(row, i, uinv.get(row, i).clone() * Q::from_integer(d.clone()));
                    }
                }
                b
            }
        };
        Ok(Induced { rep: self.target.subrep(&basis)?, map: basis })
    }

    pub fn cokernel(&self) -> Result<Induced> {
        match ring(self.source.coefficients()) {
            Ring::Field => {
                let image = self.matrix.column_basis();
                let complement = image.complement_basis();
                let (rep, proj) = self.target.quotient_rep(&image, &complement)?;
                Ok(Induced { rep, map: proj })
            }
            _ => {
                let a = self.lattice_matrix()?;
                let s = smith_normal_form(&a);
                let r = s.rank();
                let c = self.source.coefficients();
                if let Some(d) = s.invariant_factors().iter().find(|d| !c.is_unit(d)) {
                    return Err(Error::domain(format!("cokernel has torsion (factor {d}); use cokernel_module")));
                }
                let u = s.u.to_q();
                let uinv = u.inverse().expect("unimodular");
                let rows: Vec<usize> = (r..a.rows()).collect();
                let proj = u.select_rows(&rows);
                let section = uinv.select_columns(&rows);
                let elements = self
                    .target
                    .element_matrices()
                    .iter()
                    .map(|m| proj.mul(m).mul(&section))
                    .collect();
                let rep = ArtinRep::from_elements(self.target.group().clone(), c.clone(), rows.len(), elements);
                Ok(Induced { rep, map: proj })
            }
        }
    }

    pub fn kernel_module(&self) -> Result<FgModule> {
        let c = self.source.coefficients();
        match ring(c) {
            Ring::Torsion(n) => Ok(torsion_kernel_module(c, &self.matrix.clear_denominators(), n)),
            _ => Ok(FgModule::free(c.clone(), self.kernel()?.rep.dim())),
        }
    }

    pub fn cokernel_module(&self) -> Result<FgModule> {
        let c = self.source.coefficients();
        FgModule::new(c.clone(), self.matrix.clear_denominators().transpose())
    }

    pub fn image_module(&self) -> Result<FgModule> {
        let c = self.source.coefficients();
        match ring(c) {
            Ring::Torsion(n) => {
                let nn = Int::from(n);
                let s = smith_normal_form(&self.matrix.clear_denominators());
                let factors = s.invariant_factors().iter().map(|d| &nn / d.gcd(&nn)).collect();
                Ok(FgModule::from_factors(c.clone(), factors, 0))
            }
            _ => Ok(FgModule::free(c.clone(), self.image()?.rep.dim())),
        }
    }
}

/// Twists every level action by `chi(g)^m`; labels of divisible parts shift by `m`.
pub fn tate_twist(m: &ArtinRep, shift: i64, chi: &TwistCharacter) -> Result<ArtinRep> {
    if shift == 0 {
        return Ok(m.clone());
    }
    let nontrivial = !chi.is_trivial();
    if let TwistCharacter::Generators(v) = chi {
        if v.len() != m.group().generators().len() {
            return Err(Error::domain("twist character needs one value per generator"));
        }
    }
    let mut out = m.finite_part();
    if nontrivial && m.dim() > 0 {
        match m.coefficients() {
            Coefficients::IntegersMod(n) => {
                let nn = Int::from(*n);
                let vals = chi.at_level(m.group(), &nn)?;
                let elements = (0..m.group().order())
                    .map(|g| {
                        let s = twist_power(&vals[g], shift, &nn);
                        m.matrix(g).map(|v| Q::from_integer((v.to_integer() * &s).mod_floor(&nn)))
                    })
                    .collect();
                out = ArtinRep::from_elements(m.group().clone(), m.coefficients().clone(), m.dim(), elements);
            }
            _ => return Err(Error::domain("twist requires torsion or divisible target")),
        }
    }
    let existing = m.twist_character();
    let uses_existing = m.divisible_blocks().iter().any(|b| b.twist != 0) && !existing.is_trivial();
    if m.has_divisible_part() && nontrivial && uses_existing && existing != chi {
        return Err(Error::domain("divisible part already carries a different twist character"));
    }
    for b in m.divisible_blocks() {
        out = out.with_divisible(DivisibleBlock { twist: b.twist + shift, ..b.clone() })?;
    }
    let tagged = m.divisible_blocks().iter().any(|b| b.twist + shift != 0);
    let character = match (tagged, nontrivial) {
        (false, _) => TwistCharacter::Trivial,
        (true, true) => chi.clone(),
        (true, false) => existing.clone(),
    };
    out.with_character(character)
}

/// Character values are constant on conjugacy classes.
pub fn character_is_class_function(m: &ArtinRep) -> bool {
    let chi = m.character();
    m.group().conjugacy_classes().iter().all(|cls| cls.iter().all(|&x| chi[x] == chi[cls[0]]))
}

/// Reynolds average `1/|G| sum g p g^-1` of a linear map `p: M -> M`.
pub fn average(m: &ArtinRep, p: &QMatrix) -> QMatrix {
    let g = m.group();
    let mut acc = QMatrix::zeros(p.rows(), p.cols());
    for a in 0..g.order() {
        acc = acc.add(&m.matrix(a).mul(p).mul(m.matrix(g.inv(a))));
    }
    acc.scale(&Q::new(Int::one(), Int::from(g.order())))
}

/// The subgroup `elems` as a group with its inclusion, named after the ambient group.
pub fn subgroup_hom(g: &Arc<FiniteGroup>, elems: &[usize]) -> Result<GroupHom> {
    g.subgroup_as_group(format!("{}<{}>", g.name(), elems.len()), elems)
}

/// Coordinates of the columns of `x` in the basis `b` (columns), when they lie in its span.
pub fn coordinates(b: &QMatrix, x: &QMatrix) -> Option<QMatrix> {
    let l = left_inverse(b)?;
    let c = l.mul(x);
    (b.mul(&c) == *x).then_some(c)
}

pub fn q_int(v: i64) -> Q {
    Q::from_integer(Int::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::q_matrix;
    use crate::grouprep::catalog;
    use crate::grouprep::group::GSet;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(catalog::symmetric3())
    }

    #[test]
    fn regular_restricted_to_c2_is_three_free_orbits() {
        let g = s3();
        let reg = ArtinRep::regular(g.clone(), Coefficients::Rationals);
        let c2 = subgroup_hom(&g, &g.closure(&[g.generators()[0]])).unwrap();
        let res = restrict(&reg, &c2).unwrap();
        let c2reg = ArtinRep::regular(c2.source().clone(), Coefficients::Rationals);
        let three = ArtinRep::direct_sum_all(c2.source().clone(), Coefficients::Rationals, &[c2reg.clone(), c2reg.clone(), c2reg]).unwrap();
        assert!(is_isomorphic(&res, &three).unwrap());
    }

    #[test]
    fn sign_restricted_to_a3_is_trivial() {
        let g = s3();
        let sign = ArtinRep::one_dimensional(g.clone(), Coefficients::Rationals, &[-1, 1]).unwrap();
        let a3 = subgroup_hom(&g, &g.closure(&[g.generators()[1]])).unwrap();
        let res = restrict(&sign, &a3).unwrap();
        assert!(res.element_matrices().iter().all(QMatrix::is_identity));
    }

    #[test]
    fn induced_trivial_from_c2_has_permutation_character() {
        let g = s3();
        let c2 = subgroup_hom(&g, &g.closure(&[g.generators()[0]])).unwrap();
        let triv = ArtinRep::trivial(c2.source().clone(), Coefficients::Rationals, 1);
        let ind = induce(&triv, &c2).unwrap();
        assert_eq!(ind.dim(), 3);
        let chi = ind.character();
        for cls in g.conjugacy_classes() {
            let x = cls[0];
            let expected = match g.element_order(x) {
                1 => 3,
                2 => 1,
                _ => 0,
            };
            assert_eq!(chi[x], q_int(expected));
        }
        let perm = ArtinRep::permutation(&GSet::cosets(g.clone(), &c2.image()), Coefficients::Rationals);
        assert!(is_isomorphic(&ind, &perm).unwrap());
    }

    #[test]
    fn induced_from_trivial_subgroup_is_regular() {
        let g = s3();
        let e = subgroup_hom(&g, &[g.identity()]).unwrap();
        let ind = induce(&ArtinRep::trivial(e.source().clone(), Coefficients::Rationals, 1), &e).unwrap();
        assert!(is_isomorphic(&ind, &ArtinRep::regular(g, Coefficients::Rationals)).unwrap());
    }

    #[test]
    fn invariants_examples() {
        let c5 = Arc::new(catalog::cyclic(5));
        let reg = ArtinRep::regular(c5.clone(), Coefficients::Rationals);
        assert_eq!(invariants(&reg, c5.generators()).unwrap().free_rank(), 1);
        let c2 = Arc::new(catalog::cyclic(2));
        let sign = ArtinRep::one_dimensional(c2.clone(), Coefficients::Integers, &[-1]).unwrap();
        assert!(invariants(&sign, c2.generators()).unwrap().is_zero());
        let triv = ArtinRep::trivial(c2.clone(), Coefficients::Integers, 3);
        assert_eq!(invariants(&triv, &[1]).unwrap().free_rank(), 3);
    }

    #[test]
    fn sign_invariants_mod_4_are_two_torsion() {
        let c2 = Arc::new(catalog::cyclic(2));
        let sign = ArtinRep::one_dimensional(c2.clone(), Coefficients::IntegersMod(4), &[-1]).unwrap();
        let inv = invariants(&sign, c2.generators()).unwrap();
        assert_eq!(inv.finite.invariant_factors(), &[Int::from(2)]);
    }

    #[test]
    fn mackey_count_for_s3() {
        let g = s3();
        let c2 = subgroup_hom(&g, &g.closure(&[g.generators()[0]])).unwrap();
        let ind = induce(&ArtinRep::trivial(c2.source().clone(), Coefficients::Rationals, 1), &c2).unwrap();
        assert_eq!(hom_rank(&ind, &ind).unwrap(), 2);
    }

    #[test]
    fn augmentation_kernel_is_sign() {
        let c2 = Arc::new(catalog::cyclic(2));
        let reg = ArtinRep::regular(c2.clone(), Coefficients::Rationals);
        let triv = ArtinRep::trivial(c2.clone(), Coefficients::Rationals, 1);
        let aug = EquivariantMap::new(reg, triv, q_matrix(&[&[1, 1]])).unwrap();
        let k = aug.kernel().unwrap();
        let sign = ArtinRep::one_dimensional(c2, Coefficients::Rationals, &[-1]).unwrap();
        assert!(is_isomorphic(&k.rep, &sign).unwrap());
        assert!(aug.matrix().mul(&k.map).is_zero());
    }

    #[test]
    fn integral_cokernel_with_torsion_is_refused() {
        let c2 = Arc::new(catalog::cyclic(2));
        let triv = ArtinRep::trivial(c2, Coefficients::Integers, 1);
        let two = EquivariantMap::new(triv.clone(), triv, q_matrix(&[&[2]])).unwrap();
        assert!(two.cokernel().is_err());
        assert_eq!(two.cokernel_module().unwrap().invariant_factors(), &[Int::from(2)]);
    }

    #[test]
    fn twist_rules() {
        let c2 = Arc::new(catalog::cyclic(2));
        let chi = TwistCharacter::Generators(vec![Int::from(-1)]);
        let q = ArtinRep::trivial(c2.clone(), Coefficients::Rationals, 1);
        assert_eq!(tate_twist(&q, 0, &chi).unwrap(), q);
        assert_eq!(
            tate_twist(&q, 1, &chi).unwrap_err().to_string(),
            "twist requires torsion or divisible target"
        );
        let z4 = ArtinRep::trivial(c2.clone(), Coefficients::IntegersMod(4), 1);
        let t = tate_twist(&z4, 1, &chi).unwrap();
        assert_eq!(t.matrix(1).get(0, 0), &q_int(3));
        let d = ArtinRep::divisible_trivial(c2, Coefficients::Integers, 0, crate::exactalg::PrimeSupport::all(), 1);
        let dt = tate_twist(&d, -1, &TwistCharacter::Trivial).unwrap();
        assert_eq!(dt.divisible_blocks()[0].twist, -1);
        let twice = tate_twist(&tate_twist(&d, 2, &chi).unwrap(), -3, &chi).unwrap();
        assert_eq!(twice, tate_twist(&d, -1, &chi).unwrap());
    }

    #[test]
    fn twisted_divisible_invariants_are_finite() {
        // Q/Z(1) with the generator acting by -1: fixed part Z/2
        let c2 = Arc::new(catalog::cyclic(2));
        let d = ArtinRep::divisible_trivial(c2.clone(), Coefficients::Integers, 1, crate::exactalg::PrimeSupport::all(), 1)
            .with_character(TwistCharacter::Generators(vec![Int::from(-1)]))
            .unwrap();
        let inv = invariants(&d, c2.generators()).unwrap();
        assert_eq!(inv.finite.invariant_factors(), &[Int::from(2)]);
        assert!(inv.divisible.is_zero());
    }
}
