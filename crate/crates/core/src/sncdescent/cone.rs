//! The cone over an abelian variety: the third perverse cohomology sheaf at the vertex.

use crate::error::{Error, Result};
use crate::exactalg::coefficients::is_prime;
use crate::exactalg::divisible::divisible_map_kernel;
use crate::exactalg::{AdmissibleModule, Coefficients, DivisibleModule, FgModule, IntMatrix};
use crate::omega0field::geom::mu_rank;
use crate::omega0field::GeomDatum;

/// `0 -> mu_1(E) -> H^3 -> M -> 0` at the vertex, with `M = ker(Q/Z'(-1) -> mu^2(E))`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeReport {
    pub dimension: usize,
    pub ell: u64,
    pub sub: AdmissibleModule,
    /// `None` when `E` has dimension 0 and is no divisor.
    pub quotient: Option<AdmissibleModule>,
    pub h3: Option<AdmissibleModule>,
    pub divisible_rank: usize,
    /// Copies of `Z(l^infinity)` inside `H^3`.
    pub ell_rank: usize,
    pub constructible: bool,
}

/// `hyperplane` is the class of a hyperplane section in `mu^2(E)`; the default is primitive.
pub fn cone_pipeline(e: &GeomDatum, ell: u64, hyperplane: Option<&[i64]>) -> Result<ConeReport> {
    let p = e.base.char_exponent;
    if !is_prime(ell) || ell == p {
        return Err(Error::domain(format!("l = {ell} must be a prime different from the characteristic exponent {p}")));
    }
    let r = Coefficients::Integers.invert(p);
    let support = e.base.support();
    let b1 = mu_rank(e, 1);
    let sub = AdmissibleModule { finite: FgModule::zero(r.clone()), divisible: DivisibleModule::single(0, support.clone(), b1) };
    if e.dimension == 0 {
        return Ok(ConeReport {
            dimension: 0,
            ell,
            sub,
            quotient: None,
            h3: None,
            divisible_rank: 0,
            ell_rank: 0,
            constructible: true,
        });
    }
    let b2 = mu_rank(e, 2);
    let h: Vec<i64> = match hyperplane {
        Some(h) if h.len() == b2 && h.iter().any(|&x| x != 0) => h.to_vec(),
        Some(_) => return Err(Error::domain(format!("hyperplane class must be a nonzero vector of length {b2}"))),
        None => (0..b2).map(|i| i64::from(i == 0)).collect(),
    };
    let column = IntMatrix::new(b2, 1, h.into_iter().map(Into::into).collect());
    let quotient = divisible_map_kernel(&column, -1, &support, &r);
    let h3 = sub.direct_sum(&quotient)?;
    Ok(ConeReport {
        dimension: e.dimension,
        ell,
        divisible_rank: h3.divisible_rank(),
        ell_rank: h3.divisible.rank_at(ell),
        constructible: h3.is_finitely_presented(),
        sub,
        quotient: Some(quotient),
        h3: Some(h3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Int;
    use crate::omega0field::geom::{abelian_variety, BaseField};

    #[test]
    fn divisible_hyperplane_class_leaves_finite_quotient() {
        let base = BaseField::closed(1).unwrap();
        let e = abelian_variety(&base, 1);
        let r = cone_pipeline(&e, 3, Some(&[6])).unwrap();
        assert_eq!(r.quotient.unwrap().finite.invariant_factors(), &[Int::from(6)]);
        assert_eq!(r.divisible_rank, 2);
        assert!(cone_pipeline(&e, 4, None).is_err());
    }
}
