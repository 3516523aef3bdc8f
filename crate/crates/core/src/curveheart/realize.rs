//! The `ℓ`-adic realization, recorded as a change of coefficient tag.

use super::glued::{cokernel_via_cone, kernel_via_cone};
use super::heart::{HeartMorphism, HeartObject};
use super::nobject::NObject;
use super::curve::CurveData;
use crate::error::{Error, Result};
use crate::exactalg::coefficients::is_prime;

/// Data whose coefficients are extended from `Q` (or `Z_(p)`) to `Q_ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Realized<T> {
    pub ell: u64,
    pub data: T,
}

fn check_ell(curve: &CurveData, ell: u64) -> Result<()> {
    if !is_prime(ell) {
        return Err(Error::domain(format!("{ell} is not a prime")));
    }
    if let Some(x) = curve.points.iter().find(|x| x.char_exponent == ell) {
        return Err(Error::domain(format!("point {} has residue characteristic {ell}", x.name)));
    }
    Ok(())
}

/// Componentwise extension of scalars; tame residues commute with it.
pub fn realize_v(m: &NObject, ell: u64) -> Result<Realized<NObject>> {
    check_ell(&m.curve, ell)?;
    if let Some(v) = m.validate().first() {
        return Err(Error::domain(v.to_string()));
    }
    Ok(Realized { ell, data: m.clone() })
}

pub fn realize_heart(m: &HeartObject, ell: u64) -> Result<Realized<HeartObject>> {
    check_ell(&m.curve, ell)?;
    Ok(Realized { ell, data: m.clone() })
}

pub fn realize_morphism(f: &HeartMorphism, ell: u64) -> Result<Realized<HeartMorphism>> {
    check_ell(&f.source.curve, ell)?;
    Ok(Realized { ell, data: f.clone() })
}

impl Realized<HeartMorphism> {
    /// Kernel on the realized side, as `pH^{-1}` of the cone.
    pub fn kernel(&self) -> Result<Realized<HeartObject>> {
        Ok(Realized { ell: self.ell, data: kernel_via_cone(&self.data)? })
    }

    /// Cokernel on the realized side, as `pH^0` of the cone.
    pub fn cokernel(&self) -> Result<Realized<HeartObject>> {
        Ok(Realized { ell: self.ell, data: cokernel_via_cone(&self.data)? })
    }
}
