//! Perverse Artin motives on curves, modelled with exact finite data.
//!
//! Finite quotients of fundamental and Galois groups stand in for the profinite
//! groups, modules over localizations of `Z` carry the coefficients, and
//! divisible torsion is tracked symbolically with its Tate twist.

pub mod error;
pub mod curveheart;
pub mod exactalg;
pub mod grouprep;
pub mod omega0field;
pub mod sncdescent;

pub use error::{Error, Result};
pub use exactalg::{AdmissibleModule, Coefficients, DivisibleModule, FgModule, IntMatrix, QMatrix};
pub use grouprep::{ArtinRep, EquivariantMap, FiniteGroup, GSet, GroupHom, TwistCharacter};
