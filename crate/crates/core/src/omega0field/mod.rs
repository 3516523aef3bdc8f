//! The Artin truncation of pushforwards to a field, and the constructibility verdict.

pub mod geom;
pub mod pushforward;

pub use geom::{BaseField, GeomDatum};
pub use pushforward::{
    constructibility_verdict, omega0_pushforward, omega0_pushforward_twisted, DiscreteComplex, Verdict,
};
