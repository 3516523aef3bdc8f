//! Finite groups and their representations over the coefficient rings.

pub mod catalog;
pub mod group;
pub mod marked;
pub mod maschke;
pub mod ops;
pub mod random;
pub mod rep;

pub use group::{FiniteGroup, GSet, GroupHom};
pub use marked::MarkedProfinite;
pub use maschke::{decompose, Decomposition};
pub use ops::{hom_basis, hom_space, induce, invariants, restrict, tate_twist, EquivariantMap};
pub use rep::{ArtinRep, DivisibleBlock, TwistCharacter};
