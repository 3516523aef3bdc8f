//! Perverse Artin motives on a one-dimensional base.

pub mod curve;
pub mod glued;
pub mod heart;
pub mod nobject;
pub mod random;
pub mod realize;

pub use curve::{Branch, ClosedPoint, CurveData, FiberPoint};
pub use glued::{derived_hom_rank, GluedComplex, GluedMap, RepComplex, Truncation};
pub use heart::{
    composition_series, heart_cokernel, heart_hom_basis, heart_image, heart_isomorphic, heart_kernel,
    intermediate_extension, is_simple, weightless_motive, HeartMorphism, HeartObject,
};
pub use nobject::{NMorphism, NObject, PointComplex, Violation};
pub use realize::{realize_heart, realize_morphism, realize_v, Realized};
