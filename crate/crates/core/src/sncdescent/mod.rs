//! Descent for simple normal crossing configurations and its spectral sequences.

pub mod cone;
pub mod data;
pub mod page;

pub use cone::{cone_pipeline, ConeReport};
pub use data::{Intersection, SNCData};
pub use page::{abutment, descent_complex, e1_page, shriek_complex, shriek_page, BigradedPage, CechMap, DescentComplex};
