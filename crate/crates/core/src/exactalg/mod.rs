//! Exact commutative algebra: matrices over `Z` and `Q`, Smith normal form,
//! finitely generated modules over the supported coefficient rings, and
//! symbolic divisible modules.

pub mod coefficients;
pub mod divisible;
pub mod matrix;
mod modular;
pub mod module;
pub mod snf;

pub use coefficients::Coefficients;
pub use divisible::{DivisibleModule, DivisibleSummand, LevelPart, PrimeSupport};
pub use matrix::{Int, IntMatrix, Matrix, Q, QMatrix};
pub use module::{AdmissibleModule, FgModule};
pub use snf::{smith_normal_form, Smith};
