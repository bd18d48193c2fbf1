//! Exact computations in the mod-p Steenrod algebra, its excess filtration,
//! the dual Hopf algebra, unstable modules and the unipotent group scheme.

pub mod admissible;
pub mod algebra;
pub mod combination;
pub mod dual;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod filtration;
pub mod linalg;
pub mod milnor;
pub mod monomial;
pub mod notation;
pub mod report;
pub mod scheme;
pub mod seq;
pub mod unstable;
pub mod word;

pub use algebra::SteenrodAlgebra;
pub use error::{Error, Result};
pub use field::PrimeContext;
pub use milnor::{Element, TensorElement};
pub use monomial::{DualMonomial, MilnorMonomial};
pub use seq::{BSeq, Seq};
pub use word::Word;
