//! Gröbner bases in G-algebras (algebras of solvable type) over the
//! rationals, computed either directly or by a parallel modular method.

pub mod arithmetic;
pub mod dmodules;
pub mod error;
pub mod field;
pub mod galgebra;
pub mod graded;
pub mod groebner;
pub mod lp;
pub mod modular;
pub mod orderings;
pub mod poly;

pub use error::{Error, Result};
