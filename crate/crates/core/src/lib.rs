//! Degenerate affine Hecke algebras of type A, their standard and simple
//! modules from segments, and the functor `F_lambda` from truncated
//! category O of `sl_n`, all in exact rational arithmetic.

pub mod category_o;
pub mod cli;
pub mod daha;
pub mod error;
pub mod functor;
pub mod hecke;
pub mod kl;
pub mod linalg;
pub mod rational;
pub mod root_weyl;
pub mod verify;

pub use error::{Error, Result};
