//! Multisegment calculus for mod-ℓ representations of GL(n) over a p-adic
//! field with unramified cuspidal support.

pub mod arith;
pub mod calculus;
pub mod distinction;
pub mod dsl;
pub mod error;
pub mod render;
pub mod reps;
pub mod segments;
pub mod solver;
pub mod structure;
pub mod verify;

pub use error::{CalcError, Result};
