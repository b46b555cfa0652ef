//! Finitely presented graded Lie algebras over exact fields.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is exact
//! linear algebra over the rationals or an odd prime field, except the
//! eigenvalue solver in [`spectrum`], which is the one floating-point routine.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod free_lie;
pub mod hnn;
pub mod presentation;
pub mod quadratic_dual;
pub mod quotient;
pub mod raag;
pub mod spectrum;

pub use error::{Error, Result};
