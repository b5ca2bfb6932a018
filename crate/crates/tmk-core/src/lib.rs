//! Exact tropical intersection theory on fans of matroids.
//!
//! The crate is `no_std` with `alloc`: every computation is pure exact
//! arithmetic on small dense data, so nothing here needs an operating system.
//! The layers build on each other from integer lattices up to the recursive
//! intersection product and the curve realisability obstruction.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bergman;
pub mod cycles;
pub mod error;
pub mod lattice;
pub mod linear;
pub mod matroid;
pub mod modification;
pub mod polyhedra;
pub mod product;
pub mod realisability;
pub mod stable;

pub use error::{Error, Result};
