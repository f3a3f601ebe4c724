//! Exact cohomological machinery for lower bounds on spaces of flat connections.
//!
//! The crate is `no_std` + `alloc`: every computation is exact (arbitrary
//! precision rationals, F2) except where a representation is explicitly
//! declared to use float entries.  IO, file formats and the command line live
//! in the companion `flatconn-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod catalog;
pub mod charclass;
pub mod field;
pub mod groups;
pub mod holonomy;
pub mod ktheory;
pub mod matrix;
pub mod ring;

pub use field::{Coefficients, Field, Rat, F2};
pub use ring::{CohClass, GradedRing, RingError, RingSpec};
