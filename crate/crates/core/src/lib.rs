//! Constructs integral lattice-free polytopes that are maximal among integral
//! lattice-free polytopes but not among all lattice-free sets, one for every
//! way of writing 1 as a sum of unit fractions, and certifies each one with
//! exact arithmetic.

pub mod egyptian;
pub mod error;
pub mod exactgeom;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
