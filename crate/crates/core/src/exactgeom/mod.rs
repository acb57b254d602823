//! Exact rational polyhedral geometry in small dimensions.

pub mod hull;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod rat;

pub use hull::convex_hull;
pub use lattice::{integer_hull, interior_lattice_points, lattice_points, DEFAULT_BUDGET};
pub use polytope::{relint_contains, simplex_volume, Face, Halfspace, Polytope};
pub use rat::{format_rat, parse_rat, Rat, RatVec};
