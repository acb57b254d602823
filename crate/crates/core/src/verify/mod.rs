//! Certification: κ criteria for axis-aligned simplices, facet blocking,
//! closed-form strong-blocking witnesses, certificates, reconstruction from
//! the integer hull and canonical forms.

mod axis;
mod blocking;
mod canonical;
mod certificate;
mod reconstruct;
mod witness;

pub use axis::{is_lattice_free_axis, is_maximal_lattice_free_axis};
pub use blocking::{
    blocking_point, facet_lattice_points, is_blocked, is_strongly_blocked_facet, lovasz_maximal,
    strong_blocking_point,
};
pub use canonical::{canonical_form, count_distinct_classes, weak_maximality_search};
pub use certificate::{certify, certify_legs, verify_certificate_json, Certificate, Method};
pub use reconstruct::reconstruct_from_integer_hull;
pub use witness::{
    facet_witnesses, verify_witness, witness_for_case, FacetCase, FacetWitness, HalfApexShape,
};
