//! Brute-force facet blocking checks.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactgeom::lattice::drop_axis_midpoints;
use crate::exactgeom::{
    convex_hull, interior_lattice_points, lattice_points, linalg, Face, Polytope, RatVec,
};

/// Lattice points of `p` on the hyperplane of facet `f`.
pub fn facet_lattice_points(points: &[RatVec], f: &Face) -> Vec<RatVec> {
    match &f.hyperplane {
        Some(h) => points
            .iter()
            .filter(|z| h.side(z) == Ordering::Equal)
            .cloned()
            .collect(),
        None => points
            .iter()
            .filter(|z| f.affine_hull.contains(z))
            .cloned()
            .collect(),
    }
}

/// An integral point in the relative interior of `f`, if any.
pub fn blocking_point(points: &[RatVec], f: &Face) -> Option<RatVec> {
    facet_lattice_points(points, f)
        .into_iter()
        .find(|z| f.relint_contains(z))
}

/// An integral point in the relative interior of `F_I = conv(F ∩ Z^d)`,
/// provided `F_I` has dimension `dim(P) - 1`.
pub fn strong_blocking_point(p: &Polytope, points: &[RatVec], f: &Face) -> Result<Option<RatVec>> {
    let on_facet = facet_lattice_points(points, f);
    if on_facet.is_empty() || linalg::affine_dim(&on_facet) != Some(p.affine_dim() - 1) {
        return Ok(None);
    }
    let facet_hull = if on_facet.len() == 1 {
        // Only reachable when dim(P) = 1: the facet is a single point.
        return Ok(Some(on_facet[0].clone()));
    } else {
        convex_hull(&drop_axis_midpoints(&on_facet))?
    };
    Ok(on_facet.into_iter().find(|z| facet_hull.relint_contains(z)))
}

pub fn is_blocked(p: &Polytope, f: &Face, budget: u64) -> Result<bool> {
    let pts = lattice_points(p, budget)?;
    Ok(blocking_point(&pts, f).is_some())
}

pub fn is_strongly_blocked_facet(p: &Polytope, f: &Face, budget: u64) -> Result<bool> {
    let pts = lattice_points(p, budget)?;
    Ok(strong_blocking_point(p, &pts, f)?.is_some())
}

/// Every facet blocked, for a lattice-free bounded `p`. This is equivalent to
/// maximal lattice-freeness.
pub fn lovasz_maximal(p: &Polytope, budget: u64) -> Result<bool> {
    if !interior_lattice_points(p, budget)?.is_empty() {
        return Err(Error::NotLatticeFree);
    }
    let pts = lattice_points(p, budget)?;
    Ok(p.facets()?
        .iter()
        .all(|f| blocking_point(&pts, f).is_some()))
}
