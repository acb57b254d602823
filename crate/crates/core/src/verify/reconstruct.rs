use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactgeom::{convex_hull, lattice_points, linalg, Halfspace, Polytope, Rat, RatVec};

use super::blocking::blocking_point;

/// Recovers a strongly blocked lattice-free polytope from its integer hull.
///
/// The facets of the hull whose relative interior holds an integral point
/// are exactly the integer hulls of the original facets; their hyperplanes
/// cut out the original polytope.
pub fn reconstruct_from_integer_hull(hull: &Polytope, budget: u64) -> Result<Polytope> {
    let under = |why: &str| Error::ReconstructionUnderdetermined(why.to_string());
    let points = lattice_points(hull, budget)?;
    let kept: Vec<Halfspace> = hull
        .facets()?
        .into_iter()
        .filter(|f| blocking_point(&points, f).is_some())
        .map(|f| f.hyperplane.expect("facets carry their hyperplane"))
        .collect();
    let d = hull.dim;
    if kept.len() < d + 1 {
        return Err(under("fewer than d+1 blocked facets"));
    }
    let mut vertices: Vec<RatVec> = Vec::new();
    for subset in (0..kept.len()).combinations(d) {
        let m: Vec<RatVec> = subset.iter().map(|&i| kept[i].normal_rat()).collect();
        let b: RatVec = subset
            .iter()
            .map(|&i| Rat::from_integer(kept[i].rhs.clone()))
            .collect();
        if let Some(x) = linalg::solve(&m, &b) {
            if kept.iter().all(|h| h.contains(&x)) && !vertices.contains(&x) {
                vertices.push(x);
            }
        }
    }
    if linalg::affine_dim(&vertices) != Some(d) {
        return Err(under(
            "blocked facet hyperplanes do not bound a full-dimensional polytope",
        ));
    }
    let q = convex_hull(&vertices)?;
    // If the region were unbounded, conv(vertices) would need a facet that
    // is not among the collected hyperplanes.
    if q.halfspaces.iter().any(|h| !kept.contains(h)) {
        return Err(under("blocked facet hyperplanes do not bound a polytope"));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::{int, int_vec, rat};
    use crate::exactgeom::{integer_hull, DEFAULT_BUDGET};

    #[test]
    fn recovers_half_apex_simplex() {
        let p = Polytope::axis_simplex(&[int(3), int(3), rat(9, 2), int(9)]).unwrap();
        let h = integer_hull(&p, DEFAULT_BUDGET).unwrap();
        assert!(!h.same_set(&p));
        let q = reconstruct_from_integer_hull(&h, DEFAULT_BUDGET).unwrap();
        assert!(q.same_set(&p));
        assert_eq!(q, p);
    }

    #[test]
    fn integral_input_is_its_own_preimage() {
        let p = Polytope::axis_simplex(&[int(2), int(3), int(6)]).unwrap();
        assert_eq!(
            reconstruct_from_integer_hull(&p, DEFAULT_BUDGET).unwrap(),
            p
        );
    }

    #[test]
    fn unblocked_hull_is_underdetermined() {
        let sq = convex_hull(&[
            int_vec(&[0, 0]),
            int_vec(&[1, 0]),
            int_vec(&[0, 1]),
            int_vec(&[1, 1]),
        ])
        .unwrap();
        assert!(matches!(
            reconstruct_from_integer_hull(&sq, DEFAULT_BUDGET),
            Err(Error::ReconstructionUnderdetermined(_))
        ));
    }
}
