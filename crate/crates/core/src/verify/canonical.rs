use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::egyptian::EgyptianTuple;
use crate::error::{Error, Result};
use crate::exactgeom::lattice::first_interior_lattice_point;
use crate::exactgeom::{convex_hull, format_rat, Polytope, Rat, RatVec};
use crate::transforms::{eta, LegVector};

/// Legs sorted ascending. `T(a)` and `T(b)` are unimodularly equivalent
/// exactly when the canonical forms agree.
pub fn canonical_form(a: &LegVector) -> LegVector {
    let mut v = a.to_vec();
    v.sort();
    LegVector::new(v).expect("positivity is preserved by sorting")
}

/// Number of distinct classes among the `T(η(a))`.
pub fn count_distinct_classes(tuples: &[EgyptianTuple]) -> Result<usize> {
    if tuples.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(Error::InvalidInput("tuples of mixed dimension".into()));
    }
    let forms = tuples
        .iter()
        .map(|a| eta(a).map(|e| canonical_form(&e)))
        .collect::<Result<HashSet<_>>>()?;
    Ok(forms.len())
}

/// Direct check of weak maximality on a bounded window: every integral `z`
/// outside `hull` in the box `hull`'s bounding box scaled by 2 about its
/// centre must make `conv(hull ∪ {z})` contain an interior lattice point.
/// Returns the number of `z` examined.
pub fn weak_maximality_search(hull: &Polytope, budget: u64) -> Result<usize> {
    let bbox = hull.integer_bounding_box();
    let window: Vec<(BigInt, BigInt)> = bbox
        .iter()
        .map(|(lo, hi)| {
            let half = (hi - lo + 1) / 2;
            (lo - &half, hi + &half)
        })
        .collect();
    let outside: Vec<RatVec> = window
        .iter()
        .map(|(lo, hi)| {
            std::iter::successors(Some(lo.clone()), |x| Some(x + 1u32))
                .take_while(|x| x <= hi)
                .collect::<Vec<_>>()
        })
        .multi_cartesian_product()
        .map(|z| z.into_iter().map(Rat::from_integer).collect::<RatVec>())
        .filter(|z| !hull.contains(z))
        .collect();
    outside.par_iter().try_for_each(|z| {
        let mut pts = hull.vertices.clone();
        pts.push(z.clone());
        let grown = convex_hull(&pts)?;
        match first_interior_lattice_point(&grown, budget)? {
            Some(_) => Ok(()),
            None => Err(Error::InvalidInput(format!(
                "adding ({}) keeps the hull lattice-free",
                z.iter().map(format_rat).collect::<Vec<_>>().join(", ")
            ))),
        }
    })?;
    Ok(outside.len())
}
