//! Lattice points of rational polytopes and integer hulls.
//!
//! Enumeration walks the integer bounding box coordinate by coordinate,
//! narrowing each coordinate's range with the halfspaces and a lower bound on
//! what the remaining coordinates can contribute. The budget refers to the
//! full box, so refusals are deterministic and independent of pruning.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hull::convex_hull;
use super::polytope::Polytope;
use super::rat::{Rat, RatVec};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Number of integer points in the bounding box of `p`.
pub fn box_point_count(p: &Polytope) -> BigInt {
    p.integer_bounding_box()
        .iter()
        .map(|(lo, hi)| if hi < lo { BigInt::zero() } else { hi - lo + 1 })
        .product()
}

pub fn within_budget(p: &Polytope, budget: u64) -> bool {
    box_point_count(p) <= BigInt::from(budget)
}

fn check_budget(p: &Polytope, budget: u64) -> Result<()> {
    let n = box_point_count(p);
    if n > BigInt::from(budget) {
        return Err(Error::BudgetExceeded {
            box_points: n.to_string(),
            budget,
        });
    }
    Ok(())
}

/// `{ z in Z^d : z in P }`, lexicographically sorted.
pub fn lattice_points(p: &Polytope, budget: u64) -> Result<Vec<RatVec>> {
    check_budget(p, budget)?;
    let mut cons: Vec<(Vec<BigInt>, BigInt)> = p
        .halfspaces
        .iter()
        .map(|h| (h.normal.clone(), h.rhs.clone()))
        .collect();
    for e in &p.equations {
        cons.push((e.normal.clone(), e.rhs.clone()));
        cons.push((e.normal.iter().map(|c| -c).collect(), -&e.rhs));
    }
    Ok(enumerate(&cons, &p.integer_bounding_box(), usize::MAX))
}

/// `{ z in Z^d : normal · z < rhs for every halfspace }`. Empty for
/// lower-dimensional polytopes.
pub fn interior_lattice_points(p: &Polytope, budget: u64) -> Result<Vec<RatVec>> {
    check_budget(p, budget)?;
    if !p.is_full_dimensional() {
        return Ok(Vec::new());
    }
    // Integral data: strict inequality is `<= rhs - 1`.
    let cons: Vec<(Vec<BigInt>, BigInt)> = p
        .halfspaces
        .iter()
        .map(|h| (h.normal.clone(), &h.rhs - BigInt::one()))
        .collect();
    Ok(enumerate(&cons, &p.integer_bounding_box(), usize::MAX))
}

/// Some interior lattice point of `p`, stopping at the first one found.
pub fn first_interior_lattice_point(p: &Polytope, budget: u64) -> Result<Option<RatVec>> {
    check_budget(p, budget)?;
    if !p.is_full_dimensional() {
        return Ok(None);
    }
    let cons: Vec<(Vec<BigInt>, BigInt)> = p
        .halfspaces
        .iter()
        .map(|h| (h.normal.clone(), &h.rhs - BigInt::one()))
        .collect();
    Ok(enumerate(&cons, &p.integer_bounding_box(), 1).pop())
}

/// `conv(P ∩ Z^d)`. Lower-dimensional results are returned with equations.
pub fn integer_hull(p: &Polytope, budget: u64) -> Result<Polytope> {
    let pts = lattice_points(p, budget)?;
    if pts.is_empty() {
        return Err(Error::EmptyHull);
    }
    convex_hull(&drop_axis_midpoints(&pts))
}

/// Removes every point that is the midpoint of two other points of the set
/// along a coordinate axis; such points are never extreme.
pub fn drop_axis_midpoints(points: &[RatVec]) -> Vec<RatVec> {
    let set: HashSet<&RatVec> = points.iter().collect();
    let one = Rat::one();
    points
        .iter()
        .filter(|z| {
            !(0..z.len()).any(|i| {
                let mut up = (*z).clone();
                up[i] += &one;
                let mut down = (*z).clone();
                down[i] -= &one;
                set.contains(&up) && set.contains(&down)
            })
        })
        .cloned()
        .collect()
}

fn enumerate(
    cons: &[(Vec<BigInt>, BigInt)],
    bbox: &[(BigInt, BigInt)],
    limit: usize,
) -> Vec<RatVec> {
    if bbox.iter().any(|(lo, hi)| hi < lo) {
        return Vec::new();
    }
    let to_rat = |z: Vec<BigInt>| z.into_iter().map(Rat::from_integer).collect::<RatVec>();
    if let Some((small_cons, small_box)) = narrow(cons, bbox) {
        let mut out = Vec::new();
        Scan::new(&small_cons, &small_box, limit).run(&mut out);
        return out
            .into_iter()
            .map(|z| to_rat(z.into_iter().map(BigInt::from).collect()))
            .collect();
    }
    let mut out = Vec::new();
    Scan::new(cons, bbox, limit).run(&mut out);
    out.into_iter().map(to_rat).collect()
}

type SmallCons = Vec<(Vec<i128>, i128)>;

/// `i128` copies of the data when every partial sum provably fits.
fn narrow(
    cons: &[(Vec<BigInt>, BigInt)],
    bbox: &[(BigInt, BigInt)],
) -> Option<(SmallCons, Vec<(i128, i128)>)> {
    let limit = BigInt::one() << 120;
    let reach: Vec<BigInt> = bbox.iter().map(|(lo, hi)| lo.abs().max(hi.abs())).collect();
    for (n, rhs) in cons {
        let worst: BigInt = n
            .iter()
            .zip(&reach)
            .map(|(c, r)| c.abs() * r)
            .sum::<BigInt>()
            + rhs.abs();
        if worst >= limit {
            return None;
        }
    }
    let small_cons = cons
        .iter()
        .map(|(n, rhs)| {
            (
                n.iter().map(|c| c.to_i128().expect("bounded")).collect(),
                rhs.to_i128().expect("bounded"),
            )
        })
        .collect();
    let small_box = bbox
        .iter()
        .map(|(lo, hi)| {
            (
                lo.to_i128().expect("bounded"),
                hi.to_i128().expect("bounded"),
            )
        })
        .collect();
    Some((small_cons, small_box))
}

struct Scan<'a, T> {
    cons: &'a [(Vec<T>, T)],
    bbox: &'a [(T, T)],
    /// `tail_min[h][k]`: least value coordinates `k..` can add to constraint `h`.
    tail_min: Vec<Vec<T>>,
    partial: Vec<T>,
    point: Vec<T>,
    limit: usize,
}

impl<'a, T: Integer + Signed + Clone> Scan<'a, T> {
    fn new(cons: &'a [(Vec<T>, T)], bbox: &'a [(T, T)], limit: usize) -> Self {
        let d = bbox.len();
        let tail_min = cons
            .iter()
            .map(|(n, _)| {
                let mut t = vec![T::zero(); d + 1];
                for k in (0..d).rev() {
                    let (lo, hi) = &bbox[k];
                    let a = n[k].clone() * lo.clone();
                    let b = n[k].clone() * hi.clone();
                    t[k] = t[k + 1].clone() + if a < b { a } else { b };
                }
                t
            })
            .collect();
        Scan {
            cons,
            bbox,
            tail_min,
            partial: vec![T::zero(); cons.len()],
            point: Vec::with_capacity(d),
            limit,
        }
    }

    fn run(&mut self, out: &mut Vec<Vec<T>>) {
        if out.len() >= self.limit {
            return;
        }
        let k = self.point.len();
        if k == self.bbox.len() {
            out.push(self.point.clone());
            return;
        }
        let (mut lo, mut hi) = self.bbox[k].clone();
        for (h, (n, rhs)) in self.cons.iter().enumerate() {
            let slack = rhs.clone() - self.partial[h].clone() - self.tail_min[h][k + 1].clone();
            let c = &n[k];
            if c.is_zero() {
                if slack.is_negative() {
                    return;
                }
            } else if c.is_positive() {
                let ub = slack.div_floor(c);
                if ub < hi {
                    hi = ub;
                }
            } else {
                let lb = slack.div_ceil(c);
                if lb > lo {
                    lo = lb;
                }
            }
        }
        let mut x = lo;
        while x <= hi && out.len() < self.limit {
            for (h, (n, _)) in self.cons.iter().enumerate() {
                self.partial[h] = self.partial[h].clone() + n[k].clone() * x.clone();
            }
            self.point.push(x.clone());
            self.run(out);
            self.point.pop();
            for (h, (n, _)) in self.cons.iter().enumerate() {
                self.partial[h] = self.partial[h].clone() - n[k].clone() * x.clone();
            }
            x = x + T::one();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::{int, int_vec, rat};

    fn t(legs: &[Rat]) -> Polytope {
        Polytope::axis_simplex(legs).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let pts = lattice_points(&t(&[int(2), int(2)]), DEFAULT_BUDGET).unwrap();
        let want: Vec<RatVec> = [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [2, 0]]
            .iter()
            .map(|z| int_vec(z))
            .collect();
        assert_eq!(pts, want);
        assert_eq!(
            lattice_points(&t(&[int(1), int(1)]), DEFAULT_BUDGET)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn interior_points() {
        assert!(
            interior_lattice_points(&t(&[int(2), int(2)]), DEFAULT_BUDGET)
                .unwrap()
                .is_empty()
        );
        assert_eq!(
            interior_lattice_points(&t(&[int(3), int(3)]), DEFAULT_BUDGET).unwrap(),
            vec![int_vec(&[1, 1])]
        );
        let p = t(&[int(3), int(3), rat(9, 2), int(9)]);
        assert!(interior_lattice_points(&p, DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn budget_guard() {
        let p = t(&[int(100), int(100), int(100)]);
        assert!(matches!(
            lattice_points(&p, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            interior_lattice_points(&p, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn integer_hull_of_segment() {
        let h = integer_hull(&t(&[rat(3, 2)]), DEFAULT_BUDGET).unwrap();
        assert_eq!(h.vertices, vec![int_vec(&[0]), int_vec(&[1])]);
    }

    #[test]
    fn integer_hull_is_identity_on_integral_polytopes() {
        let p = t(&[int(2), int(3), int(6)]);
        assert_eq!(integer_hull(&p, DEFAULT_BUDGET).unwrap(), p);
    }

    #[test]
    fn empty_hull() {
        let p = super::super::hull::convex_hull(&[
            vec![rat(1, 3), rat(1, 3)],
            vec![rat(2, 3), rat(1, 3)],
            vec![rat(1, 3), rat(2, 3)],
        ])
        .unwrap();
        assert_eq!(integer_hull(&p, DEFAULT_BUDGET), Err(Error::EmptyHull));
    }

    #[test]
    fn lower_dimensional_polytope_points() {
        let seg = super::super::hull::convex_hull(&[int_vec(&[0, 4]), int_vec(&[4, 0])]).unwrap();
        assert_eq!(lattice_points(&seg, DEFAULT_BUDGET).unwrap().len(), 5);
        assert!(interior_lattice_points(&seg, DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn big_integer_path_agrees() {
        let p = t(&[int(3), int(4), rat(7, 2)]);
        let cons: Vec<(Vec<BigInt>, BigInt)> = p
            .halfspaces
            .iter()
            .map(|h| (h.normal.clone(), h.rhs.clone()))
            .collect();
        let bbox = p.integer_bounding_box();
        let mut big = Vec::new();
        Scan::new(&cons, &bbox, usize::MAX).run(&mut big);
        let fast = lattice_points(&p, DEFAULT_BUDGET).unwrap();
        let big: Vec<RatVec> = big
            .into_iter()
            .map(|z| z.into_iter().map(Rat::from_integer).collect())
            .collect();
        assert_eq!(big, fast);
    }
}
