//! Exact incremental (beneath-beyond) convex hull.
//!
//! Points are first mapped into the canonical chart of their affine hull, the
//! hull is built there as a triangulated boundary, coplanar simplices are
//! merged into facets, and everything is lifted back to the ambient space.
//!
//! After a lexicographically chosen starting simplex, every remaining point
//! sits in the outside set of one facet it is strictly beyond. The next point
//! inserted is the furthest outside point of the lowest-numbered facet with a
//! nonempty outside set, so every inserted point is extreme and points lying
//! on the final boundary never enter the triangulation. The order is fully
//! deterministic, and the output is canonical regardless.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{self, AffineHull};
use super::polytope::{Halfspace, Polytope};
use super::rat::{homogenize, sub, to_coprime_integers, Rat, RatVec};
use crate::error::{Error, Result};

/// Bound under which coordinates use the `i128` path: products stay below
/// 2^106 and a sum of up to 2^20 of them cannot overflow.
const SMALL: i64 = 1 << 53;

pub fn convex_hull(points: &[RatVec]) -> Result<Polytope> {
    let Some(first) = points.first() else {
        return Err(Error::DegenerateInput("empty point set".into()));
    };
    let d = first.len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::DegenerateInput("points of mixed dimension".into()));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let aff = AffineHull::of(&pts).expect("nonempty");
    let chart: Vec<RatVec> = pts.iter().map(|p| aff.project(p)).collect();
    let (vertex_ids, facets) = full_dimensional_hull(&chart);

    let vertices: Vec<RatVec> = vertex_ids.iter().map(|&i| pts[i].clone()).collect();
    let halfspaces = facets
        .into_iter()
        .map(|(n, rhs)| {
            let mut normal = vec![BigInt::zero(); d];
            for (c, &p) in n.into_iter().zip(&aff.pivots) {
                normal[p] = c;
            }
            Halfspace::new(normal, rhs)
        })
        .collect();
    let equations = aff
        .equation_normals()
        .iter()
        .map(|n| {
            let rhs = super::rat::dot(n, &aff.origin);
            Halfspace::equation(n, &rhs).expect("null-space vectors are nonzero")
        })
        .collect();
    Ok(Polytope::from_parts(d, vertices, halfspaces, equations))
}

struct HomPoint {
    big: (Vec<BigInt>, BigInt),
    small: Option<(Vec<i64>, i64)>,
}

impl HomPoint {
    fn new(x: &[Rat]) -> HomPoint {
        let big = homogenize(x);
        let small = to_small(&big.0).zip(to_small(std::slice::from_ref(&big.1)).map(|w| w[0]));
        HomPoint { big, small }
    }
}

fn to_small(xs: &[BigInt]) -> Option<Vec<i64>> {
    xs.iter()
        .map(|x| x.to_i64().filter(|v| v.abs() < SMALL))
        .collect()
}

struct SimplexFacet {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    rhs: BigInt,
    small: Option<(Vec<i64>, i64)>,
}

impl SimplexFacet {
    fn side(&self, p: &HomPoint) -> Ordering {
        if let (Some((n, r)), Some((v, w))) = (&self.small, &p.small) {
            let s: i128 = n
                .iter()
                .zip(v)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum::<i128>()
                - *r as i128 * *w as i128;
            return s.cmp(&0);
        }
        let (v, w) = &p.big;
        let s: BigInt = self
            .normal
            .iter()
            .zip(v)
            .map(|(a, b)| a * b)
            .sum::<BigInt>()
            - &self.rhs * w;
        super::rat::sign(&s)
    }
}

struct Builder<'a> {
    points: &'a [RatVec],
    hom: Vec<HomPoint>,
    interior: HomPoint,
    facets: Vec<Option<SimplexFacet>>,
    free: Vec<usize>,
    ridges: HashMap<Vec<usize>, Vec<usize>>,
    /// Points strictly beyond each facet slot, each assigned to one facet.
    outside: Vec<Vec<usize>>,
}

impl Builder<'_> {
    fn make_facet(&self, verts: Vec<usize>) -> SimplexFacet {
        let k = self.points[0].len();
        let base = &self.points[verts[0]];
        let (mut normal, mut rhs) = if verts.iter().all(|&i| self.hom[i].big.1.is_one()) {
            let b = &self.hom[verts[0]].big.0;
            let rows: Vec<Vec<BigInt>> = verts[1..]
                .iter()
                .map(|&i| {
                    self.hom[i]
                        .big
                        .0
                        .iter()
                        .zip(b)
                        .map(|(x, y)| x - y)
                        .collect()
                })
                .collect();
            let n = linalg::integer_normal(&rows);
            let g = n.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let n: Vec<BigInt> = n.into_iter().map(|x| x / &g).collect();
            let rhs = n.iter().zip(b).map(|(x, y)| x * y).sum::<BigInt>();
            (n, rhs)
        } else {
            let rows: Vec<RatVec> = verts[1..]
                .iter()
                .map(|&i| sub(&self.points[i], base))
                .collect();
            let ns = linalg::null_space(&rows, k);
            debug_assert_eq!(ns.len(), 1, "facet simplex must be nondegenerate");
            let rhs = super::rat::dot(&ns[0], base);
            to_coprime_integers(&ns[0], &rhs).expect("nonzero normal")
        };
        // Normals are coprime; fold the rhs into the gcd as the rational path does.
        let g = normal.iter().fold(rhs.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            normal.iter_mut().for_each(|x| *x = &*x / &g);
            rhs /= &g;
        }
        let mut f = SimplexFacet {
            verts,
            normal: normal.clone(),
            rhs: rhs.clone(),
            small: None,
        };
        if f.side(&self.interior) == Ordering::Greater {
            normal.iter_mut().for_each(|c| *c = -&*c);
            rhs = -rhs;
        }
        f.small = to_small(&normal).zip(to_small(std::slice::from_ref(&rhs)).map(|r| r[0]));
        f.normal = normal;
        f.rhs = rhs;
        f
    }

    fn ridges_of(verts: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..verts.len()).map(move |skip| {
            verts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect()
        })
    }

    fn add_facet(&mut self, f: SimplexFacet) -> usize {
        let id = match self.free.pop() {
            Some(id) => id,
            None => {
                self.facets.push(None);
                self.outside.push(Vec::new());
                self.facets.len() - 1
            }
        };
        for r in Self::ridges_of(&f.verts) {
            self.ridges.entry(r).or_default().push(id);
        }
        self.facets[id] = Some(f);
        id
    }

    fn remove_facet(&mut self, id: usize) {
        let f = self.facets[id].take().expect("live facet");
        for r in Self::ridges_of(&f.verts) {
            if let Some(list) = self.ridges.get_mut(&r) {
                list.retain(|&g| g != id);
                if list.is_empty() {
                    self.ridges.remove(&r);
                }
            }
        }
        self.free.push(id);
    }

    /// Inserts the outside point `p` and hands
    /// the orphaned outside points to facets they are still beyond.
    fn insert(&mut self, p: usize) {
        let visible: Vec<usize> = self
            .facets
            .iter()
            .enumerate()
            .filter_map(|(id, f)| {
                f.as_ref()
                    .filter(|f| f.side(&self.hom[p]) == Ordering::Greater)
                    .map(|_| id)
            })
            .collect();
        let is_visible = |id: usize| visible.binary_search(&id).is_ok();
        let mut horizon = Vec::new();
        for &f in &visible {
            let verts = &self.facets[f].as_ref().expect("live").verts;
            for r in Self::ridges_of(verts) {
                let across = self.ridges[&r].iter().copied().find(|&g| g != f);
                if across.is_some_and(|g| !is_visible(g)) {
                    horizon.push(r);
                }
            }
        }
        let mut orphans = Vec::new();
        for &f in &visible {
            orphans.append(&mut self.outside[f]);
            self.remove_facet(f);
        }
        let mut fresh = Vec::with_capacity(horizon.len());
        for mut r in horizon {
            r.push(p);
            r.sort_unstable();
            let f = self.make_facet(r);
            fresh.push(self.add_facet(f));
        }
        orphans.sort_unstable();
        for q in orphans {
            if q == p {
                continue;
            }
            let home = fresh
                .iter()
                .copied()
                .chain(0..self.facets.len())
                .find(|&id| {
                    self.facets[id]
                        .as_ref()
                        .is_some_and(|f| f.side(&self.hom[q]) == Ordering::Greater)
                });
            if let Some(id) = home {
                self.outside[id].push(q);
            }
        }
    }

    /// Outside point of facet `id` maximizing `normal · x`, ties broken by
    /// the smaller (lexicographically first) index. It is always an extreme
    /// point of the input.
    fn furthest(&self, id: usize) -> usize {
        let f = self.facets[id].as_ref().expect("live");
        let height = |q: usize| {
            let x = &self.points[q];
            super::rat::dot_int(&f.normal, x)
        };
        let mut best = self.outside[id][0];
        let mut best_h = height(best);
        for &q in &self.outside[id][1..] {
            let h = height(q);
            if h > best_h || (h == best_h && q < best) {
                best = q;
                best_h = h;
            }
        }
        best
    }
}

/// Hull of a full-dimensional point set in `Q^k` (sorted, deduplicated).
/// Returns the extreme-point indices and the facet inequalities.
fn full_dimensional_hull(points: &[RatVec]) -> (Vec<usize>, Vec<(Vec<BigInt>, BigInt)>) {
    let k = points[0].len();
    // Initial simplex: greedily grow the affine rank in input order.
    let mut simplex = vec![0usize];
    let mut dirs: Vec<RatVec> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if simplex.len() == k + 1 {
            break;
        }
        let mut trial = dirs.clone();
        trial.push(sub(p, &points[0]));
        if linalg::rank(&trial, k) == trial.len() {
            dirs = trial;
            simplex.push(i);
        }
    }
    debug_assert_eq!(simplex.len(), k + 1);
    let centroid: RatVec = (0..k)
        .map(|c| {
            simplex.iter().map(|&i| points[i][c].clone()).sum::<Rat>()
                / Rat::from_integer(BigInt::from(k + 1))
        })
        .collect();

    let mut b = Builder {
        points,
        hom: points.iter().map(|p| HomPoint::new(p)).collect(),
        interior: HomPoint::new(&centroid),
        facets: Vec::new(),
        free: Vec::new(),
        ridges: HashMap::new(),
        outside: Vec::new(),
    };
    let mut initial = Vec::new();
    for skip in 0..=k {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, &v)| v)
            .collect();
        let f = b.make_facet(verts);
        initial.push(b.add_facet(f));
    }
    for p in 0..points.len() {
        if simplex.binary_search(&p).is_ok() {
            continue;
        }
        let home = initial
            .iter()
            .copied()
            .find(|&id| b.facets[id].as_ref().expect("live").side(&b.hom[p]) == Ordering::Greater);
        if let Some(id) = home {
            b.outside[id].push(p);
        }
    }
    // Repeatedly lift the furthest outside point of the first facet that has one.
    while let Some(id) =
        (0..b.facets.len()).find(|&id| b.facets[id].is_some() && !b.outside[id].is_empty())
    {
        let p = b.furthest(id);
        b.insert(p);
    }

    // Merge coplanar boundary simplices into facets.
    let live: Vec<&SimplexFacet> = b.facets.iter().flatten().collect();
    let planes: BTreeSet<(Vec<BigInt>, BigInt)> = live
        .iter()
        .map(|f| (f.normal.clone(), f.rhs.clone()))
        .collect();
    let planes: Vec<SimplexFacet> = planes
        .into_iter()
        .map(|(normal, rhs)| {
            let small = to_small(&normal).zip(to_small(std::slice::from_ref(&rhs)).map(|r| r[0]));
            SimplexFacet {
                verts: Vec::new(),
                normal,
                rhs,
                small,
            }
        })
        .collect();
    let candidates: BTreeSet<usize> = live.iter().flat_map(|f| f.verts.iter().copied()).collect();
    let vertices: Vec<usize> = candidates
        .into_iter()
        .filter(|&c| {
            let tight: Vec<RatVec> = planes
                .iter()
                .filter(|h| h.side(&b.hom[c]) == Ordering::Equal)
                .map(|h| {
                    h.normal
                        .iter()
                        .map(|x| Rat::from_integer(x.clone()))
                        .collect()
                })
                .collect();
            linalg::rank(&tight, k) == k
        })
        .collect();
    let facets = planes.into_iter().map(|h| (h.normal, h.rhs)).collect();
    (vertices, facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::{int, int_vec, rat};

    #[test]
    fn drops_points_on_edges() {
        let p = convex_hull(&[
            int_vec(&[0, 0]),
            int_vec(&[2, 0]),
            int_vec(&[0, 2]),
            int_vec(&[1, 1]),
        ])
        .unwrap();
        assert_eq!(
            p.vertices,
            vec![int_vec(&[0, 0]), int_vec(&[0, 2]), int_vec(&[2, 0])]
        );
        assert_eq!(p.halfspaces.len(), 3);
        p.check_consistency().unwrap();
    }

    #[test]
    fn unit_square() {
        let p = convex_hull(&[
            int_vec(&[1, 1]),
            int_vec(&[0, 0]),
            int_vec(&[1, 0]),
            int_vec(&[0, 1]),
        ])
        .unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.halfspaces.len(), 4);
        assert_eq!(p.facets().unwrap().len(), 4);
        p.check_consistency().unwrap();
    }

    #[test]
    fn coincident_points_are_degenerate() {
        assert!(matches!(
            convex_hull(&[int_vec(&[1, 2]), int_vec(&[1, 2])]),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(convex_hull(&[]), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn lower_dimensional_hull_carries_equations() {
        let p = convex_hull(&[
            int_vec(&[2, 0, 1]),
            int_vec(&[0, 2, 1]),
            int_vec(&[1, 1, 1]),
        ])
        .unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.equations.len(), 2);
        assert_eq!(p.vertices.len(), 2);
        assert!(p.relint_contains(&int_vec(&[1, 1, 1])));
        assert!(!p.relint_contains(&int_vec(&[2, 0, 1])));
        assert!(!p.contains(&int_vec(&[1, 1, 0])));
        p.check_consistency().unwrap();
    }

    #[test]
    fn cube_with_interior_and_face_points() {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    pts.push(int_vec(&[x, y, z]));
                }
            }
        }
        let p = convex_hull(&pts).unwrap();
        assert_eq!(p.vertices.len(), 8);
        assert_eq!(p.halfspaces.len(), 6);
        p.check_consistency().unwrap();
    }

    #[test]
    fn rational_simplex_hull_matches_closed_form() {
        let legs = [int(3), int(3), rat(9, 2), int(9)];
        let closed = Polytope::axis_simplex(&legs).unwrap();
        let hulled = convex_hull(&closed.vertices).unwrap();
        assert_eq!(hulled, closed);
    }
}
