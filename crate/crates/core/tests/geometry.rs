use latfree::exactgeom::rat::{int, int_vec, rat};
use latfree::exactgeom::{
    convex_hull, integer_hull, interior_lattice_points, lattice_points, relint_contains,
    simplex_volume, Face, Polytope, Rat, RatVec, DEFAULT_BUDGET,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn legs(xs: &[(i64, i64)]) -> Vec<Rat> {
    xs.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// Nested loops over the box, testing `Σ x_i / b_i ≤ 1` with integer weights.
fn count_by_loops(b: &[Rat]) -> usize {
    let l: BigInt = b.iter().fold(BigInt::one(), |acc, x| {
        num_integer::lcm(acc, x.numer().clone())
    });
    let w: Vec<BigInt> = b
        .iter()
        .map(|x| (Rat::from_integer(l.clone()) / x).to_integer())
        .collect();
    let caps: Vec<i64> = b
        .iter()
        .map(|x| x.floor().to_integer().try_into().unwrap())
        .collect();
    fn rec(i: usize, caps: &[i64], w: &[BigInt], used: BigInt, l: &BigInt) -> usize {
        if i == caps.len() {
            return 1;
        }
        (0..=caps[i])
            .map(|x| &used + &w[i] * x)
            .take_while(|u| u <= l)
            .map(|u| rec(i + 1, caps, w, u, l))
            .sum()
    }
    rec(0, &caps, &w, BigInt::zero(), &l)
}

#[test]
fn lattice_point_count_of_six_dimensional_simplex() {
    let b = legs(&[(2, 1), (5, 1), (6, 1), (15, 1), (45, 2), (45, 1)]);
    let p = Polytope::axis_simplex(&b).unwrap();
    let pts = lattice_points(&p, DEFAULT_BUDGET).unwrap();
    assert_eq!(pts.len(), 12273);
    assert_eq!(count_by_loops(&b), 12273);
    assert!(interior_lattice_points(&p, DEFAULT_BUDGET)
        .unwrap()
        .is_empty());
}

#[test]
fn small_simplex_counts_match_loops() {
    for b in [
        vec![(3, 1), (3, 1), (9, 2), (9, 1)],
        vec![(2, 1), (3, 1), (6, 1)],
        vec![(7, 3), (5, 2)],
    ] {
        let b = legs(&b);
        let p = Polytope::axis_simplex(&b).unwrap();
        assert_eq!(
            lattice_points(&p, DEFAULT_BUDGET).unwrap().len(),
            count_by_loops(&b)
        );
    }
}

/// Unique maximisers of linear objectives over `points` are vertices of
/// their hull; collect them for a family of objectives.
fn argmax_vertices(points: &[RatVec], objectives: &[Vec<i64>]) -> Vec<RatVec> {
    let mut out: Vec<RatVec> = Vec::new();
    for c in objectives {
        let c = int_vec(c);
        let val = |x: &RatVec| x.iter().zip(&c).map(|(a, b)| a * b).sum::<Rat>();
        let best = points.iter().map(val).max().unwrap();
        let top: Vec<&RatVec> = points.iter().filter(|x| val(x) == best).collect();
        if top.len() == 1 && !out.contains(top[0]) {
            out.push(top[0].clone());
        }
    }
    out.sort();
    out
}

#[test]
fn integer_hull_vertices_match_objective_oracle() {
    let p = Polytope::axis_simplex(&legs(&[(3, 1), (3, 1), (9, 2), (9, 1)])).unwrap();
    let pts = lattice_points(&p, DEFAULT_BUDGET).unwrap();
    let hull = integer_hull(&p, DEFAULT_BUDGET).unwrap();

    let mut objectives = Vec::new();
    let range = -3i64..=3;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    objectives.push(vec![a * 97 + 1, b * 89 + 2, c * 83 + 3, d * 79 + 5]);
                }
            }
        }
    }
    let found = argmax_vertices(&pts, &objectives);
    let mut vertices = hull.vertices.clone();
    vertices.sort();
    assert_eq!(found, vertices);

    // Each vertex is also the unique maximiser of the sum of its tight normals.
    for v in &hull.vertices {
        let tight: Vec<_> = hull
            .halfspaces
            .iter()
            .filter(|h| h.slack(v).is_zero())
            .collect();
        let c: Vec<Rat> = (0..4)
            .map(|j| {
                tight
                    .iter()
                    .map(|h| Rat::from_integer(h.normal[j].clone()))
                    .sum()
            })
            .collect();
        let val = |x: &RatVec| x.iter().zip(&c).map(|(a, b)| a * b).sum::<Rat>();
        let best = val(v);
        assert_eq!(pts.iter().filter(|x| val(x) >= best).count(), 1);
    }
}

#[test]
fn six_dimensional_integer_hull() {
    let p = Polytope::axis_simplex(&legs(&[(2, 1), (5, 1), (6, 1), (15, 1), (45, 2), (45, 1)]))
        .unwrap();
    let h = integer_hull(&p, DEFAULT_BUDGET).unwrap();
    assert_eq!(h.vertices.len(), 11);
    assert_eq!(h.halfspaces.len(), 8);
    assert!(h.is_integral());
    assert!(h.vertices.iter().all(|v| p.contains(v)));
    assert!(!p.same_set(&h));
}

#[test]
fn simplex_volume_is_leg_product_over_factorial() {
    for b in [
        legs(&[(2, 1), (3, 1), (6, 1)]),
        legs(&[(3, 1), (3, 1), (9, 2), (9, 1)]),
        legs(&[(1, 3), (7, 2)]),
    ] {
        let p = Polytope::axis_simplex(&b).unwrap();
        let fact: BigInt = (1..=b.len()).map(BigInt::from).product();
        let expected = b.iter().product::<Rat>() / Rat::from_integer(fact);
        assert_eq!(simplex_volume(&p.vertices), expected);
    }
}

fn small_points() -> impl Strategy<Value = Vec<RatVec>> {
    prop::collection::vec(prop::collection::vec(-4i64..5, 3), 4..14)
        .prop_map(|v| v.iter().map(|x| int_vec(x)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hull_ignores_point_order(pts in small_points(), seed in any::<u64>()) {
        let Ok(a) = convex_hull(&pts) else { return Ok(()) };
        let mut shuffled = pts.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed as usize).wrapping_mul(i + 11) % (i + 1));
        }
        let b = convex_hull(&shuffled).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.check_consistency().is_ok());
        for x in &pts {
            prop_assert!(a.contains(x));
        }
    }

    #[test]
    fn integer_hull_is_idempotent_and_inside(
        legs in prop::collection::vec((1i64..8, 1i64..4), 2..4)
    ) {
        let b: Vec<Rat> = legs.iter().map(|&(n, d)| rat(n, d)).collect();
        let p = Polytope::axis_simplex(&b).unwrap();
        let Ok(h) = integer_hull(&p, DEFAULT_BUDGET) else { return Ok(()) };
        prop_assert!(h.vertices.iter().all(|v| p.contains(v)));
        if h.is_full_dimensional() {
            let again = integer_hull(&h, DEFAULT_BUDGET).unwrap();
            prop_assert!(again.same_set(&h));
        }
    }

    #[test]
    fn relint_routes_agree(z in prop::collection::vec(-1i64..6, 3)) {
        let face = Face::from_vertices(vec![
            int_vec(&[4, 0, 0]),
            int_vec(&[0, 4, 0]),
            int_vec(&[0, 0, 4]),
        ]).unwrap();
        let z = int_vec(&z);
        let direct = relint_contains(&face, &z);
        prop_assert_eq!(face.relint_contains_barycentric(&z), Some(direct));
        let expected = z.iter().all(|x| x > &int(0)) && z.iter().sum::<Rat>() == int(4);
        prop_assert_eq!(direct, expected);
    }
}
