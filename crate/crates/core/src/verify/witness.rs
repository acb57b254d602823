//! Closed-form strong-blocking witnesses for `T(a_1, ..., a_{d-1}, 3t/2, 3t)`
//! with `t` odd.
//!
//! Each facet gets an integral simplex `G` inside it, of full facet
//! dimension, and an integral point written as a strictly positive convex
//! combination of `G`'s vertices. Nothing here is trusted: `verify_witness`
//! re-derives every claim from the polytope.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::rat::{add, int, is_integral, rat, scale, unit_vec};
use crate::exactgeom::{linalg, Halfspace, Polytope, Rat, RatVec};
use crate::transforms::{is_odd_integer, LegVector};

/// Which facet of `T(b)` a witness covers, named by the vertex it omits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FacetCase {
    /// Omits `(3t/2) e_d`; the facet is integral.
    OppositeHalfApex,
    /// Omits `3t e_{d+1}`.
    OppositeTripleApex,
    /// The slanted facet `Σ x_i / b_i = 1`.
    OppositeOrigin,
    /// Omits `a_i e_i`; 0-based index `i < d - 1`.
    OppositeLeg(usize),
}

impl fmt::Display for FacetCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetCase::OppositeHalfApex => f.write_str("opposite_half_apex"),
            FacetCase::OppositeTripleApex => f.write_str("opposite_triple_apex"),
            FacetCase::OppositeOrigin => f.write_str("opposite_origin"),
            FacetCase::OppositeLeg(i) => write!(f, "opposite_leg_{}", i + 1),
        }
    }
}

impl FromStr for FacetCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<FacetCase> {
        match s {
            "opposite_half_apex" => Ok(FacetCase::OppositeHalfApex),
            "opposite_triple_apex" => Ok(FacetCase::OppositeTripleApex),
            "opposite_origin" => Ok(FacetCase::OppositeOrigin),
            _ => s
                .strip_prefix("opposite_leg_")
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(|i| FacetCase::OppositeLeg(i - 1))
                .ok_or_else(|| Error::Parse(format!("unknown facet case {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetWitness {
    pub facet_case: FacetCase,
    /// The facet's inequality in `T(b)`.
    pub facet: Halfspace,
    pub inner_simplex_vertices: Vec<RatVec>,
    pub witness_point: RatVec,
    pub barycentric_coeffs: Vec<Rat>,
}

/// `b = (a_1, ..., a_{d-1}, 3t/2, 3t)` with integral `a_i`, odd `t` and
/// `κ(b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfApexShape {
    pub legs: LegVector,
    pub t: BigInt,
}

impl HalfApexShape {
    pub fn parse(b: &LegVector) -> Result<HalfApexShape> {
        let n = b.len();
        if n < 3 {
            return Err(Error::ShapeMismatch(format!(
                "need at least 3 legs, got {n}"
            )));
        }
        let t = b[n - 1].clone() / int(3);
        if !is_odd_integer(&t) {
            return Err(Error::ShapeMismatch(format!(
                "last leg {} is not 3t with t odd",
                b[n - 1]
            )));
        }
        if b[n - 2] != &t * rat(3, 2) {
            return Err(Error::ShapeMismatch(
                "second-to-last leg is not 3t/2".into(),
            ));
        }
        if !is_integral(&b[..n - 2]) {
            return Err(Error::ShapeMismatch("leading legs are not integral".into()));
        }
        if !b.kappa().is_one() {
            return Err(Error::ShapeMismatch(format!(
                "kappa = {} is not 1",
                b.kappa()
            )));
        }
        Ok(HalfApexShape {
            legs: b.clone(),
            t: t.to_integer(),
        })
    }

    /// Ambient dimension `d + 1`.
    pub fn ambient(&self) -> usize {
        self.legs.len()
    }

    fn half(&self) -> usize {
        self.ambient() - 2
    }

    fn triple(&self) -> usize {
        self.ambient() - 1
    }

    pub fn cases(&self) -> Vec<FacetCase> {
        let mut v = vec![
            FacetCase::OppositeHalfApex,
            FacetCase::OppositeTripleApex,
            FacetCase::OppositeOrigin,
        ];
        v.extend((0..self.half()).map(FacetCase::OppositeLeg));
        v
    }

    /// Vertex of `T(b)` the facet omits; `None` for the origin.
    fn omitted_axis(&self, case: FacetCase) -> Option<usize> {
        match case {
            FacetCase::OppositeHalfApex => Some(self.half()),
            FacetCase::OppositeTripleApex => Some(self.triple()),
            FacetCase::OppositeOrigin => None,
            FacetCase::OppositeLeg(i) => Some(i),
        }
    }

    fn facet(&self, case: FacetCase) -> Halfspace {
        let n = self.ambient();
        match self.omitted_axis(case) {
            Some(i) => {
                let mut normal = vec![BigInt::zero(); n];
                normal[i] = -BigInt::one();
                Halfspace::new(normal, BigInt::zero())
            }
            None => {
                let recips: RatVec = self.legs.iter().map(|x| x.recip()).collect();
                Halfspace::from_rational(&recips, &Rat::one()).expect("nonzero")
            }
        }
    }

    /// Integral simplex `G` inside the facet and the integral point it should
    /// contain in its relative interior.
    fn inner_simplex(&self, case: FacetCase) -> Result<(Vec<RatVec>, RatVec)> {
        let n = self.ambient();
        let (h, top) = (self.half(), self.triple());
        let t = Rat::from_integer(self.t.clone());
        let leg = |i: usize| scale(&self.legs[i], &unit_vec(n, i));
        let origin = vec![Rat::zero(); n];
        let lowered_apex = scale(&((int(3) * &t - int(1)) / int(2)), &unit_vec(n, h));
        let tilted_apex = add(&lowered_apex, &unit_vec(n, top));
        let top_apex = scale(&(int(3) * &t), &unit_vec(n, top));
        let ones = |skip: &[usize]| -> RatVec {
            (0..n)
                .map(|i| {
                    if skip.contains(&i) {
                        Rat::zero()
                    } else {
                        Rat::one()
                    }
                })
                .collect()
        };
        let lower: Vec<RatVec> = (0..h).map(leg).collect();
        Ok(match case {
            FacetCase::OppositeHalfApex => {
                let mut g = vec![origin];
                g.extend(lower);
                g.push(top_apex);
                (g, ones(&[h]))
            }
            FacetCase::OppositeTripleApex => {
                let mut g = vec![origin];
                g.extend(lower);
                g.push(lowered_apex);
                (g, ones(&[top]))
            }
            FacetCase::OppositeOrigin => {
                let mut g = lower;
                g.push(tilted_apex);
                g.push(top_apex);
                (g, ones(&[]))
            }
            FacetCase::OppositeLeg(i) => {
                if i >= h {
                    return Err(Error::ShapeMismatch(format!("no leg facet {case}")));
                }
                let mut g = vec![origin];
                g.extend((0..h).filter(|&j| j != i).map(leg));
                g.push(tilted_apex);
                g.push(top_apex);
                (g, ones(&[i]))
            }
        })
    }

    /// Barycentric coefficients in closed form: `1/a_j` on each leg vertex,
    /// `λ = 2/(3t-1)` on the lowered or tilted apex, `μ = (t-1)/(t(3t-1))` on
    /// the tilted apex's partner `3t e_{d+1}`, `1/(3t)` on `3t e_{d+1}` in the
    /// integral facet, and whatever remains on the origin.
    fn closed_form_coeffs(&self, case: FacetCase) -> Vec<Rat> {
        let h = self.half();
        let t = Rat::from_integer(self.t.clone());
        let lambda = int(2) / (int(3) * &t - int(1));
        let mu = (&t - int(1)) / (&t * (int(3) * &t - int(1)));
        let recip = |j: usize| self.legs[j].recip();
        let with_origin = |rest: Vec<Rat>| {
            let used: Rat = rest.iter().sum();
            let mut v = vec![Rat::one() - used];
            v.extend(rest);
            v
        };
        match case {
            FacetCase::OppositeHalfApex => {
                let mut rest: Vec<Rat> = (0..h).map(recip).collect();
                rest.push((int(3) * &t).recip());
                with_origin(rest)
            }
            FacetCase::OppositeTripleApex => {
                let mut rest: Vec<Rat> = (0..h).map(recip).collect();
                rest.push(lambda);
                with_origin(rest)
            }
            FacetCase::OppositeOrigin => {
                let mut v: Vec<Rat> = (0..h).map(recip).collect();
                v.push(lambda);
                v.push(mu);
                v
            }
            FacetCase::OppositeLeg(i) => {
                let mut rest: Vec<Rat> = (0..h).filter(|&j| j != i).map(recip).collect();
                rest.push(lambda);
                rest.push(mu);
                with_origin(rest)
            }
        }
    }
}

/// Rebuilds the witness for `case` from the shape, with the given point and
/// coefficients (as read back from a certificate, say). Not yet verified.
pub fn witness_for_case(
    shape: &HalfApexShape,
    case: FacetCase,
    point: RatVec,
    coeffs: Vec<Rat>,
) -> Result<FacetWitness> {
    let (g, _) = shape.inner_simplex(case)?;
    Ok(FacetWitness {
        facet_case: case,
        facet: shape.facet(case),
        inner_simplex_vertices: g,
        witness_point: point,
        barycentric_coeffs: coeffs,
    })
}

/// One verified witness per facet of `T(b)`.
pub fn facet_witnesses(b: &LegVector) -> Result<Vec<FacetWitness>> {
    let shape = HalfApexShape::parse(b)?;
    let p = Polytope::axis_simplex(b)?;
    let cases = shape.cases();
    let mut out = Vec::with_capacity(cases.len());
    for case in cases {
        let (_, point) = shape.inner_simplex(case)?;
        let w = witness_for_case(&shape, case, point, shape.closed_form_coeffs(case))?;
        verify_witness(&p, &w)?;
        out.push(w);
    }
    let mut covered: Vec<&Halfspace> = out.iter().map(|w| &w.facet).collect();
    covered.sort();
    covered.dedup();
    if covered.len() != p.halfspaces.len() {
        return Err(Error::WitnessVerificationFailed(
            "witnesses do not cover every facet".into(),
        ));
    }
    Ok(out)
}

/// Checks that `w` proves its facet of `p` strongly blocked: `G` is an
/// integral simplex of facet dimension inside the facet, and the witness
/// point is an integral, strictly positive convex combination of `G`.
pub fn verify_witness(p: &Polytope, w: &FacetWitness) -> Result<()> {
    let fail = |why: String| {
        Err(Error::WitnessVerificationFailed(format!(
            "{}: {why}",
            w.facet_case
        )))
    };
    let g = &w.inner_simplex_vertices;
    let c = &w.barycentric_coeffs;
    if !p.halfspaces.contains(&w.facet) {
        return fail("inequality is not a facet of the polytope".into());
    }
    if !is_integral(&w.witness_point) {
        return fail("witness point is not integral".into());
    }
    if g.len() != p.affine_dim() || c.len() != g.len() {
        return fail(format!(
            "expected {} simplex vertices and coefficients",
            p.affine_dim()
        ));
    }
    if g.iter().any(|v| !is_integral(v)) {
        return fail("inner simplex has a non-integral vertex".into());
    }
    if linalg::affine_dim(g) != Some(p.affine_dim() - 1) {
        return fail("inner simplex is degenerate".into());
    }
    for v in g {
        if !p.contains(v) || w.facet.side(v) != Ordering::Equal {
            return fail(format!("inner simplex vertex {v:?} is not on the facet"));
        }
    }
    if c.iter().any(|x| !x.is_positive()) {
        return fail("a barycentric coefficient is not strictly positive".into());
    }
    if c.iter().sum::<Rat>() != Rat::one() {
        return fail("barycentric coefficients do not sum to 1".into());
    }
    let combo = g
        .iter()
        .zip(c)
        .fold(vec![Rat::zero(); p.dim], |acc, (v, x)| {
            add(&acc, &scale(x, v))
        });
    if combo != w.witness_point {
        return fail("combination does not reproduce the witness point".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legs(a: &[Rat]) -> LegVector {
        LegVector::new(a.to_vec()).unwrap()
    }

    fn source_333() -> LegVector {
        legs(&[int(3), int(3), rat(9, 2), int(9)])
    }

    #[test]
    fn case_names_round_trip() {
        for c in [
            FacetCase::OppositeHalfApex,
            FacetCase::OppositeTripleApex,
            FacetCase::OppositeOrigin,
            FacetCase::OppositeLeg(0),
            FacetCase::OppositeLeg(11),
        ] {
            assert_eq!(c.to_string().parse::<FacetCase>().unwrap(), c);
        }
        assert!("opposite_leg_0".parse::<FacetCase>().is_err());
        assert!("sideways".parse::<FacetCase>().is_err());
    }

    #[test]
    fn slanted_facet_coefficients_for_t3() {
        let ws = facet_witnesses(&source_333()).unwrap();
        assert_eq!(ws.len(), 5);
        let w = ws
            .iter()
            .find(|w| w.facet_case == FacetCase::OppositeOrigin)
            .unwrap();
        assert_eq!(
            w.barycentric_coeffs,
            vec![rat(1, 3), rat(1, 3), rat(1, 4), rat(1, 12)]
        );
        assert_eq!(w.witness_point, vec![int(1); 4]);
    }

    #[test]
    fn lowered_apex_for_t3() {
        let ws = facet_witnesses(&source_333()).unwrap();
        let w = ws
            .iter()
            .find(|w| w.facet_case == FacetCase::OppositeTripleApex)
            .unwrap();
        assert!(w
            .inner_simplex_vertices
            .contains(&vec![int(0), int(0), int(4), int(0)]));
        assert_eq!(w.witness_point, vec![int(1), int(1), int(1), int(0)]);
    }

    #[test]
    fn t15_coefficients() {
        let b = legs(&[int(2), int(5), int(6), int(15), rat(45, 2), int(45)]);
        let ws = facet_witnesses(&b).unwrap();
        assert_eq!(ws.len(), 7);
        let w = ws
            .iter()
            .find(|w| w.facet_case == FacetCase::OppositeOrigin)
            .unwrap();
        let n = w.barycentric_coeffs.len();
        assert_eq!(w.barycentric_coeffs[n - 2], rat(1, 22));
        assert_eq!(w.barycentric_coeffs[n - 1], rat(7, 330));
    }

    #[test]
    fn shape_mismatches() {
        let even = legs(&[int(2), int(3), int(6)]);
        assert!(matches!(
            facet_witnesses(&even),
            Err(Error::ShapeMismatch(_))
        ));
        let short = legs(&[rat(3, 2), int(3)]);
        assert!(matches!(
            facet_witnesses(&short),
            Err(Error::ShapeMismatch(_))
        ));
        let not_one = legs(&[int(4), int(3), rat(9, 2), int(9)]);
        assert!(matches!(
            facet_witnesses(&not_one),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn tampered_witnesses_fail() {
        let b = source_333();
        let p = Polytope::axis_simplex(&b).unwrap();
        let good = facet_witnesses(&b).unwrap().remove(2);
        verify_witness(&p, &good).unwrap();

        let mut w = good.clone();
        w.barycentric_coeffs[0] += rat(1, 100);
        assert!(matches!(
            verify_witness(&p, &w),
            Err(Error::WitnessVerificationFailed(_))
        ));

        let mut w = good.clone();
        w.witness_point[0] = int(2);
        assert!(verify_witness(&p, &w).is_err());

        let mut w = good.clone();
        w.inner_simplex_vertices[0][0] = int(4);
        assert!(verify_witness(&p, &w).is_err());

        let mut w = good;
        w.facet = Halfspace::new(vec![BigInt::from(1); 4], BigInt::from(9));
        assert!(verify_witness(&p, &w).is_err());
    }
}
