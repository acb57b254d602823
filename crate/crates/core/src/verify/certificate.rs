use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::egyptian::EgyptianTuple;
use crate::error::{Error, Result};
use crate::exactgeom::lattice::within_budget;
use crate::exactgeom::polytope::{bigint_json, json_bigint, json_ratvec, ratvec_json};
use crate::exactgeom::{
    format_rat, integer_hull, interior_lattice_points, lattice_points, parse_rat, Polytope, Rat,
    RatVec,
};
use crate::transforms::{eta, LegVector};

use super::axis::{is_lattice_free_axis, is_maximal_lattice_free_axis};
use super::blocking::strong_blocking_point;
use super::witness::{
    facet_witnesses, verify_witness, witness_for_case, FacetCase, FacetWitness, HalfApexShape,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    BruteForce,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::BruteForce => "brute_force",
            Method::Both => "both",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "closed_form" => Ok(Method::ClosedForm),
            "brute_force" => Ok(Method::BruteForce),
            "both" => Ok(Method::Both),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// Evidence that `conv(T(b) ∩ Z^n)` is weakly but not strongly maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// The `A_d` element `b` was built from, when it came through `eta`.
    pub source: Option<EgyptianTuple>,
    pub leg_vector: LegVector,
    pub kappa: Rat,
    pub is_lattice_free: bool,
    pub facet_witnesses: Vec<FacetWitness>,
    /// Per facet (in halfspace order) an integral point of `relint F_I`
    /// found by enumeration; empty under the closed-form method.
    pub enumerated_facet_points: Vec<RatVec>,
    pub hull: Option<Polytope>,
    pub hull_proper_subset: bool,
    pub verdict_in_l: bool,
    pub verdict_not_in_m: bool,
    pub method: Method,
}

/// Certificate for `conv(T(η(a)) ∩ Z^{d+5})`.
pub fn certify(a: &EgyptianTuple, budget: u64) -> Result<Certificate> {
    certify_legs(Some(a.clone()), eta(a)?, budget)
}

/// Certificate for `T(b)` with `b` of the half-apex shape. The brute-force
/// cross-checks run only when the bounding box fits in `budget`.
pub fn certify_legs(
    source: Option<EgyptianTuple>,
    b: LegVector,
    budget: u64,
) -> Result<Certificate> {
    let p = Polytope::axis_simplex(&b)?;
    let kappa = b.kappa();
    if !is_maximal_lattice_free_axis(&b) {
        return Err(Error::InvalidInput(format!("kappa = {kappa} is not 1")));
    }
    let facet_witnesses = facet_witnesses(&b)?;
    let mut is_lattice_free = is_lattice_free_axis(&b);
    let non_integral_vertex = !p.is_integral();

    let (method, hull, enumerated_facet_points, hull_proper_subset) = if within_budget(&p, budget) {
        let brute_free = interior_lattice_points(&p, budget)?.is_empty();
        if brute_free != is_lattice_free {
            return Err(Error::WitnessVerificationFailed(
                "interior lattice points disagree with the kappa criterion".into(),
            ));
        }
        is_lattice_free &= brute_free;
        let points = lattice_points(&p, budget)?;
        let mut found = Vec::new();
        for f in p.facets()? {
            match strong_blocking_point(&p, &points, &f)? {
                Some(z) => found.push(z),
                None => {
                    return Err(Error::WitnessVerificationFailed(format!(
                        "enumeration found facet {:?} not strongly blocked",
                        f.hyperplane
                    )))
                }
            }
        }
        let hull = integer_hull(&p, budget)?;
        if !hull.vertices.iter().all(|v| p.contains(v)) {
            return Err(Error::WitnessVerificationFailed(
                "integer hull leaves the polytope".into(),
            ));
        }
        let proper = !hull.same_set(&p);
        if proper != non_integral_vertex {
            return Err(Error::WitnessVerificationFailed(
                "integer hull propriety disagrees with vertex integrality".into(),
            ));
        }
        (Method::Both, Some(hull), found, proper)
    } else {
        // A non-integral vertex of P cannot lie in the integral P_I ⊆ P.
        (Method::ClosedForm, None, Vec::new(), non_integral_vertex)
    };

    let verdict_in_l = is_lattice_free && facet_witnesses.len() == p.halfspaces.len();
    let verdict_not_in_m = verdict_in_l && hull_proper_subset;
    Ok(Certificate {
        source,
        leg_vector: b,
        kappa,
        is_lattice_free,
        facet_witnesses,
        enumerated_facet_points,
        hull,
        hull_proper_subset,
        verdict_in_l,
        verdict_not_in_m,
        method,
    })
}

fn int_point_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| bigint_json(&x.to_integer())).collect())
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        let mut v = json!({});
        if let Some(a) = &self.source {
            v["a"] = Value::Array(a.components().iter().map(bigint_json).collect());
        }
        v["eta"] = ratvec_json(&self.leg_vector);
        v["kappa"] = Value::String(format_rat(&self.kappa));
        v["witnesses"] = Value::Array(
            self.facet_witnesses
                .iter()
                .map(|w| {
                    json!({
                        "case": w.facet_case.to_string(),
                        "point": int_point_json(&w.witness_point),
                        "coeffs": ratvec_json(&w.barycentric_coeffs),
                    })
                })
                .collect(),
        );
        if let Some(h) = &self.hull {
            v["hull_vertices"] = Value::Array(h.vertices.iter().map(|x| ratvec_json(x)).collect());
        }
        v["in_L"] = Value::Bool(self.verdict_in_l);
        v["not_in_M"] = Value::Bool(self.verdict_not_in_m);
        v["method"] = Value::String(self.method.to_string());
        v
    }
}

/// Re-verifies a certificate JSON object from scratch: the source tuple, its
/// η image, κ, every witness against the rebuilt polytope, facet coverage,
/// the reported hull vertices and both verdicts.
pub fn verify_certificate_json(v: &Value) -> Result<()> {
    let bad = |why: String| Err(Error::WitnessVerificationFailed(why));
    let claimed_eta = json_ratvec(
        v.get("eta")
            .ok_or_else(|| Error::Parse("missing eta".into()))?,
    )?;
    let b = match v.get("a") {
        Some(a) => {
            let a = a
                .as_array()
                .ok_or_else(|| Error::Parse("\"a\" must be an array".into()))?
                .iter()
                .map(json_bigint)
                .collect::<Result<Vec<BigInt>>>()?;
            let a = EgyptianTuple::new(a)?;
            let b = eta(&a)?;
            if claimed_eta != b.to_vec() {
                return bad(format!("eta does not match the recomputed image of ({a})"));
            }
            b
        }
        // Certificates built from a leg vector directly carry no source.
        None => LegVector::new(claimed_eta)?,
    };
    let kappa = parse_rat(
        v.get("kappa")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing kappa".into()))?,
    )?;
    if kappa != b.kappa() || !kappa.is_one() {
        return bad(format!("kappa claim {kappa} is wrong"));
    }
    let p = Polytope::axis_simplex(&b)?;
    let shape = HalfApexShape::parse(&b)?;
    let ws = v
        .get("witnesses")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing witnesses".into()))?;
    let mut covered = Vec::new();
    for w in ws {
        let case: FacetCase = w
            .get("case")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("witness without case".into()))?
            .parse()?;
        let point = w
            .get("point")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("witness without point".into()))?
            .iter()
            .map(|x| json_bigint(x).map(Rat::from_integer))
            .collect::<Result<RatVec>>()?;
        let coeffs = json_ratvec(
            w.get("coeffs")
                .ok_or_else(|| Error::Parse("witness without coeffs".into()))?,
        )?;
        let wit = witness_for_case(&shape, case, point, coeffs)?;
        verify_witness(&p, &wit)?;
        covered.push(wit.facet);
    }
    covered.sort();
    covered.dedup();
    let all_facets = covered.len() == p.halfspaces.len() && ws.len() == covered.len();

    let in_l = v
        .get("in_L")
        .and_then(Value::as_bool)
        .ok_or_else(|| Error::Parse("missing in_L".into()))?;
    let not_in_m = v
        .get("not_in_M")
        .and_then(Value::as_bool)
        .ok_or_else(|| Error::Parse("missing not_in_M".into()))?;
    let method: Method = v
        .get("method")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing method".into()))?
        .parse()?;
    if in_l && !(all_facets && is_lattice_free_axis(&b)) {
        return bad("in_L claimed without one verified witness per facet".into());
    }
    if let Some(hv) = v.get("hull_vertices") {
        let hv = hv
            .as_array()
            .ok_or_else(|| Error::Parse("hull_vertices must be an array".into()))?
            .iter()
            .map(json_ratvec)
            .collect::<Result<Vec<_>>>()?;
        if hv
            .iter()
            .any(|x| x.len() != p.dim || !crate::exactgeom::rat::is_integral(x) || !p.contains(x))
        {
            return bad("a hull vertex is not an integral point of the polytope".into());
        }
    } else if method != Method::ClosedForm {
        return bad(format!("method {method} requires hull_vertices"));
    }
    if not_in_m && !(in_l && !p.is_integral()) {
        return bad("not_in_M claimed but the polytope is integral or not in L".into());
    }
    if !in_l || !not_in_m {
        return bad("certificate does not claim both verdicts".into());
    }
    Ok(())
}
