use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::linalg::{self, AffineHull};
use super::rat::{dot_int, format_rat, parse_rat, sub, to_coprime_integers, Rat, RatVec};
use crate::error::{Error, Result};

/// `normal · x <= rhs` (or `=` when used as an equation), stored as coprime
/// integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub rhs: BigInt,
}

impl Halfspace {
    pub fn new(normal: Vec<BigInt>, rhs: BigInt) -> Halfspace {
        Halfspace { normal, rhs }
    }

    /// Normalized `normal · x <= rhs`. `None` for the zero inequality.
    pub fn from_rational(normal: &[Rat], rhs: &Rat) -> Option<Halfspace> {
        let (n, r) = to_coprime_integers(normal, rhs)?;
        if n.iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(Halfspace::new(n, r))
    }

    /// Normalized equation `normal · x = rhs`, leading nonzero coefficient positive.
    pub fn equation(normal: &[Rat], rhs: &Rat) -> Option<Halfspace> {
        let mut h = Halfspace::from_rational(normal, rhs)?;
        if h.normal
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative())
        {
            h.normal.iter_mut().for_each(|c| *c = -&*c);
            h.rhs = -h.rhs;
        }
        Some(h)
    }

    /// `normal · x - rhs`; `<= 0` inside, `= 0` on the boundary.
    pub fn slack(&self, x: &[Rat]) -> Rat {
        dot_int(&self.normal, x) - Rat::from_integer(self.rhs.clone())
    }

    pub fn side(&self, x: &[Rat]) -> Ordering {
        self.slack(x).cmp(&Rat::zero())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.side(x) != Ordering::Greater
    }

    pub fn normal_rat(&self) -> RatVec {
        self.normal
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "normal": self.normal.iter().map(bigint_json).collect::<Vec<_>>(),
            "rhs": bigint_json(&self.rhs),
        })
    }

    pub fn from_json(v: &Value) -> Result<Halfspace> {
        let normal = v
            .get("normal")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("halfspace without normal".into()))?
            .iter()
            .map(json_bigint)
            .collect::<Result<Vec<_>>>()?;
        let rhs = json_bigint(
            v.get("rhs")
                .ok_or_else(|| Error::Parse("halfspace without rhs".into()))?,
        )?;
        Ok(Halfspace::new(normal, rhs))
    }
}

pub fn bigint_json(x: &BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse()
            .expect("integer literal is a JSON number"),
    )
}

pub fn json_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::Parse(format!("expected integer, got {n}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

pub fn ratvec_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rat(x))).collect())
}

pub fn json_ratvec(v: &Value) -> Result<RatVec> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected array of rationals, got {v}")))?
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rat(s),
            other => Err(Error::Parse(format!(
                "rational must be a \"num/den\" string, got {other}"
            ))),
        })
        .collect()
}

/// Exact rational polytope in both vertex and halfspace form.
///
/// Vertices are sorted lexicographically; halfspaces are normalized and
/// sorted lexicographically by `(normal, rhs)`. `equations` is empty exactly
/// when the polytope is full-dimensional; otherwise the halfspaces are the
/// relative facets, expressed in the canonical chart of the affine hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    pub dim: usize,
    pub vertices: Vec<RatVec>,
    pub halfspaces: Vec<Halfspace>,
    pub equations: Vec<Halfspace>,
    /// One vertex-index set per halfspace: the vertices tight at it.
    pub incidence: Vec<Vec<usize>>,
}

impl Polytope {
    /// Sorts both representations and recomputes the incidence.
    pub fn from_parts(
        dim: usize,
        mut vertices: Vec<RatVec>,
        mut halfspaces: Vec<Halfspace>,
        mut equations: Vec<Halfspace>,
    ) -> Polytope {
        vertices.sort();
        vertices.dedup();
        halfspaces.sort();
        halfspaces.dedup();
        equations.sort();
        equations.dedup();
        let incidence = halfspaces
            .iter()
            .map(|h| {
                (0..vertices.len())
                    .filter(|&i| h.side(&vertices[i]) == Ordering::Equal)
                    .collect()
            })
            .collect();
        Polytope {
            dim,
            vertices,
            halfspaces,
            equations,
            incidence,
        }
    }

    /// `T(a) = conv{o, a_1 e_1, ..., a_d e_d}`, built in closed form.
    pub fn axis_simplex(legs: &[Rat]) -> Result<Polytope> {
        if let Some(i) = legs.iter().position(|a| !a.is_positive()) {
            return Err(Error::NonPositiveComponent { index: i });
        }
        let d = legs.len();
        if d == 0 {
            return Err(Error::InvalidInput("empty leg vector".into()));
        }
        let mut vertices = vec![vec![Rat::zero(); d]];
        for (i, a) in legs.iter().enumerate() {
            let mut v = vec![Rat::zero(); d];
            v[i] = a.clone();
            vertices.push(v);
        }
        let mut halfspaces: Vec<Halfspace> = (0..d)
            .map(|i| {
                let mut n = vec![BigInt::zero(); d];
                n[i] = -BigInt::one();
                Halfspace::new(n, BigInt::zero())
            })
            .collect();
        let recips: RatVec = legs.iter().map(|a| a.recip()).collect();
        halfspaces.push(Halfspace::from_rational(&recips, &Rat::one()).expect("nonzero"));
        Ok(Polytope::from_parts(d, vertices, halfspaces, Vec::new()))
    }

    pub fn affine_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| super::rat::is_integral(v))
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.equations.iter().all(|e| e.side(x) == Ordering::Equal)
            && self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Relative interior membership (the interior when full-dimensional).
    pub fn relint_contains(&self, x: &[Rat]) -> bool {
        if self.affine_dim() == 0 {
            return self.vertices.first().is_some_and(|v| v.as_slice() == x);
        }
        self.equations.iter().all(|e| e.side(x) == Ordering::Equal)
            && self.halfspaces.iter().all(|h| h.side(x) == Ordering::Less)
    }

    pub fn interior_contains(&self, x: &[Rat]) -> bool {
        self.is_full_dimensional() && self.relint_contains(x)
    }

    /// Same point set, decided on the normalized halfspace/equation sets.
    pub fn same_set(&self, other: &Polytope) -> bool {
        self.dim == other.dim
            && self.equations == other.equations
            && self.halfspaces == other.halfspaces
    }

    /// Spot-checks that the two representations agree.
    pub fn check_consistency(&self) -> Result<()> {
        let k = self.affine_dim();
        for v in &self.vertices {
            if !self.contains(v) {
                return Err(Error::InvalidInput(format!(
                    "vertex {v:?} violates a constraint"
                )));
            }
        }
        if linalg::affine_dim(&self.vertices) != Some(k) {
            return Err(Error::InvalidInput(
                "vertex set has the wrong affine dimension".into(),
            ));
        }
        for (h, inc) in self.halfspaces.iter().zip(&self.incidence) {
            let pts: Vec<RatVec> = inc.iter().map(|&i| self.vertices[i].clone()).collect();
            if k > 0 && linalg::affine_dim(&pts) != Some(k - 1) {
                return Err(Error::InvalidInput(format!(
                    "halfspace {h:?} is not facet-defining"
                )));
            }
        }
        Ok(())
    }

    pub fn facets(&self) -> Result<Vec<Face>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                affine: self.affine_dim(),
                ambient: self.dim,
            });
        }
        self.halfspaces
            .iter()
            .zip(&self.incidence)
            .enumerate()
            .map(|(i, (h, inc))| {
                let verts = inc.iter().map(|&j| self.vertices[j].clone()).collect();
                let mut face = Face::from_vertices(verts)?;
                face.facet_index = Some(i);
                face.vertex_indices = inc.clone();
                face.hyperplane = Some(h.clone());
                Ok(face)
            })
            .collect()
    }

    /// Integer box `[ceil(min_i), floor(max_i)]` around the vertices.
    pub fn integer_bounding_box(&self) -> Vec<(BigInt, BigInt)> {
        (0..self.dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| &v[i]).min().expect("nonempty");
                let hi = self.vertices.iter().map(|v| &v[i]).max().expect("nonempty");
                (lo.ceil().to_integer(), hi.floor().to_integer())
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "dim": self.dim,
            "vertices": self.vertices.iter().map(|x| ratvec_json(x)).collect::<Vec<_>>(),
            "halfspaces": self.halfspaces.iter().map(Halfspace::to_json).collect::<Vec<_>>(),
        });
        if !self.equations.is_empty() {
            v["equations"] = Value::Array(self.equations.iter().map(Halfspace::to_json).collect());
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Polytope> {
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("polytope without dim".into()))? as usize;
        let vertices = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polytope without vertices".into()))?
            .iter()
            .map(json_ratvec)
            .collect::<Result<Vec<_>>>()?;
        let parse_hs = |key: &str| -> Result<Vec<Halfspace>> {
            match v.get(key) {
                None => Ok(Vec::new()),
                Some(Value::Array(xs)) => xs.iter().map(Halfspace::from_json).collect(),
                Some(other) => Err(Error::Parse(format!("{key} must be an array, got {other}"))),
            }
        };
        let halfspaces = parse_hs("halfspaces")?;
        let equations = parse_hs("equations")?;
        let bad_len = vertices.iter().any(|x| x.len() != dim)
            || halfspaces
                .iter()
                .chain(&equations)
                .any(|h| h.normal.len() != dim);
        if bad_len {
            return Err(Error::Parse("coordinate count does not match dim".into()));
        }
        Ok(Polytope::from_parts(dim, vertices, halfspaces, equations))
    }
}

/// Volume of the simplex spanned by `k + 1` points of `Q^k`.
pub fn simplex_volume(vertices: &[RatVec]) -> Rat {
    let k = vertices.len() - 1;
    let m: Vec<RatVec> = vertices[1..].iter().map(|v| sub(v, &vertices[0])).collect();
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    linalg::determinant(&m).abs() / Rat::from_integer(fact)
}

/// A face given by its vertices, together with its own relative description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Index of the defining halfspace in the parent, when the face is a facet.
    pub facet_index: Option<usize>,
    pub vertex_indices: Vec<usize>,
    pub vertices: Vec<RatVec>,
    pub hyperplane: Option<Halfspace>,
    pub affine_hull: AffineHull,
    /// `conv(vertices)` described inside its affine hull; `None` for a point.
    relative: Option<Polytope>,
}

impl Face {
    pub fn from_vertices(vertices: Vec<RatVec>) -> Result<Face> {
        let affine_hull = AffineHull::of(&vertices)
            .ok_or_else(|| Error::DegenerateInput("face without vertices".into()))?;
        let relative = if affine_hull.dim() == 0 {
            None
        } else {
            Some(super::hull::convex_hull(&vertices)?)
        };
        Ok(Face {
            facet_index: None,
            vertex_indices: (0..vertices.len()).collect(),
            vertices,
            hyperplane: None,
            affine_hull,
            relative,
        })
    }

    pub fn dim(&self) -> usize {
        self.affine_hull.dim()
    }

    pub fn relative_polytope(&self) -> Option<&Polytope> {
        self.relative.as_ref()
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim() + 1
    }

    pub fn relint_contains(&self, z: &[Rat]) -> bool {
        match &self.relative {
            Some(p) => p.relint_contains(z),
            None => self.vertices[0].as_slice() == z,
        }
    }

    /// Barycentric route; only defined when the face is a simplex.
    pub fn relint_contains_barycentric(&self, z: &[Rat]) -> Option<bool> {
        if !self.is_simplex() {
            return None;
        }
        Some(
            barycentric_coordinates(&self.vertices, z)
                .is_some_and(|c| c.iter().all(|x| x.is_positive())),
        )
    }
}

pub fn relint_contains(face: &Face, z: &[Rat]) -> bool {
    face.relint_contains(z)
}

/// Coefficients `c` with `sum c_j v_j = z` and `sum c_j = 1`, for affinely
/// independent `vertices`. `None` if `z` is off their affine hull.
pub fn barycentric_coordinates(vertices: &[RatVec], z: &[Rat]) -> Option<RatVec> {
    let hull = AffineHull::of(vertices)?;
    let k = hull.dim();
    if vertices.len() != k + 1 || !hull.contains(z) {
        return None;
    }
    if k == 0 {
        return Some(vec![Rat::one()]);
    }
    // Solve in the chart coordinates, where the hull is all of Q^k.
    let v0 = hull.project(&vertices[0]);
    let cols: Vec<RatVec> = vertices[1..]
        .iter()
        .map(|v| sub(&hull.project(v), &v0))
        .collect();
    let m: Vec<RatVec> = (0..k)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let rhs = sub(&hull.project(z), &v0);
    let tail = linalg::solve(&m, &rhs)?;
    let head = Rat::one() - tail.iter().fold(Rat::zero(), |a, x| a + x);
    let mut coeffs = vec![head];
    coeffs.extend(tail);
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::{int, int_vec, rat};

    fn seg() -> Face {
        Face::from_vertices(vec![int_vec(&[2, 0]), int_vec(&[0, 2])]).unwrap()
    }

    #[test]
    fn relint_of_segment() {
        let f = seg();
        for (z, want) in [([1, 1], true), ([2, 0], false), ([1, 0], false)] {
            let z = int_vec(&z);
            assert_eq!(f.relint_contains(&z), want, "{z:?}");
            assert_eq!(f.relint_contains_barycentric(&z), Some(want), "{z:?}");
        }
    }

    #[test]
    fn axis_simplex_closed_form() {
        let p = Polytope::axis_simplex(&[int(2), int(2)]).unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(p.halfspaces.len(), 3);
        p.check_consistency().unwrap();
        assert_eq!(p.facets().unwrap().len(), 3);
        let p = Polytope::axis_simplex(&[int(3), int(3), rat(9, 2), int(9)]).unwrap();
        assert_eq!(p.facets().unwrap().len(), 5);
        assert!(!p.is_integral());
        assert!(matches!(
            Polytope::axis_simplex(&[int(1), int(0)]),
            Err(Error::NonPositiveComponent { index: 1 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = Polytope::axis_simplex(&[int(2), int(5), rat(45, 2)]).unwrap();
        let v = p.to_json();
        assert_eq!(v["vertices"][1][2], "45/2");
        assert_eq!(Polytope::from_json(&v).unwrap(), p);
        let text = serde_json::to_string(&v).unwrap();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(Polytope::from_json(&back).unwrap(), p);
    }

    #[test]
    fn big_integers_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let h = Halfspace::new(vec![big.clone()], -big.clone());
        let text = serde_json::to_string(&h.to_json()).unwrap();
        let back = Halfspace::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn simplex_volume_matches_leg_product() {
        let legs = [int(2), int(5), rat(9, 2)];
        let p = Polytope::axis_simplex(&legs).unwrap();
        assert_eq!(simplex_volume(&p.vertices), rat(2 * 5 * 9, 2 * 6));
    }
}
