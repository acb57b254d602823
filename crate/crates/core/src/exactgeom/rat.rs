//! Exact rationals and rational vectors.
//!
//! Every number in the crate is a reduced fraction of arbitrary-precision
//! integers; no predicate ever touches floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with a positive denominator.
pub type Rat = BigRational;

/// Point of `Q^d`. Coordinates are 0-indexed in code; documentation that
/// talks about `x_1, ..., x_d` means `v[0], ..., v[d-1]`.
pub type RatVec = Vec<Rat>;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

pub fn int_vec<I: Into<BigInt> + Copy>(xs: &[I]) -> RatVec {
    xs.iter().map(|&x| int(x)).collect()
}

/// The `i`-th standard basis vector of `Q^d` (0-indexed).
pub fn unit_vec(d: usize, i: usize) -> RatVec {
    let mut v = vec![Rat::zero(); d];
    v[i] = Rat::one();
    v
}

/// Always `num/den`, including integers (`3` is written `3/1`).
pub fn format_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `num/den` or a bare integer. Non-reduced input is reduced.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(normal: &[BigInt], x: &[Rat]) -> Rat {
    normal
        .iter()
        .zip(x)
        .filter(|(c, _)| !c.is_zero())
        .fold(Rat::zero(), |acc, (c, y)| acc + y * c)
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(c: &Rat, a: &[Rat]) -> RatVec {
    a.iter().map(|x| c * x).collect()
}

/// Scales `coeffs` (followed by `rhs`) to coprime integers with the same sign
/// pattern. Returns `None` when every coefficient and the rhs vanish.
pub fn to_coprime_integers(coeffs: &[Rat], rhs: &Rat) -> Option<(Vec<BigInt>, BigInt)> {
    let lcm = coeffs
        .iter()
        .chain(std::iter::once(rhs))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = coeffs
        .iter()
        .chain(std::iter::once(rhs))
        .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let mut out: Vec<BigInt> = scaled.into_iter().map(|x| x / &g).collect();
    let rhs = out.pop().unwrap();
    Some((out, rhs))
}

/// Homogeneous integer form `(v, w)` with `x = v / w`, `w > 0`.
pub fn homogenize(x: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let w = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v = x.iter().map(|c| c.numer() * (&w / c.denom())).collect();
    (v, w)
}

pub fn sign(x: &BigInt) -> std::cmp::Ordering {
    if x.is_positive() {
        std::cmp::Ordering::Greater
    } else if x.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}
