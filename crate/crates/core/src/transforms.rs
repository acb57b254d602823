//! κ-preserving component replacements.
//!
//! Each map rewrites the last component `t` of a leg vector using one of
//!
//! ```text
//! 1/t = 1/(t+1) + 1/(t(t+1))
//! 1/t = 1/(t+2) + 2/(t(t+2))
//! 1/t = 2/(3t) + 1/(3t)
//! ```
//!
//! so the sum of reciprocals never changes. `eta` chains them to lift an
//! element of `A_d` to a `(d+5)`-leg vector with exactly one half-integral leg.

use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::egyptian::{kappa, EgyptianTuple};
use crate::error::{Error, Result};
use crate::exactgeom::rat::{format_rat, int, rat, Rat, RatVec};

/// Positive leg lengths `a` of the axis-aligned simplex `T(a)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LegVector(RatVec);

impl LegVector {
    pub fn new(a: RatVec) -> Result<LegVector> {
        if a.is_empty() {
            return Err(Error::InvalidInput("empty leg vector".into()));
        }
        if let Some(i) = a.iter().position(|x| !x.is_positive()) {
            return Err(Error::NonPositiveComponent { index: i });
        }
        Ok(LegVector(a))
    }

    pub fn from_ints(a: &[i64]) -> Result<LegVector> {
        LegVector::new(a.iter().map(|&x| int(x)).collect())
    }

    pub fn into_inner(self) -> RatVec {
        self.0
    }

    /// The last leg, written `t` in the constructions.
    pub fn last(&self) -> &Rat {
        self.0.last().expect("nonempty")
    }

    pub fn kappa(&self) -> Rat {
        kappa(&self.0).expect("legs are positive")
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rat).collect()
    }

    fn replace_last(&self, tail: impl IntoIterator<Item = Rat>) -> LegVector {
        let mut out = self.0[..self.0.len() - 1].to_vec();
        out.extend(tail);
        LegVector(out)
    }
}

impl Deref for LegVector {
    type Target = [Rat];
    fn deref(&self) -> &[Rat] {
        &self.0
    }
}

impl From<&EgyptianTuple> for LegVector {
    fn from(t: &EgyptianTuple) -> LegVector {
        LegVector(t.to_rats())
    }
}

/// `(..., t) -> (..., t+1, t(t+1))`.
pub fn phi(a: &LegVector) -> LegVector {
    let t = a.last();
    let t1 = t + Rat::one();
    a.replace_last([t1.clone(), t * t1])
}

/// `(..., t) -> (..., t+3, t(t+1), (t+1)(t+3), (t+1)(t+3))`.
pub fn psi(a: &LegVector) -> LegVector {
    let t = a.last();
    let t1 = t + int(1);
    let t3 = t + int(3);
    let last = &t1 * &t3;
    a.replace_last([t3, t * &t1, last.clone(), last])
}

/// `(..., t) -> (..., 3t/2, 3t)`.
pub fn xi(a: &LegVector) -> LegVector {
    let t = a.last();
    a.replace_last([t * rat(3, 2), t * int(3)])
}

/// Intermediate images of `eta`, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaSteps {
    pub phi: LegVector,
    pub psi: LegVector,
    pub eta: LegVector,
}

/// `ξ(ψ(φ(a)))` for `a ∈ A_d`, with the facts the construction relies on
/// checked at runtime.
pub fn eta(a: &EgyptianTuple) -> Result<LegVector> {
    eta_steps(a).map(|s| s.eta)
}

pub fn eta_steps(a: &EgyptianTuple) -> Result<EtaSteps> {
    // Re-validate: the tuple type guarantees this, but eta is the gate.
    let a = EgyptianTuple::new(a.components().to_vec())?;
    let src = LegVector::from(&a);
    let phi_img = phi(&src);
    let psi_img = psi(&phi_img);
    let eta_img = xi(&psi_img);
    let d = a.len();

    let fail = |what: &str| Err(Error::InvalidInput(format!("eta({a}): {what}")));
    if !is_even_integer(phi_img.last()) {
        return fail("last component of the phi image is not even");
    }
    if !is_odd_integer(psi_img.last()) {
        return fail("last component of the psi image is not odd");
    }
    if eta_img.len() != d + 5 {
        return fail("wrong length");
    }
    if !eta_img.kappa().is_one() {
        return fail("kappa is not 1");
    }
    if eta_img.windows(2).any(|w| w[0] > w[1]) {
        return fail("image is not sorted ascending");
    }
    let fractional: Vec<usize> = (0..eta_img.len())
        .filter(|&i| !eta_img[i].is_integer())
        .collect();
    if fractional != [d + 3] || eta_img[d + 3].denom() != &BigInt::from(2) {
        return fail("expected exactly one half-integral component, at position d+4");
    }
    Ok(EtaSteps {
        phi: phi_img,
        psi: psi_img,
        eta: eta_img,
    })
}

pub fn is_even_integer(x: &Rat) -> bool {
    x.is_integer() && (x.numer() % 2u32 == BigInt::from(0))
}

pub fn is_odd_integer(x: &Rat) -> bool {
    x.is_integer() && !is_even_integer(x)
}
