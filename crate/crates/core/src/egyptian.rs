//! Sorted solutions of `1/a_1 + ... + 1/a_d = 1` in positive integers.
//!
//! The search fixes components left to right. With remaining target `r` and
//! `k` free slots, the next component `a` satisfies `a >= ceil(1/r)` (one
//! term cannot exceed `r`) and `a <= floor(k/r)` (it is the largest of the
//! `k` remaining reciprocals). The last two slots are solved in closed form
//! through `(p x - q)(p y - q) = q^2` for `r = p/q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactgeom::rat::Rat;

pub const DEFAULT_MAX_D: usize = 8;

/// Dimension cap: `LATFREE_MAX_D` when set to a positive integer, else 8.
pub fn max_dimension() -> usize {
    std::env::var("LATFREE_MAX_D")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&d: &usize| d >= 1)
        .unwrap_or(DEFAULT_MAX_D)
}

pub fn check_dimension(d: usize, max: usize) -> Result<()> {
    if d == 0 || d > max {
        return Err(Error::DimensionOutOfRange { d, max });
    }
    Ok(())
}

/// An element of `A_d`: positive integers, ascending, reciprocals summing to 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EgyptianTuple(Vec<BigInt>);

impl EgyptianTuple {
    pub fn new(a: Vec<BigInt>) -> Result<EgyptianTuple> {
        if a.is_empty() {
            return Err(Error::InvalidInput("empty tuple".into()));
        }
        if let Some(i) = a.iter().position(|x| !x.is_positive()) {
            return Err(Error::NonPositiveComponent { index: i });
        }
        if a.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(
                "components are not sorted ascending".into(),
            ));
        }
        let k = kappa_int(&a);
        if !k.is_one() {
            return Err(Error::InvalidInput(format!(
                "kappa = {}/{} is not 1",
                k.numer(),
                k.denom()
            )));
        }
        Ok(EgyptianTuple(a))
    }

    pub fn from_u64(a: &[u64]) -> Result<EgyptianTuple> {
        EgyptianTuple::new(a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn components(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.0
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect()
    }

    /// Space-separated decimal line, e.g. `2 3 6`.
    pub fn to_line(&self) -> String {
        self.to_string()
    }

    pub fn parse_line(line: &str) -> Result<EgyptianTuple> {
        let a = line
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad component {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        EgyptianTuple::new(a)
    }
}

impl fmt::Display for EgyptianTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// `κ(a) = Σ 1/a_i`.
pub fn kappa(a: &[Rat]) -> Result<Rat> {
    if let Some(i) = a.iter().position(|x| !x.is_positive()) {
        return Err(Error::NonPositiveComponent { index: i });
    }
    Ok(a.iter().map(|x| x.recip()).sum())
}

fn kappa_int(a: &[BigInt]) -> Rat {
    a.iter().map(|x| Rat::new(BigInt::one(), x.clone())).sum()
}

/// Streams `A_d` to `sink` in lexicographic order and returns its size.
pub fn enumerate_a(d: usize, mut sink: impl FnMut(EgyptianTuple)) -> Result<u64> {
    check_dimension(d, max_dimension())?;
    let mut count = 0u64;
    let mut prefix = Vec::with_capacity(d);
    search(
        &mut prefix,
        &BigInt::one(),
        &BigInt::one(),
        &BigInt::one(),
        d,
        &mut |t| {
            count += 1;
            sink(EgyptianTuple(t.to_vec()));
        },
    );
    Ok(count)
}

pub fn collect_a(d: usize) -> Result<Vec<EgyptianTuple>> {
    let mut out = Vec::new();
    enumerate_a(d, |t| out.push(t))?;
    Ok(out)
}

/// `|A_d|`, computed in parallel over subtrees of the first two components
/// on the current rayon pool.
pub fn count_a(d: usize) -> Result<u64> {
    check_dimension(d, max_dimension())?;
    if d <= 2 {
        return enumerate_a(d, |_| {});
    }
    let mut roots = Vec::new();
    let one = BigInt::one();
    for_each_choice(&one, &one, &one, d, |a1, p1, q1| {
        for_each_choice(&p1, &q1, &a1, d - 1, |a2, p2, q2| {
            roots.push((vec![a1.clone(), a2], p2, q2));
        });
    });
    Ok(roots
        .into_par_iter()
        .map(|(mut prefix, p, q)| {
            let lo = prefix[1].clone();
            let mut n = 0u64;
            search(&mut prefix, &p, &q, &lo, d - 2, &mut |_| n += 1);
            n
        })
        .sum())
}

/// Candidate next components for target `p/q`, `k` free slots and lower
/// bound `lo`, each passed with the reduced remainder it leaves (nonzero).
fn for_each_choice(
    p: &BigInt,
    q: &BigInt,
    lo: &BigInt,
    k: usize,
    mut f: impl FnMut(BigInt, BigInt, BigInt),
) {
    let (from, to) = component_bounds(p, q, lo, k);
    let mut a = from;
    while a <= to {
        let num = p * &a - q;
        if num.is_positive() {
            let den = q * &a;
            let g = num.gcd(&den);
            f(a.clone(), num / &g, den / g);
        }
        a += 1;
    }
}

/// `[max(lo, ceil(q/p)), floor(k q / p)]`.
pub fn component_bounds(p: &BigInt, q: &BigInt, lo: &BigInt, k: usize) -> (BigInt, BigInt) {
    let from = q.div_ceil(p).max(lo.clone());
    let to = (q * BigInt::from(k)).div_floor(p);
    (from, to)
}

fn search(
    prefix: &mut Vec<BigInt>,
    p: &BigInt,
    q: &BigInt,
    lo: &BigInt,
    k: usize,
    emit: &mut dyn FnMut(&[BigInt]),
) {
    match k {
        0 => {}
        1 => {
            if p.is_one() && q >= lo {
                prefix.push(q.clone());
                emit(prefix);
                prefix.pop();
            }
        }
        2 => {
            for (x, y) in unit_fraction_pairs(p, q) {
                if &x >= lo {
                    prefix.push(x);
                    prefix.push(y);
                    emit(prefix);
                    prefix.truncate(prefix.len() - 2);
                }
            }
        }
        _ => {
            let mut children = Vec::new();
            for_each_choice(p, q, lo, k, |a, p2, q2| children.push((a, p2, q2)));
            for (a, p2, q2) in children {
                prefix.push(a.clone());
                search(prefix, &p2, &q2, &a, k - 1, emit);
                prefix.pop();
            }
        }
    }
}

/// All `x <= y` with `1/x + 1/y = p/q` (`p/q` reduced, positive), by
/// ascending `x`.
pub fn unit_fraction_pairs(p: &BigInt, q: &BigInt) -> Vec<(BigInt, BigInt)> {
    let q2 = q * q;
    let mut out = Vec::new();
    for u in divisors_of_square(q) {
        if &u > q {
            break;
        }
        let v = &q2 / &u;
        let (xn, yn) = (&u + q, &v + q);
        if xn.is_multiple_of(p) && yn.is_multiple_of(p) {
            out.push((xn / p, yn / p));
        }
    }
    out
}

/// Sorted divisors of `n^2`.
fn divisors_of_square(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (prime, exp) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (2 * exp + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=2 * exp {
                next.push(pk.clone());
                pk *= &prime;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn factorize(n: &BigInt) -> Vec<(BigInt, usize)> {
    let mut out = Vec::new();
    if let Some(mut m) = n.to_u64() {
        let mut f = 2u64;
        while f * f <= m {
            if m % f == 0 {
                let mut e = 0;
                while m % f == 0 {
                    m /= f;
                    e += 1;
                }
                out.push((BigInt::from(f), e));
            }
            f += if f == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push((BigInt::from(m), 1));
        }
        return out;
    }
    let mut m = n.clone();
    let mut f = BigInt::from(2);
    while &f * &f <= m {
        if (&m % &f).is_zero() {
            let mut e = 0;
            while (&m % &f).is_zero() {
                m /= &f;
                e += 1;
            }
            out.push((f.clone(), e));
        }
        f += 1;
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    out
}

/// One row of the growth table. Logarithms are for display only.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub d: usize,
    pub count: u64,
    pub lnln_count: Option<f64>,
    pub d_over_ln_d: Option<f64>,
}

impl GrowthRow {
    pub fn csv_line(&self) -> String {
        let cell = |x: Option<f64>| x.map(|v| format!("{v:.4}")).unwrap_or_default();
        format!(
            "{},{},{},{}",
            self.d,
            self.count,
            cell(self.lnln_count),
            cell(self.d_over_ln_d)
        )
    }
}

pub const GROWTH_CSV_HEADER: &str = "d,count,lnln_count,d_over_ln_d";

pub fn growth_report(d_max: usize) -> Result<Vec<GrowthRow>> {
    check_dimension(d_max, max_dimension())?;
    (1..=d_max)
        .map(|d| {
            let count = count_a(d)?;
            let lnln_count = (count >= 3).then(|| (count as f64).ln().ln());
            let d_over_ln_d = (d >= 2).then(|| d as f64 / (d as f64).ln());
            Ok(GrowthRow {
                d,
                count,
                lnln_count,
                d_over_ln_d,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat::{int, rat};

    fn tuples(d: usize) -> Vec<Vec<u64>> {
        collect_a(d)
            .unwrap()
            .iter()
            .map(|t| t.components().iter().map(|x| x.to_u64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&[int(2), int(3), int(6)]).unwrap(), int(1));
        assert_eq!(kappa(&[int(1)]).unwrap(), int(1));
        assert_eq!(kappa(&[int(3), int(3), rat(9, 2), int(9)]).unwrap(), int(1));
        assert_eq!(
            kappa(&[int(2), int(0)]),
            Err(Error::NonPositiveComponent { index: 1 })
        );
    }

    #[test]
    fn small_sets() {
        assert_eq!(tuples(1), vec![vec![1]]);
        assert_eq!(tuples(2), vec![vec![2, 2]]);
        assert_eq!(tuples(3), vec![vec![2, 3, 6], vec![2, 4, 4], vec![3, 3, 3]]);
        assert_eq!(tuples(4).len(), 14);
    }

    #[test]
    fn dimension_cap() {
        assert_eq!(
            count_a(0),
            Err(Error::DimensionOutOfRange {
                d: 0,
                max: max_dimension()
            })
        );
        assert!(matches!(
            count_a(99),
            Err(Error::DimensionOutOfRange { d: 99, .. })
        ));
    }

    #[test]
    fn tuple_validation() {
        assert!(EgyptianTuple::from_u64(&[2, 3, 6]).is_ok());
        assert!(EgyptianTuple::from_u64(&[6, 3, 2]).is_err());
        assert!(EgyptianTuple::from_u64(&[2, 3, 7]).is_err());
        assert!(EgyptianTuple::from_u64(&[0, 1]).is_err());
        assert_eq!(
            EgyptianTuple::parse_line(" 2 4 4\n").unwrap().to_line(),
            "2 4 4"
        );
        assert!(EgyptianTuple::parse_line("2 x 4").is_err());
    }

    #[test]
    fn pair_solver_matches_bounded_loop() {
        for (p, q) in [
            (1u32, 1u32),
            (1, 2),
            (2, 3),
            (1, 6),
            (5, 12),
            (3, 7),
            (1, 42),
            (7, 30),
        ] {
            let (p, q) = (BigInt::from(p), BigInt::from(q));
            let target = Rat::new(p.clone(), q.clone());
            let (from, to) = component_bounds(&p, &q, &BigInt::one(), 2);
            let mut brute = Vec::new();
            let mut x = from;
            while x <= to {
                let rest = &target - Rat::new(BigInt::one(), x.clone());
                if rest.is_positive() && rest.numer().is_one() && rest.denom() >= &x {
                    brute.push((x.clone(), rest.denom().clone()));
                }
                x += 1;
            }
            assert_eq!(unit_fraction_pairs(&p, &q), brute, "{target}");
        }
    }

    #[test]
    fn growth_rows() {
        let rows = growth_report(3).unwrap();
        assert_eq!(rows[0].csv_line(), "1,1,,");
        assert_eq!(rows[2].csv_line(), "3,3,0.0940,2.7307");
    }
}
