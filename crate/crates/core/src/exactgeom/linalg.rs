//! Dense exact linear algebra over `Rat`: row reduction, null spaces,
//! determinants and affine hulls. Sizes here are tiny (a dozen rows at most).

use num_traits::{One, Zero};

use super::rat::{sub, Rat, RatVec};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<RatVec>, ncols: usize) -> (Vec<RatVec>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[RatVec], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Basis of `{ x : row · x = 0 for every row }`.
pub fn null_space(rows: &[RatVec], ncols: usize) -> Vec<RatVec> {
    let (red, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Unique solution of the square system `m x = b`, or `None` if singular.
pub fn solve(m: &[RatVec], b: &[Rat]) -> Option<RatVec> {
    let n = m.len();
    let aug: Vec<RatVec> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug, n + 1);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(red.iter().map(|row| row[n].clone()).collect())
}

pub fn determinant(m: &[RatVec]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x - &f * y;
            }
        }
    }
    det
}

/// Affine hull of a point set, with a canonical coordinate chart.
///
/// `basis` is the RREF of the direction space, so projecting onto the
/// `pivots` coordinates is a bijection from the hull onto `Q^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineHull {
    pub origin: RatVec,
    pub basis: Vec<RatVec>,
    pub pivots: Vec<usize>,
}

impl AffineHull {
    pub fn of(points: &[RatVec]) -> Option<AffineHull> {
        let origin = points.first()?.clone();
        let d = origin.len();
        let dirs: Vec<RatVec> = points[1..].iter().map(|p| sub(p, &origin)).collect();
        let (basis, pivots) = rref(dirs, d);
        Some(AffineHull {
            origin,
            basis,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.origin.len()
    }

    pub fn project(&self, x: &[Rat]) -> RatVec {
        self.pivots.iter().map(|&p| x[p].clone()).collect()
    }

    /// Normals `n` with `n · (x - origin) = 0` on the hull (one per missing dimension).
    pub fn equation_normals(&self) -> Vec<RatVec> {
        null_space(&self.basis, self.ambient())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        let diff = sub(x, &self.origin);
        self.equation_normals()
            .iter()
            .all(|n| super::rat::dot(n, &diff).is_zero())
    }
}

/// Number of affinely independent points among `points`, i.e. affine dimension + 1.
pub fn affine_dim(points: &[RatVec]) -> Option<usize> {
    AffineHull::of(points).map(|h| h.dim())
}


/// Fraction-free (Bareiss) determinant.
fn bareiss_det<T: num_integer::Integer + num_traits::Signed + Clone>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return T::zero();
            };
            a.swap(k, p);
            sign = T::zero() - sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Integral normal of the hyperplane spanned by the `k - 1` independent
/// integer rows of a `(k-1) × k` matrix: the vector of signed maximal minors.
/// Returns the zero vector when the rows are dependent.
pub fn integer_normal(rows: &[Vec<num_bigint::BigInt>]) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, ToPrimitive};
    let k = rows.len() + 1;
    // Bareiss intermediates are minors; keep their squares inside i128.
    let bound: BigInt = rows
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<BigInt>().max(BigInt::one()))
        .product();
    let small = bound < (BigInt::one() << 62);
    (0..k)
        .map(|skip| {
            let minor_rows = rows.iter().map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, x)| x.clone())
            });
            let det = if small {
                let m: Vec<Vec<i128>> = minor_rows
                    .map(|r| r.map(|x| x.to_i128().expect("bounded")).collect())
                    .collect();
                BigInt::from(if m.is_empty() { 1 } else { bareiss_det(m) })
            } else {
                let m: Vec<Vec<BigInt>> = minor_rows.map(|r| r.collect()).collect();
                if m.is_empty() {
                    BigInt::one()
                } else {
                    bareiss_det(m)
                }
            };
            if skip % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

#[cfg(test)]
mod integer_tests {
    use super::*;
    use crate::exactgeom::rat::int_vec;
    use num_bigint::BigInt;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bareiss_matches_rational_determinant() {
        let m = vec![vec![2i128, -1, 3], vec![4, 0, 1], vec![-2, 5, 7]];
        let r: Vec<RatVec> = m
            .iter()
            .map(|row| int_vec(&row.iter().map(|&x| x as i64).collect::<Vec<_>>()))
            .collect();
        assert_eq!(
            Rat::from_integer(BigInt::from(bareiss_det(m))),
            determinant(&r)
        );
    }

    #[test]
    fn normal_is_orthogonal() {
        let rows = vec![big(&[1, 2, 0, -1]), big(&[0, 3, 1, 1]), big(&[2, 0, 5, 0])];
        let n = integer_normal(&rows);
        for r in &rows {
            let s: BigInt = r.iter().zip(&n).map(|(a, b)| a * b).sum();
            assert_eq!(s, BigInt::from(0));
        }
        assert!(n.iter().any(|x| x != &BigInt::from(0)));
        assert_eq!(integer_normal(&[]), big(&[1]));
        let huge: BigInt = BigInt::from(1) << 80;
        let n = integer_normal(&[vec![huge.clone(), BigInt::from(1)]]);
        assert_eq!(n, vec![BigInt::from(1), -huge]);
    }
}
