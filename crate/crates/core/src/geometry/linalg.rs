//! Small exact linear algebra kernels: fraction-free solves and ranks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

trait FractionFree: Clone {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    /// `(a·b − c·d) / prev`, exact by the Bareiss invariant; `None` on overflow.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self>;
}

impl FractionFree for i128 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self> {
        let lhs = a.checked_mul(*b)?;
        let rhs = c.checked_mul(*d)?;
        Some(lhs.checked_sub(rhs)? / prev)
    }
}

impl FractionFree for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, prev: &Self) -> Option<Self> {
        Some((a * b - c * d) / prev)
    }
}

/// Fraction-free Gauss-Jordan on an `n × (n+1)` augmented matrix.
/// Returns `Some(None)` when singular, `None` on overflow.
fn gauss_jordan<T: FractionFree>(m: &mut [Vec<T>], n: usize, one: T) -> Option<Option<Vec<(T, T)>>> {
    let mut prev = one;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_nil()) else {
            return Some(None);
        };
        m.swap(k, p);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..=n {
                if j == k {
                    continue;
                }
                let v = T::cross(&m[k][k], &m[i][j], &m[i][k], &m[k][j], &prev)?;
                m[i][j] = v;
            }
            m[i][k] = T::nil();
        }
        prev = m[k][k].clone();
    }
    Some(Some(m.iter().enumerate().map(|(i, row)| (row[n].clone(), row[i].clone())).collect()))
}

/// Solves the square system `rows · x = rhs` exactly; `None` when singular.
pub fn solve(rows: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<Rational>> {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n) && rhs.len() == n);
    if n == 0 {
        return Some(Vec::new());
    }
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().chain(std::iter::once(b)).map(|v| v.to_i64().map(i128::from)).collect())
        .collect();
    if let Some(mut m) = small {
        if let Some(result) = gauss_jordan(&mut m, n, 1i128) {
            return result.map(|pairs| {
                pairs.into_iter().map(|(num, den)| Rational::new(BigInt::from(num), BigInt::from(den))).collect()
            });
        }
    }
    let mut m: Vec<Vec<BigInt>> =
        rows.iter().zip(rhs).map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect()).collect();
    gauss_jordan(&mut m, n, BigInt::one())
        .expect("big integer elimination cannot overflow")
        .map(|pairs| pairs.into_iter().map(|(num, den)| Rational::new(num, den)).collect())
}

/// Machine-integer solve of `rows · x = rhs`, returning `x = num / den`
/// with `den > 0`. `None` on overflow, `Some(None)` when singular.
pub fn solve_small(rows: &[&[i128]], rhs: &[i128]) -> Option<Option<(Vec<i128>, i128)>> {
    let n = rows.len();
    if n == 0 {
        return Some(Some((Vec::new(), 1)));
    }
    let mut m: Vec<Vec<i128>> = rows.iter().zip(rhs).map(|(r, b)| r.iter().copied().chain(std::iter::once(*b)).collect()).collect();
    let pairs = match gauss_jordan(&mut m, n, 1i128)? {
        Some(p) => p,
        None => return Some(None),
    };
    // Bareiss Gauss-Jordan leaves the determinant on every diagonal entry.
    let den = pairs[0].1;
    debug_assert!(pairs.iter().all(|(_, d)| *d == den));
    let sign = den.signum();
    Some(Some((pairs.into_iter().map(|(num, _)| num * sign).collect(), den * sign)))
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let Some(cols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..cols {
                let v = &m[r][j] * &f;
                m[i][j] -= v;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Affine dimension of a point set (`-1` encoded as `None` for the empty set).
pub fn affine_dimension(points: &[&[Rational]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rational>> = rest.iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    Some(rank(&diffs))
}

/// Determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..n {
                let v = &m[c][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    det
}

/// Clears denominators and divides by the content, keeping the sign.
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    normalize_integer_row(ints)
}

/// Divides an integer row by the gcd of its entries.
pub fn normalize_integer_row(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in &mut row {
            *v /= &g;
        }
    }
    row
}

pub fn dot_int_rat(a: &[BigInt], x: &[Rational]) -> Rational {
    a.iter().zip(x).fold(Rational::zero(), |acc, (ai, xi)| acc + xi * ai)
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sign_of(v: &BigInt) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
