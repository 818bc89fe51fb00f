//! Vertex enumeration for hyperplane arrangements restricted to a region.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::geometry::linalg::{dot_int_rat, solve, solve_small};
use crate::rational::{RatVector, Rational};

/// The constraint `⟨a, x⟩ = b` (in pools) or `⟨a, x⟩ ≥ b` (in regions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Constraint {
    pub a: Vec<BigInt>,
    pub b: BigInt,
}

impl Constraint {
    pub fn new(a: Vec<BigInt>, b: BigInt) -> Self {
        Constraint { a, b }
    }

    pub fn homogeneous(a: Vec<BigInt>) -> Self {
        Constraint { a, b: BigInt::from(0) }
    }

    fn holds(&self, x: &[Rational]) -> bool {
        dot_int_rat(&self.a, x) >= Rational::from_integer(self.b.clone())
    }
}

/// Entries this small keep every Bareiss minor of a system of dimension at
/// most 8 well inside `i128`; larger inputs take the big-integer path.
const SMALL_LIMIT: i64 = 1 << 24;

struct Small {
    a: Vec<i128>,
    b: i128,
}

fn to_small(c: &Constraint) -> Option<Small> {
    let fit = |v: &BigInt| v.to_i64().filter(|x| x.abs() < SMALL_LIMIT).map(i128::from);
    Some(Small { a: c.a.iter().map(fit).collect::<Option<_>>()?, b: fit(&c.b)? })
}

/// All points solving every `fixed` equation plus `n − |fixed|` linearly
/// independent equations from `pool`, that satisfy every `region` inequality.
pub(crate) fn enumerate(n: usize, pool: &[Constraint], fixed: &[Constraint], region: &[Constraint]) -> BTreeSet<RatVector> {
    let mut out = BTreeSet::new();
    if fixed.len() > n {
        return out;
    }
    let k = n - fixed.len();
    if pool.len() < k {
        return out;
    }
    let small_pool: Option<Vec<Small>> = pool.iter().map(to_small).collect();
    let small_fixed: Option<Vec<Small>> = fixed.iter().map(to_small).collect();
    let small_region: Option<Vec<Small>> = region.iter().map(to_small).collect();

    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let point = match (&small_pool, &small_fixed) {
            (Some(sp), Some(sf)) => {
                let rows: Vec<&[i128]> = sf.iter().map(|c| c.a.as_slice()).chain(idx.iter().map(|&i| sp[i].a.as_slice())).collect();
                let rhs: Vec<i128> = sf.iter().map(|c| c.b).chain(idx.iter().map(|&i| sp[i].b)).collect();
                match solve_small(&rows, &rhs) {
                    Some(None) => None,
                    Some(Some((num, den))) => {
                        let inside = match &small_region {
                            Some(sr) => small_feasible(sr, &num, den),
                            None => None,
                        };
                        match inside {
                            Some(false) => None,
                            Some(true) => Some(num.iter().map(|&v| Rational::new(BigInt::from(v), BigInt::from(den))).collect()),
                            None => {
                                let x: RatVector = num.iter().map(|&v| Rational::new(BigInt::from(v), BigInt::from(den))).collect();
                                region.iter().all(|c| c.holds(&x)).then_some(x)
                            }
                        }
                    }
                    None => big_point(fixed, pool, &idx, region),
                }
            }
            _ => big_point(fixed, pool, &idx, region),
        };
        if let Some(p) = point {
            out.insert(p);
        }
        if !next_combination(&mut idx, pool.len()) {
            break;
        }
    }
    out
}

/// `Some(inside)`, or `None` when the check would overflow.
fn small_feasible(region: &[Small], num: &[i128], den: i128) -> Option<bool> {
    for c in region {
        let mut lhs: i128 = 0;
        for (a, x) in c.a.iter().zip(num) {
            lhs = lhs.checked_add(a.checked_mul(*x)?)?;
        }
        if lhs < c.b.checked_mul(den)? {
            return Some(false);
        }
    }
    Some(true)
}

fn big_point(fixed: &[Constraint], pool: &[Constraint], idx: &[usize], region: &[Constraint]) -> Option<RatVector> {
    let chosen: Vec<&Constraint> = fixed.iter().chain(idx.iter().map(|&i| &pool[i])).collect();
    let rows: Vec<Vec<BigInt>> = chosen.iter().map(|c| c.a.clone()).collect();
    let rhs: Vec<BigInt> = chosen.iter().map(|c| c.b.clone()).collect();
    let x = solve(&rows, &rhs)?;
    region.iter().all(|c| c.holds(&x)).then_some(x)
}

fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) fn unit_row(n: usize, i: usize) -> Vec<BigInt> {
    let mut r = vec![BigInt::from(0); n];
    r[i] = BigInt::one();
    r
}
