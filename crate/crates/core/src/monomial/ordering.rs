use std::cmp::Ordering;

use num_bigint::BigInt;

use super::{for_each_in_box, minimize, ExponentVector};
use crate::error::{ensure_dim, Error, Result};
use crate::geometry::linalg::rank;
use crate::rational::Rational;

/// A monomial ordering in matrix form: `z^α < z^β` iff `αM <_lex βM`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingMatrix {
    rows: Vec<Vec<u64>>,
}

/// Limits for [`OrderingMatrix::separating_weight`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightSearch {
    /// Largest base `W` tried for cascaded weights.
    pub max_base: u64,
    /// Coordinate bound of the exhaustive fallback.
    pub box_bound: u32,
}

impl Default for WeightSearch {
    fn default() -> Self {
        WeightSearch { max_base: 1 << 20, box_bound: 12 }
    }
}

impl OrderingMatrix {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty("ordering matrix has no rows".into()));
        }
        for r in &rows {
            ensure_dim(n, r.len())?;
        }
        let rat: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect()).collect();
        if rank(&rat) != n {
            return Err(Error::InvalidArgument("ordering matrix must have full rank".into()));
        }
        Ok(OrderingMatrix { rows })
    }

    /// Plain lexicographic order with `z_1` dominant.
    pub fn lex(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        OrderingMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// The row vector `αM`.
    pub fn image(&self, alpha: &ExponentVector) -> Vec<u128> {
        let n = self.dim();
        (0..n).map(|c| (0..n).map(|r| u128::from(alpha.0[r]) * u128::from(self.rows[r][c])).sum()).collect()
    }

    pub fn compare(&self, alpha: &ExponentVector, beta: &ExponentVector) -> Result<Ordering> {
        ensure_dim(self.dim(), alpha.len())?;
        ensure_dim(self.dim(), beta.len())?;
        Ok(self.image(alpha).cmp(&self.image(beta)))
    }

    /// Minimal generators of `{ β : z^β > z^α }`.
    pub fn upper_set_generators(&self, alpha: &ExponentVector) -> Result<Vec<ExponentVector>> {
        ensure_dim(self.dim(), alpha.len())?;
        let n = self.dim();
        let image = self.image(alpha);
        // A generator never exceeds these bounds: lowering a larger coordinate
        // keeps every column it touches above αM.
        let bounds: Vec<u32> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| self.rows[i][c] > 0)
                    .map(|c| image[c] / u128::from(self.rows[i][c]) + 1)
                    .max()
                    .expect("full rank rows are nonzero")
            })
            .map(|b| u32::try_from(b).unwrap_or(u32::MAX))
            .collect();
        let mut above = Vec::new();
        for_each_in_box(&bounds, |beta| {
            if self.image(beta) > image {
                above.push(beta.clone());
            }
        });
        Ok(minimize(above))
    }

    /// A weight `a ∈ N^n` with `⟨a, γ⟩ > ⟨a, α⟩` for every input `α` and
    /// every generator `γ` of the set of monomials above `α`.
    pub fn separating_weight(&self, monomials: &[ExponentVector], search: WeightSearch) -> Result<ExponentVector> {
        if monomials.is_empty() {
            return Err(Error::Empty("no monomials to separate".into()));
        }
        let n = self.dim();
        let mut constraints = Vec::new();
        for alpha in monomials {
            for gamma in self.upper_set_generators(alpha)? {
                constraints.push((alpha.clone(), gamma));
            }
        }
        let violated = |a: &[u64]| {
            constraints.iter().find(|(alpha, gamma)| weigh(a, gamma) <= weigh(a, alpha)).map(|(alpha, gamma)| (alpha.clone(), gamma.clone()))
        };

        let mut base: u64 = 3;
        while base <= search.max_base {
            let cascade: Vec<u128> = (0..n).map(|c| u128::from(base).pow((n - 1 - c) as u32)).collect();
            let a: Option<Vec<u64>> = (0..n)
                .map(|r| {
                    let v: u128 = (0..n).map(|c| u128::from(self.rows[r][c]) * cascade[c]).sum();
                    u64::try_from(v).ok()
                })
                .collect();
            match a {
                Some(a) if violated(&a).is_none() => return Ok(to_exponents(&a)),
                Some(_) => {}
                None => break,
            }
            base *= 2;
        }

        let mut found = None;
        let mut last = None;
        for_each_in_box(&vec![search.box_bound; n], |a| {
            if found.is_some() {
                return;
            }
            let a64: Vec<u64> = a.0.iter().map(|&v| u64::from(v)).collect();
            match violated(&a64) {
                None => found = Some(a.clone()),
                Some(v) => last = Some(v),
            }
        });
        found.ok_or_else(|| {
            let detail = last.map(|(alpha, gamma)| format!("<a,{gamma}> > <a,{alpha}> unsatisfied")).unwrap_or_default();
            Error::SearchExhausted(format!("no separating weight within bounds: {detail}"))
        })
    }
}

fn weigh(a: &[u64], e: &ExponentVector) -> u128 {
    a.iter().zip(&e.0).map(|(&x, &y)| u128::from(x) * u128::from(y)).sum()
}

fn to_exponents(a: &[u64]) -> ExponentVector {
    ExponentVector(a.iter().map(|&v| u32::try_from(v).unwrap_or(u32::MAX)).collect())
}
