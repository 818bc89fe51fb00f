use num_traits::{One, Zero};

use super::{masses, thresholds};
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::rational::{Extended, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub ideal: MonomialIdeal,
    /// `c_1, ..., c_n`.
    pub c: Vec<Extended>,
    /// `e_1, ..., e_n`.
    pub e: Vec<Extended>,
    /// `x_i = c_i − c_{i−1}`; empty for the unit ideal.
    pub x_chain: Vec<Rational>,
    /// `y_i = e_{i−1}/e_i` with `e_0 = 1`, for every `i` with `e_{i−1}` finite
    /// (`0` when only `e_i` is infinite).
    pub y_chain: Vec<Rational>,
    /// `r_k = c_k − c_{k−1} − 1/(x_1···x_{k−1}·e_k)`; the last term is `0`
    /// when `e_k = +∞`. Empty for the unit ideal.
    pub residuals: Vec<Rational>,
}

impl InvariantReport {
    /// `F_n = c_1 (c_2 − c_1) ··· (c_n − c_{n−1})`.
    pub fn f_n(&self) -> Option<Rational> {
        if self.x_chain.is_empty() {
            return None;
        }
        Some(self.x_chain.iter().fold(Rational::one(), |acc, x| acc * x))
    }
}

pub fn invariant_report(ideal: &MonomialIdeal) -> Result<InvariantReport> {
    let c = thresholds(ideal)?;
    let e = masses(ideal)?;
    if ideal.is_unit() {
        return Ok(InvariantReport { ideal: ideal.clone(), c, e, x_chain: vec![], y_chain: vec![], residuals: vec![] });
    }
    let cs: Vec<Rational> = c
        .iter()
        .map(|v| v.as_finite().cloned().ok_or_else(|| Error::Consistency(format!("infinite threshold for {ideal}"))))
        .collect::<Result<_>>()?;

    let mut x_chain = Vec::with_capacity(cs.len());
    let mut prev = Rational::zero();
    for ck in &cs {
        x_chain.push(ck - &prev);
        prev = ck.clone();
    }

    let mut y_chain = Vec::new();
    let mut prev_e = Extended::Finite(Rational::one());
    for ek in &e {
        let Some(num) = prev_e.as_finite() else { break };
        match ek {
            Extended::Finite(d) if d.is_zero() => {
                return Err(Error::Consistency(format!("vanishing mass for {ideal}")));
            }
            Extended::Finite(d) => y_chain.push(num / d),
            Extended::Infinite => y_chain.push(Rational::zero()),
        }
        prev_e = ek.clone();
    }

    let mut residuals = Vec::with_capacity(cs.len());
    let mut prod = Rational::one();
    for k in 0..cs.len() {
        let prev_c = if k == 0 { Rational::zero() } else { cs[k - 1].clone() };
        let term = match &e[k] {
            Extended::Infinite => Rational::zero(),
            Extended::Finite(ek) => {
                let denom = &prod * ek;
                if denom.is_zero() {
                    return Err(Error::Indeterminate(format!("residual r_{} of {ideal} divides by zero", k + 1)));
                }
                denom.recip()
            }
        };
        residuals.push(&cs[k] - prev_c - term);
        prod *= &x_chain[k];
    }
    Ok(InvariantReport { ideal: ideal.clone(), c, e, x_chain, y_chain, residuals })
}
