//! Singularity invariants of monomial ideals: refined Lelong numbers,
//! weighted thresholds, directional thresholds `c_k`, Monge-Ampère masses
//! `e_k` and mixed multiplicities.

mod mass;
mod report;
mod threshold;
pub(crate) mod vertex_enum;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{ensure_dim, Error, Result};
use crate::monomial::MonomialIdeal;
use crate::rational::{Extended, Rational};

pub use mass::{
    facet_masses, masses, mixed_multiplicity, mixed_multiplicity_reference, mixed_volume_multiset, mixed_volume_subsets,
    multiplicity_oracle, polarized_mass, polarized_masses, TRUNCATION_SPAN,
};
pub use report::{invariant_report, InvariantReport};
pub use threshold::{lct_nonnegative, polyhedron_lct, weighted_lct_dual, LctSolver};

/// A weight exponent `t` of the measure `||z||^{2t} dV`, with `t > −n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightParameter {
    t: Rational,
}

impl WeightParameter {
    pub fn new(t: Rational, n: usize) -> Result<Self> {
        if t <= -Rational::from_integer(BigInt::from(n)) {
            return Err(Error::InvalidArgument(format!("weight t = {t} must exceed -{n}")));
        }
        Ok(WeightParameter { t })
    }

    pub fn value(&self) -> &Rational {
        &self.t
    }
}

fn check_direction(n: usize, x: &[Rational]) -> Result<()> {
    ensure_dim(n, x.len())?;
    if x.iter().any(Signed::is_negative) {
        return Err(Error::InvalidArgument("direction must be non-negative".into()));
    }
    Ok(())
}

/// `ν(x) = min ⟨α, x⟩` over the generators.
pub fn lelong_nu(ideal: &MonomialIdeal, x: &[Rational]) -> Result<Rational> {
    check_direction(ideal.dim(), x)?;
    Ok(ideal.generators().iter().map(|g| g.pair(x)).min().expect("ideals have generators"))
}

/// `h(x) = 1 / gauge(x)`.
pub fn support_h(ideal: &MonomialIdeal, x: &[Rational]) -> Result<Extended> {
    check_direction(ideal.dim(), x)?;
    if x.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("direction must be non-zero".into()));
    }
    ideal.newton_polyhedron().gauge(x)?.recip()
}

/// `c_t` of the ideal for the measure `||z||^{2t} dV`.
pub fn weighted_lct(ideal: &MonomialIdeal, t: &Rational) -> Result<Extended> {
    WeightParameter::new(t.clone(), ideal.dim())?;
    if ideal.is_unit() {
        return Ok(Extended::Infinite);
    }
    polyhedron_lct(&ideal.newton_polyhedron(), t)
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
    }
    Ok(())
}

/// `c_k = c_{k−n}`, the threshold with weight `||z||^{2(k−n)}`.
pub fn c_k(ideal: &MonomialIdeal, k: usize) -> Result<Extended> {
    let n = ideal.dim();
    check_k(n, k)?;
    weighted_lct(ideal, &Rational::from_integer(BigInt::from(k as i64 - n as i64)))
}

pub fn e_k(ideal: &MonomialIdeal, k: usize) -> Result<Extended> {
    check_k(ideal.dim(), k)?;
    Ok(masses(ideal)?.swap_remove(k - 1))
}

/// All of `c_1, ..., c_n`, sharing one solver.
pub fn thresholds(ideal: &MonomialIdeal) -> Result<Vec<Extended>> {
    let n = ideal.dim();
    if ideal.is_unit() {
        return Ok(vec![Extended::Infinite; n]);
    }
    let p = ideal.newton_polyhedron();
    let solver = LctSolver::new(&p);
    let mut c = Vec::with_capacity(n);
    for k in 1..n {
        c.push(solver.evaluate(&Rational::from_integer(BigInt::from(k as i64 - n as i64)))?);
    }
    c.push(lct_nonnegative(&p, &Rational::zero())?);
    Ok(c)
}
