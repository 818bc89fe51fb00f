//! Monomial ideals of the ring of germs at the origin.
//!
//! An ideal is stored by its minimal generators: an antichain of exponent
//! vectors under componentwise order, sorted lexicographically.

mod derivative;
mod ordering;

use std::fmt;

use num_bigint::BigInt;

use crate::error::{ensure_dim, Error, Result};
use crate::geometry::NewtonPolyhedron;
use crate::rational::{RatVector, Rational};

pub use derivative::{dbar_ideal, derivative_ideal};
pub use ordering::{OrderingMatrix, WeightSearch};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize, power: u32) -> Self {
        let mut e = vec![0; n];
        e[i] = power;
        ExponentVector(e)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&v| u64::from(v)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// `self | other`: componentwise `≤`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_rational(&self) -> RatVector {
        self.0.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect()
    }

    /// `⟨self, x⟩`.
    pub fn pair(&self, x: &[Rational]) -> Rational {
        self.0.iter().zip(x).map(|(&a, b)| b * Rational::from_integer(BigInt::from(a))).sum()
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("z{}", i + 1) } else { format!("z{}^{}", i + 1, e) })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Minimal generators of the ideal generated by `points`.
    pub fn new(n: usize, points: Vec<ExponentVector>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("ring dimension must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::Empty("an ideal needs at least one generator".into()));
        }
        for p in &points {
            ensure_dim(n, p.len())?;
        }
        Ok(MonomialIdeal { n, generators: minimize(points) })
    }

    pub fn from_exponents(n: usize, points: &[Vec<u32>]) -> Result<Self> {
        Self::new(n, points.iter().cloned().map(ExponentVector).collect())
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, generators: vec![ExponentVector::zero(n)] }
    }

    /// The maximal ideal `(z_1, ..., z_n)`.
    pub fn maximal(n: usize) -> Self {
        Self::maximal_power(n, 1)
    }

    /// `m^d`: all monomials of degree `d`.
    pub fn maximal_power(n: usize, d: u32) -> Self {
        let mut gens = Vec::new();
        let mut current = vec![0u32; n];
        compositions(n, d, 0, &mut current, &mut gens);
        MonomialIdeal { n, generators: minimize(gens) }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(ExponentVector::is_zero)
    }

    pub fn contains(&self, beta: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(beta))
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        ensure_dim(self.n, other.n)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.add(b));
            }
        }
        MonomialIdeal::new(self.n, gens)
    }

    pub fn power(&self, p: u32) -> Result<MonomialIdeal> {
        if p == 0 {
            return Err(Error::InvalidArgument("power must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..p {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        ensure_dim(self.n, other.n)?;
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        MonomialIdeal::new(self.n, gens)
    }

    /// `I + m^N`.
    pub fn truncate(&self, big_n: u32) -> Result<MonomialIdeal> {
        if big_n == 0 {
            return Err(Error::InvalidArgument("truncation order must be at least 1".into()));
        }
        self.sum(&MonomialIdeal::maximal_power(self.n, big_n))
    }

    /// Exponent of the pure power of `z_i` among the generators, if any.
    pub fn pure_power(&self, i: usize) -> Option<u32> {
        self.generators
            .iter()
            .find(|g| g.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|g| g.0[i])
    }

    pub fn is_m_primary(&self) -> bool {
        (0..self.n).all(|i| self.pure_power(i).is_some())
    }

    /// `dim_C O/I`, counting standard monomials; `None` when infinite.
    pub fn colength(&self) -> Option<u64> {
        let bounds: Vec<u32> = (0..self.n).map(|i| self.pure_power(i)).collect::<Option<_>>()?;
        let mut count = 0u64;
        for_each_in_box(&bounds.iter().map(|b| b.saturating_sub(1)).collect::<Vec<_>>(), |beta| {
            if bounds.contains(&0) || self.contains(beta) {
                return;
            }
            count += 1;
        });
        Some(count)
    }

    /// Dimension of the zero set of `I` at the origin: the largest coordinate
    /// set `C` such that every generator involves a variable outside `C`.
    pub fn krull_dim_quotient(&self) -> usize {
        let n = self.n;
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let ok = self.generators.iter().all(|g| g.0.iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0));
            if ok {
                best = size;
            }
        }
        best
    }

    /// Componentwise maximum of the generators.
    pub fn bounding_box(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.generators.iter().map(|g| g.0[i]).max().unwrap_or(0)).collect()
    }

    pub fn newton_polyhedron(&self) -> NewtonPolyhedron {
        let pts: Vec<RatVector> = self.generators.iter().map(ExponentVector::to_rational).collect();
        NewtonPolyhedron::from_points(self.n, &pts).expect("minimal generators form a valid point set")
    }

    /// Lattice points of the Newton polyhedron, minimized.
    pub fn integral_closure(&self) -> MonomialIdeal {
        let poly = self.newton_polyhedron();
        let mut members = Vec::new();
        for_each_in_box(&self.bounding_box(), |beta| {
            if poly.contains(&beta.to_rational()).expect("matching dimension") {
                members.push(beta.clone());
            }
        });
        MonomialIdeal { n: self.n, generators: minimize(members) }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn minimal_generators(points: &[Vec<u32>], n: usize) -> Result<MonomialIdeal> {
    MonomialIdeal::from_exponents(n, points)
}

pub fn product_ideal(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    i.product(j)
}

pub fn power_ideal(i: &MonomialIdeal, p: u32) -> Result<MonomialIdeal> {
    i.power(p)
}

pub fn sum_ideal(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MonomialIdeal> {
    i.sum(j)
}

/// Drops every point divisible by another and sorts.
fn minimize(mut points: Vec<ExponentVector>) -> Vec<ExponentVector> {
    points.sort();
    points.dedup();
    let keep: Vec<bool> = points
        .iter()
        .enumerate()
        .map(|(i, p)| !points.iter().enumerate().any(|(j, q)| j != i && q.divides(p)))
        .collect();
    points.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect()
}

fn compositions(n: usize, remaining: u32, i: usize, current: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
    if i == n - 1 {
        current[i] = remaining;
        out.push(ExponentVector(current.clone()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[i] = v;
        compositions(n, remaining - v, i + 1, current, out);
    }
}

/// Visits every exponent vector `β` with `0 ≤ β_i ≤ bounds_i`.
pub(crate) fn for_each_in_box(bounds: &[u32], mut f: impl FnMut(&ExponentVector)) {
    let n = bounds.len();
    let mut beta = ExponentVector(vec![0; n]);
    loop {
        f(&beta);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if beta.0[i] < bounds[i] {
                beta.0[i] += 1;
                break;
            }
            beta.0[i] = 0;
            i += 1;
        }
    }
}
