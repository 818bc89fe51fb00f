//! Weighted log canonical thresholds `c_t` of toric weights.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::vertex_enum::{enumerate, unit_row, Constraint};
use super::WeightParameter;
use crate::error::Result;
use crate::geometry::linalg::primitive_integer_row;
use crate::geometry::NewtonPolyhedron;
use crate::rational::{Extended, RatVector, Rational};

struct Candidate {
    min_coord: Rational,
    nu: Rational,
}

/// Evaluates `min_{x∈S} (1 + t·min_i x_i) / ν(x)` exactly, with `ν` the
/// pointwise maximum of the refined Lelong numbers of a family of polyhedra.
///
/// The candidate points depend only on the family, so one solver serves
/// every `t`.
pub struct LctSolver {
    dim: usize,
    candidates: Vec<Candidate>,
}

impl LctSolver {
    pub fn new(p: &NewtonPolyhedron) -> Self {
        Self::for_family(&[p])
    }

    /// `ν(x) = max_j min_{v ∈ P_j} ⟨v, x⟩`.
    pub fn for_family(family: &[&NewtonPolyhedron]) -> Self {
        let n = family.first().map(|p| p.dim()).unwrap_or(0);
        let mut pool: Vec<Constraint> = Vec::new();
        for i in 0..n {
            pool.push(Constraint::homogeneous(unit_row(n, i)));
            for j in (i + 1)..n {
                let mut r = unit_row(n, i);
                r[j] = BigInt::from(-1);
                pool.push(Constraint::homogeneous(r));
            }
        }
        let mut push_difference = |v: &RatVector, w: &RatVector| {
            let d: RatVector = v.iter().zip(w).map(|(a, b)| a - b).collect();
            if d.iter().any(|x| !x.is_zero()) {
                let row = Constraint::homogeneous(primitive_integer_row(&d));
                if !pool.contains(&row) {
                    pool.push(row);
                }
            }
        };
        for p in family {
            for (u, w) in p.edges() {
                push_difference(&p.vertices()[u], &p.vertices()[w]);
            }
        }
        for (j, p) in family.iter().enumerate() {
            for q in &family[j + 1..] {
                for v in p.vertices() {
                    for w in q.vertices() {
                        push_difference(v, w);
                    }
                }
            }
        }
        let simplex = vec![Constraint::new(vec![BigInt::one(); n], BigInt::one())];
        let orthant: Vec<Constraint> = (0..n).map(|i| Constraint::homogeneous(unit_row(n, i))).collect();
        let points = enumerate(n, &pool, &simplex, &orthant);
        let candidates = points
            .into_iter()
            .map(|x| {
                let nu = family.iter().map(|p| p.min_linear_form(&x).expect("dimensions match")).max().expect("non-empty family");
                let min_coord = x.iter().min().cloned().expect("n ≥ 1");
                Candidate { min_coord, nu }
            })
            .collect();
        LctSolver { dim: n, candidates }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn candidate_count(&self) -> usize {
        self.candidates.len()
    }

    /// Value of the simplex minimization at `t > −n`; `+∞` when `ν ≡ 0`.
    pub fn evaluate(&self, t: &Rational) -> Result<Extended> {
        WeightParameter::new(t.clone(), self.dim)?;
        let mut best: Option<Rational> = None;
        for c in &self.candidates {
            if !c.nu.is_positive() {
                continue;
            }
            let v = (Rational::one() + t * &c.min_coord) / &c.nu;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        Ok(best.map_or(Extended::Infinite, Extended::Finite))
    }
}

/// `min_i h(1, ..., 1 + t, ..., 1)` for `t ≥ 0`.
pub fn lct_nonnegative(p: &NewtonPolyhedron, t: &Rational) -> Result<Extended> {
    let n = p.dim();
    let mut best = Extended::Infinite;
    for i in 0..n {
        let mut x = vec![Rational::one(); n];
        x[i] += t;
        best = best.min(p.gauge(&x)?.recip()?);
    }
    Ok(best)
}

/// Threshold of a polyhedron at any admissible `t`: the simplex minimization
/// for `t < 0`, the gauge formula for `t ≥ 0`.
pub fn polyhedron_lct(p: &NewtonPolyhedron, t: &Rational) -> Result<Extended> {
    WeightParameter::new(t.clone(), p.dim())?;
    if t.is_negative() {
        LctSolver::new(p).evaluate(t)
    } else {
        lct_nonnegative(p, t)
    }
}

/// The dual maximization `max_{x∈S} h(x)·min(t + n, 1/max_i x_i)`, computed
/// as `1 / min_{y∈P} max(Σy/(t+n), max_i y_i)` over vertices of the
/// arrangement cut by the facets of `P` and the pieces of the objective.
pub fn weighted_lct_dual(p: &NewtonPolyhedron, t: &Rational) -> Result<Extended> {
    WeightParameter::new(t.clone(), p.dim())?;
    let n = p.dim();
    if p.vertices().iter().any(|v| v.iter().all(Zero::is_zero)) {
        return Ok(Extended::Infinite);
    }
    let shift = t + Rational::from_integer(BigInt::from(n));
    let (num, den) = (shift.numer().clone(), shift.denom().clone());

    let mut region: Vec<Constraint> = p.facets().iter().map(|f| Constraint::new(f.normal.clone(), f.offset.clone())).collect();
    let mut pool = region.clone();
    for i in 0..n {
        let c = Constraint::homogeneous(unit_row(n, i));
        if !pool.contains(&c) {
            pool.push(c.clone());
        }
        region.push(c);
        for j in (i + 1)..n {
            let mut r = unit_row(n, i);
            r[j] = BigInt::from(-1);
            pool.push(Constraint::homogeneous(r));
        }
        // (t + n)·y_i = Σ y, scaled by the denominator of t + n.
        let r: Vec<BigInt> = (0..n).map(|j| if j == i { &num - &den } else { -den.clone() }).collect();
        pool.push(Constraint::homogeneous(r));
    }
    let mut best: Option<Rational> = None;
    for y in enumerate(n, &pool, &[], &region) {
        let total: Rational = y.iter().sum();
        let top = y.iter().max().cloned().expect("n ≥ 1");
        let v = std::cmp::max(total / &shift, top);
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    match best {
        Some(b) if b.is_positive() => Ok(Extended::Finite(b.recip())),
        _ => Ok(Extended::Infinite),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_polyhedron;
    use crate::rational::{int, ratio};

    fn poly(points: &[&[u32]]) -> NewtonPolyhedron {
        let n = points[0].len();
        build_polyhedron(&points.iter().map(|p| p.to_vec()).collect::<Vec<_>>(), n).unwrap()
    }

    fn fin(r: Rational) -> Extended {
        Extended::Finite(r)
    }

    #[test]
    fn maximal_ideal_thresholds() {
        let m = poly(&[&[1, 0], &[0, 1]]);
        assert_eq!(polyhedron_lct(&m, &int(0)).unwrap(), fin(int(2)));
        assert_eq!(polyhedron_lct(&m, &int(-1)).unwrap(), fin(int(1)));
        assert_eq!(polyhedron_lct(&m, &ratio(-1, 2)).unwrap(), fin(ratio(3, 2)));
        assert_eq!(weighted_lct_dual(&m, &ratio(-1, 2)).unwrap(), fin(ratio(3, 2)));
    }

    #[test]
    fn diagonal_thresholds() {
        let p = poly(&[&[2, 0], &[0, 3]]);
        assert_eq!(polyhedron_lct(&p, &int(0)).unwrap(), fin(ratio(5, 6)));
        assert_eq!(polyhedron_lct(&p, &int(-1)).unwrap(), fin(ratio(1, 2)));
        assert_eq!(weighted_lct_dual(&p, &int(-1)).unwrap(), fin(ratio(1, 2)));
        assert_eq!(polyhedron_lct(&p, &int(1)).unwrap(), fin(ratio(7, 6)));
        assert_eq!(LctSolver::new(&p).evaluate(&int(1)).unwrap(), fin(ratio(7, 6)));
    }

    #[test]
    fn monomial_thresholds() {
        let p = poly(&[&[2, 1]]);
        assert_eq!(polyhedron_lct(&p, &int(-1)).unwrap(), fin(ratio(1, 3)));
        assert_eq!(polyhedron_lct(&p, &int(0)).unwrap(), fin(ratio(1, 2)));
        assert_eq!(weighted_lct_dual(&p, &int(-1)).unwrap(), fin(ratio(1, 3)));
    }

    #[test]
    fn unit_and_domain() {
        let unit = poly(&[&[0, 0]]);
        assert_eq!(polyhedron_lct(&unit, &int(-1)).unwrap(), Extended::Infinite);
        assert_eq!(polyhedron_lct(&unit, &int(0)).unwrap(), Extended::Infinite);
        assert_eq!(weighted_lct_dual(&unit, &int(-1)).unwrap(), Extended::Infinite);
        let m = poly(&[&[1, 0], &[0, 1]]);
        assert!(polyhedron_lct(&m, &int(-2)).is_err());
    }

    #[test]
    fn intersection_breaks_the_min_rule_below_zero() {
        let p = poly(&[&[2, 0], &[0, 3]]);
        let q = poly(&[&[3, 0], &[0, 2]]);
        let both = p.intersect(&q).unwrap();
        assert_eq!(polyhedron_lct(&both, &int(-1)).unwrap(), fin(ratio(5, 12)));
        assert_eq!(LctSolver::for_family(&[&p, &q]).evaluate(&int(-1)).unwrap(), fin(ratio(1, 2)));
        assert_eq!(polyhedron_lct(&both, &int(0)).unwrap(), fin(ratio(5, 6)));
    }
}
