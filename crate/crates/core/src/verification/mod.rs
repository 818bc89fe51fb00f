//! Exact checks of the threshold and mass inequalities over single ideals
//! and seeded corpora. Every witness is an exact rational residual.

mod corpus;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::NewtonPolyhedron;
use crate::invariants::{
    facet_masses, invariant_report, lelong_nu, masses, polarized_mass, polyhedron_lct, support_h, thresholds,
    weighted_lct_dual, LctSolver,
};
use crate::monomial::{dbar_ideal, ExponentVector, MonomialIdeal};
use crate::rational::{factorial, Extended, Rational};

pub use corpus::{corpus, random_ideal, CorpusConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// residual ≥ 0
    AtLeast,
    /// residual = 0
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub residual: Rational,
    pub relation: Relation,
}

impl Witness {
    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::AtLeast => !self.residual.is_negative(),
            Relation::Equal => self.residual.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub ideal: String,
    pub witnesses: Vec<Witness>,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str, ideal: String) -> Self {
        CheckResult { name: name.to_string(), ideal, witnesses: Vec::new(), passed: true }
    }

    fn push(&mut self, label: impl Into<String>, residual: Rational, relation: Relation) {
        let w = Witness { label: label.into(), residual, relation };
        self.passed &= w.holds();
        self.witnesses.push(w);
    }

    fn at_least(&mut self, label: impl Into<String>, residual: Rational) {
        self.push(label, residual, Relation::AtLeast);
    }

    fn equal(&mut self, label: impl Into<String>, residual: Rational) {
        self.push(label, residual, Relation::Equal);
    }

    /// First witness that fails.
    pub fn first_failure(&self) -> Option<&Witness> {
        self.witnesses.iter().find(|w| !w.holds())
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `{−(n − 1/2), −1, −1/2, 0, 1/2, 1}` restricted to `t > −n`.
pub fn default_t_grid(n: usize) -> Vec<Rational> {
    let n_r = int(n as i64);
    let half = Rational::new(1.into(), 2.into());
    let mut grid = vec![-(&n_r - &half), int(-1), -half.clone(), int(0), half, int(1)];
    grid.retain(|t| *t > -n_r.clone());
    grid.sort();
    grid.dedup();
    grid
}

/// `t_j = −n + (j+1)·n/4` for `j = 0..8`.
pub fn concavity_grid(n: usize) -> Vec<Rational> {
    (0..8).map(|j| int(-(n as i64)) + Rational::new(BigInt::from((j + 1) * n), 4.into())).collect()
}

/// Default grid resolution of the simplex oracle.
pub fn default_grid_resolution(n: usize) -> u32 {
    match n {
        1 | 2 => 60,
        3 => 24,
        _ => 12,
    }
}

/// Minimum of `(1 + t·min x_i)/ν(x)` over simplex points with denominator
/// `q`; an upper bound for the exact threshold when `t < 0`.
pub fn grid_oracle(p: &NewtonPolyhedron, t: &Rational, q: u32) -> Result<Extended> {
    let n = p.dim();
    let mut best = Extended::Infinite;
    let mut current = vec![0u32; n];
    let mut points = Vec::new();
    fill_compositions(n, q, 0, &mut current, &mut points);
    let qr = int(i64::from(q));
    for c in points {
        let x: Vec<Rational> = c.iter().map(|&v| int(i64::from(v)) / &qr).collect();
        let nu = p.min_linear_form(&x)?;
        if !nu.is_positive() {
            continue;
        }
        let min = x.iter().min().cloned().expect("n ≥ 1");
        best = best.min(Extended::Finite((Rational::one() + t * min) / nu));
    }
    Ok(best)
}

fn fill_compositions(n: usize, remaining: u32, i: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i + 1 == n {
        current[i] = remaining;
        out.push(current.clone());
        return;
    }
    for v in 0..=remaining {
        current[i] = v;
        fill_compositions(n, remaining - v, i + 1, current, out);
    }
}

fn require_primary(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_unit() {
        return Err(Error::InvalidArgument("the unit ideal is excluded".into()));
    }
    if !ideal.is_m_primary() {
        return Err(Error::NotPrimary(ideal.to_string()));
    }
    Ok(())
}

fn finite(v: &Extended, what: &str) -> Result<Rational> {
    v.as_finite().cloned().ok_or_else(|| Error::Consistency(format!("{what} is infinite")))
}

/// Residuals `r_k ≥ 0` and `F_n·e_n − 1 ≥ 0`.
pub fn check_theorem1(ideal: &MonomialIdeal) -> Result<CheckResult> {
    require_primary(ideal)?;
    let report = invariant_report(ideal)?;
    let mut out = CheckResult::new("theorem1", ideal.to_string());
    for (k, r) in report.residuals.iter().enumerate() {
        out.at_least(format!("r_{}", k + 1), r.clone());
    }
    let f_n = report.f_n().expect("non-unit");
    let e_n = finite(report.e.last().expect("n ≥ 1"), "e_n")?;
    out.at_least("F_n*e_n-1", f_n * e_n - Rational::one());
    Ok(out)
}

/// Residuals `r_k ≥ 0` for the `k` with finite `e_k`; accepts non-primary ideals.
pub fn check_theorem1_partial(ideal: &MonomialIdeal) -> Result<CheckResult> {
    if ideal.is_unit() {
        return Err(Error::InvalidArgument("the unit ideal is excluded".into()));
    }
    let report = invariant_report(ideal)?;
    let mut out = CheckResult::new("theorem1", ideal.to_string());
    for (k, (r, e)) in report.residuals.iter().zip(&report.e).enumerate() {
        if !e.is_infinite() {
            out.at_least(format!("r_{}", k + 1), r.clone());
        }
    }
    Ok(out)
}

/// Monotone chains and the partial product and sum dominations.
pub fn check_remark1(ideal: &MonomialIdeal) -> Result<CheckResult> {
    require_primary(ideal)?;
    let report = invariant_report(ideal)?;
    let (x, y) = (&report.x_chain, &report.y_chain);
    let mut out = CheckResult::new("remark1", ideal.to_string());
    for i in 1..x.len() {
        out.at_least(format!("x_{}-x_{}", i, i + 1), &x[i - 1] - &x[i]);
        out.at_least(format!("y_{}-y_{}", i, i + 1), &y[i - 1] - &y[i]);
    }
    let (mut px, mut py, mut sx, mut sy) = (Rational::one(), Rational::one(), Rational::zero(), Rational::zero());
    for k in 0..x.len() {
        px *= &x[k];
        py *= &y[k];
        sx += &x[k];
        sy += &y[k];
        out.at_least(format!("prod_{}", k + 1), &px - &py);
        out.at_least(format!("sum_{}", k + 1), &sx - &sy);
    }
    Ok(out)
}

/// Exponents `α ≠ 0` with `|α| ≤ max_degree`, in lexicographic order.
pub fn monomial_exponents(n: usize, max_degree: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let mut current = vec![0u32; n];
        let mut pts = Vec::new();
        fill_compositions(n, d, 0, &mut current, &mut pts);
        out.extend(pts.into_iter().map(ExponentVector::new));
    }
    out.sort();
    out
}

/// The threshold of `z^α` against its derivative closure, at every grid `t`,
/// and the directional inequality for `j ≤ n − dim`.
pub fn check_theorem2_monomial(alpha: &ExponentVector, t_grid: &[Rational]) -> Result<CheckResult> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("α must be non-zero".into()));
    }
    let n = alpha.len();
    let f = MonomialIdeal::new(n, vec![alpha.clone()])?;
    let dbar = dbar_ideal(&f)?;
    let pf = f.newton_polyhedron();
    let pd = dbar.newton_polyhedron();
    let one = Extended::Finite(Rational::one());
    let mut out = CheckResult::new("theorem2", format!("{f} Dbar={dbar}"));
    for t in t_grid {
        let lhs = finite(&polyhedron_lct(&pf, t)?, "threshold of f")?;
        let rhs = finite(&polyhedron_lct(&pd, t)?.min(one.clone()), "threshold of Dbar")?;
        out.equal(format!("i t={t}"), lhs - rhs);
    }

    let k = dbar.krull_dim_quotient();
    let cf = thresholds(&f)?;
    let cd = thresholds(&dbar)?;
    let ed = masses(&dbar)?;
    let mut prod = Rational::one();
    let mut prev = Rational::zero();
    for j in 1..=(n - k) {
        let cj = finite(&cd[j - 1], "c_j(Dbar)")?;
        let ej = finite(&ed[j - 1], "e_j(Dbar)")?;
        let bound = &prev + (&prod * &ej).recip();
        let bound = std::cmp::min(bound, Rational::one());
        out.at_least(format!("ii j={j}"), finite(&cf[j - 1], "c_j(f)")? - bound);
        prod *= &cj - &prev;
        prev = cj;
    }
    Ok(out)
}

/// Simplex minimization against the dual maximization at each `t < 0`,
/// the grid oracle as an upper bound, and `c_n = h(1, ..., 1)`.
pub fn check_minimax(ideal: &MonomialIdeal, t_grid: &[Rational]) -> Result<CheckResult> {
    if ideal.is_unit() {
        return Err(Error::InvalidArgument("the unit ideal is excluded".into()));
    }
    let n = ideal.dim();
    let p = ideal.newton_polyhedron();
    let solver = LctSolver::new(&p);
    let q = default_grid_resolution(n);
    let mut out = CheckResult::new("minimax", ideal.to_string());
    for t in t_grid {
        if !t.is_negative() {
            return Err(Error::InvalidArgument(format!("minimax grid point {t} must be negative")));
        }
        let primal = finite(&solver.evaluate(t)?, "primal threshold")?;
        let dual = finite(&weighted_lct_dual(&p, t)?, "dual threshold")?;
        out.equal(format!("dual t={t}"), &primal - dual);
        if let Extended::Finite(g) = grid_oracle(&p, t, q)? {
            out.at_least(format!("grid q={q} t={t}"), g - &primal);
        }
    }
    let ones = vec![Rational::one(); n];
    let c_n = finite(&polyhedron_lct(&p, &Rational::zero())?, "c_n")?;
    out.equal("c_n-h(1)", c_n - finite(&support_h(ideal, &ones)?, "h(1,...,1)")?);
    Ok(out)
}

fn recip_or_zero(v: &Extended) -> Result<Rational> {
    v.recip()?.finite().ok_or_else(|| Error::Consistency("zero threshold".into()))
}

/// Subadditivity over products and the min rule over intersections.
pub fn check_measure_rules(i: &MonomialIdeal, j: &MonomialIdeal, t: &Rational) -> Result<CheckResult> {
    let (pi, pj) = (i.newton_polyhedron(), j.newton_polyhedron());
    let product = i.product(j)?;
    let mut out = CheckResult::new("measure", format!("{i} ; {j}"));
    let ci = polyhedron_lct(&pi, t)?;
    let cj = polyhedron_lct(&pj, t)?;
    let cij = polyhedron_lct(&product.newton_polyhedron(), t)?;
    out.at_least(format!("subadd t={t}"), recip_or_zero(&ci)? + recip_or_zero(&cj)? - recip_or_zero(&cij)?);

    let min = ci.clone().min(cj.clone());
    let meet = polyhedron_lct(&pi.intersect(&pj)?, t)?;
    if t.is_negative() {
        let family = LctSolver::for_family(&[&pi, &pj]).evaluate(t)?;
        out.equal(format!("min-rule t={t}"), ext_difference(&family, &min)?);
        out.at_least(format!("meet<=min t={t}"), ext_difference(&min, &meet)?);
    } else {
        out.equal(format!("min-rule t={t}"), ext_difference(&meet, &min)?);
    }
    Ok(out)
}

/// `a − b`, reading `∞ − ∞` as `0`.
fn ext_difference(a: &Extended, b: &Extended) -> Result<Rational> {
    match (a, b) {
        (Extended::Finite(x), Extended::Finite(y)) => Ok(x - y),
        (Extended::Infinite, Extended::Infinite) => Ok(Rational::zero()),
        _ => Err(Error::Indeterminate("difference with one infinite side".into())),
    }
}

/// Facet, polarization and covolume masses agree; `e_1 = ν(1, ..., 1)`;
/// `e_n ≤ n!·colength`.
pub fn check_masses(ideal: &MonomialIdeal) -> Result<CheckResult> {
    require_primary(ideal)?;
    let n = ideal.dim();
    let p = ideal.newton_polyhedron();
    let facet = facet_masses(&p)?;
    let mut out = CheckResult::new("masses", ideal.to_string());
    for (k, fk) in facet.iter().enumerate() {
        out.equal(format!("facet-polar e_{}", k + 1), fk - polarized_mass(&p, k + 1)?);
    }
    let nf = Rational::from_integer(factorial(n));
    let covol = finite(&p.covolume(), "covolume")?;
    out.equal("facet-covolume e_n", &facet[n - 1] - &nf * covol);
    let ones = vec![Rational::one(); n];
    out.equal("e_1-nu(1)", &facet[0] - lelong_nu(ideal, &ones)?);
    let colength = ideal.colength().expect("primary");
    out.at_least("lech", nf * int(colength as i64) - &facet[n - 1]);
    Ok(out)
}

/// Non-decreasing and concave on the 8-point grid, by first and second differences.
pub fn check_concavity(ideal: &MonomialIdeal) -> Result<CheckResult> {
    if ideal.is_unit() {
        return Err(Error::InvalidArgument("the unit ideal is excluded".into()));
    }
    let p = ideal.newton_polyhedron();
    let solver = LctSolver::new(&p);
    let grid = concavity_grid(ideal.dim());
    let values: Vec<Rational> = grid
        .iter()
        .map(|t| {
            let v = if t.is_negative() { solver.evaluate(t)? } else { polyhedron_lct(&p, t)? };
            finite(&v, "threshold")
        })
        .collect::<Result<_>>()?;
    let mut out = CheckResult::new("concavity", ideal.to_string());
    for j in 0..values.len() - 1 {
        out.at_least(format!("increase {j}"), &values[j + 1] - &values[j]);
    }
    for j in 0..values.len() - 2 {
        out.at_least(format!("concave {j}"), (&values[j + 1] - &values[j]) - (&values[j + 2] - &values[j + 1]));
    }
    Ok(out)
}
