//! Monge-Ampère masses `e_k` and mixed multiplicities.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::NewtonPolyhedron;
use crate::monomial::MonomialIdeal;
use crate::rational::{binomial, factorial, Extended, Rational};

/// How far past the first truncation order the stabilization search runs.
pub const TRUNCATION_SPAN: u32 = 24;

/// `e_1, ..., e_n` of a polyhedron with finite covolume, summed facet by facet.
pub fn facet_masses(p: &NewtonPolyhedron) -> Result<Vec<Rational>> {
    if !p.has_finite_covolume() {
        return Err(Error::NotPrimary("facet masses need finite covolume".into()));
    }
    let n = p.dim();
    let mut e = vec![Rational::zero(); n];
    let scale = Rational::from_integer(factorial(n - 1));
    for (i, f) in p.bounding_facets() {
        let w = p.facet_projected_measure(i)?;
        let b = Rational::from_integer(f.offset.clone());
        let mut a: Vec<BigInt> = f.normal.clone();
        a.sort();
        let base = &scale * &b * &w;
        // k = n uses the empty product; each smaller k takes one more of the
        // smallest normal entries, divided by b.
        let mut factor = Rational::one();
        for k in (1..=n).rev() {
            e[k - 1] += &base * &factor;
            if k > 1 {
                factor = factor * Rational::from_integer(a[n - k].clone()) / &b;
            }
        }
    }
    Ok(e)
}

/// `e_1, ..., e_n` of a polyhedron with finite covolume, each as the mixed
/// multiplicity `e(P^{[k]}, m^{[n−k]})`.
pub fn polarized_masses(p: &NewtonPolyhedron) -> Result<Vec<Rational>> {
    (1..=p.dim()).map(|k| polarized_mass(p, k)).collect()
}

/// `e_1, ..., e_n` of a monomial ideal, by polarization. Non-primary ideals
/// are truncated by `m^N` until the finite masses stop changing; masses
/// beyond the codimension of the zero set are `+∞`.
pub fn masses(ideal: &MonomialIdeal) -> Result<Vec<Extended>> {
    let n = ideal.dim();
    if ideal.is_unit() {
        return Ok(vec![Extended::zero(); n]);
    }
    if ideal.is_m_primary() {
        return Ok(polarized_masses(&ideal.newton_polyhedron())?.into_iter().map(Extended::Finite).collect());
    }
    let finite = n - ideal.krull_dim_quotient();
    let start = ideal.generators().iter().map(|g| g.degree()).max().unwrap_or(0) as u32 + 1;
    let truncated = |big_n: u32| -> Result<Vec<Rational>> {
        let p = ideal.truncate(big_n)?.newton_polyhedron();
        (1..=finite).map(|k| polarized_mass(&p, k)).collect()
    };
    let mut prev = truncated(start)?;
    for big_n in (start + 1)..=(start + TRUNCATION_SPAN) {
        let next = truncated(big_n)?;
        if next == prev {
            let mut out: Vec<Extended> = next.into_iter().map(Extended::Finite).collect();
            out.resize(n, Extended::Infinite);
            return Ok(out);
        }
        prev = next;
    }
    Err(Error::SearchExhausted(format!("truncated masses of {ideal} did not stabilize by N = {}", start + TRUNCATION_SPAN)))
}

/// `e(P_1^{[m_1]}, ..., P_r^{[m_r]})` for polyhedra with finite covolume and
/// `Σ m_j = n`, by polarization over scaled Minkowski sums.
pub fn mixed_volume_multiset(groups: &[(&NewtonPolyhedron, usize)]) -> Result<Rational> {
    let n = check_groups(groups)?;
    let mut counts = vec![0usize; groups.len()];
    let mut total = Rational::zero();
    loop {
        // advance the mixed-radix counter
        let mut i = 0;
        while i < groups.len() && counts[i] == groups[i].1 {
            counts[i] = 0;
            i += 1;
        }
        if i == groups.len() {
            break;
        }
        counts[i] += 1;

        let k: usize = counts.iter().sum();
        let mut sum: Option<NewtonPolyhedron> = None;
        let mut weight = BigInt::one();
        for ((p, m), &c) in groups.iter().zip(&counts) {
            if c == 0 {
                continue;
            }
            weight *= binomial(*m, c);
            let scaled = p.scaled(c as u32)?;
            sum = Some(match sum {
                None => scaled,
                Some(s) => s.minkowski_sum(&scaled)?,
            });
        }
        let covol = sum.expect("non-empty selection").covolume();
        let covol = covol.finite().ok_or_else(|| Error::NotPrimary("Minkowski sum has infinite covolume".into()))?;
        let term = covol * Rational::from_integer(weight);
        if (n - k).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// The same polarization summed over every subset of the argument list.
pub fn mixed_volume_subsets(polys: &[&NewtonPolyhedron]) -> Result<Rational> {
    let groups: Vec<(&NewtonPolyhedron, usize)> = polys.iter().map(|p| (*p, 1)).collect();
    let n = check_groups(&groups)?;
    let mut total = Rational::zero();
    for mask in 1u32..(1 << n) {
        let mut sum: Option<NewtonPolyhedron> = None;
        for (i, p) in polys.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = Some(match sum {
                    None => (*p).clone(),
                    Some(s) => s.minkowski_sum(p)?,
                });
            }
        }
        let covol = sum.expect("non-empty mask").covolume();
        let covol = covol.finite().ok_or_else(|| Error::NotPrimary("Minkowski sum has infinite covolume".into()))?;
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += covol;
        } else {
            total -= covol;
        }
    }
    Ok(total)
}

fn check_groups(groups: &[(&NewtonPolyhedron, usize)]) -> Result<usize> {
    let first = groups.first().ok_or_else(|| Error::Empty("no polyhedra".into()))?;
    let n = first.0.dim();
    let count: usize = groups.iter().map(|g| g.1).sum();
    if count != n {
        return Err(Error::InvalidArgument(format!("need {n} arguments, got {count}")));
    }
    for (p, _) in groups {
        crate::error::ensure_dim(n, p.dim())?;
        if !p.has_finite_covolume() {
            return Err(Error::NotPrimary("mixed multiplicities need m-primary arguments; truncate first".into()));
        }
    }
    Ok(n)
}

fn primary_polyhedra(ideals: &[MonomialIdeal]) -> Result<Vec<NewtonPolyhedron>> {
    let n = ideals.first().ok_or_else(|| Error::Empty("no ideals".into()))?.dim();
    if ideals.len() != n {
        return Err(Error::InvalidArgument(format!("need {n} ideals, got {}", ideals.len())));
    }
    ideals
        .iter()
        .map(|i| {
            crate::error::ensure_dim(n, i.dim())?;
            if !i.is_m_primary() {
                return Err(Error::NotPrimary(format!("{i}; truncate it with m^N first")));
            }
            Ok(i.newton_polyhedron())
        })
        .collect()
}

/// Mixed multiplicity `e(I_1, ..., I_n)`; repeated ideals are grouped.
pub fn mixed_multiplicity(ideals: &[MonomialIdeal]) -> Result<Rational> {
    let polys = primary_polyhedra(ideals)?;
    let mut groups: Vec<(&NewtonPolyhedron, usize)> = Vec::new();
    for p in &polys {
        match groups.iter_mut().find(|(q, _)| *q == p) {
            Some(g) => g.1 += 1,
            None => groups.push((p, 1)),
        }
    }
    mixed_volume_multiset(&groups)
}

/// Reference implementation summing over all subsets.
pub fn mixed_multiplicity_reference(ideals: &[MonomialIdeal]) -> Result<Rational> {
    let polys = primary_polyhedra(ideals)?;
    let refs: Vec<&NewtonPolyhedron> = polys.iter().collect();
    mixed_volume_subsets(&refs)
}

/// `e_k(I) = e(I^{[k]}, m^{[n−k]})` by polarization.
pub fn polarized_mass(p: &NewtonPolyhedron, k: usize) -> Result<Rational> {
    let n = p.dim();
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
    }
    let m = MonomialIdeal::maximal(n).newton_polyhedron();
    let mut groups = vec![(p, k)];
    if k < n {
        groups.push((&m, n - k));
    }
    mixed_volume_multiset(&groups)
}

/// `(p, colength(I^p))` for `p = 1..=p_max`.
pub fn multiplicity_oracle(ideal: &MonomialIdeal, p_max: u32) -> Result<Vec<(u32, u64)>> {
    if !ideal.is_m_primary() {
        return Err(Error::NotPrimary(ideal.to_string()));
    }
    if p_max < 1 {
        return Err(Error::InvalidArgument("p_max must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut power = ideal.clone();
    for p in 1..=p_max {
        if p > 1 {
            power = power.product(ideal)?;
        }
        out.push((p, power.colength().expect("powers of primary ideals are primary")));
    }
    Ok(out)
}
