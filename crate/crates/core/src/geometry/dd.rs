//! Double description: extreme rays of a pointed cone `{ z : A z ≥ 0 }`.
//!
//! Rows are integer vectors. Rays are kept primitive (gcd 1), so the output is
//! canonical up to ordering, which callers fix by sorting.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{dot_int, normalize_integer_row, solve};

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

/// Returns the extreme rays of `{ z ∈ R^d : ⟨row, z⟩ ≥ 0 for every row }`.
///
/// The rows must have full column rank `d` (the cone is pointed); otherwise
/// `None` is returned.
pub fn extreme_rays(rows: &[Vec<BigInt>], d: usize) -> Option<Vec<Vec<BigInt>>> {
    let m = rows.len();
    let basis = independent_rows(rows, d)?;

    // Initial simplicial cone: ray j is tight on every basis row except j.
    let basis_rows: Vec<Vec<BigInt>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let mut rays = Vec::with_capacity(d);
    for j in 0..d {
        let mut rhs = vec![BigInt::zero(); d];
        rhs[j] = BigInt::from(1);
        let sol = solve(&basis_rows, &rhs)?;
        let coords = super::linalg::primitive_integer_row(&sol);
        let mut zeros = FixedBitSet::with_capacity(m);
        for (k, &i) in basis.iter().enumerate() {
            if k != j {
                zeros.insert(i);
            }
        }
        rays.push(Ray { coords, zeros });
    }

    let mut processed = FixedBitSet::with_capacity(m);
    for &i in &basis {
        processed.insert(i);
    }

    for (i, row) in rows.iter().enumerate() {
        if processed.contains(i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.coords)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();

        for &p in &pos {
            for &q in &neg {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[q].zeros);
                if common.count_ones(..) + 2 < d {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| k == p || k == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vq = -&values[q];
                let coords: Vec<BigInt> =
                    rays[p].coords.iter().zip(&rays[q].coords).map(|(a, b)| a * &vq + b * vp).collect();
                let coords = normalize_integer_row(coords);
                let mut zeros = common;
                zeros.insert(i);
                next.push(Ray { coords, zeros });
            }
        }
        for (k, ray) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            let mut ray = ray;
            if values[k].is_zero() {
                ray.zeros.insert(i);
            }
            next.push(ray);
        }
        rays = next;
        processed.insert(i);
    }

    Some(rays.into_iter().map(|r| r.coords).collect())
}

fn independent_rows(rows: &[Vec<BigInt>], d: usize) -> Option<Vec<usize>> {
    use crate::rational::Rational;
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut echelon: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (i, row) in rows.iter().enumerate() {
        let mut v: Vec<Rational> = row.iter().map(|x| Rational::from_integer(x.clone())).collect();
        for e in &echelon {
            let lead = e.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
            if !v[lead].is_zero() {
                let f = &v[lead] / &e[lead];
                for (vj, ej) in v.iter_mut().zip(e) {
                    *vj -= ej * &f;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            chosen.push(i);
            echelon.push(v);
            if chosen.len() == d {
                return Some(chosen);
            }
        }
    }
    None
}
