//! Slow reference computations checked against the library.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use pshi_core::invariants::polyhedron_lct;
use pshi_core::rational::{int, ratio};
use pshi_core::verification::{corpus, grid_oracle, CorpusConfig};
use pshi_core::{Extended, HalfSpace, MonomialIdeal, Rational};

/// Integer kernel vector of an `(n−1) × n` integer matrix via cofactors.
fn cofactor_normal(rows: &[Vec<i64>]) -> Vec<i64> {
    let n = rows.len() + 1;
    (0..n)
        .map(|skip| {
            let minor: Vec<Vec<i64>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, v)| *v).collect()).collect();
            let sign = if skip % 2 == 0 { 1 } else { -1 };
            sign * det(&minor)
        })
        .collect()
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect()).collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in 0..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Facets of `conv(points) + R^n_+` by trying every hyperplane spanned by a
/// base point together with `n − 1` further points or coordinate directions.
fn brute_force_facets(n: usize, points: &[Vec<i64>]) -> BTreeSet<HalfSpace> {
    let mut directions: Vec<Vec<i64>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            directions.push(q.iter().zip(p).map(|(a, b)| a - b).collect());
        }
    }
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        directions.push(e);
    }
    let mut out = BTreeSet::new();
    let k = n - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    if directions.len() < k {
        return out;
    }
    loop {
        let rows: Vec<Vec<i64>> = idx.iter().map(|&i| directions[i].clone()).collect();
        let mut a = cofactor_normal(&rows);
        if a.iter().any(|&v| v != 0) {
            if a.iter().any(|&v| v < 0) {
                a.iter_mut().for_each(|v| *v = -*v);
            }
            if a.iter().all(|&v| v >= 0) {
                let g = a.iter().fold(0i64, |g, &v| g.gcd(&v));
                a.iter_mut().for_each(|v| *v /= g);
                let value = |p: &Vec<i64>| p.iter().zip(&a).map(|(x, y)| x * y).sum::<i64>();
                let b = points.iter().map(value).min().unwrap();
                let tight: Vec<&Vec<i64>> = points.iter().filter(|p| value(p) == b).collect();
                let mut span: Vec<Vec<i64>> =
                    tight[1..].iter().map(|p| p.iter().zip(tight[0]).map(|(x, y)| x - y).collect()).collect();
                for i in 0..n {
                    if a[i] == 0 {
                        let mut e = vec![0; n];
                        e[i] = 1;
                        span.push(e);
                    }
                }
                if rank(&span) == n - 1 {
                    out.insert(HalfSpace { normal: a.iter().map(|&v| BigInt::from(v)).collect(), offset: BigInt::from(b) });
                }
            }
        }
        // next k-combination of directions
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < directions.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn as_points(ideal: &MonomialIdeal) -> Vec<Vec<i64>> {
    ideal.generators().iter().map(|g| g.entries().iter().map(|&v| i64::from(v)).collect()).collect()
}

/// Lattice points outside the ideal, counted over its bounding box.
fn staircase(ideal: &MonomialIdeal) -> u64 {
    let n = ideal.dim();
    let bound: Vec<u32> = (0..n).map(|i| ideal.generators().iter().map(|g| g.entries()[i]).max().unwrap()).collect();
    let mut count = 0;
    let mut x = vec![0u32; n];
    loop {
        if !ideal.generators().iter().any(|g| g.entries().iter().zip(&x).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            if x[i] < bound[i] {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Area of `R^2_+ \ P` by the shoelace formula on origin plus vertices.
fn shoelace_covolume(vertices: &[Vec<Rational>]) -> Rational {
    let mut poly = vec![vec![int(0), int(0)]];
    let mut vs = vertices.to_vec();
    vs.sort_by(|a, b| b[0].cmp(&a[0]));
    poly.extend(vs);
    let mut twice = Rational::zero();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        twice += &p[0] * &q[1] - &q[0] * &p[1];
    }
    twice.abs() / int(2)
}

fn cfg(n: usize, primary: bool, count: usize) -> CorpusConfig {
    CorpusConfig { seed: 11, n, max_generators: 6, max_exponent: 5, require_primary: primary, count }
}

#[test]
fn facets_match_brute_force_enumeration() {
    for (n, count) in [(2, 60), (3, 40)] {
        for primary in [true, false] {
            for ideal in corpus(&cfg(n, primary, count)).unwrap() {
                if ideal.is_unit() {
                    continue;
                }
                let p = ideal.newton_polyhedron();
                let got: BTreeSet<HalfSpace> = p.facets().iter().cloned().collect();
                assert_eq!(got, brute_force_facets(n, &as_points(&ideal)), "{ideal}");
            }
        }
    }
}

#[test]
fn colength_matches_staircase_count() {
    for n in [2, 3, 4] {
        for ideal in corpus(&cfg(n, true, 40)).unwrap() {
            assert_eq!(ideal.colength().unwrap(), staircase(&ideal), "{ideal}");
        }
    }
    let diag = MonomialIdeal::from_exponents(2, &[vec![2, 0], vec![0, 3]]).unwrap();
    let frozen: Vec<u64> = (1..=4).map(|p| staircase(&diag.power(p).unwrap())).collect();
    assert_eq!(frozen, [6, 18, 36, 60]);
}

#[test]
fn plane_covolume_matches_shoelace() {
    for ideal in corpus(&cfg(2, true, 80)).unwrap() {
        let p = ideal.newton_polyhedron();
        assert_eq!(p.covolume(), Extended::Finite(shoelace_covolume(p.vertices())), "{ideal}");
    }
    let p = MonomialIdeal::from_exponents(2, &[vec![5, 0], vec![3, 1], vec![0, 4]]).unwrap().newton_polyhedron();
    assert_eq!(p.covolume(), Extended::Finite(ratio(17, 2)));
}

#[test]
fn grid_oracle_bounds_and_converges() {
    let m3 = MonomialIdeal::maximal(3).newton_polyhedron();
    // the optimum (1/3, 1/3, 1/3) lies on grids with 3 | q
    assert_eq!(grid_oracle(&m3, &int(-1), 12).unwrap(), Extended::Finite(int(2)));

    for ideal in corpus(&cfg(2, true, 30)).unwrap() {
        let p = ideal.newton_polyhedron();
        for t in [ratio(-3, 2), int(-1), ratio(-1, 2)] {
            let exact = polyhedron_lct(&p, &t).unwrap().finite().unwrap();
            let mut previous: Option<Rational> = None;
            for q in [6, 12, 24, 48, 96] {
                let g = grid_oracle(&p, &t, q).unwrap().finite().unwrap();
                assert!(g >= exact, "{ideal} t={t} q={q}");
                if let Some(prev) = &previous {
                    assert!(&g <= prev, "nested grids cannot increase the minimum");
                }
                previous = Some(g);
            }
            // the optimum has denominators dividing some small lcm on this corpus
            let fine = grid_oracle(&p, &t, 720).unwrap().finite().unwrap();
            assert!(&fine - &exact <= ratio(1, 20), "{ideal} t={t}: {fine} vs {exact}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn random_plane_facets(pts in prop::collection::vec(prop::collection::vec(0u32..=7, 2), 1..=6)) {
        prop_assume!(pts.iter().all(|p| p.iter().any(|&v| v > 0)));
        let ideal = MonomialIdeal::from_exponents(2, &pts).unwrap();
        let got: BTreeSet<HalfSpace> = ideal.newton_polyhedron().facets().iter().cloned().collect();
        prop_assert_eq!(got, brute_force_facets(2, &as_points(&ideal)));
    }
}
