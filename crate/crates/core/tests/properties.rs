use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use pshi_core::geometry::linalg::solve;
use pshi_core::invariants::{
    lct_nonnegative, lelong_nu, masses, polyhedron_lct, thresholds, weighted_lct, weighted_lct_dual, LctSolver,
};
use pshi_core::monomial::WeightSearch;
use pshi_core::rational::{int, ratio};
use pshi_core::{
    dbar_ideal, derivative_ideal, ExponentVector, Extended, MonomialIdeal, NewtonPolyhedron, OrderingMatrix, Rational,
};

fn gens(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens)
        .prop_map(|gs| gs.into_iter().map(|g| if g.iter().all(|&v| v == 0) { with_one(g) } else { g }).collect())
}

fn with_one(mut g: Vec<u32>) -> Vec<u32> {
    g[0] = 1;
    g
}

fn ideal(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    gens(n, max_gens, max_exp).prop_map(move |g| MonomialIdeal::from_exponents(n, &g).unwrap())
}

/// Random generators plus pure powers `z_i^d`.
fn primary(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    (gens(n, max_gens, max_exp), prop::collection::vec(1..=max_exp, n)).prop_map(move |(mut g, d)| {
        for (i, &di) in d.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = di;
            g.push(e);
        }
        MonomialIdeal::from_exponents(n, &g).unwrap()
    })
}

fn any_primary() -> impl Strategy<Value = MonomialIdeal> {
    prop_oneof![primary(2, 5, 6), primary(3, 4, 4)]
}

fn direction(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0i64..=6, 1i64..=4), n)
        .prop_filter("non-zero", |v| v.iter().any(|(p, _)| *p != 0))
        .prop_map(|v| v.into_iter().map(|(p, q)| ratio(p, q)).collect())
}

fn negative_t(n: usize) -> impl Strategy<Value = Rational> {
    // t = −n + j/4 for j in 1..4n
    (1..(4 * n as i64)).prop_map(move |j| int(-(n as i64)) + ratio(j, 4))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn rebuilding_from_vertices_is_idempotent(i in prop_oneof![ideal(2, 6, 6), ideal(3, 5, 4)]) {
        let p = i.newton_polyhedron();
        let q = NewtonPolyhedron::from_points(i.dim(), p.vertices()).unwrap();
        prop_assert_eq!(p.vertices(), q.vertices());
        prop_assert_eq!(p.facets(), q.facets());
    }

    #[test]
    fn integral_closure_preserves_invariants(i in any_primary()) {
        let bar = i.integral_closure();
        prop_assert!(i.is_subset_of(&bar));
        prop_assert_eq!(bar.integral_closure(), bar.clone());
        prop_assert_eq!(thresholds(&i).unwrap(), thresholds(&bar).unwrap());
        prop_assert_eq!(masses(&i).unwrap(), masses(&bar).unwrap());
    }

    #[test]
    fn derivative_ideals_are_nested(i in prop_oneof![ideal(2, 4, 6), ideal(3, 3, 4)]) {
        let d = derivative_ideal(&i);
        let dbar = dbar_ideal(&i).unwrap();
        prop_assert!(i.is_subset_of(&dbar));
        prop_assert!(dbar.is_subset_of(&d));
    }

    #[test]
    fn powers_scale_thresholds_and_masses(i in prop_oneof![primary(2, 4, 5), primary(3, 3, 3)], p in 2u32..=3) {
        let ip = i.power(p).unwrap();
        let c = thresholds(&i).unwrap();
        let cp = thresholds(&ip).unwrap();
        let e = masses(&i).unwrap();
        let ep = masses(&ip).unwrap();
        for k in 0..i.dim() {
            let pk = Rational::from_integer(BigInt::from(p).pow(k as u32 + 1));
            prop_assert_eq!(ep[k].as_finite().unwrap(), &(e[k].as_finite().unwrap() * pk));
            let scaled = c[k].as_finite().unwrap() / int(i64::from(p));
            prop_assert_eq!(cp[k].as_finite().unwrap(), &scaled);
        }
    }

    #[test]
    fn enlarging_the_ideal_raises_thresholds(i in any_primary(), extra in prop::collection::vec(0u32..=3, 3)) {
        let n = i.dim();
        let mut e = extra[..n].to_vec();
        if e.iter().all(|&v| v == 0) {
            e[0] = 1;
        }
        let j = i.sum(&MonomialIdeal::from_exponents(n, &[e]).unwrap()).unwrap();
        let (ci, cj) = (thresholds(&i).unwrap(), thresholds(&j).unwrap());
        let (ei, ej) = (masses(&i).unwrap(), masses(&j).unwrap());
        for k in 0..n {
            prop_assert!(ci[k].as_finite().unwrap() <= cj[k].as_finite().unwrap());
            prop_assert!(ei[k].as_finite().unwrap() >= ej[k].as_finite().unwrap());
        }
    }

    #[test]
    fn primal_and_dual_thresholds_agree(i in any_primary(), j in 1i64..12) {
        let n = i.dim() as i64;
        let t = int(-n) + ratio(j, 4);
        prop_assume!(t < int(0));
        let p = i.newton_polyhedron();
        prop_assert_eq!(LctSolver::new(&p).evaluate(&t).unwrap(), weighted_lct_dual(&p, &t).unwrap());
    }

    #[test]
    fn solver_matches_gauge_formula_for_nonnegative_weights(
        i in prop_oneof![ideal(2, 5, 6), ideal(3, 4, 4)],
        j in 0i64..8,
    ) {
        let t = ratio(j, 2);
        let p = i.newton_polyhedron();
        prop_assert_eq!(LctSolver::new(&p).evaluate(&t).unwrap(), lct_nonnegative(&p, &t).unwrap());
    }

    #[test]
    fn threshold_increases_with_weight(i in any_primary(), t in negative_t(3)) {
        prop_assume!(t > int(-(i.dim() as i64)));
        let smaller = weighted_lct(&i, &t).unwrap();
        let larger = weighted_lct(&i, &(&t + ratio(1, 4))).unwrap();
        prop_assert!(smaller.as_finite().unwrap() <= larger.as_finite().unwrap());
    }

    #[test]
    fn nu_is_attained_at_a_vertex(i in ideal(3, 6, 5), x in direction(3)) {
        let p = i.newton_polyhedron();
        let by_vertex = p.vertices().iter().map(|v| v.iter().zip(&x).map(|(a, b)| a * b).sum::<Rational>()).min().unwrap();
        prop_assert_eq!(lelong_nu(&i, &x).unwrap(), by_vertex.clone());
        prop_assert_eq!(p.min_linear_form(&x).unwrap(), by_vertex);
    }

    #[test]
    fn colength_ignores_generator_and_variable_order(
        g in gens(3, 5, 5),
        d in prop::collection::vec(1u32..=5, 3),
        seed in any::<u64>(),
    ) {
        let mut all = g.clone();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = d[i];
            all.push(e);
        }
        let base = MonomialIdeal::from_exponents(3, &all).unwrap().colength().unwrap();
        let mut shuffled = all.clone();
        shuffled.rotate_left((seed % all.len() as u64) as usize);
        shuffled.reverse();
        prop_assert_eq!(MonomialIdeal::from_exponents(3, &shuffled).unwrap().colength().unwrap(), base);
        let swapped: Vec<Vec<u32>> = all.iter().map(|e| vec![e[2], e[0], e[1]]).collect();
        prop_assert_eq!(MonomialIdeal::from_exponents(3, &swapped).unwrap().colength().unwrap(), base);
    }

    #[test]
    fn separating_weight_orders_the_upper_sets(
        pts in prop::collection::vec(prop::collection::vec(0u32..=3, 2), 1..=3),
        graded in any::<bool>(),
    ) {
        let m = if graded { OrderingMatrix::new(vec![vec![1, 1], vec![1, 0]]).unwrap() } else { OrderingMatrix::lex(2) };
        let alphas: Vec<ExponentVector> = pts.into_iter().map(ExponentVector::new).collect();
        let a = m.separating_weight(&alphas, WeightSearch::default()).unwrap();
        let w = |v: &ExponentVector| v.entries().iter().zip(a.entries()).map(|(x, y)| u64::from(*x) * u64::from(*y)).sum::<u64>();
        for alpha in &alphas {
            for b0 in 0..=8u32 {
                for b1 in 0..=8u32 {
                    let beta = ExponentVector::new(vec![b0, b1]);
                    if m.compare(&beta, alpha).unwrap() == std::cmp::Ordering::Greater {
                        prop_assert!(w(&beta) > w(alpha), "{} vs {} under {:?}", beta, alpha, a);
                    }
                }
            }
        }
    }

    #[test]
    fn solve_matches_rational_elimination(
        n in 1usize..=4,
        entries in prop::collection::vec(-6i64..=6, 20),
        big in any::<bool>(),
    ) {
        let scale = if big { BigInt::from(10).pow(15) } else { BigInt::one() };
        let rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(entries[i * n + j]) * &scale).collect()).collect();
        let rhs: Vec<BigInt> = (0..n).map(|i| BigInt::from(entries[16 + i % 4]) * &scale + 1).collect();
        prop_assert_eq!(solve(&rows, &rhs), rational_elimination(&rows, &rhs));
    }
}

/// Textbook Gauss-Jordan elimination over the rationals.
fn rational_elimination(rows: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().chain(std::iter::once(b)).map(|v| Rational::from_integer(v.clone())).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

#[test]
fn negative_weights_stay_below_the_gauge_value() {
    // c_t is non-decreasing in t, so every t < 0 sits below c_0 = h(1, ..., 1)
    let i = MonomialIdeal::from_exponents(3, &[vec![3, 0, 0], vec![0, 2, 0], vec![0, 0, 5], vec![1, 1, 1]]).unwrap();
    let p = i.newton_polyhedron();
    let c0 = polyhedron_lct(&p, &int(0)).unwrap();
    for j in 1..12 {
        let t = int(-3) + ratio(j, 4);
        let ct = polyhedron_lct(&p, &t).unwrap();
        assert!(ct.as_finite().unwrap() <= c0.as_finite().unwrap());
        assert!(ct.as_finite().unwrap().is_positive());
    }
    assert_ne!(c0, Extended::Infinite);
}
