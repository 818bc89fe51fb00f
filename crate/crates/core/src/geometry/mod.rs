//! Exact polyhedral geometry of Newton polyhedra `conv(points) + R^n_+`.
//!
//! A [`NewtonPolyhedron`] keeps both descriptions: its vertices (rational) and
//! its irredundant facet half-spaces `⟨a, y⟩ ≥ b` with primitive integer
//! normals `a ≥ 0` and offsets `b ≥ 0`. Both lists are sorted, so two
//! polyhedra are equal exactly when they describe the same set.

pub mod dd;
pub mod linalg;
mod volume;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{ensure_dim, Error, Result};
use crate::rational::{Extended, RatVector, Rational};

use linalg::{dot_int_rat, primitive_integer_row};

/// The half-space `{ y : ⟨normal, y⟩ ≥ offset }`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl HalfSpace {
    /// `⟨normal, x⟩`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        dot_int_rat(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.evaluate(x) >= Rational::from_integer(self.offset.clone())
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.evaluate(x) == Rational::from_integer(self.offset.clone())
    }

    /// Strictly positive normal: the facet is bounded.
    pub fn is_compact(&self) -> bool {
        self.normal.iter().all(|a| a.is_positive())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NewtonPolyhedron {
    dim: usize,
    vertices: Vec<RatVector>,
    facets: Vec<HalfSpace>,
    compact: Vec<bool>,
}

impl NewtonPolyhedron {
    /// Builds `conv(points) + R^n_+` from non-negative rational points.
    pub fn from_points(n: usize, points: &[RatVector]) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::Empty("Newton polyhedron needs at least one point".into()));
        }
        for p in points {
            ensure_dim(n, p.len())?;
            if p.iter().any(Signed::is_negative) {
                return Err(Error::InvalidArgument("points must be componentwise non-negative".into()));
            }
        }
        let candidates = undominated(points);
        let facets = facets_of(n, &candidates)?;
        Ok(Self::assemble(n, candidates, facets))
    }

    /// Builds the Newton polyhedron of a set of lattice points.
    pub fn from_lattice_points(n: usize, points: &[Vec<u32>]) -> Result<Self> {
        let pts: Vec<RatVector> =
            points.iter().map(|p| p.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect()).collect();
        Self::from_points(n, &pts)
    }

    fn assemble(n: usize, candidates: Vec<RatVector>, mut facets: Vec<HalfSpace>) -> Self {
        facets.sort();
        facets.dedup();
        let mut vertices: Vec<RatVector> = candidates
            .into_iter()
            .filter(|p| {
                let mut tight: Vec<RatVector> = facets
                    .iter()
                    .filter(|f| f.is_tight(p))
                    .map(|f| f.normal.iter().map(|a| Rational::from_integer(a.clone())).collect())
                    .collect();
                for (i, v) in p.iter().enumerate() {
                    if v.is_zero() {
                        let mut e = vec![Rational::zero(); n];
                        e[i] = Rational::from_integer(BigInt::from(1));
                        tight.push(e);
                    }
                }
                linalg::rank(&tight) == n
            })
            .collect();
        vertices.sort();
        vertices.dedup();
        let compact = facets.iter().map(HalfSpace::is_compact).collect();
        NewtonPolyhedron { dim: n, vertices, facets, compact }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn compact_flags(&self) -> &[bool] {
        &self.compact
    }

    pub fn is_compact_facet(&self, index: usize) -> bool {
        self.compact[index]
    }

    /// Facets with positive offset; the coordinate facets `y_i ≥ 0` are excluded.
    pub fn bounding_facets(&self) -> impl Iterator<Item = (usize, &HalfSpace)> {
        self.facets.iter().enumerate().filter(|(_, f)| f.offset.is_positive())
    }

    /// True when every facet with positive offset is bounded, i.e. the
    /// complement in the orthant has finite volume.
    pub fn has_finite_covolume(&self) -> bool {
        self.bounding_facets().all(|(_, f)| f.is_compact())
    }

    pub fn contains(&self, q: &[Rational]) -> Result<bool> {
        ensure_dim(self.dim, q.len())?;
        Ok(q.iter().all(|v| !v.is_negative()) && self.facets.iter().all(|f| f.contains(q)))
    }

    /// `inf { t ≥ 0 : t·x ∈ P }` for a non-zero direction `x ≥ 0`.
    pub fn gauge(&self, x: &[Rational]) -> Result<Extended> {
        ensure_dim(self.dim, x.len())?;
        if x.iter().any(Signed::is_negative) {
            return Err(Error::InvalidArgument("gauge direction must be non-negative".into()));
        }
        if x.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("gauge direction must be non-zero".into()));
        }
        let mut best = Rational::zero();
        for (_, f) in self.bounding_facets() {
            let ax = f.evaluate(x);
            if ax.is_zero() {
                return Ok(Extended::Infinite);
            }
            let t = Rational::from_integer(f.offset.clone()) / ax;
            if t > best {
                best = t;
            }
        }
        Ok(Extended::Finite(best))
    }

    /// `min { ⟨v, x⟩ : v vertex }`, the minimum of the linear form over `P` for `x ≥ 0`.
    pub fn min_linear_form(&self, x: &[Rational]) -> Result<Rational> {
        ensure_dim(self.dim, x.len())?;
        Ok(self
            .vertices
            .iter()
            .map(|v| v.iter().zip(x).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .min()
            .expect("a polyhedron has at least one vertex"))
    }

    /// `P + Q`, rebuilt from pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &NewtonPolyhedron) -> Result<NewtonPolyhedron> {
        ensure_dim(self.dim, other.dim)?;
        let mut points = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                points.push(v.iter().zip(w).map(|(a, b)| a + b).collect());
            }
        }
        NewtonPolyhedron::from_points(self.dim, &points)
    }

    /// `k·P` for a positive integer `k`.
    pub fn scaled(&self, k: u32) -> Result<NewtonPolyhedron> {
        if k == 0 {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        let k = Rational::from_integer(BigInt::from(k));
        let points: Vec<RatVector> = self.vertices.iter().map(|v| v.iter().map(|x| x * &k).collect()).collect();
        NewtonPolyhedron::from_points(self.dim, &points)
    }

    /// `P ∩ Q`; vertices may be non-lattice rationals.
    pub fn intersect(&self, other: &NewtonPolyhedron) -> Result<NewtonPolyhedron> {
        ensure_dim(self.dim, other.dim)?;
        let n = self.dim;
        // Homogenized cone in (y, s): ⟨a, y⟩ − b·s ≥ 0, y ≥ 0, s ≥ 0.
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for f in self.facets.iter().chain(&other.facets) {
            let mut row = f.normal.clone();
            row.push(-f.offset.clone());
            rows.push(row);
        }
        for i in 0..=n {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::from(1);
            rows.push(row);
        }
        let rays = dd::extreme_rays(&rows, n + 1)
            .ok_or_else(|| Error::Consistency("intersection cone is not pointed".into()))?;
        let points: Vec<RatVector> = rays
            .into_iter()
            .filter(|r| r[n].is_positive())
            .map(|r| r[..n].iter().map(|y| Rational::new(y.clone(), r[n].clone())).collect())
            .collect();
        NewtonPolyhedron::from_points(n, &points)
    }

    /// Volume of `R^n_+ \ P`: `Σ b·w(F)/n` over compact facets, `+∞` when unbounded.
    pub fn covolume(&self) -> Extended {
        if !self.has_finite_covolume() {
            return Extended::Infinite;
        }
        let n = Rational::from_integer(BigInt::from(self.dim));
        let total = self
            .bounding_facets()
            .map(|(i, f)| {
                let w = self.facet_projected_measure(i).expect("bounding facets are compact here");
                w * Rational::from_integer(f.offset.clone())
            })
            .fold(Rational::zero(), |acc, v| acc + v);
        Extended::Finite(total / n)
    }

    /// `Vol_{n−1}(F)/|a|`, computed as the volume of the projection of `F`
    /// along coordinate `i` divided by `a_i`, for the first `i` with `a_i ≠ 0`.
    pub fn facet_projected_measure(&self, index: usize) -> Result<Rational> {
        let facet = self.facet(index)?;
        if !facet.is_compact() {
            return Err(Error::InvalidArgument(format!("facet {index} is not compact")));
        }
        let coord = facet.normal.iter().position(|a| !a.is_zero()).expect("compact normals are positive");
        self.facet_projected_measure_along(index, coord)
    }

    /// Same measure computed through an explicit projection coordinate.
    pub fn facet_projected_measure_along(&self, index: usize, coord: usize) -> Result<Rational> {
        let facet = self.facet(index)?;
        if !facet.is_compact() {
            return Err(Error::InvalidArgument(format!("facet {index} is not compact")));
        }
        if coord >= self.dim || facet.normal[coord].is_zero() {
            return Err(Error::InvalidArgument(format!("cannot project facet {index} along coordinate {coord}")));
        }
        let vol = volume::projected_facet_volume(self, index, coord)?;
        Ok(vol / Rational::from_integer(facet.normal[coord].clone()))
    }

    fn facet(&self, index: usize) -> Result<&HalfSpace> {
        self.facets.get(index).ok_or_else(|| Error::InvalidArgument(format!("no facet with index {index}")))
    }

    /// Vertex indices lying on facet `index`.
    pub fn facet_vertices(&self, index: usize) -> Vec<usize> {
        let f = &self.facets[index];
        (0..self.vertices.len()).filter(|&v| f.is_tight(&self.vertices[v])).collect()
    }
}

impl NewtonPolyhedron {
    /// Pairs of vertices spanning a bounded edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.dim;
        let tight: Vec<Vec<RatVector>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut rows: Vec<RatVector> = self
                    .facets
                    .iter()
                    .filter(|f| f.is_tight(v))
                    .map(|f| f.normal.iter().map(|a| Rational::from_integer(a.clone())).collect())
                    .collect();
                for (i, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        let mut e = vec![Rational::zero(); n];
                        e[i] = Rational::from_integer(BigInt::from(1));
                        rows.push(e);
                    }
                }
                rows
            })
            .collect();
        let mut out = Vec::new();
        for u in 0..self.vertices.len() {
            for w in (u + 1)..self.vertices.len() {
                let common: Vec<RatVector> = tight[u].iter().filter(|r| tight[w].contains(r)).cloned().collect();
                if common.len() + 1 >= n && linalg::rank(&common) == n - 1 {
                    out.push((u, w));
                }
            }
        }
        out
    }
}

/// Removes duplicates and points dominating another point; the Newton
/// polyhedron is unchanged.
fn undominated(points: &[RatVector]) -> Vec<RatVector> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let keep: Vec<bool> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| !pts.iter().enumerate().any(|(j, q)| j != i && q.iter().zip(p).all(|(a, b)| a <= b)))
        .collect();
    pts.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect()
}

/// Facets of `conv(points) + R^n_+` as extreme rays of the cone of valid
/// inequalities `{ (a, b) : ⟨a, p⟩ − b ≥ 0 ∀p, a ≥ 0 }`.
fn facets_of(n: usize, points: &[RatVector]) -> Result<Vec<HalfSpace>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(points.len() + n);
    for p in points {
        let mut row: RatVector = p.clone();
        row.push(-Rational::from_integer(BigInt::from(1)));
        rows.push(primitive_integer_row(&row));
    }
    for i in 0..n {
        let mut row = vec![BigInt::zero(); n + 1];
        row[i] = BigInt::from(1);
        rows.push(row);
    }
    let rays =
        dd::extreme_rays(&rows, n + 1).ok_or_else(|| Error::Consistency("inequality cone is not pointed".into()))?;
    let mut facets = Vec::new();
    for mut r in rays {
        let offset = r.pop().expect("rays have n + 1 coordinates");
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        if offset.is_negative() {
            return Err(Error::Consistency("facet with negative offset".into()));
        }
        facets.push(HalfSpace { normal: r, offset });
    }
    Ok(facets)
}

/// `build_polyhedron` for lattice points.
pub fn build_polyhedron(points: &[Vec<u32>], n: usize) -> Result<NewtonPolyhedron> {
    NewtonPolyhedron::from_lattice_points(n, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat_vector, ratio};

    fn poly(points: &[&[u32]]) -> NewtonPolyhedron {
        let pts: Vec<Vec<u32>> = points.iter().map(|p| p.to_vec()).collect();
        build_polyhedron(&pts, pts[0].len()).unwrap()
    }

    fn hs(normal: &[i64], offset: i64) -> HalfSpace {
        HalfSpace { normal: normal.iter().map(|&a| BigInt::from(a)).collect(), offset: BigInt::from(offset) }
    }

    fn compact_facets(p: &NewtonPolyhedron) -> Vec<HalfSpace> {
        p.facets().iter().filter(|f| f.is_compact()).cloned().collect()
    }

    #[test]
    fn maximal_ideal_simplex() {
        let p = poly(&[&[1, 0], &[0, 1]]);
        assert_eq!(p.vertices(), &[rat_vector(&[0, 1]), rat_vector(&[1, 0])]);
        assert_eq!(compact_facets(&p), vec![hs(&[1, 1], 1)]);
        // coordinate facets are present and flagged non-compact
        assert!(p.facets().contains(&hs(&[1, 0], 0)));
        assert!(p.facets().contains(&hs(&[0, 1], 0)));
        for (f, c) in p.facets().iter().zip(p.compact_flags()) {
            assert_eq!(f.is_compact(), *c);
        }
    }

    #[test]
    fn diagonal_triangle() {
        let p = poly(&[&[2, 0], &[0, 3]]);
        assert_eq!(p.vertices(), &[rat_vector(&[0, 3]), rat_vector(&[2, 0])]);
        assert_eq!(compact_facets(&p), vec![hs(&[3, 2], 6)]);
    }

    #[test]
    fn non_vertex_generator_is_dropped() {
        let p = poly(&[&[3, 0], &[2, 1], &[1, 3], &[0, 4]]);
        assert_eq!(p.vertices(), &[rat_vector(&[0, 4]), rat_vector(&[2, 1]), rat_vector(&[3, 0])]);
    }

    #[test]
    fn point_on_facet_is_not_a_vertex() {
        let p = poly(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(p.vertices().len(), 2);
    }

    #[test]
    fn construction_errors() {
        assert!(build_polyhedron(&[], 2).is_err());
        assert!(build_polyhedron(&[vec![]], 0).is_err());
        assert!(build_polyhedron(&[vec![1, 0, 0]], 2).is_err());
    }

    #[test]
    fn membership() {
        let m = poly(&[&[1, 0], &[0, 1]]);
        assert!(m.contains(&[ratio(1, 2), ratio(1, 2)]).unwrap());
        let p = poly(&[&[2, 0], &[0, 3]]);
        assert!(!p.contains(&rat_vector(&[1, 1])).unwrap());
        assert!(p.contains(&rat_vector(&[1, 2])).unwrap());
        assert!(p.contains(&rat_vector(&[1])).is_err());
    }

    #[test]
    fn gauges() {
        let m = poly(&[&[1, 0], &[0, 1]]);
        assert_eq!(m.gauge(&[ratio(1, 2), ratio(1, 2)]).unwrap(), Extended::Finite(int(1)));
        let p = poly(&[&[2, 0], &[0, 3]]);
        assert_eq!(p.gauge(&rat_vector(&[1, 1])).unwrap(), Extended::Finite(ratio(6, 5)));
        assert_eq!(p.gauge(&rat_vector(&[1, 0])).unwrap(), Extended::Finite(int(2)));
        assert!(p.gauge(&rat_vector(&[0, 0])).is_err());
        let line = poly(&[&[2, 0]]);
        assert_eq!(line.gauge(&rat_vector(&[0, 1])).unwrap(), Extended::Infinite);
    }

    #[test]
    fn minkowski_sums() {
        let m = poly(&[&[1, 0], &[0, 1]]);
        let mm = m.minkowski_sum(&m).unwrap();
        assert_eq!(mm.vertices(), &[rat_vector(&[0, 2]), rat_vector(&[2, 0])]);
        assert!(mm.facets().contains(&hs(&[1, 1], 2)));
        assert!(mm.contains(&rat_vector(&[1, 1])).unwrap());
        let p = poly(&[&[2, 0], &[0, 3]]);
        let pm = p.minkowski_sum(&m).unwrap();
        assert_eq!(pm.vertices(), &[rat_vector(&[0, 4]), rat_vector(&[2, 1]), rat_vector(&[3, 0])]);
        let pp = p.minkowski_sum(&p).unwrap();
        assert_eq!(pp.vertices(), &[rat_vector(&[0, 6]), rat_vector(&[4, 0])]);
        assert_eq!(pp, p.scaled(2).unwrap());
        assert!(p.minkowski_sum(&poly(&[&[1, 1, 1]])).is_err());
    }

    #[test]
    fn intersections() {
        let p = poly(&[&[2, 0], &[0, 3]]);
        assert_eq!(p.intersect(&p).unwrap(), p);
        let q = poly(&[&[3, 0], &[0, 2]]);
        let pq = p.intersect(&q).unwrap();
        assert_eq!(compact_facets(&pq), vec![hs(&[2, 3], 6), hs(&[3, 2], 6)]);
        assert_eq!(pq.vertices(), &[rat_vector(&[0, 3]), vec![ratio(6, 5), ratio(6, 5)], rat_vector(&[3, 0])]);
        let m = poly(&[&[1, 0], &[0, 1]]);
        assert_eq!(m.intersect(&p).unwrap(), p);
    }

    #[test]
    fn covolumes() {
        assert_eq!(poly(&[&[1, 0], &[0, 1]]).covolume(), Extended::Finite(ratio(1, 2)));
        assert_eq!(poly(&[&[2, 0], &[0, 3]]).covolume(), Extended::Finite(int(3)));
        assert_eq!(poly(&[&[3, 0], &[2, 1], &[0, 4]]).covolume(), Extended::Finite(ratio(11, 2)));
        assert_eq!(poly(&[&[2, 0]]).covolume(), Extended::Infinite);
        assert_eq!(poly(&[&[0, 0]]).covolume(), Extended::zero());
        assert_eq!(poly(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]).covolume(), Extended::Finite(int(1)));
    }

    #[test]
    fn projected_measures() {
        let m = poly(&[&[1, 0], &[0, 1]]);
        let idx = m.facets().iter().position(|f| f.is_compact()).unwrap();
        assert_eq!(m.facet_projected_measure(idx).unwrap(), int(1));
        let p = poly(&[&[2, 0], &[0, 3]]);
        let idx = p.facets().iter().position(|f| f.is_compact()).unwrap();
        assert_eq!(p.facet_projected_measure_along(idx, 0).unwrap(), int(1));
        assert_eq!(p.facet_projected_measure_along(idx, 1).unwrap(), int(1));
        let one = poly(&[&[2]]);
        assert_eq!(one.facets(), &[hs(&[1], 2)]);
        assert_eq!(one.facet_projected_measure(0).unwrap(), int(1));
        let coord = m.facets().iter().position(|f| !f.is_compact()).unwrap();
        assert!(m.facet_projected_measure(coord).is_err());
    }
}
