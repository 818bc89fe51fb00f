//! Facet volumes by recursive pulling triangulation over the face lattice.

use num_traits::{Signed, Zero};

use super::linalg::{affine_dimension, determinant};
use super::NewtonPolyhedron;
use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// Volume of facet `index` projected along coordinate `coord`, as an
/// `(n−1)`-dimensional volume in the remaining coordinates.
pub(super) fn projected_facet_volume(p: &NewtonPolyhedron, index: usize, coord: usize) -> Result<Rational> {
    let n = p.dim();
    let incidence: Vec<Vec<usize>> = (0..p.facets().len()).map(|f| p.facet_vertices(f)).collect();
    let face = incidence[index].clone();
    let k = n - 1;
    if face_dimension(p, &face) != Some(k) {
        return Err(Error::Consistency(format!("facet {index} is not {k}-dimensional")));
    }
    let simplices = triangulate(p, &incidence, &face, k);
    let project = |v: usize| -> Vec<Rational> {
        p.vertices()[v].iter().enumerate().filter(|(i, _)| *i != coord).map(|(_, x)| x.clone()).collect()
    };
    let mut total = Rational::zero();
    for s in &simplices {
        let base = project(s[0]);
        let rows: Vec<Vec<Rational>> =
            s[1..].iter().map(|&v| project(v).iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
        total += determinant(&rows).abs();
    }
    Ok(total / Rational::from_integer(factorial(k)))
}

fn face_dimension(p: &NewtonPolyhedron, face: &[usize]) -> Option<usize> {
    let pts: Vec<&[Rational]> = face.iter().map(|&v| p.vertices()[v].as_slice()).collect();
    affine_dimension(&pts)
}

/// Pulling triangulation of a bounded face of dimension `k`: cone from its
/// smallest vertex over the triangulated sub-faces that avoid it.
fn triangulate(p: &NewtonPolyhedron, incidence: &[Vec<usize>], face: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut subfaces: Vec<Vec<usize>> = Vec::new();
    for inc in incidence {
        let sub: Vec<usize> = face.iter().copied().filter(|v| inc.binary_search(v).is_ok()).collect();
        if sub.len() == face.len() || sub.len() < k || sub.contains(&apex) {
            continue;
        }
        if face_dimension(p, &sub) == Some(k - 1) {
            subfaces.push(sub);
        }
    }
    subfaces.sort();
    subfaces.dedup();
    let mut out = Vec::new();
    for sub in subfaces {
        for mut s in triangulate(p, incidence, &sub, k - 1) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}
