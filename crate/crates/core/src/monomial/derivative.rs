use super::{for_each_in_box, minimize, ExponentVector, MonomialIdeal};
use crate::error::{Error, Result};

/// Exponents `α + e_i − e_j` for `α_j > 0`, together with `α`.
fn shifts(alpha: &ExponentVector) -> impl Iterator<Item = ExponentVector> + '_ {
    let n = alpha.len();
    (0..n).flat_map(move |j| (0..n).map(move |i| (i, j))).filter(|&(i, j)| i != j && alpha.0[j] > 0).map(move |(i, j)| {
        let mut e = alpha.0.clone();
        e[j] -= 1;
        e[i] += 1;
        ExponentVector(e)
    })
}

/// `D(I)`, generated by `f` and `z_i ∂f/∂z_j` over the generators.
pub fn derivative_ideal(ideal: &MonomialIdeal) -> MonomialIdeal {
    let mut gens = Vec::new();
    for g in ideal.generators() {
        gens.push(g.clone());
        gens.extend(shifts(g));
    }
    MonomialIdeal { n: ideal.dim(), generators: minimize(gens) }
}

/// `D̄(I)`: monomials `β ∈ D(I)` all of whose shifts stay in `D(I)`.
pub fn dbar_ideal(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let d = derivative_ideal(ideal);
    let bounds: Vec<u32> = d.bounding_box().iter().map(|b| b + 1).collect();
    let qualifies = |beta: &ExponentVector| d.contains(beta) && shifts(beta).all(|s| d.contains(&s));

    let mut members = Vec::new();
    for_each_in_box(&bounds, |beta| {
        if qualifies(beta) {
            members.push(beta.clone());
        }
    });
    for beta in &members {
        for i in 0..beta.len() {
            let mut up = beta.clone();
            up.0[i] += 1;
            if !qualifies(&up) {
                return Err(Error::Consistency(format!("qualifying set not closed: {beta} qualifies, {up} does not")));
            }
        }
    }
    if members.is_empty() {
        return Err(Error::Consistency("no qualifying monomial found".into()));
    }
    Ok(MonomialIdeal { n: ideal.dim(), generators: minimize(members) })
}
