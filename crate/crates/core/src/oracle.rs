//! Branching multiplicities from the Weyl alternating sum over `W_H`.
//!
//! This path never touches the stripping loop or `H`-side characters:
//! `m_lambda(mu) = sum_w sgn(w) c(w(mu + rho_H) - rho_H)`, where `c` is the
//! full restricted character of `R_G(lambda)`.

use std::collections::HashMap;

use crate::chars;
use crate::embed::EmbeddingDescriptor;
use crate::error::{Error, Result};
use crate::rootsys::{root_system, GroupShape};

/// Every weight of the restriction of `R_G(lambda)` to `T_H`.
pub fn restricted_full_character(d: &EmbeddingDescriptor, lambda: &[i64]) -> Result<HashMap<Vec<i64>, i64>> {
    let mut acc: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut bad = None;
    let mut out = vec![0i64; d.h_shape.dim()];
    chars::for_each_weight(&d.g_shape, lambda, |w, m| {
        if d.restrict_into(w, &mut out) {
            *acc.entry(out.clone()).or_insert(0) += m as i64;
        } else {
            bad.get_or_insert_with(|| w.to_vec());
        }
    })?;
    match bad {
        Some(w) => Err(Error::NonIntegral(w)),
        None => Ok(acc),
    }
}

/// Signed orbit of the regular weight `mu + rho` under the Weyl group of `shape`.
fn signed_orbit(shape: &GroupShape, regular: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let mut acc: Vec<(Vec<i64>, i64)> = vec![(regular.to_vec(), 1)];
    for (t, r) in shape.factors.iter().zip(shape.factor_ranges()) {
        let rs = root_system(*t);
        let mut orbit = Vec::new();
        rs.for_each_orbit_point(&regular[r.clone()], |v, even| {
            orbit.push((v.to_vec(), if even { 1 } else { -1 }))
        });
        let mut next = Vec::with_capacity(acc.len() * orbit.len());
        for (w, s) in &acc {
            for (v, e) in &orbit {
                let mut x = w.clone();
                x[r.clone()].copy_from_slice(v);
                next.push((x, s * e));
            }
        }
        acc = next;
    }
    acc
}

/// Alternating sum evaluated against a precomputed restricted character.
pub fn alternating_sum(shape: &GroupShape, restricted: &HashMap<Vec<i64>, i64>, mu: &[i64]) -> i64 {
    let ss = shape.semisimple_rank();
    let mut regular = mu.to_vec();
    for x in &mut regular[..ss] {
        *x += 1;
    }
    signed_orbit(shape, &regular)
        .into_iter()
        .map(|(mut v, s)| {
            for x in &mut v[..ss] {
                *x -= 1;
            }
            s * restricted.get(&v).copied().unwrap_or(0)
        })
        .sum()
}

pub fn alternating_sum_multiplicity(d: &EmbeddingDescriptor, lambda: &[i64], mu: &[i64]) -> Result<i64> {
    d.h_shape.check(mu)?;
    if !d.h_shape.is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_vec()));
    }
    let c = restricted_full_character(d, lambda)?;
    Ok(alternating_sum(&d.h_shape, &c, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::branch;
    use crate::embed::sp_in_sl;

    #[test]
    fn sp4_in_sl4_adjoint() {
        let d = sp_in_sl(4).unwrap();
        let lambda = [1, 0, 1];
        let engine = branch(&d, &lambda).unwrap();
        let c = restricted_full_character(&d, &lambda).unwrap();
        for mu in [[0, 1], [2, 0], [1, 0], [0, 0], [0, 2]] {
            assert_eq!(
                alternating_sum(&d.h_shape, &c, &mu),
                engine.multiplicity(&mu) as i64,
                "{mu:?}"
            );
        }
        assert_eq!(engine.multiplicity(&[0, 1]), 1);
    }
}
