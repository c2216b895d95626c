//! Branching by restriction of characters and highest-weight stripping.

use std::collections::{BTreeMap, HashMap};

use crate::chars::{self, CharacterMultiset};
use crate::embed::EmbeddingDescriptor;
use crate::error::{Error, Result};
use crate::rootsys::GroupShape;

/// Linear extension of the dominance order used to pick the next highest weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StripOrder {
    /// `(mu, 2 rho^vee)` descending, ties broken lexicographically (largest first).
    #[default]
    CorootHeight,
    /// A different positive functional, ties broken reverse-lexicographically.
    AltHeight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingResult {
    pub case_id: String,
    pub lambda: Vec<i64>,
    pub constituents: BTreeMap<Vec<i64>, u64>,
}

impl BranchingResult {
    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.constituents.get(mu).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.constituents.values().copied().max().unwrap_or(0)
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    /// Constituents by decreasing height, the order used in reports.
    pub fn sorted(&self, h_shape: &GroupShape) -> Vec<(Vec<i64>, u64)> {
        let hv = h_shape.height_vector();
        let mut v: Vec<(Vec<i64>, u64)> = self.constituents.iter().map(|(k, m)| (k.clone(), *m)).collect();
        v.sort_by_key(|(w, _)| (std::cmp::Reverse(dot(&hv, w)), std::cmp::Reverse(w.clone())));
        v
    }

    /// `sum m * dim(mu)` against `dim(lambda)`.
    pub fn dimension_check(&self, d: &EmbeddingDescriptor) -> Result<(u128, u128)> {
        let mut total = 0u128;
        for (mu, m) in &self.constituents {
            total += u128::from(*m) * chars::dimension(&d.h_shape, mu)?;
        }
        Ok((total, chars::dimension(&d.g_shape, &self.lambda)?))
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `H`-dominant part of the restricted character of `R_G(lambda)`.
pub fn restricted_dominant(d: &EmbeddingDescriptor, lambda: &[i64]) -> Result<HashMap<Vec<i64>, i64>> {
    let mut acc: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut out = vec![0i64; d.h_shape.dim()];
    let mut bad: Option<Vec<i64>> = None;
    let ss = d.h_shape.semisimple_rank();
    chars::for_each_weight(&d.g_shape, lambda, |w, m| {
        if !d.restrict_into(w, &mut out) {
            bad.get_or_insert_with(|| w.to_vec());
            return;
        }
        if out[..ss].iter().all(|&x| x >= 0) {
            let m = m as i64;
            match acc.get_mut(out.as_slice()) {
                Some(c) => *c += m,
                None => {
                    acc.insert(out.clone(), m);
                }
            }
        }
    })?;
    match bad {
        Some(w) => Err(Error::NonIntegral(w)),
        None => Ok(acc),
    }
}

/// Peels irreducible characters off a dominant weight multiset.
pub fn strip(
    h_shape: &GroupShape,
    dominant: HashMap<Vec<i64>, i64>,
    order: StripOrder,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    let (hv, flip) = match order {
        StripOrder::CorootHeight => (h_shape.height_vector(), false),
        StripOrder::AltHeight => (h_shape.alt_height_vector(), true),
    };
    let key = |w: &[i64]| -> (i64, Vec<i64>) {
        let k = if flip {
            w.iter().map(|x| -x).collect()
        } else {
            w.to_vec()
        };
        (dot(&hv, w), k)
    };
    let unkey = |k: &[i64]| -> Vec<i64> {
        if flip {
            k.iter().map(|x| -x).collect()
        } else {
            k.to_vec()
        }
    };
    let mut rest: BTreeMap<(i64, Vec<i64>), i64> = dominant
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(w, c)| (key(&w), c))
        .collect();
    let mut out = BTreeMap::new();
    while let Some(((_, k), count)) = rest.pop_last() {
        let mu = unkey(&k);
        if count < 0 {
            return Err(Error::NegativeMultiplicity { weight: mu, count });
        }
        for (nu, m) in chars::dominant_character_shape(h_shape, &mu)? {
            if nu == mu {
                continue;
            }
            let kk = key(&nu);
            let e = rest.entry(kk).or_insert(0);
            *e -= count * m as i64;
            if *e == 0 {
                let kk = key(&nu);
                rest.remove(&kk);
            }
        }
        out.insert(mu, count as u64);
    }
    Ok(out)
}

pub fn branch(d: &EmbeddingDescriptor, lambda: &[i64]) -> Result<BranchingResult> {
    branch_with_order(d, lambda, StripOrder::default())
}

pub fn branch_with_order(d: &EmbeddingDescriptor, lambda: &[i64], order: StripOrder) -> Result<BranchingResult> {
    let dominant = restricted_dominant(d, lambda)?;
    Ok(BranchingResult {
        case_id: d.case_id.clone(),
        lambda: lambda.to_vec(),
        constituents: strip(&d.h_shape, dominant, order)?,
    })
}

/// `m_lambda(mu)`.
pub fn multiplicity(d: &EmbeddingDescriptor, lambda: &[i64], mu: &[i64]) -> Result<u64> {
    Ok(branch(d, lambda)?.multiplicity(mu))
}

/// `coeff * R(f_1) ⊗ .. ⊗ R(f_k)`; no factors means the trivial module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: u64,
    pub factors: Vec<Vec<i64>>,
}

impl Term {
    pub fn irreducible(lambda: Vec<i64>) -> Self {
        Term {
            coeff: 1,
            factors: vec![lambda],
        }
    }

    pub fn tensor(factors: Vec<Vec<i64>>) -> Self {
        Term { coeff: 1, factors }
    }
}

fn terms_character(shape: &GroupShape, terms: &[Term]) -> Result<CharacterMultiset> {
    let mut total = CharacterMultiset::new(shape.clone());
    for t in terms {
        let mut ch = CharacterMultiset::new(shape.clone());
        ch.add(vec![0; shape.dim()], 1);
        for f in &t.factors {
            ch = ch.tensor(&chars::full_character(shape, f)?);
        }
        total.merge(&ch, t.coeff);
    }
    Ok(total)
}

/// Decomposes a formal combination of `G`-modules (tensor products allowed) over `H`.
pub fn branch_terms(d: &EmbeddingDescriptor, terms: &[Term]) -> Result<BTreeMap<Vec<i64>, u64>> {
    let ch = terms_character(&d.g_shape, terms)?;
    let mut dominant: HashMap<Vec<i64>, i64> = HashMap::new();
    for (w, m) in &ch.entries {
        let r = d.restrict(w)?;
        if d.h_shape.is_dominant(&r) {
            *dominant.entry(r).or_insert(0) += *m as i64;
        }
    }
    strip(&d.h_shape, dominant, StripOrder::default())
}

/// Whether both sides restrict to the same `H`-module.
pub fn verify_identity(d: &EmbeddingDescriptor, lhs: &[Term], rhs: &[Term]) -> Result<bool> {
    Ok(branch_terms(d, lhs)? == branch_terms(d, rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{exceptional_embedding, identity, so_in_sl, sp_in_sl, spin7_in_sl8};
    use crate::rootsys::{Family, SimpleLieType};

    fn map(entries: &[(&[i64], u64)]) -> BTreeMap<Vec<i64>, u64> {
        entries.iter().map(|(w, m)| (w.to_vec(), *m)).collect()
    }

    #[test]
    fn so7_vector() {
        let d = so_in_sl(7).unwrap();
        let r = branch(&d, &[1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(r.constituents, map(&[(&[1, 0, 0], 1)]));
    }

    #[test]
    fn e6_f4_first() {
        let d = exceptional_embedding("e6_f4").unwrap();
        let r = branch(&d, &[1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(r.constituents, map(&[(&[0, 0, 0, 1], 1), (&[0, 0, 0, 0], 1)]));
        assert_eq!(r.dimension_check(&d).unwrap(), (27, 27));
    }

    #[test]
    fn identity_is_identity() {
        let d = identity(SimpleLieType::of(Family::G, 2));
        let r = branch(&d, &[1, 2]).unwrap();
        assert_eq!(r.constituents, map(&[(&[1, 2], 1)]));
    }

    #[test]
    fn sp6_third_wedge() {
        let d = sp_in_sl(6).unwrap();
        let r = branch(&d, &[0, 0, 1, 0, 0]).unwrap();
        assert_eq!(r.constituents, map(&[(&[0, 0, 1], 1), (&[1, 0, 0], 1)]));
    }

    #[test]
    fn spin7_second_wedge() {
        let d = spin7_in_sl8().unwrap();
        let r = branch(&d, &[0, 1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(r.constituents, map(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]));
        let r = branch(&d, &[0, 2, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(r.multiplicity(&[0, 0, 2]), 1);
        assert_eq!(r.multiplicity(&[0, 0, 0]), 1);
        assert_eq!(multiplicity(&d, &[0, 1, 0, 0, 0, 0, 0], &[1, 0, 0]).unwrap(), 1);
    }

    #[test]
    fn trivial_multiplicity() {
        let d = so_in_sl(5).unwrap();
        assert_eq!(multiplicity(&d, &[0, 0, 0, 0], &[0, 0]).unwrap(), 1);
    }

    #[test]
    fn orders_agree() {
        let d = exceptional_embedding("f4_b4").unwrap();
        for l in [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 2, 0]] {
            let a = branch_with_order(&d, &l, StripOrder::CorootHeight).unwrap();
            let b = branch_with_order(&d, &l, StripOrder::AltHeight).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn bad_matrix_surfaces() {
        // A "restriction" that is not induced by a subgroup.
        let mut d = identity(SimpleLieType::of(Family::A, 2));
        d.matrix = vec![vec![1, 0], vec![1, 0]];
        d.h_shape = GroupShape::simple(SimpleLieType::of(Family::A, 2));
        assert!(matches!(branch(&d, &[1, 1]), Err(Error::NegativeMultiplicity { .. })));
    }

    #[test]
    fn tensor_with_trivial() {
        let d = identity(SimpleLieType::of(Family::B, 2));
        let lhs = [Term::tensor(vec![vec![1, 1], vec![0, 0]])];
        let rhs = [Term::irreducible(vec![1, 1])];
        assert!(verify_identity(&d, &lhs, &rhs).unwrap());
    }
}
