//! Restricted branching monoids `Gamma_I(G, H)` up to a degree bound.
//!
//! Index sets are 0-based node indices of `G`. The degree (height) of
//! `lambda = sum_{i in I} a_i pi_i` is `sum a_i`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::branch;
use crate::embed::{dual_case, EmbeddingDescriptor};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaElement {
    /// Full `G` coordinates (including the degree coordinate of a `GL_n` lift).
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
}

impl GammaElement {
    pub fn zero(d: &EmbeddingDescriptor) -> Self {
        GammaElement {
            lambda: vec![0; d.g_shape.dim()],
            mu: vec![0; d.h_shape.dim()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.iter().chain(&self.mu).all(|&x| x == 0)
    }

    pub fn add(&self, other: &GammaElement) -> GammaElement {
        GammaElement {
            lambda: self.lambda.iter().zip(&other.lambda).map(|(a, b)| a + b).collect(),
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &GammaElement) -> GammaElement {
        GammaElement {
            lambda: self.lambda.iter().zip(&other.lambda).map(|(a, b)| a - b).collect(),
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| a - b).collect(),
        }
    }

    /// Degree of `lambda` on the simple factor of rank `g_rank`.
    pub fn height(&self, g_rank: usize) -> u32 {
        self.lambda[..g_rank].iter().sum::<i64>() as u32
    }

    /// `(lambda*; mu*)`.
    pub fn dual(&self, d: &EmbeddingDescriptor) -> GammaElement {
        GammaElement {
            lambda: d.g_shape.dual_coords(&self.lambda),
            mu: d.h_shape.dual_coords(&self.mu),
        }
    }

    fn relabel(&self, perm: &[usize]) -> GammaElement {
        let mut mu = self.mu.clone();
        for (k, &p) in perm.iter().enumerate() {
            mu[p] = self.mu[k];
        }
        GammaElement {
            lambda: self.lambda.clone(),
            mu,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub index_set: Vec<usize>,
    pub bound: u32,
    pub elements: BTreeSet<GammaElement>,
    pub max_multiplicity: u64,
    pub witness: Option<Witness>,
}

/// All `lambda in Lambda_I` of degree at most `bound`, by degree then coefficients.
pub fn lambda_grid(d: &EmbeddingDescriptor, index_set: &[usize], bound: u32) -> Vec<Vec<i64>> {
    let mut coeffs: Vec<Vec<u32>> = vec![vec![]];
    for _ in index_set {
        let mut next = Vec::new();
        for c in &coeffs {
            let used: u32 = c.iter().sum();
            for a in 0..=bound - used {
                let mut v = c.clone();
                v.push(a);
                next.push(v);
            }
        }
        coeffs = next;
    }
    coeffs.sort_by_key(|c| (c.iter().sum::<u32>(), std::cmp::Reverse(c.clone())));
    coeffs
        .into_iter()
        .map(|c| {
            let mut fund = vec![0i64; d.g_rank()];
            for (&i, &a) in index_set.iter().zip(&c) {
                fund[i] += i64::from(a);
            }
            d.lift_weight(&fund)
        })
        .collect()
}

fn check_index_set(d: &EmbeddingDescriptor, index_set: &[usize]) -> Result<()> {
    if index_set.is_empty() {
        return Err(Error::parse("I", "index set must be nonempty"));
    }
    for &i in index_set {
        if i >= d.g_rank() {
            return Err(Error::IndexOutOfRange {
                what: format!("nodes of {}", d.g_type()),
                index: i as i64 + 1,
            });
        }
    }
    Ok(())
}

pub fn enumerate_gamma(d: &EmbeddingDescriptor, index_set: &[usize], bound: u32) -> Result<Enumeration> {
    check_index_set(d, index_set)?;
    let grid = lambda_grid(d, index_set, bound);
    let results: Vec<branch::BranchingResult> = grid
        .par_iter()
        .map(|lambda| branch::branch(d, lambda))
        .collect::<Result<_>>()?;
    let mut elements = BTreeSet::new();
    let mut max_multiplicity = 0;
    let mut witness = None;
    for r in results {
        for (mu, &m) in &r.constituents {
            max_multiplicity = max_multiplicity.max(m);
            if m >= 2 && witness.is_none() {
                witness = Some(Witness {
                    lambda: r.lambda.clone(),
                    mu: mu.clone(),
                    multiplicity: m,
                });
            }
            elements.insert(GammaElement {
                lambda: r.lambda.clone(),
                mu: mu.clone(),
            });
        }
    }
    let mut index_set = index_set.to_vec();
    index_set.sort_unstable();
    Ok(Enumeration {
        index_set,
        bound,
        elements,
        max_multiplicity,
        witness,
    })
}

/// Elements that are not a sum of two nonzero elements, found degree by
/// degree: `e` decomposes iff `e - g` is an element for a generator `g` found
/// earlier.
pub fn indecomposables(elements: &BTreeSet<GammaElement>, g_rank: usize) -> Vec<GammaElement> {
    let mut sorted: Vec<&GammaElement> = elements.iter().filter(|e| !e.is_zero()).collect();
    sorted.sort_by_key(|e| (e.height(g_rank), (*e).clone()));
    let mut gens: Vec<GammaElement> = Vec::new();
    for e in sorted {
        let h = e.height(g_rank);
        let decomposes = gens.iter().any(|g| {
            g.height(g_rank) < h
                && g.lambda[..g_rank].iter().zip(&e.lambda).all(|(a, b)| a <= b)
                && elements.contains(&e.sub(g))
        });
        if !decomposes {
            gens.push(e.clone());
        }
    }
    gens.sort();
    gens
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Factorization {
    /// True iff every element has exactly one representation and every
    /// combination of degree at most the bound is an element.
    pub unique: bool,
    pub non_unique: Vec<(GammaElement, u64)>,
    pub outside: Vec<GammaElement>,
}

/// Counts representations as nonnegative combinations of `gens` (bounded knapsack over the degree).
pub fn factorization_counts(
    gens: &[GammaElement],
    zero: &GammaElement,
    g_rank: usize,
    bound: u32,
) -> BTreeMap<GammaElement, u64> {
    let mut counts: BTreeMap<GammaElement, u64> = BTreeMap::from([(zero.clone(), 1)]);
    for g in gens {
        let hg = g.height(g_rank);
        if hg == 0 {
            continue;
        }
        let mut next = counts.clone();
        for (k, c) in &counts {
            let mut cur = k.clone();
            let mut h = k.height(g_rank);
            while h + hg <= bound {
                cur = cur.add(g);
                h += hg;
                *next.entry(cur.clone()).or_insert(0) += c;
            }
        }
        counts = next;
    }
    counts
}

pub fn check_factorization(
    elements: &BTreeSet<GammaElement>,
    gens: &[GammaElement],
    g_rank: usize,
    bound: u32,
) -> Factorization {
    let Some(zero) = elements.iter().find(|e| e.is_zero()) else {
        return Factorization::default();
    };
    let counts = factorization_counts(gens, zero, g_rank, bound);
    let mut f = Factorization {
        unique: true,
        ..Default::default()
    };
    for e in elements {
        let c = counts.get(e).copied().unwrap_or(0);
        if c != 1 {
            f.unique = false;
            f.non_unique.push((e.clone(), c));
        }
    }
    for k in counts.keys() {
        if !elements.contains(k) {
            f.unique = false;
            f.outside.push(k.clone());
        }
    }
    f
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub generators: Vec<GammaElement>,
    pub rank: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonoidCertificate {
    pub case_id: String,
    pub params: BTreeMap<String, i64>,
    /// 1-based, as in the tables.
    pub index_set: Vec<usize>,
    pub bound: u32,
    pub elements: Vec<GammaElement>,
    pub generators: Vec<GammaElement>,
    pub free: bool,
    pub multiplicity_free: bool,
    pub max_multiplicity: u64,
    pub witness: Option<Witness>,
    pub rank_expected: Option<i64>,
    pub generators_match: Option<bool>,
    pub rank_match: Option<bool>,
    pub missing: Vec<GammaElement>,
    pub unexpected: Vec<GammaElement>,
    pub factorization: Factorization,
}

impl MonoidCertificate {
    /// Free, multiplicity free, and in agreement with the expectation if one was given.
    pub fn passed(&self) -> bool {
        self.free && self.multiplicity_free && self.generators_match != Some(false) && self.rank_match != Some(false)
    }
}

fn compare(
    d: &EmbeddingDescriptor,
    found: &[GammaElement],
    expected: &[GammaElement],
) -> (bool, Vec<GammaElement>, Vec<GammaElement>) {
    let found: BTreeSet<GammaElement> = found.iter().cloned().collect();
    let mut best: Option<(Vec<GammaElement>, Vec<GammaElement>)> = None;
    for perm in d.covariance_group() {
        let exp: BTreeSet<GammaElement> = expected.iter().map(|e| e.relabel(&perm)).collect();
        let missing: Vec<_> = exp.difference(&found).cloned().collect();
        let unexpected: Vec<_> = found.difference(&exp).cloned().collect();
        if missing.is_empty() && unexpected.is_empty() && exp.len() == expected.len() {
            return (true, vec![], vec![]);
        }
        if best
            .as_ref()
            .is_none_or(|(m, u)| missing.len() + unexpected.len() < m.len() + u.len())
        {
            best = Some((missing, unexpected));
        }
    }
    let (m, u) = best.unwrap_or_default();
    (false, m, u)
}

pub fn certify(
    d: &EmbeddingDescriptor,
    index_set: &[usize],
    bound: u32,
    expected: Option<&Expected>,
) -> Result<MonoidCertificate> {
    let g_rank = d.g_rank();
    if let Some(exp) = expected {
        let height = exp.generators.iter().map(|g| g.height(g_rank)).max().unwrap_or(0);
        if bound < 2 * height {
            return Err(Error::BoundTooSmall { bound, height });
        }
    }
    let en = enumerate_gamma(d, index_set, bound)?;
    let multiplicity_free = en.max_multiplicity <= 1;
    let mut cert = MonoidCertificate {
        case_id: d.case_id.clone(),
        params: d.params.clone(),
        index_set: en.index_set.iter().map(|i| i + 1).collect(),
        bound,
        elements: en.elements.iter().cloned().collect(),
        generators: vec![],
        free: false,
        multiplicity_free,
        max_multiplicity: en.max_multiplicity,
        witness: en.witness.clone(),
        rank_expected: expected.map(|e| e.rank),
        generators_match: None,
        rank_match: None,
        missing: vec![],
        unexpected: vec![],
        factorization: Factorization::default(),
    };
    if !multiplicity_free {
        if expected.is_some() {
            cert.generators_match = Some(false);
            cert.rank_match = Some(false);
        }
        return Ok(cert);
    }
    let gens = indecomposables(&en.elements, g_rank);
    let fact = check_factorization(&en.elements, &gens, g_rank, bound);
    cert.free = fact.unique;
    cert.factorization = fact;
    if let Some(exp) = expected {
        let (ok, missing, unexpected) = compare(d, &gens, &exp.generators);
        cert.generators_match = Some(ok);
        cert.rank_match = Some(exp.rank == gens.len() as i64 && exp.rank == exp.generators.len() as i64);
        cert.missing = missing;
        cert.unexpected = unexpected;
    }
    cert.generators = gens;
    Ok(cert)
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub index_set: Vec<usize>,
    pub dual_index_set: Vec<usize>,
    pub holds: bool,
    pub mismatches: usize,
}

/// Compares `Gamma_{I*}` with the dual image of `Gamma_I`.
pub fn duality_check(d: &EmbeddingDescriptor, index_set: &[usize], bound: u32) -> Result<DualityReport> {
    let direct = enumerate_gamma(d, index_set, bound)?;
    let (dd, dual_set) = dual_case(d, index_set);
    let dual = enumerate_gamma(&dd, &dual_set, bound)?;
    let image: BTreeSet<GammaElement> = direct.elements.iter().map(|e| e.dual(d)).collect();
    let mismatches = image.symmetric_difference(&dual.elements).count();
    Ok(DualityReport {
        index_set: index_set.iter().map(|i| i + 1).collect(),
        dual_index_set: dual_set.iter().map(|i| i + 1).collect(),
        holds: mismatches == 0,
        mismatches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Sumset {
    pub weights: BTreeSet<Vec<i64>>,
    /// Every element of the sumset occurs in `R(pi_i + pi_j)`.
    pub contained: bool,
}

/// `M(i) + M(j)`, with `M(i)` the constituents of `R(pi_i)`.
pub fn sumset_w(d: &EmbeddingDescriptor, i: usize, j: usize) -> Result<Sumset> {
    check_index_set(d, &[i, j])?;
    let unit = |k: usize| {
        let mut f = vec![0; d.g_rank()];
        f[k] = 1;
        f
    };
    let mi = branch::branch(d, &d.lift_weight(&unit(i)))?;
    let mj = branch::branch(d, &d.lift_weight(&unit(j)))?;
    let mut both = unit(i);
    both[j] += 1;
    let mij = branch::branch(d, &d.lift_weight(&both))?;
    let mut weights = BTreeSet::new();
    for a in mi.constituents.keys() {
        for b in mj.constituents.keys() {
            weights.insert(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>());
        }
    }
    let contained = weights.iter().all(|w| mij.multiplicity(w) > 0);
    Ok(Sumset { weights, contained })
}
