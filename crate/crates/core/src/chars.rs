//! Weight multiplicities (Freudenthal) and dimensions (Weyl).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::rootsys::{root_system, GroupShape, RootSystemData, SimpleLieType};

/// Dominant weights of an irreducible module with their multiplicities,
/// highest weight first.
#[derive(Clone, Debug)]
pub struct DominantCharacter {
    pub ty: SimpleLieType,
    pub highest: Vec<i64>,
    pub weights: Vec<(Vec<i64>, u64)>,
}

impl DominantCharacter {
    pub fn get(&self, mu: &[i64]) -> u64 {
        self.weights.iter().find(|(w, _)| w == mu).map_or(0, |(_, m)| *m)
    }

    pub fn as_map(&self) -> BTreeMap<Vec<i64>, u64> {
        self.weights.iter().cloned().collect()
    }
}

type CharCache = RwLock<HashMap<(SimpleLieType, Vec<i64>), Arc<DominantCharacter>>>;

fn cache() -> &'static CharCache {
    static CACHE: OnceLock<CharCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Multiplicities of the dominant weights of `R(lambda)`. Memoised per `(ty, lambda)`.
pub fn dominant_character(ty: SimpleLieType, lambda: &[i64]) -> Result<Arc<DominantCharacter>> {
    let rs = root_system(ty);
    if lambda.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: lambda.len(),
        });
    }
    if !rs.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let key = (ty, lambda.to_vec());
    if let Some(c) = cache().read().unwrap().get(&key) {
        return Ok(c.clone());
    }
    let weights = freudenthal(&rs, lambda)?;
    let ch = Arc::new(DominantCharacter {
        ty,
        highest: lambda.to_vec(),
        weights,
    });
    Ok(cache().write().unwrap().entry(key).or_insert(ch).clone())
}

/// Dominant weights below `lambda`, each with `lambda - mu` in root coordinates.
///
/// Covering relations among dominant weights differ by a single positive
/// root, so a search through dominant weights alone reaches all of them.
fn dominant_weights(rs: &RootSystemData, lambda: &[i64]) -> Vec<(Vec<i64>, Vec<i64>)> {
    let n = rs.rank();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    seen.insert(lambda.to_vec(), vec![0; n]);
    let mut queue = VecDeque::from([lambda.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        let depth = seen[&mu].clone();
        for (root, fund) in rs.positive_roots.iter().zip(&rs.positive_roots_fund) {
            let nu: Vec<i64> = mu.iter().zip(fund).map(|(a, b)| a - b).collect();
            if rs.is_dominant(&nu) && !seen.contains_key(&nu) {
                let d: Vec<i64> = depth.iter().zip(root).map(|(a, b)| a + b).collect();
                seen.insert(nu.clone(), d);
                queue.push_back(nu);
            }
        }
    }
    let mut out: Vec<(Vec<i64>, Vec<i64>)> = seen.into_iter().collect();
    out.sort_by(|a, b| {
        let ha: i64 = a.1.iter().sum();
        let hb: i64 = b.1.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    out
}

fn freudenthal(rs: &RootSystemData, lambda: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
    let n = rs.rank();
    let d = &rs.symmetrizer;
    let levels = dominant_weights(rs, lambda);
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::with_capacity(levels.len());
    let mut out = Vec::with_capacity(levels.len());
    let mut nu = vec![0i64; n];
    for (mu, depth) in &levels {
        if depth.iter().all(|&c| c == 0) {
            mult.insert(mu.clone(), 1);
            out.push((mu.clone(), 1));
            continue;
        }
        // (lambda+rho)^2 - (mu+rho)^2 = (lambda - mu, lambda + mu + 2 rho)
        let den: i128 = (0..n)
            .map(|k| i128::from(depth[k] * d[k] * (lambda[k] + mu[k] + 2)))
            .sum();
        let mut num: i128 = 0;
        for ((fund, form), half) in rs
            .positive_roots_fund
            .iter()
            .zip(&rs.root_forms)
            .zip(&rs.root_half_norms)
        {
            let base: i64 = form.iter().zip(mu).map(|(a, b)| a * b).sum();
            nu.copy_from_slice(mu);
            let mut k = 1i64;
            loop {
                for (x, a) in nu.iter_mut().zip(fund) {
                    *x += a;
                }
                let (dom, _) = rs.dominant_representative(&nu);
                let m = match mult.get(&dom) {
                    Some(&m) => m,
                    None => break,
                };
                num += i128::from(m) * i128::from(base + 2 * k * half);
                k += 1;
            }
        }
        num *= 2;
        assert!(den > 0 && num % den == 0, "Freudenthal division must be exact");
        let m = i64::try_from(num / den).map_err(|_| Error::Overflow("weight multiplicity"))?;
        if m > 0 {
            mult.insert(mu.clone(), m);
            out.push((mu.clone(), m as u64));
        }
    }
    out.sort_by(|a, b| rs.height(&b.0).cmp(&rs.height(&a.0)).then_with(|| b.0.cmp(&a.0)));
    Ok(out)
}

/// Dominant part of the character of `R(lambda)` for a product shape:
/// the product of the factor characters, torus coordinates carried along.
pub fn dominant_character_shape(shape: &GroupShape, lambda: &[i64]) -> Result<Vec<(Vec<i64>, u64)>> {
    shape.check(lambda)?;
    let mut acc: Vec<(Vec<i64>, u64)> = vec![(Vec::with_capacity(shape.dim()), 1)];
    for (ty, r) in shape.factors.iter().zip(shape.factor_ranges()) {
        let ch = dominant_character(*ty, &lambda[r])?;
        let mut next = Vec::with_capacity(acc.len() * ch.weights.len());
        for (w, m) in &acc {
            for (v, k) in &ch.weights {
                let mut x = w.clone();
                x.extend_from_slice(v);
                next.push((x, m * k));
            }
        }
        acc = next;
    }
    let torus = &lambda[shape.torus_range()];
    for (w, _) in &mut acc {
        w.extend_from_slice(torus);
    }
    Ok(acc)
}

/// Finite weight multiset over a group shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterMultiset {
    pub shape: GroupShape,
    pub entries: BTreeMap<Vec<i64>, u64>,
}

impl CharacterMultiset {
    pub fn new(shape: GroupShape) -> Self {
        CharacterMultiset {
            shape,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, weight: Vec<i64>, mult: u64) {
        if mult > 0 {
            *self.entries.entry(weight).or_insert(0) += mult;
        }
    }

    pub fn get(&self, weight: &[i64]) -> u64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    pub fn mass(&self) -> u128 {
        self.entries.values().map(|&m| u128::from(m)).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &CharacterMultiset) -> CharacterMultiset {
        let mut out = CharacterMultiset::new(self.shape.clone());
        for (a, m) in &self.entries {
            for (b, k) in &other.entries {
                let w = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add(w, m * k);
            }
        }
        out
    }

    pub fn merge(&mut self, other: &CharacterMultiset, times: u64) {
        for (w, m) in &other.entries {
            self.add(w.clone(), m * times);
        }
    }

    /// Folds every weight to its dominant representative, keeping only the
    /// dominant entries' counts (one per orbit).
    pub fn dominant_part(&self) -> BTreeMap<Vec<i64>, u64> {
        self.entries
            .iter()
            .filter(|(w, _)| self.shape.is_dominant(w))
            .map(|(w, m)| (w.clone(), *m))
            .collect()
    }
}

/// Streams every weight of `R(lambda)` with its multiplicity.
///
/// A single simple factor is walked orbit by orbit without materialising
/// anything; several factors are combined from their per-factor characters.
pub fn for_each_weight<F: FnMut(&[i64], u64)>(shape: &GroupShape, lambda: &[i64], mut f: F) -> Result<()> {
    shape.check(lambda)?;
    if !shape.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let torus = &lambda[shape.torus_range()];
    let ss = shape.semisimple_rank();
    let mut buf = lambda.to_vec();
    if shape.factors.len() == 1 {
        let ty = shape.factors[0];
        let rs = root_system(ty);
        let ch = dominant_character(ty, &lambda[..ss])?;
        for (mu, m) in &ch.weights {
            rs.for_each_orbit_point(mu, |v, _| {
                buf[..ss].copy_from_slice(v);
                f(&buf, *m);
            });
        }
        return Ok(());
    }
    let mut lists: Vec<Vec<(Vec<i64>, u64)>> = Vec::new();
    for (ty, r) in shape.factors.iter().zip(shape.factor_ranges()) {
        let rs = root_system(*ty);
        let ch = dominant_character(*ty, &lambda[r])?;
        let mut all = Vec::new();
        for (mu, m) in &ch.weights {
            rs.for_each_orbit_point(mu, |v, _| all.push((v.to_vec(), *m)));
        }
        lists.push(all);
    }
    buf[ss..].copy_from_slice(torus);
    let ranges = shape.factor_ranges();
    fn rec<F: FnMut(&[i64], u64)>(
        k: usize,
        acc: u64,
        lists: &[Vec<(Vec<i64>, u64)>],
        ranges: &[std::ops::Range<usize>],
        buf: &mut Vec<i64>,
        f: &mut F,
    ) {
        if k == lists.len() {
            f(buf, acc);
            return;
        }
        for (v, m) in &lists[k] {
            buf[ranges[k].clone()].copy_from_slice(v);
            rec(k + 1, acc * m, lists, ranges, buf, f);
        }
    }
    rec(0, 1, &lists, &ranges, &mut buf, &mut f);
    Ok(())
}

pub fn full_character(shape: &GroupShape, lambda: &[i64]) -> Result<CharacterMultiset> {
    let mut out = CharacterMultiset::new(shape.clone());
    for_each_weight(shape, lambda, |w, m| out.add(w.to_vec(), m))?;
    Ok(out)
}

/// Weyl dimension formula, multiplied over the simple factors.
pub fn dimension(shape: &GroupShape, lambda: &[i64]) -> Result<u128> {
    shape.check(lambda)?;
    if !shape.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (ty, r) in shape.factors.iter().zip(shape.factor_ranges()) {
        let rs = root_system(*ty);
        let v = &lambda[r];
        for form in &rs.root_forms {
            let top: i64 = form.iter().zip(v).map(|(a, b)| a * (b + 1)).sum();
            let bottom: i64 = form.iter().sum();
            num *= BigUint::from(top as u64);
            den *= BigUint::from(bottom as u64);
        }
    }
    let q = &num / &den;
    debug_assert_eq!(&q * &den, num);
    q.to_u128().ok_or(Error::Overflow("dimension"))
}

/// Dimension of a simple-type module.
pub fn dimension_simple(ty: SimpleLieType, lambda: &[i64]) -> Result<u128> {
    dimension(&GroupShape::simple(ty), lambda)
}
