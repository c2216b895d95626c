//! Simple root systems and the Weyl group action on weights.
//!
//! Weights are integer vectors in the basis of fundamental weights. Nodes
//! are numbered as in Bourbaki; every index below is 0-based, so node `i`
//! of the Dynkin diagram lives at coordinate `i - 1`.
//!
//! The Cartan matrix is `C[i][j] = <alpha_i^vee, alpha_j>`, so column `j`
//! holds `alpha_j` in fundamental coordinates and `diag(d) * C` is the Gram
//! matrix of the simple roots, with short roots of squared length 2.
//!
//! Diagram involutions `-w0` used by [`SimpleLieType::dual_permutation`]:
//!
//! | type  | node map              |
//! |-------|-----------------------|
//! | A_n   | i <-> n+1-i           |
//! | D_odd | n-1 <-> n             |
//! | E6    | 1 <-> 6, 3 <-> 5      |
//! | other | identity              |

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleLieType {
    family: Family,
    rank: usize,
}

impl SimpleLieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleLieType { family, rank })
        } else {
            Err(Error::InvalidType {
                family: family.letter(),
                rank,
            })
        }
    }

    /// Shorthand for types known to be valid. Panics otherwise.
    pub fn of(family: Family, rank: usize) -> Self {
        Self::new(family, rank).expect("valid simple type")
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Permutation of node indices induced by `-w0`.
    pub fn dual_permutation(self) -> Vec<usize> {
        let n = self.rank;
        let mut perm: Vec<usize> = (0..n).collect();
        match self.family {
            Family::A => perm.reverse(),
            Family::D if n % 2 == 1 => perm.swap(n - 2, n - 1),
            Family::E if n == 6 => {
                perm.swap(0, 5);
                perm.swap(2, 4);
            }
            _ => {}
        }
        perm
    }

    fn cartan(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            Family::B => c[n - 1][n - 2] = -2,
            Family::C => c[n - 2][n - 1] = -2,
            Family::F => c[2][1] = -2,
            Family::G => c[0][1] = -3,
            _ => {}
        }
        c
    }

    /// `d_i = (alpha_i, alpha_i) / 2`, short roots normalised to 1.
    fn symmetrizer(self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::B => (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect(),
            Family::C => (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect(),
            Family::F => vec![2, 2, 1, 1],
            Family::G => vec![1, 3],
            _ => vec![1; n],
        }
    }
}

impl fmt::Display for SimpleLieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleLieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::parse(s, "expected a type like A3 or E6"))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::parse(s, "expected a type like A3 or E6"))?;
        SimpleLieType::new(family, rank)
    }
}

impl Serialize for SimpleLieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SimpleLieType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Root datum of one simple type. Build through [`root_system`], which caches.
#[derive(Debug)]
pub struct RootSystemData {
    pub ty: SimpleLieType,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// The same roots in fundamental coordinates.
    pub positive_roots_fund: Vec<Vec<i64>>,
    pub rho: Vec<i64>,
    pub cartan_inverse: Vec<Vec<Rational>>,
    /// `(v, alpha) = root_forms[a] . v` for `v` in fundamental coordinates.
    pub root_forms: Vec<Vec<i64>>,
    /// `(alpha, alpha) / 2` per positive root.
    pub root_half_norms: Vec<i64>,
    /// `<pi_i, 2 rho^vee>`; the height used to order dominant weights.
    pub coroot_height: Vec<i64>,
    /// A second positive linear functional, for order-independence checks.
    pub alt_height: Vec<i64>,
    simple_fund: Vec<Vec<i64>>,
}

fn cache() -> &'static RwLock<HashMap<SimpleLieType, Arc<RootSystemData>>> {
    static CACHE: OnceLock<RwLock<HashMap<SimpleLieType, Arc<RootSystemData>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached root system of `ty`.
pub fn root_system(ty: SimpleLieType) -> Arc<RootSystemData> {
    if let Some(rs) = cache().read().unwrap().get(&ty) {
        return rs.clone();
    }
    let rs = Arc::new(RootSystemData::build(ty));
    cache().write().unwrap().entry(ty).or_insert(rs).clone()
}

/// Validating entry point: checks the family/rank pair, then returns the cached data.
pub fn build_root_system(family: Family, rank: usize) -> Result<Arc<RootSystemData>> {
    Ok(root_system(SimpleLieType::new(family, rank)?))
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrices are invertible");
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    inv
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl RootSystemData {
    fn build(ty: SimpleLieType) -> Self {
        let n = ty.rank();
        let cartan = ty.cartan();
        let symmetrizer = ty.symmetrizer();
        let simple_fund: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| cartan[i][j]).collect()).collect();
        let to_fund =
            |root: &[i64]| -> Vec<i64> { (0..n).map(|i| (0..n).map(|j| cartan[i][j] * root[j]).sum()).collect() };

        // String closure level by level: beta + alpha_i is a root iff the
        // alpha_i-string through beta extends upwards (q = p - <beta, alpha_i^vee> > 0).
        let mut roots: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut known: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut level = roots.clone();
        while !level.is_empty() {
            let mut next = Vec::new();
            for beta in &level {
                let fund = to_fund(beta);
                for i in 0..n {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - fund[i];
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort();
            roots.extend(next.iter().cloned());
            level = next;
        }
        roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));

        let positive_roots_fund: Vec<Vec<i64>> = roots.iter().map(|r| to_fund(r)).collect();
        let root_forms: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| (0..n).map(|j| r[j] * symmetrizer[j]).collect())
            .collect();
        let root_half_norms: Vec<i64> = roots
            .iter()
            .zip(&positive_roots_fund)
            .map(|(r, f)| {
                let norm: i64 = (0..n).map(|j| r[j] * symmetrizer[j] * f[j]).sum();
                norm / 2
            })
            .collect();

        let cartan_inverse = invert(&cartan);
        let coroot_height: Vec<i64> = (0..n)
            .map(|i| {
                let s: Rational = (0..n).map(|k| cartan_inverse[k][i]).sum::<Rational>() * 2;
                assert!(s.is_integer(), "2 rho^vee lies in the coroot lattice");
                s.to_integer()
            })
            .collect();
        // pi_i = sum_j (C^-1)_{ji} alpha_j; weigh alpha_j by j + 1.
        let alt: Vec<Rational> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| cartan_inverse[j][i] * Rational::from_integer(j as i64 + 1))
                    .sum()
            })
            .collect();
        let den = alt.iter().fold(1, |acc, x| lcm(acc, *x.denom()));
        let alt_height = alt
            .iter()
            .map(|x| (x * Rational::from_integer(den)).to_integer())
            .collect();

        RootSystemData {
            ty,
            cartan,
            symmetrizer,
            positive_roots: roots,
            positive_roots_fund,
            rho: vec![1; n],
            cartan_inverse,
            root_forms,
            root_half_norms,
            coroot_height,
            alt_height,
            simple_fund,
        }
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    /// `alpha_i` in fundamental coordinates.
    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_fund[i]
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            })
        }
    }

    /// Invariant form on fundamental coordinates: `(pi_i, pi_j) = (C^-1)_{ij} d_i`.
    pub fn inner_product(&self, v: &[i64], w: &[i64]) -> Result<Rational> {
        self.check_len(v)?;
        self.check_len(w)?;
        let mut acc = Rational::zero();
        for (i, &vi) in v.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &wj) in w.iter().enumerate().filter(|(_, x)| **x != 0) {
                acc += self.cartan_inverse[i][j] * Rational::from_integer(self.symmetrizer[i] * vi * wj);
            }
        }
        Ok(acc)
    }

    /// Applies the simple reflection `s_i` in place.
    pub fn reflect(&self, v: &mut [i64], i: usize) {
        let c = v[i];
        if c != 0 {
            for (x, a) in v.iter_mut().zip(&self.simple_fund[i]) {
                *x -= c * a;
            }
        }
    }

    /// Dominant weight in the orbit of `v`, and whether the reflection count was even.
    pub fn dominant_representative(&self, v: &[i64]) -> (Vec<i64>, bool) {
        let mut w = v.to_vec();
        let mut even = true;
        while let Some(i) = w.iter().position(|&x| x < 0) {
            self.reflect(&mut w, i);
            even = !even;
        }
        (w, even)
    }

    pub fn is_dominant(&self, v: &[i64]) -> bool {
        v.iter().all(|&x| x >= 0)
    }

    /// Visits each point of the orbit of a dominant weight exactly once,
    /// together with the parity of a shortest element reaching it.
    ///
    /// A non-dominant point `u` hangs below `s_i u`, where `i` is its first
    /// negative coordinate; walking that tree needs no visited set.
    pub fn for_each_orbit_point<F: FnMut(&[i64], bool)>(&self, dominant: &[i64], mut f: F) {
        let n = self.rank();
        debug_assert!(self.is_dominant(dominant));
        let mut stack: Vec<i64> = dominant.to_vec();
        let mut parity: Vec<bool> = vec![true];
        let mut v = vec![0i64; n];
        while let Some(even) = parity.pop() {
            let top = stack.len() - n;
            v.copy_from_slice(&stack[top..]);
            stack.truncate(top);
            f(&v, even);
            for i in 0..n {
                let c = v[i];
                if c <= 0 {
                    continue;
                }
                let a = &self.simple_fund[i];
                if (0..i).all(|j| v[j] - c * a[j] >= 0) {
                    stack.extend(v.iter().zip(a).map(|(x, y)| x - c * y));
                    parity.push(!even);
                }
            }
        }
    }

    pub fn weyl_orbit(&self, dominant: &[i64]) -> Result<Vec<Vec<i64>>> {
        self.check_len(dominant)?;
        if !self.is_dominant(dominant) {
            return Err(Error::NotDominant(dominant.to_vec()));
        }
        let mut out = Vec::new();
        self.for_each_orbit_point(dominant, |v, _| out.push(v.to_vec()));
        Ok(out)
    }

    /// Converts simple-root coordinates to fundamental coordinates.
    pub fn root_to_fund(&self, root: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.cartan[i][j] * root[j]).sum())
            .collect()
    }

    /// Converts fundamental coordinates to (rational) simple-root coordinates.
    pub fn fund_to_root(&self, v: &[i64]) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| self.cartan_inverse[j][i] * Rational::from_integer(v[i]))
                    .sum()
            })
            .collect()
    }

    pub fn height(&self, v: &[i64]) -> i64 {
        v.iter().zip(&self.coroot_height).map(|(a, b)| a * b).sum()
    }

    pub fn dual_weight(&self, v: &[i64]) -> Vec<i64> {
        let perm = self.ty.dual_permutation();
        perm.iter().map(|&p| v[p]).collect()
    }
}

/// Product of simple factors and a central torus, with coordinates laid
/// out factor by factor and the torus characters last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupShape {
    pub factors: Vec<SimpleLieType>,
    pub torus_rank: usize,
}

impl GroupShape {
    pub fn new(factors: Vec<SimpleLieType>, torus_rank: usize) -> Self {
        GroupShape { factors, torus_rank }
    }

    pub fn simple(ty: SimpleLieType) -> Self {
        Self::new(vec![ty], 0)
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|t| t.rank()).sum()
    }

    pub fn dim(&self) -> usize {
        self.semisimple_rank() + self.torus_rank
    }

    /// Coordinate range of each simple factor.
    pub fn factor_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.factors
            .iter()
            .map(|t| {
                let r = start..start + t.rank();
                start = r.end;
                r
            })
            .collect()
    }

    pub fn torus_range(&self) -> std::ops::Range<usize> {
        let s = self.semisimple_rank();
        s..s + self.torus_rank
    }

    pub fn check(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            })
        }
    }

    pub fn is_dominant(&self, v: &[i64]) -> bool {
        v[..self.semisimple_rank()].iter().all(|&x| x >= 0)
    }

    pub fn height(&self, v: &[i64]) -> i64 {
        self.factors
            .iter()
            .zip(self.factor_ranges())
            .map(|(t, r)| root_system(*t).height(&v[r]))
            .sum()
    }

    pub fn alt_height(&self, v: &[i64]) -> i64 {
        self.factors
            .iter()
            .zip(self.factor_ranges())
            .map(|(t, r)| {
                let rs = root_system(*t);
                v[r].iter().zip(&rs.alt_height).map(|(a, b)| a * b).sum::<i64>()
            })
            .sum()
    }

    /// Coefficients of [`GroupShape::height`] on every coordinate (zero on the torus).
    pub fn height_vector(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.dim());
        for t in &self.factors {
            h.extend_from_slice(&root_system(*t).coroot_height);
        }
        h.resize(self.dim(), 0);
        h
    }

    pub fn alt_height_vector(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.dim());
        for t in &self.factors {
            h.extend_from_slice(&root_system(*t).alt_height);
        }
        h.resize(self.dim(), 0);
        h
    }

    pub fn dominant_representative(&self, v: &[i64]) -> (Vec<i64>, bool) {
        let mut out = v.to_vec();
        let mut even = true;
        for (t, r) in self.factors.iter().zip(self.factor_ranges()) {
            let (w, e) = root_system(*t).dominant_representative(&v[r.clone()]);
            out[r].copy_from_slice(&w);
            even ^= !e;
        }
        (out, even)
    }

    /// `lambda*`: `-w0` on each factor, negation on the torus.
    pub fn dual_weight(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.check(v)?;
        if !self.is_dominant(v) {
            return Err(Error::NotDominant(v.to_vec()));
        }
        Ok(self.dual_coords(v))
    }

    /// Node relabelling of `-w0` without the dominance check.
    pub(crate) fn dual_coords(&self, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for (t, r) in self.factors.iter().zip(self.factor_ranges()) {
            for (k, p) in t.dual_permutation().into_iter().enumerate() {
                out[r.start + k] = v[r.start + p];
            }
        }
        for x in &mut out[self.torus_range()] {
            *x = -*x;
        }
        out
    }

    /// Permutation `i -> i*` of all coordinates (torus fixed).
    pub fn dual_node_map(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.dim()).collect();
        for (t, r) in self.factors.iter().zip(self.factor_ranges()) {
            for (k, p) in t.dual_permutation().into_iter().enumerate() {
                perm[r.start + k] = r.start + p;
            }
        }
        perm
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|t| t.to_string()).collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("×"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_small_types() -> Vec<SimpleLieType> {
        let mut v = Vec::new();
        for n in 1..=8 {
            v.push(SimpleLieType::of(Family::A, n));
        }
        for n in 2..=8 {
            v.push(SimpleLieType::of(Family::B, n));
            v.push(SimpleLieType::of(Family::C, n));
        }
        for n in 3..=8 {
            v.push(SimpleLieType::of(Family::D, n));
        }
        for n in 6..=8 {
            v.push(SimpleLieType::of(Family::E, n));
        }
        v.push(SimpleLieType::of(Family::F, 4));
        v.push(SimpleLieType::of(Family::G, 2));
        v
    }

    fn expected_count(t: SimpleLieType) -> usize {
        let n = t.rank();
        match t.family() {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!(SimpleLieType::new(Family::B, 1).is_err());
        assert!(SimpleLieType::new(Family::D, 2).is_err());
        assert!(SimpleLieType::new(Family::E, 5).is_err());
        assert!(SimpleLieType::new(Family::G, 3).is_err());
        assert!(SimpleLieType::new(Family::A, 0).is_err());
        assert!("E9".parse::<SimpleLieType>().is_err());
        assert_eq!("D4".parse::<SimpleLieType>().unwrap().to_string(), "D4");
    }

    #[test]
    fn positive_root_counts_and_two_rho() {
        for t in all_small_types() {
            let rs = root_system(t);
            assert_eq!(rs.positive_roots.len(), expected_count(t), "{t}");
            let n = t.rank();
            let mut sum = vec![0i64; n];
            for r in &rs.positive_roots {
                assert!(r.iter().all(|&x| x >= 0));
                for j in 0..n {
                    sum[j] += r[j];
                }
            }
            let two_rho = rs.root_to_fund(&sum);
            assert_eq!(two_rho, vec![2; n], "{t}");
        }
    }

    #[test]
    fn e8_dimension_from_roots() {
        let rs = root_system(SimpleLieType::of(Family::E, 8));
        assert_eq!(2 * rs.positive_roots.len() + 8, 248);
    }

    #[test]
    fn symmetrized_cartan_is_symmetric() {
        for t in all_small_types() {
            let rs = root_system(t);
            let n = t.rank();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        rs.symmetrizer[i] * rs.cartan[i][j],
                        rs.symmetrizer[j] * rs.cartan[j][i],
                        "{t}"
                    );
                }
            }
        }
    }

    #[test]
    fn small_inner_products() {
        let a1 = root_system(SimpleLieType::of(Family::A, 1));
        assert_eq!(a1.inner_product(&[1], &[1]).unwrap(), Rational::new(1, 2));
        let a2 = root_system(SimpleLieType::of(Family::A, 2));
        let (a, b) = (a2.simple_root(0).to_vec(), a2.simple_root(1).to_vec());
        assert_eq!(a2.inner_product(&a, &b).unwrap(), Rational::from_integer(-1));
        let g2 = root_system(SimpleLieType::of(Family::G, 2));
        let s = g2.simple_root(0).to_vec();
        let l = g2.simple_root(1).to_vec();
        let ratio = g2.inner_product(&l, &l).unwrap() / g2.inner_product(&s, &s).unwrap();
        assert_eq!(ratio, Rational::from_integer(3));
        assert!(a1.inner_product(&[1], &[1, 0]).is_err());
    }

    #[test]
    fn dominant_representative_examples() {
        let a1 = root_system(SimpleLieType::of(Family::A, 1));
        assert_eq!(a1.dominant_representative(&[-3]), (vec![3], false));
        let a2 = root_system(SimpleLieType::of(Family::A, 2));
        assert_eq!(a2.dominant_representative(&[1, 1]), (vec![1, 1], true));
        assert_eq!(a2.dominant_representative(&[-1, -1]).0, vec![1, 1]);
    }

    #[test]
    fn orbit_examples() {
        let a1 = root_system(SimpleLieType::of(Family::A, 1));
        let mut o = a1.weyl_orbit(&[2]).unwrap();
        o.sort();
        assert_eq!(o, vec![vec![-2], vec![2]]);
        let a2 = root_system(SimpleLieType::of(Family::A, 2));
        assert_eq!(a2.weyl_orbit(&[1, 1]).unwrap().len(), 6);
        let b2 = root_system(SimpleLieType::of(Family::B, 2));
        assert_eq!(b2.weyl_orbit(&[1, 0]).unwrap().len(), 4);
        assert!(a2.weyl_orbit(&[1, -1]).is_err());
    }

    #[test]
    fn dual_examples() {
        let a3 = GroupShape::simple(SimpleLieType::of(Family::A, 3));
        assert_eq!(a3.dual_weight(&[1, 0, 0]).unwrap(), vec![0, 0, 1]);
        let b3 = GroupShape::simple(SimpleLieType::of(Family::B, 3));
        assert_eq!(b3.dual_weight(&[1, 2, 3]).unwrap(), vec![1, 2, 3]);
        let e6 = GroupShape::simple(SimpleLieType::of(Family::E, 6));
        assert_eq!(e6.dual_weight(&[1, 0, 0, 0, 0, 0]).unwrap(), vec![0, 0, 0, 0, 0, 1]);
        let hat = GroupShape::new(vec![SimpleLieType::of(Family::A, 2)], 1);
        assert_eq!(hat.dual_weight(&[1, 0, 1]).unwrap(), vec![0, 1, -1]);
    }

    #[test]
    fn heights_are_positive_on_simple_roots() {
        for t in all_small_types() {
            let rs = root_system(t);
            for i in 0..t.rank() {
                let a = rs.simple_root(i).to_vec();
                assert_eq!(rs.height(&a), 2, "{t}");
                let alt: i64 = a.iter().zip(&rs.alt_height).map(|(x, y)| x * y).sum();
                assert!(alt > 0, "{t}");
            }
        }
    }
}
