//! Embeddings `H ⊂ G` as restriction matrices between character lattices.
//!
//! Row `i` of a matrix lists the restriction of the `i`-th coordinate
//! character of `T_G` in the coordinates of `T_H`. Classical embeddings are
//! written down on the tautological torus coordinates `e_1..e_N` and
//! converted to fundamental bases with exact rationals.
//!
//! `SL_n` block embeddings use the `GL_n` lift: the `G` shape is
//! `A_{n-1} × T1`, the extra coordinate being the polynomial degree, and
//! `H` carries one torus character per block. Those matrices have
//! denominator `n`; every restricted weight is checked to be integral.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Atom, Env, WeightExpr};
use crate::rootsys::{Family, GroupShape, Rational, SimpleLieType};

/// A block of `H` coordinates addressed as `pi`, `pi'`, `pi''` in formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub label: String,
    pub offset: usize,
    pub rank: usize,
    /// `SL_m` convention: `pi_m` is the trivial weight.
    pub zero_top: bool,
}

impl Slot {
    /// Coordinate of `pi_index`, or `None` when that weight is zero.
    pub fn coordinate(&self, index: i64) -> Result<Option<usize>> {
        if index == 0 || (self.zero_top && index == self.rank as i64 + 1) {
            return Ok(None);
        }
        if (1..=self.rank as i64).contains(&index) {
            Ok(Some(self.offset + index as usize - 1))
        } else {
            Err(Error::IndexOutOfRange {
                what: self.label.clone(),
                index,
            })
        }
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddingDescriptor {
    pub case_id: String,
    pub params: Env,
    pub g_shape: GroupShape,
    pub h_shape: GroupShape,
    /// `g_shape.dim()` rows of `h_shape.dim()` entries, scaled by `denominator`.
    pub matrix: Vec<Vec<i64>>,
    pub denominator: i64,
    pub slots: Vec<Slot>,
    /// Torus coordinate of the lift of each fundamental weight of `G`.
    pub lift: Option<Vec<i64>>,
    /// Block sizes of a `GL_n` block embedding.
    pub hat_blocks: Option<Vec<i64>>,
    /// Permutations of `H` coordinates under which results are compared.
    pub covariance: Vec<Vec<usize>>,
}

impl EmbeddingDescriptor {
    fn new(
        case_id: String,
        g_shape: GroupShape,
        h_shape: GroupShape,
        matrix: Vec<Vec<i64>>,
        denominator: i64,
        slots: Vec<Slot>,
    ) -> Result<Self> {
        if matrix.len() != g_shape.dim() || matrix.iter().any(|r| r.len() != h_shape.dim()) {
            return Err(Error::InvalidEmbedding(format!(
                "{case_id}: matrix is not {}×{}",
                g_shape.dim(),
                h_shape.dim()
            )));
        }
        Ok(EmbeddingDescriptor {
            case_id,
            params: Env::new(),
            g_shape,
            h_shape,
            matrix,
            denominator,
            slots,
            lift: None,
            hat_blocks: None,
            covariance: Vec::new(),
        })
    }

    /// The simple factor of `G`.
    pub fn g_type(&self) -> SimpleLieType {
        self.g_shape.factors[0]
    }

    pub fn g_rank(&self) -> usize {
        self.g_type().rank()
    }

    /// Writes the restriction of `v` into `out`; false if it is not integral.
    pub fn restrict_into(&self, v: &[i64], out: &mut [i64]) -> bool {
        out.iter_mut().for_each(|x| *x = 0);
        for (c, row) in v.iter().zip(&self.matrix) {
            if *c != 0 {
                for (x, a) in out.iter_mut().zip(row) {
                    *x += c * a;
                }
            }
        }
        if self.denominator != 1 {
            for x in out.iter_mut() {
                if *x % self.denominator != 0 {
                    return false;
                }
                *x /= self.denominator;
            }
        }
        true
    }

    pub fn restrict(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.g_shape.check(v)?;
        let mut out = vec![0; self.h_shape.dim()];
        if self.restrict_into(v, &mut out) {
            Ok(out)
        } else {
            Err(Error::NonIntegral(v.to_vec()))
        }
    }

    /// Full `G` coordinates of a weight given on the simple factor.
    pub fn lift_weight(&self, fund: &[i64]) -> Vec<i64> {
        let mut v = fund.to_vec();
        if let Some(lift) = &self.lift {
            v.push(lift.iter().zip(fund).map(|(a, b)| a * b).sum());
        }
        v
    }

    /// Whether two `H` weights agree after passing from `GL_n` back to `SL_n`,
    /// i.e. modulo the character `sum_b (dim V_b) chi_b`.
    pub fn same_in_sl(&self, a: &[i64], b: &[i64]) -> bool {
        let t = self.h_shape.torus_range();
        if a[..t.start] != b[..t.start] {
            return false;
        }
        let Some(sizes) = &self.hat_blocks else {
            return a == b;
        };
        let diff: Vec<i64> = a[t.clone()].iter().zip(&b[t]).map(|(x, y)| x - y).collect();
        // diff must be a rational multiple of `sizes`
        (0..diff.len()).all(|i| (0..diff.len()).all(|j| diff[i] * sizes[j] == diff[j] * sizes[i]))
    }

    /// All relabellings generated by `covariance`, identity first.
    pub fn covariance_group(&self) -> Vec<Vec<usize>> {
        let id: Vec<usize> = (0..self.h_shape.dim()).collect();
        let mut group = vec![id];
        let mut i = 0;
        while i < group.len() {
            for g in &self.covariance {
                let p: Vec<usize> = group[i].iter().map(|&k| g[k]).collect();
                if !group.contains(&p) {
                    group.push(p);
                }
            }
            i += 1;
        }
        group
    }

    pub fn summary(&self) -> String {
        format!("{} ⊃ {}", self.g_shape, self.h_shape)
    }

    /// Full `G` coordinates of a `pi_k` combination evaluated under `env`.
    pub fn g_weight_from(&self, w: &WeightExpr, env: &Env) -> Result<Vec<i64>> {
        let rank = self.g_rank();
        let mut fund = vec![0i64; rank];
        for t in &w.terms {
            let c = t.coeff.eval(env)?;
            match &t.atom {
                Atom::Pi { slot: 0, index } => {
                    let k = index.eval(env)?;
                    let zero_top = self.g_type().family() == Family::A && k == rank as i64 + 1;
                    if k == 0 || zero_top {
                        continue;
                    }
                    if !(1..=rank as i64).contains(&k) {
                        return Err(Error::IndexOutOfRange {
                            what: format!("nodes of {}", self.g_type()),
                            index: k,
                        });
                    }
                    fund[k as usize - 1] += c;
                }
                _ => return Err(Error::parse("lambda", "a G weight only uses unprimed pi_k")),
            }
        }
        Ok(self.lift_weight(&fund))
    }

    pub fn h_weight_from(&self, w: &WeightExpr, env: &Env) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.h_shape.dim()];
        let torus = self.h_shape.torus_range();
        for t in &w.terms {
            let c = t.coeff.eval(env)?;
            match &t.atom {
                Atom::Pi { slot, index } => {
                    let s = self.slots.get(*slot).ok_or_else(|| Error::IndexOutOfRange {
                        what: "factors of H".into(),
                        index: *slot as i64 + 1,
                    })?;
                    if let Some(k) = s.coordinate(index.eval(env)?)? {
                        out[k] += c;
                    }
                }
                Atom::Chi(b) => {
                    let b = b.eval(env)?;
                    if b < 1 || b as usize > torus.len() {
                        return Err(Error::IndexOutOfRange {
                            what: "torus characters of H".into(),
                            index: b,
                        });
                    }
                    out[torus.start + b as usize - 1] += c;
                }
            }
        }
        Ok(out)
    }

    /// Reads `1,0,2` (coefficients on the simple factor) or `pi1+2pi3`.
    pub fn parse_g_weight(&self, s: &str) -> Result<Vec<i64>> {
        if s.trim() == "0" {
            return Ok(self.lift_weight(&vec![0; self.g_rank()]));
        }
        if s.contains("pi") {
            return self.g_weight_from(&expr::parse_weight(s)?, &Env::new());
        }
        let fund: Vec<i64> = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::parse(s, "expected integers or pi_k terms"))
            })
            .collect::<Result<_>>()?;
        if fund.len() != self.g_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.g_rank(),
                found: fund.len(),
            });
        }
        Ok(self.lift_weight(&fund))
    }

    /// `pi1+2pi3` on the simple factor of `G`; the lifted degree is dropped.
    pub fn format_g_weight(&self, lambda: &[i64]) -> String {
        let terms = lambda[..self.g_rank()]
            .iter()
            .enumerate()
            .map(|(k, &c)| (c, format!("pi{}", k + 1)));
        join_terms(terms)
    }

    /// `H` weight in slot notation: `pi2+pi'1+chi1`.
    pub fn format_h_weight(&self, mu: &[i64]) -> String {
        let mut named: Vec<Option<String>> = vec![None; mu.len()];
        for (s, slot) in self.slots.iter().enumerate() {
            for k in 0..slot.rank {
                named[slot.offset + k] = Some(format!("pi{}{}", "'".repeat(s), k + 1));
            }
        }
        let t = self.h_shape.torus_range();
        for (b, i) in t.enumerate() {
            named[i] = Some(format!("chi{}", b + 1));
        }
        let terms = mu
            .iter()
            .zip(named)
            .enumerate()
            .map(|(i, (&c, n))| (c, n.unwrap_or_else(|| format!("w{}", i + 1))));
        join_terms(terms)
    }
}

fn join_terms(terms: impl Iterator<Item = (i64, String)>) -> String {
    let mut out = String::new();
    for (c, name) in terms.filter(|(c, _)| *c != 0) {
        let sign = if c < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        out.push_str(sign);
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for EmbeddingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.case_id, self.summary())
    }
}

/// A classical factor of `H`, described on its own tautological coordinates.
#[derive(Clone, Copy, Debug)]
enum Classical {
    Sl(usize),
    /// `Sp_{2m}`
    Sp(usize),
    Spin(usize),
}

impl Classical {
    fn eps_dim(self) -> usize {
        match self {
            Classical::Sl(m) | Classical::Sp(m) => m,
            Classical::Spin(k) => k / 2,
        }
    }

    fn factors(self) -> Vec<SimpleLieType> {
        use Family::*;
        match self {
            Classical::Sl(1) | Classical::Spin(1) => vec![],
            Classical::Sl(m) => vec![SimpleLieType::of(A, m - 1)],
            Classical::Sp(1) | Classical::Spin(3) => vec![SimpleLieType::of(A, 1)],
            Classical::Sp(m) => vec![SimpleLieType::of(C, m)],
            Classical::Spin(4) => vec![SimpleLieType::of(A, 1); 2],
            Classical::Spin(k) if k % 2 == 1 => vec![SimpleLieType::of(B, k / 2)],
            Classical::Spin(k) => vec![SimpleLieType::of(D, k / 2)],
        }
    }

    fn rank(self) -> usize {
        self.factors().iter().map(|t| t.rank()).sum()
    }

    fn label(self) -> String {
        match self {
            Classical::Sl(m) => format!("SL{m}"),
            Classical::Sp(m) => format!("Sp{}", 2 * m),
            Classical::Spin(k) => format!("Spin{k}"),
        }
    }

    /// Pairings with the simple coroots.
    fn eps_to_fund(self, x: &[Rational]) -> Vec<Rational> {
        let m = x.len();
        let two = Rational::from_integer(2);
        let chain = |upto: usize| -> Vec<Rational> { (0..upto).map(|k| x[k] - x[k + 1]).collect() };
        match self {
            Classical::Sl(_) => chain(m.saturating_sub(1)),
            Classical::Sp(_) => {
                let mut v = chain(m - 1);
                v.push(x[m - 1]);
                v
            }
            Classical::Spin(1) => vec![],
            Classical::Spin(3) => vec![two * x[0]],
            Classical::Spin(4) => vec![x[0] - x[1], x[0] + x[1]],
            Classical::Spin(k) if k % 2 == 1 => {
                let mut v = chain(m - 1);
                v.push(two * x[m - 1]);
                v
            }
            Classical::Spin(_) => {
                let mut v = chain(m - 1);
                v.push(x[m - 2] + x[m - 1]);
                v
            }
        }
    }

    fn covariance(self, offset: usize) -> Option<(usize, usize)> {
        match self {
            Classical::Spin(4) => Some((offset, offset + 1)),
            Classical::Spin(k) if k % 2 == 0 && k >= 6 => {
                let r = k / 2;
                Some((offset + r - 2, offset + r - 1))
            }
            _ => None,
        }
    }
}

/// Coordinates of `G` written on its tautological torus coordinates.
enum GroupSide {
    /// `SL_n` with the degree coordinate of `GL_n`.
    SlHat(usize),
    Sl(usize),
    /// `Sp_{2n}`
    Sp(usize),
    Spin(usize),
}

impl GroupSide {
    fn shape(&self) -> Result<GroupShape> {
        use Family::*;
        Ok(match *self {
            GroupSide::SlHat(n) => GroupShape::new(vec![SimpleLieType::new(A, n - 1)?], 1),
            GroupSide::Sl(n) => GroupShape::simple(SimpleLieType::new(A, n - 1)?),
            GroupSide::Sp(n) => GroupShape::simple(if n == 1 {
                SimpleLieType::of(A, 1)
            } else {
                SimpleLieType::new(C, n)?
            }),
            GroupSide::Spin(m) if m % 2 == 1 => GroupShape::simple(SimpleLieType::new(B, m / 2)?),
            GroupSide::Spin(m) => GroupShape::simple(SimpleLieType::new(D, m / 2)?),
        })
    }

    /// One `e`-vector per `G` coordinate.
    fn rows(&self) -> Vec<Vec<Rational>> {
        let q = Rational::from_integer;
        let prefix = |k: usize, len: usize| -> Vec<Rational> { (0..len).map(|j| q(i64::from(j < k))).collect() };
        match *self {
            GroupSide::SlHat(n) => {
                // e_n = (d - sum_k k w_k) / n and e_j = e_n + sum_{k >= j} w_k
                let mut rows: Vec<Vec<Rational>> = (1..n)
                    .map(|k| {
                        (1..=n)
                            .map(|j| q(i64::from(k >= j)) - Rational::new(k as i64, n as i64))
                            .collect()
                    })
                    .collect();
                rows.push(vec![Rational::new(1, n as i64); n]);
                rows
            }
            GroupSide::Sl(n) => (1..n).map(|k| prefix(k, n)).collect(),
            GroupSide::Sp(n) => (1..=n).map(|k| prefix(k, n)).collect(),
            GroupSide::Spin(m) => {
                let n = m / 2;
                let half = Rational::new(1, 2);
                let mut rows: Vec<Vec<Rational>> = Vec::new();
                if m % 2 == 1 {
                    rows.extend((1..n).map(|k| prefix(k, n)));
                    rows.push(vec![half; n]);
                } else {
                    rows.extend((1..n - 1).map(|k| prefix(k, n)));
                    let mut minus = vec![half; n];
                    minus[n - 1] = -half;
                    rows.push(minus);
                    rows.push(vec![half; n]);
                }
                rows
            }
        }
    }
}

/// Builds a descriptor from the images of the tautological coordinates of `G`
/// in `H`'s tautological coordinates (factor by factor, torus last).
fn assemble(
    case_id: String,
    side: GroupSide,
    images: &[Vec<Rational>],
    parts: &[Classical],
    torus: usize,
) -> Result<EmbeddingDescriptor> {
    let g_shape = side.shape()?;
    let eps_width: usize = parts.iter().map(|p| p.eps_dim()).sum::<usize>() + torus;
    debug_assert!(images.iter().all(|r| r.len() == eps_width));
    let mut rational_rows = Vec::new();
    for row in side.rows() {
        let mut h_eps = vec![Rational::zero(); eps_width];
        for (c, img) in row.iter().zip(images) {
            for (x, y) in h_eps.iter_mut().zip(img) {
                *x += c * y;
            }
        }
        let mut out = Vec::new();
        let mut start = 0;
        for p in parts {
            out.extend(p.eps_to_fund(&h_eps[start..start + p.eps_dim()]));
            start += p.eps_dim();
        }
        out.extend_from_slice(&h_eps[start..]);
        rational_rows.push(out);
    }
    let den = rational_rows.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let matrix: Vec<Vec<i64>> = rational_rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| (x * Rational::from_integer(den)).to_integer())
                .collect()
        })
        .collect();

    let factors: Vec<SimpleLieType> = parts.iter().flat_map(|p| p.factors()).collect();
    let h_shape = GroupShape::new(factors, torus);
    let mut slots = Vec::new();
    let mut covariance = Vec::new();
    let mut offset = 0;
    for p in parts {
        slots.push(Slot {
            label: p.label(),
            offset,
            rank: p.rank(),
            zero_top: matches!(p, Classical::Sl(_)),
        });
        if let Some((a, b)) = p.covariance(offset) {
            let mut perm: Vec<usize> = (0..h_shape.dim()).collect();
            perm.swap(a, b);
            covariance.push(perm);
        }
        offset += p.rank();
    }
    if den != 1 && !matches!(side, GroupSide::SlHat(_)) {
        return Err(Error::InvalidEmbedding(format!(
            "{case_id}: restriction matrix is not integral"
        )));
    }
    let mut d = EmbeddingDescriptor::new(case_id, g_shape, h_shape, matrix, den, slots)?;
    d.covariance = covariance;
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Sl,
    Sp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub size: usize,
}

impl Block {
    pub fn sl(size: usize) -> Self {
        Block {
            kind: BlockKind::Sl,
            size,
        }
    }

    pub fn sp(size: usize) -> Self {
        Block {
            kind: BlockKind::Sp,
            size,
        }
    }
}

/// Block-diagonal `SL_{a_1} × .. × SL_{a_t} × T` inside `GL_n`.
pub fn levi_block_embedding(n: usize, block_dims: &[usize]) -> Result<EmbeddingDescriptor> {
    let blocks: Vec<Block> = block_dims.iter().map(|&a| Block::sl(a)).collect();
    let mut d = classical_block_embedding(n, &blocks)?;
    let dims: Vec<String> = block_dims.iter().map(|a| a.to_string()).collect();
    d.case_id = format!("levi({})", dims.join(","));
    Ok(d)
}

/// Block-diagonal products of `Sp` and `SL` blocks inside `GL_n`. Each `Sp`
/// block preserves the form with ones on its antidiagonal.
pub fn classical_block_embedding(n: usize, blocks: &[Block]) -> Result<EmbeddingDescriptor> {
    let total: usize = blocks.iter().map(|b| b.size).sum();
    if n < 2 || total != n || blocks.iter().any(|b| b.size == 0) {
        return Err(Error::InvalidEmbedding(format!(
            "blocks {blocks:?} do not partition {n}"
        )));
    }
    if blocks
        .iter()
        .any(|b| b.kind == BlockKind::Sp && (b.size % 2 == 1 || b.size < 4))
    {
        return Err(Error::InvalidEmbedding("Sp blocks need even size at least 4".into()));
    }
    let parts: Vec<Classical> = blocks
        .iter()
        .map(|b| match b.kind {
            BlockKind::Sl => Classical::Sl(b.size),
            BlockKind::Sp => Classical::Sp(b.size / 2),
        })
        .collect();
    let t = blocks.len();
    let width: usize = parts.iter().map(|p| p.eps_dim()).sum::<usize>() + t;
    let mut images = vec![vec![Rational::zero(); width]; n];
    let (mut pos, mut seg) = (0, 0);
    for (b, (block, part)) in blocks.iter().zip(&parts).enumerate() {
        let torus_col = width - t + b;
        for k in 0..block.size {
            let row = &mut images[pos + k];
            row[torus_col] = Rational::from_integer(1);
            match block.kind {
                BlockKind::Sl => row[seg + k] = Rational::from_integer(1),
                BlockKind::Sp => {
                    let m = block.size / 2;
                    if k < m {
                        row[seg + k] = Rational::from_integer(1);
                    } else {
                        row[seg + block.size - 1 - k] = Rational::from_integer(-1);
                    }
                }
            }
        }
        pos += block.size;
        seg += part.eps_dim();
    }
    let names: Vec<String> = blocks
        .iter()
        .map(|b| match b.kind {
            BlockKind::Sl => format!("sl:{}", b.size),
            BlockKind::Sp => format!("sp:{}", b.size),
        })
        .collect();
    let mut d = assemble(
        format!("blocks({})", names.join(",")),
        GroupSide::SlHat(n),
        &images,
        &parts,
        t,
    )?;
    d.lift = Some((1..n as i64).collect());
    d.hat_blocks = Some(blocks.iter().map(|b| b.size as i64).collect());
    Ok(d)
}

/// `SO_n ⊂ SL_n` preserving the antidiagonal form.
pub fn so_in_sl(n: usize) -> Result<EmbeddingDescriptor> {
    if n < 3 {
        return Err(Error::InvalidEmbedding(format!("so_in_sl needs n >= 3, got {n}")));
    }
    let l = n / 2;
    let mut images = vec![vec![Rational::zero(); l]; n];
    for j in 0..l {
        images[j][j] = Rational::from_integer(1);
        images[n - 1 - j][j] = Rational::from_integer(-1);
    }
    let mut d = assemble(
        format!("so_in_sl({n})"),
        GroupSide::Sl(n),
        &images,
        &[Classical::Spin(n)],
        0,
    )?;
    d.slots[0].label = format!("SO{n}");
    Ok(d)
}

/// `Sp_size ⊂ SL_size` preserving the antidiagonal form.
pub fn sp_in_sl(size: usize) -> Result<EmbeddingDescriptor> {
    if size < 2 || size % 2 == 1 {
        return Err(Error::InvalidEmbedding(format!(
            "sp_in_sl needs an even size, got {size}"
        )));
    }
    let m = size / 2;
    let mut images = vec![vec![Rational::zero(); m]; size];
    for j in 0..m {
        images[j][j] = Rational::from_integer(1);
        images[size - 1 - j][j] = Rational::from_integer(-1);
    }
    assemble(
        format!("sp_in_sl({size})"),
        GroupSide::Sl(size),
        &images,
        &[Classical::Sp(m)],
        0,
    )
}

/// `Sp_2p × Sp_2q ⊂ Sp_2(p+q)`.
pub fn spsp_in_sp(p: usize, q: usize) -> Result<EmbeddingDescriptor> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidEmbedding("spsp_in_sp needs p, q >= 1".into()));
    }
    let n = p + q;
    let mut images = vec![vec![Rational::zero(); n]; n];
    for (j, row) in images.iter_mut().enumerate() {
        row[j] = Rational::from_integer(1);
    }
    assemble(
        format!("spsp_in_sp({p},{q})"),
        GroupSide::Sp(n),
        &images,
        &[Classical::Sp(p), Classical::Sp(q)],
        0,
    )
}

/// `Spin_p · Spin_q ⊂ Spin_{p+q}`.
pub fn spinspin_in_spin(p: usize, q: usize) -> Result<EmbeddingDescriptor> {
    if p == 0 || q == 0 || p == 2 || q == 2 || p + q < 5 {
        return Err(Error::InvalidEmbedding(format!(
            "spinspin_in_spin needs p, q not 0 or 2 and p + q >= 5, got ({p},{q})"
        )));
    }
    let n = (p + q) / 2;
    let (a, b) = (p / 2, q / 2);
    let mut images = vec![vec![Rational::zero(); a + b]; n];
    for (j, row) in images.iter_mut().enumerate().take(a + b) {
        row[j] = Rational::from_integer(1);
    }
    assemble(
        format!("spinspin_in_spin({p},{q})"),
        GroupSide::Spin(p + q),
        &images,
        &[Classical::Spin(p), Classical::Spin(q)],
        0,
    )
}

fn compose(left: &[Vec<i64>], right: &[Vec<i64>]) -> Vec<Vec<i64>> {
    left.iter()
        .map(|row| {
            (0..right[0].len())
                .map(|j| row.iter().zip(right).map(|(a, r)| a * r[j]).sum())
                .collect()
        })
        .collect()
}

/// `Spin_7 ⊂ SL_8`: the stabiliser of a non-isotropic line in `SO_8`,
/// moved by the triality automorphism exchanging nodes 1 and 4 of `D4`.
pub fn spin7_in_sl8() -> Result<EmbeddingDescriptor> {
    let so8 = so_in_sl(8)?;
    let b3 = spinspin_in_spin(7, 1)?;
    let mut swap = vec![vec![0i64; 4]; 4];
    for (i, j) in [(0, 3), (1, 1), (2, 2), (3, 0)] {
        swap[i][j] = 1;
    }
    let matrix = compose(&compose(&so8.matrix, &swap), &b3.matrix);
    EmbeddingDescriptor::new(
        "spin7_in_sl8".into(),
        so8.g_shape.clone(),
        b3.h_shape.clone(),
        matrix,
        1,
        vec![Slot {
            label: "Spin7".into(),
            offset: 0,
            rank: 3,
            zero_top: false,
        }],
    )
}

pub fn identity(ty: SimpleLieType) -> EmbeddingDescriptor {
    let n = ty.rank();
    let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    EmbeddingDescriptor::new(
        format!("identity:{ty}"),
        GroupShape::simple(ty),
        GroupShape::simple(ty),
        matrix,
        1,
        vec![Slot {
            label: ty.to_string(),
            offset: 0,
            rank: n,
            zero_top: ty.family() == Family::A,
        }],
    )
    .expect("square identity")
}

/// `(d, I) -> (d, I*)`. The descriptor only changes for `GL_n` lifts, whose
/// degree coordinate is dualised along with the weights.
pub fn dual_case(d: &EmbeddingDescriptor, index_set: &[usize]) -> (EmbeddingDescriptor, Vec<usize>) {
    let perm = d.g_type().dual_permutation();
    let mut out = d.clone();
    if let Some(lift) = &d.lift {
        out.lift = Some(perm.iter().map(|&p| -lift[p]).collect());
    }
    let mut dual: Vec<usize> = index_set.iter().map(|&i| perm[i]).collect();
    dual.sort_unstable();
    (out, dual)
}

/// One record of the embedding catalog data file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub id: String,
    /// Constructor call such as `sp_in_sl(2n)`, or `matrix` for explicit rows.
    pub call: String,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub constraints: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub g: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h: Vec<String>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub h_torus: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Vec<i64>>,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema_version: u32,
    pub embedding: Vec<CatalogRecord>,
}

pub const CATALOG_SCHEMA_VERSION: u32 = 1;
pub const CATALOG_TEXT: &str = include_str!("../data/embeddings.toml");

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let cat: Catalog = toml::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        if cat.schema_version != CATALOG_SCHEMA_VERSION {
            return Err(Error::Data(format!(
                "unsupported schema_version {}",
                cat.schema_version
            )));
        }
        Ok(cat)
    }

    pub fn to_text(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Data(e.to_string()))
    }

    pub fn get(&self, id: &str) -> Option<&CatalogRecord> {
        self.embedding.iter().find(|r| r.id == id)
    }
}

pub fn catalog() -> &'static Catalog {
    static CAT: OnceLock<Catalog> = OnceLock::new();
    CAT.get_or_init(|| Catalog::parse(CATALOG_TEXT).expect("bundled embedding catalog parses"))
}

impl CatalogRecord {
    /// Descriptor for a record carrying explicit rows.
    pub fn explicit(&self) -> Result<EmbeddingDescriptor> {
        let g: SimpleLieType = self.g.parse()?;
        let factors: Vec<SimpleLieType> = self.h.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let h_shape = GroupShape::new(factors.clone(), self.h_torus);
        let mut slots = Vec::new();
        let mut offset = 0;
        for t in &factors {
            slots.push(Slot {
                label: t.to_string(),
                offset,
                rank: t.rank(),
                zero_top: t.family() == Family::A,
            });
            offset += t.rank();
        }
        EmbeddingDescriptor::new(
            self.id.clone(),
            GroupShape::simple(g),
            h_shape,
            self.rows.clone(),
            1,
            slots,
        )
    }

    pub fn instantiate(&self, params: &Env) -> Result<EmbeddingDescriptor> {
        for p in &self.params {
            if !params.contains_key(p) {
                return Err(Error::MissingParam(p.clone()));
            }
        }
        for c in &self.constraints {
            if !expr::parse_cond(c)?.eval(params)? {
                return Err(Error::Constraint {
                    case: self.id.clone(),
                    constraint: c.clone(),
                });
            }
        }
        let mut d = if self.call == "matrix" {
            self.explicit()?
        } else {
            construct(&self.call, params)?
        };
        d.case_id = self.id.clone();
        d.params = self.params.iter().map(|p| (p.clone(), params[p])).collect();
        Ok(d)
    }
}

fn usize_arg(e: &expr::Expr, env: &Env) -> Result<usize> {
    let v = e.eval(env)?;
    usize::try_from(v).map_err(|_| Error::InvalidEmbedding(format!("negative argument {v}")))
}

/// Evaluates a constructor call like `blocks(sp:2p, sl:q)` under `env`.
pub fn construct(call: &str, env: &Env) -> Result<EmbeddingDescriptor> {
    let (name, args) = expr::parse_call(call)?;
    let nums = || -> Result<Vec<usize>> { args.iter().map(|(_, e)| usize_arg(e, env)).collect() };
    let arity = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::parse(call, format!("expected {k} arguments")))
        }
    };
    let mut d = match name.as_str() {
        "levi" => {
            let dims = nums()?;
            levi_block_embedding(dims.iter().sum(), &dims)?
        }
        "torus" => {
            arity(1)?;
            let n = nums()?[0];
            levi_block_embedding(n, &vec![1; n])?
        }
        "blocks" => {
            let mut blocks = Vec::new();
            for (tag, e) in &args {
                let size = usize_arg(e, env)?;
                blocks.push(match tag.as_deref() {
                    Some("sp") => Block::sp(size),
                    Some("sl") | None => Block::sl(size),
                    Some(t) => return Err(Error::parse(call, format!("unknown block kind `{t}`"))),
                });
            }
            classical_block_embedding(blocks.iter().map(|b| b.size).sum(), &blocks)?
        }
        "so_in_sl" => {
            arity(1)?;
            so_in_sl(nums()?[0])?
        }
        "sp_in_sl" => {
            arity(1)?;
            sp_in_sl(nums()?[0])?
        }
        "spsp_in_sp" => {
            arity(2)?;
            let v = nums()?;
            spsp_in_sp(v[0], v[1])?
        }
        "spinspin_in_spin" => {
            arity(2)?;
            let v = nums()?;
            spinspin_in_spin(v[0], v[1])?
        }
        "spin7_in_sl8" => {
            arity(0)?;
            spin7_in_sl8()?
        }
        "exceptional" | "matrix" => {
            return Err(Error::parse(call, "explicit matrices are catalog records"));
        }
        other => {
            arity(0)?;
            let rec = catalog()
                .get(other)
                .filter(|r| r.call == "matrix")
                .ok_or_else(|| Error::UnknownCase(other.to_string()))?;
            rec.explicit()?
        }
    };
    d.params = env.clone();
    Ok(d)
}

pub fn exceptional_embedding(case: &str) -> Result<EmbeddingDescriptor> {
    match case {
        "f4_b4" | "e6_c4" | "e6_a5a1" | "e6_f4" | "e7_a7" | "e7_d6a1" => construct(&format!("{case}()"), &Env::new()),
        _ => Err(Error::UnknownCase(case.to_string())),
    }
}

/// Resolves a user-facing embedding name: `identity:T`, `levi:a,b,..`,
/// `blocks:sp4,sl1`, or a catalog id with parameters.
pub fn resolve(spec: &str, params: &Env) -> Result<EmbeddingDescriptor> {
    if let Some(t) = spec.strip_prefix("identity:") {
        return Ok(identity(t.parse()?));
    }
    if let Some(list) = spec.strip_prefix("levi:") {
        let dims: Vec<usize> = list
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::parse(spec, "expected block sizes")))
            .collect::<Result<_>>()?;
        return levi_block_embedding(dims.iter().sum(), &dims);
    }
    if let Some(list) = spec.strip_prefix("blocks:") {
        let mut blocks = Vec::new();
        for item in list.split(',').map(str::trim) {
            let (kind, size) = if let Some(s) = item.strip_prefix("sp") {
                (BlockKind::Sp, s)
            } else if let Some(s) = item.strip_prefix("sl") {
                (BlockKind::Sl, s)
            } else {
                return Err(Error::parse(spec, "blocks look like sp4 or sl2"));
            };
            let size = size.parse().map_err(|_| Error::parse(spec, "bad block size"))?;
            blocks.push(Block { kind, size });
        }
        return classical_block_embedding(blocks.iter().map(|b| b.size).sum(), &blocks);
    }
    catalog()
        .get(spec)
        .ok_or_else(|| Error::UnknownCase(spec.to_string()))?
        .instantiate(params)
}

/// Loads the first record of a catalog-format file.
pub fn from_matrix_file(path: &std::path::Path) -> Result<EmbeddingDescriptor> {
    let text = std::fs::read_to_string(path)?;
    let cat = Catalog::parse(&text)?;
    let rec = cat
        .embedding
        .first()
        .ok_or_else(|| Error::Data("no embedding record".into()))?;
    rec.explicit()
}

/// Rows keyed by the index of the `G` fundamental weight, for display.
pub fn matrix_rows(d: &EmbeddingDescriptor) -> BTreeMap<usize, Vec<i64>> {
    d.matrix.iter().cloned().enumerate().map(|(i, r)| (i + 1, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_of_gl2() {
        let d = levi_block_embedding(2, &[1, 1]).unwrap();
        assert_eq!(d.h_shape.factors.len(), 0);
        assert_eq!(d.h_shape.torus_rank, 2);
        // pi1 lifts to e1, which lands on chi1
        assert_eq!(d.restrict(&d.lift_weight(&[1])).unwrap(), vec![1, 0]);
    }

    #[test]
    fn weight_names() {
        let d = levi_block_embedding(5, &[3, 2]).unwrap();
        assert_eq!(d.format_h_weight(&[1, 0, 1, 2, -1]), "pi1+pi'1+2chi1-chi2");
        assert_eq!(d.format_h_weight(&[0; 5]), "0");
        assert_eq!(d.format_g_weight(&[2, 0, 1, 0, 5]), "2pi1+pi3");
    }

    #[test]
    fn levi_21_first_fundamental() {
        let d = levi_block_embedding(3, &[2, 1]).unwrap();
        assert_eq!(d.restrict(&d.lift_weight(&[1, 0])).unwrap(), vec![1, 1, 0]);
        assert_eq!(d.restrict(&[0, 0, 0]).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn exceptional_rows() {
        let d = exceptional_embedding("e6_f4").unwrap();
        assert_eq!(d.matrix[1], vec![1, 0, 0, 0]);
        let d = exceptional_embedding("e7_a7").unwrap();
        assert_eq!(d.matrix[6], vec![0, 0, 0, 0, 0, 1, 0]);
        let d = exceptional_embedding("f4_b4").unwrap();
        assert_eq!(d.matrix[3], vec![1, 0, 0, 0]);
        assert!(exceptional_embedding("e8_a8").is_err());
    }

    #[test]
    fn spin7_zero_row_is_zero() {
        let d = spin7_in_sl8().unwrap();
        assert_eq!(d.restrict(&[0; 7]).unwrap(), vec![0; 3]);
        // tautological weight of SL8 lands on the spin weight of Spin7
        assert_eq!(d.restrict(&[1, 0, 0, 0, 0, 0, 0]).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn dual_index_sets() {
        let d = sp_in_sl(6).unwrap();
        assert_eq!(dual_case(&d, &[0]).1, vec![4]);
        let d = classical_block_embedding(5, &[Block::sp(4), Block::sl(1)]).unwrap();
        let (dd, i) = dual_case(&d, &[0, 3]);
        assert_eq!(i, vec![0, 3]);
        let (back, j) = dual_case(&dd, &i);
        assert_eq!(back.lift, d.lift);
        assert_eq!(j, vec![0, 3]);
        let e6 = exceptional_embedding("e6_f4").unwrap();
        assert_eq!(dual_case(&e6, &[0]).1, vec![5]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(levi_block_embedding(4, &[2, 1]).is_err());
        assert!(classical_block_embedding(5, &[Block::sp(3), Block::sl(2)]).is_err());
        assert!(so_in_sl(2).is_err());
        assert!(spinspin_in_spin(2, 5).is_err());
        assert!(resolve("nope", &Env::new()).is_err());
    }

    #[test]
    fn same_in_sl_quotient() {
        let d = levi_block_embedding(3, &[2, 1]).unwrap();
        assert!(d.same_in_sl(&[1, 1, 0], &[1, 3, 1]));
        assert!(!d.same_in_sl(&[1, 1, 0], &[1, 2, 0]));
    }
}
