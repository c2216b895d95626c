//! Oracles that share no code with the library: Cartan matrices written out
//! by hand, positive roots from root strings, Kostant's partition function and
//! the Weyl group generated by explicit reflections.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use lie_branch::embed::{self, EmbeddingDescriptor};
use lie_branch::rootsys::{Family, SimpleLieType};
use num_rational::Ratio;

/// `c[i][j] = <alpha_i^vee, alpha_j>`, Bourbaki numbering.
pub fn cartan(family: char, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    match family {
        'A' => {}
        // alpha_n short
        'B' => c[n - 1][n - 2] = -2,
        // alpha_n long
        'C' => c[n - 2][n - 1] = -2,
        'D' => {
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        // alpha_1 short
        'G' => c[0][1] = -3,
        _ => panic!("no hand-written Cartan matrix for {family}{n}"),
    }
    c
}

pub fn lie_type(family: char, n: usize) -> SimpleLieType {
    let f = match family {
        'A' => Family::A,
        'B' => Family::B,
        'C' => Family::C,
        'D' => Family::D,
        'E' => Family::E,
        'F' => Family::F,
        'G' => Family::G,
        _ => panic!("{family}"),
    };
    SimpleLieType::of(f, n)
}

/// Positive roots in simple-root coordinates, grown by root strings.
pub fn positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
    let mut roots: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut k = 0;
    while k < roots.len() {
        let beta = roots[k].clone();
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| beta[j] * c[i][j]).sum();
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
            if p - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
        k += 1;
    }
    roots
}

/// Fundamental coordinates of `sum c_i alpha_i`.
pub fn root_to_fund(c: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    (0..c.len())
        .map(|k| (0..c.len()).map(|i| v[i] * c[k][i]).sum())
        .collect()
}

/// Simple-root coordinates of a weight, if they are integers.
pub fn fund_to_root(c: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let n = c.len();
    let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|k| {
            let mut row: Vec<Ratio<i64>> = c[k].iter().map(|&x| Ratio::from_integer(x)).collect();
            row.push(Ratio::from_integer(v[k]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| m[r][col] != Ratio::from_integer(0))
            .expect("Cartan matrices are invertible");
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != Ratio::from_integer(0) {
                    let pivot = m[col].clone();
                    for (x, p) in m[r].iter_mut().zip(&pivot) {
                        *x -= *p * f;
                    }
                }
            }
        }
    }
    m.iter()
        .map(|row| row[n].is_integer().then(|| row[n].to_integer()))
        .collect()
}

pub struct Kostant {
    roots: Vec<Vec<i64>>,
    memo: HashMap<(usize, Vec<i64>), u64>,
}

impl Kostant {
    pub fn new(c: &[Vec<i64>]) -> Self {
        Kostant {
            roots: positive_roots(c),
            memo: HashMap::new(),
        }
    }

    /// Number of ways to write `v` as a sum of positive roots.
    pub fn count(&mut self, v: &[i64]) -> u64 {
        self.count_from(0, v.to_vec())
    }

    fn count_from(&mut self, k: usize, v: Vec<i64>) -> u64 {
        if v.iter().any(|&x| x < 0) {
            return 0;
        }
        if v.iter().all(|&x| x == 0) {
            return 1;
        }
        if k == self.roots.len() {
            return 0;
        }
        if let Some(&m) = self.memo.get(&(k, v.clone())) {
            return m;
        }
        let r = self.roots[k].clone();
        let mut total = 0;
        let mut cur = v.clone();
        while cur.iter().all(|&x| x >= 0) {
            total += self.count_from(k + 1, cur.clone());
            for (x, y) in cur.iter_mut().zip(&r) {
                *x -= y;
            }
        }
        self.memo.insert((k, v), total);
        total
    }
}

/// Orbit of a regular weight with `(-1)^length`, by breadth-first search over reflections.
pub fn signed_orbit(c: &[Vec<i64>], regular: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let n = c.len();
    let mut seen: HashMap<Vec<i64>, i64> = HashMap::from([(regular.to_vec(), 1)]);
    let mut queue = VecDeque::from([regular.to_vec()]);
    while let Some(v) = queue.pop_front() {
        let s = seen[&v];
        for i in 0..n {
            let w: Vec<i64> = (0..n).map(|k| v[k] - v[i] * c[k][i]).collect();
            if !seen.contains_key(&w) {
                seen.insert(w.clone(), -s);
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// `m_lambda(mu)` from Kostant's formula.
pub fn kostant_multiplicity(c: &[Vec<i64>], k: &mut Kostant, lambda: &[i64], mu: &[i64]) -> u64 {
    let shifted: Vec<i64> = lambda.iter().map(|x| x + 1).collect();
    let target: Vec<i64> = mu.iter().map(|x| x + 1).collect();
    let mut total: i64 = 0;
    for (w, s) in signed_orbit(c, &shifted) {
        let diff: Vec<i64> = w.iter().zip(&target).map(|(a, b)| a - b).collect();
        if let Some(r) = fund_to_root(c, &diff) {
            total += s * k.count(&r) as i64;
        }
    }
    assert!(total >= 0, "Kostant sum went negative");
    total as u64
}

/// Dominant `mu <= lambda`, found by subtracting simple roots.
pub fn dominant_below(c: &[Vec<i64>], lambda: &[i64]) -> Vec<Vec<i64>> {
    let n = c.len();
    let top = fund_to_root_rational_floor(c, lambda);
    let mut out = Vec::new();
    let mut k = vec![0i64; n];
    loop {
        let drop = root_to_fund(c, &k);
        let mu: Vec<i64> = lambda.iter().zip(&drop).map(|(a, b)| a - b).collect();
        if mu.iter().all(|&x| x >= 0) {
            out.push(mu);
        }
        let mut i = 0;
        while i < n {
            k[i] += 1;
            if k[i] <= top[i] {
                break;
            }
            k[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

fn fund_to_root_rational_floor(c: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    // det(C) * C^{-1} v is integral; any dominant weight has root coordinates
    // with denominator dividing det(C), so scale, then floor.
    let n = c.len();
    let det = det(c);
    let scaled: Vec<i64> = v.iter().map(|x| x * det).collect();
    let r = fund_to_root(c, &scaled).expect("det C . C^{-1} is integral");
    (0..n).map(|i| r[i].div_euclid(det)).collect()
}

fn det(c: &[Vec<i64>]) -> i64 {
    let n = c.len();
    if n == 1 {
        return c[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = c[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| *x)
                        .collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * c[0][j] * det(&minor)
        })
        .sum()
}

/// Weights of `wedge^k C^n` for `SL_n`, in fundamental coordinates.
pub fn exterior_power_sl(n: usize, k: usize) -> BTreeMap<Vec<i64>, u64> {
    let eps = |i: usize| {
        let mut v = vec![0i64; n - 1];
        if i < n - 1 {
            v[i] += 1;
        }
        if i > 0 {
            v[i - 1] -= 1;
        }
        v
    };
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut w = vec![0i64; n - 1];
        for i in 0..n {
            if mask & (1 << i) != 0 {
                for (x, y) in w.iter_mut().zip(eps(i)) {
                    *x += y;
                }
            }
        }
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

/// Rank <= 4 embeddings for random branching checks.
pub fn small_embeddings() -> Vec<EmbeddingDescriptor> {
    vec![
        embed::so_in_sl(5).unwrap(),
        embed::so_in_sl(4).unwrap(),
        embed::sp_in_sl(4).unwrap(),
        embed::levi_block_embedding(4, &[2, 2]).unwrap(),
        embed::levi_block_embedding(5, &[3, 1, 1]).unwrap(),
        embed::spsp_in_sp(2, 2).unwrap(),
        embed::spinspin_in_spin(6, 1).unwrap(),
        embed::spinspin_in_spin(4, 3).unwrap(),
        embed::exceptional_embedding("f4_b4").unwrap(),
        embed::resolve("blocks:sp4,sl1", &Default::default()).unwrap(),
        embed::identity(lie_type('G', 2)),
    ]
}
