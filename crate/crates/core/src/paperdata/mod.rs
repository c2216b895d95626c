//! Parameterised records of free branching monoids: generator formulas,
//! ranks and the embedding each record is checked against.
//!
//! Generator formulas use the weight grammar of [`crate::expr`]. On the
//! `lambda` side `pi_k` is the `k`-th fundamental weight of `G`; on the `mu`
//! side `pi`, `pi'`, `pi''` address the first, second and third factor of `H`
//! and `chi_b` the torus character of block `b`. `pi_0` is zero, and so is
//! `pi_m` on a factor `SL_m`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::embed::{self, dual_case, EmbeddingDescriptor};
use crate::error::{Error, Result};
use crate::expr::{self, Env};
use crate::gamma::{self, Expected, GammaElement, MonoidCertificate};

pub const CASES_SCHEMA_VERSION: u32 = 1;
pub const CASES_TEXT: &str = include_str!("../../data/cases.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Table {
    #[serde(rename = "Levi-SL")]
    LeviSl,
    #[serde(rename = "Sym")]
    Sym,
    #[serde(rename = "SL")]
    Sl,
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Table::LeviSl => "Levi-SL",
            Table::Sym => "Sym",
            Table::Sl => "SL",
        })
    }
}

impl FromStr for Table {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "levi-sl" | "levi" => Ok(Table::LeviSl),
            "sym" => Ok(Table::Sym),
            "sl" => Ok(Table::Sl),
            _ => Err(Error::parse(s, "table is Levi-SL, Sym or SL")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub table: Table,
    pub family: String,
    pub provenance: String,
    /// Generators inferred from decompositions rather than read off a table.
    pub reconstructed: bool,
    pub params: Vec<String>,
    /// Bindings such as `n = 2p + q`, evaluated in order.
    pub derived: Vec<String>,
    pub constraints: Vec<String>,
    /// Constructor call understood by [`embed::construct`].
    pub embedding: String,
    /// `S` for all nodes, else 1-based node expressions separated by commas.
    pub index_set: String,
    pub rank: String,
    pub generators: Vec<String>,
    pub smallest: String,
    pub samples: Vec<String>,
    pub annotation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseFile {
    pub schema_version: u32,
    pub cases: Vec<CaseRecord>,
}

impl CaseFile {
    pub fn parse(text: &str) -> Result<CaseFile> {
        let file: CaseFile = toml::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        if file.schema_version != CASES_SCHEMA_VERSION {
            return Err(Error::Data(format!(
                "unsupported schema_version {}",
                file.schema_version
            )));
        }
        let mut seen = BTreeSet::new();
        for c in &file.cases {
            if !seen.insert(c.id.as_str()) {
                return Err(Error::Data(format!("duplicate case id {}", c.id)));
            }
        }
        Ok(file)
    }

    pub fn to_text(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Data(e.to_string()))
    }

    pub fn get(&self, id: &str) -> Option<&CaseRecord> {
        self.cases.iter().find(|c| c.id == id)
    }
}

pub fn cases() -> &'static CaseFile {
    static FILE: OnceLock<CaseFile> = OnceLock::new();
    FILE.get_or_init(|| CaseFile::parse(CASES_TEXT).expect("bundled case file parses"))
}

/// A record evaluated at concrete parameters.
#[derive(Clone, Debug)]
pub struct CaseInstance {
    pub id: String,
    pub table: Table,
    pub provenance: String,
    pub reconstructed: bool,
    /// Parameters together with derived values.
    pub env: Env,
    pub embedding: EmbeddingDescriptor,
    /// 0-based nodes of `G`, sorted.
    pub index_set: Vec<usize>,
    pub expected: Expected,
}

impl CaseInstance {
    /// Same case with `(lambda*; mu*)` expected on `I*`.
    pub fn dual(&self) -> CaseInstance {
        let (d, index_set) = dual_case(&self.embedding, &self.index_set);
        let mut generators: Vec<GammaElement> = self
            .expected
            .generators
            .iter()
            .map(|g| g.dual(&self.embedding))
            .collect();
        generators.sort();
        CaseInstance {
            id: format!("{}*", self.id),
            embedding: d,
            index_set,
            expected: Expected {
                generators,
                rank: self.expected.rank,
            },
            ..self.clone()
        }
    }

    /// Expected generators are checked against the enumeration up to `bound`.
    pub fn certify(&self, bound: u32) -> Result<MonoidCertificate> {
        let mut cert = gamma::certify(&self.embedding, &self.index_set, bound, Some(&self.expected))?;
        cert.case_id = self.id.clone();
        Ok(cert)
    }

    /// Smallest bound accepted by [`gamma::certify`] for this record.
    pub fn minimal_bound(&self) -> u32 {
        let rank = self.embedding.g_rank();
        2 * self
            .expected
            .generators
            .iter()
            .map(|g| g.height(rank))
            .max()
            .unwrap_or(1)
    }

    pub fn params_label(&self) -> String {
        format_env(&self.env)
    }
}

pub fn format_env(env: &Env) -> String {
    env.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Splits on commas outside parentheses and brackets.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|x| !x.is_empty());
    out
}

impl CaseRecord {
    /// Parameters plus derived values, after the constraints are checked.
    pub fn environment(&self, params: &Env) -> Result<Env> {
        for p in &self.params {
            if !params.contains_key(p) {
                return Err(Error::MissingParam(p.clone()));
            }
        }
        if let Some(k) = params.keys().find(|k| !self.params.contains(k)) {
            return Err(Error::parse(k, format!("{} takes no parameter `{k}`", self.id)));
        }
        let mut env = params.clone();
        for b in &self.derived {
            let (name, e) = expr::parse_binding(b)?;
            let v = e.eval(&env)?;
            env.insert(name, v);
        }
        for c in &self.constraints {
            if !expr::parse_cond(c)?.eval(&env)? {
                return Err(Error::Constraint {
                    case: self.id.clone(),
                    constraint: c.clone(),
                });
            }
        }
        Ok(env)
    }

    pub fn smallest_params(&self) -> Result<Env> {
        expr::parse_params(&self.smallest)
    }

    /// The smallest assignment followed by the samples.
    pub fn assignments(&self) -> Result<Vec<Env>> {
        let mut out = vec![self.smallest_params()?];
        for s in &self.samples {
            out.push(expr::parse_params(s)?);
        }
        Ok(out)
    }

    /// Empty `params` means the smallest assignment.
    pub fn instantiate(&self, params: &Env) -> Result<CaseInstance> {
        let env = if params.is_empty() && !self.params.is_empty() {
            self.environment(&self.smallest_params()?)?
        } else {
            self.environment(params)?
        };
        let mut d = embed::construct(&self.embedding, &env)?;
        d.case_id = self.id.clone();
        d.params = env.clone();
        let rank = d.g_rank();
        let index_set = if self.index_set.trim() == "S" {
            (0..rank).collect()
        } else {
            let mut v = Vec::new();
            for part in split_top(&self.index_set) {
                let k = expr::parse_expr(part)?.eval(&env)?;
                if !(1..=rank as i64).contains(&k) {
                    return Err(Error::IndexOutOfRange {
                        what: format!("nodes of {}", d.g_type()),
                        index: k,
                    });
                }
                v.push(k as usize - 1);
            }
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut generators = Vec::new();
        for g in &self.generators {
            let f = expr::parse_formula(g)?;
            for e in f.expand(&env)? {
                generators.push(GammaElement {
                    lambda: d.g_weight_from(&f.lambda, &e)?,
                    mu: d.h_weight_from(&f.mu, &e)?,
                });
            }
        }
        let distinct: BTreeSet<&GammaElement> = generators.iter().collect();
        if distinct.len() != generators.len() {
            return Err(Error::Data(format!(
                "{}: repeated generator at {}",
                self.id,
                format_env(&env)
            )));
        }
        generators.sort();
        let rank_value = expr::parse_expr(&self.rank)?.eval(&env)?;
        Ok(CaseInstance {
            id: self.id.clone(),
            table: self.table,
            provenance: self.provenance.clone(),
            reconstructed: self.reconstructed,
            env,
            embedding: d,
            index_set,
            expected: Expected {
                generators,
                rank: rank_value,
            },
        })
    }
}

pub fn instantiate(case_id: &str, params: &Env) -> Result<CaseInstance> {
    cases()
        .get(case_id)
        .ok_or_else(|| Error::UnknownCase(case_id.to_string()))?
        .instantiate(params)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseFilter {
    pub table: Option<Table>,
    pub family: Option<String>,
    /// Keep only records whose `G` is (or is not) exceptional.
    pub exceptional: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSummary {
    pub id: String,
    pub table: Table,
    pub family: String,
    pub smallest: String,
}

fn is_exceptional(rec: &CaseRecord) -> bool {
    let name = rec.embedding.split('(').next().unwrap_or("");
    ["f4_", "e6_", "e7_", "e8_", "g2_"].iter().any(|p| name.starts_with(p))
}

/// Records in file order.
pub fn list_cases(filter: &CaseFilter) -> Vec<CaseSummary> {
    cases()
        .cases
        .iter()
        .filter(|c| filter.table.is_none_or(|t| c.table == t))
        .filter(|c| filter.family.as_ref().is_none_or(|f| &c.family == f))
        .filter(|c| filter.exceptional.is_none_or(|e| is_exceptional(c) == e))
        .map(|c| CaseSummary {
            id: c.id.clone(),
            table: c.table,
            family: c.family.clone(),
            smallest: c.smallest.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(s: &str) -> Env {
        expr::parse_params(s).unwrap()
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let file = CaseFile::parse(CASES_TEXT).unwrap();
        assert_eq!(file.to_text().unwrap(), CASES_TEXT);
    }

    #[test]
    fn every_record_instantiates_everywhere_listed() {
        for rec in &cases().cases {
            for a in rec.assignments().unwrap() {
                let c = rec.instantiate(&a).unwrap_or_else(|e| panic!("{} {a:?}: {e}", rec.id));
                assert_eq!(
                    c.expected.generators.len() as i64,
                    c.expected.rank,
                    "{} at {}",
                    rec.id,
                    c.params_label()
                );
            }
        }
    }

    #[test]
    fn delta_drops_a_generator() {
        let c = instantiate("sl_spsl_12", &env("p=2,q=1")).unwrap();
        assert_eq!(c.expected.generators.len(), 5);
        assert_eq!(c.expected.rank, 5);
    }

    #[test]
    fn levi_rank_formula() {
        let c = instantiate("sl_Levi_pq_1i_part1", &env("p=2,q=2,i=2")).unwrap();
        assert_eq!(c.expected.rank, 5);
        assert_eq!(c.expected.generators.len(), 5);
    }

    #[test]
    fn sp_spsp_i_by_hand() {
        let c = instantiate("sp_spsp_i", &env("n=2,i=2")).unwrap();
        let mus: Vec<Vec<i64>> = c.expected.generators.iter().map(|g| g.mu.clone()).collect();
        // Sp4 > Sp2 x Sp2 is C2 > A1 x A1.
        assert_eq!(mus, vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn constraint_violation_is_named() {
        match instantiate("sl_spsl_12", &env("p=1,q=1")) {
            Err(Error::Constraint { constraint, .. }) => assert_eq!(constraint, "p >= 2"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            instantiate("sl_spsl_12", &env("p=2")),
            Err(Error::MissingParam(_))
        ));
        assert!(instantiate("no_such_case", &Env::new()).is_err());
    }

    #[test]
    fn filters() {
        let sl = list_cases(&CaseFilter {
            table: Some(Table::Sl),
            ..Default::default()
        });
        let families: BTreeSet<&str> = sl.iter().map(|c| c.family.as_str()).collect();
        assert_eq!(families.len(), 6);
        let exc = list_cases(&CaseFilter {
            table: Some(Table::Sym),
            exceptional: Some(true),
            ..Default::default()
        });
        assert!(exc
            .iter()
            .all(|c| ["f4_b4", "e6_", "e7_"].iter().any(|p| c.id.starts_with(p))));
        assert_eq!(exc.len(), 9);
        assert_eq!(list_cases(&CaseFilter::default()).len(), cases().cases.len());
    }

    #[test]
    fn dual_instance_is_involutive() {
        let c = instantiate("sl_spsl_12", &env("p=2,q=2")).unwrap();
        let dd = c.dual().dual();
        assert_eq!(dd.index_set, c.index_set);
        assert_eq!(dd.expected.generators, c.expected.generators);
    }

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(split_top("1, min(i, q)"), vec!["1", "min(i, q)"]);
    }
}
