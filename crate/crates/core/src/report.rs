//! Structured reports: one JSON object with `schema_version`, `command`,
//! `inputs`, `results` and `checks`. Field order is fixed and maps are
//! sorted, so equal inputs give byte-identical output.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::branch::BranchingResult;
use crate::chars;
use crate::embed::EmbeddingDescriptor;
use crate::error::{Error, Result};
use crate::gamma::{DualityReport, GammaElement, MonoidCertificate};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Vec<Value>,
    pub checks: Vec<Check>,
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Data(e.to_string()))
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> Result<()> {
        self.inputs.insert(key.to_string(), to_value(value)?);
        Ok(())
    }

    pub fn push_result(&mut self, value: impl Serialize) -> Result<()> {
        self.results.push(to_value(value)?);
        Ok(())
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            verdict: Verdict::of(ok),
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Data(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

fn small(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow("a dimension for the report"))
}

#[derive(Clone, Debug, Serialize)]
pub struct Constituent {
    pub weight: Vec<i64>,
    pub label: String,
    pub multiplicity: u64,
    pub dimension: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchSummary {
    pub case_id: String,
    pub embedding: String,
    pub lambda: Vec<i64>,
    pub lambda_label: String,
    pub dimension: u64,
    /// By decreasing height.
    pub constituents: Vec<Constituent>,
    pub total_dimension: u64,
}

impl BranchSummary {
    pub fn conserved(&self) -> bool {
        self.dimension == self.total_dimension
    }
}

pub fn branch_summary(d: &EmbeddingDescriptor, r: &BranchingResult) -> Result<BranchSummary> {
    let mut constituents = Vec::new();
    let mut total = 0u128;
    for (mu, m) in r.sorted(&d.h_shape) {
        let dim = chars::dimension(&d.h_shape, &mu)?;
        total += u128::from(m) * dim;
        constituents.push(Constituent {
            label: d.format_h_weight(&mu),
            weight: mu,
            multiplicity: m,
            dimension: small(dim)?,
        });
    }
    Ok(BranchSummary {
        case_id: d.case_id.clone(),
        embedding: d.summary(),
        lambda: r.lambda.clone(),
        lambda_label: d.format_g_weight(&r.lambda),
        dimension: small(chars::dimension(&d.g_shape, &r.lambda)?)?,
        constituents,
        total_dimension: small(total)?,
    })
}

/// `(pi1+pi3; pi2)`.
pub fn element_label(d: &EmbeddingDescriptor, e: &GammaElement) -> String {
    format!("({}; {})", d.format_g_weight(&e.lambda), d.format_h_weight(&e.mu))
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconstructed: Option<bool>,
    pub embedding: String,
    pub generator_labels: Vec<String>,
    pub missing_labels: Vec<String>,
    pub unexpected_labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityReport>,
    pub certificate: MonoidCertificate,
}

impl CertificateSummary {
    pub fn new(d: &EmbeddingDescriptor, cert: MonoidCertificate) -> Self {
        let labels = |v: &[GammaElement]| v.iter().map(|e| element_label(d, e)).collect();
        CertificateSummary {
            provenance: None,
            reconstructed: None,
            embedding: d.summary(),
            generator_labels: labels(&cert.generators),
            missing_labels: labels(&cert.missing),
            unexpected_labels: labels(&cert.unexpected),
            witness_label: cert.witness.as_ref().map(|w| {
                format!(
                    "m = {} at ({}; {})",
                    w.multiplicity,
                    d.format_g_weight(&w.lambda),
                    d.format_h_weight(&w.mu)
                )
            }),
            duality: None,
            certificate: cert,
        }
    }

    pub fn passed(&self) -> bool {
        self.certificate.passed() && self.duality.as_ref().is_none_or(|r| r.holds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::branch;
    use crate::embed::exceptional_embedding;

    #[test]
    fn e6_f4_summary_is_stable() {
        let d = exceptional_embedding("e6_f4").unwrap();
        let r = branch(&d, &[1, 0, 0, 0, 0, 0]).unwrap();
        let s = branch_summary(&d, &r).unwrap();
        assert!(s.conserved());
        let labels: Vec<&str> = s.constituents.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["pi4", "0"]);
        let mut a = Report::new("branch");
        a.push_result(&s).unwrap();
        a.check("dimension", s.conserved(), "27 = 27");
        let mut b = Report::new("branch");
        b.push_result(&s).unwrap();
        b.check("dimension", s.conserved(), "27 = 27");
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        assert!(a.to_json().unwrap().contains("\"verdict\": \"PASS\""));
    }
}
