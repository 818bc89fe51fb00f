//! JSON documents: ideal inputs, invariant reports and check results.
//!
//! Rationals are always strings in lowest terms ("p/q", integers "p/1") or
//! "inf"; keys follow struct field order, so serialization is canonical.

use std::path::Path;

use serde::{Deserialize, Serialize};

use pshi_core::invariants::InvariantReport;
use pshi_core::rational::format_rational;
use pshi_core::verification::{CheckResult, Relation};
use pshi_core::MonomialIdeal;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDocument {
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl IdealDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: IdealDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Input(format!("field `{path}`: {}", e.inner()))
        })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Input(format!("{}: {}", path.display(), e.message())))
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.n < 1 {
            return Err(CliError::Input("field `n`: must be at least 1".into()));
        }
        if self.generators.is_empty() {
            return Err(CliError::Input("field `generators`: at least one generator is required".into()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.n {
                return Err(CliError::Input(format!("field `generators[{i}]`: expected {} entries, got {}", self.n, g.len())));
            }
            for (j, &v) in g.iter().enumerate() {
                if v < 0 {
                    return Err(CliError::Input(format!("field `generators[{i}][{j}]`: negative exponent {v}")));
                }
                if v > i64::from(u32::MAX) {
                    return Err(CliError::Input(format!("field `generators[{i}][{j}]`: exponent {v} too large")));
                }
            }
        }
        Ok(())
    }

    pub fn ideal(&self) -> Result<MonomialIdeal, CliError> {
        let gens: Vec<Vec<u32>> = self.generators.iter().map(|g| g.iter().map(|&v| v as u32).collect()).collect();
        MonomialIdeal::from_exponents(self.n, &gens).map_err(|e| CliError::Input(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub label: String,
    /// "ge" (residual ≥ 0) or "eq" (residual = 0).
    pub relation: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDocument {
    pub name: String,
    pub ideal: String,
    pub passed: bool,
    pub witnesses: Vec<WitnessDocument>,
}

impl From<&CheckResult> for CheckDocument {
    fn from(c: &CheckResult) -> Self {
        CheckDocument {
            name: c.name.clone(),
            ideal: c.ideal.clone(),
            passed: c.passed,
            witnesses: c
                .witnesses
                .iter()
                .map(|w| WitnessDocument {
                    label: w.label.clone(),
                    relation: match w.relation {
                        Relation::AtLeast => "ge",
                        Relation::Equal => "eq",
                    }
                    .to_string(),
                    residual: format_rational(&w.residual),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub truncation_span: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub source: String,
    pub input: IdealDocument,
    pub minimal_generators: Vec<Vec<u32>>,
    pub c: Vec<String>,
    pub e: Vec<String>,
    pub x_chain: Vec<String>,
    pub y_chain: Vec<String>,
    pub residuals: Vec<String>,
    pub checks: Vec<CheckDocument>,
    pub config: ReportConfig,
}

impl ReportDocument {
    pub fn new(source: String, input: IdealDocument, report: &InvariantReport, checks: &[CheckResult]) -> Self {
        let strings = |v: &[pshi_core::Rational]| v.iter().map(format_rational).collect();
        ReportDocument {
            version: env!("CARGO_PKG_VERSION").to_string(),
            source,
            input,
            minimal_generators: report.ideal.generators().iter().map(|g| g.entries().to_vec()).collect(),
            c: report.c.iter().map(|v| v.render()).collect(),
            e: report.e.iter().map(|v| v.render()).collect(),
            x_chain: strings(&report.x_chain),
            y_chain: strings(&report.y_chain),
            residuals: strings(&report.residuals),
            checks: checks.iter().map(CheckDocument::from).collect(),
            config: ReportConfig { truncation_span: pshi_core::invariants::TRUNCATION_SPAN },
        }
    }
}

/// Compact JSON, or indented JSON when `pretty`.
pub fn to_json<T: Serialize>(value: &T, pretty: bool) -> String {
    let out = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    out.expect("documents serialize")
}
