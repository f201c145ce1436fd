//! The JSON report emitted by the CLI: every numeric carries its tolerance
//! context, and identical inputs plus seed reproduce identical bytes.

use crate::classify::{AbelianGroup, ClassDescriptor};
use crate::invariants::InvariantReport;
use crate::models::SymmetryReport;
use crate::suites::SuiteResult;

#[derive(Debug, Clone, serde::Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "tenfold",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Tolerances {
    pub tol_alg: f64,
    pub tol_gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_alg: crate::TOL_ALG,
            tol_gap: crate::TOL_GAP,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ClassificationBlock {
    pub descriptor: ClassDescriptor,
    pub dimension: usize,
    pub strong_invariant_group: AbelianGroup,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct FlattenSample {
    pub k: Vec<f64>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// Top-level CLI report. Blocks are optional so every subcommand shares the
/// same shape.
#[derive(Debug, Clone, serde::Serialize, Default)]
pub struct Report {
    pub tool: ToolInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputInfo>,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<crate::models::GapReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationBlock>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub invariants: Vec<InvariantReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verification: Vec<SuiteResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flatten: Vec<FlattenSample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
