use charvar::oracle::{Assignment, VerifyReport};
use charvar::reducible_engine::{RileyPolynomial, ThetaPair};
use charvar::trace_engine::TraceTriple;
use charvar::variety_builder::{GenericityReport, VarietySystem};
use serde::{Deserialize, Serialize};

/// Everything a subcommand produces, independent of the output format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    /// Canonical form of the tangle or knot the command ran on.
    pub input: String,
    pub result: Payload,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Payload {
    Traces(TraceTriple),
    Theta(ThetaPair),
    Riley(RileyPolynomial),
    System(VarietySystem),
    Systems(Vec<VarietySystem>),
    Genericity(GenericityReport),
    Verification(Verification),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub point: Assignment,
    pub report: VerifyReport,
    /// Present when the point came from Newton refinement rather than a file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<Search>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Search {
    pub seed: u64,
    pub residual: f64,
    pub iterations: usize,
}
