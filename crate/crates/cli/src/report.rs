//! Machine-readable results.

use serde::Serialize;
use tlyndon_core::factorizer::StateSets;
use tlyndon_core::{Alphabet, Factorization};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorRecord {
    pub prime: String,
    pub exponent: String,
}

/// The result object of `factorize --json`. The state fields are present
/// when the automaton engine ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizeReport {
    pub input: String,
    pub tau: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_main: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_secondary: Option<Vec<usize>>,
    pub factors: Vec<FactorRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marked: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

impl FactorizeReport {
    pub fn new(
        input: &str,
        tau: String,
        f: &Factorization,
        sets: Option<&StateSets>,
        alphabet: &Alphabet,
    ) -> Self {
        FactorizeReport {
            input: input.to_string(),
            tau,
            states: sets.map(|s| s.automaton.state_count()),
            q_main: sets.map(|s| s.q_main.iter().copied().collect()),
            q_secondary: sets.map(|s| s.q_secondary.iter().copied().collect()),
            factors: f
                .factors
                .iter()
                .map(|x| FactorRecord {
                    prime: x.prime.display(alphabet).to_string(),
                    exponent: x.exponent.to_string(),
                })
                .collect(),
            steps: sets.map(|s| s.steps),
            marked: None,
            trace: None,
        }
    }
}

/// One line of `batch` output.
#[derive(Debug, Clone, Serialize)]
pub struct BatchRecord {
    pub line: usize,
    pub input: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<FactorizeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ms: f64,
}
