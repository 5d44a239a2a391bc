//! Pass/fail reports shared by the library sweeps, the CLI and the
//! acceptance run.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseResult {
    pub fn new(id: impl Into<String>, pass: bool, lhs: impl Serialize, rhs: impl Serialize) -> Self {
        CaseResult {
            id: id.into(),
            pass,
            lhs: serde_json::to_value(lhs).expect("serializable payload"),
            rhs: serde_json::to_value(rhs).expect("serializable payload"),
            note: None,
        }
    }

    /// `lhs == rhs`.
    pub fn compare<T: Serialize + PartialEq>(id: impl Into<String>, lhs: T, rhs: T) -> Self {
        let pass = lhs == rhs;
        Self::new(id, pass, lhs, rhs)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub pass: bool,
}

impl VerificationReport {
    /// Cases are sorted by id, so the report does not depend on the order
    /// in which they were computed.
    pub fn new(suite: impl Into<String>, mut cases: Vec<CaseResult>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = cases.iter().all(|c| c.pass);
        VerificationReport { suite: suite.into(), cases, pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    /// Concatenates reports under one suite name.
    pub fn merge(suite: impl Into<String>, parts: Vec<VerificationReport>) -> Self {
        Self::new(suite, parts.into_iter().flat_map(|r| r.cases).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_aggregated() {
        let r = VerificationReport::new(
            "s",
            vec![CaseResult::compare("b", 1, 1), CaseResult::compare("a", 1, 2)],
        );
        assert_eq!(r.cases[0].id, "a");
        assert!(!r.pass);
        assert_eq!(r.passed(), 1);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<VerificationReport>(&json).unwrap(), r);
    }
}
