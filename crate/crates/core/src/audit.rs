use serde::{Deserialize, Serialize};

/// Evidence attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Vertex(usize),
    Edge(usize, usize),
    Set(Vec<usize>),
    Matching(usize),
    IndexSet(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Machine-readable pass/fail record of a recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub subject: String,
    pub passed: bool,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn new(subject: impl Into<String>) -> Self {
        AuditReport {
            subject: subject.into(),
            passed: true,
            checks: Vec::new(),
        }
    }

    pub fn pass(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(AuditCheck {
            name: name.to_string(),
            passed: true,
            detail: detail.into(),
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, detail: impl Into<String>, witness: Option<Witness>) {
        self.passed = false;
        self.checks.push(AuditCheck {
            name: name.to_string(),
            passed: false,
            detail: detail.into(),
            witness,
        });
    }

    /// Records `name` as passed when `ok`, otherwise failed with the witness.
    pub fn check(
        &mut self,
        name: &str,
        ok: bool,
        detail: impl Into<String>,
        witness: impl FnOnce() -> Option<Witness>,
    ) -> bool {
        if ok {
            self.pass(name, detail);
        } else {
            self.fail(name, detail, witness());
        }
        ok
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.failures().find_map(|c| c.witness.as_ref())
    }
}
