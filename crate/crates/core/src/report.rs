//! Shared report schema: every theorem verifier emits a flat list of
//! clause checks, each carrying a stable name, the anchor tag of the
//! statement it verifies, a pass flag and an optional witness string
//! describing the smallest counterexample found.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCheck {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Instance count for aggregated (fuzz) records.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<u64>,
}

impl ClauseCheck {
    pub fn with_instances(mut self, n: u64) -> Self {
        self.instances = Some(n);
        self
    }

    pub fn passed(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        ClauseCheck {
            name: name.into(),
            anchor: anchor.into(),
            pass: true,
            witness: None,
            instances: None,
        }
    }

    pub fn failed(
        name: impl Into<String>,
        anchor: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        ClauseCheck {
            name: name.into(),
            anchor: anchor.into(),
            pass: false,
            witness: Some(witness.into()),
            instances: None,
        }
    }

    pub fn from_flag(
        name: impl Into<String>,
        anchor: impl Into<String>,
        pass: bool,
        witness: Option<String>,
    ) -> Self {
        ClauseCheck {
            name: name.into(),
            anchor: anchor.into(),
            pass,
            witness: if pass { None } else { witness },
            instances: None,
        }
    }
}

/// A bundle of clause checks produced by one theorem verifier.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct TheoremReport {
    pub checks: Vec<ClauseCheck>,
}

impl TheoremReport {
    pub fn new() -> Self {
        TheoremReport { checks: Vec::new() }
    }

    pub fn push(&mut self, check: ClauseCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: TheoremReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&ClauseCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub pass: bool,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// The envelope the CLI emits for `check` and `fuzz` runs. Records are
/// kept in canonical order (sorted by name) regardless of how they were
/// produced, so identical inputs yield byte-identical reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub records: Vec<ClauseCheck>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>, input_digest: impl Into<String>, mut records: Vec<ClauseCheck>) -> Report {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = records.iter().filter(|c| c.pass).count();
        let failed = records.len() - passed;
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            input_digest: input_digest.into(),
            summary: Summary {
                pass: failed == 0,
                total: records.len(),
                passed,
                failed,
            },
            records,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering of the same data.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} v{} (input {})\n",
            self.command, self.version, self.input_digest
        ));
        for r in &self.records {
            let instances = r
                .instances
                .map(|n| format!(" [{} instances]", n))
                .unwrap_or_default();
            out.push_str(&format!(
                "  [{}] {} ({}){}{}\n",
                if r.pass { "pass" } else { "FAIL" },
                r.name,
                r.anchor,
                instances,
                r.witness
                    .as_deref()
                    .map(|w| format!(" -- {}", w))
                    .unwrap_or_default()
            ));
        }
        out.push_str(&format!(
            "summary: {} ({}/{} passed)\n",
            if self.summary.pass { "pass" } else { "FAIL" },
            self.summary.passed,
            self.summary.total
        ));
        out
    }
}

/// FNV-1a digest of the concatenated input files, printed as 16 hex
/// digits. Stable across platforms; used only to tie a report to its
/// inputs, not for security.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for chunk in inputs {
        for &b in *chunk {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash ^= 0xff;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{:016x}", hash)
}
