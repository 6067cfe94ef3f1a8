//! Verification reports: one row per check, as JSON or as a table.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "==")]
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Equal => "==",
        }
    }

    pub fn holds(self, lhs: u128, rhs: u128) -> bool {
        match self {
            Relation::AtMost => lhs <= rhs,
            Relation::Equal => lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The claim being checked, in words.
    pub anchor: String,
    pub lhs: u128,
    pub relation: Relation,
    pub rhs: u128,
    pub holds: bool,
    pub runtime_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, lhs: u128, relation: Relation, rhs: u128) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            lhs,
            relation,
            rhs,
            holds: relation.holds(lhs, rhs),
            runtime_ms: 0,
            input_sha256: None,
            note: None,
        }
    }

    pub fn at_most(name: impl Into<String>, anchor: impl Into<String>, lhs: impl Into<u128>, rhs: impl Into<u128>) -> Self {
        Check::new(name, anchor, lhs.into(), Relation::AtMost, rhs.into())
    }

    pub fn equal(name: impl Into<String>, anchor: impl Into<String>, lhs: impl Into<u128>, rhs: impl Into<u128>) -> Self {
        Check::new(name, anchor, lhs.into(), Relation::Equal, rhs.into())
    }

    /// A check that could not be evaluated.
    pub fn error(name: impl Into<String>, anchor: impl Into<String>, err: impl ToString) -> Self {
        let mut c = Check::new(name, anchor, 1, Relation::Equal, 0);
        c.note = Some(err.to_string());
        c
    }

    pub fn with_input(mut self, bytes: &[u8]) -> Self {
        self.input_sha256 = Some(sha256_hex(bytes));
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Runs `f` and stamps the elapsed time on every check it returns.
pub fn timed(f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    let start = Instant::now();
    let mut checks = f();
    let ms = start.elapsed().as_millis() as u64;
    for c in &mut checks {
        c.runtime_ms = ms;
    }
    checks
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub holds: bool,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerifyReport {
    /// Sorts checks by name and fills in the summary.
    pub fn new(suite: &str, seed: Option<u64>, mut checks: Vec<Check>, runtime_ms: u64) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().filter(|c| c.holds).count();
        VerifyReport {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
                holds: passed == checks.len(),
                runtime_ms,
            },
            checks,
        }
    }

    pub fn holds(&self) -> bool {
        self.summary.holds
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn table(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let mut s = format!("suite {} (version {}", self.suite, self.version);
        if let Some(seed) = self.seed {
            let _ = write!(s, ", seed {seed:#x}");
        }
        s.push_str(")\n");
        for c in &self.checks {
            let _ = write!(
                s,
                "{} {:w$}  {} {} {}  {}ms  {}",
                if c.holds { "ok  " } else { "FAIL" },
                c.name,
                c.lhs,
                c.relation.symbol(),
                c.rhs,
                c.runtime_ms,
                c.anchor,
            );
            if let Some(n) = &c.note {
                let _ = write!(s, " ({n})");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "{}/{} checks hold in {}ms",
            self.summary.passed, self.summary.total, self.summary.runtime_ms
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_order() {
        let r = VerifyReport::new(
            "t",
            Some(1),
            vec![Check::at_most("b", "x", 3u32, 2u32), Check::equal("a", "y", 4u32, 4u32)],
            5,
        );
        assert_eq!(r.checks[0].name, "a");
        assert_eq!((r.summary.passed, r.summary.failed, r.holds()), (1, 1, false));
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"relation\":\"<=\""));
        assert_eq!(serde_json::from_str::<VerifyReport>(&j).unwrap(), r);
        assert!(r.table().contains("FAIL b"));
    }

    #[test]
    fn hashes() {
        assert_eq!(sha256_hex(b"").len(), 64);
        assert!(sha256_hex(b"abc").starts_with("ba7816bf"));
    }
}
