//! Suite reports: one record per verification suite, with per-case results
//! and JSON certificates. The JSON payload is byte-stable for a fixed
//! (p, seed, level, version); wall time is printed to the console only.

use serde::{Deserialize, Serialize};

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    CertifiedLevel2Only,
    Failed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub p: u64,
    pub level: u8,
    pub seed: u64,
    pub status: Status,
    pub cases_run: usize,
    pub cases_passed: usize,
    /// first counterexample, when failed
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CaseResult>,
    /// machine-checkable payloads (certificates, tables)
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificates: Vec<serde_json::Value>,
    #[serde(skip)]
    pub wall_ms: u128,
}

pub struct SuiteBuilder {
    suite: String,
    p: u64,
    level: u8,
    seed: u64,
    level2_only: bool,
    cases: Vec<CaseResult>,
    certificates: Vec<serde_json::Value>,
    start: std::time::Instant,
}

impl SuiteBuilder {
    pub fn new(suite: &str, p: u64, level: u8, seed: u64, level2_only: bool) -> Self {
        SuiteBuilder {
            suite: suite.to_string(),
            p,
            level,
            seed,
            level2_only,
            cases: Vec::new(),
            certificates: Vec::new(),
            start: std::time::Instant::now(),
        }
    }

    pub fn case(&mut self, name: impl Into<String>, pass: bool) {
        self.cases.push(CaseResult {
            case: name.into(),
            pass,
            detail: None,
        });
    }

    pub fn case_detail(
        &mut self,
        name: impl Into<String>,
        pass: bool,
        detail: serde_json::Value,
    ) {
        self.cases.push(CaseResult {
            case: name.into(),
            pass,
            detail: Some(detail),
        });
    }

    pub fn cases(&mut self, results: Vec<CaseResult>) {
        self.cases.extend(results);
    }

    pub fn certificate(&mut self, c: serde_json::Value) {
        self.certificates.push(c);
    }

    pub fn error(mut self, message: String) -> SuiteReport {
        self.cases.push(CaseResult {
            case: "suite-error".into(),
            pass: false,
            detail: Some(serde_json::json!({ "error": message })),
        });
        self.finish()
    }

    pub fn finish(self) -> SuiteReport {
        let cases_run = self.cases.len();
        let cases_passed = self.cases.iter().filter(|c| c.pass).count();
        let all_pass = cases_run == cases_passed && cases_run > 0;
        let status = if !all_pass {
            Status::Failed
        } else if self.level2_only {
            Status::CertifiedLevel2Only
        } else {
            Status::Certified
        };
        SuiteReport {
            suite: self.suite,
            p: self.p,
            level: self.level,
            seed: self.seed,
            status,
            cases_run,
            cases_passed,
            counterexample: self.cases.iter().find(|c| !c.pass).cloned(),
            certificates: self.certificates,
            wall_ms: self.start.elapsed().as_millis(),
        }
    }
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Failed => 1,
            _ => 0,
        }
    }

    pub fn human_line(&self) -> String {
        let tag = match self.status {
            Status::Certified => "certified",
            Status::CertifiedLevel2Only => "certified-level-2-only",
            Status::Failed => "FAILED",
        };
        let extra = match &self.counterexample {
            Some(c) => format!("  first counterexample: {}", c.case),
            None => String::new(),
        };
        format!(
            "{:<18} p={} level={} cases={}/{} [{}] {} ms{}",
            self.suite,
            self.p,
            self.level,
            self.cases_passed,
            self.cases_run,
            tag,
            self.wall_ms,
            extra
        )
    }
}
