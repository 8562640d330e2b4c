use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: Status,
    /// The clause that was checked, or the one that failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
}

impl Certificate {
    pub fn none() -> Self {
        Certificate { status: Status::NotApplicable, clause: None }
    }

    pub fn check(ok: bool, clause: impl Into<String>) -> Self {
        Certificate {
            status: if ok { Status::Holds } else { Status::Fails },
            clause: Some(clause.into()),
        }
    }
}

/// Everything one invocation produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub operation: String,
    pub inputs: Value,
    pub results: Value,
    pub certificate: Certificate,
    /// Human-readable lines used by `--format text`.
    pub summary: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(operation: &str, inputs: Value) -> Self {
        Report {
            operation: operation.to_string(),
            inputs,
            results: Value::Null,
            certificate: Certificate::none(),
            summary: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn results(mut self, results: Value) -> Self {
        self.results = results;
        self
    }

    pub fn line(mut self, line: impl Into<String>) -> Self {
        self.summary.push(line.into());
        self
    }

    pub fn certify(mut self, cert: Certificate) -> Self {
        self.certificate = cert;
        self
    }

    pub fn warn(mut self, warning: impl Into<String>) -> Self {
        self.warnings.push(warning.into());
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = self.summary.join("\n");
        match (&self.certificate.status, &self.certificate.clause) {
            (Status::NotApplicable, _) => {}
            (Status::Holds, Some(c)) => out.push_str(&format!("\ncertificate: holds ({c})")),
            (Status::Fails, Some(c)) => out.push_str(&format!("\ncertificate: fails ({c})")),
            (s, None) => out.push_str(&format!("\ncertificate: {s:?}")),
        }
        out
    }

    pub fn exit_code(&self) -> u8 {
        match self.certificate.status {
            Status::Fails => 1,
            _ => 0,
        }
    }
}

/// `[0,1,2]`.
pub fn set_text(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}
