//! Deterministic report rendering: one record per task, stable key order,
//! plus a header with the tool version, seed, and an input digest. Output
//! is byte-identical across runs for the same input and seed; wall-clock
//! timing is emitted only when explicitly requested.

use sha2::{Digest, Sha256};

pub const TOOL_NAME: &str = "crystalline";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    /// Task ran and every verdict it produced is true.
    Ok,
    /// Task ran but a verdict is false.
    VerdictFalse,
    /// Task failed structurally.
    Error(String),
}

#[derive(Debug, Clone)]
pub struct Report {
    /// Echo of the task line.
    pub task: String,
    pub status: Status,
    /// Ordered key/value fields; both sides are pre-rendered strings.
    pub fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(task: &str) -> Report {
        Report {
            task: task.to_string(),
            status: Status::Ok,
            fields: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn push_verdict(&mut self, key: &str, verdict: bool) {
        self.push(key, verdict);
        if !verdict && self.status == Status::Ok {
            self.status = Status::VerdictFalse;
        }
    }

    pub fn status_str(&self) -> String {
        match &self.status {
            Status::Ok => "ok".into(),
            Status::VerdictFalse => "verdict-false".into(),
            Status::Error(e) => format!("error: {e}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    JsonLike,
}

pub fn input_digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn render(
    reports: &[Report],
    seed: u64,
    digest: &str,
    format: OutputFormat,
    timing_ms: Option<u128>,
) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!("tool = {TOOL_NAME} {TOOL_VERSION}\n"));
            out.push_str(&format!("seed = {seed}\n"));
            out.push_str(&format!("input-sha256 = {digest}\n"));
            if let Some(ms) = timing_ms {
                out.push_str(&format!("elapsed-ms = {ms}\n"));
            }
            out.push_str(&format!("tasks = {}\n", reports.len()));
            for (i, r) in reports.iter().enumerate() {
                out.push_str(&format!("\n[task {}] {}\n", i + 1, r.task));
                out.push_str(&format!("status = {}\n", r.status_str()));
                for (k, v) in &r.fields {
                    out.push_str(&format!("{k} = {v}\n"));
                }
            }
            out
        }
        OutputFormat::JsonLike => {
            let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
            let mut out = String::new();
            out.push_str("{\n");
            out.push_str(&format!("  tool = {};\n", quote(&format!("{TOOL_NAME} {TOOL_VERSION}"))));
            out.push_str(&format!("  seed = {seed};\n"));
            out.push_str(&format!("  input-sha256 = {};\n", quote(digest)));
            if let Some(ms) = timing_ms {
                out.push_str(&format!("  elapsed-ms = {ms};\n"));
            }
            out.push_str("  tasks = [\n");
            for r in reports {
                out.push_str("    {\n");
                out.push_str(&format!("      task = {};\n", quote(&r.task)));
                out.push_str(&format!("      status = {};\n", quote(&r.status_str())));
                for (k, v) in &r.fields {
                    out.push_str(&format!("      {k} = {};\n", quote(v)));
                }
                out.push_str("    };\n");
            }
            out.push_str("  ];\n}\n");
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(input_digest("abc"), input_digest("abc"));
        assert_ne!(input_digest("abc"), input_digest("abd"));
        assert_eq!(input_digest("abc").len(), 64);
    }

    #[test]
    fn render_is_deterministic() {
        let mut r = Report::new("schur G");
        r.push("factors", "[2]");
        r.push_verdict("verdict", true);
        let a = render(&[r.clone()], 0, "00", OutputFormat::Text, None);
        let b = render(&[r.clone()], 0, "00", OutputFormat::Text, None);
        assert_eq!(a, b);
        assert!(a.contains("[task 1] schur G"));
        let j = render(&[r], 0, "00", OutputFormat::JsonLike, None);
        assert!(j.contains("task = \"schur G\""));
    }

    #[test]
    fn verdict_false_downgrades_status() {
        let mut r = Report::new("t");
        r.push_verdict("v", false);
        assert_eq!(r.status, Status::VerdictFalse);
    }
}
