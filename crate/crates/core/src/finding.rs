//! Diagnostics shared by the model checks, the dialect parsers and the
//! compliance validator.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn label(self) -> &'static str {
        match self {
            Severity::Info => "INFO",
            Severity::Warning => "WARNING",
            Severity::Error => "ERROR",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Finding {
    pub rule_id: String,
    pub severity: Severity,
    pub path: String,
    pub message: String,
}

impl Finding {
    pub fn new(
        rule_id: impl Into<String>,
        severity: Severity,
        path: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Finding {
            rule_id: rule_id.into(),
            severity,
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn error(rule_id: impl Into<String>, path: impl Into<String>, message: impl Into<String>) -> Self {
        Finding::new(rule_id, Severity::Error, path, message)
    }

    pub fn warning(rule_id: impl Into<String>, path: impl Into<String>, message: impl Into<String>) -> Self {
        Finding::new(rule_id, Severity::Warning, path, message)
    }

    pub fn info(rule_id: impl Into<String>, path: impl Into<String>, message: impl Into<String>) -> Self {
        Finding::new(rule_id, Severity::Info, path, message)
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// `SEVERITY RULE_ID PATH: MESSAGE`
impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}: {}", self.severity, self.rule_id, self.path, self.message)
    }
}

pub fn has_errors(findings: &[Finding]) -> bool {
    findings.iter().any(Finding::is_error)
}

/// One line per finding, each terminated by a newline.
pub fn render_text(findings: &[Finding]) -> String {
    findings.iter().map(|f| format!("{f}\n")).collect()
}

/// JSON array of `{ruleId, severity, path, message}` objects.
pub fn render_json(findings: &[Finding]) -> String {
    serde_json::to_string_pretty(findings).expect("findings serialize to JSON")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_line_format() {
        let f = Finding::error("R1-SENSE-REQUIRED", "/entry[1]/def[1]", "def outside sense");
        assert_eq!(
            f.to_string(),
            "ERROR R1-SENSE-REQUIRED /entry[1]/def[1]: def outside sense"
        );
    }

    #[test]
    fn json_keys() {
        let f = Finding::warning("R2-NO-VOID-GRAMGRP", "/entry[1]", "m");
        let v: serde_json::Value = serde_json::from_str(&render_json(&[f])).unwrap();
        let obj = &v[0];
        assert_eq!(obj["ruleId"], "R2-NO-VOID-GRAMGRP");
        assert_eq!(obj["severity"], "warning");
        assert_eq!(obj["path"], "/entry[1]");
        assert_eq!(obj["message"], "m");
    }
}
