//! Diagnostics as shown to learners, shared by every compiler stage.

use serde::{Deserialize, Serialize};

use crate::ast::Pos;
use crate::parser::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: u32,
    pub column: u32,
    pub message: String,
    pub hint: String,
}

impl Diagnostic {
    pub fn error(pos: Pos, message: impl Into<String>, hint: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            line: pos.line,
            column: pos.column,
            message: message.into(),
            hint: hint.into(),
        }
    }

    pub fn warning(pos: Pos, message: impl Into<String>, hint: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(pos, message, hint)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    /// `Line 3: <message> Hint: <hint>`
    pub fn render(&self) -> String {
        if self.hint.is_empty() {
            format!("Line {}: {}", self.line, self.message)
        } else {
            format!("Line {}: {} Hint: {}", self.line, self.message, self.hint)
        }
    }

    /// `line:col: severity: message`, the format of `shapelab check`.
    pub fn cli_line(&self) -> String {
        let mut s = format!("{}:{}: {}: {}", self.line, self.column, self.severity.as_str(), self.message);
        if !self.hint.is_empty() {
            s.push_str(" Hint: ");
            s.push_str(&self.hint);
        }
        s
    }
}

impl From<&ParseError> for Diagnostic {
    fn from(e: &ParseError) -> Self {
        let mut message = e.message.clone();
        if !message.ends_with('.') {
            message.push('.');
        }
        let hint = match e.kind {
            crate::parser::ParseErrorKind::Lex => "check for a missing quote or an unusual character.",
            crate::parser::ParseErrorKind::MissingMain => "every program needs exactly one main.",
            crate::parser::ParseErrorKind::Unexpected if e.expected.iter().any(|x| x.contains(']') || x.contains(')') || x.contains('}')) => {
                "check that every bracket you open is also closed."
            }
            crate::parser::ParseErrorKind::Unexpected => "look just before this spot for a typo.",
            _ => "each name can only be defined once.",
        };
        Diagnostic::error(e.pos, message, hint)
    }
}
