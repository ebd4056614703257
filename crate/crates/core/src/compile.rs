//! Source text to a checked program, with diagnostics for learners.

use std::sync::Arc;

use crate::diagnostic::Diagnostic;
use crate::parser::parse_source;
use crate::typeck::{check_program, render_diagnostic, TypedProgram};

#[derive(Debug, Clone)]
pub struct Compiled {
    /// Present iff there are no errors.
    pub program: Option<Arc<TypedProgram>>,
    /// Errors first in source order, then warnings.
    pub diagnostics: Vec<Diagnostic>,
}

impl Compiled {
    pub fn ok(&self) -> bool {
        self.program.is_some()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}

pub fn compile(source: &str) -> Compiled {
    let program = match parse_source(source) {
        Ok(p) => p,
        Err(e) => {
            return Compiled { program: None, diagnostics: vec![Diagnostic::from(&e)] };
        }
    };
    let outcome = check_program(&program);
    let mut diagnostics: Vec<Diagnostic> = outcome.errors.iter().map(render_diagnostic).collect();
    diagnostics.extend(outcome.warnings);
    Compiled { program: outcome.typed.map(Arc::new), diagnostics }
}
