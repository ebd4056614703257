//! Core of the shapelab graphics language.
//!
//! Source text goes through [`parser`] and [`desugar`], is checked by
//! [`typeck`], evaluated to scene trees by [`eval`], rendered by [`svg`], and
//! driven interactively by [`runtime`].

pub mod ast;
pub mod builtins;
pub mod color;
pub mod compile;
pub mod desugar;
pub mod diagnostic;
pub mod eval;
pub mod lexer;
pub mod numfmt;
pub mod parser;
pub mod pretty;
pub mod runtime;
pub mod scene;
pub mod svg;
pub mod transform;
pub mod typeck;
pub mod types;
pub mod value;

pub use compile::{compile, Compiled};
pub use diagnostic::{Diagnostic, Severity};
pub use runtime::{Event, Session};
pub use value::Value;
