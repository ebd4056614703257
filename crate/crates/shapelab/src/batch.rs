//! The non-interactive subcommands: check, render, animate and run.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use shapelab_core::eval::Evaluator;
use shapelab_core::runtime::RuntimeError;
use shapelab_core::svg::{emit_animation, frame_file_name, manifest, AnimationError};
use shapelab_core::typeck::TypedProgram;
use shapelab_core::{compile, Diagnostic, Event, Session};

#[derive(Debug)]
pub enum Failure {
    /// Unreadable input or unwritable output.
    Io(String),
    /// Malformed flags or script.
    Usage(String),
    /// Diagnostics from compiling or running the program.
    Program(Vec<Diagnostic>),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Program(_) => 1,
            Failure::Io(_) | Failure::Usage(_) => 2,
        }
    }

    /// Lines for standard error.
    pub fn lines(&self) -> Vec<String> {
        match self {
            Failure::Io(m) | Failure::Usage(m) => vec![format!("error: {m}")],
            Failure::Program(ds) => ds.iter().map(Diagnostic::cli_line).collect(),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

impl From<RuntimeError> for Failure {
    fn from(e: RuntimeError) -> Self {
        match e {
            RuntimeError::Eval(e) => Failure::Program(vec![e.diagnostic()]),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// A compiled program and the warnings it produced.
pub struct Loaded {
    pub program: Arc<TypedProgram>,
    pub warnings: Vec<Diagnostic>,
}

pub fn load(path: &Path) -> Result<Loaded, Failure> {
    let source = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let c = compile(&source);
    match c.program {
        Some(program) => Ok(Loaded { program, warnings: c.diagnostics }),
        None => Err(Failure::Program(c.diagnostics)),
    }
}

/// The initial view; game apps render at time 0.
pub fn render(program: Arc<TypedProgram>) -> Result<String, Failure> {
    Ok(Session::new(program)?.svg().to_string())
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

/// Writes `frame_NNNNNN.svg` files and `manifest.json` into `out`; returns
/// the number of frames.
pub fn animate(program: Arc<TypedProgram>, from: f64, to: f64, fps: f64, out: &Path) -> Result<usize, Failure> {
    let mut ev = Evaluator::new(Arc::new(program.program.clone()));
    let frames = emit_animation(&mut ev, from, to, fps).map_err(|e| match e {
        AnimationError::Eval(e) => Failure::Program(vec![e.diagnostic()]),
        bad => Failure::Usage(bad.to_string()),
    })?;
    fs::create_dir_all(out).map_err(|e| io_err(out, e))?;
    for (i, (_, svg)) in frames.iter().enumerate() {
        write(&out.join(frame_file_name(i)), svg)?;
    }
    let json = serde_json::to_string_pretty(&manifest(&frames)).expect("manifest serializes");
    write(&out.join("manifest.json"), &json)?;
    Ok(frames.len())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceStep {
    pub event: Event,
    pub fired_messages: Vec<String>,
    pub model_dump: String,
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Trace {
    pub initial_model: String,
    pub steps: Vec<TraceStep>,
}

/// Applies `events` to a fresh session; returns the final SVG and the trace.
pub fn replay(program: Arc<TypedProgram>, events: &[Event]) -> Result<(String, Trace), Failure> {
    let mut s = Session::new(program)?;
    let mut trace = Trace { initial_model: s.model().dump(), steps: Vec::new() };
    for (i, e) in events.iter().enumerate() {
        let outcome = s.handle(e).map_err(|err| match Failure::from(err) {
            Failure::Usage(m) => Failure::Usage(format!("event {i}: {m}")),
            other => other,
        })?;
        trace.steps.push(TraceStep {
            event: e.clone(),
            fired_messages: outcome.fired.iter().map(|m| m.dump()).collect(),
            model_dump: s.model().dump(),
            elapsed: s.elapsed(),
        });
    }
    Ok((s.svg().to_string(), trace))
}

pub fn read_script(path: &Path) -> Result<Vec<Event>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes `final.svg` and `trace.json` into `out`.
pub fn run(program: Arc<TypedProgram>, script: &Path, out: &Path) -> Result<Trace, Failure> {
    let events = read_script(script)?;
    let (svg, trace) = replay(program, &events)?;
    fs::create_dir_all(out).map_err(|e| io_err(out, e))?;
    write(&out.join("final.svg"), &svg)?;
    write(&out.join("trace.json"), &serde_json::to_string_pretty(&trace).expect("trace serializes"))?;
    Ok(trace)
}

/// Where `render` writes when no `--out` is given: nowhere, stdout instead.
pub fn render_to(program: Arc<TypedProgram>, out: Option<&Path>) -> Result<Option<String>, Failure> {
    let svg = render(program)?;
    match out {
        Some(path) => write(path, &svg).map(|_| None),
        None => Ok(Some(svg)),
    }
}
