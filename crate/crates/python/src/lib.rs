//! Python bindings: compile programs, render them, and drive sessions.

use std::sync::{Arc, Mutex};

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use shapelab_core::eval::Evaluator;
use shapelab_core::runtime::RuntimeError;
use shapelab_core::svg::emit_animation;
use shapelab_core::transform::AffineTransform;
use shapelab_core::typeck::TypedProgram;
use shapelab_core::{compile as compile_source, Diagnostic, Event, Session as CoreSession};

fn diagnostic_dict<'py>(py: Python<'py>, d: &Diagnostic) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("severity", d.severity.as_str())?;
    dict.set_item("line", d.line)?;
    dict.set_item("column", d.column)?;
    dict.set_item("message", &d.message)?;
    dict.set_item("hint", &d.hint)?;
    Ok(dict)
}

fn runtime_err(e: RuntimeError) -> PyErr {
    match e {
        RuntimeError::Eval(_) => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Diagnostics for `source` as dicts; empty when it compiles cleanly.
#[pyfunction]
fn check<'py>(py: Python<'py>, source: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    compile_source(source).diagnostics.iter().map(|d| diagnostic_dict(py, d)).collect()
}

/// Compiles `source`; raises ValueError carrying the rendered diagnostics.
#[pyfunction]
fn compile(source: &str) -> PyResult<Program> {
    let c = compile_source(source);
    match c.program {
        Some(typed) => Ok(Program { typed }),
        None => {
            let lines: Vec<String> = c.diagnostics.iter().map(Diagnostic::render).collect();
            Err(PyValueError::new_err(lines.join("\n")))
        }
    }
}

#[pyclass(frozen)]
struct Program {
    typed: Arc<TypedProgram>,
}

#[pymethods]
impl Program {
    /// "graphicsApp", "notificationsApp" or "gameApp".
    #[getter]
    fn app_kind(&self) -> &'static str {
        self.typed.app.builtin_name()
    }

    /// The inferred type of a top-level definition.
    fn type_of(&self, name: &str) -> Option<String> {
        self.typed.types.get(name).map(|t| t.beginner())
    }

    /// The initial view as an SVG document.
    fn render(&self) -> PyResult<String> {
        Ok(CoreSession::new(self.typed.clone()).map_err(runtime_err)?.svg().to_string())
    }

    /// `(time, svg)` frames with `model.time` stepping from `t0` to `t1`.
    fn animate(&self, t0: f64, t1: f64, fps: f64) -> PyResult<Vec<(f64, String)>> {
        let mut ev = Evaluator::new(Arc::new(self.typed.program.clone()));
        emit_animation(&mut ev, t0, t1, fps).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn session(&self) -> PyResult<Session> {
        let s = CoreSession::new(self.typed.clone()).map_err(runtime_err)?;
        Ok(Session { inner: Mutex::new(s) })
    }
}

/// A running interactive program. Event methods return the messages they
/// fired, in canonical text form.
#[pyclass(frozen)]
struct Session {
    inner: Mutex<CoreSession>,
}

impl Session {
    fn with<T>(&self, f: impl FnOnce(&mut CoreSession) -> PyResult<T>) -> PyResult<T> {
        let mut s = self.inner.lock().map_err(|_| PyRuntimeError::new_err("session poisoned"))?;
        f(&mut s)
    }

    fn send(&self, event: Event) -> PyResult<Vec<String>> {
        self.with(|s| {
            let out = s.handle(&event).map_err(runtime_err)?;
            Ok(out.fired.iter().map(|m| m.dump()).collect())
        })
    }
}

#[pymethods]
impl Session {
    fn tap(&self, x: f64, y: f64) -> PyResult<Vec<String>> {
        self.send(Event::Tap { x, y })
    }

    #[pyo3(name = "move")]
    fn pointer_move(&self, x: f64, y: f64) -> PyResult<Vec<String>> {
        self.send(Event::PointerMove { x, y })
    }

    fn key_down(&self, key: String) -> PyResult<Vec<String>> {
        self.send(Event::KeyDown { key })
    }

    fn key_up(&self, key: String) -> PyResult<Vec<String>> {
        self.send(Event::KeyUp { key })
    }

    fn tick(&self, dt: f64) -> PyResult<Vec<String>> {
        self.send(Event::Tick { dt })
    }

    /// Applies an event given as JSON, e.g. `{"type": "tap", "x": 0, "y": 0}`.
    fn handle(&self, event_json: &str) -> PyResult<Vec<String>> {
        let event: Event = serde_json::from_str(event_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
        self.send(event)
    }

    #[getter]
    fn svg(&self) -> PyResult<String> {
        self.with(|s| Ok(s.svg().to_string()))
    }

    #[getter]
    fn model(&self) -> PyResult<String> {
        self.with(|s| Ok(s.model().dump()))
    }

    #[getter]
    fn elapsed(&self) -> PyResult<f64> {
        self.with(|s| Ok(s.elapsed()))
    }

    #[getter]
    fn keys_down(&self) -> PyResult<Vec<String>> {
        self.with(|s| Ok(s.keys_down().iter().cloned().collect()))
    }
}

/// A 2D affine map `(a, b, c, d, tx, ty)` in SVG `matrix()` order.
#[pyclass(frozen, name = "Transform", skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyTransform(AffineTransform);

#[pymethods]
impl PyTransform {
    #[new]
    #[pyo3(signature = (a=1.0, b=0.0, c=0.0, d=1.0, tx=0.0, ty=0.0))]
    fn new(a: f64, b: f64, c: f64, d: f64, tx: f64, ty: f64) -> Self {
        PyTransform(AffineTransform::new(a, b, c, d, tx, ty))
    }

    #[staticmethod]
    fn translation(tx: f64, ty: f64) -> Self {
        PyTransform(AffineTransform::translation(tx, ty))
    }

    #[staticmethod]
    fn rotation(angle: f64) -> Self {
        PyTransform(AffineTransform::rotation(angle))
    }

    #[staticmethod]
    fn scaling(k: f64) -> Self {
        PyTransform(AffineTransform::scaling(k))
    }

    /// `self ∘ inner`: apply `inner` first.
    fn compose(&self, inner: &PyTransform) -> Self {
        PyTransform(self.0.compose(&inner.0))
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert().map(PyTransform).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn apply(&self, x: f64, y: f64) -> (f64, f64) {
        self.0.apply((x, y))
    }

    fn entries(&self) -> [f64; 6] {
        self.0.entries()
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d, tx, ty] = self.0.entries();
        format!("Transform({a}, {b}, {c}, {d}, {tx}, {ty})")
    }
}

#[pymodule]
fn shapelab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(compile, m)?)?;
    m.add_class::<Program>()?;
    m.add_class::<Session>()?;
    m.add_class::<PyTransform>()?;
    Ok(())
}
