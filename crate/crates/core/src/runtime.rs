//! Interactive sessions: a model, a view derived from it, and events that
//! turn into messages for `update`.
//!
//! Every event is a transaction: it is applied to copies of the session
//! state, including re-deriving the view, and committed only if all of that
//! succeeds.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ast::AppKind;
use crate::eval::{flatten_scene, key_state, EvalError, Evaluator, FlatShape, HandlerId};
use crate::scene::{Geometry, HandlerKind};
use crate::svg::emit_svg;
use crate::typeck::TypedProgram;
use crate::value::Value;

/// External encoding of user interaction; coordinates are collage
/// coordinates (origin at the center, y up).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Event {
    Tap { x: f64, y: f64 },
    #[serde(rename = "move")]
    PointerMove { x: f64, y: f64 },
    #[serde(rename = "keydown")]
    KeyDown { key: String },
    #[serde(rename = "keyup")]
    KeyUp { key: String },
    Tick { dt: f64 },
}

/// What `update` receives: a user message, or the system tick of a game app.
#[derive(Debug, Clone, PartialEq)]
pub enum RuntimeMessage {
    UserMsg(Value),
    TickMsg { time: f64, keys: BTreeSet<String> },
}

impl RuntimeMessage {
    /// The message as the program sees it.
    pub fn to_value(&self, tick_ctor: &str) -> Value {
        match self {
            RuntimeMessage::UserMsg(v) => v.clone(),
            RuntimeMessage::TickMsg { time, keys } => {
                Value::ctor(tick_ctor, vec![Value::Number(*time), key_state(keys)])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RuntimeError {
    TickOnNonGameApp,
    BadEvent(String),
    Eval(EvalError),
}

impl From<EvalError> for RuntimeError {
    fn from(e: EvalError) -> Self {
        RuntimeError::Eval(e)
    }
}

impl std::fmt::Display for RuntimeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RuntimeError::TickOnNonGameApp => write!(f, "tick events only apply to gameApp programs"),
            RuntimeError::BadEvent(m) => write!(f, "bad event: {m}"),
            RuntimeError::Eval(e) => write!(f, "{}", e.diagnostic().render()),
        }
    }
}

impl std::error::Error for RuntimeError {}

/// A rendered view: the collage, its leaves and its SVG text.
#[derive(Debug, Clone)]
pub struct View {
    pub collage: Value,
    pub flat: Vec<FlatShape>,
    pub svg: String,
}

impl View {
    fn handler_ids(&self) -> BTreeSet<HandlerId> {
        self.flat.iter().flat_map(|f| f.handlers.iter().map(|(id, _)| id.clone())).collect()
    }
}

/// What one event did.
#[derive(Debug, Clone, PartialEq)]
pub struct EventOutcome {
    /// Messages folded through `update`, in order.
    pub fired: Vec<Value>,
}

pub struct Session {
    typed: Arc<TypedProgram>,
    ev: Evaluator,
    model: Value,
    elapsed: f64,
    keys: BTreeSet<String>,
    inside: BTreeSet<HandlerId>,
    log: Vec<Event>,
    view: Arc<View>,
}

impl Session {
    pub fn new(typed: Arc<TypedProgram>) -> Result<Session, RuntimeError> {
        let mut ev = Evaluator::new(Arc::new(typed.program.clone()));
        let model = ev.initial_model()?;
        let view = Arc::new(render(&mut ev, &model)?);
        Ok(Session {
            typed,
            ev,
            model,
            elapsed: 0.0,
            keys: BTreeSet::new(),
            inside: BTreeSet::new(),
            log: Vec::new(),
            view,
        })
    }

    /// A fresh session with `events` applied in order.
    pub fn replay(typed: Arc<TypedProgram>, events: &[Event]) -> Result<Session, RuntimeError> {
        let mut s = Session::new(typed)?;
        for e in events {
            s.handle(e)?;
        }
        Ok(s)
    }

    pub fn app_kind(&self) -> AppKind {
        self.typed.app
    }

    pub fn model(&self) -> &Value {
        &self.model
    }

    pub fn elapsed(&self) -> f64 {
        self.elapsed
    }

    pub fn keys_down(&self) -> &BTreeSet<String> {
        &self.keys
    }

    pub fn inside_handlers(&self) -> &BTreeSet<HandlerId> {
        &self.inside
    }

    pub fn event_log(&self) -> &[Event] {
        &self.log
    }

    /// The current view, re-derived only when the model changes.
    pub fn current_view(&self) -> Arc<View> {
        self.view.clone()
    }

    pub fn svg(&self) -> &str {
        &self.view.svg
    }

    /// Applies one event. On error the session is left exactly as before.
    pub fn handle(&mut self, event: &Event) -> Result<EventOutcome, RuntimeError> {
        let mut tx = Tx {
            model: self.model.clone(),
            elapsed: self.elapsed,
            keys: self.keys.clone(),
            inside: self.inside.clone(),
            fired: Vec::new(),
        };
        let tick_ctor = self.typed.tick_ctor().map(str::to_string);
        match event {
            Event::Tap { x, y } => {
                let p = point(*x, *y)?;
                for msg in tap_messages(&self.view.flat, p) {
                    let msg = match msg {
                        TapMessage::Plain(v) => v,
                        TapMessage::At(f) => self.ev.apply(f, vec![Value::point(p.0, p.1)])?,
                    };
                    tx.send(&mut self.ev, msg)?;
                }
            }
            Event::PointerMove { x, y } => {
                let p = point(*x, *y)?;
                for (id, kind, payload, now_inside) in hover_handlers(&self.view.flat, p) {
                    if now_inside && tx.inside.insert(id.clone()) {
                        if kind == HandlerKind::Enter {
                            tx.send(&mut self.ev, payload)?;
                        }
                    } else if !now_inside && tx.inside.remove(&id) && kind == HandlerKind::Leave {
                        tx.send(&mut self.ev, payload)?;
                    }
                }
            }
            Event::KeyDown { key } => {
                tx.keys.insert(key.clone());
            }
            Event::KeyUp { key } => {
                tx.keys.remove(key);
            }
            Event::Tick { dt } => {
                let Some(tick) = tick_ctor else {
                    return Err(RuntimeError::TickOnNonGameApp);
                };
                if !(dt.is_finite() && *dt > 0.0) {
                    return Err(RuntimeError::BadEvent("tick dt must be a positive number".into()));
                }
                tx.elapsed += dt;
                let msg = RuntimeMessage::TickMsg { time: tx.elapsed, keys: tx.keys.clone() }.to_value(&tick);
                tx.send(&mut self.ev, msg)?;
            }
        }

        let view = if tx.model == self.model {
            self.view.clone()
        } else {
            Arc::new(render(&mut self.ev, &tx.model)?)
        };
        let present = view.handler_ids();
        tx.inside.retain(|id| present.contains(id));

        self.model = tx.model;
        self.elapsed = tx.elapsed;
        self.keys = tx.keys;
        self.inside = tx.inside;
        self.view = view;
        self.log.push(event.clone());
        Ok(EventOutcome { fired: tx.fired })
    }
}

struct Tx {
    model: Value,
    elapsed: f64,
    keys: BTreeSet<String>,
    inside: BTreeSet<HandlerId>,
    fired: Vec<Value>,
}

impl Tx {
    fn send(&mut self, ev: &mut Evaluator, msg: Value) -> Result<(), RuntimeError> {
        self.model = ev.update(&msg, &self.model)?;
        self.fired.push(msg);
        Ok(())
    }
}

fn point(x: f64, y: f64) -> Result<(f64, f64), RuntimeError> {
    if x.is_finite() && y.is_finite() {
        Ok((x, y))
    } else {
        Err(RuntimeError::BadEvent("coordinates must be finite numbers".into()))
    }
}

fn render(ev: &mut Evaluator, model: &Value) -> Result<View, RuntimeError> {
    let collage = ev.build_collage(model)?;
    let flat = match &collage {
        Value::Collage { root, .. } => flatten_scene(root),
        _ => Vec::new(),
    };
    let svg = emit_svg(&collage);
    Ok(View { collage, flat, svg })
}

/// Whether local point `(x, y)` lies inside `g` (boundary included).
pub fn geometry_contains(g: &Geometry, (x, y): (f64, f64)) -> bool {
    match g {
        Geometry::Circle { r } => x * x + y * y <= r * r,
        Geometry::Square { side } => x.abs() <= side / 2.0 && y.abs() <= side / 2.0,
        Geometry::Rect { w, h } => x.abs() <= w / 2.0 && y.abs() <= h / 2.0,
        Geometry::Oval { w, h } => {
            if *w <= 0.0 || *h <= 0.0 {
                return false;
            }
            let (u, v) = (2.0 * x / w, 2.0 * y / h);
            u * u + v * v <= 1.0
        }
        Geometry::Triangle { r } => {
            let vs = Geometry::triangle_vertices(*r);
            let cross = |a: (f64, f64), b: (f64, f64)| (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0);
            let c = [cross(vs[0], vs[1]), cross(vs[1], vs[2]), cross(vs[2], vs[0])];
            c.iter().all(|v| *v >= 0.0) || c.iter().all(|v| *v <= 0.0)
        }
        Geometry::RoundedRect { w, h, radius } => {
            let (ax, ay) = (x.abs(), y.abs());
            if ax > w / 2.0 || ay > h / 2.0 {
                return false;
            }
            let (cx, cy) = (w / 2.0 - radius, h / 2.0 - radius);
            if ax <= cx || ay <= cy {
                return true;
            }
            let (dx, dy) = (ax - cx, ay - cy);
            dx * dx + dy * dy <= radius * radius
        }
        Geometry::Text { content, size } => {
            let (tw, th) = Geometry::text_box(content, *size);
            x.abs() <= tw / 2.0 && y.abs() <= th / 2.0
        }
    }
}

/// Whether a flattened leaf covers collage point `p`. Leaves with singular
/// transforms cover nothing.
pub fn shape_contains(shape: &FlatShape, p: (f64, f64)) -> bool {
    match shape.transform.invert() {
        Ok(inv) => geometry_contains(&shape.geometry, inv.apply(p)),
        Err(_) => false,
    }
}

/// Indices of the leaves under `p`, topmost first.
pub fn hit_shapes(flat: &[FlatShape], p: (f64, f64)) -> Vec<usize> {
    (0..flat.len()).rev().filter(|&i| shape_contains(&flat[i], p)).collect()
}

/// Handlers of every leaf under `p`, topmost leaf first.
pub fn hit_test(flat: &[FlatShape], p: (f64, f64)) -> Vec<(HandlerKind, Value)> {
    hit_shapes(flat, p)
        .into_iter()
        .flat_map(|i| flat[i].handlers.iter().map(|(_, h)| (h.kind, h.payload.clone())))
        .collect()
}

enum TapMessage {
    Plain(Value),
    /// Needs the tap position.
    At(Value),
}

/// The tap handlers of the topmost tappable leaf under `p`.
fn tap_messages(flat: &[FlatShape], p: (f64, f64)) -> Vec<TapMessage> {
    let target = hit_shapes(flat, p)
        .into_iter()
        .find(|&i| flat[i].handlers.iter().any(|(_, h)| h.kind.is_tap()));
    let Some(i) = target else { return Vec::new() };
    flat[i]
        .handlers
        .iter()
        .filter_map(|(_, h)| match h.kind {
            HandlerKind::Tap => Some(TapMessage::Plain(h.payload.clone())),
            HandlerKind::TapAt => Some(TapMessage::At(h.payload.clone())),
            _ => None,
        })
        .collect()
}

/// Every Enter/Leave handler once, in paint order (bottom to top), with
/// whether the pointer is inside any leaf it applies to.
fn hover_handlers(flat: &[FlatShape], p: (f64, f64)) -> Vec<(HandlerId, HandlerKind, Value, bool)> {
    let mut out: Vec<(HandlerId, HandlerKind, Value, bool)> = Vec::new();
    for shape in flat {
        let mut hit = None;
        for (id, h) in &shape.handlers {
            if h.kind.is_tap() {
                continue;
            }
            let inside = *hit.get_or_insert_with(|| shape_contains(shape, p));
            match out.iter_mut().find(|(seen, ..)| seen == id) {
                Some(entry) => entry.3 |= inside,
                None => out.push((id.clone(), h.kind, h.payload.clone(), inside)),
            }
        }
    }
    out
}
