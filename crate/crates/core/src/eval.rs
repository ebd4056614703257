//! Tree-walking evaluation of checked programs.
//!
//! Globals are evaluated lazily on first use and cached; a definition that
//! needs its own value while being computed is a `CyclicDefinition`. Every
//! entry point runs on a thread with a large stack so the 10,000-frame
//! recursion limit is reached long before the native stack is.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::ast::*;
use crate::builtins::Builtin;
use crate::color::{color_from_name, Color, LinePattern, LineType};
use crate::diagnostic::Diagnostic;
use crate::scene::{Geometry, Handler, HandlerKind, NodeContent, SceneNode, Style};
use crate::transform::AffineTransform;
use crate::value::{Closure, Value};

pub const RECURSION_LIMIT: usize = 10_000;
const EVAL_STACK_BYTES: usize = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    pub max_depth: usize,
    pub time: Duration,
    /// Approximate bytes of values built during one evaluation.
    pub alloc_bytes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_depth: RECURSION_LIMIT,
            time: Duration::from_secs(5),
            alloc_bytes: 64 << 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalErrorKind {
    DivideByZero,
    RecursionLimit,
    CyclicDefinition(String),
    TooSlow,
    TooLarge,
    /// A value of the wrong shape reached an operation. Cannot happen for
    /// checked programs.
    Internal(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub pos: Pos,
    /// Animation time at which the error happened, if any.
    pub time: Option<f64>,
}

impl EvalError {
    fn new(kind: EvalErrorKind, pos: Pos) -> Self {
        EvalError { kind, pos, time: None }
    }

    pub fn at_time(mut self, t: f64) -> Self {
        self.time = Some(t);
        self
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            EvalErrorKind::DivideByZero => "DivideByZero",
            EvalErrorKind::RecursionLimit => "RecursionLimit",
            EvalErrorKind::CyclicDefinition(_) => "CyclicDefinition",
            EvalErrorKind::TooSlow => "TooSlow",
            EvalErrorKind::TooLarge => "TooLarge",
            EvalErrorKind::Internal(_) => "Internal",
        }
    }

    pub fn diagnostic(&self) -> Diagnostic {
        let (msg, hint) = match &self.kind {
            EvalErrorKind::DivideByZero => ("This divides by zero.".to_string(), "check the number after / can never be 0."),
            EvalErrorKind::RecursionLimit => (
                format!("A function called itself more than {RECURSION_LIMIT} times."),
                "make sure each call gets closer to a case that stops.",
            ),
            EvalErrorKind::CyclicDefinition(name) => (
                format!("{name} is defined using itself."),
                "a value cannot need its own value to be worked out.",
            ),
            EvalErrorKind::TooSlow => ("This program is too slow.".to_string(), "look for a function that keeps calling itself."),
            EvalErrorKind::TooLarge => ("This program is too large.".to_string(), "look for a function that keeps making more shapes."),
            EvalErrorKind::Internal(m) => (format!("Internal error: {m}."), "this is a bug in shapelab, not in your program."),
        };
        let msg = match self.time {
            Some(t) => format!("{msg} (at time {})", crate::numfmt::fmt_num(t)),
            None => msg,
        };
        Diagnostic::error(self.pos, msg, hint)
    }
}

pub type EvalResult<T> = Result<T, EvalError>;

fn internal<T>(what: impl Into<String>, pos: Pos) -> EvalResult<T> {
    Err(EvalError::new(EvalErrorKind::Internal(what.into()), pos))
}

enum Global {
    InProgress,
    Done(Value),
}

type Frame = Vec<(Arc<str>, Value)>;

/// Evaluates one program. Cached globals are reused across calls, which is
/// sound because evaluation is pure.
pub struct Evaluator {
    program: Arc<Program>,
    defs: HashMap<String, usize>,
    bodies: Vec<Arc<Expr>>,
    globals: HashMap<String, Global>,
    limits: Limits,
    depth: usize,
    steps: u64,
    allocated: usize,
    deadline: Instant,
}

impl Evaluator {
    pub fn new(program: Arc<Program>) -> Self {
        Self::with_limits(program, Limits::default())
    }

    pub fn with_limits(program: Arc<Program>, limits: Limits) -> Self {
        let defs = program
            .definitions
            .iter()
            .enumerate()
            .map(|(i, d)| (d.name.name.clone(), i))
            .collect();
        let bodies = program.definitions.iter().map(|d| Arc::new(d.body.clone())).collect();
        Evaluator {
            program,
            defs,
            bodies,
            globals: HashMap::new(),
            limits,
            depth: 0,
            steps: 0,
            allocated: 0,
            deadline: Instant::now(),
        }
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    /// Runs `f` with fresh budgets on a thread with a large stack.
    fn run<T: Send>(&mut self, f: impl FnOnce(&mut Self) -> EvalResult<T> + Send) -> EvalResult<T> {
        self.depth = 0;
        self.steps = 0;
        self.allocated = 0;
        self.deadline = Instant::now() + self.limits.time;
        let result = std::thread::scope(|s| {
            std::thread::Builder::new()
                .name("shapelab-eval".into())
                .stack_size(EVAL_STACK_BYTES)
                .spawn_scoped(s, || f(self))
                .expect("spawn evaluation thread")
                .join()
        });
        match result {
            Ok(r) => {
                if r.is_err() {
                    // A failed run may leave globals half-computed.
                    self.globals.retain(|_, g| matches!(g, Global::Done(_)));
                }
                r
            }
            Err(_) => internal("evaluation panicked", Pos::default()),
        }
    }

    pub fn global(&mut self, name: &str) -> EvalResult<Value> {
        let name = name.to_string();
        self.run(move |ev| ev.global_value(&name, Pos::default()))
    }

    pub fn eval(&mut self, e: &Expr) -> EvalResult<Value> {
        self.run(|ev| ev.eval_expr(e, &Vec::new()))
    }

    pub fn apply(&mut self, f: Value, args: Vec<Value>) -> EvalResult<Value> {
        self.run(move |ev| ev.apply_values(f, args, Pos::default()))
    }

    /// The starting model; graphics apps get the unit model.
    pub fn initial_model(&mut self) -> EvalResult<Value> {
        let program = self.program.clone();
        match &program.main {
            AppForm::GraphicsApp { .. } => Ok(Value::unit()),
            AppForm::NotificationsApp { model, .. } | AppForm::GameApp { model, .. } => self.eval(model),
        }
    }

    /// Evaluates the view for `model` to a `Value::Collage`.
    pub fn build_collage(&mut self, model: &Value) -> EvalResult<Value> {
        let program = self.program.clone();
        let model = model.clone();
        self.run(move |ev| match &program.main {
            AppForm::GraphicsApp { view } => ev.eval_expr(view, &Vec::new()),
            AppForm::NotificationsApp { view, .. } | AppForm::GameApp { view, .. } => {
                let f = ev.global_value(&view.name, view.pos)?;
                ev.apply_values(f, vec![model], view.pos)
            }
        })
    }

    /// `update msg model`; graphics apps have no update and keep the model.
    pub fn update(&mut self, msg: &Value, model: &Value) -> EvalResult<Value> {
        let program = self.program.clone();
        let (msg, model) = (msg.clone(), model.clone());
        self.run(move |ev| match &program.main {
            AppForm::GraphicsApp { .. } => Ok(model),
            AppForm::NotificationsApp { update, .. } | AppForm::GameApp { update, .. } => {
                let f = ev.global_value(&update.name, update.pos)?;
                ev.apply_values(f, vec![msg, model], update.pos)
            }
        })
    }

    fn tick(&mut self, pos: Pos) -> EvalResult<()> {
        self.steps += 1;
        if self.steps.is_multiple_of(1024) && Instant::now() > self.deadline {
            return Err(EvalError::new(EvalErrorKind::TooSlow, pos));
        }
        Ok(())
    }

    fn alloc(&mut self, values: usize, pos: Pos) -> EvalResult<()> {
        self.allocated += values * std::mem::size_of::<Value>();
        if self.allocated > self.limits.alloc_bytes {
            return Err(EvalError::new(EvalErrorKind::TooLarge, pos));
        }
        Ok(())
    }

    fn global_value(&mut self, name: &str, pos: Pos) -> EvalResult<Value> {
        match self.globals.get(name) {
            Some(Global::Done(v)) => return Ok(v.clone()),
            Some(Global::InProgress) => {
                return Err(EvalError::new(EvalErrorKind::CyclicDefinition(name.to_string()), pos))
            }
            None => {}
        }
        let idx = match self.defs.get(name) {
            Some(i) => *i,
            None => return builtin_value(name, pos),
        };
        let def = &self.program.definitions[idx];
        if !def.params.is_empty() {
            let v = Value::Closure(Arc::new(Closure {
                name: name.to_string(),
                params: def.params.iter().map(|p| p.name.clone()).collect(),
                body: self.bodies[idx].clone(),
                captured: Vec::new(),
            }));
            self.globals.insert(name.to_string(), Global::Done(v.clone()));
            return Ok(v);
        }
        self.globals.insert(name.to_string(), Global::InProgress);
        let body = self.bodies[idx].clone();
        let v = self.eval_expr(&body, &Vec::new())?;
        self.globals.insert(name.to_string(), Global::Done(v.clone()));
        Ok(v)
    }

    fn eval_expr(&mut self, e: &Expr, frame: &Frame) -> EvalResult<Value> {
        self.tick(e.pos)?;
        match &e.kind {
            ExprKind::Number(n) => Ok(Value::Number(*n)),
            ExprKind::Str(s) => Ok(Value::Str(s.as_str().into())),
            ExprKind::Bool(b) => Ok(Value::Boolean(*b)),
            ExprKind::Var(name) => self.lookup(name, e.pos, frame),
            ExprKind::Ctor(name) => Ok(self.ctor_value(name)),
            ExprKind::Tuple(items) => {
                self.alloc(items.len(), e.pos)?;
                let vs = items.iter().map(|x| self.eval_expr(x, frame)).collect::<EvalResult<_>>()?;
                Ok(Value::Tuple(vs))
            }
            ExprKind::List(items) => {
                self.alloc(items.len(), e.pos)?;
                let vs = items.iter().map(|x| self.eval_expr(x, frame)).collect::<EvalResult<_>>()?;
                Ok(Value::List(vs))
            }
            ExprKind::Record(fields) => {
                self.alloc(fields.len() * 2, e.pos)?;
                let mut map = BTreeMap::new();
                for (k, v) in fields {
                    map.insert(k.clone(), self.eval_expr(v, frame)?);
                }
                Ok(Value::Record(map))
            }
            ExprKind::RecordUpdate(base, fields) => {
                let mut map = match self.lookup(&base.name, base.pos, frame)? {
                    Value::Record(m) => m,
                    other => return internal(format!("update of {}", other.variant_name()), e.pos),
                };
                self.alloc(map.len() * 2, e.pos)?;
                for (k, v) in fields {
                    let v = self.eval_expr(v, frame)?;
                    map.insert(k.clone(), v);
                }
                Ok(Value::Record(map))
            }
            ExprKind::Field(inner, field) => match self.eval_expr(inner, frame)? {
                Value::Record(mut m) => match m.remove(field) {
                    Some(v) => Ok(v),
                    None => internal(format!("missing field {field}"), e.pos),
                },
                other => internal(format!(".{field} of {}", other.variant_name()), e.pos),
            },
            ExprKind::App(f, args) => {
                let fv = self.eval_expr(f, frame)?;
                let mut avs = Vec::with_capacity(args.len());
                for a in args {
                    avs.push(self.eval_expr(a, frame)?);
                }
                self.apply_values(fv, avs, f.pos)
            }
            ExprKind::BinOp(op, a, b) => {
                let x = self.eval_expr(a, frame)?;
                let y = self.eval_expr(b, frame)?;
                binop(*op, x, y, e.pos)
            }
            ExprKind::Negate(inner) => match self.eval_expr(inner, frame)? {
                Value::Number(n) => Ok(Value::Number(-n)),
                other => internal(format!("negate {}", other.variant_name()), e.pos),
            },
            ExprKind::If(c, t, f) => match self.eval_expr(c, frame)? {
                Value::Boolean(true) => self.eval_expr(t, frame),
                Value::Boolean(false) => self.eval_expr(f, frame),
                other => internal(format!("if on {}", other.variant_name()), e.pos),
            },
            ExprKind::Case(scrutinee, branches) => {
                let (name, args) = match self.eval_expr(scrutinee, frame)? {
                    Value::Ctor { name, args, .. } => (name, args),
                    other => return internal(format!("case on {}", other.variant_name()), e.pos),
                };
                let Some(branch) = branches.iter().find(|b| *b.ctor.name == *name) else {
                    return internal(format!("no branch for {name}"), e.pos);
                };
                let mut inner = frame.clone();
                for (binder, v) in branch.binders.iter().zip(args) {
                    bind(binder, v, &mut inner, e.pos)?;
                }
                self.eval_expr(&branch.body, &inner)
            }
            ExprKind::Pipe(..) => {
                let d = crate::desugar::desugar_pipelines(e.clone());
                self.eval_expr(&d, frame)
            }
        }
    }

    fn lookup(&mut self, name: &str, pos: Pos, frame: &Frame) -> EvalResult<Value> {
        if let Some((_, v)) = frame.iter().rev().find(|(n, _)| &**n == name) {
            return Ok(v.clone());
        }
        self.global_value(name, pos)
    }

    fn ctor_value(&self, name: &str) -> Value {
        let arity = self
            .program
            .type_decls
            .iter()
            .flat_map(|d| &d.constructors)
            .find(|c| c.name.name == name)
            .map_or(0, |c| c.args.len());
        Value::Ctor { name: name.into(), arity, args: Vec::new() }
    }

    fn apply_values(&mut self, f: Value, mut args: Vec<Value>, pos: Pos) -> EvalResult<Value> {
        if args.is_empty() {
            return Ok(f);
        }
        match f {
            Value::Closure(c) => {
                let need = c.params.len() - c.captured.len();
                let rest = if args.len() > need { args.split_off(need) } else { Vec::new() };
                let mut captured = c.captured.clone();
                captured.extend(args);
                if captured.len() < c.params.len() {
                    return Ok(Value::Closure(Arc::new(Closure { captured, ..(*c).clone() })));
                }
                if self.depth >= self.limits.max_depth {
                    return Err(EvalError::new(EvalErrorKind::RecursionLimit, pos));
                }
                self.depth += 1;
                let frame: Frame = c.params.iter().map(|p| Arc::from(p.as_str())).zip(captured).collect();
                let result = self.eval_expr(&c.body, &frame);
                self.depth -= 1;
                self.apply_values(result?, rest, pos)
            }
            Value::Builtin(b, mut collected) => {
                let need = b.arity() - collected.len();
                let rest = if args.len() > need { args.split_off(need) } else { Vec::new() };
                collected.extend(args);
                if collected.len() < b.arity() {
                    return Ok(Value::Builtin(b, collected));
                }
                let v = self.call_builtin(b, collected, pos)?;
                self.apply_values(v, rest, pos)
            }
            Value::Ctor { name, arity, args: mut have } if have.len() + args.len() <= arity => {
                have.extend(args);
                Ok(Value::Ctor { name, arity, args: have })
            }
            other => internal(format!("calling {}", other.variant_name()), pos),
        }
    }

    fn call_builtin(&mut self, b: Builtin, args: Vec<Value>, pos: Pos) -> EvalResult<Value> {
        use Builtin as B;
        let mut it = args.into_iter();
        let mut next = || it.next().expect("arity checked");
        let num = |v: Value| match v {
            Value::Number(n) => Ok(n),
            other => internal(format!("{} given {}", b.name(), other.variant_name()), pos),
        };
        let dim = |v: Value| num(v).map(|n| n.max(0.0));
        let v = match b {
            B::Circle => Value::Stencil(Geometry::Circle { r: dim(next())? }),
            B::Square => Value::Stencil(Geometry::Square { side: dim(next())? }),
            B::Triangle => Value::Stencil(Geometry::Triangle { r: dim(next())? }),
            B::Rect => Value::Stencil(Geometry::Rect { w: dim(next())?, h: dim(next())? }),
            B::Oval => Value::Stencil(Geometry::Oval { w: dim(next())?, h: dim(next())? }),
            B::RoundedRect => {
                let (w, h) = (dim(next())?, dim(next())?);
                let radius = dim(next())?.min(w / 2.0).min(h / 2.0);
                Value::Stencil(Geometry::RoundedRect { w, h, radius })
            }
            B::Text => match next() {
                Value::Str(s) => Value::Stencil(Geometry::Text { content: s.to_string(), size: 12.0 }),
                other => return internal(format!("text given {}", other.variant_name()), pos),
            },
            B::Size => {
                let k = dim(next())?;
                match next() {
                    Value::Stencil(Geometry::Text { content, .. }) => Value::Stencil(Geometry::Text { content, size: k }),
                    s @ Value::Stencil(_) => s,
                    other => return internal(format!("size given {}", other.variant_name()), pos),
                }
            }
            B::Filled => {
                let c = expect_color(next(), pos)?;
                let g = expect_stencil(next(), pos)?;
                self.alloc(1, pos)?;
                Value::Shape(Arc::new(SceneNode::leaf(g, Style::Filled(c))))
            }
            B::Outlined => {
                let lt = match next() {
                    Value::LineType(lt) => lt,
                    other => return internal(format!("outlined given {}", other.variant_name()), pos),
                };
                let g = expect_stencil(next(), pos)?;
                self.alloc(1, pos)?;
                Value::Shape(Arc::new(SceneNode::leaf(g, Style::Outlined(lt, Color::opaque(0, 0, 0)))))
            }
            B::Move | B::Scale | B::Rotate => {
                let arg = next();
                let node = expect_shape(next(), pos)?;
                Value::Shape(Arc::new(apply_transform_builtin(b, &arg, &node).or_else(|m| internal(m, pos))?))
            }
            B::Group => {
                let children = expect_shapes(next(), pos)?;
                self.alloc(children.len() + 1, pos)?;
                Value::Shape(Arc::new(SceneNode::group(children)))
            }
            B::NotifyTap | B::NotifyTapAt | B::NotifyEnter | B::NotifyLeave => {
                let kind = match b {
                    B::NotifyTap => HandlerKind::Tap,
                    B::NotifyTapAt => HandlerKind::TapAt,
                    B::NotifyEnter => HandlerKind::Enter,
                    _ => HandlerKind::Leave,
                };
                let payload = next();
                let node = expect_shape(next(), pos)?;
                Value::Shape(Arc::new(attach_handler(kind, payload, &node)))
            }
            B::Collage => {
                let width = dim(next())?;
                let height = dim(next())?;
                let children = expect_shapes(next(), pos)?;
                self.alloc(children.len() + 1, pos)?;
                Value::Collage { width, height, root: Arc::new(SceneNode::group(children)) }
            }
            B::Solid | B::Dotted | B::Dashed => {
                let pattern = match b {
                    B::Solid => LinePattern::Solid,
                    B::Dotted => LinePattern::Dotted,
                    _ => LinePattern::Dashed,
                };
                Value::LineType(LineType { pattern, width: dim(next())? })
            }
            B::Rgb => {
                let (r, g, bl) = (num(next())?, num(next())?, num(next())?);
                Value::Color(Color::from_rgb_clamped(r, g, bl))
            }
            B::Sin => Value::Number(num(next())?.sin()),
            B::Cos => Value::Number(num(next())?.cos()),
            B::Degrees => Value::Number(num(next())?.to_radians()),
            B::KeyDown => {
                let key = match next() {
                    Value::Str(s) => s,
                    other => return internal(format!("keyDown given {}", other.variant_name()), pos),
                };
                match next() {
                    Value::KeyState(keys) => Value::Boolean(keys.contains(&*key)),
                    other => return internal(format!("keyDown given {}", other.variant_name()), pos),
                }
            }
        };
        Ok(v)
    }
}

fn bind(binder: &Binder, v: Value, frame: &mut Frame, pos: Pos) -> EvalResult<()> {
    match (binder, v) {
        (Binder::Name(n), v) => frame.push((Arc::from(n.as_str()), v)),
        (Binder::Wildcard, _) => {}
        (Binder::Pair(a, b), Value::Tuple(mut items)) if items.len() == 2 => {
            let y = items.pop().expect("two items");
            let x = items.pop().expect("two items");
            bind(a, x, frame, pos)?;
            bind(b, y, frame, pos)?;
        }
        (_, other) => return internal(format!("pair pattern on {}", other.variant_name()), pos),
    }
    Ok(())
}

fn builtin_value(name: &str, pos: Pos) -> EvalResult<Value> {
    if let Some(b) = Builtin::from_name(name) {
        return Ok(Value::Builtin(b, Vec::new()));
    }
    if name == "pi" {
        return Ok(Value::Number(std::f64::consts::PI));
    }
    match color_from_name(name) {
        Ok(c) => Ok(Value::Color(c)),
        Err(_) => internal(format!("unknown name {name}"), pos),
    }
}

fn binop(op: BinOp, x: Value, y: Value, pos: Pos) -> EvalResult<Value> {
    if op == BinOp::Eq {
        return Ok(Value::Boolean(x == y));
    }
    let (a, b) = match (x, y) {
        (Value::Number(a), Value::Number(b)) => (a, b),
        (x, y) => return internal(format!("{} on {} and {}", op.symbol(), x.variant_name(), y.variant_name()), pos),
    };
    Ok(match op {
        BinOp::Add => Value::Number(a + b),
        BinOp::Sub => Value::Number(a - b),
        BinOp::Mul => Value::Number(a * b),
        BinOp::Div if b == 0.0 => return Err(EvalError::new(EvalErrorKind::DivideByZero, pos)),
        BinOp::Div => Value::Number(a / b),
        BinOp::Lt => Value::Boolean(a < b),
        BinOp::Le => Value::Boolean(a <= b),
        BinOp::Gt => Value::Boolean(a > b),
        BinOp::Ge => Value::Boolean(a >= b),
        BinOp::Eq => unreachable!("handled above"),
    })
}

fn expect_color(v: Value, pos: Pos) -> EvalResult<Color> {
    match v {
        Value::Color(c) => Ok(c),
        other => internal(format!("expected Color, got {}", other.variant_name()), pos),
    }
}

fn expect_stencil(v: Value, pos: Pos) -> EvalResult<Geometry> {
    match v {
        Value::Stencil(g) => Ok(g),
        other => internal(format!("expected Stencil, got {}", other.variant_name()), pos),
    }
}

fn expect_shape(v: Value, pos: Pos) -> EvalResult<Arc<SceneNode>> {
    match v {
        Value::Shape(s) => Ok(s),
        other => internal(format!("expected Shape, got {}", other.variant_name()), pos),
    }
}

fn expect_shapes(v: Value, pos: Pos) -> EvalResult<Vec<Arc<SceneNode>>> {
    match v {
        Value::List(items) => items.into_iter().map(|s| expect_shape(s, pos)).collect(),
        other => internal(format!("expected a list, got {}", other.variant_name()), pos),
    }
}

/// `move`, `scale` or `rotate` applied to a shape: the primitive transform
/// is composed outside the shape's own.
pub fn apply_transform_builtin(b: Builtin, arg: &Value, shape: &SceneNode) -> Result<SceneNode, String> {
    let t = match (b, arg) {
        (Builtin::Move, Value::Tuple(xy)) => match xy.as_slice() {
            [Value::Number(x), Value::Number(y)] => AffineTransform::translation(*x, *y),
            _ => return Err("move needs a pair of numbers".into()),
        },
        (Builtin::Scale, Value::Number(k)) => AffineTransform::scaling(*k),
        (Builtin::Rotate, Value::Number(a)) => AffineTransform::rotation(*a),
        _ => return Err(format!("{} cannot use {}", b.name(), arg.variant_name())),
    };
    Ok(shape.transformed(&t))
}

/// Appends a handler; geometry, transform and children are untouched.
pub fn attach_handler(kind: HandlerKind, payload: Value, shape: &SceneNode) -> SceneNode {
    shape.with_handler(Handler { kind, payload })
}

/// Identity of one attached handler: the child-index path of the node it is
/// attached to, and its position in that node's handler list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HandlerId {
    pub path: Vec<usize>,
    pub index: usize,
}

/// A leaf with everything needed to draw or hit-test it on its own.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatShape {
    pub transform: AffineTransform,
    pub geometry: Geometry,
    pub style: Style,
    pub path: Vec<usize>,
    /// Own handlers first, then each ancestor's, innermost to outermost.
    pub handlers: Vec<(HandlerId, Handler)>,
}

impl FlatShape {
    /// Tight axis-aligned bounds `(min_x, min_y, max_x, max_y)` of the painted
    /// area in collage coordinates, strokes included.
    pub fn world_bounds(&self) -> (f64, f64, f64, f64) {
        let t = &self.transform;
        // half-extents of a transformed circle of radius r
        let spread = |r: f64| (r * t.a.hypot(t.c), r * t.b.hypot(t.d));
        let corners = |pts: &[(f64, f64)], pad: f64| {
            let (ex, ey) = spread(pad);
            pts.iter().map(|&p| t.apply(p)).fold(
                (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
                |(x0, y0, x1, y1), (x, y)| (x0.min(x - ex), y0.min(y - ey), x1.max(x + ex), y1.max(y + ey)),
            )
        };
        let stroke = match &self.style {
            Style::Outlined(line, _) => line.width / 2.0,
            Style::Filled(_) => 0.0,
        };
        let rect = |w: f64, h: f64, pad: f64| {
            let (x, y) = (w / 2.0, h / 2.0);
            corners(&[(-x, -y), (x, -y), (x, y), (-x, y)], pad)
        };
        match &self.geometry {
            Geometry::Circle { r } => corners(&[(0.0, 0.0)], r + stroke),
            Geometry::Oval { w, h } => {
                let (rx, ry) = (w / 2.0, h / 2.0);
                let ex = (t.a * rx).hypot(t.c * ry);
                let ey = (t.b * rx).hypot(t.d * ry);
                let (sx, sy) = spread(stroke);
                (t.tx - ex - sx, t.ty - ey - sy, t.tx + ex + sx, t.ty + ey + sy)
            }
            Geometry::Square { side } => rect(*side, *side, stroke),
            Geometry::Rect { w, h } => rect(*w, *h, stroke),
            Geometry::RoundedRect { w, h, radius } => rect(w - 2.0 * radius, h - 2.0 * radius, radius + stroke),
            Geometry::Triangle { r } => corners(&Geometry::triangle_vertices(*r), stroke),
            Geometry::Text { content, size } => {
                let (w, h) = Geometry::text_box(content, *size);
                rect(w, h, stroke)
            }
        }
    }
}

/// Union of the leaves' bounds; `None` for an empty scene.
pub fn scene_bounds(flat: &[FlatShape]) -> Option<(f64, f64, f64, f64)> {
    flat.iter().map(FlatShape::world_bounds).reduce(|a, b| (a.0.min(b.0), a.1.min(b.1), a.2.max(b.2), a.3.max(b.3)))
}

/// Leaves in paint order with absolute transforms and inherited handlers.
pub fn flatten_scene(root: &SceneNode) -> Vec<FlatShape> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut inherited = Vec::new();
    flatten_into(root, &AffineTransform::IDENTITY, &mut path, &mut inherited, &mut out);
    out
}

fn flatten_into(
    node: &SceneNode,
    parent: &AffineTransform,
    path: &mut Vec<usize>,
    inherited: &mut Vec<(HandlerId, Handler)>,
    out: &mut Vec<FlatShape>,
) {
    let transform = parent.compose(&node.transform);
    // `inherited` holds outermost-first; reversed when a leaf is emitted.
    let mark = inherited.len();
    for (index, h) in node.handlers.iter().enumerate() {
        inherited.push((HandlerId { path: path.clone(), index }, h.clone()));
    }
    match &node.content {
        NodeContent::Leaf { geometry, style } => {
            let mut handlers = Vec::with_capacity(inherited.len());
            // own handlers in attachment order, then ancestors inward-out
            handlers.extend(inherited[mark..].iter().cloned());
            let mut start = mark;
            let mut groups: Vec<&[(HandlerId, Handler)]> = Vec::new();
            while start > 0 {
                let p = &inherited[start - 1].0.path;
                let begin = inherited[..start].iter().rposition(|(id, _)| &id.path != p).map_or(0, |i| i + 1);
                groups.push(&inherited[begin..start]);
                start = begin;
            }
            for g in groups {
                handlers.extend(g.iter().cloned());
            }
            out.push(FlatShape {
                transform,
                geometry: geometry.clone(),
                style: style.clone(),
                path: path.clone(),
                handlers,
            });
        }
        NodeContent::Group(children) => {
            for (i, c) in children.iter().enumerate() {
                path.push(i);
                flatten_into(c, &transform, path, inherited, out);
                path.pop();
            }
        }
    }
    inherited.truncate(mark);
}

/// Pressed keys as a runtime value.
pub fn key_state<'a>(keys: impl IntoIterator<Item = &'a String>) -> Value {
    Value::KeyState(Arc::new(keys.into_iter().cloned().collect::<BTreeSet<_>>()))
}
