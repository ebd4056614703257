//! Type inference with beginner-oriented diagnostics.
//!
//! User definitions are monomorphic; polymorphic builtins are instantiated
//! afresh at every use. Field access on a value whose record type is not yet
//! known is deferred until the type is resolved (records are width-exact, so
//! there is no row variable to unify with).

// Errors carry both types and a context for the learner-facing message; they
// are rare and short-lived, so their size is not worth boxing.
#![allow(clippy::result_large_err)]

mod env;
mod error;
mod exhaustive;
mod unify;

use std::collections::{BTreeMap, HashMap, HashSet};

pub use env::{builtin_environment, CtorInfo, Scheme, TypeEnv};
pub use error::{render_diagnostic, MismatchContext, TypeError, TypeErrorKind};
pub use exhaustive::{check_case_exhaustive, CaseCoverageError};
pub use unify::{unify, unify_into, Substitution, UnifyError};

use crate::ast::*;
use crate::builtins::Builtin;
use crate::color::closest_names;
use crate::diagnostic::Diagnostic;
use crate::types::{article, Type};

/// A program that passed the typechecker.
#[derive(Debug, Clone)]
pub struct TypedProgram {
    pub program: Program,
    /// Type of every top-level definition, with no type variables left.
    pub types: BTreeMap<String, Type>,
    pub app: AppKind,
    /// The message type carried by the program's shapes.
    pub msg_type: Type,
    /// `None` for graphics apps.
    pub model_type: Option<Type>,
    /// Declared unions with their constructors, in declaration order.
    pub unions: BTreeMap<String, Vec<CtorInfo>>,
    pub warnings: Vec<Diagnostic>,
}

impl TypedProgram {
    pub fn ctor(&self, name: &str) -> Option<&CtorInfo> {
        self.unions.values().flatten().find(|c| c.name == name)
    }

    pub fn tick_ctor(&self) -> Option<&str> {
        match &self.program.main {
            AppForm::GameApp { tick, .. } => Some(tick.name.as_str()),
            _ => None,
        }
    }
}

/// Result of checking, including warnings when there are errors.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub typed: Option<TypedProgram>,
    pub errors: Vec<TypeError>,
    pub warnings: Vec<Diagnostic>,
}

pub fn infer_program(p: &Program) -> Result<TypedProgram, Vec<TypeError>> {
    let outcome = check_program(p);
    outcome.typed.ok_or(outcome.errors)
}

pub fn check_program(p: &Program) -> CheckOutcome {
    let mut inf = Infer::new();
    let result = inf.run(p);
    let mut errors = inf.errors;
    errors.sort_by_key(|e| e.pos);
    match result {
        Some(typed) if errors.is_empty() => CheckOutcome {
            warnings: typed.warnings.clone(),
            typed: Some(typed),
            errors,
        },
        _ => CheckOutcome {
            typed: None,
            errors,
            warnings: inf.warnings,
        },
    }
}

type IResult<T> = Result<T, TypeError>;
type Locals = Vec<(String, Type)>;

struct FieldConstraint {
    record: Type,
    field: String,
    field_ty: Type,
    pos: Pos,
    definition: Option<String>,
}

struct Infer {
    env: TypeEnv,
    subst: Substitution,
    next_var: u32,
    globals: HashMap<String, Type>,
    poisoned: HashSet<String>,
    deferred: Vec<FieldConstraint>,
    errors: Vec<TypeError>,
    warnings: Vec<Diagnostic>,
    current: Option<String>,
    unions: BTreeMap<String, Vec<CtorInfo>>,
}

impl Infer {
    fn new() -> Self {
        Infer {
            env: builtin_environment(),
            subst: Substitution::new(),
            next_var: 0,
            globals: HashMap::new(),
            poisoned: HashSet::new(),
            deferred: Vec::new(),
            errors: Vec::new(),
            warnings: Vec::new(),
            current: None,
            unions: BTreeMap::new(),
        }
    }

    fn fresh(&mut self) -> Type {
        let v = self.next_var;
        self.next_var += 1;
        Type::Var(v)
    }

    fn report(&mut self, mut e: TypeError) {
        if e.definition.is_none() {
            e.definition = self.current.clone();
        }
        if let Some(d) = &e.definition {
            if self.errors.iter().any(|x| x.definition.as_ref() == Some(d)) {
                return;
            }
            self.poisoned.insert(d.clone());
        }
        self.errors.push(e);
    }

    fn run(&mut self, p: &Program) -> Option<TypedProgram> {
        self.declare_unions(p);
        if !self.errors.is_empty() {
            return None;
        }
        for d in &p.definitions {
            let v = self.fresh();
            self.globals.insert(d.name.name.clone(), v);
        }
        for d in &p.definitions {
            self.current = Some(d.name.name.clone());
            if let Err(e) = self.definition(d) {
                self.report(e);
            }
            self.solve_deferred(false);
        }
        self.current = Some("main".to_string());
        let app = self.main_form(p);
        self.solve_deferred(true);
        let (msg, model) = match app {
            Ok(v) => v,
            Err(e) => {
                self.report(e);
                return None;
            }
        };
        if !self.errors.is_empty() {
            return None;
        }

        let msg = self.subst.apply(&msg);
        let target = match &msg {
            Type::Union(_) => msg.clone(),
            _ if self.unions.contains_key("Msg") => Type::Union("Msg".into()),
            _ if self.unions.len() == 1 => Type::Union(self.unions.keys().next().unwrap().clone()),
            _ => Type::NoMsg,
        };
        let mut to_default: Vec<Type> = self.globals.values().cloned().collect();
        to_default.push(msg.clone());
        if let Some(m) = &model {
            to_default.push(m.clone());
        }
        for t in to_default {
            for v in self.subst.apply(&t).free_vars() {
                let _ = unify_into(&mut self.subst, &Type::Var(v), &target);
            }
        }
        let msg_type = self.subst.apply(&msg);
        if p.main.kind() != AppKind::Graphics && !matches!(msg_type, Type::Union(_)) {
            self.report(TypeError::new(
                TypeErrorKind::BadMain {
                    message: format!("{} needs a message type for its update function.", p.main.kind().builtin_name()),
                    hint: "declare one like type Msg = MoreRed | Reset and use it in update.".into(),
                    expected: None,
                    found: Some(msg_type),
                },
                p.main_pos,
            ));
            return None;
        }

        let types = self
            .globals
            .iter()
            .map(|(k, v)| (k.clone(), self.subst.apply(v)))
            .collect();
        Some(TypedProgram {
            program: p.clone(),
            types,
            app: p.main.kind(),
            msg_type,
            model_type: model.map(|m| self.subst.apply(&m)),
            unions: self.unions.clone(),
            warnings: self.warnings.clone(),
        })
    }

    fn declare_unions(&mut self, p: &Program) {
        let declared: Vec<String> = p.type_decls.iter().map(|d| d.name.name.clone()).collect();
        for d in &p.type_decls {
            if BUILTIN_TYPES.contains(&d.name.name.as_str()) || declared.iter().filter(|n| **n == d.name.name).count() > 1 {
                self.report(TypeError::new(
                    TypeErrorKind::BadMain {
                        message: format!("The type {} is already defined.", d.name.name),
                        hint: "pick a different name for this type.".into(),
                        expected: None,
                        found: None,
                    },
                    d.name.pos,
                ));
                return;
            }
        }
        for d in &p.type_decls {
            let mut ctors = Vec::new();
            for c in &d.constructors {
                let mut args = Vec::new();
                for a in &c.args {
                    match self.type_from_expr(a, &declared) {
                        Ok(t) => args.push(t),
                        Err(e) => {
                            self.report(e);
                            return;
                        }
                    }
                }
                ctors.push(CtorInfo {
                    union: d.name.name.clone(),
                    name: c.name.name.clone(),
                    args,
                });
            }
            self.env.add_union(&d.name.name, ctors.clone());
            self.unions.insert(d.name.name.clone(), ctors);
        }
    }

    fn type_from_expr(&self, t: &TypeExpr, unions: &[String]) -> IResult<Type> {
        match t {
            TypeExpr::Tuple(a, b) => Ok(Type::tuple(self.type_from_expr(a, unions)?, self.type_from_expr(b, unions)?)),
            TypeExpr::Named(name, args) => {
                let simple = match name.name.as_str() {
                    "Float" => Some(Type::Float),
                    "String" => Some(Type::String),
                    "Bool" => Some(Type::Bool),
                    "Color" => Some(Type::Color),
                    "LineType" => Some(Type::LineType),
                    "Stencil" => Some(Type::Stencil),
                    "KeyState" => Some(Type::KeyState),
                    n if unions.iter().any(|u| u == n) => Some(Type::Union(n.to_string())),
                    _ => None,
                };
                match (simple, args.as_slice()) {
                    (Some(t), []) => Ok(t),
                    (None, [elem]) if name.name == "List" => Ok(Type::list(self.type_from_expr(elem, unions)?)),
                    (Some(_), _) | (None, _) if name.name == "List" || BUILTIN_TYPES.contains(&name.name.as_str()) || unions.contains(&name.name) => {
                        Err(TypeError::new(
                            TypeErrorKind::ArityError {
                                callee: name.name.clone(),
                                expected: usize::from(name.name == "List"),
                                given: args.len(),
                            },
                            name.pos,
                        ))
                    }
                    _ => {
                        let candidates: Vec<&str> = BUILTIN_TYPES
                            .iter()
                            .copied()
                            .chain(unions.iter().map(String::as_str))
                            .collect();
                        Err(TypeError::new(
                            TypeErrorKind::UnknownType {
                                name: name.name.clone(),
                                suggestions: suggest(&name.name, candidates, 3, 2),
                            },
                            name.pos,
                        ))
                    }
                }
            }
        }
    }

    fn definition(&mut self, d: &Definition) -> IResult<()> {
        let mut locals: Locals = Vec::new();
        let mut params = Vec::new();
        for p in &d.params {
            let t = self.fresh();
            params.push(t.clone());
            locals.push((p.name.clone(), t));
        }
        let body = self.infer(&d.body, &mut locals)?;
        let t = Type::func(params, body);
        let global = self.globals[&d.name.name].clone();
        self.unify_ctx(&global, &t, MismatchContext::Definition(d.name.name.clone()), d.name.pos)
    }

    fn main_form(&mut self, p: &Program) -> IResult<(Type, Option<Type>)> {
        let msg = self.fresh();
        match &p.main {
            AppForm::GraphicsApp { view } => {
                let tv = self.infer(view, &mut Vec::new())?;
                if unify_into(&mut self.subst, &Type::collage(msg.clone()), &tv).is_err() {
                    let found = self.subst.apply(&tv);
                    return Err(bad_main(
                        format!("graphicsApp needs its view to be a Collage, but found {}.", a(&found)),
                        "a view is made with collage, like collage 500 500 [ ... ].",
                        Some(Type::collage(msg)),
                        Some(found),
                        view.pos,
                    ));
                }
                Ok((msg, None))
            }
            AppForm::NotificationsApp { model, view, update } => {
                let tm = self.infer(model, &mut Vec::new())?;
                self.check_view_update(&tm, &msg, view, update)?;
                Ok((msg, Some(tm)))
            }
            AppForm::GameApp { tick, model, view, update } => {
                let info = self.env.ctors.get(&tick.name).cloned().ok_or_else(|| {
                    let names: Vec<&str> = self.env.ctors.keys().map(String::as_str).collect();
                    TypeError::new(
                        TypeErrorKind::UnknownConstructor {
                            name: tick.name.clone(),
                            suggestions: suggest(&tick.name, names, 3, 2),
                        },
                        tick.pos,
                    )
                })?;
                if info.args != [Type::Float, Type::KeyState] {
                    return Err(bad_main(
                        format!("{} needs to hold a Float and a KeyState to be used as the tick message.", tick.name),
                        &format!("declare it like type {} = {} Float KeyState | ...", info.union, tick.name),
                        None,
                        None,
                        tick.pos,
                    ));
                }
                self.unify_ctx(&Type::Union(info.union.clone()), &msg, MismatchContext::Definition("gameApp".into()), tick.pos)?;
                let tm = self.infer(model, &mut Vec::new())?;
                self.check_view_update(&tm, &msg, view, update)?;
                Ok((msg, Some(tm)))
            }
        }
    }

    fn check_view_update(&mut self, model: &Type, msg: &Type, view: &Ident, update: &Ident) -> IResult<()> {
        let tview = self.global_for_main(view)?;
        let want_view = Type::func([model.clone()], Type::collage(msg.clone()));
        if unify_into(&mut self.subst, &want_view, &tview).is_err() {
            let found = self.subst.apply(&tview);
            let want = self.subst.apply(&want_view);
            return Err(bad_main(
                format!(
                    "{} should take the model and give back a Collage, but it is {}.",
                    view.name,
                    a(&found)
                ),
                "write it like view model = collage 500 500 [ ... ].",
                Some(want),
                Some(found),
                view.pos,
            ));
        }
        let tupdate = self.global_for_main(update)?;
        let want_update = Type::func([msg.clone(), model.clone()], model.clone());
        if unify_into(&mut self.subst, &want_update, &tupdate).is_err() {
            let found = self.subst.apply(&tupdate);
            let want = self.subst.apply(&want_update);
            return Err(bad_main(
                format!(
                    "{} should take a message and the model and give back a new model of the same type, but it is {}.",
                    update.name,
                    a(&found)
                ),
                "write it like update msg model = case msg of ...",
                Some(want),
                Some(found),
                update.pos,
            ));
        }
        Ok(())
    }

    fn global_for_main(&mut self, id: &Ident) -> IResult<Type> {
        match self.globals.get(&id.name) {
            Some(t) => Ok(t.clone()),
            None => Err(bad_main(
                format!("{} should be the name of one of your definitions.", id.name),
                "define it in this file, for example view model = ...",
                None,
                None,
                id.pos,
            )),
        }
    }

    fn unify_ctx(&mut self, expected: &Type, found: &Type, context: MismatchContext, pos: Pos) -> IResult<()> {
        match unify_into(&mut self.subst, expected, found) {
            Ok(()) => Ok(()),
            Err(UnifyError::Mismatch { expected: ie, found: ifound }) => {
                let expected = self.subst.apply(expected);
                let found = self.subst.apply(found);
                let inner = if ie == expected && ifound == found { None } else { Some((ie, ifound)) };
                Err(TypeError::new(TypeErrorKind::Mismatch { expected, found, inner, context }, pos))
            }
            Err(UnifyError::OccursCheck { ty, .. }) => Err(TypeError::new(TypeErrorKind::OccursCheck { ty }, pos)),
        }
    }

    fn lookup_var(&mut self, name: &str, pos: Pos, locals: &Locals) -> IResult<Type> {
        if let Some((_, t)) = locals.iter().rev().find(|(n, _)| n == name) {
            return Ok(t.clone());
        }
        if let Some(t) = self.globals.get(name) {
            if self.poisoned.contains(name) {
                return Ok(self.fresh());
            }
            return Ok(t.clone());
        }
        let mut fresh = None;
        let next = &mut self.next_var;
        let found = self.env.lookup(name, || {
            let v = *next;
            *next += 1;
            fresh = Some(v);
            Type::Var(v)
        });
        if let Some(t) = found {
            return Ok(t);
        }
        let candidates: Vec<&str> = locals
            .iter()
            .map(|(n, _)| n.as_str())
            .chain(self.globals.keys().map(String::as_str))
            .chain(self.env.names())
            .collect();
        Err(TypeError::new(
            TypeErrorKind::UnknownName {
                name: name.to_string(),
                suggestions: suggest(name, candidates, 3, 2),
            },
            pos,
        ))
    }

    fn field_constraint(&mut self, record: &Type, field: &str, field_ty: &Type, pos: Pos) -> IResult<()> {
        let c = FieldConstraint {
            record: record.clone(),
            field: field.to_string(),
            field_ty: field_ty.clone(),
            pos,
            definition: self.current.clone(),
        };
        match self.try_field(&c)? {
            true => Ok(()),
            false => {
                self.deferred.push(c);
                Ok(())
            }
        }
    }

    /// `Ok(false)` when the record type is still unknown.
    fn try_field(&mut self, c: &FieldConstraint) -> IResult<bool> {
        match self.subst.apply(&c.record) {
            Type::Var(_) => Ok(false),
            Type::Record(fields) => match fields.get(&c.field) {
                Some(t) => {
                    self.unify_ctx(t, &c.field_ty, MismatchContext::RecordField(c.field.clone()), c.pos)?;
                    Ok(true)
                }
                None => Err(TypeError::new(
                    TypeErrorKind::UnknownField {
                        field: c.field.clone(),
                        suggestions: suggest(&c.field, fields.keys().map(String::as_str), 3, 2),
                        record: Type::Record(fields),
                    },
                    c.pos,
                )),
            },
            other => Err(TypeError::new(
                TypeErrorKind::UnknownField {
                    field: c.field.clone(),
                    record: other,
                    suggestions: vec![],
                },
                c.pos,
            )),
        }
    }

    fn solve_deferred(&mut self, finish: bool) {
        loop {
            let pending = std::mem::take(&mut self.deferred);
            let before = pending.len();
            for c in pending {
                if c.definition.as_ref().is_some_and(|d| self.poisoned.contains(d)) {
                    continue;
                }
                match self.try_field(&c) {
                    Ok(true) => {}
                    Ok(false) => self.deferred.push(c),
                    Err(mut e) => {
                        e.definition = c.definition.clone();
                        self.report(e);
                    }
                }
            }
            if self.deferred.len() == before || self.deferred.is_empty() {
                break;
            }
        }
        if finish {
            for c in std::mem::take(&mut self.deferred) {
                let mut e = TypeError::new(TypeErrorKind::UnresolvedRecord { field: c.field.clone() }, c.pos);
                e.definition = c.definition;
                self.report(e);
            }
        }
    }

    fn infer(&mut self, e: &Expr, locals: &mut Locals) -> IResult<Type> {
        match &e.kind {
            ExprKind::Number(_) => Ok(Type::Float),
            ExprKind::Str(_) => Ok(Type::String),
            ExprKind::Bool(_) => Ok(Type::Bool),
            ExprKind::Var(name) => self.lookup_var(name, e.pos, locals),
            ExprKind::Ctor(name) => self.env.ctor_type(name).ok_or_else(|| {
                let names: Vec<&str> = self.env.ctors.keys().map(String::as_str).collect();
                TypeError::new(
                    TypeErrorKind::UnknownConstructor {
                        name: name.clone(),
                        suggestions: suggest(name, names, 3, 2),
                    },
                    e.pos,
                )
            }),
            ExprKind::Tuple(items) => {
                let a = self.infer(&items[0], locals)?;
                let b = self.infer(&items[1], locals)?;
                Ok(Type::tuple(a, b))
            }
            ExprKind::List(items) => {
                let elem = self.fresh();
                for item in items {
                    let t = self.infer(item, locals)?;
                    self.unify_ctx(&elem, &t, MismatchContext::ListItem, item.pos)?;
                }
                Ok(Type::list(elem))
            }
            ExprKind::Record(fields) => {
                let mut map = BTreeMap::new();
                for (k, v) in fields {
                    map.insert(k.clone(), self.infer(v, locals)?);
                }
                Ok(Type::Record(map))
            }
            ExprKind::RecordUpdate(base, fields) => {
                let tb = self.lookup_var(&base.name, base.pos, locals)?;
                for (k, v) in fields {
                    let tv = self.infer(v, locals)?;
                    self.field_constraint(&tb, k, &tv, v.pos)?;
                }
                Ok(tb)
            }
            ExprKind::Field(inner, field) => {
                let tr = self.infer(inner, locals)?;
                let tf = self.fresh();
                self.field_constraint(&tr, field, &tf, e.pos)?;
                Ok(tf)
            }
            ExprKind::App(f, args) => self.infer_app(f, args, locals),
            ExprKind::BinOp(op, lhs, rhs) => {
                let ta = self.infer(lhs, locals)?;
                let tb = self.infer(rhs, locals)?;
                if *op == BinOp::Eq {
                    self.unify_ctx(&ta, &tb, MismatchContext::Operator(*op), rhs.pos)?;
                    let t = self.subst.apply(&ta);
                    if t.contains_function() {
                        return Err(TypeError::new(TypeErrorKind::NotComparable { ty: t }, e.pos));
                    }
                    return Ok(Type::Bool);
                }
                self.unify_ctx(&Type::Float, &ta, MismatchContext::Operator(*op), lhs.pos)?;
                self.unify_ctx(&Type::Float, &tb, MismatchContext::Operator(*op), rhs.pos)?;
                Ok(if op.is_comparison() { Type::Bool } else { Type::Float })
            }
            ExprKind::Negate(inner) => {
                let t = self.infer(inner, locals)?;
                self.unify_ctx(&Type::Float, &t, MismatchContext::Operator(BinOp::Sub), inner.pos)?;
                Ok(Type::Float)
            }
            ExprKind::If(c, t, f) => {
                let tc = self.infer(c, locals)?;
                self.unify_ctx(&Type::Bool, &tc, MismatchContext::IfCondition, c.pos)?;
                let tt = self.infer(t, locals)?;
                let tf = self.infer(f, locals)?;
                self.unify_ctx(&tt, &tf, MismatchContext::IfBranches, f.pos)?;
                Ok(tt)
            }
            ExprKind::Case(scrutinee, branches) => self.infer_case(e.pos, scrutinee, branches, locals),
            ExprKind::Pipe(..) => {
                let desugared = crate::desugar::desugar_pipelines(e.clone());
                self.infer(&desugared, locals)
            }
        }
    }

    fn infer_app(&mut self, f: &Expr, args: &[Expr], locals: &mut Locals) -> IResult<Type> {
        let callee = match &f.kind {
            ExprKind::Var(n) | ExprKind::Ctor(n) => n.clone(),
            _ => "This function".to_string(),
        };
        let original = self.infer(f, locals)?;
        self.warn_size_on_shape(&callee, args, locals, f.pos);
        let mut tf = original.clone();
        for arg in args {
            let resolved = self.subst.apply(&tf);
            let (param, result) = match resolved {
                Type::Function(p, r) => (*p, *r),
                Type::Var(_) => {
                    let p = self.fresh();
                    let r = self.fresh();
                    let fun = Type::Function(Box::new(p.clone()), Box::new(r.clone()));
                    self.unify_ctx(&fun, &resolved, MismatchContext::Argument { callee: callee.clone() }, f.pos)?;
                    (p, r)
                }
                _ => {
                    let expected = self.subst.apply(&original).uncurry().0.len();
                    return Err(TypeError::new(
                        TypeErrorKind::ArityError { callee, expected, given: args.len() },
                        f.pos,
                    ));
                }
            };
            let ta = self.infer(arg, locals)?;
            self.unify_ctx(&param, &ta, MismatchContext::Argument { callee: callee.clone() }, f.pos)?;
            tf = result;
        }
        Ok(tf)
    }

    fn warn_size_on_shape(&mut self, callee: &str, args: &[Expr], locals: &Locals, pos: Pos) {
        if callee != "size" || locals.iter().any(|(n, _)| n == "size") || args.len() < 2 {
            return;
        }
        let stencil_builtin = match &args[1].kind {
            ExprKind::App(g, _) => match &g.kind {
                ExprKind::Var(n) if !locals.iter().any(|(l, _)| l == n) => Builtin::from_name(n),
                _ => None,
            },
            _ => None,
        };
        if let Some(b) = stencil_builtin.filter(|b| b.is_non_text_stencil()) {
            self.warnings.push(Diagnostic::warning(
                pos,
                format!("size only changes text, so it has no effect on {} {}.", article(b.name()), b.name()),
                "use scale to make shapes bigger or smaller.",
            ));
        }
    }

    fn infer_case(&mut self, pos: Pos, scrutinee: &Expr, branches: &[Branch], locals: &mut Locals) -> IResult<Type> {
        let ts = self.infer(scrutinee, locals)?;
        let mut infos = Vec::new();
        for b in branches {
            let info = self.env.ctors.get(&b.ctor.name).cloned().ok_or_else(|| {
                let names: Vec<&str> = self.env.ctors.keys().map(String::as_str).collect();
                TypeError::new(
                    TypeErrorKind::UnknownConstructor {
                        name: b.ctor.name.clone(),
                        suggestions: suggest(&b.ctor.name, names, 3, 2),
                    },
                    b.ctor.pos,
                )
            })?;
            infos.push(info);
        }
        let union = infos[0].union.clone();
        for (b, info) in branches.iter().zip(&infos) {
            if info.union != union {
                return Err(TypeError::new(
                    TypeErrorKind::Mismatch {
                        expected: Type::Union(union),
                        found: Type::Union(info.union.clone()),
                        inner: None,
                        context: MismatchContext::CasePattern,
                    },
                    b.ctor.pos,
                ));
            }
        }
        self.unify_ctx(&Type::Union(union.clone()), &ts, MismatchContext::CaseScrutinee, scrutinee.pos)?;
        let names: Vec<&str> = branches.iter().map(|b| b.ctor.name.as_str()).collect();
        match check_case_exhaustive(&self.env.unions[&union], &names) {
            Ok(()) => {}
            Err(CaseCoverageError::NonExhaustive(missing)) => {
                return Err(TypeError::new(TypeErrorKind::NonExhaustiveCase { missing }, pos))
            }
            Err(CaseCoverageError::DuplicateBranch(ctor)) => {
                let at = branches.iter().filter(|b| b.ctor.name == ctor).nth(1).map(|b| b.ctor.pos).unwrap_or(pos);
                return Err(TypeError::new(TypeErrorKind::DuplicateBranch { ctor }, at));
            }
        }

        let mut result: Option<Type> = None;
        for (b, info) in branches.iter().zip(&infos) {
            if b.binders.len() != info.args.len() {
                return Err(TypeError::new(
                    TypeErrorKind::PatternArity {
                        ctor: b.ctor.name.clone(),
                        expected: info.args.len(),
                        given: b.binders.len(),
                    },
                    b.ctor.pos,
                ));
            }
            let mark = locals.len();
            for (binder, ty) in b.binders.iter().zip(&info.args) {
                self.bind(binder, ty, b.ctor.pos, locals)?;
            }
            let tb = self.infer(&b.body, locals);
            locals.truncate(mark);
            let tb = tb?;
            match &result {
                None => result = Some(tb),
                Some(r) => {
                    let r = r.clone();
                    self.unify_ctx(&r, &tb, MismatchContext::CaseBranches, b.body.pos)?;
                }
            }
        }
        Ok(result.expect("parser guarantees at least one branch"))
    }

    fn bind(&mut self, binder: &Binder, ty: &Type, pos: Pos, locals: &mut Locals) -> IResult<()> {
        match binder {
            Binder::Name(n) => {
                locals.push((n.clone(), ty.clone()));
                Ok(())
            }
            Binder::Wildcard => Ok(()),
            Binder::Pair(x, y) => {
                let a = self.fresh();
                let b = self.fresh();
                self.unify_ctx(&Type::tuple(a.clone(), b.clone()), ty, MismatchContext::CasePattern, pos)?;
                self.bind(x, &a, pos, locals)?;
                self.bind(y, &b, pos, locals)
            }
        }
    }
}

const BUILTIN_TYPES: [&str; 10] = [
    "Float", "String", "Bool", "Color", "LineType", "Stencil", "KeyState", "Shape", "Collage", "List",
];

fn a(t: &Type) -> String {
    let s = t.beginner();
    format!("{} {s}", article(&s))
}

fn bad_main(message: String, hint: &str, expected: Option<Type>, found: Option<Type>, pos: Pos) -> TypeError {
    TypeError::new(
        TypeErrorKind::BadMain {
            message,
            hint: hint.to_string(),
            expected,
            found,
        },
        pos,
    )
}

/// Closest names in a stable order, whatever order the candidates come in.
fn suggest<'a>(target: &str, candidates: impl IntoIterator<Item = &'a str>, limit: usize, max: usize) -> Vec<String> {
    let mut c: Vec<&str> = candidates.into_iter().collect();
    c.sort_unstable();
    c.dedup();
    closest_names(target, c, limit, max)
}
