//! Syntax tree for `.shp` programs.

use std::fmt;

use serde::Serialize;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl Pos {
    pub fn new(line: u32, column: u32) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Eq,
    Lt,
    Le,
    Gt,
    Ge,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Eq => "==",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(self, BinOp::Eq | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ExprKind {
    Number(f64),
    Str(String),
    Bool(bool),
    /// Lowercase name: a parameter, a definition or a builtin.
    Var(String),
    /// Capitalized name: a union constructor.
    Ctor(String),
    /// Always exactly two elements.
    Tuple(Vec<Expr>),
    List(Vec<Expr>),
    Record(Vec<(String, Expr)>),
    /// `{ base | field = value, ... }`
    RecordUpdate(Ident, Vec<(String, Expr)>),
    Field(Box<Expr>, String),
    App(Box<Expr>, Vec<Expr>),
    BinOp(BinOp, Box<Expr>, Box<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    Case(Box<Expr>, Vec<Branch>),
    Negate(Box<Expr>),
    /// `lhs |> rhs`; removed by desugaring before typechecking.
    Pipe(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Branch {
    pub ctor: Ident,
    pub binders: Vec<Binder>,
    pub body: Expr,
}

/// What a constructor argument is bound to in a case branch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Binder {
    Name(String),
    Wildcard,
    Pair(Box<Binder>, Box<Binder>),
}

impl Binder {
    pub fn names(&self) -> Vec<&str> {
        match self {
            Binder::Name(n) => vec![n.as_str()],
            Binder::Wildcard => vec![],
            Binder::Pair(a, b) => {
                let mut v = a.names();
                v.extend(b.names());
                v
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TypeExpr {
    /// A type name with arguments, e.g. `Float` or `List Float`.
    Named(Ident, Vec<TypeExpr>),
    Tuple(Box<TypeExpr>, Box<TypeExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constructor {
    pub name: Ident,
    pub args: Vec<TypeExpr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeDecl {
    pub name: Ident,
    pub constructors: Vec<Constructor>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Definition {
    pub name: Ident,
    pub params: Vec<Ident>,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum AppForm {
    GraphicsApp {
        view: Expr,
    },
    NotificationsApp {
        model: Expr,
        view: Ident,
        update: Ident,
    },
    GameApp {
        tick: Ident,
        model: Expr,
        view: Ident,
        update: Ident,
    },
}

impl AppForm {
    pub fn kind(&self) -> AppKind {
        match self {
            AppForm::GraphicsApp { .. } => AppKind::Graphics,
            AppForm::NotificationsApp { .. } => AppKind::Notifications,
            AppForm::GameApp { .. } => AppKind::Game,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum AppKind {
    Graphics,
    Notifications,
    Game,
}

impl AppKind {
    pub fn builtin_name(self) -> &'static str {
        match self {
            AppKind::Graphics => "graphicsApp",
            AppKind::Notifications => "notificationsApp",
            AppKind::Game => "gameApp",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Program {
    pub type_decls: Vec<TypeDecl>,
    pub definitions: Vec<Definition>,
    pub main: AppForm,
    pub main_pos: Pos,
}

impl Program {
    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.definitions.iter().find(|d| d.name.name == name)
    }

    /// A copy with every position zeroed, for structural comparisons.
    pub fn without_positions(&self) -> Program {
        let mut p = self.clone();
        p.main_pos = Pos::default();
        for decl in &mut p.type_decls {
            decl.name.pos = Pos::default();
            for ctor in &mut decl.constructors {
                ctor.name.pos = Pos::default();
                ctor.args.iter_mut().for_each(clear_type_expr);
            }
        }
        for def in &mut p.definitions {
            def.name.pos = Pos::default();
            def.params.iter_mut().for_each(|i| i.pos = Pos::default());
            def.body.clear_positions();
        }
        match &mut p.main {
            AppForm::GraphicsApp { view } => view.clear_positions(),
            AppForm::NotificationsApp { model, view, update } => {
                model.clear_positions();
                view.pos = Pos::default();
                update.pos = Pos::default();
            }
            AppForm::GameApp { tick, model, view, update } => {
                model.clear_positions();
                tick.pos = Pos::default();
                view.pos = Pos::default();
                update.pos = Pos::default();
            }
        }
        p
    }
}

fn clear_type_expr(t: &mut TypeExpr) {
    match t {
        TypeExpr::Named(id, args) => {
            id.pos = Pos::default();
            args.iter_mut().for_each(clear_type_expr);
        }
        TypeExpr::Tuple(a, b) => {
            clear_type_expr(a);
            clear_type_expr(b);
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Expr { kind, pos }
    }

    pub fn children(&self) -> Vec<&Expr> {
        match &self.kind {
            ExprKind::Number(_)
            | ExprKind::Str(_)
            | ExprKind::Bool(_)
            | ExprKind::Var(_)
            | ExprKind::Ctor(_) => vec![],
            ExprKind::Tuple(es) | ExprKind::List(es) => es.iter().collect(),
            ExprKind::Record(fs) | ExprKind::RecordUpdate(_, fs) => fs.iter().map(|(_, e)| e).collect(),
            ExprKind::Field(e, _) | ExprKind::Negate(e) => vec![e],
            ExprKind::App(f, args) => std::iter::once(&**f).chain(args.iter()).collect(),
            ExprKind::BinOp(_, a, b) | ExprKind::Pipe(a, b) => vec![a, b],
            ExprKind::If(c, t, e) => vec![c, t, e],
            ExprKind::Case(s, bs) => std::iter::once(&**s).chain(bs.iter().map(|b| &b.body)).collect(),
        }
    }

    fn children_mut(&mut self) -> Vec<&mut Expr> {
        match &mut self.kind {
            ExprKind::Number(_)
            | ExprKind::Str(_)
            | ExprKind::Bool(_)
            | ExprKind::Var(_)
            | ExprKind::Ctor(_) => vec![],
            ExprKind::Tuple(es) | ExprKind::List(es) => es.iter_mut().collect(),
            ExprKind::Record(fs) => fs.iter_mut().map(|(_, e)| e).collect(),
            ExprKind::RecordUpdate(base, fs) => {
                base.pos = Pos::default();
                fs.iter_mut().map(|(_, e)| e).collect()
            }
            ExprKind::Field(e, _) | ExprKind::Negate(e) => vec![e],
            ExprKind::App(f, args) => std::iter::once(&mut **f).chain(args.iter_mut()).collect(),
            ExprKind::BinOp(_, a, b) | ExprKind::Pipe(a, b) => vec![a, b],
            ExprKind::If(c, t, e) => vec![c, t, e],
            ExprKind::Case(s, bs) => {
                for b in bs.iter_mut() {
                    b.ctor.pos = Pos::default();
                }
                std::iter::once(&mut **s).chain(bs.iter_mut().map(|b| &mut b.body)).collect()
            }
        }
    }

    pub fn clear_positions(&mut self) {
        self.pos = Pos::default();
        for c in self.children_mut() {
            c.clear_positions();
        }
    }

    /// Lowercase names referenced but not bound inside this expression.
    pub fn free_vars(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn contains_pipe(&self) -> bool {
        matches!(self.kind, ExprKind::Pipe(..)) || self.children().iter().any(|c| c.contains_pipe())
    }
}

fn collect_free<'a>(e: &'a Expr, bound: &mut Vec<&'a str>, out: &mut std::collections::BTreeSet<String>) {
    match &e.kind {
        ExprKind::Var(n) => {
            if !bound.contains(&n.as_str()) {
                out.insert(n.clone());
            }
        }
        ExprKind::RecordUpdate(base, fs) => {
            if !bound.contains(&base.name.as_str()) {
                out.insert(base.name.clone());
            }
            for (_, v) in fs {
                collect_free(v, bound, out);
            }
        }
        ExprKind::Case(s, branches) => {
            collect_free(s, bound, out);
            for b in branches {
                let mark = bound.len();
                for binder in &b.binders {
                    bound.extend(binder.names());
                }
                collect_free(&b.body, bound, out);
                bound.truncate(mark);
            }
        }
        _ => {
            for c in e.children() {
                collect_free(c, bound, out);
            }
        }
    }
}
