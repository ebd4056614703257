//! Source printer. Output reparses to the same syntax tree (positions aside).

use crate::ast::*;

const INDENT: usize = 4;

pub fn print_program(p: &Program) -> String {
    let mut out = String::new();
    for decl in &p.type_decls {
        out.push_str(&format!("type {}\n", decl.name.name));
        for (i, c) in decl.constructors.iter().enumerate() {
            let lead = if i == 0 { '=' } else { '|' };
            out.push_str(&format!("    {lead} {}", c.name.name));
            for a in &c.args {
                out.push(' ');
                out.push_str(&type_atom(a));
            }
            out.push('\n');
        }
        out.push('\n');
    }
    for d in &p.definitions {
        out.push_str(&d.name.name);
        for param in &d.params {
            out.push(' ');
            out.push_str(&param.name);
        }
        out.push_str(" =\n");
        out.push_str(&" ".repeat(INDENT));
        out.push_str(&print_expr_at(&d.body, INDENT));
        out.push_str("\n\n");
    }
    out.push_str("main =\n    ");
    match &p.main {
        AppForm::GraphicsApp { view } => {
            out.push_str(&format!("graphicsApp {{ view = {} }}", print_expr_at(view, INDENT)));
        }
        AppForm::NotificationsApp { model, view, update } => out.push_str(&format!(
            "notificationsApp {{ model = {}, view = {}, update = {} }}",
            print_expr_at(model, INDENT),
            view.name,
            update.name
        )),
        AppForm::GameApp { tick, model, view, update } => out.push_str(&format!(
            "gameApp {} {{ model = {}, view = {}, update = {} }}",
            tick.name,
            print_expr_at(model, INDENT),
            view.name,
            update.name
        )),
    }
    out.push('\n');
    out
}

fn type_atom(t: &TypeExpr) -> String {
    match t {
        TypeExpr::Named(n, args) if args.is_empty() => n.name.clone(),
        other => format!("({})", type_expr(other)),
    }
}

fn type_expr(t: &TypeExpr) -> String {
    match t {
        TypeExpr::Named(n, args) => {
            let mut s = n.name.clone();
            for a in args {
                s.push(' ');
                s.push_str(&type_atom(a));
            }
            s
        }
        TypeExpr::Tuple(a, b) => format!("{}, {}", type_expr(a), type_expr(b)),
    }
}

pub fn print_expr(e: &Expr) -> String {
    print_expr_at(e, 0)
}

/// Precedence levels, loosest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Top,
    Pipe,
    Compare,
    Add,
    Mul,
    Unary,
    App,
    Atom,
}

fn print_expr_at(e: &Expr, indent: usize) -> String {
    Printer { indent }.expr(e, Level::Top)
}

struct Printer {
    indent: usize,
}

impl Printer {
    fn expr(&self, e: &Expr, ctx: Level) -> String {
        let (text, level) = self.raw(e);
        if level < ctx {
            format!("({text})")
        } else {
            text
        }
    }

    fn raw(&self, e: &Expr) -> (String, Level) {
        match &e.kind {
            ExprKind::Number(n) => (format!("{n}"), Level::Atom),
            ExprKind::Str(s) => (quote(s), Level::Atom),
            ExprKind::Bool(b) => (if *b { "True" } else { "False" }.to_string(), Level::Atom),
            ExprKind::Var(n) | ExprKind::Ctor(n) => (n.clone(), Level::Atom),
            ExprKind::Tuple(items) => {
                let inner: Vec<String> = items.iter().map(|i| self.expr(i, Level::Top)).collect();
                (format!("({})", inner.join(", ")), Level::Atom)
            }
            ExprKind::List(items) => {
                let inner: Vec<String> = items.iter().map(|i| self.expr(i, Level::Top)).collect();
                (format!("[{}]", inner.join(", ")), Level::Atom)
            }
            ExprKind::Record(fields) => {
                if fields.is_empty() {
                    return ("{}".to_string(), Level::Atom);
                }
                (format!("{{ {} }}", self.fields(fields)), Level::Atom)
            }
            ExprKind::RecordUpdate(base, fields) => {
                (format!("{{ {} | {} }}", base.name, self.fields(fields)), Level::Atom)
            }
            ExprKind::Field(inner, f) => (format!("{}.{f}", self.expr(inner, Level::Atom)), Level::Atom),
            ExprKind::App(f, args) => {
                let mut s = self.expr(f, Level::Atom);
                for a in args {
                    s.push(' ');
                    s.push_str(&self.expr(a, Level::Atom));
                }
                (s, Level::App)
            }
            ExprKind::Negate(inner) => (format!("(-{})", self.expr(inner, Level::App)), Level::Atom),
            ExprKind::BinOp(op, a, b) => {
                let (own, lhs, rhs) = match op {
                    BinOp::Add | BinOp::Sub => (Level::Add, Level::Add, Level::Mul),
                    BinOp::Mul | BinOp::Div => (Level::Mul, Level::Mul, Level::Unary),
                    _ => (Level::Compare, Level::Add, Level::Add),
                };
                (
                    format!("{} {} {}", self.expr(a, lhs), op.symbol(), self.expr(b, rhs)),
                    own,
                )
            }
            ExprKind::Pipe(a, b) => (
                format!("{} |> {}", self.expr(a, Level::Pipe), self.expr(b, Level::Compare)),
                Level::Pipe,
            ),
            ExprKind::If(c, t, f) => (
                format!(
                    "if {} then {} else {}",
                    self.expr(c, Level::Top),
                    self.expr(t, Level::Top),
                    self.expr(f, Level::Top)
                ),
                Level::Top,
            ),
            ExprKind::Case(s, branches) => {
                let branch_indent = self.indent + INDENT;
                let inner = Printer { indent: branch_indent + INDENT };
                let mut out = format!("case {} of", self.expr(s, Level::Top));
                for b in branches {
                    out.push('\n');
                    out.push_str(&" ".repeat(branch_indent));
                    out.push_str(&b.ctor.name);
                    for binder in &b.binders {
                        out.push(' ');
                        out.push_str(&print_binder(binder));
                    }
                    out.push_str(" -> ");
                    out.push_str(&inner.expr(&b.body, Level::Top));
                }
                (out, Level::Top)
            }
        }
    }

    fn fields(&self, fields: &[(String, Expr)]) -> String {
        fields
            .iter()
            .map(|(k, v)| format!("{k} = {}", self.expr(v, Level::Top)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn print_binder(b: &Binder) -> String {
    match b {
        Binder::Name(n) => n.clone(),
        Binder::Wildcard => "_".to_string(),
        Binder::Pair(a, b) => format!("({}, {})", print_binder(a), print_binder(b)),
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::tokenize;
    use crate::parser::{parse_expr, parse_program};

    fn round_trip_expr(src: &str) {
        let mut a = parse_expr(src).unwrap();
        let printed = print_expr(&a);
        let mut b = parse_expr(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
        a.clear_positions();
        b.clear_positions();
        assert_eq!(a, b, "{printed}");
    }

    #[test]
    fn expressions_round_trip() {
        for src in [
            "circle 50 |> filled red |> move (-50, 0)",
            "a - -b",
            "1 - (2 - 3) * 4 / (5 + 6)",
            "f (g x) y.z (if a < b then 1 else 2)",
            "{ model | time = model.time + 0.5, n = \"a\\\"b\" }",
            "[(1, 2), (3, 4)]",
            "x |> (f |> g)",
        ] {
            round_trip_expr(src);
        }
    }

    #[test]
    fn programs_round_trip() {
        let src = "type Msg = A | B (Float, Float) | C (List Float)\nupdate msg model =\n  case msg of\n    A -> case model of\n      A -> model\n      B _ -> model\n      C _ -> model\n    B (x, y) -> B (x, y)\n    C xs -> model\nmain = notificationsApp { model = A, view = view, update = update }\nview m = collage 10 10 []";
        let a = parse_program(&tokenize(src).unwrap()).unwrap();
        let printed = print_program(&a);
        let b = parse_program(&tokenize(&printed).unwrap()).unwrap_or_else(|e| panic!("{printed}\n{e}"));
        assert_eq!(a.without_positions(), b.without_positions(), "{printed}");
    }
}
