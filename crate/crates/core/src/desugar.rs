//! Pipeline removal: `x |> f a` becomes `f a x`.

use crate::ast::{AppForm, Branch, Expr, ExprKind, Program};

pub fn desugar_pipelines(e: Expr) -> Expr {
    let pos = e.pos;
    let kind = match e.kind {
        ExprKind::Pipe(lhs, rhs) => {
            let arg = desugar_pipelines(*lhs);
            let rhs = desugar_pipelines(*rhs);
            return match rhs.kind {
                ExprKind::App(f, mut args) => {
                    args.push(arg);
                    Expr::new(ExprKind::App(f, args), rhs.pos)
                }
                _ => {
                    let fpos = rhs.pos;
                    Expr::new(ExprKind::App(Box::new(rhs), vec![arg]), fpos)
                }
            };
        }
        ExprKind::Tuple(es) => ExprKind::Tuple(es.into_iter().map(desugar_pipelines).collect()),
        ExprKind::List(es) => ExprKind::List(es.into_iter().map(desugar_pipelines).collect()),
        ExprKind::Record(fs) => ExprKind::Record(fs.into_iter().map(|(k, v)| (k, desugar_pipelines(v))).collect()),
        ExprKind::RecordUpdate(base, fs) => {
            ExprKind::RecordUpdate(base, fs.into_iter().map(|(k, v)| (k, desugar_pipelines(v))).collect())
        }
        ExprKind::Field(inner, f) => ExprKind::Field(Box::new(desugar_pipelines(*inner)), f),
        ExprKind::App(f, args) => {
            let f = desugar_pipelines(*f);
            let args: Vec<Expr> = args.into_iter().map(desugar_pipelines).collect();
            ExprKind::App(Box::new(f), args)
        }
        ExprKind::BinOp(op, a, b) => {
            ExprKind::BinOp(op, Box::new(desugar_pipelines(*a)), Box::new(desugar_pipelines(*b)))
        }
        ExprKind::If(c, t, f) => ExprKind::If(
            Box::new(desugar_pipelines(*c)),
            Box::new(desugar_pipelines(*t)),
            Box::new(desugar_pipelines(*f)),
        ),
        ExprKind::Case(s, branches) => ExprKind::Case(
            Box::new(desugar_pipelines(*s)),
            branches
                .into_iter()
                .map(|b| Branch { body: desugar_pipelines(b.body), ..b })
                .collect(),
        ),
        ExprKind::Negate(inner) => ExprKind::Negate(Box::new(desugar_pipelines(*inner))),
        leaf @ (ExprKind::Number(_)
        | ExprKind::Str(_)
        | ExprKind::Bool(_)
        | ExprKind::Var(_)
        | ExprKind::Ctor(_)) => leaf,
    };
    Expr::new(kind, pos)
}

pub fn desugar_program(mut p: Program) -> Program {
    for d in &mut p.definitions {
        let body = std::mem::replace(&mut d.body, placeholder());
        d.body = desugar_pipelines(body);
    }
    p.main = match p.main {
        AppForm::GraphicsApp { view } => AppForm::GraphicsApp { view: desugar_pipelines(view) },
        AppForm::NotificationsApp { model, view, update } => AppForm::NotificationsApp {
            model: desugar_pipelines(model),
            view,
            update,
        },
        AppForm::GameApp { tick, model, view, update } => AppForm::GameApp {
            tick,
            model: desugar_pipelines(model),
            view,
            update,
        },
    };
    p
}

fn placeholder() -> Expr {
    Expr::new(ExprKind::Number(0.0), Default::default())
}
