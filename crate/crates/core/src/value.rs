//! Runtime values.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::ast::Expr;
use crate::builtins::Builtin;
use crate::color::{Color, LinePattern, LineType};
use crate::numfmt::fmt_num;
use crate::scene::{dump_geometry, Geometry, SceneNode};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Str(Arc<str>),
    Boolean(bool),
    /// Pairs; the empty tuple is the unit model of graphics apps.
    Tuple(Vec<Value>),
    List(Vec<Value>),
    Record(BTreeMap<String, Value>),
    Color(Color),
    LineType(LineType),
    Stencil(Geometry),
    Shape(Arc<SceneNode>),
    Collage { width: f64, height: f64, root: Arc<SceneNode> },
    /// A constructor applied to `args`; a function while `args.len() < arity`.
    Ctor { name: Arc<str>, arity: usize, args: Vec<Value> },
    Closure(Arc<Closure>),
    Builtin(Builtin, Vec<Value>),
    KeyState(Arc<BTreeSet<String>>),
}

/// A partially or not-yet applied user definition.
#[derive(Debug, Clone)]
pub struct Closure {
    pub name: String,
    pub params: Vec<String>,
    pub body: Arc<Expr>,
    /// Arguments supplied so far.
    pub captured: Vec<Value>,
}

impl PartialEq for Closure {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.params == other.params
            && self.captured == other.captured
            && (Arc::ptr_eq(&self.body, &other.body) || self.body == other.body)
    }
}

impl Value {
    pub fn unit() -> Value {
        Value::Tuple(Vec::new())
    }

    pub fn point(x: f64, y: f64) -> Value {
        Value::Tuple(vec![Value::Number(x), Value::Number(y)])
    }

    pub fn ctor(name: &str, args: Vec<Value>) -> Value {
        Value::Ctor { name: name.into(), arity: args.len(), args }
    }

    /// A record field, or `None` for anything else.
    pub fn field(&self, name: &str) -> Option<&Value> {
        match self {
            Value::Record(fields) => fields.get(name),
            _ => None,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Value::Number(_) => "Number",
            Value::Str(_) => "Str",
            Value::Boolean(_) => "Boolean",
            Value::Tuple(_) => "Tuple",
            Value::List(_) => "List",
            Value::Record(_) => "Record",
            Value::Color(_) => "Color",
            Value::LineType(_) => "LineType",
            Value::Stencil(_) => "Stencil",
            Value::Shape(_) => "Shape",
            Value::Collage { .. } => "Collage",
            Value::Ctor { .. } => "Constructor",
            Value::Closure(_) => "Closure",
            Value::Builtin(..) => "Builtin",
            Value::KeyState(_) => "KeyState",
        }
    }

    pub fn is_function(&self) -> bool {
        match self {
            Value::Closure(_) | Value::Builtin(..) => true,
            Value::Ctor { arity, args, .. } => args.len() < *arity,
            _ => false,
        }
    }

    /// Canonical one-line rendering used for model dumps and message traces.
    pub fn dump(&self) -> String {
        match self {
            Value::Number(n) => fmt_num(*n),
            Value::Str(s) => serde_json::to_string(&**s).expect("string serializes"),
            Value::Boolean(b) => if *b { "True" } else { "False" }.to_string(),
            Value::Tuple(items) => {
                let inner: Vec<String> = items.iter().map(Value::dump).collect();
                format!("({})", inner.join(", "))
            }
            Value::List(items) => {
                let inner: Vec<String> = items.iter().map(Value::dump).collect();
                format!("[{}]", inner.join(", "))
            }
            Value::Record(fields) => {
                if fields.is_empty() {
                    return "{}".to_string();
                }
                let inner: Vec<String> = fields.iter().map(|(k, v)| format!("{k} = {}", v.dump())).collect();
                format!("{{ {} }}", inner.join(", "))
            }
            Value::Color(c) => format!("rgb {} {} {}", c.r, c.g, c.b),
            Value::LineType(lt) => {
                let p = match lt.pattern {
                    LinePattern::Solid => "solid",
                    LinePattern::Dotted => "dotted",
                    LinePattern::Dashed => "dashed",
                };
                format!("{p} {}", fmt_num(lt.width))
            }
            Value::Stencil(g) => format!("<stencil {}>", dump_geometry(g)),
            Value::Shape(_) => "<shape>".to_string(),
            Value::Collage { width, height, .. } => {
                format!("<collage {}x{}>", fmt_num(*width), fmt_num(*height))
            }
            Value::Ctor { name, args, .. } => {
                let mut s = name.to_string();
                for a in args {
                    s.push(' ');
                    s.push_str(&a.dump_atom());
                }
                s
            }
            Value::Closure(c) => format!("<function {}>", c.name),
            Value::Builtin(b, _) => format!("<function {}>", b.name()),
            Value::KeyState(keys) => {
                let names: Vec<&str> = keys.iter().map(String::as_str).collect();
                format!("<keys [{}]>", names.join(", "))
            }
        }
    }

    fn dump_atom(&self) -> String {
        let s = self.dump();
        let needs_parens = match self {
            Value::Number(n) => *n < 0.0 && s != "0",
            Value::Ctor { args, .. } => !args.is_empty(),
            Value::Color(_) | Value::LineType(_) => true,
            _ => false,
        };
        if needs_parens {
            format!("({s})")
        } else {
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dumps() {
        assert_eq!(Value::ctor("MoreRed", vec![]).dump(), "MoreRed");
        assert_eq!(Value::ctor("PointMsg", vec![Value::point(3.0, -4.0)]).dump(), "PointMsg (3, -4)");
        let mut rec = BTreeMap::new();
        rec.insert("time".to_string(), Value::Number(0.5));
        rec.insert("count".to_string(), Value::Number(0.0));
        assert_eq!(Value::Record(rec).dump(), "{ count = 0, time = 0.5 }");
        assert_eq!(Value::unit().dump(), "()");
        assert_eq!(Value::ctor("Go", vec![Value::Number(-1.0)]).dump(), "Go (-1)");
    }
}
