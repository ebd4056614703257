//! The internal type language.

use std::collections::BTreeMap;
use std::fmt;

pub type TypeVarId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Float,
    String,
    Bool,
    Color,
    LineType,
    Stencil,
    KeyState,
    /// Message type of programs that never send messages.
    NoMsg,
    /// A styled shape; the argument is the message type its handlers produce.
    Shape(Box<Type>),
    Collage(Box<Type>),
    List(Box<Type>),
    Tuple2(Box<Type>, Box<Type>),
    /// Width-exact record.
    Record(BTreeMap<String, Type>),
    /// Curried function of one parameter.
    Function(Box<Type>, Box<Type>),
    /// A declared union, by name.
    Union(String),
    Var(TypeVarId),
}

impl Type {
    pub fn shape(msg: Type) -> Type {
        Type::Shape(Box::new(msg))
    }

    pub fn collage(msg: Type) -> Type {
        Type::Collage(Box::new(msg))
    }

    pub fn list(elem: Type) -> Type {
        Type::List(Box::new(elem))
    }

    pub fn tuple(a: Type, b: Type) -> Type {
        Type::Tuple2(Box::new(a), Box::new(b))
    }

    pub fn point() -> Type {
        Type::tuple(Type::Float, Type::Float)
    }

    /// `p1 -> p2 -> ... -> result`
    pub fn func(params: impl IntoIterator<Item = Type>, result: Type) -> Type {
        let params: Vec<Type> = params.into_iter().collect();
        params
            .into_iter()
            .rev()
            .fold(result, |acc, p| Type::Function(Box::new(p), Box::new(acc)))
    }

    /// Splits a curried function type into its parameters and final result.
    pub fn uncurry(&self) -> (Vec<&Type>, &Type) {
        let mut params = Vec::new();
        let mut t = self;
        while let Type::Function(p, r) = t {
            params.push(&**p);
            t = r;
        }
        (params, t)
    }

    pub fn is_function(&self) -> bool {
        matches!(self, Type::Function(..))
    }

    pub fn contains_var(&self, v: TypeVarId) -> bool {
        match self {
            Type::Var(w) => *w == v,
            _ => self.children().any(|c| c.contains_var(v)),
        }
    }

    pub fn free_vars(&self) -> Vec<TypeVarId> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<TypeVarId>) {
        match self {
            Type::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            _ => self.children().for_each(|c| c.collect_vars(out)),
        }
    }

    pub fn children(&self) -> Box<dyn Iterator<Item = &Type> + '_> {
        match self {
            Type::Shape(t) | Type::Collage(t) | Type::List(t) => Box::new(std::iter::once(&**t)),
            Type::Tuple2(a, b) | Type::Function(a, b) => Box::new([&**a, &**b].into_iter()),
            Type::Record(fields) => Box::new(fields.values()),
            _ => Box::new(std::iter::empty()),
        }
    }

    pub fn contains_function(&self) -> bool {
        self.is_function() || self.children().any(|c| c.contains_function())
    }

    /// Surface name of the outermost type constructor, e.g. `Shape` for `Shape Msg`.
    pub fn head_name(&self) -> String {
        match self {
            Type::Float => "Float".into(),
            Type::String => "String".into(),
            Type::Bool => "Bool".into(),
            Type::Color => "Color".into(),
            Type::LineType => "LineType".into(),
            Type::Stencil => "Stencil".into(),
            Type::KeyState => "KeyState".into(),
            Type::NoMsg => "NoMsg".into(),
            Type::Shape(_) => "Shape".into(),
            Type::Collage(_) => "Collage".into(),
            Type::List(_) => "List".into(),
            Type::Tuple2(..) => "tuple".into(),
            Type::Record(_) => "record".into(),
            Type::Function(..) => "function".into(),
            Type::Union(n) => n.clone(),
            Type::Var(_) => "value".into(),
        }
    }

    /// Rendering for beginners: no type-variable ids, message parameters of
    /// `Shape` and `Collage` only when they are known.
    pub fn beginner(&self) -> String {
        self.render(false)
    }

    fn render(&self, nested: bool) -> String {
        let wrap = |s: String| if nested { format!("({s})") } else { s };
        match self {
            Type::Shape(m) | Type::Collage(m) => match &**m {
                Type::Var(_) | Type::NoMsg => self.head_name(),
                m => wrap(format!("{} {}", self.head_name(), m.render(true))),
            },
            Type::List(e) => wrap(format!("List {}", e.render(true))),
            Type::Tuple2(a, b) => format!("({}, {})", a.render(false), b.render(false)),
            Type::Record(fields) => {
                let body: Vec<String> = fields
                    .iter()
                    .map(|(k, v)| format!("{k} : {}", v.render(false)))
                    .collect();
                format!("{{ {} }}", body.join(", "))
            }
            Type::Function(p, r) => {
                let s = format!("{} -> {}", p.render(true), r.render(false));
                wrap(s)
            }
            Type::Var(_) => "anything".into(),
            _ => self.head_name(),
        }
    }
}

/// Debug-oriented rendering that shows variable ids as `?N`.
impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Var(v) => write!(f, "?{v}"),
            Type::Shape(m) => write!(f, "Shape ({m})"),
            Type::Collage(m) => write!(f, "Collage ({m})"),
            Type::List(e) => write!(f, "List ({e})"),
            Type::Tuple2(a, b) => write!(f, "({a}, {b})"),
            Type::Record(fields) => {
                write!(f, "{{")?;
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, " {k} : {v}")?;
                }
                write!(f, " }}")
            }
            Type::Function(p, r) => write!(f, "({p}) -> {r}"),
            other => write!(f, "{}", other.head_name()),
        }
    }
}

/// `a` or `an` for a rendered type name.
pub fn article(rendered: &str) -> &'static str {
    match rendered.chars().next() {
        Some(c) if "AEIOUaeiou".contains(c) => "an",
        _ => "a",
    }
}
