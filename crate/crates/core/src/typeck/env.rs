use std::collections::{BTreeMap, HashMap};

use crate::builtins::{self, Builtin};
use crate::types::{Type, TypeVarId};

/// One constructor of a declared union.
#[derive(Debug, Clone, PartialEq)]
pub struct CtorInfo {
    pub union: String,
    pub name: String,
    pub args: Vec<Type>,
}

/// A binding: `Poly` types mention [`MSG_PLACEHOLDER`] and are instantiated
/// with a fresh variable at each lookup.
#[derive(Debug, Clone, PartialEq)]
pub enum Scheme {
    Mono(Type),
    Poly(Type),
}

/// Variable id standing for the message parameter inside [`Scheme::Poly`].
pub const MSG_PLACEHOLDER: TypeVarId = u32::MAX;

#[derive(Debug, Clone, Default)]
pub struct TypeEnv {
    bindings: HashMap<String, Scheme>,
    /// Union name to constructor names, in declaration order.
    pub unions: BTreeMap<String, Vec<String>>,
    pub ctors: HashMap<String, CtorInfo>,
}

impl TypeEnv {
    pub fn insert(&mut self, name: &str, scheme: Scheme) {
        self.bindings.insert(name.to_string(), scheme);
    }

    pub fn scheme(&self, name: &str) -> Option<&Scheme> {
        self.bindings.get(name)
    }

    /// Looks `name` up, instantiating the message parameter with `fresh()`.
    pub fn lookup(&self, name: &str, fresh: impl FnOnce() -> Type) -> Option<Type> {
        match self.bindings.get(name)? {
            Scheme::Mono(t) => Some(t.clone()),
            Scheme::Poly(t) => {
                let v = fresh();
                Some(replace_var(t, MSG_PLACEHOLDER, &v))
            }
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn add_union(&mut self, name: &str, ctors: Vec<CtorInfo>) {
        self.unions
            .insert(name.to_string(), ctors.iter().map(|c| c.name.clone()).collect());
        for c in ctors {
            self.ctors.insert(c.name.clone(), c);
        }
    }

    pub fn ctor_type(&self, name: &str) -> Option<Type> {
        let info = self.ctors.get(name)?;
        Some(Type::func(info.args.iter().cloned(), Type::Union(info.union.clone())))
    }
}

pub(crate) fn replace_var(t: &Type, v: TypeVarId, with: &Type) -> Type {
    match t {
        Type::Var(w) if *w == v => with.clone(),
        Type::Shape(m) => Type::Shape(Box::new(replace_var(m, v, with))),
        Type::Collage(m) => Type::Collage(Box::new(replace_var(m, v, with))),
        Type::List(e) => Type::List(Box::new(replace_var(e, v, with))),
        Type::Tuple2(a, b) => Type::Tuple2(Box::new(replace_var(a, v, with)), Box::new(replace_var(b, v, with))),
        Type::Function(a, b) => {
            Type::Function(Box::new(replace_var(a, v, with)), Box::new(replace_var(b, v, with)))
        }
        Type::Record(fields) => Type::Record(
            fields
                .iter()
                .map(|(k, t)| (k.clone(), replace_var(t, v, with)))
                .collect(),
        ),
        other => other.clone(),
    }
}

/// Signatures of every builtin function and constant.
pub fn builtin_environment() -> TypeEnv {
    let mut env = TypeEnv::default();
    for b in Builtin::ALL {
        let scheme = if b.is_polymorphic() {
            Scheme::Poly(b.signature(Type::Var(MSG_PLACEHOLDER)))
        } else {
            Scheme::Mono(b.signature(Type::NoMsg))
        };
        env.insert(b.name(), scheme);
    }
    for name in builtins::all_names() {
        if let Some(t) = builtins::constant_type(name) {
            env.insert(name, Scheme::Mono(t));
        }
    }
    env
}
