use std::collections::BTreeMap;

use crate::types::{Type, TypeVarId};

/// Type-variable bindings, kept idempotent: no bound variable occurs in any
/// image.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Substitution {
    map: BTreeMap<TypeVarId, Type>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UnifyError {
    #[error("expected {expected}, found {found}")]
    Mismatch { expected: Type, found: Type },
    #[error("{var:?} occurs in {ty}")]
    OccursCheck { var: TypeVarId, ty: Type },
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: TypeVarId) -> Option<&Type> {
        self.map.get(&v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TypeVarId, &Type)> {
        self.map.iter()
    }

    pub fn apply(&self, t: &Type) -> Type {
        if self.map.is_empty() {
            return t.clone();
        }
        match t {
            Type::Var(v) => self.map.get(v).cloned().unwrap_or(Type::Var(*v)),
            Type::Shape(m) => Type::Shape(Box::new(self.apply(m))),
            Type::Collage(m) => Type::Collage(Box::new(self.apply(m))),
            Type::List(e) => Type::List(Box::new(self.apply(e))),
            Type::Tuple2(a, b) => Type::Tuple2(Box::new(self.apply(a)), Box::new(self.apply(b))),
            Type::Function(a, b) => Type::Function(Box::new(self.apply(a)), Box::new(self.apply(b))),
            Type::Record(fields) => Type::Record(fields.iter().map(|(k, v)| (k.clone(), self.apply(v))).collect()),
            other => other.clone(),
        }
    }

    /// Binds `v` to `t`, which must already have this substitution applied.
    fn bind(&mut self, v: TypeVarId, t: Type) {
        let single = Substitution {
            map: BTreeMap::from([(v, t.clone())]),
        };
        for image in self.map.values_mut() {
            if image.contains_var(v) {
                *image = single.apply(image);
            }
        }
        self.map.insert(v, t);
    }

    pub fn is_idempotent(&self) -> bool {
        self.map
            .values()
            .all(|image| image.free_vars().iter().all(|v| !self.map.contains_key(v)))
    }
}

/// Most general unifier of `expected` and `found`.
pub fn unify(expected: &Type, found: &Type) -> Result<Substitution, UnifyError> {
    let mut s = Substitution::new();
    unify_into(&mut s, expected, found)?;
    Ok(s)
}

/// Extends `s` so that it unifies `expected` and `found`. On error `s` may
/// hold bindings made before the failing pair.
pub fn unify_into(s: &mut Substitution, expected: &Type, found: &Type) -> Result<(), UnifyError> {
    let a = s.apply(expected);
    let b = s.apply(found);
    unify_resolved(s, &a, &b)
}

fn unify_resolved(s: &mut Substitution, a: &Type, b: &Type) -> Result<(), UnifyError> {
    let mismatch = || UnifyError::Mismatch { expected: a.clone(), found: b.clone() };
    match (a, b) {
        (Type::Var(x), Type::Var(y)) if x == y => Ok(()),
        (Type::Var(v), t) | (t, Type::Var(v)) => {
            if t.contains_var(*v) {
                return Err(UnifyError::OccursCheck { var: *v, ty: t.clone() });
            }
            s.bind(*v, t.clone());
            Ok(())
        }
        (Type::Shape(x), Type::Shape(y))
        | (Type::Collage(x), Type::Collage(y))
        | (Type::List(x), Type::List(y)) => unify_into(s, x, y),
        (Type::Tuple2(a1, a2), Type::Tuple2(b1, b2)) | (Type::Function(a1, a2), Type::Function(b1, b2)) => {
            unify_into(s, a1, b1)?;
            unify_into(s, a2, b2)
        }
        (Type::Record(fa), Type::Record(fb)) => {
            if fa.len() != fb.len() || fa.keys().zip(fb.keys()).any(|(x, y)| x != y) {
                return Err(mismatch());
            }
            for (k, ta) in fa {
                unify_into(s, ta, &fb[k])?;
            }
            Ok(())
        }
        (Type::Union(x), Type::Union(y)) if x == y => Ok(()),
        (x, y) if x == y && x.children().next().is_none() => Ok(()),
        _ => Err(mismatch()),
    }
}
