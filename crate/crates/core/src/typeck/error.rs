use crate::ast::{BinOp, Pos};
use crate::diagnostic::Diagnostic;
use crate::types::{article, Type};

/// Where a mismatch was found, for phrasing the message.
#[derive(Debug, Clone, PartialEq)]
pub enum MismatchContext {
    Argument { callee: String },
    IfCondition,
    IfBranches,
    ListItem,
    Operator(BinOp),
    CaseScrutinee,
    CasePattern,
    CaseBranches,
    RecordField(String),
    Definition(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeErrorKind {
    Mismatch {
        expected: Type,
        found: Type,
        /// Innermost differing pair, when the mismatch is nested.
        inner: Option<(Type, Type)>,
        context: MismatchContext,
    },
    OccursCheck {
        ty: Type,
    },
    UnknownName {
        name: String,
        suggestions: Vec<String>,
    },
    UnknownConstructor {
        name: String,
        suggestions: Vec<String>,
    },
    UnknownType {
        name: String,
        suggestions: Vec<String>,
    },
    UnknownField {
        field: String,
        record: Type,
        suggestions: Vec<String>,
    },
    UnresolvedRecord {
        field: String,
    },
    ArityError {
        callee: String,
        expected: usize,
        given: usize,
    },
    PatternArity {
        ctor: String,
        expected: usize,
        given: usize,
    },
    NotComparable {
        ty: Type,
    },
    NonExhaustiveCase {
        missing: Vec<String>,
    },
    DuplicateBranch {
        ctor: String,
    },
    BadMain {
        message: String,
        hint: String,
        expected: Option<Type>,
        found: Option<Type>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    pub pos: Pos,
    /// The top-level definition the error was found in, if any.
    pub definition: Option<String>,
}

impl TypeError {
    pub fn new(kind: TypeErrorKind, pos: Pos) -> Self {
        TypeError { kind, pos, definition: None }
    }

    pub fn expected(&self) -> Option<&Type> {
        match &self.kind {
            TypeErrorKind::Mismatch { expected, .. } => Some(expected),
            TypeErrorKind::BadMain { expected, .. } => expected.as_ref(),
            _ => None,
        }
    }

    pub fn found(&self) -> Option<&Type> {
        match &self.kind {
            TypeErrorKind::Mismatch { found, .. } => Some(found),
            TypeErrorKind::BadMain { found, .. } => found.as_ref(),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            TypeErrorKind::Mismatch { .. } => "Mismatch",
            TypeErrorKind::OccursCheck { .. } => "OccursCheck",
            TypeErrorKind::UnknownName { .. } => "UnknownName",
            TypeErrorKind::UnknownConstructor { .. } => "UnknownConstructor",
            TypeErrorKind::UnknownType { .. } => "UnknownType",
            TypeErrorKind::UnknownField { .. } => "UnknownField",
            TypeErrorKind::UnresolvedRecord { .. } => "UnresolvedRecord",
            TypeErrorKind::ArityError { .. } | TypeErrorKind::PatternArity { .. } => "ArityError",
            TypeErrorKind::NotComparable { .. } => "NotComparable",
            TypeErrorKind::NonExhaustiveCase { .. } => "NonExhaustiveCase",
            TypeErrorKind::DuplicateBranch { .. } => "DuplicateBranch",
            TypeErrorKind::BadMain { .. } => "BadMain",
        }
    }
}

fn a(t: &Type) -> String {
    let s = t.beginner();
    format!("{} {s}", article(&s))
}

fn did_you_mean(suggestions: &[String]) -> String {
    match suggestions {
        [] => String::new(),
        [one] => format!(" Did you mean {one}?"),
        many => format!(" Did you mean one of: {}?", many.join(", ")),
    }
}

fn mismatch_hint(expected: &Type, found: &Type) -> String {
    use Type as T;
    match (expected, found) {
        (T::Shape(_), T::Stencil) => "use filled or outlined first.".into(),
        (T::Stencil, T::Shape(_)) => {
            "filled and outlined only work on a Stencil, and this is already a Shape.".into()
        }
        (T::Tuple2(..), T::Float) => "this needs a pair of numbers like (10, 20).".into(),
        (T::Float, T::Tuple2(..)) => "this needs one number, not a pair.".into(),
        (T::List(e), f) if **e == *f || matches!((&**e, f), (T::Shape(_), T::Shape(_))) => {
            "put it inside square brackets to make a list, like [ ... ].".into()
        }
        (T::Collage(_), _) => "a view is made with collage, like collage 500 500 [ ... ].".into(),
        (_, T::Function(..)) => "this function may be missing some of its inputs.".into(),
        (T::Color, T::String) => "colors are written without quotes, like red.".into(),
        (T::Union(u), _) | (_, T::Union(u)) => format!("values of {u} are made with its constructors."),
        _ => "check the values used here; their types need to match.".into(),
    }
}

/// The message and hint for a type error, in the words a beginner would use.
pub fn render_diagnostic(e: &TypeError) -> Diagnostic {
    let (message, hint) = match &e.kind {
        TypeErrorKind::Mismatch { expected, found, inner, context } => {
            let message = match context {
                MismatchContext::Argument { callee } => {
                    format!("{callee} needs {}, but found {}.", a(expected), a(found))
                }
                MismatchContext::IfCondition => {
                    format!("The condition of an if needs to be a Bool, but found {}.", a(found))
                }
                MismatchContext::IfBranches => format!(
                    "Both branches of an if must give the same type, but found {} and {}.",
                    a(expected),
                    a(found)
                ),
                MismatchContext::ListItem => format!(
                    "Everything in a list must have the same type, but found {} and {}.",
                    a(expected),
                    a(found)
                ),
                MismatchContext::Operator(op) => {
                    format!("{} needs {}, but found {}.", op.symbol(), a(expected), a(found))
                }
                MismatchContext::CaseScrutinee => {
                    format!("This case checks {}, but the value being checked is {}.", a(expected), a(found))
                }
                MismatchContext::CasePattern => format!(
                    "All patterns of a case must come from the same type, but found {} and {}.",
                    a(expected),
                    a(found)
                ),
                MismatchContext::CaseBranches => format!(
                    "All branches of a case must give the same type, but found {} and {}.",
                    a(expected),
                    a(found)
                ),
                MismatchContext::RecordField(f) => {
                    format!("The field {f} needs {}, but found {}.", a(expected), a(found))
                }
                MismatchContext::Definition(name) => {
                    format!("{name} is used as {} but is {}.", a(expected), a(found))
                }
            };
            let (he, hf) = inner.as_ref().map(|(x, y)| (x, y)).unwrap_or((expected, found));
            (message, mismatch_hint(he, hf))
        }
        TypeErrorKind::OccursCheck { .. } => (
            "This value would need to contain itself.".to_string(),
            "check that a function is not being given to itself.".to_string(),
        ),
        TypeErrorKind::UnknownName { name, suggestions } => (
            format!("I cannot find anything called {name}.{}", did_you_mean(suggestions)),
            "names must be spelled exactly the same everywhere, including capital letters.".to_string(),
        ),
        TypeErrorKind::UnknownConstructor { name, suggestions } => (
            format!("I cannot find a constructor called {name}.{}", did_you_mean(suggestions)),
            "constructors are declared with type, like type Msg = MoreRed | Reset.".to_string(),
        ),
        TypeErrorKind::UnknownType { name, suggestions } => (
            format!("I do not know a type called {name}.{}", did_you_mean(suggestions)),
            "built-in types include Float, String, Bool, Color and KeyState.".to_string(),
        ),
        TypeErrorKind::UnknownField { field, record, suggestions } => (
            format!("{} has no field called {field}.{}", a(record), did_you_mean(suggestions)),
            "records only have the fields listed where they were first made.".to_string(),
        ),
        TypeErrorKind::UnresolvedRecord { field } => (
            format!("I cannot tell which record .{field} belongs to."),
            "use this value somewhere its record type is known, such as the model.".to_string(),
        ),
        TypeErrorKind::ArityError { callee, expected, given } => {
            let message = if *expected == 0 {
                format!("{callee} is not a function, but it is given {given} input{}.", plural(*given))
            } else {
                format!(
                    "{callee} takes {expected} input{}, but it is given {given}.",
                    plural(*expected)
                )
            };
            (message, "check for extra values or missing parentheses.".to_string())
        }
        TypeErrorKind::PatternArity { ctor, expected, given } => (
            format!("{ctor} holds {expected} value{}, but this pattern names {given}.", plural(*expected)),
            "give one name for each value the constructor holds.".to_string(),
        ),
        TypeErrorKind::NotComparable { ty } => (
            format!("{} cannot be compared with ==.", a(ty)),
            "functions cannot be compared.".to_string(),
        ),
        TypeErrorKind::NonExhaustiveCase { missing } => (
            format!("This case is missing: {}.", missing.join(", ")),
            format!("add a branch like {} -> ... for each missing one.", missing[0]),
        ),
        TypeErrorKind::DuplicateBranch { ctor } => (
            format!("This case has more than one branch for {ctor}."),
            "remove one of them; each constructor gets exactly one branch.".to_string(),
        ),
        TypeErrorKind::BadMain { message, hint, .. } => (message.clone(), hint.clone()),
    };
    Diagnostic::error(e.pos, message, hint)
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencil_moved() {
        let e = TypeError::new(
            TypeErrorKind::Mismatch {
                expected: Type::shape(Type::Var(4)),
                found: Type::Stencil,
                inner: None,
                context: MismatchContext::Argument { callee: "move".into() },
            },
            Pos::new(3, 5),
        );
        assert_eq!(
            render_diagnostic(&e).render(),
            "Line 3: move needs a Shape, but found a Stencil. Hint: use filled or outlined first."
        );
    }

    #[test]
    fn unknown_name_suggests() {
        let e = TypeError::new(
            TypeErrorKind::UnknownName { name: "coluor".into(), suggestions: vec!["colour".into()] },
            Pos::new(1, 1),
        );
        assert!(render_diagnostic(&e).message.contains("colour"));
    }

    #[test]
    fn missing_branch() {
        let e = TypeError::new(TypeErrorKind::NonExhaustiveCase { missing: vec!["Reset".into()] }, Pos::new(1, 1));
        assert_eq!(render_diagnostic(&e).message, "This case is missing: Reset.");
    }
}
