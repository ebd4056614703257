//! The builtin function table shared by the typechecker and the evaluator.

use crate::types::Type;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    Circle,
    Square,
    Triangle,
    Rect,
    Oval,
    RoundedRect,
    Text,
    Size,
    Filled,
    Outlined,
    Move,
    Scale,
    Rotate,
    Group,
    NotifyTap,
    NotifyTapAt,
    NotifyEnter,
    NotifyLeave,
    Collage,
    Solid,
    Dotted,
    Dashed,
    Rgb,
    Sin,
    Cos,
    Degrees,
    KeyDown,
}

impl Builtin {
    pub const ALL: [Builtin; 27] = [
        Builtin::Circle,
        Builtin::Square,
        Builtin::Triangle,
        Builtin::Rect,
        Builtin::Oval,
        Builtin::RoundedRect,
        Builtin::Text,
        Builtin::Size,
        Builtin::Filled,
        Builtin::Outlined,
        Builtin::Move,
        Builtin::Scale,
        Builtin::Rotate,
        Builtin::Group,
        Builtin::NotifyTap,
        Builtin::NotifyTapAt,
        Builtin::NotifyEnter,
        Builtin::NotifyLeave,
        Builtin::Collage,
        Builtin::Solid,
        Builtin::Dotted,
        Builtin::Dashed,
        Builtin::Rgb,
        Builtin::Sin,
        Builtin::Cos,
        Builtin::Degrees,
        Builtin::KeyDown,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Circle => "circle",
            Builtin::Square => "square",
            Builtin::Triangle => "triangle",
            Builtin::Rect => "rect",
            Builtin::Oval => "oval",
            Builtin::RoundedRect => "roundedRect",
            Builtin::Text => "text",
            Builtin::Size => "size",
            Builtin::Filled => "filled",
            Builtin::Outlined => "outlined",
            Builtin::Move => "move",
            Builtin::Scale => "scale",
            Builtin::Rotate => "rotate",
            Builtin::Group => "group",
            Builtin::NotifyTap => "notifyTap",
            Builtin::NotifyTapAt => "notifyTapAt",
            Builtin::NotifyEnter => "notifyEnter",
            Builtin::NotifyLeave => "notifyLeave",
            Builtin::Collage => "collage",
            Builtin::Solid => "solid",
            Builtin::Dotted => "dotted",
            Builtin::Dashed => "dashed",
            Builtin::Rgb => "rgb",
            Builtin::Sin => "sin",
            Builtin::Cos => "cos",
            Builtin::Degrees => "degrees",
            Builtin::KeyDown => "keyDown",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.iter().copied().find(|b| b.name() == name)
    }

    /// Type with `msg` standing for the message-type parameter, which the
    /// typechecker instantiates freshly at each use.
    pub fn signature(self, msg: Type) -> Type {
        use Type as T;
        let shape = || T::shape(msg.clone());
        let transformer = |param: Type| T::func([param, shape()], shape());
        match self {
            Builtin::Circle | Builtin::Square | Builtin::Triangle => T::func([T::Float], T::Stencil),
            Builtin::Rect | Builtin::Oval => T::func([T::Float, T::Float], T::Stencil),
            Builtin::RoundedRect => T::func([T::Float, T::Float, T::Float], T::Stencil),
            Builtin::Text => T::func([T::String], T::Stencil),
            Builtin::Size => T::func([T::Float, T::Stencil], T::Stencil),
            Builtin::Filled => T::func([T::Color, T::Stencil], shape()),
            Builtin::Outlined => T::func([T::LineType, T::Stencil], shape()),
            Builtin::Move => transformer(T::point()),
            Builtin::Scale | Builtin::Rotate => transformer(T::Float),
            Builtin::Group => T::func([T::list(shape())], shape()),
            Builtin::NotifyTap | Builtin::NotifyEnter | Builtin::NotifyLeave => transformer(msg.clone()),
            Builtin::NotifyTapAt => transformer(T::func([T::point()], msg.clone())),
            Builtin::Collage => T::func([T::Float, T::Float, T::list(shape())], T::collage(msg.clone())),
            Builtin::Solid | Builtin::Dotted | Builtin::Dashed => T::func([T::Float], T::LineType),
            Builtin::Rgb => T::func([T::Float, T::Float, T::Float], T::Color),
            Builtin::Sin | Builtin::Cos | Builtin::Degrees => T::func([T::Float], T::Float),
            Builtin::KeyDown => T::func([T::String, T::KeyState], T::Bool),
        }
    }

    pub fn arity(self) -> usize {
        self.signature(Type::NoMsg).uncurry().0.len()
    }

    /// Whether the signature mentions the message-type parameter.
    pub fn is_polymorphic(self) -> bool {
        self.signature(Type::Var(0)).contains_var(0)
    }

    /// Stencil constructors that are not text; `size` has no effect on these.
    pub fn is_non_text_stencil(self) -> bool {
        matches!(
            self,
            Builtin::Circle
                | Builtin::Square
                | Builtin::Triangle
                | Builtin::Rect
                | Builtin::Oval
                | Builtin::RoundedRect
        )
    }
}

/// Names that are values rather than functions: `pi` and the palette colors.
pub fn constant_type(name: &str) -> Option<Type> {
    if name == "pi" {
        Some(Type::Float)
    } else if crate::color::is_palette_name(name) {
        Some(Type::Color)
    } else {
        None
    }
}

/// Every reserved builtin name, including constants.
pub fn all_names() -> impl Iterator<Item = &'static str> {
    Builtin::ALL
        .iter()
        .map(|b| b.name())
        .chain(std::iter::once("pi"))
        .chain(crate::color::PALETTE.iter().map(|(n, _)| *n))
}

pub fn is_builtin_name(name: &str) -> bool {
    Builtin::from_name(name).is_some() || constant_type(name).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arities() {
        assert_eq!(Builtin::Circle.arity(), 1);
        assert_eq!(Builtin::RoundedRect.arity(), 3);
        assert_eq!(Builtin::Collage.arity(), 3);
        assert_eq!(Builtin::NotifyTapAt.arity(), 2);
    }

    #[test]
    fn polymorphism() {
        assert!(Builtin::Filled.is_polymorphic());
        assert!(Builtin::Group.is_polymorphic());
        assert!(!Builtin::Circle.is_polymorphic());
        assert!(!Builtin::Rgb.is_polymorphic());
    }
}
