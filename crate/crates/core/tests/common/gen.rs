//! Random well-typed source generation over a fixed prelude.

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

pub const PRELUDE: &str = "type Msg = A | B Float | P (Float, Float)

double n = n * 2

add a b = a + b

pt = { x = 1.5, y = -2 }

petal c = oval 20 10 |> filled c

grow k s = scale k s

flip m =
  case m of
    A -> B 1
    B x -> P (x, x)
    P (x, y) -> A
";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ty {
    Float,
    Bool,
    Str,
    Color,
    Line,
    Stencil,
    Shape,
    Shapes,
    Point,
    Msg,
}

pub const ALL_TYPES: [Ty; 10] = [
    Ty::Float,
    Ty::Bool,
    Ty::Str,
    Ty::Color,
    Ty::Line,
    Ty::Stencil,
    Ty::Shape,
    Ty::Shapes,
    Ty::Point,
    Ty::Msg,
];

pub struct Gen {
    pub rng: StdRng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: StdRng::seed_from_u64(seed) }
    }

    fn pick<'a>(&mut self, xs: &[&'a str]) -> &'a str {
        xs.choose(&mut self.rng).expect("nonempty")
    }

    /// `f a b` or, sometimes, the same call written as a pipeline.
    fn call(&mut self, f: &str, args: Vec<String>) -> String {
        if args.is_empty() {
            return f.to_string();
        }
        if self.rng.random_bool(0.4) {
            let (last, init) = args.split_last().expect("nonempty");
            let head = if init.is_empty() { f.to_string() } else { format!("{f} {}", init.join(" ")) };
            format!("({last} |> {head})")
        } else {
            format!("({f} {})", args.join(" "))
        }
    }

    pub fn number(&mut self) -> String {
        let n: f64 = (self.rng.random_range(-400..400) as f64) / 4.0;
        if n < 0.0 {
            format!("(-{})", -n)
        } else {
            format!("{n}")
        }
    }

    pub fn expr(&mut self, ty: Ty, depth: u32) -> String {
        let leaf = depth == 0 || self.rng.random_bool(0.25);
        match ty {
            Ty::Float if leaf => match self.rng.random_range(0..4) {
                0 => "pi".into(),
                1 => "pt.x".into(),
                _ => self.number(),
            },
            Ty::Float => {
                let d = depth - 1;
                match self.rng.random_range(0..7) {
                    0 => {
                        let op = self.pick(&["+", "-", "*", "/"]);
                        format!("({} {op} {})", self.expr(Ty::Float, d), self.expr(Ty::Float, d))
                    }
                    1 => {
                        let f = self.pick(&["sin", "cos", "degrees", "double"]);
                        let a = self.expr(Ty::Float, d);
                        self.call(f, vec![a])
                    }
                    2 => {
                        let args = vec![self.expr(Ty::Float, d), self.expr(Ty::Float, d)];
                        self.call("add", args)
                    }
                    3 => format!(
                        "(if {} then {} else {})",
                        self.expr(Ty::Bool, d),
                        self.expr(Ty::Float, d),
                        self.expr(Ty::Float, d)
                    ),
                    4 => format!("(-{})", self.expr(Ty::Float, d)),
                    _ => self.number(),
                }
            }
            Ty::Bool if leaf => self.pick(&["True", "False"]).into(),
            Ty::Bool => {
                let d = depth - 1;
                match self.rng.random_range(0..3) {
                    0 => {
                        let op = self.pick(&["<", "<=", ">", ">=", "=="]);
                        format!("({} {op} {})", self.expr(Ty::Float, d), self.expr(Ty::Float, d))
                    }
                    1 => {
                        let t = *[Ty::Msg, Ty::Color, Ty::Point, Ty::Str].choose(&mut self.rng).unwrap();
                        format!("({} == {})", self.expr(t, d), self.expr(t, d))
                    }
                    _ => format!("(if {} then {} else {})", self.expr(Ty::Bool, d), self.expr(Ty::Bool, d), self.expr(Ty::Bool, d)),
                }
            }
            Ty::Str => format!("\"{}\"", self.pick(&["hi", "a b", "", "tap me", "x<y&z"])),
            Ty::Color if leaf => self.pick(&["red", "green", "blue", "yellow", "lightBlue", "darkRed", "grey", "white"]).into(),
            Ty::Color => {
                let d = depth - 1;
                let args = vec![self.expr(Ty::Float, d), self.expr(Ty::Float, d), self.expr(Ty::Float, d)];
                self.call("rgb", args)
            }
            Ty::Line => {
                let f = self.pick(&["solid", "dotted", "dashed"]);
                let w = self.expr(Ty::Float, depth.saturating_sub(1));
                self.call(f, vec![w])
            }
            Ty::Stencil => {
                let d = depth.saturating_sub(1);
                match self.rng.random_range(0..8) {
                    0 => {
                        let a = self.expr(Ty::Float, d);
                        let f = self.pick(&["circle", "square", "triangle"]);
                        self.call(f, vec![a])
                    }
                    1 | 2 => {
                        let f = self.pick(&["rect", "oval"]);
                        let args = vec![self.expr(Ty::Float, d), self.expr(Ty::Float, d)];
                        self.call(f, args)
                    }
                    3 => {
                        let args = vec![self.expr(Ty::Float, d), self.expr(Ty::Float, d), self.expr(Ty::Float, d)];
                        self.call("roundedRect", args)
                    }
                    4 | 5 => {
                        let s = self.expr(Ty::Str, d);
                        self.call("text", vec![s])
                    }
                    6 => {
                        let args = vec![self.expr(Ty::Float, d), format!("(text {})", self.expr(Ty::Str, d))];
                        self.call("size", args)
                    }
                    _ => {
                        let args = vec![self.expr(Ty::Float, d), self.expr(Ty::Stencil, d)];
                        self.call("size", args)
                    }
                }
            }
            Ty::Shape => {
                let d = depth.saturating_sub(1);
                let choice = if leaf { self.rng.random_range(0..3) } else { self.rng.random_range(0..12) };
                match choice {
                    0 => {
                        let args = vec![self.expr(Ty::Color, d), self.expr(Ty::Stencil, d)];
                        self.call("filled", args)
                    }
                    1 => {
                        let args = vec![self.expr(Ty::Line, d), self.expr(Ty::Stencil, d)];
                        self.call("outlined", args)
                    }
                    2 => {
                        let c = self.expr(Ty::Color, d);
                        self.call("petal", vec![c])
                    }
                    3 => {
                        let args = vec![self.expr(Ty::Point, d), self.expr(Ty::Shape, d)];
                        self.call("move", args)
                    }
                    4 | 5 => {
                        let f = self.pick(&["scale", "rotate", "grow"]);
                        let args = vec![self.expr(Ty::Float, d), self.expr(Ty::Shape, d)];
                        self.call(f, args)
                    }
                    6 => {
                        let f = self.pick(&["notifyTap", "notifyEnter", "notifyLeave"]);
                        let args = vec![self.expr(Ty::Msg, d), self.expr(Ty::Shape, d)];
                        self.call(f, args)
                    }
                    7 => {
                        let args = vec!["P".to_string(), self.expr(Ty::Shape, d)];
                        self.call("notifyTapAt", args)
                    }
                    _ => {
                        let xs = self.expr(Ty::Shapes, d);
                        self.call("group", vec![xs])
                    }
                }
            }
            Ty::Shapes => {
                let n = if depth == 0 { 0 } else { self.rng.random_range(0..4) };
                let items: Vec<String> = (0..n).map(|_| self.expr(Ty::Shape, depth - 1)).collect();
                format!("[{}]", items.join(", "))
            }
            Ty::Point => {
                if leaf && self.rng.random_bool(0.3) {
                    return "(pt.x, pt.y)".into();
                }
                let d = depth.saturating_sub(1);
                format!("({}, {})", self.expr(Ty::Float, d), self.expr(Ty::Float, d))
            }
            Ty::Msg if leaf => "A".into(),
            Ty::Msg => {
                let d = depth - 1;
                match self.rng.random_range(0..4) {
                    0 => "A".into(),
                    1 => {
                        let a = self.expr(Ty::Float, d);
                        self.call("B", vec![a])
                    }
                    2 => {
                        let a = self.expr(Ty::Point, d);
                        self.call("P", vec![a])
                    }
                    _ => {
                        let m = self.expr(Ty::Msg, d);
                        self.call("flip", vec![m])
                    }
                }
            }
        }
    }

    /// A function expression of type `ty -> _`, as text that can be applied
    /// to one more argument.
    pub fn function_on(&mut self, ty: Ty) -> Option<String> {
        let d = 2;
        Some(match ty {
            Ty::Float => match self.rng.random_range(0..5) {
                0 => self.pick(&["sin", "cos", "degrees", "double", "circle", "square", "triangle"]).into(),
                1 => format!("add {}", self.expr(Ty::Float, d)),
                2 => format!("rect {}", self.expr(Ty::Float, d)),
                3 => format!("roundedRect {} {}", self.expr(Ty::Float, d), self.expr(Ty::Float, d)),
                _ => format!("rgb {} {}", self.expr(Ty::Float, d), self.expr(Ty::Float, d)),
            },
            Ty::Stencil => match self.rng.random_range(0..3) {
                0 => format!("filled {}", self.expr(Ty::Color, d)),
                1 => format!("outlined {}", self.expr(Ty::Line, d)),
                _ => format!("size {}", self.expr(Ty::Float, d)),
            },
            Ty::Shape => match self.rng.random_range(0..4) {
                0 => format!("move {}", self.expr(Ty::Point, d)),
                1 => format!("{} {}", self.pick(&["scale", "rotate", "grow"]), self.expr(Ty::Float, d)),
                2 => format!("{} {}", self.pick(&["notifyTap", "notifyEnter", "notifyLeave"]), self.expr(Ty::Msg, d)),
                _ => "notifyTapAt P".into(),
            },
            Ty::Color => "petal".into(),
            Ty::Msg => "flip".into(),
            Ty::Point => self.pick(&["P", "move"]).into(),
            Ty::Shapes => self.pick(&["group", "collage 100 100"]).into(),
            Ty::Str => "text".into(),
            Ty::Line => "outlined".into(),
            Ty::Bool => return None,
        })
    }
}

/// A complete graphics program with the prelude, extra definitions and a
/// view over `shapes`.
pub fn program(defs: &str, shapes: &str) -> String {
    format!("{PRELUDE}\n{defs}\nmain = graphicsApp {{ view = collage 200 200 {shapes} }}\n")
}
