//! Evaluated shape trees.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::color::{Color, LinePattern, LineType};
use crate::numfmt::fmt_num;
use crate::transform::AffineTransform;
use crate::value::Value;

/// Default font size for `text` stencils.
pub const DEFAULT_TEXT_SIZE: f64 = 12.0;
/// Estimated glyph advance as a fraction of the font size.
pub const TEXT_WIDTH_FACTOR: f64 = 0.6;

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Circle { r: f64 },
    Square { side: f64 },
    /// Equilateral triangle with the given circumradius, first vertex on +x.
    Triangle { r: f64 },
    Rect { w: f64, h: f64 },
    /// Full width and height.
    Oval { w: f64, h: f64 },
    RoundedRect { w: f64, h: f64, radius: f64 },
    Text { content: String, size: f64 },
}

impl Geometry {
    /// Vertices of the triangle, counter-clockwise.
    pub fn triangle_vertices(r: f64) -> [(f64, f64); 3] {
        let at = |k: f64| {
            let angle = k * 2.0 * std::f64::consts::PI / 3.0;
            (r * angle.cos(), r * angle.sin())
        };
        [at(0.0), at(1.0), at(2.0)]
    }

    /// Estimated text box `(width, height)`, centered on the origin.
    pub fn text_box(content: &str, size: f64) -> (f64, f64) {
        (TEXT_WIDTH_FACTOR * size * content.chars().count() as f64, size)
    }

    /// Axis-aligned local bounds `(min_x, min_y, max_x, max_y)`.
    pub fn local_bounds(&self) -> (f64, f64, f64, f64) {
        let half = |w: f64, h: f64| (-w / 2.0, -h / 2.0, w / 2.0, h / 2.0);
        match self {
            Geometry::Circle { r } => (-r, -r, *r, *r),
            Geometry::Square { side } => half(*side, *side),
            Geometry::Rect { w, h } | Geometry::Oval { w, h } | Geometry::RoundedRect { w, h, .. } => {
                half(*w, *h)
            }
            Geometry::Triangle { r } => {
                let vs = Geometry::triangle_vertices(*r);
                let xs = vs.iter().map(|v| v.0);
                let ys = vs.iter().map(|v| v.1);
                (
                    xs.clone().fold(f64::INFINITY, f64::min),
                    ys.clone().fold(f64::INFINITY, f64::min),
                    xs.fold(f64::NEG_INFINITY, f64::max),
                    ys.fold(f64::NEG_INFINITY, f64::max),
                )
            }
            Geometry::Text { content, size } => {
                let (w, h) = Geometry::text_box(content, *size);
                half(w, h)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Style {
    Filled(Color),
    Outlined(LineType, Color),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum HandlerKind {
    Tap,
    TapAt,
    Enter,
    Leave,
}

impl HandlerKind {
    pub fn is_tap(self) -> bool {
        matches!(self, HandlerKind::Tap | HandlerKind::TapAt)
    }
}

/// An attached notification. For `TapAt` the payload is a function from the
/// tap position to a message; otherwise it is the message itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Handler {
    pub kind: HandlerKind,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeContent {
    Leaf { geometry: Geometry, style: Style },
    /// Painted in order; later children on top.
    Group(Vec<Arc<SceneNode>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneNode {
    pub content: NodeContent,
    pub transform: AffineTransform,
    /// In attachment order.
    pub handlers: Vec<Handler>,
}

impl SceneNode {
    pub fn leaf(geometry: Geometry, style: Style) -> Self {
        SceneNode {
            content: NodeContent::Leaf { geometry, style },
            transform: AffineTransform::IDENTITY,
            handlers: Vec::new(),
        }
    }

    pub fn group(children: Vec<Arc<SceneNode>>) -> Self {
        SceneNode {
            content: NodeContent::Group(children),
            transform: AffineTransform::IDENTITY,
            handlers: Vec::new(),
        }
    }

    /// Applies `outer` after the node's existing transform.
    pub fn transformed(&self, outer: &AffineTransform) -> SceneNode {
        SceneNode {
            transform: outer.compose(&self.transform),
            ..self.clone()
        }
    }

    pub fn with_handler(&self, handler: Handler) -> SceneNode {
        let mut node = self.clone();
        node.handlers.push(handler);
        node
    }

    pub fn leaf_count(&self) -> usize {
        match &self.content {
            NodeContent::Leaf { .. } => 1,
            NodeContent::Group(children) => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }
}

/// Canonical text form of a scene: one node per line, fixed field order,
/// floats through [`fmt_num`].
pub fn dump_scene(node: &SceneNode) -> String {
    let mut out = String::new();
    dump_node(node, 0, &mut out);
    out
}

fn dump_node(node: &SceneNode, depth: usize, out: &mut String) {
    let indent = "  ".repeat(depth);
    let t = node.transform.entries().map(fmt_num).join(",");
    let handlers: Vec<String> = node
        .handlers
        .iter()
        .map(|h| format!("{:?}:{}", h.kind, h.payload.dump()))
        .collect();
    match &node.content {
        NodeContent::Leaf { geometry, style } => {
            let _ = writeln!(
                out,
                "{indent}leaf {} {} matrix({t}) handlers[{}]",
                dump_geometry(geometry),
                dump_style(style),
                handlers.join(" ")
            );
        }
        NodeContent::Group(children) => {
            let _ = writeln!(out, "{indent}group matrix({t}) handlers[{}]", handlers.join(" "));
            for c in children {
                dump_node(c, depth + 1, out);
            }
        }
    }
}

pub fn dump_geometry(g: &Geometry) -> String {
    match g {
        Geometry::Circle { r } => format!("circle({})", fmt_num(*r)),
        Geometry::Square { side } => format!("square({})", fmt_num(*side)),
        Geometry::Triangle { r } => format!("triangle({})", fmt_num(*r)),
        Geometry::Rect { w, h } => format!("rect({},{})", fmt_num(*w), fmt_num(*h)),
        Geometry::Oval { w, h } => format!("oval({},{})", fmt_num(*w), fmt_num(*h)),
        Geometry::RoundedRect { w, h, radius } => {
            format!("roundedRect({},{},{})", fmt_num(*w), fmt_num(*h), fmt_num(*radius))
        }
        Geometry::Text { content, size } => format!("text({:?},{})", content, fmt_num(*size)),
    }
}

pub fn dump_style(s: &Style) -> String {
    match s {
        Style::Filled(c) => format!("filled({})", c.hex()),
        Style::Outlined(lt, c) => {
            let pattern = match lt.pattern {
                LinePattern::Solid => "solid",
                LinePattern::Dotted => "dotted",
                LinePattern::Dashed => "dashed",
            };
            format!("outlined({pattern},{},{})", fmt_num(lt.width), c.hex())
        }
    }
}
