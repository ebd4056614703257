//! SVG output for collages and animation frames.
//!
//! The document's origin is the collage center with y pointing up: the root
//! group flips y, and text re-flips locally so glyphs read normally. Groups
//! keep their own `<g>` so a scene's structure stays visible in the output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::color::{Color, LinePattern};
use crate::eval::{EvalError, EvalResult, Evaluator};
use crate::numfmt::fmt_num;
use crate::scene::{Geometry, NodeContent, SceneNode, Style};
use crate::transform::AffineTransform;
use crate::value::Value;

/// Renders a `Value::Collage`. Other values render as an empty 0×0 collage.
pub fn emit_svg(collage: &Value) -> String {
    match collage {
        Value::Collage { width, height, root } => emit_collage(*width, *height, root),
        _ => emit_collage(0.0, 0.0, &SceneNode::group(vec![])),
    }
}

pub fn emit_collage(width: f64, height: f64, root: &SceneNode) -> String {
    let (w, h) = (fmt_num(width), fmt_num(height));
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"{} {} {w} {h}\">\n",
        fmt_num(-width / 2.0),
        fmt_num(-height / 2.0),
    );
    out.push_str("  <g transform=\"scale(1,-1)\">\n");
    // The collage's own group is the flipped root.
    match &root.content {
        NodeContent::Group(children) if root.transform.is_identity() => {
            for c in children {
                emit_node(c, 2, &mut out);
            }
        }
        _ => emit_node(root, 2, &mut out),
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

fn matrix(t: &AffineTransform) -> String {
    let e = t.entries().map(fmt_num);
    format!("matrix({})", e.join(","))
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn emit_node(node: &SceneNode, depth: usize, out: &mut String) {
    match &node.content {
        NodeContent::Group(children) => {
            indent(out, depth);
            if node.transform.is_identity() {
                out.push_str("<g>\n");
            } else {
                let _ = writeln!(out, "<g transform=\"{}\">", matrix(&node.transform));
            }
            for c in children {
                emit_node(c, depth + 1, out);
            }
            indent(out, depth);
            out.push_str("</g>\n");
        }
        NodeContent::Leaf { geometry, style } => {
            indent(out, depth);
            emit_leaf(geometry, style, &node.transform, out);
            out.push('\n');
        }
    }
}

fn paint(style: &Style) -> String {
    fn opacity(attr: &str, c: &Color) -> String {
        if c.alpha < 1.0 {
            format!(" {attr}-opacity=\"{}\"", fmt_num(c.alpha))
        } else {
            String::new()
        }
    }
    match style {
        Style::Filled(c) => format!("fill=\"{}\"{} stroke=\"none\"", c.hex(), opacity("fill", c)),
        Style::Outlined(lt, c) => {
            let w = lt.width;
            let dash = match lt.pattern {
                LinePattern::Solid => String::new(),
                LinePattern::Dotted => format!(" stroke-dasharray=\"{},{}\"", fmt_num(w), fmt_num(2.0 * w)),
                LinePattern::Dashed => format!(" stroke-dasharray=\"{},{}\"", fmt_num(4.0 * w), fmt_num(4.0 * w)),
            };
            format!(
                "fill=\"none\" stroke=\"{}\"{} stroke-width=\"{}\"{dash}",
                c.hex(),
                opacity("stroke", c),
                fmt_num(w)
            )
        }
    }
}

fn emit_leaf(g: &Geometry, style: &Style, t: &AffineTransform, out: &mut String) {
    let m = matrix(t);
    let p = paint(style);
    let n = |x: f64| fmt_num(x);
    let _ = match g {
        Geometry::Circle { r } => write!(out, "<circle cx=\"0\" cy=\"0\" r=\"{}\" transform=\"{m}\" {p}/>", n(*r)),
        Geometry::Square { side } => write!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" transform=\"{m}\" {p}/>",
            n(-side / 2.0),
            n(-side / 2.0),
            n(*side),
            n(*side)
        ),
        Geometry::Rect { w, h } => write!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" transform=\"{m}\" {p}/>",
            n(-w / 2.0),
            n(-h / 2.0),
            n(*w),
            n(*h)
        ),
        Geometry::RoundedRect { w, h, radius } => write!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" rx=\"{r}\" ry=\"{r}\" transform=\"{m}\" {p}/>",
            n(-w / 2.0),
            n(-h / 2.0),
            n(*w),
            n(*h),
            r = n(*radius)
        ),
        Geometry::Oval { w, h } => write!(
            out,
            "<ellipse cx=\"0\" cy=\"0\" rx=\"{}\" ry=\"{}\" transform=\"{m}\" {p}/>",
            n(w / 2.0),
            n(h / 2.0)
        ),
        Geometry::Triangle { r } => {
            let pts: Vec<String> = Geometry::triangle_vertices(*r)
                .iter()
                .map(|(x, y)| format!("{},{}", n(*x), n(*y)))
                .collect();
            write!(out, "<polygon points=\"{}\" transform=\"{m}\" {p}/>", pts.join(" "))
        }
        Geometry::Text { content, size } => write!(
            out,
            "<text x=\"0\" y=\"0\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\" transform=\"{m} scale(1,-1)\" {p}>{}</text>",
            n(*size),
            escape(content)
        ),
    };
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            // XML 1.0 forbids most control characters outright.
            c if (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r') => out.push('\u{FFFD}'),
            c => out.push(c),
        }
    }
    out
}

/// The model with its `time` field set to `t`, when it has one.
pub fn model_at_time(model: &Value, t: f64) -> Value {
    match model {
        Value::Record(fields) if fields.contains_key("time") => {
            let mut fields = fields.clone();
            fields.insert("time".into(), Value::Number(t));
            Value::Record(fields)
        }
        other => other.clone(),
    }
}

/// Renders the view with `model.time` bound to `t`.
pub fn emit_frame(ev: &mut Evaluator, t: f64) -> EvalResult<String> {
    let model = model_at_time(&ev.initial_model().map_err(|e| e.at_time(t))?, t);
    let collage = ev.build_collage(&model).map_err(|e| e.at_time(t))?;
    Ok(emit_svg(&collage))
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnimationError {
    BadRange { t0: f64, t1: f64, fps: f64 },
    Eval(EvalError),
}

impl std::fmt::Display for AnimationError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnimationError::BadRange { t0, t1, fps } => write!(
                f,
                "bad animation range: need from < to and fps > 0 (got from {}, to {}, fps {})",
                fmt_num(*t0),
                fmt_num(*t1),
                fmt_num(*fps)
            ),
            AnimationError::Eval(e) => write!(f, "{}", e.diagnostic().render()),
        }
    }
}

impl std::error::Error for AnimationError {}

/// Most frames one animation may produce.
pub const MAX_FRAMES: usize = 100_000;

/// Frame times `t0 + k/fps` for `k = 0 ..= floor((t1 - t0) * fps)`.
pub fn frame_times(t0: f64, t1: f64, fps: f64) -> Result<Vec<f64>, AnimationError> {
    let bad = || AnimationError::BadRange { t0, t1, fps };
    if !(t0.is_finite() && t1.is_finite() && fps.is_finite()) || t1 <= t0 || fps <= 0.0 {
        return Err(bad());
    }
    // Absorb rounding so that e.g. (0.3 - 0.1) * 10 still counts 2 steps.
    let steps = ((t1 - t0) * fps + 1e-9).floor();
    if steps >= MAX_FRAMES as f64 {
        return Err(bad());
    }
    Ok((0..=steps as usize).map(|k| t0 + k as f64 / fps).collect())
}

pub fn emit_animation(ev: &mut Evaluator, t0: f64, t1: f64, fps: f64) -> Result<Vec<(f64, String)>, AnimationError> {
    frame_times(t0, t1, fps)?
        .into_iter()
        .map(|t| emit_frame(ev, t).map(|svg| (t, svg)).map_err(AnimationError::Eval))
        .collect()
}

/// One entry of an animation directory's `manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub index: usize,
    pub time: f64,
    pub file: String,
}

pub fn frame_file_name(index: usize) -> String {
    format!("frame_{index:06}.svg")
}

pub fn manifest(frames: &[(f64, String)]) -> Vec<ManifestEntry> {
    frames
        .iter()
        .enumerate()
        .map(|(index, (time, _))| ManifestEntry { index, time: *time, file: frame_file_name(index) })
        .collect()
}
