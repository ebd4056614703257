//! Colors, line types and the named palette.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Color {
    pub r: u8,
    pub g: u8,
    pub b: u8,
    /// Opacity in `[0, 1]`. Only `rgb` is exposed to programs, so this is 1 in practice.
    pub alpha: f64,
}

impl Color {
    pub const fn opaque(r: u8, g: u8, b: u8) -> Self {
        Color { r, g, b, alpha: 1.0 }
    }

    /// Builds a color from arbitrary floats, clamping each channel to `[0, 255]`.
    pub fn from_rgb_clamped(r: f64, g: f64, b: f64) -> Self {
        fn channel(v: f64) -> u8 {
            if v.is_nan() {
                0
            } else {
                v.clamp(0.0, 255.0).round() as u8
            }
        }
        Color::opaque(channel(r), channel(g), channel(b))
    }

    /// Uppercase `#RRGGBB`.
    pub fn hex(&self) -> String {
        format!("#{:02X}{:02X}{:02X}", self.r, self.g, self.b)
    }
}

/// The named colors available to programs, in documentation order.
///
/// This table is the only source of truth for named colors: the typechecker,
/// the evaluator and any palette UI read it.
pub const PALETTE: [(&str, Color); 16] = [
    ("red", Color::opaque(255, 0, 0)),
    ("orange", Color::opaque(255, 165, 0)),
    ("yellow", Color::opaque(255, 255, 0)),
    ("green", Color::opaque(0, 128, 0)),
    ("blue", Color::opaque(0, 0, 255)),
    ("purple", Color::opaque(128, 0, 128)),
    ("pink", Color::opaque(255, 192, 203)),
    ("brown", Color::opaque(165, 42, 42)),
    ("black", Color::opaque(0, 0, 0)),
    ("white", Color::opaque(255, 255, 255)),
    ("grey", Color::opaque(128, 128, 128)),
    ("gray", Color::opaque(128, 128, 128)),
    ("lightBlue", Color::opaque(173, 216, 230)),
    ("darkGreen", Color::opaque(0, 100, 0)),
    ("darkRed", Color::opaque(139, 0, 0)),
    ("darkBlue", Color::opaque(0, 0, 139)),
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown color `{name}`")]
pub struct UnknownColor {
    pub name: String,
    /// Up to three palette names, closest first.
    pub suggestions: Vec<String>,
}

pub fn color_from_name(name: &str) -> Result<Color, UnknownColor> {
    PALETTE
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| *c)
        .ok_or_else(|| UnknownColor {
            name: name.to_string(),
            suggestions: closest_names(name, PALETTE.iter().map(|(n, _)| *n), 3, usize::MAX),
        })
}

pub fn is_palette_name(name: &str) -> bool {
    PALETTE.iter().any(|(n, _)| *n == name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinePattern {
    Solid,
    Dotted,
    Dashed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineType {
    pub pattern: LinePattern,
    pub width: f64,
}

/// Levenshtein distance over chars.
pub fn edit_distance(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.chars().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != *cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// The `limit` candidates closest to `target`, skipping any farther than
/// `max_distance`. Ties keep candidate order.
pub fn closest_names<'a>(
    target: &str,
    candidates: impl IntoIterator<Item = &'a str>,
    limit: usize,
    max_distance: usize,
) -> Vec<String> {
    let mut scored: Vec<(usize, usize, &str)> = candidates
        .into_iter()
        .enumerate()
        .map(|(i, c)| (edit_distance(target, c), i, c))
        .filter(|(d, _, c)| *d <= max_distance && *c != target)
        .collect();
    scored.sort();
    let mut out: Vec<String> = Vec::new();
    for (_, _, c) in scored {
        if !out.iter().any(|o| o == c) {
            out.push(c.to_string());
        }
        if out.len() == limit {
            break;
        }
    }
    out
}
