//! A strict little XML reader and a point-sampling rasterizer for the SVG
//! subset the renderer emits. Written from the SVG rules, not from the
//! emitter.

use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Element {
    pub name: String,
    pub attrs: BTreeMap<String, String>,
    pub children: Vec<Element>,
    pub text: String,
}

impl Element {
    pub fn attr(&self, k: &str) -> Option<&str> {
        self.attrs.get(k).map(|s| s.as_str())
    }

    pub fn num(&self, k: &str) -> f64 {
        self.attr(k).map_or(0.0, |v| v.trim().parse().unwrap_or_else(|_| panic!("{k}={v}")))
    }

    pub fn walk<'a>(&'a self, out: &mut Vec<&'a Element>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }
}

fn unescape(s: &str) -> Result<String, String> {
    let mut out = String::new();
    let mut rest = s;
    while let Some(i) = rest.find('&') {
        out.push_str(&rest[..i]);
        let end = rest[i..].find(';').ok_or("unterminated entity")? + i;
        let name = &rest[i + 1..end];
        let c = match name {
            "amp" => '&',
            "lt" => '<',
            "gt" => '>',
            "quot" => '"',
            "apos" => '\'',
            _ if name.starts_with("#x") => u32::from_str_radix(&name[2..], 16).ok().and_then(char::from_u32).ok_or("bad char ref")?,
            _ if name.starts_with('#') => name[1..].parse().ok().and_then(char::from_u32).ok_or("bad char ref")?,
            _ => return Err(format!("unknown entity &{name};")),
        };
        out.push(c);
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | ':' | '.')
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, s: &str) -> Result<(), String> {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(format!("expected {s:?} at byte {}", self.pos))
        }
    }

    fn name(&mut self) -> Result<String, String> {
        let len = self.rest().find(|c: char| !is_name_char(c)).unwrap_or(self.rest().len());
        if len == 0 || !self.rest().starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            return Err(format!("bad name at byte {}", self.pos));
        }
        let n = self.rest()[..len].to_string();
        self.pos += len;
        Ok(n)
    }

    fn element(&mut self) -> Result<Element, String> {
        self.eat("<")?;
        let name = self.name()?;
        let mut attrs = BTreeMap::new();
        loop {
            let before = self.pos;
            self.skip_ws();
            if self.rest().starts_with("/>") {
                self.pos += 2;
                return Ok(Element { name, attrs, children: vec![], text: String::new() });
            }
            if self.rest().starts_with('>') {
                self.pos += 1;
                break;
            }
            if before == self.pos {
                return Err(format!("missing space before attribute at byte {}", self.pos));
            }
            let k = self.name()?;
            self.eat("=")?;
            let quote = if self.rest().starts_with('"') { "\"" } else { "'" };
            self.eat(quote)?;
            let end = self.rest().find(quote).ok_or("unterminated attribute")?;
            let raw = &self.rest()[..end];
            if raw.contains('<') {
                return Err("'<' in attribute value".into());
            }
            if attrs.insert(k.clone(), unescape(raw)?).is_some() {
                return Err(format!("duplicate attribute {k}"));
            }
            self.pos += end + 1;
        }
        let mut children = Vec::new();
        let mut text = String::new();
        loop {
            let lt = self.rest().find('<').ok_or_else(|| format!("unclosed <{name}>"))?;
            let raw = &self.rest()[..lt];
            if raw.contains('>') {
                return Err("stray '>' in text".into());
            }
            text.push_str(&unescape(raw)?);
            self.pos += lt;
            if self.rest().starts_with("</") {
                self.pos += 2;
                let close = self.name()?;
                if close != name {
                    return Err(format!("<{name}> closed by </{close}>"));
                }
                self.skip_ws();
                self.eat(">")?;
                return Ok(Element { name, attrs, children, text });
            }
            children.push(self.element()?);
        }
    }
}

/// Parses a whole document: one root element, nothing but whitespace around.
pub fn parse_xml(src: &str) -> Result<Element, String> {
    let mut r = Reader { src, pos: 0 };
    r.skip_ws();
    let root = r.element()?;
    r.skip_ws();
    if r.pos != src.len() {
        return Err(format!("trailing content at byte {}", r.pos));
    }
    Ok(root)
}

/// `[a, b, c, d, e, f]` as in SVG's `matrix()`.
type Matrix = [f64; 6];

const IDENTITY: Matrix = [1.0, 0.0, 0.0, 1.0, 0.0, 0.0];

fn mul(m: &Matrix, n: &Matrix) -> Matrix {
    [
        m[0] * n[0] + m[2] * n[1],
        m[1] * n[0] + m[3] * n[1],
        m[0] * n[2] + m[2] * n[3],
        m[1] * n[2] + m[3] * n[3],
        m[0] * n[4] + m[2] * n[5] + m[4],
        m[1] * n[4] + m[3] * n[5] + m[5],
    ]
}

fn apply(m: &Matrix, (x, y): (f64, f64)) -> (f64, f64) {
    (m[0] * x + m[2] * y + m[4], m[1] * x + m[3] * y + m[5])
}

/// A `transform` attribute: a list of functions applied right to left.
pub fn parse_transform(s: &str) -> Matrix {
    let mut m = IDENTITY;
    for part in s.split(')').map(str::trim).filter(|p| !p.is_empty()) {
        let (f, args) = part.split_once('(').unwrap_or_else(|| panic!("bad transform {s}"));
        let v: Vec<f64> = args.split([',', ' ']).filter(|a| !a.is_empty()).map(|a| a.parse().unwrap()).collect();
        let n = match (f.trim(), v.len()) {
            ("matrix", 6) => [v[0], v[1], v[2], v[3], v[4], v[5]],
            ("scale", 1) => [v[0], 0.0, 0.0, v[0], 0.0, 0.0],
            ("scale", 2) => [v[0], 0.0, 0.0, v[1], 0.0, 0.0],
            ("translate", 1) => [1.0, 0.0, 0.0, 1.0, v[0], 0.0],
            ("translate", 2) => [1.0, 0.0, 0.0, 1.0, v[0], v[1]],
            ("rotate", 1) => {
                let (s, c) = v[0].to_radians().sin_cos();
                [c, s, -s, c, 0.0, 0.0]
            }
            other => panic!("unsupported transform {other:?}"),
        };
        m = mul(&m, &n);
    }
    m
}

fn arc(cx: f64, cy: f64, rx: f64, ry: f64, from: f64, n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..=n).map(move |i| {
        let t = from + std::f64::consts::FRAC_PI_2 * i as f64 / n as f64;
        (cx + rx * t.cos(), cy + ry * t.sin())
    })
}

/// Outline of a basic shape element in its user space.
fn outline(e: &Element) -> Option<Vec<(f64, f64)>> {
    let n = 180;
    Some(match e.name.as_str() {
        "circle" => {
            let r = e.num("r");
            (0..4).flat_map(|q| arc(e.num("cx"), e.num("cy"), r, r, q as f64 * std::f64::consts::FRAC_PI_2, n)).collect()
        }
        "ellipse" => (0..4)
            .flat_map(|q| arc(e.num("cx"), e.num("cy"), e.num("rx"), e.num("ry"), q as f64 * std::f64::consts::FRAC_PI_2, n))
            .collect(),
        "rect" => {
            let (x, y, w, h) = (e.num("x"), e.num("y"), e.num("width"), e.num("height"));
            let rx = e.num("rx").min(w / 2.0);
            let ry = e.attr("ry").map_or(rx, |_| e.num("ry")).min(h / 2.0);
            let corners = [(x + w - rx, y + h - ry), (x + rx, y + h - ry), (x + rx, y + ry), (x + w - rx, y + ry)];
            corners
                .iter()
                .enumerate()
                .flat_map(|(q, &(cx, cy))| arc(cx, cy, rx, ry, q as f64 * std::f64::consts::FRAC_PI_2, n))
                .collect()
        }
        "polygon" => {
            let v: Vec<f64> = e.attr("points")?.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()).collect();
            v.chunks(2).map(|c| (c[0], c[1])).collect()
        }
        "text" => {
            // centered box from the font size and an average glyph advance
            let size = e.num("font-size");
            let w = 0.6 * size * e.text.chars().count() as f64;
            let (x, y) = (e.num("x"), e.num("y"));
            vec![(x - w / 2.0, y - size / 2.0), (x + w / 2.0, y - size / 2.0), (x + w / 2.0, y + size / 2.0), (x - w / 2.0, y + size / 2.0)]
        }
        _ => return None,
    })
}

fn inside(poly: &[(f64, f64)], (px, py): (f64, f64)) -> bool {
    let mut c = false;
    for i in 0..poly.len() {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % poly.len()];
        if (y1 > py) != (y2 > py) && px < x1 + (py - y1) * (x2 - x1) / (y2 - y1) {
            c = !c;
        }
    }
    c
}

fn near(poly: &[(f64, f64)], (px, py): (f64, f64), d: f64) -> bool {
    (0..poly.len()).any(|i| {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % poly.len()];
        let (dx, dy) = (x2 - x1, y2 - y1);
        let l = dx * dx + dy * dy;
        let t = if l == 0.0 { 0.0 } else { (((px - x1) * dx + (py - y1) * dy) / l).clamp(0.0, 1.0) };
        (px - x1 - t * dx).hypot(py - y1 - t * dy) <= d
    })
}

pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub coverage: Vec<bool>,
}

impl Raster {
    pub fn count(&self) -> usize {
        self.coverage.iter().filter(|c| **c).count()
    }

    /// Covered pixel extents `(min_col, min_row, max_col + 1, max_row + 1)`.
    pub fn bbox(&self) -> Option<(usize, usize, usize, usize)> {
        let mut b: Option<(usize, usize, usize, usize)> = None;
        for row in 0..self.height {
            for col in 0..self.width {
                if self.coverage[row * self.width + col] {
                    b = Some(match b {
                        None => (col, row, col + 1, row + 1),
                        Some((c0, r0, c1, r1)) => (c0.min(col), r0.min(row), c1.max(col + 1), r1.max(row + 1)),
                    });
                }
            }
        }
        b
    }

    /// Mean `(col, row)` of covered pixel centers.
    pub fn centroid(&self) -> (f64, f64) {
        let (mut sx, mut sy, mut n) = (0.0, 0.0, 0.0);
        for row in 0..self.height {
            for col in 0..self.width {
                if self.coverage[row * self.width + col] {
                    sx += col as f64 + 0.5;
                    sy += row as f64 + 0.5;
                    n += 1.0;
                }
            }
        }
        (sx / n, sy / n)
    }
}

/// Samples every pixel center once; a pixel is covered when it lies in a
/// filled region or within half a stroke width of an outline. Dash patterns
/// are ignored.
pub fn rasterize(root: &Element) -> Raster {
    assert_eq!(root.name, "svg");
    let vb: Vec<f64> = root.attr("viewBox").unwrap().split_whitespace().map(|v| v.parse().unwrap()).collect();
    let (width, height) = (root.num("width") as usize, root.num("height") as usize);
    let (sx, sy) = (width as f64 / vb[2], height as f64 / vb[3]);
    let view = [sx, 0.0, 0.0, sy, -vb[0] * sx, -vb[1] * sy];
    let mut r = Raster { width, height, coverage: vec![false; width * height] };
    paint(root, &view, &mut r);
    r
}

fn paint(e: &Element, parent: &Matrix, r: &mut Raster) {
    let m = match e.attr("transform") {
        Some(t) => mul(parent, &parse_transform(t)),
        None => *parent,
    };
    if let Some(local) = outline(e) {
        let poly: Vec<(f64, f64)> = local.iter().map(|&p| apply(&m, p)).collect();
        let filled = e.attr("fill").is_some_and(|f| f != "none");
        let stroked = e.attr("stroke").is_some_and(|s| s != "none");
        let half = if stroked { e.num("stroke-width") / 2.0 * (m[0] * m[3] - m[1] * m[2]).abs().sqrt() } else { 0.0 };
        let (x0, y0, x1, y1) = poly.iter().fold((f64::MAX, f64::MAX, f64::MIN, f64::MIN), |b, &(x, y)| {
            (b.0.min(x - half), b.1.min(y - half), b.2.max(x + half), b.3.max(y + half))
        });
        let cols = (x0.floor().max(0.0) as usize)..(x1.ceil().min(r.width as f64).max(0.0) as usize);
        let rows = (y0.floor().max(0.0) as usize)..(y1.ceil().min(r.height as f64).max(0.0) as usize);
        for row in rows {
            for col in cols.clone() {
                let p = (col as f64 + 0.5, row as f64 + 0.5);
                if (filled && inside(&poly, p)) || (stroked && near(&poly, p, half)) {
                    r.coverage[row * r.width + col] = true;
                }
            }
        }
    }
    for c in &e.children {
        paint(c, &m, r);
    }
}
