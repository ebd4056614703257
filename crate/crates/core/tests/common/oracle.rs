//! Forward-only geometry: shapes become world-space polygons, membership is
//! decided by even-odd ray casting on a fixed grid. Nothing here inverts a
//! transform.

use std::f64::consts::PI;

use shapelab_core::scene::Geometry;
use shapelab_core::transform::AffineTransform;

pub const CURVE_SAMPLES: usize = 720;

fn ellipse_points(cx: f64, cy: f64, rx: f64, ry: f64, from: f64, to: f64, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = from + (to - from) * i as f64 / n as f64;
            (cx + rx * t.cos(), cy + ry * t.sin())
        })
        .collect()
}

fn box_points(w: f64, h: f64) -> Vec<(f64, f64)> {
    let (x, y) = (w / 2.0, h / 2.0);
    vec![(-x, -y), (x, -y), (x, y), (-x, y)]
}

/// Boundary of `g` in its own coordinates.
pub fn local_polygon(g: &Geometry) -> Vec<(f64, f64)> {
    match g {
        Geometry::Circle { r } => ellipse_points(0.0, 0.0, *r, *r, 0.0, 2.0 * PI, CURVE_SAMPLES),
        Geometry::Oval { w, h } => ellipse_points(0.0, 0.0, w / 2.0, h / 2.0, 0.0, 2.0 * PI, CURVE_SAMPLES),
        Geometry::Square { side } => box_points(*side, *side),
        Geometry::Rect { w, h } => box_points(*w, *h),
        Geometry::Text { content, size } => box_points(0.6 * size * content.chars().count() as f64, *size),
        Geometry::Triangle { r } => (0..3)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / 3.0;
                (r * a.cos(), r * a.sin())
            })
            .collect(),
        Geometry::RoundedRect { w, h, radius } => {
            let (x, y) = (w / 2.0 - radius, h / 2.0 - radius);
            let n = CURVE_SAMPLES / 4;
            let mut pts = Vec::new();
            for (k, (cx, cy)) in [(x, y), (-x, y), (-x, -y), (x, -y)].into_iter().enumerate() {
                let start = PI / 2.0 * k as f64;
                pts.extend(ellipse_points(cx, cy, *radius, *radius, start, start + PI / 2.0, n));
                let end = start + PI / 2.0;
                pts.push((cx + radius * end.cos(), cy + radius * end.sin()));
            }
            pts
        }
    }
}

pub fn forward(t: &AffineTransform, (x, y): (f64, f64)) -> (f64, f64) {
    (t.a * x + t.c * y + t.tx, t.b * x + t.d * y + t.ty)
}

pub fn world_polygon(g: &Geometry, t: &AffineTransform) -> Vec<(f64, f64)> {
    local_polygon(g).into_iter().map(|p| forward(t, p)).collect()
}

pub fn even_odd(poly: &[(f64, f64)], (px, py): (f64, f64)) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % n];
        if (y1 > py) != (y2 > py) {
            let x = x1 + (py - y1) * (x2 - x1) / (y2 - y1);
            if px < x {
                inside = !inside;
            }
        }
    }
    inside
}

pub fn distance_to_boundary(poly: &[(f64, f64)], (px, py): (f64, f64)) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (x1, y1) = poly[i];
            let (x2, y2) = poly[(i + 1) % n];
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len2 = dx * dx + dy * dy;
            let t = if len2 == 0.0 { 0.0 } else { (((px - x1) * dx + (py - y1) * dy) / len2).clamp(0.0, 1.0) };
            let (qx, qy) = (x1 + t * dx, y1 + t * dy);
            ((px - qx).powi(2) + (py - qy).powi(2)).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Membership of the grid cell containing `p`, judged at the cell center.
pub fn grid_membership(poly: &[(f64, f64)], (px, py): (f64, f64), cell: f64) -> bool {
    let snap = |v: f64| ((v / cell).floor() + 0.5) * cell;
    even_odd(poly, (snap(px), snap(py)))
}

pub fn bounds(points: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    points.iter().fold(
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        |(x0, y0, x1, y1), &(x, y)| (x0.min(x), y0.min(y), x1.max(x), y1.max(y)),
    )
}

pub mod agreement {
    use std::sync::Arc;

    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use shapelab_core::color::Color;
    use shapelab_core::eval::flatten_scene;
    use shapelab_core::runtime::shape_contains;
    use shapelab_core::scene::{Geometry, SceneNode, Style};
    use shapelab_core::transform::AffineTransform;

    use super::{distance_to_boundary, forward, grid_membership, local_polygon};

    pub const GRID: f64 = 0.05;

    #[derive(Debug, Default, Clone, Copy)]
    pub struct Tally {
        pub agree: usize,
        pub total: usize,
    }

    impl Tally {
        pub fn rate(&self) -> f64 {
            self.agree as f64 / self.total as f64
        }
    }

    fn geometry(rng: &mut StdRng) -> Geometry {
        let mut len = || rng.random_range(4.0..80.0);
        let (w, h) = (len(), len());
        match rng.random_range(0..7) {
            0 => Geometry::Circle { r: w / 2.0 },
            1 => Geometry::Square { side: w },
            2 => Geometry::Triangle { r: w / 2.0 },
            3 => Geometry::Rect { w, h },
            4 => Geometry::Oval { w, h },
            5 => {
                let radius = rng.random_range(0.0..w.min(h) / 2.0);
                Geometry::RoundedRect { w, h, radius }
            }
            _ => Geometry::Text { content: "hello".repeat(rng.random_range(1..3)), size: h / 3.0 + 4.0 },
        }
    }

    fn transform(rng: &mut StdRng) -> AffineTransform {
        loop {
            let mut e = || rng.random_range(-1.5..1.5);
            let t = AffineTransform::new(e(), e(), e(), e(), 40.0 * e(), 40.0 * e());
            if (t.a * t.d - t.b * t.c).abs() > 1e-3 {
                return t;
            }
        }
    }

    /// Random leaves nested in a random group transform, probed at points
    /// at least one unit from the drawn boundary.
    pub fn run(seed: u64, shapes: usize, points: usize) -> Tally {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut tally = Tally::default();
        for _ in 0..shapes {
            let g = geometry(&mut rng);
            let (inner, outer) = (transform(&mut rng), transform(&mut rng));
            let leaf = SceneNode::leaf(g.clone(), Style::Filled(Color::opaque(0, 0, 0))).transformed(&inner);
            let root = SceneNode::group(vec![Arc::new(leaf)]).transformed(&outer);
            let flat = flatten_scene(&root);
            assert_eq!(flat.len(), 1);

            let poly: Vec<(f64, f64)> =
                local_polygon(&g).into_iter().map(|p| forward(&outer, forward(&inner, p))).collect();
            let (x0, y0, x1, y1) = super::bounds(&poly);
            let mut taken = 0;
            while taken < points {
                let p = (rng.random_range(x0 - 5.0..x1 + 5.0), rng.random_range(y0 - 5.0..y1 + 5.0));
                if distance_to_boundary(&poly, p) < 1.0 {
                    continue;
                }
                taken += 1;
                tally.total += 1;
                if shape_contains(&flat[0], p) == grid_membership(&poly, p, GRID) {
                    tally.agree += 1;
                }
            }
        }
        tally
    }
}
