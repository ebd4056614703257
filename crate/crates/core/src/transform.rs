//! 2D affine maps.
//!
//! A transform maps `(x, y)` to `(a·x + c·y + tx, b·x + d·y + ty)`, the same
//! column layout SVG uses for `matrix(a,b,c,d,tx,ty)`.

use serde::{Deserialize, Serialize};

/// Determinants smaller than this are treated as singular.
pub const SINGULAR_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineTransform {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub tx: f64,
    pub ty: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("transform is singular (determinant {determinant})")]
pub struct Singular {
    pub determinant: f64,
}

impl Default for AffineTransform {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl AffineTransform {
    pub const IDENTITY: AffineTransform = AffineTransform {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
        tx: 0.0,
        ty: 0.0,
    };

    pub const fn new(a: f64, b: f64, c: f64, d: f64, tx: f64, ty: f64) -> Self {
        AffineTransform { a, b, c, d, tx, ty }
    }

    pub fn translation(tx: f64, ty: f64) -> Self {
        AffineTransform { tx, ty, ..Self::IDENTITY }
    }

    /// Uniform scaling about the origin.
    pub fn scaling(k: f64) -> Self {
        AffineTransform { a: k, d: k, ..Self::IDENTITY }
    }

    /// Counter-clockwise rotation by `angle` radians (y axis pointing up).
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        AffineTransform { a: c, b: s, c: -s, d: c, tx: 0.0, ty: 0.0 }
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// `self ∘ inner`: applies `inner` first, then `self`.
    pub fn compose(&self, inner: &AffineTransform) -> AffineTransform {
        let o = self;
        let i = inner;
        AffineTransform {
            a: o.a * i.a + o.c * i.b,
            b: o.b * i.a + o.d * i.b,
            c: o.a * i.c + o.c * i.d,
            d: o.b * i.c + o.d * i.d,
            tx: o.a * i.tx + o.c * i.ty + o.tx,
            ty: o.b * i.tx + o.d * i.ty + o.ty,
        }
    }

    pub fn invert(&self) -> Result<AffineTransform, Singular> {
        let det = self.determinant();
        if !det.is_finite() || det.abs() < SINGULAR_EPSILON {
            return Err(Singular { determinant: det });
        }
        let a = self.d / det;
        let b = -self.b / det;
        let c = -self.c / det;
        let d = self.a / det;
        Ok(AffineTransform {
            a,
            b,
            c,
            d,
            tx: -(a * self.tx + c * self.ty),
            ty: -(b * self.tx + d * self.ty),
        })
    }

    pub fn apply(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            self.a * x + self.c * y + self.tx,
            self.b * x + self.d * y + self.ty,
        )
    }

    pub fn entries(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.tx, self.ty]
    }

    /// Largest absolute difference between corresponding entries.
    pub fn max_entry_diff(&self, other: &AffineTransform) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }
}

/// Free-function form of [`AffineTransform::compose`].
pub fn compose_transforms(outer: &AffineTransform, inner: &AffineTransform) -> AffineTransform {
    outer.compose(inner)
}

pub fn invert_transform(t: &AffineTransform) -> Result<AffineTransform, Singular> {
    t.invert()
}

pub fn apply_to_point(t: &AffineTransform, p: (f64, f64)) -> (f64, f64) {
    t.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(p: (f64, f64), q: (f64, f64), tol: f64) -> bool {
        (p.0 - q.0).abs() <= tol && (p.1 - q.1).abs() <= tol
    }

    #[test]
    fn identity_is_unit() {
        let t = AffineTransform::new(1.5, -2.0, 0.25, 3.0, 7.0, -1.0);
        assert_eq!(compose_transforms(&AffineTransform::IDENTITY, &t), t);
        assert_eq!(compose_transforms(&t, &AffineTransform::IDENTITY), t);
    }

    #[test]
    fn translations_add() {
        let t = compose_transforms(
            &AffineTransform::translation(3.0, 4.0),
            &AffineTransform::translation(1.0, 2.0),
        );
        assert_eq!(t, AffineTransform::translation(4.0, 6.0));
    }

    #[test]
    fn rotate_after_move() {
        let t = compose_transforms(
            &AffineTransform::rotation(FRAC_PI_2),
            &AffineTransform::translation(1.0, 0.0),
        );
        assert!(close(t.apply((0.0, 0.0)), (0.0, 1.0), 1e-12));
    }

    #[test]
    fn inverses() {
        assert_eq!(AffineTransform::IDENTITY.invert().unwrap(), AffineTransform::IDENTITY);
        assert_eq!(
            AffineTransform::translation(3.0, 4.0).invert().unwrap(),
            AffineTransform::translation(-3.0, -4.0)
        );
        assert!(AffineTransform::scaling(0.0).invert().is_err());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(AffineTransform::IDENTITY.apply((5.0, 7.0)), (5.0, 7.0));
        assert_eq!(AffineTransform::scaling(2.0).apply((1.0, -3.0)), (2.0, -6.0));
        assert!(close(AffineTransform::rotation(PI).apply((1.0, 0.0)), (-1.0, 0.0), 1e-12));
    }
}
