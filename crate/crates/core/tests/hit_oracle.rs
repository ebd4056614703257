mod common;

use std::time::Instant;

use common::oracle::{agreement, even_odd, world_polygon};
use shapelab_core::runtime::geometry_contains;
use shapelab_core::scene::Geometry;
use shapelab_core::transform::AffineTransform;

#[test]
fn hit_test_agrees_with_grid_oracle() {
    let start = Instant::now();
    let tally = agreement::run(7, 100, 1000);
    assert_eq!(tally.total, 100_000);
    assert!(tally.rate() >= 0.999, "{tally:?}");
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn rotated_rect_point_decided_by_oracle() {
    let g = Geometry::Rect { w: 40.0, h: 20.0 };
    let t = AffineTransform::rotation(std::f64::consts::FRAC_PI_4);
    let poly = world_polygon(&g, &t);
    let inv = t.invert().unwrap();
    for p in [(20.0, 20.0), (5.0, 5.0), (10.0, 0.0), (0.0, 14.0), (-3.0, 9.0)] {
        assert_eq!(geometry_contains(&g, inv.apply(p)), even_odd(&poly, p), "{p:?}");
    }
    assert!(!even_odd(&poly, (20.0, 20.0)));
}

#[test]
fn circle_contains_near_point() {
    assert!(geometry_contains(&Geometry::Circle { r: 50.0 }, (10.0, 10.0)));
}
