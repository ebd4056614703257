mod common;

use std::sync::Arc;
use std::time::Instant;

use common::{corpus, typed};
use shapelab_core::eval::{flatten_scene, Evaluator};
use shapelab_core::scene::{dump_scene, NodeContent};
use shapelab_core::svg::{emit_animation, emit_frame, emit_svg, AnimationError};
use shapelab_core::transform::AffineTransform;
use shapelab_core::Value;

fn evaluator(src: &str) -> Evaluator {
    Evaluator::new(Arc::new(typed(src).program.clone()))
}

#[test]
fn flower_collage_structure() {
    let mut ev = evaluator(&corpus("flower.shp"));
    let c = ev.build_collage(&Value::unit()).unwrap();
    let Value::Collage { root, .. } = &c else { panic!() };
    // collage [ myShapes ]: one group holding the two moved flowers
    let NodeContent::Group(top) = &root.content else { panic!() };
    let NodeContent::Group(flowers) = &top[0].content else { panic!() };
    assert_eq!(flowers.len(), 2);
    assert_eq!(flowers[0].transform, AffineTransform::translation(-50.0, 0.0));
    assert_eq!(flowers[1].transform, AffineTransform::translation(50.0, 0.0));
    assert_eq!(root.leaf_count(), 10);
    assert_eq!(flatten_scene(root).len(), 10);
}

#[test]
fn flower_svg_golden() {
    let start = Instant::now();
    let mut ev = evaluator(&corpus("flower.shp"));
    let svg = emit_svg(&ev.build_collage(&Value::unit()).unwrap());
    let expected = std::fs::read_to_string(format!("{}/../../programs/flower.svg", env!("CARGO_MANIFEST_DIR"))).unwrap();
    assert_eq!(svg, expected);
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn scene_dump_is_deterministic() {
    let mut a = evaluator(&corpus("flower.shp"));
    let mut b = evaluator(&corpus("flower.shp"));
    let da = match a.build_collage(&Value::unit()).unwrap() { Value::Collage { root, .. } => dump_scene(&root), _ => panic!() };
    let db = match b.build_collage(&Value::unit()).unwrap() { Value::Collage { root, .. } => dump_scene(&root), _ => panic!() };
    assert_eq!(da, db);
}

#[test]
fn model_time_moves_shape() {
    let src = "type Msg = Tick Float KeyState\nupdate msg m =\n  case msg of\n    Tick t k -> { m | time = t }\nview m = collage 100 100 [ circle 5 |> filled red |> move (m.time, 0) ]\nmain = gameApp Tick { model = { time = 0 }, view = view, update = update }";
    let mut ev = evaluator(src);
    assert!(emit_frame(&mut ev, 0.0).unwrap().contains("matrix(1,0,0,1,0,0)"));
    assert!(emit_frame(&mut ev, 3.0).unwrap().contains("matrix(1,0,0,1,3,0)"));
}

#[test]
fn sine_period_frames_match() {
    let mut ev = evaluator(&corpus("sine.shp"));
    let frames = emit_animation(&mut ev, 0.0, 1.0, 10.0).unwrap();
    assert_eq!(frames.len(), 11);
    assert_eq!(frames[0].1, frames[10].1);
    assert_ne!(frames[0].1, frames[2].1);
    // the raw sine of a full turn, unlike the text, is not exactly zero
    assert!((100.0 * (2.0 * std::f64::consts::PI).sin()).abs() > 0.0);
}

#[test]
fn sine_of_model_time_repeats_after_two_pi() {
    let src = "type Msg = Tick Float KeyState\nupdate msg m =\n  case msg of\n    Tick t k -> { m | time = t }\nview m = collage 300 300 [ circle 5 |> filled red |> move (100 * sin m.time, 0) ]\nmain = gameApp Tick { model = { time = 0 }, view = view, update = update }";
    let mut ev = evaluator(src);
    for t in [0.0, 0.5, 1.0, 2.5] {
        assert_eq!(emit_frame(&mut ev, t).unwrap(), emit_frame(&mut ev, t + 2.0 * std::f64::consts::PI).unwrap());
    }
}

#[test]
fn static_program_frames_identical() {
    let mut ev = evaluator(&corpus("flower.shp"));
    let frames = emit_animation(&mut ev, 0.0, 2.0, 5.0).unwrap();
    assert_eq!(frames.len(), 11);
    assert!(frames.iter().all(|(_, s)| *s == frames[0].1));
}

#[test]
fn bad_range() {
    let mut ev = evaluator(&corpus("flower.shp"));
    assert!(matches!(emit_animation(&mut ev, 1.0, 0.0, 5.0), Err(AnimationError::BadRange { .. })));
}
