use shapelab_core::parser::parse_source;
use shapelab_core::typeck::{infer_program, render_diagnostic, check_program, TypeErrorKind, TypedProgram, TypeError};
use shapelab_core::types::Type;

fn corpus(name: &str) -> String {
    let path = format!("{}/../../programs/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn ok(src: &str) -> TypedProgram {
    let p = parse_source(src).expect("parses");
    match infer_program(&p) {
        Ok(t) => t,
        Err(es) => panic!("{:?}", es.iter().map(|e| render_diagnostic(e).render()).collect::<Vec<_>>()),
    }
}

fn errs(src: &str) -> Vec<TypeError> {
    infer_program(&parse_source(src).expect("parses")).expect_err("should be rejected")
}

#[test]
fn corpus_programs_typecheck() {
    for f in ["flower.shp", "counter.shp", "sine.shp", "tapat.shp", "moving.shp"] {
        ok(&corpus(f));
    }
}

#[test]
fn flower_is_colour_to_shape() {
    let t = ok(&corpus("flower.shp"));
    // flower colour = group [oval 50 30 |> filled colour, ...]:
    // filled : Color -> Stencil -> Shape m, so colour : Color and the result is Shape m.
    assert_eq!(t.types["flower"], Type::func([Type::Color], Type::shape(Type::NoMsg)));
    assert_eq!(t.msg_type, Type::NoMsg);
}

#[test]
fn moving_a_stencil() {
    let es = errs("main = graphicsApp { view = collage 500 500 [ circle 50 |> move (1,2) ] }");
    assert_eq!(es.len(), 1);
    match &es[0].kind {
        TypeErrorKind::Mismatch { expected, found, .. } => {
            assert!(matches!(expected, Type::Shape(_)));
            assert_eq!(*found, Type::Stencil);
        }
        k => panic!("{k:?}"),
    }
    let d = render_diagnostic(&es[0]);
    assert_eq!(d.render(), "Line 1: move needs a Shape, but found a Stencil. Hint: use filled or outlined first.");
    assert_eq!(d.column, 60);
}

#[test]
fn missing_case_branch() {
    let src = corpus("counter.shp").replace("    Reset -> { model | red = 0 }\n", "");
    let es = errs(&src);
    assert_eq!(es[0].kind, TypeErrorKind::NonExhaustiveCase { missing: vec!["Reset".into()] });
}

#[test]
fn counter_types() {
    let t = ok(&corpus("counter.shp"));
    let model = Type::Record([("red".to_string(), Type::Float)].into());
    assert_eq!(t.model_type, Some(model.clone()));
    assert_eq!(t.msg_type, Type::Union("Msg".into()));
    assert_eq!(t.types["update"], Type::func([Type::Union("Msg".into()), model.clone()], model));
}

#[test]
fn notify_tap_at_takes_constructor() {
    let t = ok(&corpus("tapat.shp"));
    assert_eq!(t.msg_type, Type::Union("Msg".into()));
}

#[test]
fn unknown_name_suggestion() {
    let es = errs("flower colour = group [ oval 50 30 |> filled coluor ]\nmain = graphicsApp { view = collage 1 1 [ flower red ] }");
    match &es[0].kind {
        TypeErrorKind::UnknownName { name, suggestions } => {
            assert_eq!(name, "coluor");
            assert_eq!(suggestions[0], "colour");
        }
        k => panic!("{k:?}"),
    }
}

#[test]
fn one_error_per_definition() {
    let es = errs("a = 1 + \"x\" + True\nb = circle 1 |> move (1,1)\nmain = graphicsApp { view = collage 1 1 [] }");
    assert_eq!(es.len(), 2);
    assert_eq!(es[0].definition.as_deref(), Some("a"));
    assert_eq!(es[1].definition.as_deref(), Some("b"));
}

#[test]
fn bad_main_forms() {
    let es = errs("main = graphicsApp { view = 3 }");
    assert_eq!(es[0].kind_name(), "BadMain");

    let es = errs("type Msg = Go\nview m = collage 1 1 []\nupdate msg m = m + 1\nmain = notificationsApp { model = \"s\", view = view, update = update }");
    assert_eq!(es[0].kind_name(), "BadMain");

    let es = errs("type Msg = Tick Float\nview m = collage 1 1 []\nupdate msg m = m\nmain = gameApp Tick { model = 0, view = view, update = update }");
    assert_eq!(es[0].kind_name(), "BadMain");
    assert!(render_diagnostic(&es[0]).message.contains("KeyState"));
}

#[test]
fn size_on_circle_warns() {
    let out = check_program(&parse_source("main = graphicsApp { view = collage 1 1 [ circle 5 |> size 3 |> filled red ] }").unwrap());
    assert!(out.errors.is_empty());
    assert_eq!(out.warnings.len(), 1);
    assert!(out.warnings[0].message.contains("circle"));
}

#[test]
fn field_resolved_after_use() {
    // `getX` is checked before anything tells it what record it reads from.
    let t = ok("getX m = m.x\nmain = graphicsApp { view = collage 1 1 [ circle (getX { x = 3 }) |> filled red ] }");
    assert_eq!(
        t.types["getX"],
        Type::func([Type::Record([("x".to_string(), Type::Float)].into())], Type::Float)
    );
}

#[test]
fn unresolved_field() {
    let es = errs("getX m = m.x\nmain = graphicsApp { view = collage 1 1 [] }");
    assert_eq!(es[0].kind_name(), "UnresolvedRecord");
}

#[test]
fn unknown_field_width_exact() {
    let es = errs("type Msg = Go\nview m = collage 1 1 [ circle m.tme |> filled red ]\nupdate msg m = m\nmain = notificationsApp { model = { time = 0 }, view = view, update = update }");
    match &es[0].kind {
        TypeErrorKind::UnknownField { field, suggestions, .. } => {
            assert_eq!(field, "tme");
            assert_eq!(suggestions, &vec!["time".to_string()]);
        }
        k => panic!("{k:?}"),
    }
}

#[test]
fn comparing_functions_rejected() {
    let es = errs("f x = x\nb = f == f\nmain = graphicsApp { view = collage 1 1 [] }");
    assert_eq!(es[0].kind_name(), "NotComparable");
}

#[test]
fn if_branches_and_conditions() {
    let es = errs("a = if 1 then 2 else 3\nmain = graphicsApp { view = collage 1 1 [] }");
    assert!(render_diagnostic(&es[0]).message.starts_with("The condition of an if"));
    let es = errs("a = if True then 2 else \"x\"\nmain = graphicsApp { view = collage 1 1 [] }");
    assert!(render_diagnostic(&es[0]).message.starts_with("Both branches"));
}

#[test]
fn arity_error() {
    let es = errs("a = circle 1 2\nmain = graphicsApp { view = collage 1 1 [] }");
    assert_eq!(es[0].kind_name(), "ArityError");
    assert_eq!(render_diagnostic(&es[0]).message, "circle takes 1 input, but it is given 2.");
}

#[test]
fn pattern_arity_and_duplicate_branch() {
    let base = "type Msg = A Float | B\nf m = case m of\n  A -> 1\n  B -> 2\nmain = graphicsApp { view = collage 1 1 [] }";
    assert_eq!(errs(base)[0].kind_name(), "ArityError");
    let dup = "type Msg = A | B\nf m = case m of\n  A -> 1\n  A -> 1\n  B -> 2\nmain = graphicsApp { view = collage 1 1 [] }";
    assert_eq!(errs(dup)[0].kind_name(), "DuplicateBranch");
}

#[test]
fn renderings_hide_type_variables() {
    let srcs = [
        "a = [1, \"x\"]\nmain = graphicsApp { view = collage 1 1 [] }",
        "a = [circle 1 |> filled red, circle 2]\nmain = graphicsApp { view = collage 1 1 [] }",
        "f x = x x\nmain = graphicsApp { view = collage 1 1 [] }",
        "a = group [1]\nmain = graphicsApp { view = collage 1 1 [] }",
        "a = move 1\nmain = graphicsApp { view = collage 1 1 [] }",
    ];
    for s in srcs {
        for e in errs(s) {
            let d = render_diagnostic(&e);
            let text = d.render();
            assert!(!text.contains('?'), "{text}");
            assert!(!text.chars().any(|c| c.is_ascii_digit() && text.contains(&format!("t{c}"))), "{text}");
        }
    }
}

#[test]
fn residual_message_defaults_to_declared_union() {
    let t = ok("type Msg = Go\nview m = collage 1 1 [ circle 1 |> filled red ]\nupdate msg m = m\nmain = notificationsApp { model = 0, view = view, update = update }");
    assert_eq!(t.types["view"], Type::func([Type::Float], Type::collage(Type::Union("Msg".into()))));
}
