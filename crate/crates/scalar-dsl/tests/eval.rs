use scalar_dsl::{parse, ExprField, EvalError, ScalarField};

fn jet(src: &str, coords: &[&str], point: &[f64]) -> scalar_dsl::Jet2 {
    ExprField::parse(src, coords).unwrap().jet2(point).unwrap()
}

#[test]
fn constant_over_two_coords() {
    let f = ExprField::parse("1", &["t", "y"]).unwrap();
    assert_eq!(f.value(&[0.3, -0.2]).unwrap(), 1.0);
    let j = f.jet2(&[5.0, 7.0]).unwrap();
    assert_eq!(j.v, 1.0);
    assert_eq!(j.d[..2], [0.0, 0.0]);
}

#[test]
fn product_of_exp_and_cos_at_origin() {
    let f = ExprField::parse("exp(v)*cos(w)", &["x", "y", "v", "w"]).unwrap();
    assert_eq!(f.value(&[0.0; 4]).unwrap(), 1.0);
}

#[test]
fn exp_of_negated_coord() {
    let f = ExprField::parse("exp(-v)", &["v"]).unwrap();
    let v = f.value(&[2.0_f64.ln()]).unwrap();
    assert!((v - 0.5).abs() < 1e-15);
}

#[test]
fn sine_jet_at_zero() {
    let j = jet("sin(t)", &["t"], &[0.0]);
    assert_eq!((j.v, j.d[0], j.dd[0][0]), (0.0, 1.0, 0.0));
}

#[test]
fn exp_jet_at_zero() {
    let j = jet("exp(t)", &["t"], &[0.0]);
    assert_eq!((j.v, j.d[0], j.dd[0][0]), (1.0, 1.0, 1.0));
}

// exp(-x)sec(y) at the origin: value 1, grad (-1,0), unit Hessian.
#[test]
fn exp_sec_jet_at_origin() {
    let j = jet("exp(-x)*sec(y)", &["x", "y"], &[0.0, 0.0]);
    assert_eq!(j.v, 1.0);
    assert_eq!(j.d[..2], [-1.0, 0.0]);
    assert_eq!(j.dd[0][..2], [1.0, -0.0]);
    assert_eq!(j.dd[1][..2], [-0.0, 1.0]);
}

#[test]
fn rational_and_negative_powers() {
    let j = jet("x^(1/2)", &["x"], &[4.0]);
    assert!((j.v - 2.0).abs() < 1e-15);
    assert!((j.d[0] - 0.25).abs() < 1e-15);

    let j = jet("x^-2", &["x"], &[2.0]);
    assert!((j.v - 0.25).abs() < 1e-15);
    assert!((j.d[0] + 0.25).abs() < 1e-15);

    // zeroth power must not touch x^{-1} or x^{-2} internally
    let j = jet("x^0", &["x"], &[0.0]);
    assert_eq!((j.v, j.d[0], j.dd[0][0]), (1.0, 0.0, 0.0));
}

#[test]
fn scientific_notation_literals() {
    let f = ExprField::parse("2.5e-1*x+1E2", &["x"]).unwrap();
    assert_eq!(f.value(&[4.0]).unwrap(), 101.0);
}

#[test]
fn constants_are_baked_in() {
    let f =
        ExprField::parse_with_consts("a^2*exp(th)", &["th"], &[("a", 3.0)]).unwrap();
    assert_eq!(f.value(&[0.0]).unwrap(), 9.0);
}

#[test]
fn dimension_and_bad_point_checks() {
    let f = ExprField::parse("x+y", &["x", "y"]).unwrap();
    assert!(matches!(
        f.value(&[1.0]),
        Err(EvalError::Dimension { want: 2, got: 1 })
    ));
    assert!(matches!(f.value(&[1.0, f64::NAN]), Err(EvalError::BadPoint)));
}

#[test]
fn syntax_errors_carry_byte_offsets() {
    let e = parse("x + + y", &["x", "y"]).unwrap_err();
    assert_eq!(e.offset, 4);

    let e = parse("x + zz", &["x", "y"]).unwrap_err();
    assert_eq!(e.offset, 4);
    assert!(e.message.contains("zz"));

    let e = parse("sin x", &["x"]).unwrap_err();
    assert_eq!(e.offset, 4);

    let e = parse("x^2^3", &["x"]).unwrap_err();
    assert_eq!(e.offset, 3);

    let e = parse("x^y", &["x", "y"]).unwrap_err();
    assert_eq!(e.offset, 2);

    let e = parse("(x+1))", &["x"]).unwrap_err();
    assert_eq!(e.offset, 5);

    let e = parse("x $ y", &["x", "y"]).unwrap_err();
    assert_eq!(e.offset, 2);
}

#[test]
fn domain_errors_point_at_the_failing_node() {
    let f = ExprField::parse("1+sec(y)", &["y"]).unwrap();
    match f.value(&[std::f64::consts::FRAC_PI_2]) {
        Err(EvalError::Domain { func: "sec", offset: 2, .. }) => {}
        other => panic!("expected sec domain error, got {other:?}"),
    }

    let f = ExprField::parse("log(x)", &["x"]).unwrap();
    assert!(matches!(
        f.value(&[-1.0]),
        Err(EvalError::Domain { func: "log", .. })
    ));
    assert!(matches!(
        f.jet2(&[0.0]),
        Err(EvalError::Domain { func: "log", .. })
    ));

    let f = ExprField::parse("x/(x-1)", &["x"]).unwrap();
    match f.jet2(&[1.0]) {
        Err(EvalError::Domain { func: "division", offset: 1, .. }) => {}
        other => panic!("expected division error, got {other:?}"),
    }

    let f = ExprField::parse("sqrt(x)", &["x"]).unwrap();
    assert!(matches!(
        f.jet2(&[-4.0]),
        Err(EvalError::Domain { func: "sqrt", .. })
    ));

    let f = ExprField::parse("abs(x)", &["x"]).unwrap();
    assert!(f.jet2(&[0.0]).is_err());
    assert_eq!(f.value(&[-3.0]).unwrap(), 3.0);
}

// Precedence: power binds over unary minus, products over sums.
#[test]
fn precedence_matches_convention() {
    let f = ExprField::parse("-x^2", &["x"]).unwrap();
    assert_eq!(f.value(&[3.0]).unwrap(), -9.0);

    let f = ExprField::parse("(-x)^2", &["x"]).unwrap();
    assert_eq!(f.value(&[3.0]).unwrap(), 9.0);

    let f = ExprField::parse("1+2*x^2", &["x"]).unwrap();
    assert_eq!(f.value(&[2.0]).unwrap(), 9.0);

    let f = ExprField::parse("1-x-y", &["x", "y"]).unwrap();
    assert_eq!(f.value(&[10.0, 100.0]).unwrap(), -109.0);

    let f = ExprField::parse("8/4/2", &["x"]).unwrap();
    assert_eq!(f.value(&[0.0]).unwrap(), 1.0);
}

#[test]
fn jet_on_constant_point_matches_plain_value() {
    let srcs = ["exp(-x)*sec(y)", "x^3-2*y+sin(x*y)", "sqrt(1+x^2)"];
    for s in srcs {
        let f = ExprField::parse(s, &["x", "y"]).unwrap();
        for p in [[0.1, 0.2], [1.0, -0.5], [-0.7, 0.9]] {
            let j = f.jet2(&p).unwrap();
            assert_eq!(j.v, f.value(&p).unwrap(), "value/jet mismatch for {s}");
        }
    }
}
