use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scalar_dsl::{fd_jet2, parse, BinOp, Expr, ExprField, Func, Rat, ScalarField};

// Expression catalog with in-domain sample boxes. Boxes keep sec/tan/log/sqrt
// arguments away from their singular sets by a margin larger than any FD step.
const CATALOG: &[(&str, &[&str], &[(f64, f64)])] = &[
    ("exp(-x)*sec(y)", &["x", "y"], &[(-1.0, 1.0), (-1.0, 1.0)]),
    ("sin(x)*cos(y)+x*y", &["x", "y"], &[(-2.0, 2.0), (-2.0, 2.0)]),
    ("sqrt(1+x^2+y^2)", &["x", "y"], &[(-2.0, 2.0), (-2.0, 2.0)]),
    ("log(2+sin(x))+y^3", &["x", "y"], &[(-2.0, 2.0), (-2.0, 2.0)]),
    ("tan(x/2)*exp(y/3)", &["x", "y"], &[(-2.0, 2.0), (-2.0, 2.0)]),
    ("1/(1+x^2)", &["x"], &[(-2.0, 2.0)]),
    ("x^(3/2)", &["x"], &[(0.5, 3.0)]),
    ("x^-2+y^-3", &["x", "y"], &[(0.6, 2.0), (0.6, 2.0)]),
    ("exp(x*y)-sin(x-y)", &["x", "y"], &[(-1.5, 1.5), (-1.5, 1.5)]),
    ("(x+y)^4/(2+cos(x))", &["x", "y"], &[(-2.0, 2.0), (-2.0, 2.0)]),
    ("sec(y)^2*tan(y)", &["y"], &[(-1.0, 1.0)]),
    ("sqrt(x)*log(x)", &["x"], &[(0.3, 3.0)]),
    ("exp(-(x^2+y^2)/2)", &["x", "y"], &[(-2.0, 2.0), (-2.0, 2.0)]),
    ("abs(x)*y", &["x", "y"], &[(0.5, 2.0), (-2.0, 2.0)]),
    ("cos(x)^2+sin(x)^2", &["x"], &[(-3.0, 3.0)]),
    ("exp(-v)", &["v"], &[(-2.0, 2.0)]),
    (
        "exp(v)*cos(w)+x*y",
        &["x", "y", "v", "w"],
        &[(-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)],
    ),
];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs())
}

// Forward-mode gradients and Hessians agree with central differences to 1e-6
// relative, at 100 seeded random points per catalog entry.
#[test]
fn jets_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for (src, coords, boxes) in CATALOG {
        let f = ExprField::parse(src, coords).unwrap();
        let n = boxes.len();
        for _ in 0..100 {
            let p: Vec<f64> =
                boxes.iter().map(|(lo, hi)| rng.gen_range(*lo..*hi)).collect();
            let ad = f.jet2(&p).unwrap();
            let fd = fd_jet2(&|x: &[f64]| f.value(x), &p).unwrap();
            for i in 0..n {
                assert!(
                    rel(ad.d[i], fd.d[i]) < 1e-6,
                    "{src} grad[{i}] at {p:?}: ad {} fd {}",
                    ad.d[i],
                    fd.d[i]
                );
                for j in 0..n {
                    assert!(
                        rel(ad.dd[i][j], fd.dd[i][j]) < 1e-6,
                        "{src} hess[{i}][{j}] at {p:?}: ad {} fd {}",
                        ad.dd[i][j],
                        fd.dd[i][j]
                    );
                }
            }
        }
    }
}

// Third derivatives of exp(2x)·sin(y), closed form vs differenced jets.
#[test]
fn order3_jets_match_closed_form() {
    let f = ExprField::parse("exp(2*x)*sin(y)", &["x", "y"]).unwrap();
    for (x, y) in [(0.3_f64, 0.7_f64), (-0.5, 1.1), (1.0, 0.4)] {
        let e = (2.0 * x).exp();
        let (s, c) = y.sin_cos();
        let want = [
            ([0, 0, 0], 8.0 * e * s),
            ([0, 0, 1], 4.0 * e * c),
            ([0, 1, 1], -2.0 * e * s),
            ([1, 1, 1], -e * c),
        ];
        let j3 = f.jet3(&[x, y]).unwrap();
        for ([i, j, k], v) in want {
            assert!(
                rel(j3.ddd[i][j][k], v) < 1e-5,
                "ddd[{i}][{j}][{k}] at ({x},{y}): got {} want {v}",
                j3.ddd[i][j][k]
            );
        }
        // full symmetry of the third-order block
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let a = j3.ddd[i][j][k];
                    assert_eq!(a, j3.ddd[j][i][k]);
                    assert_eq!(a, j3.ddd[k][j][i]);
                    assert_eq!(a, j3.ddd[i][k][j]);
                }
            }
        }
    }
}

fn arb_expr(nvars: usize) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-10.0..10.0f64).prop_map(Expr::Const),
        (0..nvars).prop_map(Expr::Var),
        Just(Expr::Const(0.0)),
        Just(Expr::Const(-1.5)),
    ];
    leaf.prop_recursive(4, 48, 2, |inner| {
        let funcs = prop::sample::select(vec![
            Func::Sin,
            Func::Cos,
            Func::Tan,
            Func::Sec,
            Func::Exp,
            Func::Log,
            Func::Sqrt,
            Func::Abs,
        ]);
        let ops = prop::sample::select(vec![
            BinOp::Add,
            BinOp::Sub,
            BinOp::Mul,
            BinOp::Div,
        ]);
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (ops, inner.clone(), inner.clone())
                .prop_map(|(op, a, b)| Expr::Bin(op, Box::new(a), Box::new(b), 0)),
            (inner.clone(), -6..=6i64, 1..=4i64)
                .prop_map(|(e, p, q)| Expr::Pow(Box::new(e), Rat::new(p, q), 0)),
            (funcs, inner).prop_map(|(f, a)| Expr::Func(f, Box::new(a), 0)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        cases: 256,
        ..ProptestConfig::default()
    })]

    // print → parse → print is the identity, and the reparsed tree evaluates
    // identically (bitwise) wherever the original does.
    #[test]
    fn print_parse_round_trip(e in arb_expr(3)) {
        let coords = ["x", "y", "z"];
        let s = e.print(&coords);
        let e2 = parse(&s, &coords)
            .unwrap_or_else(|err| panic!("reparse of {s:?} failed: {err}"));
        prop_assert_eq!(e2.print(&coords), s.clone(), "unstable print for {}", s);

        let p = [0.37, -0.81, 1.94];
        match (e.jet2(&p), e2.jet2(&p)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b, "eval diverged for {}", s),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "behavior diverged for {}: {:?} vs {:?}", s, a, b),
        }
    }
}
