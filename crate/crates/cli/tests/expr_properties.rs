use duplex::Rational;
use duplex_cli::expr::{eval_expr, parse_expr, Constant, Evaluation, Expr};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (0i64..1000, 1i64..50).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        3 => rational().prop_map(Expr::Lit),
        1 => prop::sample::select(vec![Constant::Pi, Constant::E, Constant::Sqrt2, Constant::Zeta3]).prop_map(Expr::Const),
        1 => rational().prop_map(Expr::Sqrt),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        let pair = || (inner.clone(), inner.clone());
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            inner.clone().prop_map(|a| Expr::Abs(Box::new(a))),
            inner.clone().prop_map(|a| Expr::Inv(Box::new(a))),
            pair().prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            pair().prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            pair().prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            pair().prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            pair().prop_map(|(a, b)| Expr::Max(Box::new(a), Box::new(b))),
            pair().prop_map(|(a, b)| Expr::Min(Box::new(a), Box::new(b))),
        ]
    })
}

/// Expressions over literals only, paired with their exact value.
fn exact() -> impl Strategy<Value = (Expr, Rational)> {
    rational()
        .prop_map(|q| (Expr::Lit(q.clone()), q))
        .prop_recursive(4, 16, 2, |inner| {
            let pair = || (inner.clone(), inner.clone());
            prop_oneof![
                inner.clone().prop_map(|(a, x)| (Expr::Neg(Box::new(a)), -x)),
                pair().prop_map(|((a, x), (b, y))| (Expr::Add(Box::new(a), Box::new(b)), x + y)),
                pair().prop_map(|((a, x), (b, y))| (Expr::Sub(Box::new(a), Box::new(b)), x - y)),
                pair().prop_map(|((a, x), (b, y))| (Expr::Mul(Box::new(a), Box::new(b)), x * y)),
            ]
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_round_trips(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expr(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn literal_arithmetic_is_exact((e, want) in exact()) {
        match eval_expr(&e, 16).unwrap() {
            Evaluation::Value { value, certificates } => {
                prop_assert!(certificates.is_empty());
                let got = value.approx(40);
                let err = (got - want).abs();
                prop_assert!(err <= Rational::pow2(-40));
            }
            Evaluation::Unknown { .. } => prop_assert!(false, "no division, nothing to certify"),
        }
    }
}
