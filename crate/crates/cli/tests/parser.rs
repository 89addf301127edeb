use kstar::random::PolySampler;
use kstar::{Scalar, VarTable};
use kstar_cli::{parse_expr, parse_poly, Expr};
use proptest::prelude::*;

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..20, 1u32..5).prop_map(|(p, q)| Expr::Num(Scalar::ratio(p as i64, q as i64))),
        Just(Expr::Imag),
        (0usize..3).prop_map(|k| Expr::Var(format!("x{k}"))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

proptest! {
    #[test]
    fn printed_expressions_parse_back(e in expr()) {
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn printed_polynomials_parse_back(seed in any::<u64>(), phase in any::<bool>()) {
        let t = if phase { VarTable::phase(2).unwrap() } else { VarTable::spacetime(2).unwrap() };
        let p = PolySampler::new(seed).poly(&t, 4, 6);
        prop_assert_eq!(parse_poly(&p.to_string(), &t).unwrap(), p);
    }

    #[test]
    fn expression_value_survives_printing(e in expr()) {
        let t = VarTable::spacetime(2).unwrap();
        let p = e.to_poly(&t).unwrap();
        prop_assert_eq!(parse_poly(&p.to_string(), &t).unwrap(), p);
    }
}

#[test]
fn pullback_image_of_x0() {
    let p = VarTable::phase(2).unwrap();
    let e = parse_poly("zb1*z1 + zb2*z2", &p).unwrap();
    let r = kstar::realization::Realization::kappa(2).unwrap();
    let x0 = kstar::Poly::var(r.source(), r.source().x(0));
    assert_eq!(r.pullback(&x0).unwrap(), e);
}
