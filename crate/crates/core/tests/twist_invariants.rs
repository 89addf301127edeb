use kstar::random::PolySampler;
use kstar::star::{build_star, StarKind};
use kstar::twist::{falling_factorial_op, pure_derivative_op, TwistKind, TwistSeries};
use kstar::{Poly, Scalar, VarTable};
use proptest::prelude::*;

#[test]
fn falling_factorial_of_euler_is_pure_derivative() {
    for d in 1..=3 {
        let t = VarTable::spacetime(d).unwrap();
        for n in 0..=6 {
            assert_eq!(falling_factorial_op(&t, n), pure_derivative_op(&t, n), "d = {d}, n = {n}");
        }
    }
}

#[test]
fn twist_unit_law() {
    let t = VarTable::spacetime(2).unwrap();
    let f = &Poly::var(&t, t.x(0)).pow(2) * &Poly::var(&t, t.x(2));
    for kind in [TwistKind::Jordanian, TwistKind::JordanianRs] {
        let tw = TwistSeries::build(kind, 6);
        let one = Poly::one(&t);
        assert_eq!(tw.star(&one, &f, 6).max_order(), Some(0));
        assert_eq!(tw.star(&f, &one, 6).coeff(0), f);
        assert_eq!(tw.star(&f, &one, 6).max_order(), Some(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twist_products_are_associative(seed in any::<u64>(), rs in any::<bool>()) {
        let kind = if rs { TwistKind::JordanianRs } else { TwistKind::Jordanian };
        let s = build_star(StarKind::FromTwist(kind), 2, None).unwrap();
        let mut sampler = PolySampler::new(seed);
        let (f, g, h) = (sampler.poly(s.table(), 2, 2), sampler.poly(s.table(), 2, 2), sampler.poly(s.table(), 2, 2));
        prop_assert_eq!(kstar::star::verify_associativity(&s, &f, &g, &h).unwrap(), None);
    }

    /// The r-symmetric product satisfies `g ⋆ f (θ) = f ⋆ g (−θ)`.
    #[test]
    fn rs_product_is_theta_odd_antisymmetric(seed in any::<u64>()) {
        let t = VarTable::spacetime(2).unwrap();
        let mut sampler = PolySampler::new(seed);
        let (f, g) = (sampler.poly(&t, 3, 3), sampler.poly(&t, 3, 3));
        let tw = TwistSeries::build(TwistKind::JordanianRs, 6);
        let fg = tw.star(&f, &g, 6);
        let gf = tw.star(&g, &f, 6);
        for n in 0..=6u32 {
            let sign = Scalar::from_int(if n % 2 == 0 { 1 } else { -1 });
            prop_assert_eq!(gf.coeff(n), fg.coeff(n).scale(&sign), "order {}", n);
        }
    }

    #[test]
    fn jordanian_twist_matches_kappa(seed in any::<u64>()) {
        let k = build_star(StarKind::Kappa, 3, None).unwrap();
        let j = build_star(StarKind::FromTwist(TwistKind::Jordanian), 3, None).unwrap();
        let mut sampler = PolySampler::new(seed);
        let (f, g) = (sampler.poly(k.table(), 4, 3), sampler.poly(k.table(), 4, 3));
        prop_assert_eq!(k.apply(&f, &g).unwrap(), j.apply(&f, &g).unwrap());
    }
}
