use kstar::random::PolySampler;
use kstar::star::{build_star, poisson_bracket, verify_associativity, PoissonStructure, StarKind};
use kstar::twist::TwistKind;
use kstar::{Poly, Scalar};
use proptest::prelude::*;

const KINDS: [(StarKind, usize); 6] = [
    (StarKind::Moyal, 2),
    (StarKind::WickVoros, 2),
    (StarKind::Kappa, 2),
    (StarKind::Su2, 3),
    (StarKind::FromTwist(TwistKind::Jordanian), 2),
    (StarKind::FromTwist(TwistKind::JordanianRs), 1),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unit_law(seed in any::<u64>(), k in 0usize..6) {
        let (kind, d) = KINDS[k];
        let s = build_star(kind, d, None).unwrap();
        let f = PolySampler::new(seed).poly(s.table(), 3, 4);
        let one = Poly::one(s.table());
        prop_assert_eq!(s.apply(&one, &f).unwrap().coeff(0), f.clone());
        prop_assert_eq!(s.apply(&f, &one).unwrap().coeff(0), f.clone());
        prop_assert!(s.apply(&one, &f).unwrap().max_order().is_none_or(|n| n == 0));
        prop_assert!(s.apply(&f, &one).unwrap().max_order().is_none_or(|n| n == 0));
    }

    #[test]
    fn associativity(seed in any::<u64>(), k in 0usize..6) {
        let (kind, d) = KINDS[k];
        let s = build_star(kind, d, None).unwrap();
        let mut sampler = PolySampler::new(seed);
        let (f, g, h) = (sampler.poly(s.table(), 2, 3), sampler.poly(s.table(), 2, 3), sampler.poly(s.table(), 2, 3));
        prop_assert_eq!(verify_associativity(&s, &f, &g, &h).unwrap(), None);
    }

    #[test]
    fn semiclassical_limit_kappa(seed in any::<u64>()) {
        let s = build_star(StarKind::Kappa, 2, None).unwrap();
        let mut sampler = PolySampler::new(seed);
        let (f, g) = (sampler.poly(s.table(), 3, 3), sampler.poly(s.table(), 3, 3));
        let c = s.commutator(&f, &g).unwrap();
        prop_assert!(c.coeff(0).is_zero());
        let pb = poisson_bracket(&f, &g, PoissonStructure::KappaClassical).unwrap();
        prop_assert_eq!(c.coeff(1), pb.scale(&(-Scalar::i())));
    }

    #[test]
    fn poisson_compatibility_moyal_wv(seed in any::<u64>()) {
        let mut sampler = PolySampler::new(seed);
        let moyal = build_star(StarKind::Moyal, 2, None).unwrap();
        let wv = build_star(StarKind::WickVoros, 2, None).unwrap();
        let (f, g) = (sampler.poly(moyal.table(), 3, 3), sampler.poly(moyal.table(), 3, 3));
        let a = moyal.commutator(&f, &g).unwrap().coeff(1);
        let b = wv.commutator(&f, &g).unwrap().coeff(1);
        prop_assert_eq!(&a, &b);
        let pb = poisson_bracket(&f, &g, PoissonStructure::CanonicalZ).unwrap();
        prop_assert_eq!(a, pb.scale(&(-Scalar::i())));
    }
}

#[test]
fn kappa_commutators_up_to_d4() {
    for d in 1..=4 {
        let s = build_star(StarKind::Kappa, d, None).unwrap();
        let t = s.table().clone();
        let x = |m| Poly::var(&t, t.x(m));
        for i in 1..=d {
            let c = s.commutator(&x(0), &x(i)).unwrap();
            assert_eq!(c.coeff(1), x(i));
            assert_eq!(c.max_order(), Some(1));
            for j in 1..=d {
                assert!(s.commutator(&x(i), &x(j)).unwrap().is_zero());
            }
        }
    }
}
