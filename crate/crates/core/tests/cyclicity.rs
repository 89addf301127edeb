use kstar::cyclicity::{
    bump_check, check_candidate, commutator_integrand, conditions_at_order, first_order_rules, reduce_with_rules,
    ConditionStatus, MeasureCandidate, Slot,
};
use kstar::star::{build_star, StarKind};
use kstar::twist::TwistKind;

const RS: StarKind = StarKind::FromTwist(TwistKind::JordanianRs);

#[test]
fn first_order_conditions_match_for_both_products() {
    for d in 1..=4 {
        for kind in [StarKind::Kappa, RS] {
            let s = build_star(kind, d, None).unwrap();
            let got = conditions_at_order(&s, 1).unwrap().reduced();
            assert_eq!(got, first_order_rules(s.table()), "{kind}, d = {d}");
        }
    }
}

#[test]
fn normalization_preserves_integrals() {
    for (kind, order) in [(StarKind::Kappa, 1), (StarKind::Kappa, 2), (RS, 1)] {
        let s = build_star(kind, 1, None).unwrap();
        let e = commutator_integrand(&s, order).unwrap();
        for seed in 0..3 {
            for onto in [Slot::F, Slot::G] {
                let (before, after) = bump_check(&e, onto, seed);
                assert_eq!(before, after, "{kind} order {order} seed {seed}");
            }
        }
    }
}

/// Observed behaviour at θ²: every κ condition lies in the ideal generated by
/// the first-order rules, the r-symmetric integrand vanishes identically, and
/// the standard candidates leave zero residual.
#[test]
fn order_two_conditions_follow_from_first_order() {
    for d in 1..=4 {
        let k = build_star(StarKind::Kappa, d, None).unwrap();
        let conds = conditions_at_order(&k, 2).unwrap().reduced();
        assert!(!conds.is_empty());
        let red = reduce_with_rules(&conds, &first_order_rules(k.table())).unwrap();
        assert!(red.conditions.iter().all(|c| c.status == ConditionStatus::Implied), "d = {d}");
        assert_eq!(red.constant_forcing(), None);

        let rs = build_star(RS, d, None).unwrap();
        assert!(commutator_integrand(&rs, 2).unwrap().is_zero());

        for m in MeasureCandidate::standard(d).unwrap() {
            assert!(check_candidate(&m, &k, 2).unwrap().passed(), "{m}, d = {d}");
        }
    }
}

#[test]
fn third_order_conditions_reduce_too() {
    for d in 1..=2 {
        let k = build_star(StarKind::Kappa, d, None).unwrap();
        let conds = conditions_at_order(&k, 3).unwrap().reduced();
        let red = reduce_with_rules(&conds, &first_order_rules(k.table())).unwrap();
        assert!(red.remaining().is_empty(), "d = {d}: {:?}", red.remaining());
    }
}
