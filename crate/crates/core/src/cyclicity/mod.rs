//! Integration by parts against an abstract measure `h(x)`.
//!
//! An [`IBPExpression`] is a sum of terms `c(x) ∂^H h · ∂^F f · ∂^G g`
//! standing for its integral over spacetime; boundary terms are dropped.
//! Moving every derivative off `f` leaves `∫ f · Σ_w C_w(h) ∂^w g`, and the
//! integral vanishes for all `f, g` exactly when each `C_w h = 0`.

mod measure;

pub use measure::{check_candidate, CandidateReport, ConditionResidual, MeasureCandidate};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::multi::MultiIndex;
use crate::poly::Poly;
use crate::random::PolySampler;
use crate::scalar::Scalar;
use crate::star::StarProduct;
use crate::vars::{Space, Var, VarTable};

/// Which function the derivatives are moved off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    F,
    G,
}

type Key = (MultiIndex, MultiIndex, MultiIndex);

/// `Σ c(x) ∂^H h ∂^F f ∂^G g`, keyed by `(H, F, G)`.
#[derive(Clone, PartialEq, Eq)]
pub struct IBPExpression {
    table: Arc<VarTable>,
    terms: BTreeMap<Key, Poly>,
}

impl IBPExpression {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        IBPExpression { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn add_term(&mut self, h: MultiIndex, f: MultiIndex, g: MultiIndex, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let key = (h, f, g);
        let slot = self.terms.entry(key.clone()).or_insert_with(|| Poly::zero(&self.table));
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Terms as `(hword, fword, gword, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &MultiIndex, &Poly)> {
        self.terms.iter().map(|((h, f, g), c)| (h, f, g, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, o: &IBPExpression) -> IBPExpression {
        let mut out = self.clone();
        for ((h, f, g), c) in &o.terms {
            out.add_term(h.clone(), f.clone(), g.clone(), &-c);
        }
        out
    }

    /// Exchanges the roles of `f` and `g`.
    pub fn swapped(&self) -> IBPExpression {
        let mut out = IBPExpression::zero(&self.table);
        for ((h, f, g), c) in &self.terms {
            out.add_term(h.clone(), g.clone(), f.clone(), c);
        }
        out
    }

    /// No derivative left on the given slot.
    pub fn is_normalized(&self, onto: Slot) -> bool {
        self.terms.keys().all(|(_, f, g)| match onto {
            Slot::F => f.is_zero(),
            Slot::G => g.is_zero(),
        })
    }

    /// The integrand for explicit `h, f, g`.
    pub fn evaluate(&self, h: &Poly, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero(&self.table);
        for ((hw, fw, gw), c) in &self.terms {
            let t = &(&(c * &h.derivative(hw)) * &f.derivative(fw)) * &g.derivative(gw);
            out = &out + &t;
        }
        out
    }
}

impl fmt::Display for IBPExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let t = &self.table;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((h, fw, g), c)| {
                format!("({c})*{}*{}*{}", applied(t, h, "h"), applied(t, fw, "f"), applied(t, g, "g"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for IBPExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn applied(t: &VarTable, alpha: &MultiIndex, sym: &str) -> String {
    if alpha.is_zero() {
        return sym.to_string();
    }
    let parts: Vec<String> = t
        .vars()
        .filter(|v| alpha.get(*v) > 0)
        .map(|v| match alpha.get(v) {
            1 => format!("d_{}", t.name(v)),
            e => format!("d_{}^{}", t.name(v), e),
        })
        .collect();
    format!("{}({sym})", parts.join("*"))
}

/// `∫ h (f ⋆ g − g ⋆ f)` at θ^`order`.
pub fn commutator_integrand(s: &StarProduct, order: u32) -> Result<IBPExpression> {
    let table = s.table().clone();
    if table.space() != Space::Spacetime {
        return Err(Error::Unsupported(format!("cyclicity analysis needs a spacetime product, got {}", s.kind())));
    }
    let mut out = IBPExpression::zero(&table);
    if order == 0 {
        return Ok(out);
    }
    let b = s.order_term(order);
    let zero = MultiIndex::zero(table.len());
    for (_, l, m, r) in b.terms() {
        out.add_term(zero.clone(), l.clone(), r.clone(), m);
        out.add_term(zero.clone(), r.clone(), l.clone(), &-m);
    }
    Ok(out)
}

/// Integrates by parts until no derivative acts on the `onto` slot.
pub fn ibp_normalize(e: &IBPExpression, onto: Slot) -> IBPExpression {
    let t = e.table.clone();
    let mut current = e.clone();
    loop {
        let mut next = IBPExpression::zero(&t);
        let mut moved = false;
        for ((h, f, g), c) in &current.terms {
            let (moving, other) = match onto {
                Slot::F => (f, g),
                Slot::G => (g, f),
            };
            let Some(v) = t.vars().find(|v| moving.get(*v) > 0) else {
                next.add_term(h.clone(), f.clone(), g.clone(), c);
                continue;
            };
            moved = true;
            // c ∂^H h ∂_v ∂^M u ∂^O w  ↦  −∂_v(c ∂^H h ∂^O w) ∂^M u
            let rest = moving.with(v, -1).unwrap();
            let pieces = [
                (h.clone(), other.clone(), -&c.partial(v)),
                (h.inc(v), other.clone(), -c),
                (h.clone(), other.inc(v), -c),
            ];
            for (hh, oo, cc) in pieces {
                match onto {
                    Slot::F => next.add_term(hh, rest.clone(), oo, &cc),
                    Slot::G => next.add_term(hh, oo, rest.clone(), &cc),
                }
            }
        }
        current = next;
        if !moved {
            return current;
        }
    }
}

/// One differential condition on `h` per surviving derivative word of the
/// remaining function.
#[derive(Clone, PartialEq, Eq)]
pub struct ConditionSet {
    table: Arc<VarTable>,
    by_word: BTreeMap<MultiIndex, DiffOp>,
}

impl ConditionSet {
    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Raw conditions keyed by the derivative word on the remaining function.
    pub fn raw(&self) -> impl Iterator<Item = (&MultiIndex, &DiffOp)> {
        self.by_word.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.by_word.is_empty()
    }

    pub fn negated(&self) -> ConditionSet {
        ConditionSet {
            table: self.table.clone(),
            by_word: self.by_word.iter().map(|(w, d)| (w.clone(), d.scale(&Scalar::from_int(-1)))).collect(),
        }
    }

    /// Conditions with monomial content divided out and the top coefficient
    /// normalized, without duplicates, in a fixed order.
    pub fn reduced(&self) -> Vec<DiffOp> {
        let mut out: Vec<DiffOp> = Vec::new();
        for d in self.by_word.values() {
            let p = d.primitive();
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out.sort_by_key(|d| d.to_string());
        out
    }
}

impl fmt::Debug for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.reduced().iter().map(|d| format!("{} = 0", format_condition(d))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `c1*d_x1(h) + 2*h` style rendering of an operator applied to `h`.
pub fn format_condition(d: &DiffOp) -> String {
    if d.is_zero() {
        return "0".into();
    }
    let t = d.table();
    let mut parts: Vec<(MultiIndex, String)> = d
        .terms()
        .map(|(a, c)| {
            let h = applied(t, a, "h");
            let s = if c.is_constant() && c.constant_term().is_one() {
                h
            } else if c.num_terms() == 1 && (!c.constant_term().is_zero() || c.leading_term().unwrap().1.is_one()) {
                format!("{c}*{h}")
            } else {
                format!("({c})*{h}")
            };
            (a.clone(), s)
        })
        .collect();
    parts.sort_by(|a, b| b.0.cmp(&a.0));
    parts.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" + ")
}

/// Groups a normalized expression by the derivative word on the other slot.
pub fn extract_conditions(e: &IBPExpression, onto: Slot) -> Result<ConditionSet> {
    if !e.is_normalized(onto) {
        return Err(Error::InvalidArgument("expression still has derivatives on the normalized slot".into()));
    }
    let mut by_word: BTreeMap<MultiIndex, DiffOp> = BTreeMap::new();
    for ((h, f, g), c) in &e.terms {
        let w = match onto {
            Slot::F => g,
            Slot::G => f,
        };
        let slot = by_word.entry(w.clone()).or_insert_with(|| DiffOp::zero(&e.table));
        slot.add_term(h.clone(), c);
    }
    by_word.retain(|_, d| !d.is_zero());
    Ok(ConditionSet { table: e.table.clone(), by_word })
}

/// The full pipeline: integrand, normalization onto `f`, grouping.
pub fn conditions_at_order(s: &StarProduct, order: u32) -> Result<ConditionSet> {
    extract_conditions(&ibp_normalize(&commutator_integrand(s, order)?, Slot::F), Slot::F)
}

/// `{∂0 h = 0, x^k∂_k h + d·h = 0}`.
pub fn first_order_rules(table: &Arc<VarTable>) -> Vec<DiffOp> {
    let n = table.len();
    let mut euler = DiffOp::multiplication(Poly::constant(table, Scalar::from_int(table.dim() as i64)));
    for k in table.spatial() {
        euler.add_term(MultiIndex::unit(n, k), &Poly::var(table, k));
    }
    let mut rules = vec![DiffOp::partial(table, table.x(0)), euler];
    rules.sort_by_key(|d| d.to_string());
    rules
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    /// Reduces to zero: implied by the rules.
    Implied,
    /// Reduces to `c(x)·h = 0` with `c ≠ 0`, forcing `h = 0`.
    ForcesZero(Poly),
    /// A derivative of `h` survives that no rule eliminates.
    Unreduced,
}

#[derive(Clone, Debug)]
pub struct ReducedCondition {
    pub original: DiffOp,
    pub normal_form: DiffOp,
    pub status: ConditionStatus,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub conditions: Vec<ReducedCondition>,
}

impl Reduction {
    /// Conditions that do not follow from the rules.
    pub fn remaining(&self) -> Vec<&ReducedCondition> {
        self.conditions.iter().filter(|c| c.status != ConditionStatus::Implied).collect()
    }

    /// The first `c·h = 0` condition with `c` a nonzero constant.
    pub fn constant_forcing(&self) -> Option<Scalar> {
        self.conditions.iter().find_map(|c| match &c.status {
            ConditionStatus::ForcesZero(p) if p.is_constant() => Some(p.constant_term()),
            _ => None,
        })
    }

    pub fn has_unreduced(&self) -> bool {
        self.conditions.iter().any(|c| c.status == ConditionStatus::Unreduced)
    }
}

/// The rules, recognised as annihilators `∂_j h = 0` plus at most one Euler
/// relation `Σ_{k∈S} x^k ∂_k h + λ h = 0`.
struct RuleSet {
    annihilated: Vec<Var>,
    euler: Option<(Vec<Var>, Scalar)>,
}

fn classify_rules(rules: &[DiffOp]) -> Result<RuleSet> {
    let mut annihilated = Vec::new();
    let mut euler: Option<(Vec<Var>, Scalar)> = None;
    for r in rules {
        let r = r.primitive();
        let table = r.table().clone();
        let terms: Vec<_> = r.terms().collect();
        if terms.len() == 1 && terms[0].0.degree() == 1 && terms[0].1.is_constant() {
            annihilated.push(terms[0].0.to_vars()[0]);
            continue;
        }
        let mut vars = Vec::new();
        let mut lambda = Scalar::zero();
        for (a, c) in &terms {
            match a.degree() {
                0 if c.is_constant() => lambda = c.constant_term(),
                1 => {
                    let v = a.to_vars()[0];
                    if **c != Poly::var(&table, v) {
                        return Err(Error::UnsupportedRule(format!("coefficient of d_{} is not x{}", table.name(v), v.0)));
                    }
                    vars.push(v);
                }
                _ => return Err(Error::UnsupportedRule(format!("{r} is neither an annihilator nor an Euler relation"))),
            }
        }
        if vars.is_empty() || euler.is_some() {
            return Err(Error::UnsupportedRule(format!("{r}: only one Euler relation is supported")));
        }
        euler = Some((vars, lambda));
    }
    if let Some((vars, _)) = &euler {
        if vars.iter().any(|v| annihilated.contains(v)) {
            return Err(Error::UnsupportedRule("Euler relation overlaps an annihilated variable".into()));
        }
    }
    Ok(RuleSet { annihilated, euler })
}

/// Normal form of `p` modulo the left ideal generated by the rules, after
/// clearing the pivot variable's negative powers by a monomial factor.
fn normal_form(p: &DiffOp, rules: &RuleSet) -> DiffOp {
    let t = p.table().clone();
    let n = t.len();
    let drop_annihilated = |d: &DiffOp| {
        let mut out = DiffOp::zero(&t);
        for (a, c) in d.terms() {
            if rules.annihilated.iter().all(|v| a.get(*v) == 0) {
                out.add_term(a.clone(), c);
            }
        }
        out
    };
    let mut cur = drop_annihilated(p);
    let Some((vars, lambda)) = &rules.euler else { return cur };
    let pivot = vars[0];
    let mut rule = DiffOp::multiplication(Poly::constant(&t, lambda.clone()));
    for v in vars {
        rule.add_term(MultiIndex::unit(n, *v), &Poly::var(&t, *v));
    }
    // x_pivot ≠ 0 on a dense set, so the condition may be multiplied by it
    let need = cur
        .terms()
        .flat_map(|(a, c)| c.terms().map(move |(m, _)| a.get(pivot).saturating_sub(m.get(pivot))))
        .max()
        .unwrap_or(0);
    if need > 0 {
        cur = cur.left_mul(&Poly::var(&t, pivot).pow(need));
    }
    loop {
        let target = cur.terms().find_map(|(a, c)| {
            if a.get(pivot) == 0 {
                return None;
            }
            c.terms().find(|(m, _)| m.get(pivot) > 0).map(|(m, s)| (a.clone(), m.clone(), s.clone()))
        });
        let Some((a, m, s)) = target else { break };
        let x = Poly::monomial(&t, m.with(pivot, -1).unwrap(), s);
        let step = DiffOp::term(x, a.with(pivot, -1).unwrap()).compose(&rule);
        cur = drop_annihilated(&cur.sub(&step));
    }
    cur
}

/// Reduces each condition modulo the rules.
pub fn reduce_with_rules(conditions: &[DiffOp], rules: &[DiffOp]) -> Result<Reduction> {
    let rs = classify_rules(rules)?;
    let conditions = conditions
        .iter()
        .map(|c| {
            let nf = normal_form(c, &rs);
            let status = if nf.is_zero() {
                ConditionStatus::Implied
            } else if nf.order() == 0 {
                ConditionStatus::ForcesZero(nf.primitive().coeff(&MultiIndex::zero(nf.table().len())))
            } else {
                ConditionStatus::Unreduced
            };
            ReducedCondition { original: c.clone(), normal_form: nf, status }
        })
        .collect();
    Ok(Reduction { conditions })
}

/// Checks that normalization preserves the integral on explicit functions:
/// `f` and `g` carry the bump `Π (1 − x_μ²)^m` so every boundary term on
/// `[−1, 1]^n` vanishes, and both sides are integrated exactly.
pub fn bump_check(e: &IBPExpression, onto: Slot, seed: u64) -> (Scalar, Scalar) {
    let t = e.table.clone();
    let normalized = ibp_normalize(e, onto);
    let order = e.terms.keys().map(|(_, f, g)| f.degree().max(g.degree())).max().unwrap_or(0);
    let mut bump = Poly::one(&t);
    for v in t.vars() {
        let x = Poly::var(&t, v);
        let factor = &Poly::one(&t) - &(&x * &x);
        bump = &bump * &factor.pow(order + 1);
    }
    let mut sampler = PolySampler::new(seed);
    let h = sampler.poly(&t, 2, 3);
    let f = &sampler.poly(&t, 2, 2) * &bump;
    let g = &sampler.poly(&t, 2, 2) * &bump;
    (e.evaluate(&h, &f, &g).integrate_unit_box(), normalized.evaluate(&h, &f, &g).integrate_unit_box())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star::{build_star, StarKind};
    use crate::twist::TwistKind;

    #[test]
    fn single_ibp_examples() {
        let t = VarTable::spacetime(1).unwrap();
        let n = t.len();
        let u = |m| MultiIndex::unit(n, t.x(m));
        let z = MultiIndex::zero(n);
        let x1 = Poly::var(&t, t.x(1));
        let mut e = IBPExpression::zero(&t);
        e.add_term(z.clone(), u(0), u(1), &x1);
        let got = ibp_normalize(&e, Slot::F);
        let mut expect = IBPExpression::zero(&t);
        expect.add_term(u(0), z.clone(), u(1), &-&x1);
        expect.add_term(z.clone(), z.clone(), u(0).add(&u(1)), &-&x1);
        assert_eq!(got, expect);

        let mut e = IBPExpression::zero(&t);
        e.add_term(z.clone(), u(1), u(0), &x1);
        let got = ibp_normalize(&e, Slot::F);
        let mut expect = IBPExpression::zero(&t);
        expect.add_term(z.clone(), z.clone(), u(0), &-&Poly::one(&t));
        expect.add_term(u(1), z.clone(), u(0), &-&x1);
        expect.add_term(z.clone(), z.clone(), u(0).add(&u(1)), &-&x1);
        assert_eq!(got, expect);

        let mut fixed = IBPExpression::zero(&t);
        fixed.add_term(u(1), z.clone(), u(0), &x1);
        assert_eq!(ibp_normalize(&fixed, Slot::F), fixed);
    }

    #[test]
    fn first_order_conditions() {
        for d in 1..=3 {
            let k = build_star(StarKind::Kappa, d, None).unwrap();
            let c = conditions_at_order(&k, 1).unwrap();
            assert_eq!(c.reduced(), first_order_rules(k.table()), "d = {d}");
            let rs = build_star(StarKind::FromTwist(TwistKind::JordanianRs), d, None).unwrap();
            assert_eq!(conditions_at_order(&rs, 1).unwrap(), c);
        }
    }

    #[test]
    fn onto_g_is_sign_flipped() {
        let k = build_star(StarKind::Kappa, 2, None).unwrap();
        for order in 1..=2 {
            let e = commutator_integrand(&k, order).unwrap();
            let f = extract_conditions(&ibp_normalize(&e, Slot::F), Slot::F).unwrap();
            let g = extract_conditions(&ibp_normalize(&e, Slot::G), Slot::G).unwrap();
            assert_eq!(g, f.negated());
        }
    }

    #[test]
    fn euler_square_reduces_to_constant() {
        for d in 1..=3 {
            let t = VarTable::spacetime(d).unwrap();
            let mut op = DiffOp::zero(&t);
            for r in t.spatial() {
                for m in t.spatial() {
                    let a = MultiIndex::unit(t.len(), r).add(&MultiIndex::unit(t.len(), m));
                    op.add_term(a, &(&Poly::var(&t, r) * &Poly::var(&t, m)));
                }
            }
            let red = reduce_with_rules(&[op], &first_order_rules(&t)).unwrap();
            let c = (d * (d + 1)) as i64;
            assert_eq!(red.conditions[0].normal_form, DiffOp::multiplication(Poly::constant(&t, Scalar::from_int(c))));
            let rules = first_order_rules(&t);
            let taut = reduce_with_rules(&rules, &rules).unwrap();
            assert!(taut.remaining().is_empty());
        }
    }

    #[test]
    fn unsupported_rules_are_rejected() {
        let t = VarTable::spacetime(1).unwrap();
        let bad = DiffOp::partial(&t, t.x(1)).compose(&DiffOp::partial(&t, t.x(1)));
        assert!(matches!(reduce_with_rules(std::slice::from_ref(&bad), std::slice::from_ref(&bad)), Err(Error::UnsupportedRule(_))));
    }

    #[test]
    fn bump_surrogate_preserves_integrals() {
        let k = build_star(StarKind::Kappa, 1, None).unwrap();
        for order in 1..=2 {
            let e = commutator_integrand(&k, order).unwrap();
            for onto in [Slot::F, Slot::G] {
                let (a, b) = bump_check(&e, onto, 3);
                assert_eq!(a, b);
            }
        }
    }
}
