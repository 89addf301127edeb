//! Differential operators with polynomial coefficients.
//!
//! [`DiffOp`] acts on one function, [`BiDiffOp`] on two, and [`GradedDiffOp`]
//! is a θ-graded family of one-slot operators. All are stored normal-ordered:
//! coefficients to the left of derivatives, so equality is structural.

mod bidiff;
mod forms;

pub use bidiff::BiDiffOp;
pub use forms::{OneForm, TwoForm, VectorField};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::multi::MultiIndex;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::ThetaSeries;
use crate::vars::{Var, VarTable};

/// `Σ_α c_α(x) ∂^α`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    table: Arc<VarTable>,
    terms: BTreeMap<MultiIndex, Poly>,
}

impl DiffOp {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        DiffOp { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(table: &Arc<VarTable>) -> Self {
        Self::multiplication(Poly::one(table))
    }

    /// The operator `f ↦ p·f`.
    pub fn multiplication(p: Poly) -> Self {
        let table = p.table().clone();
        Self::term(p, MultiIndex::zero(table.len()))
    }

    pub fn partial(table: &Arc<VarTable>, v: Var) -> Self {
        Self::term(Poly::one(table), MultiIndex::unit(table.len(), v))
    }

    /// `c·∂^α`.
    pub fn term(c: Poly, alpha: MultiIndex) -> Self {
        let mut op = DiffOp::zero(c.table());
        op.add_term(alpha, &c);
        op
    }

    /// Euler operator `Σ_μ x^μ ∂_μ` over every variable of the table.
    pub fn euler(table: &Arc<VarTable>) -> Self {
        let mut op = DiffOp::zero(table);
        for v in table.vars() {
            op.add_term(MultiIndex::unit(table.len(), v), &Poly::var(table, v));
        }
        op
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Poly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| Poly::zero(&self.table))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order present.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(alpha.clone()).or_insert_with(|| Poly::zero(&self.table));
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&alpha);
        }
    }

    pub fn add(&self, o: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &DiffOp) -> DiffOp {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero(&self.table);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &c.scale(s));
        }
        out
    }

    /// Left multiplication by a polynomial.
    pub fn left_mul(&self, p: &Poly) -> DiffOp {
        let mut out = DiffOp::zero(&self.table);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &(p * c));
        }
        out
    }

    /// `Σ c_α ∂^α f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (a, c) in &self.terms {
            let d = f.derivative(a);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    /// Normal-ordered composition `self ∘ o`, via the Leibniz rule
    /// `∂^α b = Σ_{γ≤α} C(α,γ) (∂^γ b) ∂^{α−γ}`.
    pub fn compose(&self, o: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero(&self.table);
        for (alpha, a) in &self.terms {
            let subs = alpha.sub_indices();
            for (beta, b) in &o.terms {
                for gamma in &subs {
                    let db = b.derivative(gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let k = alpha.binomial(gamma) as i64;
                    let rest = alpha.checked_sub(gamma).unwrap().add(beta);
                    out.add_term(rest, &(a * &db).scale(&Scalar::from_int(k)));
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &DiffOp) -> DiffOp {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn pow(&self, n: u32) -> DiffOp {
        (0..n).fold(DiffOp::identity(&self.table), |acc, _| acc.compose(self))
    }

    /// Divides every coefficient by their common monomial content and scales so
    /// the leading coefficient of the highest derivative is 1.
    pub fn primitive(&self) -> DiffOp {
        if self.is_zero() {
            return self.clone();
        }
        let mut content: Option<MultiIndex> = None;
        for c in self.terms.values() {
            let m = c.monomial_content();
            content = Some(match content {
                None => m,
                Some(acc) => acc.meet(&m),
            });
        }
        let content = content.unwrap();
        let (_, top) = self.terms.iter().next_back().unwrap();
        let lc = top.leading_term().unwrap().1.inv().unwrap();
        let mut out = DiffOp::zero(&self.table);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &c.div_monomial(&content).unwrap().scale(&lc));
        }
        out
    }
}

fn fmt_deriv(table: &VarTable, alpha: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for v in table.vars() {
        match alpha.get(v) {
            0 => {}
            1 => parts.push(format!("d{}", table.name(v))),
            e => parts.push(format!("d{}^{}", table.name(v), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(a, c)| {
                let d = fmt_deriv(&self.table, a);
                match (d.is_empty(), c.num_terms() == 1 && c.leading_term().unwrap().1.is_one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => format!("{c}*{d}"),
                    (false, false) => format!("({c})*{d}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ_n θ^n D_n`: a θ-graded family of one-slot operators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedDiffOp {
    table: Arc<VarTable>,
    parts: BTreeMap<u32, DiffOp>,
}

impl GradedDiffOp {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        GradedDiffOp { table: table.clone(), parts: BTreeMap::new() }
    }

    pub fn from_parts(table: &Arc<VarTable>, parts: impl IntoIterator<Item = (u32, DiffOp)>) -> Self {
        let mut g = GradedDiffOp::zero(table);
        for (n, d) in parts {
            g.add_at(n, &d);
        }
        g
    }

    pub fn part(&self, n: u32) -> DiffOp {
        self.parts.get(&n).cloned().unwrap_or_else(|| DiffOp::zero(&self.table))
    }

    pub fn parts(&self) -> impl Iterator<Item = (u32, &DiffOp)> {
        self.parts.iter().map(|(k, d)| (*k, d))
    }

    pub fn add_at(&mut self, n: u32, d: &DiffOp) {
        let slot = self.parts.entry(n).or_insert_with(|| DiffOp::zero(&self.table));
        *slot = slot.add(d);
        if slot.is_zero() {
            self.parts.remove(&n);
        }
    }

    pub fn add(&self, o: &GradedDiffOp) -> GradedDiffOp {
        let mut out = self.clone();
        for (n, d) in &o.parts {
            out.add_at(*n, d);
        }
        out
    }

    pub fn sub(&self, o: &GradedDiffOp) -> GradedDiffOp {
        self.add(&o.scale_shift(&Scalar::from_int(-1), 0))
    }

    /// `θ^k · s · self`.
    pub fn scale_shift(&self, s: &Scalar, k: u32) -> GradedDiffOp {
        GradedDiffOp::from_parts(&self.table, self.parts.iter().map(|(n, d)| (n + k, d.scale(s))))
    }

    pub fn compose(&self, o: &GradedDiffOp) -> GradedDiffOp {
        let mut out = GradedDiffOp::zero(&self.table);
        for (a, p) in &self.parts {
            for (b, q) in &o.parts {
                out.add_at(a + b, &p.compose(q));
            }
        }
        out
    }

    pub fn commutator(&self, o: &GradedDiffOp) -> GradedDiffOp {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn apply(&self, f: &Poly) -> ThetaSeries {
        let mut s = ThetaSeries::zero(&self.table);
        for (n, d) in &self.parts {
            s.add_at(*n, &d.apply(f));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_commutator() {
        let t = VarTable::spacetime(1).unwrap();
        let d0 = DiffOp::partial(&t, t.x(0));
        let x0 = DiffOp::multiplication(Poly::var(&t, t.x(0)));
        assert_eq!(d0.commutator(&x0), DiffOp::identity(&t));
    }

    #[test]
    fn apply_examples() {
        let t = VarTable::spacetime(1).unwrap();
        let x0 = Poly::var(&t, t.x(0));
        let x1 = Poly::var(&t, t.x(1));
        assert!(DiffOp::partial(&t, t.x(0)).apply(&x1).is_zero());
        // x_R^0 = x0 (1 + θ ∂0) on x0
        let xr0 = GradedDiffOp::from_parts(
            &t,
            [
                (0, DiffOp::multiplication(x0.clone())),
                (1, DiffOp::term(x0.clone(), MultiIndex::unit(2, t.x(0)))),
            ],
        );
        let out = xr0.apply(&x0);
        assert_eq!(out.coeff(0), x0.pow(2));
        assert_eq!(out.coeff(1), x0);
    }

    #[test]
    fn euler_squared_normal_form() {
        let t = VarTable::spacetime(1).unwrap();
        let e = DiffOp::euler(&t);
        // E∘E = E + Σ x^α x^β ∂_α ∂_β
        let e2 = e.compose(&e);
        let falling = e2.sub(&e);
        for (alpha, c) in falling.terms() {
            assert_eq!(alpha.degree(), 2);
            assert_eq!(c.degree(), 2);
        }
        assert_eq!(falling.terms().count(), 3);
    }
}
