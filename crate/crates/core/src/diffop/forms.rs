//! Just enough exterior calculus for the twisted wedge of one-forms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::poly::Poly;
use crate::vars::{Var, VarTable};

/// `X = X^μ ∂_μ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    table: Arc<VarTable>,
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(comps: Vec<Poly>) -> Self {
        let table = comps[0].table().clone();
        assert_eq!(comps.len(), table.len());
        VectorField { table, comps }
    }

    /// The constant field `∂_v`.
    pub fn coordinate(table: &Arc<VarTable>, v: Var) -> Self {
        let comps = table.vars().map(|w| if w == v { Poly::one(table) } else { Poly::zero(table) }).collect();
        VectorField { table: table.clone(), comps }
    }

    /// The Euler field `x^σ ∂_σ`.
    pub fn euler(table: &Arc<VarTable>) -> Self {
        VectorField { table: table.clone(), comps: table.vars().map(|v| Poly::var(table, v)).collect() }
    }

    pub fn component(&self, v: Var) -> &Poly {
        &self.comps[v.0]
    }

    /// `X(p) = X^ν ∂_ν p`.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(&self.table);
        for v in self.table.vars() {
            if !self.comps[v.0].is_zero() {
                out = &out + &(&self.comps[v.0] * &p.partial(v));
            }
        }
        out
    }
}

/// `ω = ω_μ dx^μ`.
#[derive(Clone, PartialEq, Eq)]
pub struct OneForm {
    table: Arc<VarTable>,
    comps: Vec<Poly>,
}

impl OneForm {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        OneForm { table: table.clone(), comps: table.vars().map(|_| Poly::zero(table)).collect() }
    }

    /// `p · dx^v`.
    pub fn basis(table: &Arc<VarTable>, v: Var, p: Poly) -> Self {
        let mut w = OneForm::zero(table);
        w.comps[v.0] = p;
        w
    }

    pub fn dx(table: &Arc<VarTable>, v: Var) -> Self {
        Self::basis(table, v, Poly::one(table))
    }

    pub fn component(&self, v: Var) -> &Poly {
        &self.comps[v.0]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, o: &OneForm) -> OneForm {
        OneForm { table: self.table.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn mul_poly(&self, p: &Poly) -> OneForm {
        OneForm { table: self.table.clone(), comps: self.comps.iter().map(|c| c * p).collect() }
    }

    /// `(L_X ω)_μ = X^ν ∂_ν ω_μ + ω_ν ∂_μ X^ν`.
    pub fn lie_derivative(&self, x: &VectorField) -> OneForm {
        let comps = self
            .table
            .vars()
            .map(|mu| {
                let mut c = x.apply(&self.comps[mu.0]);
                for nu in self.table.vars() {
                    let dx = x.component(nu).partial(mu);
                    if !dx.is_zero() {
                        c = &c + &(&self.comps[nu.0] * &dx);
                    }
                }
                c
            })
            .collect();
        OneForm { table: self.table.clone(), comps }
    }

    /// `ω ∧ η` with components `ω_μ η_ν − ω_ν η_μ` for `μ < ν`.
    pub fn wedge(&self, o: &OneForm) -> TwoForm {
        let mut out = TwoForm::zero(&self.table);
        let n = self.table.len();
        for mu in 0..n {
            for nu in mu + 1..n {
                let c = &(&self.comps[mu] * &o.comps[nu]) - &(&self.comps[nu] * &o.comps[mu]);
                out.add(mu, nu, &c);
            }
        }
        out
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .table
            .vars()
            .filter(|v| !self.comps[v.0].is_zero())
            .map(|v| format!("({})*d{}", self.comps[v.0], self.table.name(v)))
            .collect();
        if parts.is_empty() { write!(f, "0") } else { write!(f, "{}", parts.join(" + ")) }
    }
}

/// A two-form in the basis `dx^μ ∧ dx^ν`, `μ < ν`.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoForm {
    table: Arc<VarTable>,
    comps: BTreeMap<(usize, usize), Poly>,
}

impl TwoForm {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        TwoForm { table: table.clone(), comps: BTreeMap::new() }
    }

    fn add(&mut self, mu: usize, nu: usize, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.comps.entry((mu, nu)).or_insert_with(|| Poly::zero(&self.table));
        *slot = &*slot + c;
        if slot.is_zero() {
            self.comps.remove(&(mu, nu));
        }
    }

    pub fn plus(&self, o: &TwoForm) -> TwoForm {
        let mut out = self.clone();
        for ((a, b), c) in &o.comps {
            out.add(*a, *b, c);
        }
        out
    }

    pub fn component(&self, mu: Var, nu: Var) -> Poly {
        let (a, b, sign) = if mu.0 < nu.0 { (mu.0, nu.0, 1) } else { (nu.0, mu.0, -1) };
        self.comps
            .get(&(a, b))
            .map(|p| p.scale(&crate::Scalar::from_int(sign)))
            .unwrap_or_else(|| Poly::zero(&self.table))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }
}

impl fmt::Debug for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|((a, b), c)| format!("({c})*d{}^d{}", self.table.name(Var(*a)), self.table.name(Var(*b))))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
