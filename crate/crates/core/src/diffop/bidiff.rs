use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::multi::MultiIndex;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::ThetaSeries;
use crate::vars::VarTable;

type Key = (u32, MultiIndex, MultiIndex);

/// `Σ θ^k · m(x) · (∂^L f)(∂^R g)`.
///
/// The middle coefficient `m` is a function of the common evaluation point
/// only; derivatives in `L` and `R` never act on it.
#[derive(Clone, PartialEq, Eq)]
pub struct BiDiffOp {
    table: Arc<VarTable>,
    terms: BTreeMap<Key, Poly>,
}

impl BiDiffOp {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        BiDiffOp { table: table.clone(), terms: BTreeMap::new() }
    }

    /// The pointwise product `(∅, 1, ∅)` at grade 0.
    pub fn identity(table: &Arc<VarTable>) -> Self {
        let n = table.len();
        let mut b = BiDiffOp::zero(table);
        b.add_term(0, MultiIndex::zero(n), Poly::one(table), MultiIndex::zero(n));
        b
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn add_term(&mut self, grade: u32, left: MultiIndex, mid: Poly, right: MultiIndex) {
        if mid.is_zero() {
            return;
        }
        let key = (grade, left, right);
        let slot = self.terms.entry(key.clone()).or_insert_with(|| Poly::zero(&self.table));
        *slot = &*slot + &mid;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Terms as `(grade, left, mid, right)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &MultiIndex, &Poly, &MultiIndex)> {
        self.terms.iter().map(|((k, l, r), m)| (*k, l, m, r))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn grades(&self) -> Vec<u32> {
        let mut g: Vec<u32> = self.terms.keys().map(|k| k.0).collect();
        g.dedup();
        g
    }

    /// Only the terms of grade `n`.
    pub fn at_grade(&self, n: u32) -> BiDiffOp {
        BiDiffOp {
            table: self.table.clone(),
            terms: self.terms.iter().filter(|(k, _)| k.0 == n).map(|(k, m)| (k.clone(), m.clone())).collect(),
        }
    }

    pub fn add(&self, o: &BiDiffOp) -> BiDiffOp {
        let mut out = self.clone();
        for ((k, l, r), m) in &o.terms {
            out.add_term(*k, l.clone(), m.clone(), r.clone());
        }
        out
    }

    pub fn sub(&self, o: &BiDiffOp) -> BiDiffOp {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> BiDiffOp {
        let mut out = BiDiffOp::zero(&self.table);
        for ((k, l, r), m) in &self.terms {
            out.add_term(*k, l.clone(), m.scale(s), r.clone());
        }
        out
    }

    /// Exchanges the roles of the two slots: `B(f,g) ↦ B(g,f)`.
    pub fn swapped(&self) -> BiDiffOp {
        let mut out = BiDiffOp::zero(&self.table);
        for ((k, l, r), m) in &self.terms {
            out.add_term(*k, r.clone(), m.clone(), l.clone());
        }
        out
    }

    /// Product of two operators whose derivatives act on independent copies
    /// `y` and `w` of the point: grades and indices add, middles multiply.
    pub fn juxtapose(&self, o: &BiDiffOp) -> BiDiffOp {
        let mut out = BiDiffOp::zero(&self.table);
        for ((k1, l1, r1), m1) in &self.terms {
            for ((k2, l2, r2), m2) in &o.terms {
                out.add_term(k1 + k2, l1.add(l2), m1 * m2, r1.add(r2));
            }
        }
        out
    }

    /// `self^n / n!` under [`juxtapose`](Self::juxtapose): the n-th Taylor
    /// term of `exp(self)`.
    pub fn exp_term(&self, n: u32) -> BiDiffOp {
        let mut acc = BiDiffOp::identity(&self.table);
        for _ in 0..n {
            acc = acc.juxtapose(self);
        }
        acc.scale(&Scalar::inv_factorial(n))
    }

    /// `Σ θ^k m (∂^L f)(∂^R g)`, derivatives of `f` and `g` cached per index.
    pub fn apply(&self, f: &Poly, g: &Poly) -> ThetaSeries {
        let mut df: HashMap<&MultiIndex, Poly> = HashMap::new();
        let mut dg: HashMap<&MultiIndex, Poly> = HashMap::new();
        let mut out = ThetaSeries::zero(&self.table);
        for ((k, l, r), m) in &self.terms {
            let a = df.entry(l).or_insert_with(|| f.derivative(l));
            if a.is_zero() {
                continue;
            }
            let b = dg.entry(r).or_insert_with(|| g.derivative(r));
            if b.is_zero() {
                continue;
            }
            out.add_at(*k, &(&(m * &*a) * &*b));
        }
        out
    }
}

impl fmt::Display for BiDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((k, l, r), m)| format!("theta^{k}*({m})*[{l:?} | {r:?}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BiDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term_evaluation() {
        let t = VarTable::spacetime(1).unwrap();
        let x0 = Poly::var(&t, t.x(0));
        let x1 = Poly::var(&t, t.x(1));
        let mut b = BiDiffOp::zero(&t);
        b.add_term(1, MultiIndex::unit(2, t.x(0)), x1.clone(), MultiIndex::unit(2, t.x(1)));
        let s = b.apply(&x0, &x1);
        assert_eq!(s.coeff(1), x1);
        assert!(s.coeff(0).is_zero());
    }

    #[test]
    fn unit_law_and_identity() {
        let t = VarTable::spacetime(1).unwrap();
        let x0 = Poly::var(&t, t.x(0));
        let x1 = Poly::var(&t, t.x(1));
        let id = BiDiffOp::identity(&t);
        assert_eq!(id.apply(&x0, &x1), ThetaSeries::from_poly(&x0 * &x1));
        let mut b = id.clone();
        b.add_term(1, MultiIndex::unit(2, t.x(0)), x1.clone(), MultiIndex::unit(2, t.x(1)));
        b.add_term(2, MultiIndex::from_vec(vec![1, 1]), x0.clone(), MultiIndex::zero(2));
        let g = &x1.pow(2) + &x0;
        assert_eq!(b.apply(&Poly::one(&t), &g), ThetaSeries::from_poly(g));
    }
}
