//! Sparse multivariate polynomials over ℚ(i).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multi::MultiIndex;
use crate::scalar::Scalar;
use crate::vars::{Var, VarTable};

/// A polynomial: exponent vector → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Scalar::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: Scalar) -> Self {
        Self::monomial(table, MultiIndex::zero(table.len()), c)
    }

    pub fn var(table: &Arc<VarTable>, v: Var) -> Self {
        Self::monomial(table, MultiIndex::unit(table.len(), v), Scalar::one())
    }

    pub fn monomial(table: &Arc<VarTable>, m: MultiIndex, c: Scalar) -> Self {
        assert_eq!(m.len(), table.len(), "exponent vector length does not match table");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { table: table.clone(), terms }
    }

    /// Builds a polynomial from raw terms, dropping zeros and merging repeats.
    pub fn from_terms(table: &Arc<VarTable>, it: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Self {
        let mut p = Poly::zero(table);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(MultiIndex::is_zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&MultiIndex::zero(self.table.len()))
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&MultiIndex, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.get(v) > 0)
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Scalar) {
        assert_same(&self.table, &other.table);
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), &(a * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        Poly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &MultiIndex) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.add(m), a.clone())).collect(),
        }
    }

    /// Divides every term by `m`; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &MultiIndex) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, a) in &self.terms {
            terms.insert(k.checked_sub(m)?, a.clone());
        }
        Some(Poly { table: self.table.clone(), terms })
    }

    /// Greatest common monomial divisor of all terms (zero vector for 0).
    pub fn monomial_content(&self) -> MultiIndex {
        let mut it = self.terms.keys();
        match it.next() {
            None => MultiIndex::zero(self.table.len()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    pub fn checked_add(&self, o: &Poly) -> Result<Poly> {
        VarTable::ensure_same(&self.table, &o.table)?;
        Ok(self + o)
    }

    pub fn checked_sub(&self, o: &Poly) -> Result<Poly> {
        VarTable::ensure_same(&self.table, &o.table)?;
        Ok(self - o)
    }

    pub fn checked_mul(&self, o: &Poly) -> Result<Poly> {
        VarTable::ensure_same(&self.table, &o.table)?;
        Ok(self * o)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.table);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative `∂p/∂v`.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, a) in &self.terms {
            let e = m.get(v);
            if e > 0 {
                let m2 = m.with(v, -1).unwrap();
                out.terms.insert(m2, a * &Scalar::from_int(e as i64));
            }
        }
        out
    }

    /// Partial derivative by variable name.
    pub fn partial_named(&self, name: &str) -> Result<Poly> {
        Ok(self.partial(self.table.lookup(name)?))
    }

    /// `∂^α p` for a multi-index `α`.
    pub fn derivative(&self, alpha: &MultiIndex) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, a) in &self.terms {
            let Some(rest) = m.checked_sub(alpha) else { continue };
            // falling factorial m_i (m_i - 1) ... (m_i - α_i + 1) per variable
            let mut f: i64 = 1;
            for (&mi, &ai) in m.as_slice().iter().zip(alpha.as_slice()) {
                for j in 0..ai {
                    f *= (mi - j) as i64;
                }
            }
            out.terms.insert(rest, a * &Scalar::from_int(f));
        }
        out
    }

    /// Applies `c_m ↦ w(m)·c_m` term by term.
    pub fn map_weights(&self, mut w: impl FnMut(&MultiIndex) -> Scalar) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &(a * &w(m)));
        }
        out
    }

    /// Simultaneous substitution `v ↦ map[v]`, landing in `target`.
    ///
    /// Every variable that occurs in `self` must be mapped, and every image must
    /// be written over `target`.
    pub fn substitute(&self, map: &BTreeMap<Var, Poly>, target: &Arc<VarTable>) -> Result<Poly> {
        for img in map.values() {
            VarTable::ensure_same(img.table(), target)?;
        }
        for v in self.table.vars() {
            if self.uses(v) && !map.contains_key(&v) {
                return Err(Error::UnmappedVariable(self.table.name(v).to_string()));
            }
        }
        // cache of powers per variable
        let mut powers: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero(target);
        for (m, a) in &self.terms {
            let mut term = Poly::constant(target, a.clone());
            for v in self.table.vars() {
                let e = m.get(v);
                if e == 0 {
                    continue;
                }
                let pw = powers.entry((v, e)).or_insert_with(|| map[&v].pow(e));
                term = &term * pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert_same(&self.table, &d.table);
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.table);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.checked_sub(&dm)?;
            let qc = c / &dc;
            let t = Poly::monomial(&self.table, qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// `∫_{[-1,1]^n} p`, exact.
    pub fn integrate_unit_box(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, a) in &self.terms {
            if m.as_slice().iter().any(|e| e % 2 == 1) {
                continue;
            }
            let mut w = Scalar::one();
            for &e in m.as_slice() {
                w = &w * &Scalar::ratio(2, e as i64 + 1);
            }
            acc += &(a * &w);
        }
        acc
    }

    fn fmt_monomial(&self, m: &MultiIndex) -> String {
        let mut parts = Vec::new();
        for v in self.table.vars() {
            match m.get(v) {
                0 => {}
                1 => parts.push(self.table.name(v).to_string()),
                e => parts.push(format!("{}^{}", self.table.name(v), e)),
            }
        }
        parts.join("*")
    }
}

fn assert_same(a: &Arc<VarTable>, b: &Arc<VarTable>) {
    if let Err(e) = VarTable::ensure_same(a, b) {
        panic!("{e}");
    }
}

impl fmt::Display for Poly {
    /// Canonical form: terms in descending graded-lex order, `theta`-free.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = self.fmt_monomial(m);
            let negative = c.is_negative_simple();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_same(&self.table, &o.table);
        let (mut big, small) = if self.terms.len() >= o.terms.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_same(&self.table, &o.table);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_same(&self.table, &o.table);
        let mut acc: std::collections::HashMap<MultiIndex, Scalar> = std::collections::HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let c = c1 * c2;
                acc.entry(m1.add(m2))
                    .and_modify(|e| *e += &c)
                    .or_insert(c);
            }
        }
        Poly {
            table: self.table.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
