//! Finite θ-graded series with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::vars::VarTable;

/// `Σ_n θ^n · c_n`, finitely supported.
///
/// With `cap = Some(N)` the series is only meaningful modulo `θ^{N+1}` and
/// every operation truncates to that order; with `cap = None` it is exact.
#[derive(Clone, PartialEq, Eq)]
pub struct ThetaSeries {
    table: Arc<VarTable>,
    coeffs: BTreeMap<u32, Poly>,
    cap: Option<u32>,
}

impl ThetaSeries {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        ThetaSeries { table: table.clone(), coeffs: BTreeMap::new(), cap: None }
    }

    pub fn from_poly(p: Poly) -> Self {
        let mut s = ThetaSeries::zero(p.table());
        s.add_at(0, &p);
        s
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    /// Sets the truncation order, dropping any higher coefficients.
    pub fn with_cap(mut self, cap: Option<u32>) -> Self {
        let cap = match (self.cap, cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.cap = cap;
        if let Some(n) = cap {
            self.coeffs.retain(|&k, _| k <= n);
        }
        self
    }

    pub fn coeff(&self, n: u32) -> Poly {
        self.coeffs.get(&n).cloned().unwrap_or_else(|| Poly::zero(&self.table))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &Poly)> {
        self.coeffs.iter().map(|(k, p)| (*k, p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest order with a nonzero coefficient.
    pub fn max_order(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    fn in_range(&self, n: u32) -> bool {
        self.cap.is_none_or(|c| n <= c)
    }

    /// `c_n += p`.
    pub fn add_at(&mut self, n: u32, p: &Poly) {
        if p.is_zero() || !self.in_range(n) {
            return;
        }
        let slot = self.coeffs.entry(n).or_insert_with(|| Poly::zero(&self.table));
        *slot = &*slot + p;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn add(&self, o: &ThetaSeries) -> ThetaSeries {
        let mut out = self.clone().with_cap(o.cap);
        for (k, p) in &o.coeffs {
            out.add_at(*k, p);
        }
        out
    }

    pub fn sub(&self, o: &ThetaSeries) -> ThetaSeries {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ThetaSeries {
        let mut out = ThetaSeries { table: self.table.clone(), coeffs: BTreeMap::new(), cap: self.cap };
        for (k, p) in &self.coeffs {
            out.add_at(*k, &p.scale(c));
        }
        out
    }

    /// Cauchy product, truncated at the smaller cap.
    pub fn mul(&self, o: &ThetaSeries) -> ThetaSeries {
        let mut out = ThetaSeries::zero(&self.table).with_cap(self.cap).with_cap(o.cap);
        for (a, p) in &self.coeffs {
            for (b, q) in &o.coeffs {
                if out.in_range(a + b) {
                    out.add_at(a + b, &(p * q));
                }
            }
        }
        out
    }

    /// Maps every coefficient through `f`, keeping the grading.
    pub fn map(&self, mut f: impl FnMut(&Poly) -> Poly) -> ThetaSeries {
        let mut out = ThetaSeries { table: self.table.clone(), coeffs: BTreeMap::new(), cap: self.cap };
        for (k, p) in &self.coeffs {
            let q = f(p);
            if out.table.as_ref() != q.table().as_ref() {
                out.table = q.table().clone();
            }
            out.add_at(*k, &q);
        }
        out
    }

    /// Shifts every order up by `k` (multiplication by `θ^k`).
    pub fn shift(&self, k: u32) -> ThetaSeries {
        let mut out = ThetaSeries { table: self.table.clone(), coeffs: BTreeMap::new(), cap: self.cap };
        for (n, p) in &self.coeffs {
            out.add_at(n + k, p);
        }
        out
    }
}

impl fmt::Display for ThetaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (k, p)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{p}")?,
                1 => write!(f, "theta*({p})")?,
                _ => write!(f, "theta^{k}*({p})")?,
            }
        }
        if let Some(c) = self.cap {
            write!(f, " + O(theta^{})", c + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ThetaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
