//! Explicit measure functions `h = P^s · R` with `P` a polynomial, `s`
//! rational and `R` a rational function. The class is closed under
//! differentiation: `∂(P^s R) = P^s (s ∂P·R/P + ∂R)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{conditions_at_order, format_condition};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::multi::MultiIndex;
use crate::poly::Poly;
use crate::ratfn::RationalFn;
use crate::scalar::Scalar;
use crate::star::StarProduct;
use crate::vars::{Space, VarTable};

const CLASS: &str = "P^s * rational function";

#[derive(Clone, Debug)]
pub struct MeasureCandidate {
    name: String,
    base: Poly,
    exponent: BigRational,
    factor: RationalFn,
}

impl MeasureCandidate {
    /// `h = base^exponent · factor`.
    pub fn new(name: impl Into<String>, base: Poly, exponent: BigRational, factor: RationalFn) -> Result<Self> {
        let name = name.into();
        if base.table().space() != Space::Spacetime {
            return Err(Error::UnsupportedCandidate { class: CLASS.into(), reason: format!("{name} is not a spacetime function") });
        }
        VarTable::ensure_same(base.table(), factor.table())?;
        if base.is_zero() && !exponent.is_zero() {
            return Err(Error::UnsupportedCandidate { class: CLASS.into(), reason: format!("{name} has a zero base") });
        }
        Ok(MeasureCandidate { name, base, exponent, factor })
    }

    pub fn rational(name: impl Into<String>, h: RationalFn) -> Result<Self> {
        let one = Poly::one(h.table());
        Self::new(name, one, BigRational::zero(), h)
    }

    /// `(Π_i x^i)^{-1}`.
    pub fn inverse_product(d: usize) -> Result<Self> {
        let t = VarTable::spacetime(d)?;
        let den = t.spatial().fold(Poly::one(&t), |acc, k| &acc * &Poly::var(&t, k));
        Self::rational("(x1*...*xd)^-1", RationalFn::new(Poly::one(&t), den)?)
    }

    /// `(Σ_i (x^i)^k)^{-d/k}`; `k = 2` gives `r^{-d}`.
    pub fn power_sum(d: usize, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("power-sum exponent k must be positive".into()));
        }
        let t = VarTable::spacetime(d)?;
        let base = t.spatial().fold(Poly::zero(&t), |acc, v| &acc + &Poly::var(&t, v).pow(k));
        let s = BigRational::new(BigInt::from(-(d as i64)), BigInt::from(k));
        let name = if k == 2 { "r^-d".to_string() } else { format!("(sum xi^{k})^(-d/{k})") };
        Self::new(name, base, s, RationalFn::from_poly(Poly::one(&t)))
    }

    pub fn radial(d: usize) -> Result<Self> {
        Self::power_sum(d, 2)
    }

    /// The candidates `r^{-d}`, `(Π x^i)^{-1}` and `(Σ (x^i)^4)^{-d/4}`.
    pub fn standard(d: usize) -> Result<Vec<Self>> {
        Ok(vec![Self::radial(d)?, Self::inverse_product(d)?, Self::power_sum(d, 4)?])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.base.table()
    }

    /// `R_α` with `∂^α h = P^s R_α`.
    pub fn derivative_factor(&self, alpha: &MultiIndex) -> Result<RationalFn> {
        let s = Scalar::from_rational(self.exponent.clone());
        let mut r = self.factor.clone();
        for v in alpha.to_vars() {
            let dr = r.partial(v);
            if s.is_zero() {
                r = dr;
                continue;
            }
            let dp = self.base.partial(v);
            let from_base = r.mul_poly(&dp).div_poly(&self.base)?.scale(&s);
            r = from_base.add(&dr);
        }
        Ok(r)
    }

    /// `Σ c_α R_α` for `D = Σ c_α ∂^α`, so that `D h = P^s · residual`.
    pub fn residual(&self, d: &DiffOp) -> Result<RationalFn> {
        VarTable::ensure_same(self.table(), d.table())?;
        let mut acc = RationalFn::from_poly(Poly::zero(self.table()));
        for (a, c) in d.terms() {
            acc = acc.add(&self.derivative_factor(a)?.mul_poly(c));
        }
        Ok(acc)
    }
}

impl fmt::Display for MeasureCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Debug)]
pub struct ConditionResidual {
    pub condition: String,
    /// `D h / P^s`; zero when the condition holds.
    pub residual: RationalFn,
}

impl ConditionResidual {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct CandidateReport {
    pub candidate: String,
    pub order: u32,
    pub conditions: Vec<ConditionResidual>,
}

impl CandidateReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(ConditionResidual::passed)
    }
}

/// Substitutes the candidate into every condition of the given θ-order.
pub fn check_candidate(m: &MeasureCandidate, s: &StarProduct, order: u32) -> Result<CandidateReport> {
    if m.table().dim() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: m.table().dim() });
    }
    let set = conditions_at_order(s, order)?;
    let conditions = set
        .reduced()
        .iter()
        .map(|d| {
            Ok(ConditionResidual { condition: format!("{} = 0", format_condition(d)), residual: m.residual(d)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CandidateReport { candidate: m.name.clone(), order, conditions })
}
