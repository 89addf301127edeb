//! Rational functions `num / den` with a factored denominator.
//!
//! Denominators are kept as a product of powers of distinct factors so that
//! repeated differentiation raises exponents instead of squaring the whole
//! denominator. Reduction only cancels factors that divide the numerator
//! exactly; there is no general multivariate gcd.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::multi::MultiIndex;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::vars::{Var, VarTable};

#[derive(Clone)]
pub struct RationalFn {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        VarTable::ensure_same(num.table(), den.table())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let table = num.table().clone();
        let content = den.monomial_content();
        let rest = den.div_monomial(&content).expect("content divides");
        let mut num = num;
        let mut factors = Vec::new();
        if rest.is_constant() {
            num = num.scale(&rest.constant_term().inv().expect("nonzero"));
        } else {
            // make the factor monic in its leading term
            let lc = rest.leading_term().unwrap().1.clone();
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            factors.push((rest.scale(&inv), 1));
        }
        for v in table.vars() {
            let e = content.get(v);
            if e > 0 {
                factors.push((Poly::var(&table, v), e));
            }
        }
        let mut r = RationalFn { num, den: factors };
        r.reduce();
        Ok(r)
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFn { num: p, den: Vec::new() }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.num.table()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Denominator expanded into a single polynomial.
    pub fn denominator(&self) -> Poly {
        let mut d = Poly::one(self.table());
        for (f, e) in &self.den {
            d = &d * &f.pow(*e);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.div_exact(f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    fn exponent_of(&self, f: &Poly) -> u32 {
        self.den.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e)
    }

    /// Brings two values onto a common factored denominator.
    fn common(&self, o: &RationalFn) -> (Poly, Poly, Vec<(Poly, u32)>) {
        let mut den: Vec<(Poly, u32)> = self.den.clone();
        for (f, e) in &o.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, e0)) => *e0 = (*e0).max(*e),
                None => den.push((f.clone(), *e)),
            }
        }
        let lift = |r: &RationalFn| {
            let mut n = r.num.clone();
            for (f, e) in &den {
                let missing = e - r.exponent_of(f);
                if missing > 0 {
                    n = &n * &f.pow(missing);
                }
            }
            n
        };
        (lift(self), lift(o), den)
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        let (a, b, den) = self.common(o);
        let mut r = RationalFn { num: &a + &b, den };
        r.reduce();
        r
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, e0)) => *e0 += e,
                None => den.push((f.clone(), *e)),
            }
        }
        let mut r = RationalFn { num: &self.num * &o.num, den };
        r.reduce();
        r
    }

    pub fn mul_poly(&self, p: &Poly) -> RationalFn {
        let mut r = RationalFn { num: &self.num * p, den: self.den.clone() };
        r.reduce();
        r
    }

    /// Divides by a nonzero polynomial.
    pub fn div_poly(&self, p: &Poly) -> Result<RationalFn> {
        let q = RationalFn::new(Poly::one(self.table()), p.clone())?;
        Ok(self.mul(&q))
    }

    pub fn scale(&self, c: &Scalar) -> RationalFn {
        RationalFn { num: self.num.scale(c), den: if c.is_zero() { vec![] } else { self.den.clone() } }
    }

    /// Quotient-rule derivative, reduced.
    pub fn partial(&self, v: Var) -> RationalFn {
        let moving: Vec<usize> = (0..self.den.len()).filter(|&i| self.den[i].0.uses(v)).collect();
        let prod_except = |skip: Option<usize>| {
            let mut p = Poly::one(self.table());
            for &i in &moving {
                if Some(i) != skip {
                    p = &p * &self.den[i].0;
                }
            }
            p
        };
        let mut num = &self.num.partial(v) * &prod_except(None);
        for &i in &moving {
            let (f, e) = &self.den[i];
            let t = &(&self.num * &f.partial(v)) * &prod_except(Some(i));
            num.add_scaled(&t, &Scalar::from_int(-(*e as i64)));
        }
        let mut den = self.den.clone();
        for &i in &moving {
            den[i].1 += 1;
        }
        let mut r = RationalFn { num, den };
        r.reduce();
        r
    }

    pub fn derivative(&self, alpha: &MultiIndex) -> RationalFn {
        alpha.to_vars().into_iter().fold(self.clone(), |acc, v| acc.partial(v))
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.denominator() == &o.num * &self.denominator()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(p, e)| {
                let base = if p.num_terms() == 1 { p.to_string() } else { format!("({p})") };
                if *e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect();
        write!(f, "({})/({})", self.num, parts.join("*"))
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_product_derivatives() {
        let t = VarTable::spacetime(2).unwrap();
        let x = |m| Poly::var(&t, t.x(m));
        let h = RationalFn::new(Poly::one(&t), &x(1) * &x(2)).unwrap();
        assert!(h.partial(t.x(0)).is_zero());
        let expect = RationalFn::new(Poly::constant(&t, Scalar::from_int(-1)), &x(1).pow(2) * &x(2)).unwrap();
        assert_eq!(h.partial(t.x(1)), expect);
        assert_eq!(h.partial(t.x(1)).to_string(), "(-1)/(x1^2*x2)");
        // x^k ∂_k h = -2 h
        let euler = h.partial(t.x(1)).mul_poly(&x(1)).add(&h.partial(t.x(2)).mul_poly(&x(2)));
        assert_eq!(euler, h.scale(&Scalar::from_int(-2)));
    }

    #[test]
    fn zero_denominator_rejected() {
        let t = VarTable::spacetime(1).unwrap();
        assert_eq!(RationalFn::new(Poly::one(&t), Poly::zero(&t)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn denominators_stay_factored() {
        let t = VarTable::spacetime(2).unwrap();
        let x = |m| Poly::var(&t, t.x(m));
        let r2 = &x(1).pow(2) + &x(2).pow(2);
        let h = RationalFn::new(Poly::one(&t), r2.clone()).unwrap();
        let d4 = h.derivative(&MultiIndex::from_vec(vec![0, 4, 0]));
        // exponent grows linearly: 1/(r2)^5 at most
        assert!(d4.denominator().degree() <= 10);
        let back = RationalFn::new(d4.numerator().clone(), d4.denominator()).unwrap();
        assert_eq!(back, d4);
    }
}
