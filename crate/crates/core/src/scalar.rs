//! Exact Gaussian rationals `re + i·im` with `re, im ∈ ℚ`.

use std::fmt;
use std::str::FromStr;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact element of ℚ(i).
///
/// Both components are kept in lowest terms with a positive denominator,
/// which `BigRational` guarantees, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Scalar { re: &self.re / &norm, im: -(&self.im / &norm) })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        other.inv().map(|inv| self * &inv).ok_or(Error::DivisionByZero)
    }

    /// `1/n!` as a scalar.
    pub fn inv_factorial(n: u32) -> Self {
        let mut f = BigInt::one();
        for k in 2..=n {
            f *= BigInt::from(k);
        }
        Scalar::from_rational(BigRational::new(BigInt::one(), f))
    }

    /// True when printing needs parentheses in a product (both parts nonzero).
    pub(crate) fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }

    /// True when the scalar prints with a leading minus sign and is not compound.
    pub(crate) fn is_negative_simple(&self) -> bool {
        if self.is_compound() {
            return false;
        }
        if self.im.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn fmt_imag(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_one() {
        write!(f, "i")
    } else if (-q).is_one() {
        write!(f, "-i")
    } else {
        fmt_rational(q, f)?;
        write!(f, "*i")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => fmt_imag(&self.im, f),
            (false, false) => {
                write!(f, "(")?;
                fmt_rational(&self.re, f)?;
                if self.im.is_negative() {
                    write!(f, " - ")?;
                    fmt_imag(&-self.im.clone(), f)?;
                } else {
                    write!(f, " + ")?;
                    fmt_imag(&self.im, f)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses an unsigned real literal `p` or `p/q` of decimal digits.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed rational literal `{s}`"));
        let digits = |t: &str| -> Result<BigInt> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (digits(n)?, digits(d)?),
            None => (digits(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_rational(BigRational::new(num, den)))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}
