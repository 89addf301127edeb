//! Truncated Fock-space matrices for `x̂0 = Σ a_i† a_i`, `x̂^i = a_i†`.
//!
//! Matrix entries are sums of rational multiples of square roots of
//! squarefree integers, so every commutator is compared exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `Σ q_s √s` over squarefree `s`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Surd(BTreeMap<u64, BigRational>);

impl Surd {
    pub fn zero() -> Self {
        Surd(BTreeMap::new())
    }

    pub fn from_int(n: i64) -> Self {
        let mut s = Surd::zero();
        s.push(1, BigRational::from_integer(BigInt::from(n)));
        s
    }

    /// `√n` in canonical form.
    pub fn sqrt(n: u64) -> Self {
        let (mut k, mut s) = (1u64, n);
        let mut p = 2u64;
        while p * p <= s {
            while s % (p * p) == 0 {
                s /= p * p;
                k *= p;
            }
            p += 1;
        }
        let mut out = Surd::zero();
        if n > 0 {
            out.push(s, BigRational::from_integer(BigInt::from(k)));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, s: u64, q: BigRational) {
        let slot = self.0.entry(s).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.0.remove(&s);
        }
    }
}

impl Add<&Surd> for &Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        let mut out = self.clone();
        for (s, q) in &o.0 {
            out.push(*s, q.clone());
        }
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd(self.0.iter().map(|(s, q)| (*s, -q)).collect())
    }
}

impl Sub<&Surd> for &Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        self + &(-o)
    }
}

impl Mul<&Surd> for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (a, p) in &self.0 {
            for (b, q) in &o.0 {
                // √a √b = g √((a/g)(b/g)) for squarefree a, b
                let g = a.gcd(b);
                let factor = BigRational::from_integer(BigInt::from(g));
                out.push((a / g) * (b / g), p * q * factor);
            }
        }
        out
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, q)| if *s == 1 { q.to_string() } else if q.is_one() { format!("sqrt({s})") } else { format!("{q}*sqrt({s})") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sparse matrix on the occupation basis, `(row, col) → entry`.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Op {
    entries: BTreeMap<(usize, usize), Surd>,
}

impl Op {
    fn zero() -> Self {
        Op { entries: BTreeMap::new() }
    }

    fn push(&mut self, r: usize, c: usize, v: Surd) {
        let slot = self.entries.entry((r, c)).or_insert_with(Surd::zero);
        *slot = &*slot + &v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    fn add(&self, o: &Op) -> Op {
        let mut out = self.clone();
        for ((r, c), v) in &o.entries {
            out.push(*r, *c, v.clone());
        }
        out
    }

    fn sub(&self, o: &Op) -> Op {
        let mut out = self.clone();
        for ((r, c), v) in &o.entries {
            out.push(*r, *c, -v);
        }
        out
    }

    fn mul(&self, o: &Op) -> Op {
        let mut by_row: BTreeMap<usize, Vec<(usize, &Surd)>> = BTreeMap::new();
        for ((r, c), v) in &o.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = Op::zero();
        for ((r, k), v) in &self.entries {
            for (c, w) in by_row.get(k).into_iter().flatten() {
                out.push(*r, *c, v * w);
            }
        }
        out
    }

    fn commutator(&self, o: &Op) -> Op {
        self.mul(o).sub(&o.mul(self))
    }

    fn identity(n: usize) -> Op {
        let mut out = Op::zero();
        for i in 0..n {
            out.push(i, i, Surd::from_int(1));
        }
        out
    }

    /// Columns (input states) on which the operator is nonzero.
    fn support(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.entries.keys().map(|(_, c)| *c).collect();
        cols.sort_unstable();
        cols.dedup();
        cols
    }
}

struct Basis {
    d: usize,
    cutoff: u32,
}

impl Basis {
    fn len(&self) -> usize {
        (self.cutoff as usize + 1).pow(self.d as u32)
    }

    fn state(&self, mut idx: usize) -> Vec<u32> {
        let base = self.cutoff as usize + 1;
        (0..self.d)
            .map(|_| {
                let n = (idx % base) as u32;
                idx /= base;
                n
            })
            .collect()
    }

    fn index(&self, n: &[u32]) -> usize {
        let base = self.cutoff as usize + 1;
        n.iter().rev().fold(0, |acc, &k| acc * base + k as usize)
    }

    /// `a_i†`, truncated at the cutoff.
    fn creation(&self, i: usize) -> Op {
        let mut op = Op::zero();
        for c in 0..self.len() {
            let mut n = self.state(c);
            if n[i] < self.cutoff {
                let amp = Surd::sqrt(n[i] as u64 + 1);
                n[i] += 1;
                op.push(self.index(&n), c, amp);
            }
        }
        op
    }

    fn annihilation(&self, i: usize) -> Op {
        let mut op = Op::zero();
        for c in 0..self.len() {
            let mut n = self.state(c);
            if n[i] > 0 {
                let amp = Surd::sqrt(n[i] as u64);
                n[i] -= 1;
                op.push(self.index(&n), c, amp);
            }
        }
        op
    }
}

/// One operator identity on the truncated space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockCheck {
    pub name: String,
    /// Holds on every state with total occupation at most `M − 1`.
    pub holds_below_cutoff: bool,
    /// Occupation vectors of the input states where the identity fails.
    pub violations: Vec<Vec<u32>>,
    /// Every violating state has some occupation equal to the cutoff.
    pub confined_to_top: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockReport {
    pub d: usize,
    pub cutoff: u32,
    pub states: usize,
    /// `[X0, X^i] = X^i` and `[X^i, X^j] = 0`.
    pub algebra: Vec<FockCheck>,
    /// `[a_i, a_j†] = δ_ij`, for comparison: truncation breaks it on the top states.
    pub canonical: Vec<FockCheck>,
}

impl FockReport {
    /// The coordinate algebra holds below the cutoff and any failure sits on
    /// top occupation states.
    pub fn passed(&self) -> bool {
        self.algebra.iter().all(|c| c.holds_below_cutoff && c.confined_to_top)
    }
}

fn classify(basis: &Basis, name: String, defect: &Op) -> FockCheck {
    let violations: Vec<Vec<u32>> = defect.support().into_iter().map(|c| basis.state(c)).collect();
    let holds_below_cutoff = violations.iter().all(|n| n.iter().sum::<u32>() >= basis.cutoff);
    let confined_to_top = violations.iter().all(|n| n.contains(&basis.cutoff));
    FockCheck { name, holds_below_cutoff, violations, confined_to_top }
}

/// Builds `X0 = Σ a_i† a_i` and `X^i = a_i†` with each `n_i ≤ M` and checks
/// the κ-Minkowski relations exactly.
pub fn fock_check(d: usize, cutoff: u32) -> Result<FockReport> {
    if cutoff < 2 {
        return Err(Error::InvalidArgument(format!("Fock cutoff must be at least 2, got {cutoff}")));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("dimension d must be at least 1".into()));
    }
    let basis = Basis { d, cutoff };
    let create: Vec<Op> = (0..d).map(|i| basis.creation(i)).collect();
    let destroy: Vec<Op> = (0..d).map(|i| basis.annihilation(i)).collect();
    let x0 = (0..d).fold(Op::zero(), |acc, i| acc.add(&create[i].mul(&destroy[i])));
    let mut algebra = Vec::new();
    for i in 0..d {
        let defect = x0.commutator(&create[i]).sub(&create[i]);
        algebra.push(classify(&basis, format!("[X0, X{}] = X{}", i + 1, i + 1), &defect));
    }
    for i in 0..d {
        for j in i + 1..d {
            let defect = create[i].commutator(&create[j]);
            algebra.push(classify(&basis, format!("[X{}, X{}] = 0", i + 1, j + 1), &defect));
        }
    }
    let id = Op::identity(basis.len());
    let mut canonical = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let c = destroy[i].commutator(&create[j]);
            let defect = if i == j { c.sub(&id) } else { c };
            canonical.push(classify(&basis, format!("[a{}, a{}+] = {}", i + 1, j + 1, u8::from(i == j)), &defect));
        }
    }
    Ok(FockReport { d, cutoff, states: basis.len(), algebra, canonical })
}
