//! Jordanian twists of the Borel algebra `[J, P0] = P0` and the star
//! products they induce.
//!
//! Elements of `U(b)` are stored in the normal-ordered basis `∂0^a E^b`
//! with `E = x^μ∂_μ = −J` and `P0 = ∂0`. Since `E∂0 = ∂0(E − 1)`, the product
//! of basis words is
//!
//! ```text
//! (∂0^a E^b)(∂0^c E^e) = ∂0^(a+c) (E − c)^b E^e
//! ```
//!
//! Every power of θ in either twist comes with exactly one `∂0` in one of
//! the legs, so on polynomials of degrees `p` and `q` the θ-expansion stops
//! at order `p + q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::check::{compare, sweep, Failure, Sweep};
use crate::diffop::{BiDiffOp, DiffOp, OneForm, TwoForm, VectorField};
use crate::error::{Error, Result};
use crate::multi::{binom, MultiIndex};
use crate::poly::Poly;
use crate::random::all_monomials;
use crate::scalar::Scalar;
use crate::series::ThetaSeries;
use crate::star::{build_star, StarKind};
use crate::vars::{Space, VarTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistKind {
    /// `F_J = exp(ln(1 + θP0) ⊗ J)`.
    Jordanian,
    /// The locally r-symmetric variant with first-order term `½ r`, `r = P0 ∧ J`.
    JordanianRs,
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistKind::Jordanian => "jordanian",
            TwistKind::JordanianRs => "jordanian-rs",
        })
    }
}

/// The basis word `∂0^p0 E^euler`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorelWord {
    pub p0: u32,
    pub euler: u32,
}

impl BorelWord {
    pub const ONE: BorelWord = BorelWord { p0: 0, euler: 0 };
    pub const P0: BorelWord = BorelWord { p0: 1, euler: 0 };
    pub const E: BorelWord = BorelWord { p0: 0, euler: 1 };

    pub fn new(p0: u32, euler: u32) -> Self {
        BorelWord { p0, euler }
    }

    /// Normal-ordered product of two words.
    pub fn mul(self, o: BorelWord) -> Vec<(BorelWord, Scalar)> {
        // E^b ∂0^c = ∂0^c (E - c)^b
        let c = o.p0 as i64;
        (0..=self.euler)
            .map(|k| {
                let coeff = binom(self.euler as u64, k as u64) as i64;
                let shift = Scalar::from_int(-c);
                let mut s = Scalar::from_int(coeff);
                for _ in 0..self.euler - k {
                    s = &s * &shift;
                }
                (BorelWord::new(self.p0 + o.p0, k + o.euler), s)
            })
            .filter(|(_, s)| !s.is_zero())
            .collect()
    }

    /// `∂0^a ∘ E^b` as a differential operator.
    pub fn to_diffop(self, table: &Arc<VarTable>) -> DiffOp {
        let e = DiffOp::euler(table).pow(self.euler);
        DiffOp::partial(table, table.x(0)).pow(self.p0).compose(&e)
    }

    /// Action on a polynomial: `E` scales each homogeneous part by its degree.
    pub fn apply(self, f: &Poly) -> Poly {
        let scaled = if self.euler == 0 {
            f.clone()
        } else {
            f.map_weights(|m| {
                let d = Scalar::from_int(m.degree() as i64);
                (0..self.euler).fold(Scalar::one(), |acc, _| &acc * &d)
            })
        };
        if self.p0 == 0 {
            return scaled;
        }
        let t = f.table();
        scaled.derivative(&MultiIndex::unit(t.len(), t.x(0)).scale_by(self.p0))
    }

    /// Action on a one-form through Lie derivatives `L_{∂0}^a L_E^b`.
    pub fn apply_form(self, w: &OneForm, table: &Arc<VarTable>) -> OneForm {
        let e = VectorField::euler(table);
        let p0 = VectorField::coordinate(table, table.x(0));
        let mut out = w.clone();
        for _ in 0..self.euler {
            out = out.lie_derivative(&e);
        }
        for _ in 0..self.p0 {
            out = out.lie_derivative(&p0);
        }
        out
    }
}

impl fmt::Display for BorelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p0, self.euler) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write!(f, "{}", pow_name("P0", a)),
            (0, b) => write!(f, "{}", pow_name("E", b)),
            (a, b) => write!(f, "{}*{}", pow_name("P0", a), pow_name("E", b)),
        }
    }
}

fn pow_name(s: &str, n: u32) -> String {
    if n == 1 { s.to_string() } else { format!("{s}^{n}") }
}

type Tensor = BTreeMap<(BorelWord, BorelWord), Scalar>;

fn tensor_add(t: &mut Tensor, key: (BorelWord, BorelWord), c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = t.entry(key).or_insert_with(Scalar::zero);
    *slot += c;
    if slot.is_zero() {
        t.remove(&key);
    }
}

fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((l1, r1), c1) in a {
        for ((l2, r2), c2) in b {
            let c = c1 * c2;
            for (l, cl) in l1.mul(*l2) {
                let cl = &c * &cl;
                for (r, cr) in r1.mul(*r2) {
                    tensor_add(&mut out, (l, r), &(&cl * &cr));
                }
            }
        }
    }
    out
}

/// θ-graded element of `U(b) ⊗ U(b)`, truncated at `max_order`.
type Graded = Vec<Tensor>;

fn graded_mul(a: &Graded, b: &Graded, max_order: u32) -> Graded {
    let mut out: Graded = vec![Tensor::new(); max_order as usize + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j > max_order as usize || x.is_empty() || y.is_empty() {
                continue;
            }
            for (k, c) in tensor_mul(x, y) {
                tensor_add(&mut out[i + j], k, &c);
            }
        }
    }
    out
}

/// `exp(s θ X)` for a homogeneous tensor `X`.
fn graded_exp(x: &Tensor, s: &Scalar, max_order: u32) -> Graded {
    let mut out: Graded = Vec::with_capacity(max_order as usize + 1);
    let mut unit = Tensor::new();
    tensor_add(&mut unit, (BorelWord::ONE, BorelWord::ONE), &Scalar::one());
    out.push(unit);
    for n in 1..=max_order as usize {
        let mut next = tensor_mul(&out[n - 1], x);
        let f = s * &Scalar::ratio(1, n as i64);
        for c in next.values_mut() {
            *c = &*c * &f;
        }
        out.push(next);
    }
    out
}

/// Coefficients of `y(y−1)…(y−n+1)` in powers of `y` (signed Stirling numbers
/// of the first kind).
pub fn falling_coefficients(n: u32) -> Vec<Scalar> {
    let mut c = vec![Scalar::one()];
    for j in 0..n {
        let mut next = vec![Scalar::zero(); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= &(a * &Scalar::from_int(j as i64));
        }
        c = next;
    }
    c
}

/// `exp(ln(1 + θ∂0) ⊗ E) = Σ θ^n/n! ∂0^n ⊗ E^(falling n)`. With `mutate`,
/// the falling factorial is replaced by the plain power `E^n`.
fn jordanian_inverse(max_order: u32, mutate: bool) -> Graded {
    (0..=max_order)
        .map(|n| {
            let mut t = Tensor::new();
            let inv = Scalar::inv_factorial(n);
            if mutate && n >= 2 {
                tensor_add(&mut t, (BorelWord::new(n, 0), BorelWord::new(0, n)), &inv);
            } else {
                for (k, s) in falling_coefficients(n).iter().enumerate() {
                    tensor_add(&mut t, (BorelWord::new(n, 0), BorelWord::new(0, k as u32)), &(&inv * s));
                }
            }
            t
        })
        .collect()
}

/// `x^μ∂_μ∂0 = ∂0(E − 1)`.
fn e_p0() -> Vec<(BorelWord, Scalar)> {
    BorelWord::E.mul(BorelWord::P0)
}

fn rs_inverse(max_order: u32) -> Graded {
    let one = BorelWord::ONE;
    let mut x1 = Tensor::new();
    for (w, c) in e_p0() {
        tensor_add(&mut x1, (w, one), &c);
        tensor_add(&mut x1, (one, w), &c);
    }
    let mut x3 = x1.clone();
    tensor_add(&mut x1, (BorelWord::E, BorelWord::P0), &Scalar::one());
    tensor_add(&mut x1, (BorelWord::P0, BorelWord::E), &Scalar::one());
    let a = graded_exp(&x1, &Scalar::ratio(-1, 2), max_order);
    let b = jordanian_inverse(max_order, false);
    let c = graded_exp(&std::mem::take(&mut x3), &Scalar::ratio(1, 2), max_order);
    graded_mul(&graded_mul(&a, &b, max_order), &c, max_order)
}

/// The inverse twist `F⁻¹` as a θ-graded sum of `left ⊗ right` Borel words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSeries {
    kind: TwistKind,
    mutated: bool,
    orders: Graded,
}

impl TwistSeries {
    /// Terms up to θ^`max_order`.
    pub fn build(kind: TwistKind, max_order: u32) -> Self {
        let orders = match kind {
            TwistKind::Jordanian => jordanian_inverse(max_order, false),
            TwistKind::JordanianRs => rs_inverse(max_order),
        };
        TwistSeries { kind, mutated: false, orders }
    }

    /// The Jordanian twist with `E^(falling n)` replaced by `E^n`, for
    /// mutation tests.
    pub fn mutated_jordanian(max_order: u32) -> Self {
        TwistSeries { kind: TwistKind::Jordanian, mutated: true, orders: jordanian_inverse(max_order, true) }
    }

    pub fn kind(&self) -> TwistKind {
        self.kind
    }

    pub fn is_mutated(&self) -> bool {
        self.mutated
    }

    pub fn max_order(&self) -> u32 {
        self.orders.len() as u32 - 1
    }

    /// Terms of θ-order `n` as `(left, right, coefficient)`.
    pub fn order(&self, n: u32) -> Vec<(BorelWord, BorelWord, Scalar)> {
        self.orders
            .get(n as usize)
            .map(|t| t.iter().map(|((l, r), c)| (*l, *r, c.clone())).collect())
            .unwrap_or_default()
    }

    /// The order-`n` part as a bidifferential operator over `table`.
    pub fn order_bidiff(&self, n: u32, table: &Arc<VarTable>) -> BiDiffOp {
        let mut ops: HashMap<BorelWord, DiffOp> = HashMap::new();
        let mut out = BiDiffOp::zero(table);
        for (l, r, c) in self.order(n) {
            let lo = ops.entry(l).or_insert_with(|| l.to_diffop(table)).clone();
            let ro = ops.entry(r).or_insert_with(|| r.to_diffop(table)).clone();
            for (a, ca) in lo.terms() {
                for (b, cb) in ro.terms() {
                    out.add_term(n, a.clone(), (ca * cb).scale(&c), b.clone());
                }
            }
        }
        out
    }

    /// `μ ∘ F⁻¹ (f ⊗ g)` up to θ^`max_order` (or exactly when the series is
    /// long enough).
    pub fn star(&self, f: &Poly, g: &Poly, max_order: u32) -> ThetaSeries {
        let mut fw: HashMap<BorelWord, Poly> = HashMap::new();
        let mut gw: HashMap<BorelWord, Poly> = HashMap::new();
        let mut out = ThetaSeries::zero(f.table());
        let top = max_order.min(self.max_order());
        for n in 0..=top {
            for ((l, r), c) in &self.orders[n as usize] {
                let a = fw.entry(*l).or_insert_with(|| l.apply(f));
                if a.is_zero() {
                    continue;
                }
                let b = gw.entry(*r).or_insert_with(|| r.apply(g));
                if b.is_zero() {
                    continue;
                }
                out.add_at(n, &(&*a * &*b).scale(c));
            }
        }
        out
    }
}

impl fmt::Display for TwistSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (n, t) in self.orders.iter().enumerate() {
            for ((l, r), c) in t {
                parts.push(format!("theta^{n}*({c})*{l}(x){r}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `E(E−1)…(E−n+1)` in normal order.
pub fn falling_factorial_op(table: &Arc<VarTable>, n: u32) -> DiffOp {
    let e = DiffOp::euler(table);
    (0..n).fold(DiffOp::identity(table), |acc, j| {
        let shifted = e.sub(&DiffOp::identity(table).scale(&Scalar::from_int(j as i64)));
        acc.compose(&shifted)
    })
}

/// `Σ x^{μ1}…x^{μn} ∂_{μ1}…∂_{μn}` summed over ordered index tuples.
pub fn pure_derivative_op(table: &Arc<VarTable>, n: u32) -> DiffOp {
    let mut out = DiffOp::zero(table);
    for alpha in MultiIndex::all_of_degree(table.len(), n) {
        let mult = Scalar::from_int(alpha.multinomial() as i64);
        out.add_term(alpha.clone(), &Poly::monomial(table, alpha, mult));
    }
    out
}

fn spacetime(d: usize) -> Result<Arc<VarTable>> {
    VarTable::spacetime(d)
}

/// Checks that the Jordanian twist product equals the closed-form κ product
/// on every pair of monomials of degree at most `max_degree`.
pub fn verify_lemma2(d: usize, max_degree: u32) -> Result<Sweep> {
    verify_twist_against_kappa(&TwistSeries::build(TwistKind::Jordanian, 2 * max_degree), d, max_degree)
}

/// Same sweep for an arbitrary twist series (used for mutation tests).
pub fn verify_twist_against_kappa(twist: &TwistSeries, d: usize, max_degree: u32) -> Result<Sweep> {
    let table = spacetime(d)?;
    let kappa = build_star(StarKind::Kappa, d, None)?;
    let pairs = monomial_pairs(&table, max_degree);
    sweep(&pairs, |(f, g)| {
        let lhs = twist.star(f, g, f.degree() + g.degree());
        let rhs = kappa.apply(f, g)?;
        Ok(compare(&lhs, &rhs).map(|m| Failure { inputs: vec![f.to_string(), g.to_string()], mismatch: m }))
    })
}

/// All ordered pairs of monomials of degree at most `max_degree`, sorted by
/// total degree so that the first failure is a smallest one.
pub fn monomial_pairs(table: &Arc<VarTable>, max_degree: u32) -> Vec<(Poly, Poly)> {
    let mons = all_monomials(table, max_degree);
    let mut pairs: Vec<(Poly, Poly)> =
        mons.iter().flat_map(|f| mons.iter().map(move |g| (f.clone(), g.clone()))).collect();
    pairs.sort_by_key(|(f, g)| f.degree() + g.degree());
    pairs
}

/// `dx^μ ∧⋆ dx^ν`: twist legs act through Lie derivatives, one entry per
/// θ-order `0..=order`.
pub fn wedge_star(kind: TwistKind, mu: usize, nu: usize, d: usize, order: u32) -> Result<Vec<TwoForm>> {
    if mu > d || nu > d {
        return Err(Error::InvalidArgument(format!("indices ({mu}, {nu}) out of range for d = {d}")));
    }
    let table = spacetime(d)?;
    let twist = TwistSeries::build(kind, order);
    let a = OneForm::dx(&table, table.x(mu));
    let b = OneForm::dx(&table, table.x(nu));
    Ok((0..=order)
        .map(|n| {
            let mut acc = TwoForm::zero(&table);
            for (l, r, c) in twist.order(n) {
                let lw = l.apply_form(&a, &table);
                if lw.is_zero() {
                    continue;
                }
                let rw = r.apply_form(&b, &table).mul_poly(&Poly::constant(&table, c));
                acc = acc.plus(&lw.wedge(&rw));
            }
            acc
        })
        .collect())
}

/// The θ-expansion of the r-symmetric product through second order,
/// compared with the closed first-order formula and the long second-order
/// display.
#[derive(Clone, Debug)]
pub struct RsExpansion {
    pub series: ThetaSeries,
    pub first_order_formula: Poly,
    pub second_order_display: Poly,
}

impl RsExpansion {
    pub fn first_order_matches(&self) -> bool {
        self.series.coeff(1) == self.first_order_formula
    }

    /// `engine − display` at θ².
    pub fn second_order_diff(&self) -> Poly {
        &self.series.coeff(2) - &self.second_order_display
    }
}

pub fn expand_rs_product(f: &Poly, g: &Poly) -> Result<RsExpansion> {
    let table = f.table().clone();
    VarTable::ensure_same(&table, g.table())?;
    if table.space() != Space::Spacetime {
        return Err(Error::VariableKind { var: table.to_string(), expected: "spacetime coordinates".into() });
    }
    let twist = TwistSeries::build(TwistKind::JordanianRs, 2);
    let series = twist.star(f, g, 2).with_cap(Some(2));
    Ok(RsExpansion {
        series,
        first_order_formula: rs_first_order_formula(&table).apply(f, g).coeff(1),
        second_order_display: rs_second_order_display(&table).apply(f, g).coeff(2),
    })
}

/// `½ x^μ (∂0 ⊗ ∂_μ − ∂_μ ⊗ ∂0)` at grade 1.
pub fn rs_first_order_formula(table: &Arc<VarTable>) -> BiDiffOp {
    let n = table.len();
    let d0 = MultiIndex::unit(n, table.x(0));
    let half = Scalar::ratio(1, 2);
    let mut out = BiDiffOp::zero(table);
    for mu in table.vars() {
        let x = Poly::var(table, mu).scale(&half);
        let dm = MultiIndex::unit(n, mu);
        out.add_term(1, d0.clone(), x.clone(), dm.clone());
        out.add_term(1, dm, -&x, d0.clone());
    }
    out
}

/// The printed θ² display, read literally, with the dangling index in the
/// single-`x` bracket identified with the summed one.
pub fn rs_second_order_display(table: &Arc<VarTable>) -> BiDiffOp {
    let n = table.len();
    let e = |v| MultiIndex::unit(n, v);
    let z = MultiIndex::zero(n);
    let d0 = e(table.x(0));
    let d00 = d0.add(&d0);
    let mut out = BiDiffOp::zero(table);
    let pref = Scalar::ratio(1, 8);
    for mu in table.vars() {
        for rho in table.vars() {
            let mid = &Poly::var(table, mu) * &Poly::var(table, rho);
            let rm = e(rho).add(&e(mu));
            let terms: [(MultiIndex, MultiIndex, i64); 9] = [
                (rm.add(&d00), z.clone(), 1),
                (z.clone(), rm.add(&d00), 1),
                (rm.clone(), d00.clone(), 2),
                (d00.clone(), rm.clone(), 2),
                (d0.clone(), rm.add(&d0), 2),
                (rm.add(&d0), d0.clone(), 2),
                (e(rho).add(&d0), d0.add(&e(mu)), 2),
                (e(rho).add(&d00), e(mu), 2),
                (e(rho), e(mu).add(&d00), 2),
            ];
            for (l, r, c) in terms {
                out.add_term(2, l, mid.scale(&(&pref * &Scalar::from_int(c))), r);
            }
        }
        let mid = Poly::var(table, mu).scale(&(&pref * &Scalar::from_int(2)));
        let r = e(mu);
        let terms: [(MultiIndex, MultiIndex, i64); 6] = [
            (r.add(&d0), d0.clone(), 1),
            (d0.clone(), r.add(&d0), 1),
            (d00.clone(), r.clone(), 3),
            (r.clone(), d00.clone(), 1),
            (r.add(&d00), z.clone(), 1),
            (z.clone(), r.add(&d00), 1),
        ];
        for (l, rr, c) in terms {
            out.add_term(2, l, mid.scale(&Scalar::from_int(c)), rr);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: usize) -> Arc<VarTable> {
        VarTable::spacetime(d).unwrap()
    }

    #[test]
    fn word_product_commutes_e_past_p0() {
        // E ∂0 = ∂0 E − ∂0
        let p = BorelWord::E.mul(BorelWord::P0);
        assert_eq!(p, vec![(BorelWord::new(1, 0), Scalar::from_int(-1)), (BorelWord::new(1, 1), Scalar::one())]);
        let table = t(2);
        let lhs = DiffOp::euler(&table).compose(&DiffOp::partial(&table, table.x(0)));
        let mut rhs = DiffOp::zero(&table);
        for (w, c) in p {
            rhs = rhs.add(&w.to_diffop(&table).scale(&c));
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn falling_factorial_small_cases() {
        let table = t(2);
        assert_eq!(falling_factorial_op(&table, 0), DiffOp::identity(&table));
        assert_eq!(falling_factorial_op(&table, 1), DiffOp::euler(&table));
        for n in 2..=4 {
            assert_eq!(falling_factorial_op(&table, n), pure_derivative_op(&table, n), "n = {n}");
        }
    }

    #[test]
    fn jordanian_low_orders() {
        let tw = TwistSeries::build(TwistKind::Jordanian, 3);
        assert_eq!(tw.order(1), vec![(BorelWord::P0, BorelWord::E, Scalar::one())]);
        // ½ ∂0² ⊗ (E² − E)
        let o2 = tw.order(2);
        assert_eq!(o2.len(), 2);
        assert!(o2.contains(&(BorelWord::new(2, 0), BorelWord::new(0, 2), Scalar::ratio(1, 2))));
        assert!(o2.contains(&(BorelWord::new(2, 0), BorelWord::new(0, 1), Scalar::ratio(-1, 2))));
    }

    #[test]
    fn rs_first_order_is_half_r() {
        let tw = TwistSeries::build(TwistKind::JordanianRs, 2);
        let mut o1 = tw.order(1);
        o1.sort_by_key(|(a, b, _)| (*a, *b));
        assert_eq!(
            o1,
            vec![
                (BorelWord::E, BorelWord::P0, Scalar::ratio(-1, 2)),
                (BorelWord::P0, BorelWord::E, Scalar::ratio(1, 2)),
            ]
        );
    }

    #[test]
    fn star_examples() {
        let table = t(1);
        let x0 = Poly::var(&table, table.x(0));
        let x1 = Poly::var(&table, table.x(1));
        let j = TwistSeries::build(TwistKind::Jordanian, 4);
        let s = j.star(&x0, &x1, 4);
        assert_eq!(s.coeff(0), &x0 * &x1);
        assert_eq!(s.coeff(1), x1.clone());
        assert_eq!(s.max_order(), Some(1));
        let rs = TwistSeries::build(TwistKind::JordanianRs, 4);
        let c = rs.star(&x0, &x1, 4).sub(&rs.star(&x1, &x0, 4));
        assert_eq!(c.coeff(1), x1);
        assert_eq!(c.max_order(), Some(1));
    }

    #[test]
    fn bidiff_conversion_agrees_with_word_action() {
        let table = t(1);
        let f = &Poly::var(&table, table.x(0)).pow(3) * &Poly::var(&table, table.x(1));
        let g = &Poly::var(&table, table.x(0)).pow(2) + &Poly::var(&table, table.x(1)).pow(2);
        let rs = TwistSeries::build(TwistKind::JordanianRs, 3);
        for n in 0..=3 {
            assert_eq!(rs.order_bidiff(n, &table).apply(&f, &g).coeff(n), rs.star(&f, &g, 3).coeff(n), "order {n}");
        }
    }

    #[test]
    fn mutation_is_caught_at_second_order() {
        let sweep = verify_twist_against_kappa(&TwistSeries::mutated_jordanian(4), 1, 2).unwrap();
        let fail = sweep.failure.expect("mutation must be detected");
        assert_eq!(fail.mismatch.order, 2);
    }

    #[test]
    fn wedge_is_undeformed() {
        let w = wedge_star(TwistKind::Jordanian, 0, 1, 1, 2).unwrap();
        let table = t(1);
        assert_eq!(w[0], OneForm::dx(&table, table.x(0)).wedge(&OneForm::dx(&table, table.x(1))));
        assert!(w[1..].iter().all(TwoForm::is_zero));
        assert!(wedge_star(TwistKind::Jordanian, 1, 1, 1, 2).unwrap().iter().all(TwoForm::is_zero));
    }

    #[test]
    fn rs_expansion_first_order() {
        let table = t(1);
        let x0 = Poly::var(&table, table.x(0));
        let x1 = Poly::var(&table, table.x(1));
        let e = expand_rs_product(&x0, &x1).unwrap();
        assert!(e.first_order_matches());
        assert_eq!(e.series.coeff(1), x1.scale(&Scalar::ratio(1, 2)));
        let one = Poly::one(&table);
        let u = expand_rs_product(&one, &one).unwrap();
        assert_eq!(u.series, ThetaSeries::from_poly(one).with_cap(Some(2)));
    }
}
