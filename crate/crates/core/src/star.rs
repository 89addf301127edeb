//! Star products as θ-graded bidifferential operators.
//!
//! The exponential kinds are `exp(θ G)` for a first-order generator `G`
//! whose terms all carry a nonempty left and right derivative, so on
//! polynomials of degrees `p`, `q` only orders `≤ min(p, q)` survive. Twist
//! kinds are evaluated through the Borel-word series in [`crate::twist`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::check::{compare, Mismatch};
use crate::diffop::BiDiffOp;
use crate::error::{Error, Result};
use crate::multi::MultiIndex;
use crate::poly::Poly;
use crate::realization::Realization;
use crate::scalar::Scalar;
use crate::series::ThetaSeries;
use crate::twist::{TwistKind, TwistSeries};
use crate::vars::{Space, VarTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarKind {
    Moyal,
    WickVoros,
    Kappa,
    Su2,
    FromTwist(TwistKind),
}

impl StarKind {
    pub const ALL: [StarKind; 6] = [
        StarKind::Moyal,
        StarKind::WickVoros,
        StarKind::Kappa,
        StarKind::Su2,
        StarKind::FromTwist(TwistKind::Jordanian),
        StarKind::FromTwist(TwistKind::JordanianRs),
    ];

    /// Which variables the product acts on.
    pub fn space(self) -> Space {
        match self {
            StarKind::Moyal | StarKind::WickVoros => Space::Phase,
            _ => Space::Spacetime,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StarKind::Moyal => "moyal",
            StarKind::WickVoros => "wv",
            StarKind::Kappa => "kappa",
            StarKind::Su2 => "su2",
            StarKind::FromTwist(TwistKind::Jordanian) => "jordanian",
            StarKind::FromTwist(TwistKind::JordanianRs) => "jordanian-rs",
        }
    }
}

impl fmt::Display for StarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StarKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown product `{s}`")))
    }
}

#[derive(Clone, Copy, Debug)]
enum Engine {
    Exp,
    Twist { kind: TwistKind, mutated: bool },
}

/// A star product on polynomials of one variable table.
pub struct StarProduct {
    kind: StarKind,
    table: Arc<VarTable>,
    cap: Option<u32>,
    engine: Engine,
    generator: BiDiffOp,
    overrides: BTreeMap<u32, BiDiffOp>,
    orders: Mutex<Vec<Arc<BiDiffOp>>>,
    twist: Mutex<Option<Arc<TwistSeries>>>,
}

impl fmt::Debug for StarProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StarProduct({}, d = {}, cap = {:?})", self.kind, self.table.dim(), self.cap)
    }
}

/// Builds the star product of the given kind in dimension `d`.
pub fn build_star(kind: StarKind, d: usize, cap: Option<u32>) -> Result<StarProduct> {
    let table = match kind.space() {
        Space::Phase => VarTable::phase(d)?,
        Space::Spacetime => VarTable::spacetime(d)?,
    };
    let (engine, generator) = match kind {
        StarKind::Moyal => (Engine::Exp, moyal_generator(&table)),
        StarKind::WickVoros => (Engine::Exp, voros_generator(&table)),
        StarKind::Kappa => (Engine::Exp, kappa_generator(&table)),
        StarKind::Su2 => {
            if d != 3 {
                return Err(Error::Unsupported(format!("su2 product needs d = 3, got d = {d}")));
            }
            (Engine::Exp, su2_generator(&table))
        }
        StarKind::FromTwist(t) => {
            let series = TwistSeries::build(t, 1);
            (Engine::Twist { kind: t, mutated: false }, series.order_bidiff(1, &table))
        }
    };
    Ok(StarProduct::assemble(kind, table, cap, engine, generator))
}

/// The product induced by the Jordanian twist with its falling factorials
/// replaced by plain powers.
pub fn build_mutated_jordanian(d: usize, cap: Option<u32>) -> Result<StarProduct> {
    let table = VarTable::spacetime(d)?;
    let generator = TwistSeries::mutated_jordanian(1).order_bidiff(1, &table);
    let engine = Engine::Twist { kind: TwistKind::Jordanian, mutated: true };
    Ok(StarProduct::assemble(StarKind::FromTwist(TwistKind::Jordanian), table, cap, engine, generator))
}

fn unit(table: &Arc<VarTable>, v: crate::vars::Var) -> MultiIndex {
    MultiIndex::unit(table.len(), v)
}

fn moyal_generator(t: &Arc<VarTable>) -> BiDiffOp {
    let mut g = BiDiffOp::zero(t);
    let half = Poly::constant(t, Scalar::ratio(1, 2));
    for i in 1..=t.dim() {
        g.add_term(1, unit(t, t.z(i)), half.clone(), unit(t, t.zb(i)));
        g.add_term(1, unit(t, t.zb(i)), -&half, unit(t, t.z(i)));
    }
    g
}

fn voros_generator(t: &Arc<VarTable>) -> BiDiffOp {
    let mut g = BiDiffOp::zero(t);
    for i in 1..=t.dim() {
        g.add_term(1, unit(t, t.z(i)), Poly::one(t), unit(t, t.zb(i)));
    }
    g
}

fn kappa_generator(t: &Arc<VarTable>) -> BiDiffOp {
    let mut g = BiDiffOp::zero(t);
    for nu in t.vars() {
        g.add_term(1, unit(t, t.x(0)), Poly::var(t, nu), unit(t, nu));
    }
    g
}

/// `½ M^{μν} ∂_μ ⊗ ∂_ν` with `M^{00} = x0`, `M^{0j} = M^{j0} = x^j` and
/// `M^{ij} = δ^{ij} x0 + i ε^{ijk} x^k`, i.e. `½ z̄ σ^μ σ^ν z` written back in
/// the coordinates. On functions of `x1, x2, x3` only the spatial block
/// survives.
fn su2_generator(t: &Arc<VarTable>) -> BiDiffOp {
    let mut g = BiDiffOp::zero(t);
    let half = Scalar::ratio(1, 2);
    let x = |m: usize| Poly::var(t, t.x(m)).scale(&half);
    g.add_term(1, unit(t, t.x(0)), x(0), unit(t, t.x(0)));
    for j in 1..=3 {
        g.add_term(1, unit(t, t.x(0)), x(j), unit(t, t.x(j)));
        g.add_term(1, unit(t, t.x(j)), x(j), unit(t, t.x(0)));
    }
    for i in 1..=3 {
        for j in 1..=3 {
            let mut m = if i == j { x(0) } else { Poly::zero(t) };
            for k in 1..=3 {
                let e = levi_civita(i, j, k);
                if e != 0 {
                    m = &m + &x(k).scale(&(&Scalar::i() * &Scalar::from_int(e)));
                }
            }
            g.add_term(1, unit(t, t.x(i)), m, unit(t, t.x(j)));
        }
    }
    g
}

pub(crate) fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

impl StarProduct {
    fn assemble(kind: StarKind, table: Arc<VarTable>, cap: Option<u32>, engine: Engine, generator: BiDiffOp) -> Self {
        let identity = Arc::new(BiDiffOp::identity(&table));
        StarProduct {
            kind,
            table,
            cap,
            engine,
            generator,
            overrides: BTreeMap::new(),
            orders: Mutex::new(vec![identity]),
            twist: Mutex::new(None),
        }
    }

    pub fn kind(&self) -> StarKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    /// The θ-order-1 bidifferential operator.
    pub fn generator(&self) -> &BiDiffOp {
        &self.generator
    }

    /// Replaces the order-`n` term; used to check that the verifiers catch
    /// corrupted products.
    pub fn with_override(mut self, n: u32, term: BiDiffOp) -> Self {
        self.overrides.insert(n, term);
        self
    }

    fn twist_series(&self, max_order: u32) -> Arc<TwistSeries> {
        let Engine::Twist { kind, mutated } = self.engine else { unreachable!() };
        let mut slot = self.twist.lock().unwrap();
        if let Some(t) = slot.as_ref() {
            if t.max_order() >= max_order {
                return t.clone();
            }
        }
        let target = max_order.max(slot.as_ref().map_or(0, |t| 2 * t.max_order())).max(4);
        let t = Arc::new(if mutated { TwistSeries::mutated_jordanian(target) } else { TwistSeries::build(kind, target) });
        *slot = Some(t.clone());
        t
    }

    /// The order-`n` bidifferential operator of the product.
    pub fn order_term(&self, n: u32) -> Arc<BiDiffOp> {
        if let Some(o) = self.overrides.get(&n) {
            return Arc::new(o.clone());
        }
        if let Engine::Twist { .. } = self.engine {
            return Arc::new(self.twist_series(n).order_bidiff(n, &self.table));
        }
        let mut orders = self.orders.lock().unwrap();
        while orders.len() <= n as usize {
            let k = orders.len();
            let next = orders[k - 1].juxtapose(&self.generator).scale(&Scalar::ratio(1, k as i64));
            orders.push(Arc::new(next));
        }
        orders[n as usize].clone()
    }

    fn check_operand(&self, p: &Poly) -> Result<()> {
        if p.table().space() != self.table.space() {
            let expected = match self.table.space() {
                Space::Phase => "phase-space coordinates z, zb",
                Space::Spacetime => "spacetime coordinates x",
            };
            return Err(Error::VariableKind { var: p.table().to_string(), expected: expected.into() });
        }
        if p.table().dim() != self.table.dim() {
            return Err(Error::DimensionMismatch { expected: self.table.dim(), found: p.table().dim() });
        }
        Ok(())
    }

    /// Highest θ-order that can contribute on these operands.
    fn top_order(&self, f: &Poly, g: &Poly) -> u32 {
        let bound = match self.engine {
            Engine::Exp => f.degree().min(g.degree()),
            Engine::Twist { .. } => f.degree() + g.degree(),
        };
        let bound = self.overrides.keys().next_back().map_or(bound, |&k| bound.max(k));
        self.cap.map_or(bound, |c| bound.min(c))
    }

    /// `f ⋆ g`, exact unless the product carries a cap.
    pub fn apply(&self, f: &Poly, g: &Poly) -> Result<ThetaSeries> {
        self.check_operand(f)?;
        self.check_operand(g)?;
        let top = self.top_order(f, g);
        let mut out = ThetaSeries::zero(&self.table);
        match self.engine {
            Engine::Exp => {
                for n in 0..=top {
                    out = out.add(&self.order_term(n).apply(f, g));
                }
            }
            Engine::Twist { .. } => {
                let t = self.twist_series(top);
                let s = t.star(f, g, top);
                for (n, c) in s.coeffs() {
                    if !self.overrides.contains_key(&n) {
                        out.add_at(n, c);
                    }
                }
                for (n, o) in &self.overrides {
                    if *n <= top {
                        out = out.add(&o.apply(f, g));
                    }
                }
            }
        }
        Ok(out.with_cap(self.cap))
    }

    /// Bilinear extension to θ-series operands.
    pub fn apply_series(&self, a: &ThetaSeries, b: &ThetaSeries) -> Result<ThetaSeries> {
        let mut out = ThetaSeries::zero(&self.table);
        for (i, p) in a.coeffs() {
            for (j, q) in b.coeffs() {
                out = out.add(&self.apply(p, q)?.shift(i + j));
            }
        }
        let cap = [self.cap, a.cap(), b.cap()].into_iter().flatten().min();
        Ok(out.with_cap(cap))
    }

    /// `f ⋆ g − g ⋆ f`.
    pub fn commutator(&self, f: &Poly, g: &Poly) -> Result<ThetaSeries> {
        Ok(self.apply(f, g)?.sub(&self.apply(g, f)?))
    }
}

/// Convenience wrapper for [`StarProduct::apply`].
pub fn star_apply(s: &StarProduct, f: &Poly, g: &Poly) -> Result<ThetaSeries> {
    s.apply(f, g)
}

pub fn star_commutator(s: &StarProduct, f: &Poly, g: &Poly) -> Result<ThetaSeries> {
    s.commutator(f, g)
}

/// `(f ⋆ g) ⋆ h = f ⋆ (g ⋆ h)`; `None` when they agree.
pub fn verify_associativity(s: &StarProduct, f: &Poly, g: &Poly, h: &Poly) -> Result<Option<Mismatch>> {
    let fg = s.apply(f, g)?;
    let gh = s.apply(g, h)?;
    let lhs = s.apply_series(&fg, &ThetaSeries::from_poly(h.clone()))?;
    let rhs = s.apply_series(&ThetaSeries::from_poly(f.clone()), &gh)?;
    Ok(compare(&lhs, &rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoissonStructure {
    /// `{x0, x^i} = i x^i`, `{x^i, x^j} = 0`.
    KappaClassical,
    /// `{z^i, zb^j} = i δ^{ij}`.
    CanonicalZ,
}

pub fn poisson_bracket(f: &Poly, g: &Poly, structure: PoissonStructure) -> Result<Poly> {
    let t = f.table().clone();
    VarTable::ensure_same(&t, g.table())?;
    let i = Scalar::i();
    match structure {
        PoissonStructure::KappaClassical => {
            if t.space() != Space::Spacetime {
                return Err(Error::VariableKind { var: t.to_string(), expected: "spacetime coordinates".into() });
            }
            let (f0, g0) = (f.partial(t.x(0)), g.partial(t.x(0)));
            let mut out = Poly::zero(&t);
            for k in t.spatial() {
                let xk = Poly::var(&t, k);
                let term = &(&f0 * &g.partial(k)) - &(&f.partial(k) * &g0);
                out = &out + &(&xk * &term);
            }
            Ok(out.scale(&i))
        }
        PoissonStructure::CanonicalZ => {
            if t.space() != Space::Phase {
                return Err(Error::VariableKind { var: t.to_string(), expected: "phase-space coordinates".into() });
            }
            let mut out = Poly::zero(&t);
            for k in 1..=t.dim() {
                let (z, zb) = (t.z(k), t.zb(k));
                out = &out + &(&(&f.partial(z) * &g.partial(zb)) - &(&f.partial(zb) * &g.partial(z)));
            }
            Ok(out.scale(&i))
        }
    }
}

/// `pullback(f) ⋆_M pullback(g) − pullback(f ⋆_κ g)`.
pub fn compare_moyal_reduction(f: &Poly, g: &Poly) -> Result<ThetaSeries> {
    let d = f.table().dim();
    let r = Realization::kappa(d)?;
    let moyal = build_star(StarKind::Moyal, d, None)?;
    let kappa = build_star(StarKind::Kappa, d, None)?;
    let lhs = moyal.apply(&r.pullback(f)?, &r.pullback(g)?)?;
    let rhs = r.pullback_series(&kappa.apply(f, g)?)?;
    Ok(lhs.sub(&rhs))
}
