//! Realizations of the noncommutative coordinates: polynomial pullbacks to
//! phase space, differential operators, and truncated Fock matrices.

mod fock;

pub use fock::{fock_check, FockReport, Surd};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::check::{compare, sweep, Failure, Mismatch, Sweep};
use crate::diffop::{DiffOp, GradedDiffOp};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::random::{all_monomials, PolySampler};
use crate::scalar::Scalar;
use crate::series::ThetaSeries;
use crate::star::{build_star, StarKind};
use crate::twist::monomial_pairs;
use crate::vars::{Space, Var, VarTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationKind {
    /// `x0 = Σ z̄^i z^i`, `x^i = z̄^i`.
    Kappa,
    /// `x^μ = ½ z̄^a σ^μ_{ab} z^b` on `ℂ²`.
    Su2,
}

/// A substitution from spacetime coordinates to phase-space polynomials.
#[derive(Clone, Debug)]
pub struct Realization {
    kind: RealizationKind,
    source: Arc<VarTable>,
    target: Arc<VarTable>,
    map: BTreeMap<Var, Poly>,
}

/// Pauli matrices `σ^0 = 1, σ^1, σ^2, σ^3`, entry `[a][b]`.
fn pauli(mu: usize) -> [[Scalar; 2]; 2] {
    let (o, z, i) = (Scalar::one(), Scalar::zero(), Scalar::i());
    match mu {
        0 => [[o.clone(), z.clone()], [z, o]],
        1 => [[z.clone(), o.clone()], [o, z]],
        2 => [[z.clone(), -&i], [i, z]],
        3 => [[o.clone(), z.clone()], [z, -&o]],
        _ => unreachable!(),
    }
}

impl Realization {
    pub fn kappa(d: usize) -> Result<Self> {
        let source = VarTable::spacetime(d)?;
        let target = VarTable::phase(d)?;
        let mut map = BTreeMap::new();
        let mut x0 = Poly::zero(&target);
        for i in 1..=d {
            x0 = &x0 + &(&Poly::var(&target, target.zb(i)) * &Poly::var(&target, target.z(i)));
            map.insert(source.x(i), Poly::var(&target, target.zb(i)));
        }
        map.insert(source.x(0), x0);
        Ok(Realization { kind: RealizationKind::Kappa, source, target, map })
    }

    pub fn su2() -> Result<Self> {
        let source = VarTable::spacetime(3)?;
        let target = VarTable::phase(2)?;
        let half = Scalar::ratio(1, 2);
        let mut map = BTreeMap::new();
        for mu in 0..=3 {
            let s = pauli(mu);
            let mut p = Poly::zero(&target);
            for a in 0..2 {
                for b in 0..2 {
                    let term = &Poly::var(&target, target.zb(a + 1)) * &Poly::var(&target, target.z(b + 1));
                    p = &p + &term.scale(&(&half * &s[a][b]));
                }
            }
            map.insert(source.x(mu), p);
        }
        Ok(Realization { kind: RealizationKind::Su2, source, target, map })
    }

    pub fn kind(&self) -> RealizationKind {
        self.kind
    }

    pub fn source(&self) -> &Arc<VarTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VarTable> {
        &self.target
    }

    /// Image of the coordinate `x^μ`.
    pub fn image(&self, mu: usize) -> &Poly {
        &self.map[&self.source.x(mu)]
    }

    pub fn pullback(&self, f: &Poly) -> Result<Poly> {
        if f.table().space() != Space::Spacetime {
            return Err(Error::VariableKind { var: f.table().to_string(), expected: "spacetime coordinates".into() });
        }
        if f.table().dim() != self.source.dim() {
            return Err(Error::DimensionMismatch { expected: self.source.dim(), found: f.table().dim() });
        }
        f.substitute(&self.map, &self.target)
    }

    pub fn pullback_series(&self, s: &ThetaSeries) -> Result<ThetaSeries> {
        let mut out = ThetaSeries::zero(&self.target);
        for (n, c) in s.coeffs() {
            out.add_at(n, &self.pullback(c)?);
        }
        Ok(out.with_cap(s.cap()))
    }

    /// Sufficient test for injectivity on monomials of degree at most
    /// `max_degree`: their images have pairwise distinct leading monomials.
    pub fn leading_terms_distinct(&self, max_degree: u32) -> Result<bool> {
        let mut seen = std::collections::BTreeSet::new();
        for m in all_monomials(&self.source, max_degree) {
            let img = self.pullback(&m)?;
            let lead = img.leading_term().map(|(k, _)| k.clone());
            if !seen.insert(lead) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn reduction_mismatch(r: &Realization, inner: StarKind, f: &Poly, g: &Poly) -> Result<Option<Mismatch>> {
    let star = build_star(inner, r.source.dim(), None)?;
    let wv = build_star(StarKind::WickVoros, r.target.dim(), None)?;
    let lhs = r.pullback_series(&star.apply(f, g)?)?;
    let rhs = wv.apply(&r.pullback(f)?, &r.pullback(g)?)?;
    Ok(compare(&lhs, &rhs))
}

/// `pullback(f ⋆_κ g) = pullback(f) ⋆_WV pullback(g)`; `None` when equal.
pub fn verify_reduction_kappa(f: &Poly, g: &Poly) -> Result<Option<Mismatch>> {
    reduction_mismatch(&Realization::kappa(f.table().dim())?, StarKind::Kappa, f, g)
}

/// Same identity for the su(2) product and the Pauli realization. Where
/// `x0` appears in the product's coefficients it is pulled back like any
/// other coordinate.
pub fn verify_reduction_su2(f: &Poly, g: &Poly) -> Result<Option<Mismatch>> {
    reduction_mismatch(&Realization::su2()?, StarKind::Su2, f, g)
}

fn reduction_sweep(r: &Realization, inner: StarKind, pairs: &[(Poly, Poly)]) -> Result<Sweep> {
    let star = build_star(inner, r.source.dim(), None)?;
    let wv = build_star(StarKind::WickVoros, r.target.dim(), None)?;
    sweep(pairs, |(f, g)| {
        let lhs = r.pullback_series(&star.apply(f, g)?)?;
        let rhs = wv.apply(&r.pullback(f)?, &r.pullback(g)?)?;
        Ok(compare(&lhs, &rhs).map(|m| Failure { inputs: vec![f.to_string(), g.to_string()], mismatch: m }))
    })
}

/// The κ reduction on every pair of monomials of degree at most `max_degree`.
pub fn reduction_sweep_kappa(d: usize, max_degree: u32) -> Result<Sweep> {
    let r = Realization::kappa(d)?;
    reduction_sweep(&r, StarKind::Kappa, &monomial_pairs(&r.source, max_degree))
}

/// The su(2) reduction on every pair of monomials in `x1, x2, x3` of degree
/// at most `max_degree`.
pub fn reduction_sweep_su2(max_degree: u32) -> Result<Sweep> {
    let r = Realization::su2()?;
    let pairs: Vec<_> = monomial_pairs(&r.source, max_degree)
        .into_iter()
        .filter(|(f, g)| !f.uses(r.source.x(0)) && !g.uses(r.source.x(0)))
        .collect();
    reduction_sweep(&r, StarKind::Su2, &pairs)
}

/// `x̂_L^μ = x^μ + θ δ^μ_0 x^ν∂_ν` and `x̂_R^μ = x^μ + θ x^μ ∂0`.
pub fn left_right_realizations(d: usize) -> Result<(Vec<GradedDiffOp>, Vec<GradedDiffOp>)> {
    let t = VarTable::spacetime(d)?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for mu in t.vars() {
        let x = DiffOp::multiplication(Poly::var(&t, mu));
        let l1 = if mu == t.x(0) { DiffOp::euler(&t) } else { DiffOp::zero(&t) };
        let r1 = DiffOp::partial(&t, t.x(0)).left_mul(&Poly::var(&t, mu));
        left.push(GradedDiffOp::from_parts(&t, [(0, x.clone()), (1, l1)]));
        right.push(GradedDiffOp::from_parts(&t, [(0, x), (1, r1)]));
    }
    Ok((left, right))
}

/// Outcome of the left/right realization checks.
#[derive(Clone, Debug)]
pub struct RealizationReport {
    pub cases: usize,
    /// `x̂_L^μ f = x^μ ⋆ f` and `x̂_R^μ f = f ⋆ x^μ` on random `f`.
    pub action: Option<Failure>,
    /// `[x̂^0, x̂^k] = +θ x̂^k` (left) and `−θ x̂^k` (right).
    pub commutators: Vec<(String, bool)>,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.action.is_none() && self.commutators.iter().all(|(_, ok)| *ok)
    }
}

pub fn verify_left_right(d: usize, samples: usize, max_degree: u32, seed: u64) -> Result<RealizationReport> {
    let t = VarTable::spacetime(d)?;
    let kappa = build_star(StarKind::Kappa, d, None)?;
    let (left, right) = left_right_realizations(d)?;
    let mut sampler = PolySampler::new(seed);
    let fs: Vec<Poly> = (0..samples).map(|_| sampler.poly(&t, max_degree, 4)).collect();
    let cases: Vec<(usize, Poly)> = fs.iter().flat_map(|f| (0..=d).map(move |mu| (mu, f.clone()))).collect();
    let action = sweep(&cases, |(mu, f)| {
        let x = Poly::var(&t, t.x(*mu));
        let checks = [
            (left[*mu].apply(f), kappa.apply(&x, f)?, "L"),
            (right[*mu].apply(f), kappa.apply(f, &x)?, "R"),
        ];
        for (op, star, side) in checks {
            if let Some(m) = compare(&op, &star) {
                return Ok(Some(Failure { inputs: vec![format!("{side}{mu}"), f.to_string()], mismatch: m }));
            }
        }
        Ok(None)
    })?;
    let mut commutators = Vec::new();
    for (side, ops, sign) in [("L", &left, 1), ("R", &right, -1)] {
        for k in 1..=d {
            let c = ops[0].commutator(&ops[k]);
            let expect = ops[k].scale_shift(&Scalar::from_int(sign), 1);
            commutators.push((format!("[{side}0, {side}{k}] = {}theta*{side}{k}", if sign > 0 { "+" } else { "-" }), c == expect));
        }
    }
    Ok(RealizationReport { cases: action.cases, action: action.failure, commutators })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_examples() {
        let r = Realization::kappa(2).unwrap();
        let p = r.target().clone();
        let zbz = |i| &Poly::var(&p, p.zb(i)) * &Poly::var(&p, p.z(i));
        assert_eq!(r.image(0), &(&zbz(1) + &zbz(2)));
        let s = Realization::su2().unwrap();
        let q = s.target().clone();
        let zbz = |i| &Poly::var(&q, q.zb(i)) * &Poly::var(&q, q.z(i));
        assert_eq!(s.image(3), &(&zbz(1) - &zbz(2)).scale(&Scalar::ratio(1, 2)));
        let r1 = Realization::kappa(1).unwrap();
        let x1 = Poly::var(r1.source(), r1.source().x(1));
        let zb = Poly::var(r1.target(), r1.target().zb(1));
        assert_eq!(r1.pullback(&x1.pow(2)).unwrap(), zb.pow(2));
        let wrong = VarTable::spacetime(2).unwrap();
        assert!(matches!(r1.pullback(&Poly::one(&wrong)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn reduction_examples() {
        let t = VarTable::spacetime(1).unwrap();
        let x = |m| Poly::var(&t, t.x(m));
        assert_eq!(verify_reduction_kappa(&x(0), &x(1)).unwrap(), None);
        assert_eq!(verify_reduction_kappa(&x(1), &x(0)).unwrap(), None);
        let t2 = VarTable::spacetime(2).unwrap();
        let x0 = Poly::var(&t2, t2.x(0));
        assert_eq!(verify_reduction_kappa(&x0, &x0).unwrap(), None);
        let s = VarTable::spacetime(3).unwrap();
        let y = |m| Poly::var(&s, s.x(m));
        assert_eq!(verify_reduction_su2(&y(1), &y(2)).unwrap(), None);
        assert_eq!(verify_reduction_su2(&y(3), &y(3)).unwrap(), None);
        assert_eq!(verify_reduction_su2(&y(1), &y(1)).unwrap(), None);
        // x0 enters through the extension of the product
        assert_eq!(verify_reduction_su2(&(&y(0) * &y(1)), &y(0).pow(2)).unwrap(), None);
    }

    #[test]
    fn kappa_pullback_injective_on_low_degree() {
        for d in 1..=3 {
            assert!(Realization::kappa(d).unwrap().leading_terms_distinct(5).unwrap());
        }
    }

    #[test]
    fn left_right_small() {
        let rep = verify_left_right(2, 5, 3, 1).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}
