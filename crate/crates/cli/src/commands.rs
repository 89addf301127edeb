//! `star` and `verify`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use kstar::check::{compare, sweep, Failure, Sweep};
use kstar::cyclicity::{
    check_candidate, conditions_at_order, first_order_rules, format_condition, reduce_with_rules, CandidateReport,
    ConditionStatus, MeasureCandidate,
};
use kstar::random::PolySampler;
use kstar::realization::{fock_check, reduction_sweep_kappa, reduction_sweep_su2, verify_left_right, FockReport};
use kstar::star::{build_star, StarKind};
use kstar::twist::{falling_factorial_op, pure_derivative_op, verify_lemma2, wedge_star, TwistKind};
use kstar::{Poly, Scalar, Space, VarTable};
use thiserror::Error;

use crate::parse::{parse_poly, ParseError};
use crate::report::{Check, Report};

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_DIM: usize = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {arg}: {source}")]
    Parse { arg: &'static str, source: ParseError },
    #[error(transparent)]
    Engine(#[from] kstar::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Debug)]
pub struct StarRequest {
    pub product: StarKind,
    pub d: Option<usize>,
    pub f: String,
    pub g: String,
    pub order: Option<u32>,
    pub commutator: bool,
}

fn resolve_dim(d: Option<usize>, su2: bool) -> Result<usize, CliError> {
    match (d, su2) {
        (Some(d), true) if d != 3 => Err(CliError::Usage(format!("the su2 product lives in d = 3, got -d {d}"))),
        (_, true) => Ok(3),
        (Some(0), false) => Err(CliError::Usage("the dimension must be at least 1".into())),
        (d, false) => Ok(d.unwrap_or(DEFAULT_DIM)),
    }
}

fn table_for(kind: StarKind, d: usize) -> kstar::Result<Arc<VarTable>> {
    match kind.space() {
        Space::Spacetime => VarTable::spacetime(d),
        Space::Phase => VarTable::phase(d),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn cmd_star(req: &StarRequest) -> Result<Report, CliError> {
    let d = resolve_dim(req.d, req.product == StarKind::Su2)?;
    let s = build_star(req.product, d, req.order)?;
    let table = table_for(req.product, d)?;
    let f = parse_poly(&req.f, &table).map_err(|source| CliError::Parse { arg: "f", source })?;
    let g = parse_poly(&req.g, &table).map_err(|source| CliError::Parse { arg: "g", source })?;
    let series = if req.commutator { s.commutator(&f, &g)? } else { s.apply(&f, &g)? };

    let mut command = format!("star --product {} -d {d}", req.product);
    if let Some(n) = req.order {
        command += &format!(" --order {n}");
    }
    if req.commutator {
        command += " --commutator";
    }
    command += &format!(" {} {}", quote(&req.f), quote(&req.g));

    let mut r = Report::new(command, d);
    r.product = Some(req.product.to_string());
    r.cap = req.order;
    r.set_series(&series);
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Reduction,
    Lemma2,
    Associativity,
    Realizations,
    Wedge,
    Measure,
    Obstruction,
    Fock,
    Su2Reduction,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Reduction,
        Suite::Lemma2,
        Suite::Associativity,
        Suite::Realizations,
        Suite::Wedge,
        Suite::Measure,
        Suite::Obstruction,
        Suite::Fock,
        Suite::Su2Reduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reduction => "reduction",
            Suite::Lemma2 => "lemma2",
            Suite::Associativity => "associativity",
            Suite::Realizations => "realizations",
            Suite::Wedge => "wedge",
            Suite::Measure => "measure",
            Suite::Obstruction => "obstruction",
            Suite::Fock => "fock",
            Suite::Su2Reduction => "su2-reduction",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|k| k.name()).collect();
            CliError::Usage(format!("unknown suite `{s}` (expected one of: {})", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyRequest {
    pub suite: Suite,
    pub d: Option<usize>,
    pub degree: Option<u32>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub cutoff: Option<u32>,
    pub order: Option<u32>,
}

impl VerifyRequest {
    pub fn new(suite: Suite) -> Self {
        VerifyRequest { suite, d: None, degree: None, seed: None, samples: None, cutoff: None, order: None }
    }

    pub fn dim(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }
}

fn sweep_check(name: &str, sw: &Sweep, what: &str) -> Check {
    Check::new(name, sw.passed(), format!("{} {what}", sw.cases), sw.failure.as_ref().map(Failure::to_string))
}

pub fn cmd_verify(req: &VerifyRequest) -> Result<Report, CliError> {
    let su2 = req.suite == Suite::Su2Reduction;
    let d = resolve_dim(req.d, su2)?;
    let mut command = format!("verify {} -d {d}", req.suite);
    let mut r = Report::new(String::new(), d);
    match req.suite {
        Suite::Reduction => {
            let degree = req.degree.unwrap_or(4);
            command += &format!(" --degree {degree}");
            let sw = reduction_sweep_kappa(d, degree)?;
            r.push(sweep_check(
                "pullback(f *kappa g) = pullback(f) *wv pullback(g)",
                &sw,
                &format!("monomial pairs of degree <= {degree} each"),
            ));
        }
        Suite::Su2Reduction => {
            let degree = req.degree.unwrap_or(3);
            command += &format!(" --degree {degree}");
            su2_commutators(&mut r)?;
            let sw = reduction_sweep_su2(degree)?;
            r.push(sweep_check(
                "pullback(f *su2 g) = pullback(f) *wv pullback(g)",
                &sw,
                &format!("monomial pairs in x1, x2, x3 of degree <= {degree} each"),
            ));
        }
        Suite::Lemma2 => {
            let degree = req.degree.unwrap_or(4);
            command += &format!(" --degree {degree}");
            let sw = verify_lemma2(d, degree)?;
            r.push(sweep_check(
                "f *jordanian g = f *kappa g",
                &sw,
                &format!("monomial pairs of degree <= {degree} each"),
            ));
            let table = VarTable::spacetime(d)?;
            let bad = (0..=6).find(|&n| falling_factorial_op(&table, n) != pure_derivative_op(&table, n));
            r.push(Check::new(
                "E(E-1)...(E-n+1) = x^mu1...x^mun d_mu1...d_mun",
                bad.is_none(),
                "n = 0..6",
                bad.map(|n| format!("n = {n}")),
            ));
        }
        Suite::Associativity => {
            let degree = req.degree.unwrap_or(4);
            let samples = req.samples.unwrap_or(200);
            let seed = req.seed.unwrap_or(DEFAULT_SEED);
            command += &format!(" --degree {degree} --samples {samples} --seed {seed}");
            r.seed = Some(seed);
            for kind in [StarKind::Moyal, StarKind::WickVoros, StarKind::Kappa, StarKind::Su2] {
                let kd = if kind == StarKind::Su2 { 3 } else { d };
                let s = build_star(kind, kd, None)?;
                let mut sampler = PolySampler::new(seed);
                let triples: Vec<[Poly; 3]> = (0..samples)
                    .map(|_| std::array::from_fn(|_| sampler.poly(s.table(), degree, 3)))
                    .collect();
                let sw = sweep(&triples, |[f, g, h]| {
                    let lhs = s.apply_series(&s.apply(f, g)?, &kstar::ThetaSeries::from_poly(h.clone()))?;
                    let rhs = s.apply_series(&kstar::ThetaSeries::from_poly(f.clone()), &s.apply(g, h)?)?;
                    Ok(compare(&lhs, &rhs)
                        .map(|m| Failure { inputs: vec![f.to_string(), g.to_string(), h.to_string()], mismatch: m }))
                })?;
                r.push(sweep_check(
                    &format!("(f * g) * h = f * (g * h) for {kind} (d = {kd})"),
                    &sw,
                    &format!("random triples of degree <= {degree}"),
                ));
            }
        }
        Suite::Realizations => {
            let degree = req.degree.unwrap_or(4);
            let samples = req.samples.unwrap_or(50);
            let seed = req.seed.unwrap_or(DEFAULT_SEED);
            command += &format!(" --degree {degree} --samples {samples} --seed {seed}");
            r.seed = Some(seed);
            let rep = verify_left_right(d, samples, degree, seed)?;
            r.push(Check::new(
                "xL^mu f = x^mu * f and xR^mu f = f * x^mu",
                rep.action.is_none(),
                format!("{} (mu, f) cases, f random of degree <= {degree}", rep.cases),
                rep.action.as_ref().map(Failure::to_string),
            ));
            for (name, ok) in rep.commutators {
                r.push(Check::new(name, ok, "operator identity", None));
            }
        }
        Suite::Wedge => {
            let order = req.order.unwrap_or(4);
            command += &format!(" --order {order}");
            for kind in [TwistKind::Jordanian, TwistKind::JordanianRs] {
                wedge_check(&mut r, kind, d, order)?;
            }
        }
        Suite::Measure => measure_suite(&mut r, d)?,
        Suite::Obstruction => obstruction_suite(&mut r, d)?,
        Suite::Fock => {
            let cutoff = req.cutoff.unwrap_or(3);
            command += &format!(" --cutoff {cutoff}");
            fock_suite(&mut r, &fock_check(d, cutoff)?);
        }
    }
    r.command = command;
    Ok(r)
}

fn su2_commutators(r: &mut Report) -> Result<(), CliError> {
    let s = build_star(StarKind::Su2, 3, None)?;
    let t = s.table().clone();
    let x = |k| Poly::var(&t, t.x(k));
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let c = s.commutator(&x(i), &x(j))?;
        let mut expect = kstar::ThetaSeries::zero(&t);
        expect.add_at(1, &x(k).scale(&Scalar::i()));
        let m = compare(&c, &expect);
        r.push(Check::new(format!("[x{i}, x{j}] = i*theta*x{k}"), m.is_none(), "su2 product", m.map(|m| m.to_string())));
    }
    Ok(())
}

fn wedge_check(r: &mut Report, kind: TwistKind, d: usize, order: u32) -> Result<(), CliError> {
    let t = VarTable::spacetime(d)?;
    let mut witness = None;
    'pairs: for mu in 0..=d {
        for nu in mu + 1..=d {
            let forms = wedge_star(kind, mu, nu, d, order)?;
            for (n, w) in forms.iter().enumerate() {
                for a in 0..=d {
                    for b in a + 1..=d {
                        let got = w.component(t.x(a), t.x(b));
                        let want = if n == 0 && (a, b) == (mu, nu) { Poly::one(&t) } else { Poly::zero(&t) };
                        if got != want {
                            witness = Some(format!(
                                "dx{mu} ^* dx{nu}, theta^{n}, component (x{a}, x{b}): {got} != {want}"
                            ));
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    r.push(Check::new(
        format!("dx^mu ^* dx^nu = dx^mu ^ dx^nu ({kind})"),
        witness.is_none(),
        format!("all mu < nu, theta-orders 0..{order}"),
        witness,
    ));
    Ok(())
}

fn conditions_text(conds: &[kstar::diffop::DiffOp]) -> String {
    conds.iter().map(|c| format!("{} = 0", format_condition(c))).collect::<Vec<_>>().join("\n")
}

fn candidate_witness(rep: &CandidateReport) -> Option<String> {
    rep.conditions.iter().find(|c| !c.passed()).map(|c| format!("{}: residual {}", c.condition, c.residual))
}

fn measure_suite(r: &mut Report, d: usize) -> Result<(), CliError> {
    let kappa = build_star(StarKind::Kappa, d, None)?;
    let rs = build_star(StarKind::FromTwist(TwistKind::JordanianRs), d, None)?;
    let got = conditions_at_order(&kappa, 1)?.reduced();
    let want = first_order_rules(kappa.table());
    r.push(Check::new(
        "order-1 conditions = {d_x0(h) = 0, x^k d_k(h) + d*h = 0}",
        got == want,
        conditions_text(&got),
        (got != want).then(|| conditions_text(&want)),
    ));
    let rs_got = conditions_at_order(&rs, 1)?.reduced();
    r.push(Check::new(
        "jordanian-rs order-1 conditions are the kappa ones",
        rs_got == got,
        conditions_text(&rs_got),
        None,
    ));
    for m in MeasureCandidate::standard(d)? {
        let rep = check_candidate(&m, &kappa, 1)?;
        r.push(Check::new(
            format!("h = {m} solves the order-1 conditions"),
            rep.passed(),
            format!("{} conditions", rep.conditions.len()),
            candidate_witness(&rep),
        ));
    }
    Ok(())
}

fn status_text(s: &ConditionStatus) -> String {
    match s {
        ConditionStatus::Implied => "implied by the order-1 rules".into(),
        ConditionStatus::ForcesZero(c) => format!("reduces to ({c})*h = 0"),
        ConditionStatus::Unreduced => "not reducible by the order-1 rules".into(),
    }
}

fn obstruction_suite(r: &mut Report, d: usize) -> Result<(), CliError> {
    for kind in [StarKind::Kappa, StarKind::FromTwist(TwistKind::JordanianRs)] {
        let s = build_star(kind, d, None)?;
        let conds = conditions_at_order(&s, 2)?.reduced();
        let red = reduce_with_rules(&conds, &first_order_rules(s.table()))?;
        let forcing = red.constant_forcing();
        let mut detail: Vec<String> = red
            .conditions
            .iter()
            .map(|c| format!("{} = 0: {}", format_condition(&c.original), status_text(&c.status)))
            .collect();
        if detail.is_empty() {
            detail.push("the order-2 integrand vanishes identically: no conditions".into());
        }
        let witness = match &forcing {
            Some(_) => None,
            None if red.conditions.is_empty() => Some("no order-2 conditions".to_string()),
            None => Some(format!("{} of {} conditions implied, none of the form c*h = 0", red.conditions.len() - red.remaining().len(), red.conditions.len())),
        };
        let name = match &forcing {
            Some(c) => format!("{kind} order 2 forces h = 0: ({c})*h = 0"),
            None => format!("{kind} order 2 reduces to c*h = 0 with c != 0"),
        };
        r.push(Check::new(name, forcing.is_some(), detail.join("\n"), witness));
    }
    let kappa = build_star(StarKind::Kappa, d, None)?;
    for m in MeasureCandidate::standard(d)? {
        let rep = check_candidate(&m, &kappa, 2)?;
        let residuals: Vec<String> = rep.conditions.iter().map(|c| format!("{}: residual {}", c.condition, c.residual)).collect();
        r.push(Check::new(
            format!("h = {m} fails order 2 with a nonzero residual"),
            !rep.passed(),
            residuals.join("\n"),
            rep.passed().then(|| "every order-2 residual is zero".to_string()),
        ));
    }
    Ok(())
}

fn fock_suite(r: &mut Report, rep: &FockReport) {
    for c in rep.algebra.iter().chain(&rep.canonical) {
        let detail = format!(
            "{} states with n_i <= {}; {} violating states{}",
            rep.states,
            rep.cutoff,
            c.violations.len(),
            if c.violations.is_empty() { String::new() } else if c.confined_to_top { ", all at top occupation".into() } else { ", some below the top".into() }
        );
        let pass = c.holds_below_cutoff && c.confined_to_top;
        let witness = (!pass).then(|| format!("{:?}", c.violations.first()));
        r.push(Check::new(format!("{} below the cutoff", c.name), pass, detail, witness));
    }
}
