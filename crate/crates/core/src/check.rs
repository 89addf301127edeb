//! Witnesses for failed identities and deterministic parallel sweeps.

use std::fmt;

use rayon::prelude::*;

use crate::error::Result;
use crate::poly::Poly;
use crate::series::ThetaSeries;

/// First θ-order at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub order: u32,
    pub left: Poly,
    pub right: Poly,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta^{}: {} != {}", self.order, self.left, self.right)
    }
}

/// `None` when the series agree up to the smaller of their caps.
pub fn compare(a: &ThetaSeries, b: &ThetaSeries) -> Option<Mismatch> {
    let cap = match (a.cap(), b.cap()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    let top = a.max_order().into_iter().chain(b.max_order()).max()?;
    let top = cap.map_or(top, |c| top.min(c));
    (0..=top).find_map(|n| {
        let (l, r) = (a.coeff(n), b.coeff(n));
        (l != r).then_some(Mismatch { order: n, left: l, right: r })
    })
}

/// A failing case of a sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub inputs: Vec<String>,
    pub mismatch: Mismatch,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) at {}", self.inputs.join(", "), self.mismatch)
    }
}

/// Outcome of checking an identity on many inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub cases: usize,
    pub failure: Option<Failure>,
}

impl Sweep {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs `check` on every case in parallel; the reported failure is the first
/// in input order, independent of scheduling.
pub fn sweep<T, F>(cases: &[T], check: F) -> Result<Sweep>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<Failure>> + Sync,
{
    let results: Vec<Result<Option<Failure>>> = cases.par_iter().map(&check).collect();
    let mut failure = None;
    for r in results {
        if let Some(f) = r? {
            failure = Some(f);
            break;
        }
    }
    Ok(Sweep { cases: cases.len(), failure })
}
