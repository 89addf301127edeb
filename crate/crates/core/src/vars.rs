//! Variable tables: which indeterminates a polynomial is written in.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Role of a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// Spacetime coordinate `x^μ`, `μ = 0..=d`.
    Spacetime(usize),
    /// Holomorphic coordinate `z^i`, `i = 1..=d`.
    Holomorphic(usize),
    /// Antiholomorphic coordinate `z̄^i`, `i = 1..=d`.
    AntiHolomorphic(usize),
}

/// Position of a variable inside its table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// `x^0, …, x^d`.
    Spacetime,
    /// `z^1, …, z^d, z̄^1, …, z̄^d`.
    Phase,
}

/// Ordered list of named variables of one space. Shared behind an `Arc`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    space: Space,
    dim: usize,
    names: Vec<String>,
    kinds: Vec<VarKind>,
}

impl VarTable {
    /// `x0, …, xd`.
    pub fn spacetime(d: usize) -> Result<Arc<VarTable>> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension d must be at least 1".into()));
        }
        let kinds: Vec<_> = (0..=d).map(VarKind::Spacetime).collect();
        let names = (0..=d).map(|mu| format!("x{mu}")).collect();
        Ok(Arc::new(VarTable { space: Space::Spacetime, dim: d, names, kinds }))
    }

    /// `z1, …, zd, zb1, …, zbd`.
    pub fn phase(d: usize) -> Result<Arc<VarTable>> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension d must be at least 1".into()));
        }
        let mut kinds: Vec<_> = (1..=d).map(VarKind::Holomorphic).collect();
        kinds.extend((1..=d).map(VarKind::AntiHolomorphic));
        let names = kinds
            .iter()
            .map(|k| match k {
                VarKind::Holomorphic(i) => format!("z{i}"),
                VarKind::AntiHolomorphic(i) => format!("zb{i}"),
                VarKind::Spacetime(_) => unreachable!(),
            })
            .collect();
        Ok(Arc::new(VarTable { space: Space::Phase, dim: d, names, kinds }))
    }

    pub fn space(&self) -> Space {
        self.space
    }

    /// The dimension `d` the table was built for.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.0]
    }

    pub fn kind(&self, v: Var) -> VarKind {
        self.kinds[v.0]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.len()).map(Var)
    }

    pub fn lookup(&self, name: &str) -> Result<Var> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Var)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// `x^μ` in a spacetime table.
    pub fn x(&self, mu: usize) -> Var {
        assert!(self.space == Space::Spacetime && mu <= self.dim, "no x{mu} in {self}");
        Var(mu)
    }

    /// `z^i` in a phase table (1-based).
    pub fn z(&self, i: usize) -> Var {
        assert!(self.space == Space::Phase && (1..=self.dim).contains(&i), "no z{i} in {self}");
        Var(i - 1)
    }

    /// `z̄^i` in a phase table (1-based).
    pub fn zb(&self, i: usize) -> Var {
        assert!(self.space == Space::Phase && (1..=self.dim).contains(&i), "no zb{i} in {self}");
        Var(self.dim + i - 1)
    }

    /// Spatial coordinates `x^1..x^d` of a spacetime table.
    pub fn spatial(&self) -> impl Iterator<Item = Var> {
        assert_eq!(self.space, Space::Spacetime);
        (1..=self.dim).map(Var)
    }

    pub(crate) fn ensure_same(a: &Arc<VarTable>, b: &Arc<VarTable>) -> Result<()> {
        if Arc::ptr_eq(a, b) || a == b {
            Ok(())
        } else {
            Err(Error::TableMismatch { left: a.to_string(), right: b.to_string() })
        }
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_lookup() {
        let t = VarTable::phase(2).unwrap();
        assert_eq!(t.to_string(), "[z1, z2, zb1, zb2]");
        assert_eq!(t.lookup("zb2").unwrap(), t.zb(2));
        assert!(matches!(t.lookup("x0"), Err(Error::UnknownVariable(_))));
        let s = VarTable::spacetime(3).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.kind(s.x(2)), VarKind::Spacetime(2));
        assert!(VarTable::spacetime(0).is_err());
    }
}
