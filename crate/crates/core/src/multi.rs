//! Exponent vectors, used both as monomials and as derivative multi-indices.

use std::cmp::Ordering;
use std::fmt;

use crate::vars::Var;

/// Dense exponent vector, one entry per table variable.
///
/// The `Ord` instance is graded lexicographic: total degree first, then the
/// earlier variable wins ties (`x0 > x1 > …`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, v: Var) -> Self {
        let mut e = vec![0; n];
        e[v.0] = 1;
        MultiIndex(e)
    }

    pub fn from_vec(e: Vec<u32>) -> Self {
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, v: Var) -> u32 {
        self.0[v.0]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, o: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self − o`, or `None` if some entry would go negative.
    pub fn checked_sub(&self, o: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn divides(&self, o: &MultiIndex) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn with(&self, v: Var, delta: i64) -> Option<MultiIndex> {
        let mut e = self.0.clone();
        let n = e[v.0] as i64 + delta;
        if n < 0 {
            return None;
        }
        e[v.0] = n as u32;
        Some(MultiIndex(e))
    }

    pub fn inc(&self, v: Var) -> MultiIndex {
        let mut e = self.0.clone();
        e[v.0] += 1;
        MultiIndex(e)
    }

    /// Entrywise minimum.
    pub fn meet(&self, o: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// All `γ ≤ self` entrywise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &e in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=e).map(move |k| {
                        let mut p = prefix.clone();
                        p.push(k);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiIndex).collect()
    }

    /// Product of binomials `Π C(self_i, γ_i)`.
    pub fn binomial(&self, gamma: &MultiIndex) -> u64 {
        self.0
            .iter()
            .zip(&gamma.0)
            .map(|(&n, &k)| binom(n as u64, k as u64))
            .product()
    }

    /// `α! = Π α_i!`.
    pub fn factorial(&self) -> u64 {
        self.0.iter().map(|&e| (1..=e as u64).product::<u64>()).product()
    }

    /// Multinomial coefficient `|α|! / α!`.
    pub fn multinomial(&self) -> u64 {
        (1..=self.degree() as u64).product::<u64>() / self.factorial()
    }

    /// `k·α`.
    pub fn scale_by(&self, k: u32) -> MultiIndex {
        MultiIndex(self.0.iter().map(|e| e * k).collect())
    }

    /// Every exponent vector of total degree exactly `deg` over `n` variables,
    /// in ascending graded-lex order.
    pub fn all_of_degree(n: usize, deg: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(deg);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in 0..=deg {
                prefix.push(k);
                rec(n, deg - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if deg == 0 {
                out.push(MultiIndex(vec![]));
            }
            return out;
        }
        rec(n, deg, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Expands the index into a sorted list of variables with repetition.
    pub fn to_vars(&self) -> Vec<Var> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(Var(i), e as usize))
            .collect()
    }
}

pub(crate) fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl Ord for MultiIndex {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex::from_vec(vec![0, 2]);
        let b = MultiIndex::from_vec(vec![1, 0]);
        let c = MultiIndex::from_vec(vec![1, 1]);
        let d = MultiIndex::from_vec(vec![2, 0]);
        assert!(b < a);
        assert!(a < c && c < d);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::all_of_degree(4, 3).len(), 20);
        assert_eq!(MultiIndex::from_vec(vec![2, 1]).sub_indices().len(), 6);
        assert_eq!(binom(6, 2), 15);
    }
}
