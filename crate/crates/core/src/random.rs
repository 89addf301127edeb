//! Seeded random polynomials for the randomized sweeps.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multi::MultiIndex;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::vars::VarTable;

/// Deterministic source of small random polynomials.
pub struct PolySampler {
    rng: ChaCha8Rng,
}

impl PolySampler {
    pub fn new(seed: u64) -> Self {
        PolySampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn monomial(&mut self, n: usize, max_degree: u32) -> MultiIndex {
        let deg = self.rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[self.rng.gen_range(0..n)] += 1;
        }
        MultiIndex::from_vec(e)
    }

    /// A nonzero coefficient `p/q` with `|p| ≤ 5`, `q ≤ 3`, occasionally with an
    /// imaginary part.
    pub fn scalar(&mut self) -> Scalar {
        let mut c = Scalar::zero();
        while c.is_zero() {
            let p = self.rng.gen_range(-5i64..=5);
            let q = self.rng.gen_range(1i64..=3);
            c = Scalar::ratio(p, q);
        }
        if self.rng.gen_bool(0.2) {
            c = &c + &(&Scalar::i() * &Scalar::from_int(self.rng.gen_range(-2i64..=2)));
        }
        c
    }

    /// Up to `max_terms` terms of degree at most `max_degree`.
    pub fn poly(&mut self, table: &Arc<VarTable>, max_degree: u32, max_terms: usize) -> Poly {
        let k = self.rng.gen_range(1..=max_terms);
        let terms: Vec<_> = (0..k).map(|_| (self.monomial(table.len(), max_degree), self.scalar())).collect();
        Poly::from_terms(table, terms)
    }

    /// A polynomial with at least one term of exactly `max_degree`.
    pub fn poly_of_degree(&mut self, table: &Arc<VarTable>, degree: u32, max_terms: usize) -> Poly {
        loop {
            let mut p = self.poly(table, degree, max_terms);
            let mut e = vec![0u32; table.len()];
            for _ in 0..degree {
                e[self.rng.gen_range(0..table.len())] += 1;
            }
            p = &p + &Poly::monomial(table, MultiIndex::from_vec(e), self.scalar());
            if p.degree() == degree {
                return p;
            }
        }
    }
}

/// Every monomial (coefficient 1) of degree at most `max_degree`.
pub fn all_monomials(table: &Arc<VarTable>, max_degree: u32) -> Vec<Poly> {
    (0..=max_degree)
        .flat_map(|deg| MultiIndex::all_of_degree(table.len(), deg))
        .map(|m| Poly::monomial(table, m, Scalar::one()))
        .collect()
}
