//! Power-commutator presentations of finite p-groups and their expansion
//! to Cayley tables by collection from the left.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, LoadOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcError {
    #[error("presentation needs at least one generator")]
    NoGenerators,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("relation for generator {0} has the wrong length or mentions an earlier generator")]
    BadRelation(usize),
    #[error("exponent {0} out of range")]
    BadExponent(u32),
    #[error("group of order {0} too large")]
    TooLarge(u64),
    #[error("inconsistent presentation: {0}")]
    Inconsistent(GroupError),
}

/// A consistent pc presentation on generators `g_0, …, g_{d-1}` of a group
/// of order `p^d`.
///
/// Normal words are exponent vectors `g_0^{a_0} ⋯ g_{d-1}^{a_{d-1}}` with
/// `0 ≤ a_i < p`. The normal word of exponent vector `a` has element index
/// `Σ a_i p^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcPresentation {
    prime: u32,
    ngens: usize,
    /// `powers[i]` is the normal word of `g_i^p`.
    powers: Vec<Vec<u32>>,
    /// `commutators[j][i]` (for `j > i`) is the normal word of `[g_j, g_i]`.
    commutators: Vec<Vec<Vec<u32>>>,
}

impl PcPresentation {
    /// Presentation with all relations trivial: the elementary abelian
    /// group of rank `ngens`.
    pub fn elementary_abelian(prime: u32, ngens: usize) -> Self {
        let zero = vec![0u32; ngens];
        PcPresentation {
            prime,
            ngens,
            powers: vec![zero.clone(); ngens],
            commutators: vec![vec![zero; ngens]; ngens],
        }
    }

    /// Heisenberg group of order `p^3` (odd p): `x, y, z` of order p with
    /// `[y, x] = z⁻¹` and `z` central.
    pub fn heisenberg(prime: u32) -> Self {
        let mut pc = Self::elementary_abelian(prime, 3);
        pc.commutators[1][0] = vec![0, 0, prime - 1];
        pc
    }

    /// Validated constructor. `commutators` lists `(j, i, word)` with `j > i`;
    /// unlisted pairs are trivial.
    pub fn new(
        prime: u32,
        ngens: usize,
        powers: Vec<Vec<u32>>,
        commutators: &[(usize, usize, Vec<u32>)],
    ) -> Result<Self, PcError> {
        if ngens == 0 {
            return Err(PcError::NoGenerators);
        }
        if !crate::fplinalg::is_prime(prime as u64) {
            return Err(PcError::NotPrime(prime as u64));
        }
        if powers.len() != ngens {
            return Err(PcError::BadRelation(powers.len()));
        }
        let check_word = |w: &[u32], after: usize, gen: usize| -> Result<(), PcError> {
            if w.len() != ngens {
                return Err(PcError::BadRelation(gen));
            }
            for (k, &a) in w.iter().enumerate() {
                if a >= prime {
                    return Err(PcError::BadExponent(a));
                }
                if a != 0 && k <= after {
                    return Err(PcError::BadRelation(gen));
                }
            }
            Ok(())
        };
        for (i, w) in powers.iter().enumerate() {
            check_word(w, i, i)?;
        }
        let mut pc = Self::elementary_abelian(prime, ngens);
        pc.powers = powers;
        for (j, i, w) in commutators {
            if *j >= ngens || i >= j {
                return Err(PcError::BadRelation(*j));
            }
            check_word(w, *j, *j)?;
            pc.commutators[*j][*i] = w.clone();
        }
        Ok(pc)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn power_word(&self, i: usize) -> &[u32] {
        &self.powers[i]
    }

    /// Nontrivial commutator relations as `(j, i, word)`.
    pub fn commutator_relations(&self) -> Vec<(usize, usize, Vec<u32>)> {
        let mut out = Vec::new();
        for j in 0..self.ngens {
            for i in 0..j {
                let w = &self.commutators[j][i];
                if w.iter().any(|&a| a != 0) {
                    out.push((j, i, w.clone()));
                }
            }
        }
        out
    }

    pub fn order(&self) -> Option<u64> {
        (self.prime as u64).checked_pow(self.ngens as u32)
    }

    pub fn index_of(&self, word: &[u32]) -> usize {
        word.iter().rev().fold(0usize, |acc, &a| acc * self.prime as usize + a as usize)
    }

    pub fn word_of(&self, mut index: usize) -> Vec<u32> {
        let p = self.prime as usize;
        (0..self.ngens)
            .map(|_| {
                let a = index % p;
                index /= p;
                a as u32
            })
            .collect()
    }

    /// `w ← w · g_i`, collecting to normal form.
    pub fn mul_gen(&self, w: &mut [u32], i: usize) {
        let tail: Vec<u32> = w[i + 1..].to_vec();
        w[i + 1..].fill(0);
        w[i] += 1;
        if w[i] == self.prime {
            w[i] = 0;
            w[i + 1..].copy_from_slice(&self.powers[i][i + 1..]);
        }
        // tail^{g_i} = ∏_k (g_k [g_k, g_i])^{tail_k}
        for (off, &a) in tail.iter().enumerate() {
            let k = i + 1 + off;
            for _ in 0..a {
                self.mul_gen(w, k);
                self.mul_word(w, &self.commutators[k][i]);
            }
        }
    }

    /// `w ← w · u` for a normal word `u`.
    pub fn mul_word(&self, w: &mut [u32], u: &[u32]) {
        for (k, &a) in u.iter().enumerate() {
            for _ in 0..a {
                self.mul_gen(w, k);
            }
        }
    }

    /// Product of two normal words.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut w = a.to_vec();
        self.mul_word(&mut w, b);
        w
    }

    /// Materializes the Cayley table on normal words and validates it.
    pub fn to_group(&self, opts: &LoadOptions) -> Result<FiniteGroup, PcError> {
        let n = self.order().filter(|&n| n <= opts.cap as u64).ok_or(PcError::TooLarge(
            self.order().unwrap_or(u64::MAX),
        ))? as usize;
        let d = self.ngens;
        // right multiplication by each generator
        let mut right = vec![0u32; n * d];
        for x in 0..n {
            let w = self.word_of(x);
            for i in 0..d {
                let mut v = w.clone();
                self.mul_gen(&mut v, i);
                right[x * d + i] = self.index_of(&v) as u32;
            }
        }
        // y = prev(y)·g_k with k the last generator occurring in y
        let mut prev = vec![(0usize, 0usize); n];
        for y in 1..n {
            let mut w = self.word_of(y);
            let k = (0..d).rev().find(|&k| w[k] != 0).unwrap();
            w[k] -= 1;
            prev[y] = (self.index_of(&w), k);
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            table[x * n] = x as u32;
            for y in 1..n {
                let (u, k) = prev[y];
                let xu = table[x * n + u] as usize;
                table[x * n + y] = right[xu * d + k];
            }
        }
        FiniteGroup::validate_flat(n, table, opts).map_err(PcError::Inconsistent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{AssocCheck, SeriesKind};

    #[test]
    fn cyclic_and_elementary() {
        let c3 = PcPresentation::elementary_abelian(3, 1).to_group(&LoadOptions::default()).unwrap();
        assert_eq!((c3.order(), c3.exponent()), (3, 3));
        let c55 = PcPresentation::elementary_abelian(5, 2).to_group(&LoadOptions::default()).unwrap();
        assert_eq!((c55.order(), c55.exponent()), (25, 5));
        assert!(c55.is_abelian());
    }

    #[test]
    fn heisenberg_by_collection() {
        let pc = PcPresentation::heisenberg(3);
        let g = pc.to_group(&LoadOptions::default()).unwrap();
        assert_eq!(g.order(), 27);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 3);
        // [x, y] = z
        assert_eq!(g.comm(1, 3), 9);
        let lcs = g.series(SeriesKind::LowerCentral);
        assert_eq!(lcs.len(), 3);
    }

    #[test]
    fn cyclic_nine_via_power_relation() {
        let pc = PcPresentation::new(3, 2, vec![vec![0, 1], vec![0, 0]], &[]).unwrap();
        let g = pc.to_group(&LoadOptions::default()).unwrap();
        assert_eq!(g.exponent(), 9);
        assert_eq!(g.element_order(1), 9);
    }

    #[test]
    fn inconsistent_presentation_rejected() {
        // g0^3 = g1 with [g1, g0] = g2 and g2 of order 3: g1 = g0^3 must
        // commute with g0, so this is inconsistent.
        let pc = PcPresentation::new(
            3,
            3,
            vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]],
            &[(1, 0, vec![0, 0, 1])],
        )
        .unwrap();
        let opts = LoadOptions { assoc: AssocCheck::Always, ..LoadOptions::default() };
        assert!(matches!(pc.to_group(&opts), Err(PcError::Inconsistent(_))));
    }

    #[test]
    fn malformed_relations() {
        assert_eq!(PcPresentation::new(3, 0, vec![], &[]), Err(PcError::NoGenerators));
        assert_eq!(PcPresentation::new(4, 1, vec![vec![0]], &[]), Err(PcError::NotPrime(4)));
        assert!(PcPresentation::new(3, 2, vec![vec![1, 0], vec![0, 0]], &[]).is_err());
        assert!(PcPresentation::new(3, 2, vec![vec![0, 0]; 2], &[(0, 1, vec![0, 0])]).is_err());
    }

    #[test]
    fn index_round_trip() {
        let pc = PcPresentation::heisenberg(5);
        for x in 0..125 {
            assert_eq!(pc.index_of(&pc.word_of(x)), x);
        }
    }
}
