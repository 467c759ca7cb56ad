//! Numerical semigroups of pole orders.
//!
//! The production path uses the closed recursions of a chain's semigroup
//! tower; [`member`] and [`gaps_brute_force`] are plain dynamic programs kept
//! as independent oracles.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use serde::Serialize;

use crate::splice::{level_generators, PuiseuxChain, ValidityReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("chain is not valid: {0}")]
    InvalidChain(ValidityReport),
    #[error("level {0} out of range")]
    LevelOutOfRange(usize),
    #[error("generators have gcd {0}, complement is infinite")]
    GcdNotOne(u64),
    #[error("generator list is empty or contains zero")]
    BadGenerators,
}

/// Coin-problem dynamic program up to `v`.
pub fn member(generators: &[u64], v: u64) -> bool {
    let v = v as usize;
    let mut reach = vec![false; v + 1];
    reach[0] = true;
    for i in 1..=v {
        reach[i] = generators
            .iter()
            .any(|&g| g != 0 && (g as usize) <= i && reach[i - g as usize]);
    }
    reach[v]
}

/// Membership via shortest paths on residues modulo the smallest generator.
/// Runs in time independent of `v`.
pub fn member_by_apery(generators: &[u64], v: u64) -> bool {
    if v == 0 {
        return true;
    }
    let Some(&m) = generators.iter().filter(|&&g| g > 0).min() else {
        return false;
    };
    let apery = apery_set(generators, m);
    apery[(v % m) as usize].is_some_and(|w| w <= v)
}

/// `w[r]` is the smallest semigroup element congruent to `r` mod `m`.
fn apery_set(generators: &[u64], m: u64) -> Vec<Option<u64>> {
    let m_us = m as usize;
    let mut dist: Vec<Option<u64>> = vec![None; m_us];
    dist[0] = Some(0);
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if dist[r] != Some(d) {
            continue;
        }
        for &g in generators.iter().filter(|&&g| g > 0 && g != m) {
            let nd = d + g;
            let nr = (r + (g % m) as usize) % m_us;
            if dist[nr].is_none_or(|old| nd < old) {
                dist[nr] = Some(nd);
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

/// The gaps of `⟨generators⟩`, by a dynamic program that stops once a run of
/// `min(generators)` consecutive members has been seen.
pub fn gaps_brute_force(generators: &[u64]) -> Result<Vec<u64>, SemigroupError> {
    if generators.is_empty() || generators.contains(&0) {
        return Err(SemigroupError::BadGenerators);
    }
    let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
    if g != 1 {
        return Err(SemigroupError::GcdNotOne(g));
    }
    let smallest = *generators.iter().min().expect("nonempty") as usize;
    let mut reach = vec![true];
    let mut gaps = Vec::new();
    let mut run = 1usize;
    let mut i = 0usize;
    while run < smallest {
        i += 1;
        let hit = generators
            .iter()
            .any(|&g| (g as usize) <= i && reach[i - g as usize]);
        reach.push(hit);
        if hit {
            run += 1;
        } else {
            run = 0;
            gaps.push(i as u64);
        }
    }
    Ok(gaps)
}

/// Constrained representation `v = a_0 q_1⋯q_k + Σ a_i p_i q_{i+1}⋯q_k`
/// with `0 ≤ a_i < q_i` for `i ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub value: u64,
    pub coefficients: Vec<u64>,
}

/// Normal form of `v` in the semigroup generated by the level generators of
/// `pairs`. Assumes each `p_i` is coprime to `q_i` and lies in the previous
/// level (the chain's semigroup condition); under that assumption `None`
/// means `v` is not a member.
pub fn normal_form_for_pairs(pairs: &[(u64, u64)], v: u64) -> Option<Vec<u64>> {
    let mut coeffs = vec![0u64; pairs.len() + 1];
    let mut rest = v;
    for (i, &(p, q)) in pairs.iter().enumerate().rev() {
        let a = (rest % q) * mod_inverse(p % q, q)? % q;
        let used = a.checked_mul(p)?;
        if used > rest {
            return None;
        }
        coeffs[i + 1] = a;
        rest = (rest - used) / q;
    }
    coeffs[0] = rest;
    Some(coeffs)
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// The tower `H_1 ⊂ ⋯ ⊂ H_n` of a valid chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupTower {
    #[serde(skip)]
    chain: PuiseuxChain,
    pub level_generators: Vec<Vec<u64>>,
    /// Generators of `W_k = q_{k+1}⋯q_n · H_k`.
    pub scaled_generators: Vec<Vec<u64>>,
    pub m: Vec<u64>,
    pub counts: Vec<u64>,
    pub gap_sizes: Vec<u64>,
}

impl SemigroupTower {
    pub fn new(chain: &PuiseuxChain) -> Result<Self, SemigroupError> {
        let report = chain.validate();
        if !report.is_valid() {
            return Err(SemigroupError::InvalidChain(report));
        }
        let n = chain.len();
        let pairs = chain.pairs();
        let level_gens: Vec<Vec<u64>> = (1..=n).map(|k| level_generators(&pairs[..k])).collect();
        let scaled = level_gens
            .iter()
            .enumerate()
            .map(|(i, gens)| {
                let s = chain.q_product(i + 2, n);
                gens.iter().map(|g| g * s).collect()
            })
            .collect();

        let (p1, q1) = pairs[0];
        let mut m = vec![p1 * q1];
        // (p+1)(q+1) is even because p and q are coprime.
        let mut counts = vec![(p1 + 1) * (q1 + 1) / 2];
        for &(p, q) in &pairs[1..] {
            let (pm, pc) = (*m.last().unwrap(), *counts.last().unwrap());
            m.push(q * pm + p * (q - 1));
            counts.push(q * pc + (q - 1) * (p - 1) / 2);
        }
        let gap_sizes = m.iter().zip(&counts).map(|(m, i)| m + 1 - i).collect();
        Ok(Self {
            chain: chain.clone(),
            level_generators: level_gens,
            scaled_generators: scaled,
            m,
            counts,
            gap_sizes,
        })
    }

    pub fn chain(&self) -> &PuiseuxChain {
        &self.chain
    }

    fn check_level(&self, k: usize) -> Result<usize, SemigroupError> {
        if k == 0 || k > self.chain.len() {
            Err(SemigroupError::LevelOutOfRange(k))
        } else {
            Ok(k - 1)
        }
    }

    pub fn normal_form(&self, k: usize, v: u64) -> Result<Option<NormalForm>, SemigroupError> {
        let k = self.check_level(k)? + 1;
        Ok(normal_form_for_pairs(&self.chain.pairs()[..k], v).map(|coefficients| NormalForm {
            value: v,
            coefficients,
        }))
    }

    pub fn contains(&self, k: usize, v: u64) -> Result<bool, SemigroupError> {
        Ok(self.normal_form(k, v)?.is_some())
    }

    /// `m_k`: every integer above it lies in `H_k`.
    pub fn conductor_bound(&self, k: usize) -> Result<u64, SemigroupError> {
        Ok(self.m[self.check_level(k)?])
    }

    /// `I_k = #(H_k ∩ [0, m_k])`.
    pub fn count_below(&self, k: usize) -> Result<u64, SemigroupError> {
        Ok(self.counts[self.check_level(k)?])
    }

    pub fn gap_size(&self, k: usize) -> Result<u64, SemigroupError> {
        Ok(self.gap_sizes[self.check_level(k)?])
    }

    /// Gaps of `H_k`, enumerated up to the conductor bound.
    pub fn gaps(&self, k: usize) -> Result<Vec<u64>, SemigroupError> {
        let m = self.conductor_bound(k)?;
        let mut out = Vec::new();
        for v in 0..=m {
            if !self.contains(k, v)? {
                out.push(v);
            }
        }
        Ok(out)
    }
}

impl NormalForm {
    /// Rebuilds the value from the coefficients and the level generators.
    pub fn evaluate(&self, generators: &[u64]) -> u64 {
        self.coefficients.iter().zip(generators).map(|(a, g)| a * g).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(pairs: &[(u64, u64)]) -> SemigroupTower {
        SemigroupTower::new(&PuiseuxChain::new(pairs.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn dp_membership() {
        assert!(member(&[6, 4, 9], 31));
        assert!(!member(&[2, 3], 1));
        assert!(!member(&[3, 4], 5));
        assert!(member(&[3, 4], 0));
    }

    #[test]
    fn apery_agrees_with_dp() {
        for gens in [vec![6, 4, 9], vec![12, 8, 18, 31], vec![3, 4], vec![6, 10]] {
            for v in 0..200 {
                assert_eq!(member_by_apery(&gens, v), member(&gens, v), "{gens:?} {v}");
            }
        }
    }

    #[test]
    fn gap_lists() {
        assert_eq!(gaps_brute_force(&[2, 3]).unwrap(), vec![1]);
        assert_eq!(gaps_brute_force(&[6, 4, 5]).unwrap(), vec![1, 2, 3, 7]);
        assert_eq!(gaps_brute_force(&[12, 8, 18, 31]).unwrap().len(), 27);
        assert_eq!(gaps_brute_force(&[4, 6]), Err(SemigroupError::GcdNotOne(2)));
        assert_eq!(gaps_brute_force(&[1]).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn normal_form_examples() {
        let t = tower(&[(2, 3), (9, 2)]);
        let nf = t.normal_form(2, 17).unwrap().unwrap();
        assert_eq!(nf.coefficients, vec![0, 2, 1]);
        assert_eq!(nf.evaluate(&t.level_generators[1]), 17);
        assert_eq!(t.normal_form(2, 0).unwrap().unwrap().coefficients, vec![0, 0, 0]);
        let t1 = tower(&[(2, 3)]);
        assert_eq!(t1.normal_form(1, 1).unwrap(), None);
        assert_eq!(t1.normal_form(2, 1), Err(SemigroupError::LevelOutOfRange(2)));
    }

    #[test]
    fn three_pair_example_monomial() {
        // 62 = 3·12 + 8 + 18 in the pole-order semigroup of the worked example
        let t = tower(&[(2, 3), (9, 2), (31, 2)]);
        let nf = t.normal_form(3, 62).unwrap().unwrap();
        assert_eq!(nf.coefficients, vec![3, 1, 1, 0]);
    }

    #[test]
    fn conductor_bounds() {
        assert_eq!(tower(&[(2, 3)]).conductor_bound(1).unwrap(), 6);
        assert_eq!(tower(&[(2, 3), (9, 2)]).conductor_bound(2).unwrap(), 21);
        assert_eq!(tower(&[(2, 3), (9, 2), (31, 2)]).conductor_bound(3).unwrap(), 73);
    }

    #[test]
    fn counts_and_gap_sizes() {
        let t = tower(&[(2, 3)]);
        assert_eq!((t.count_below(1).unwrap(), t.gap_size(1).unwrap()), (6, 1));
        let t = tower(&[(2, 3), (9, 2), (31, 2)]);
        assert_eq!(t.gap_sizes, vec![1, 6, 27]);
        assert_eq!(tower(&[(2, 3), (5, 2)]).gap_size(2).unwrap(), 4);
    }

    #[test]
    fn tower_gaps_match_oracle() {
        let t = tower(&[(2, 3), (5, 2)]);
        assert_eq!(t.gaps(2).unwrap(), vec![1, 2, 3, 7]);
        assert_eq!(t.scaled_generators[0], vec![6, 4]);
    }

    #[test]
    fn invalid_chain_rejected() {
        let c = PuiseuxChain::new(vec![(3, 2)]).unwrap();
        assert!(matches!(SemigroupTower::new(&c), Err(SemigroupError::InvalidChain(_))));
    }
}
