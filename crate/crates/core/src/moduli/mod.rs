//! Parametrisations realising a prescribed chain.
//!
//! With `y(t)` fixed, the coefficients of a monic `x(t)` are determined one at
//! a time from the top: each pass reruns the staged reduction with the next
//! coefficient symbolic and all lower ones unknown, and stops at the first
//! leading coefficient that involves them. A gap-degree coefficient linear in
//! the symbol pins it; reaching an unknown first means the symbol is free.

mod build;
mod solve;
mod sym;

pub use build::build_positive_braid_curve;
pub use solve::{solve_for_x, solve_for_x_with_retries, solve_random_y};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Rational, UniPoly};
use crate::semigroup::normal_form_for_pairs;
use crate::splice::{ChainError, PuiseuxChain};

/// Retry budget for degenerate solves.
pub const DEFAULT_MAX_RETRIES: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuliError {
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("chain does not satisfy d_n >= p_1 q_2...q_n - 1")]
    NotSufficientlyNegative,
    #[error("chain is not a positive braid")]
    NotPositiveBraid,
    #[error("y(t) must be monic of degree {expected}")]
    BadY { expected: u64 },
    #[error("stage {index} index out of range")]
    StageOutOfRange { index: usize },
    #[error("no curve with this chain: coefficient of t^{exponent} at stage {stage} is a nonzero constant")]
    Infeasible { stage: usize, exponent: u64 },
    #[error("coefficient of t^{exponent} at stage {stage} is not linear in its newest unknown")]
    TriangularityViolation { stage: usize, exponent: u64 },
    #[error("every attempt was degenerate ({attempts} tries)")]
    AllDegenerate { attempts: u32 },
    #[error("solved curve recognises as {found}, not the target")]
    RoundTrip { found: String },
}

/// How coefficients that no equation pins down are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum FreePolicy {
    Zero,
    Random { seed: u64 },
}

/// Internal assignment rule; the builder also uses a template curve and
/// asks for unit stage-leading coefficients.
pub(crate) struct Assigner {
    template: Option<UniPoly>,
    rng: Option<ChaCha8Rng>,
    pub(crate) unit_leading: bool,
}

impl Assigner {
    pub(crate) fn from_policy(policy: FreePolicy) -> Self {
        Self {
            template: None,
            rng: match policy {
                FreePolicy::Zero => None,
                FreePolicy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
            unit_leading: false,
        }
    }

    pub(crate) fn template(base: UniPoly, jitter: Option<u64>) -> Self {
        Self {
            template: Some(base),
            rng: jitter.map(ChaCha8Rng::seed_from_u64),
            unit_leading: true,
        }
    }

    pub(crate) fn value(&mut self, index: usize) -> Rational {
        let base = self
            .template
            .as_ref()
            .map_or_else(|| Rational::from_integer(0.into()), |t| t.coeff(index));
        match &mut self.rng {
            Some(rng) => base + Rational::from_integer(rng.gen_range(-5i64..=5).into()),
            None => base,
        }
    }
}

/// The system `T_{m,k} = 0` for a chain and a fixed `y(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliSystem {
    pub chain: PuiseuxChain,
    #[serde(skip)]
    pub y: UniPoly,
    /// Indices `i` of the unknown coefficients `a_i` of `x(t)`, processed in
    /// this order.
    pub unknown_indices: Vec<usize>,
    /// `e(1), …, e(n)`.
    pub thresholds: Vec<u64>,
    /// Equation counts for stages `2..=n`.
    pub equations_per_stage: Vec<u64>,
}

impl ModuliSystem {
    pub fn new(chain: &PuiseuxChain, y: &UniPoly) -> Result<Self, ModuliError> {
        let inv = chain.invariants()?;
        if !inv.suff_negative {
            return Err(ModuliError::NotSufficientlyNegative);
        }
        let m = chain.y_degree();
        if y.degree() != Some(m as usize) || !y.is_monic() {
            return Err(ModuliError::BadY { expected: m });
        }
        let n = chain.len();
        let mut thresholds = vec![chain.p(1) * chain.degree()];
        for k in 2..=n {
            let prev = thresholds[k - 2];
            thresholds.push(prev + (chain.q(k) - 1) * chain.p(k) * chain.q_product(k + 1, n));
        }
        Ok(Self {
            chain: chain.clone(),
            y: y.clone(),
            unknown_indices: (0..chain.degree() as usize).rev().collect(),
            thresholds,
            equations_per_stage: (2..=n).map(|k| equation_count(chain, k).expect("in range")).collect(),
        })
    }
}

/// Coefficients of `y_k` that must vanish between the a priori degree
/// `p_{k-1} q_{k-1} q_k⋯q_n - 1` and the target `p_k q_{k+1}⋯q_n`:
/// `-Δ_k q_{k+1}⋯q_n - 1`.
pub fn equation_count(chain: &PuiseuxChain, k: usize) -> Result<u64, ModuliError> {
    if k < 2 || k > chain.len() {
        return Err(ModuliError::StageOutOfRange { index: k });
    }
    let q = chain.q_product(k + 1, chain.len()) as i64;
    Ok((-chain.delta(k) * q - 1) as u64)
}

/// Exponents in the stage-`k` window that are not pole orders of the
/// previous level; each carries an equation that consumes an unknown.
pub fn gap_equations(chain: &PuiseuxChain, k: usize) -> Result<Vec<u64>, ModuliError> {
    if k < 2 || k > chain.len() {
        return Err(ModuliError::StageOutOfRange { index: k });
    }
    let n = chain.len();
    let lo = chain.p(k) * chain.q_product(k + 1, n);
    let hi = chain.p(k - 1) * chain.q(k - 1) * chain.q_product(k, n);
    let g = chain.q_product(k, n);
    let pairs = &chain.pairs()[..k - 1];
    Ok((lo + 1..hi)
        .rev()
        .filter(|m| m % g != 0 || normal_form_for_pairs(pairs, m / g).is_none())
        .collect())
}

/// `deg y + (deg x - 1 - Σ_{k≥2} #gap equations at stage k)`. The constant
/// term of `x` is a translation and is not counted.
pub fn expected_dimension(chain: &PuiseuxChain) -> Result<i64, ModuliError> {
    if !chain.invariants()?.suff_negative {
        return Err(ModuliError::NotSufficientlyNegative);
    }
    let mut used = 0i64;
    for k in 2..=chain.len() {
        used += gap_equations(chain, k)?.len() as i64;
    }
    Ok(chain.y_degree() as i64 + chain.degree() as i64 - 1 - used)
}

/// Equation `N ≥ Σ_{k≥2} (-Δ_k) q_{k+1}⋯q_n - 1`, evaluated from the edge
/// determinants alone.
pub fn counting_identity_holds(chain: &PuiseuxChain) -> bool {
    let n = chain.len();
    let rhs: i64 = (2..=n).map(|k| -chain.delta(k) * chain.q_product(k + 1, n) as i64).sum();
    chain.degree() as i64 >= rhs - 1
}

/// Record of a gap equation solved for one unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolvedUnknown {
    pub index: usize,
    /// Stage `k` whose generator `y_k` carries the equation.
    pub stage: usize,
    pub exponent: u64,
    #[serde(serialize_with = "crate::algebra::serialize_rational")]
    pub value: Rational,
    /// Whether `deg x - index = e(k - 1) - exponent`; diagnostic only.
    pub threshold_consistent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeParameter {
    pub index: usize,
    #[serde(serialize_with = "crate::algebra::serialize_rational")]
    pub value: Rational,
    /// Set when the unknown controls a stage-leading coefficient.
    pub controls_leading: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliSolveReport {
    pub chain: PuiseuxChain,
    pub x: UniPoly,
    pub y: UniPoly,
    pub free_parameters: Vec<FreeParameter>,
    pub solved: Vec<SolvedUnknown>,
    /// `B_2, …, B_n`: the coefficient of `t^{p_k q_{k+1}⋯q_n}` in `y_k`.
    pub stage_leading_coeffs: Vec<Rational>,
    pub degenerate: bool,
    pub expected_dimension: i64,
    pub seed: Option<u64>,
    pub attempts: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(p: &[(u64, u64)]) -> PuiseuxChain {
        PuiseuxChain::new(p.to_vec()).unwrap()
    }

    #[test]
    fn equation_counts() {
        let c = chain(&[(2, 3), (9, 2), (31, 2)]);
        assert_eq!(equation_count(&c, 2).unwrap(), 5);
        assert_eq!(equation_count(&c, 3).unwrap(), 4);
        assert_eq!(equation_count(&chain(&[(2, 3), (5, 2)]), 2).unwrap(), 6);
        assert!(equation_count(&c, 1).is_err());
        assert!(equation_count(&c, 4).is_err());
    }

    #[test]
    fn gap_equation_windows() {
        assert_eq!(gap_equations(&chain(&[(2, 3), (5, 2)]), 2).unwrap(), vec![11, 9, 7]);
        assert_eq!(gap_equations(&chain(&[(2, 3), (11, 2)]), 2).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn expected_dimensions() {
        assert_eq!(expected_dimension(&chain(&[(2, 3)])).unwrap(), 4);
        assert_eq!(expected_dimension(&chain(&[(2, 3), (5, 2)])).unwrap(), 6);
        // Window (11, 12) is empty: no equations.
        assert_eq!(expected_dimension(&chain(&[(2, 3), (11, 2)])).unwrap(), 4 + 5);
    }

    #[test]
    fn thresholds() {
        let c = chain(&[(2, 3), (9, 2), (31, 2)]);
        let s = ModuliSystem::new(&c, &UniPoly::from_ints(&[0, 0, 1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(s.thresholds, vec![24, 24 + 18, 24 + 18 + 31]);
        assert_eq!(s.equations_per_stage, vec![5, 4]);
        assert_eq!(s.unknown_indices.len(), 12);
    }

    #[test]
    fn counting_identity_matches_flag() {
        for p in [[(2u64, 3u64), (5, 2)], [(2, 3), (3, 2)], [(2, 3), (7, 2)]] {
            let c = chain(&p);
            assert_eq!(counting_identity_holds(&c), c.invariants().unwrap().suff_negative);
        }
    }
}
