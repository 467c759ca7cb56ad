//! Splice diagrams of knots at infinity, stored as chains of Puiseux pairs,
//! and their closed-form invariants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::semigroup;

/// Upper bound on `q_1⋯q_n` accepted by [`PuiseuxChain::new`].
pub const MAX_DEGREE: u64 = 1 << 16;
/// Upper bound on any single weight.
pub const MAX_WEIGHT: u64 = 1 << 20;
/// Upper bound on the number of pairs.
pub const MAX_PAIRS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("chain has no pairs")]
    Empty,
    #[error("weights must be positive (pair {0})")]
    NonPositive(usize),
    #[error("chain exceeds size limits")]
    TooLarge,
    #[error("malformed chain: {0}")]
    Malformed(String),
    #[error("chain is not valid: {0}")]
    Invalid(ValidityReport),
    #[error("node index {0} out of range")]
    IndexOutOfRange(usize),
}

/// Ordered Puiseux pairs `(p_k, q_k)`, `k = 1..n`.
///
/// Construction only checks positivity and size; admissibility as a knot at
/// infinity is reported by [`PuiseuxChain::validate`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PuiseuxChain {
    pairs: Vec<(u64, u64)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ChainJson {
    Object { pairs: Vec<(u64, u64)> },
    Bare(Vec<(u64, u64)>),
}

impl<'de> Deserialize<'de> for PuiseuxChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = match ChainJson::deserialize(d)? {
            ChainJson::Object { pairs } | ChainJson::Bare(pairs) => pairs,
        };
        PuiseuxChain::new(pairs).map_err(serde::de::Error::custom)
    }
}

impl PuiseuxChain {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self, ChainError> {
        if pairs.is_empty() {
            return Err(ChainError::Empty);
        }
        if pairs.len() > MAX_PAIRS {
            return Err(ChainError::TooLarge);
        }
        let mut degree: u64 = 1;
        for (i, &(p, q)) in pairs.iter().enumerate() {
            if p == 0 || q == 0 {
                return Err(ChainError::NonPositive(i + 1));
            }
            if p > MAX_WEIGHT || q > MAX_WEIGHT {
                return Err(ChainError::TooLarge);
            }
            degree = degree.saturating_mul(q);
            if degree > MAX_DEGREE {
                return Err(ChainError::TooLarge);
            }
        }
        Ok(Self { pairs })
    }

    /// Parses either `{"pairs": [[2,3],[9,2]]}` or the bare `[[2,3],[9,2]]`.
    pub fn from_json(src: &str) -> Result<Self, ChainError> {
        let parsed: ChainJson =
            serde_json::from_str(src).map_err(|e| ChainError::Malformed(e.to_string()))?;
        match parsed {
            ChainJson::Object { pairs } | ChainJson::Bare(pairs) => Self::new(pairs),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "pairs": self.pairs })
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `p_k` for `k = 1..n`.
    pub fn p(&self, k: usize) -> u64 {
        self.pairs[k - 1].0
    }

    /// `q_k` for `k = 1..n`.
    pub fn q(&self, k: usize) -> u64 {
        self.pairs[k - 1].1
    }

    /// `q_from ⋯ q_to`, the empty product being one.
    pub fn q_product(&self, from: usize, to: usize) -> u64 {
        (from..=to).map(|k| self.q(k)).product()
    }

    /// Curve degree `q_1⋯q_n`.
    pub fn degree(&self) -> u64 {
        self.q_product(1, self.len())
    }

    /// Degree of `y`, `p_1 q_2⋯q_n`.
    pub fn y_degree(&self) -> u64 {
        self.p(1) * self.q_product(2, self.len())
    }

    /// Edge determinant: `Δ_1 = p_1 - q_1`, `Δ_k = p_k - p_{k-1} q_{k-1} q_k`.
    pub fn delta(&self, k: usize) -> i64 {
        if k == 1 {
            self.p(1) as i64 - self.q(1) as i64
        } else {
            self.p(k) as i64 - (self.p(k - 1) * self.q(k - 1) * self.q(k)) as i64
        }
    }

    /// The first `k` pairs.
    pub fn prefix(&self, k: usize) -> PuiseuxChain {
        PuiseuxChain {
            pairs: self.pairs[..k].to_vec(),
        }
    }

    /// The chain extended by one pair (no validation beyond [`Self::new`]).
    pub fn extended(&self, p: u64, q: u64) -> Result<PuiseuxChain, ChainError> {
        let mut pairs = self.pairs.clone();
        pairs.push((p, q));
        Self::new(pairs)
    }

    /// Checks the three realisability conditions independently.
    pub fn validate(&self) -> ValidityReport {
        let n = self.len();
        let first = |pred: &dyn Fn(usize) -> bool| (1..=n).find(|&k| !pred(k));
        let cond_i = first(&|k| {
            let (p, q) = self.pairs[k - 1];
            p > 1 && q > 1 && num_integer::gcd(p, q) == 1
        });
        let cond_ii = first(&|k| self.delta(k) < 0);
        let cond_iii = first(&|k| {
            k == 1 || semigroup::member_by_apery(&level_generators(&self.pairs[..k - 1]), self.p(k))
        });
        ValidityReport {
            conditions: [
                ConditionResult::new(Condition::Coprime, cond_i),
                ConditionResult::new(Condition::NegativeDeterminant, cond_ii),
                ConditionResult::new(Condition::Semigroup, cond_iii),
            ],
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    fn require_valid(&self) -> Result<(), ChainError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(ChainError::Invalid(report))
        }
    }

    /// Linking number `l(C_j, C_k) = p_j q_{j+1}⋯q_k` between virtual
    /// components, or with the knot itself. Node `0` is the root, whose
    /// weight is taken to be one.
    pub fn linking_number(&self, j: usize, target: LinkTarget) -> Result<u64, ChainError> {
        let n = self.len();
        let k = match target {
            LinkTarget::Node(k) => k,
            LinkTarget::Knot => n,
        };
        if k > n {
            return Err(ChainError::IndexOutOfRange(k));
        }
        if j > n || (j >= k && target != LinkTarget::Knot) || j > k {
            return Err(ChainError::IndexOutOfRange(j));
        }
        let pj = if j == 0 { 1 } else { self.p(j) };
        Ok(pj * self.q_product(j + 1, k))
    }

    /// Pole orders `l(C_k, K)` for `k = 0..n`: those of `x`, `y` and the
    /// approximate roots `P_2, …, P_n`.
    pub fn pole_orders(&self) -> Vec<u64> {
        (0..=self.len())
            .map(|j| self.linking_number(j, LinkTarget::Knot).expect("in range"))
            .collect()
    }

    /// Arithmetic genus from
    /// `1 - 2g = q_1⋯q_n + Σ_{i<n} p_i (1 - q_i) q_{i+1}⋯q_n + p_n (1 - q_n)`.
    pub fn genus(&self) -> Result<u64, ChainError> {
        self.require_valid()?;
        let n = self.len();
        let mut rhs = self.degree() as i128;
        for i in 1..=n {
            rhs += self.p(i) as i128 * (1 - self.q(i) as i128) * self.q_product(i + 1, n) as i128;
        }
        let two_g = 1 - rhs;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(ChainError::Invalid(self.validate()));
        }
        Ok((two_g / 2) as u64)
    }

    pub fn invariants(&self) -> Result<ChainInvariants, ChainError> {
        self.require_valid()?;
        let n = self.len();
        let mut d = Vec::with_capacity(n);
        let mut l = Vec::with_capacity(n);
        d.push((self.p(1) + self.q(1)) as i64);
        l.push((self.p(1) * self.q(1) - self.q(1)) as i64);
        for k in 2..=n {
            let (p, q) = (self.p(k) as i64, self.q(k) as i64);
            d.push(q * d[k - 2] + self.delta(k));
            l.push(q * q * l[k - 2] + (q - 1) * (p - q * l[k - 2]));
        }
        let ydeg = self.y_degree() as i64;
        let dn = d[n - 1];
        Ok(ChainInvariants {
            degree: self.degree(),
            ydegree: self.y_degree(),
            genus: self.genus()?,
            d,
            self_linking: l,
            positive_braid: dn > ydeg,
            suff_negative: dn >= ydeg - 1,
        })
    }
}

impl fmt::Display for PuiseuxChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (p, q)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({p},{q})")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PuiseuxChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PuiseuxChain{self}")
    }
}

/// Generators `q_1⋯q_k, p_1 q_2⋯q_k, …, p_{k-1} q_k, p_k` of `H_k` for the
/// given pairs `(p_1,q_1)…(p_k,q_k)`.
pub fn level_generators(pairs: &[(u64, u64)]) -> Vec<u64> {
    let qprod = |from: usize| -> u64 { pairs[from..].iter().map(|pq| pq.1).product() };
    let mut gens = vec![qprod(0)];
    gens.extend(pairs.iter().enumerate().map(|(i, &(p, _))| p * qprod(i + 1)));
    gens
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkTarget {
    Node(usize),
    Knot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `p_k > 1`, `q_k > 1`, `gcd(p_k, q_k) = 1`.
    Coprime,
    /// `Δ_k < 0` for every `k`.
    NegativeDeterminant,
    /// `p_k ∈ H_{k-1}` for `k ≥ 2`.
    Semigroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub condition: Condition,
    pub passed: bool,
    /// 1-based index of the first violating pair.
    pub first_violation: Option<usize>,
}

impl ConditionResult {
    fn new(condition: Condition, first_violation: Option<usize>) -> Self {
        Self {
            condition,
            passed: first_violation.is_none(),
            first_violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub conditions: [ConditionResult; 3],
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn get(&self, condition: Condition) -> &ConditionResult {
        self.conditions
            .iter()
            .find(|c| c.condition == condition)
            .expect("all conditions present")
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self
            .conditions
            .iter()
            .filter_map(|c| c.first_violation.map(|k| format!("{:?} at pair {k}", c.condition)))
            .collect();
        if failed.is_empty() {
            f.write_str("valid")
        } else {
            f.write_str(&failed.join(", "))
        }
    }
}

/// Closed-form invariants of a valid chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainInvariants {
    pub degree: u64,
    pub ydegree: u64,
    pub genus: u64,
    /// `d_k = -K·Σ - 1` at node `k`.
    pub d: Vec<i64>,
    /// Self-linking numbers `l_k` in the braid framing.
    pub self_linking: Vec<i64>,
    pub positive_braid: bool,
    pub suff_negative: bool,
}
