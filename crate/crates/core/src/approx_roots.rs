//! Approximate roots of a defining polynomial and the pole orders they
//! realise on the curve.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Rational, TowerPoly, UniPoly};
use crate::recognize::{recognize, ParamCurve, RecognitionResult, RecognizeError};
use crate::splice::{LinkTarget, PuiseuxChain};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApproxRootError {
    #[error("polynomial must be over (x, y)")]
    NotBivariate,
    #[error("polynomial is not monic in y")]
    NotMonic,
    #[error("y-degree {degree} is not divisible by {q}")]
    NotDivisible { degree: u32, q: u32 },
    #[error("pole order of P_{index} is {actual}, expected {expected}")]
    PoleOrderMismatch { index: usize, expected: u64, actual: u64 },
    #[error(transparent)]
    Recognize(#[from] RecognizeError),
}

/// A bivariate polynomial as coefficients of `y^j` in `Q[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct YPoly(Vec<UniPoly>);

impl YPoly {
    fn from_tower(p: &TowerPoly) -> Result<Self, ApproxRootError> {
        if p.vars().len() != 2 {
            return Err(ApproxRootError::NotBivariate);
        }
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for (e, c) in p.terms() {
            let (i, j) = (e[0] as usize, e[1] as usize);
            if out.len() <= j {
                out.resize(j + 1, Vec::new());
            }
            if out[j].len() <= i {
                out[j].resize(i + 1, Rational::zero());
            }
            out[j][i] += c;
        }
        Ok(Self(out.into_iter().map(UniPoly::from_coeffs).collect()).trimmed())
    }

    fn to_tower(&self) -> TowerPoly {
        let vars = ["x", "y"];
        let mut p = TowerPoly::zero(&vars);
        for (j, c) in self.0.iter().enumerate() {
            for (i, a) in c.terms() {
                p.add_term(vec![i as u32, j as u32], a.clone());
            }
        }
        p
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn coeff(&self, j: usize) -> UniPoly {
        self.0.get(j).cloned().unwrap_or_else(UniPoly::zero)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self((0..n).map(|j| &self.coeff(j) - &other.coeff(j)).collect()).trimmed()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self(Vec::new());
        }
        let mut out = vec![UniPoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self(out).trimmed()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self(vec![UniPoly::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// The unique monic `R` with `deg_y R = deg_y P / q` and
/// `deg_y(P - R^q) < deg_y P - deg_y R`.
pub fn approximate_root(p: &TowerPoly, q: u32) -> Result<TowerPoly, ApproxRootError> {
    let poly = YPoly::from_tower(p)?;
    let big_d = poly.degree().ok_or(ApproxRootError::NotMonic)?;
    if poly.coeff(big_d) != UniPoly::one() {
        return Err(ApproxRootError::NotMonic);
    }
    let qu = q as usize;
    if q == 0 || big_d % qu != 0 {
        return Err(ApproxRootError::NotDivisible {
            degree: big_d as u32,
            q,
        });
    }
    let d = big_d / qu;
    let mut root = vec![UniPoly::zero(); d + 1];
    root[d] = UniPoly::one();
    let q_inv = Rational::from_integer(q.into()).recip();
    for i in 1..=d {
        // Adding b·y^{d-i} to the root changes the y^{D-i} coefficient of
        // its q-th power by q·b and leaves higher ones alone.
        let residual = poly.sub(&YPoly(root.clone()).pow(q));
        root[d - i] = residual.coeff(big_d - i).scale(&q_inv);
    }
    Ok(YPoly(root).to_tower())
}

/// Approximate roots `P_1, …, P_n` of a defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxRootSet {
    pub roots: Vec<TowerPoly>,
    pub target: TowerPoly,
    pub chain: PuiseuxChain,
}

impl ApproxRootSet {
    /// Extracts `P_k` with `deg_y P_k = q_1⋯q_{k-1}` for `k = 1..n`.
    pub fn new(target: &TowerPoly, chain: &PuiseuxChain) -> Result<Self, ApproxRootError> {
        let n = chain.len();
        let roots = (1..=n)
            .map(|k| approximate_root(target, chain.q_product(k, n) as u32))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            roots,
            target: target.clone(),
            chain: chain.clone(),
        })
    }

    /// Roots of the defining polynomial of a recognised curve, in the
    /// preprocessed coordinates where it is monic in `y`.
    pub fn from_recognition(r: &RecognitionResult) -> Result<Self, ApproxRootError> {
        Self::new(&r.defining_normalized, &r.chain)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleOrderRow {
    pub name: String,
    pub expected: u64,
    pub actual: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleOrderReport {
    pub rows: Vec<PoleOrderRow>,
}

impl PoleOrderReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.expected == r.actual)
    }

    pub fn orders(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.actual).collect()
    }

    pub fn into_result(self) -> Result<Self, ApproxRootError> {
        match self.rows.iter().position(|r| r.expected != r.actual) {
            None => Ok(self),
            Some(i) => Err(ApproxRootError::PoleOrderMismatch {
                index: i,
                expected: self.rows[i].expected,
                actual: self.rows[i].actual,
            }),
        }
    }
}

/// Compares `deg_t` of `x, P_1, …, P_n` on the curve with `l(C_k, K)`.
/// The curve must be in the coordinates the roots were computed in.
pub fn verify_pole_orders(roots: &ApproxRootSet, curve: &ParamCurve) -> PoleOrderReport {
    let chain = &roots.chain;
    let bindings = [curve.x.clone(), curve.y.clone()];
    let mut rows = vec![PoleOrderRow {
        name: "x".into(),
        expected: chain.degree(),
        actual: curve.x.degree().unwrap_or(0) as u64,
    }];
    for (k, r) in roots.roots.iter().enumerate() {
        let on_curve = r.eval_composed(&bindings).expect("bivariate");
        rows.push(PoleOrderRow {
            name: if k == 0 { "y".into() } else { format!("P{}", k + 1) },
            expected: chain.linking_number(k + 1, LinkTarget::Knot).expect("in range"),
            actual: on_curve.degree().unwrap_or(0) as u64,
        });
    }
    PoleOrderReport { rows }
}

/// Recognises the curve, extracts its approximate roots and tabulates their
/// pole orders.
pub fn approx_roots_for_curve(curve: &ParamCurve) -> Result<(ApproxRootSet, PoleOrderReport), ApproxRootError> {
    let r = recognize(curve)?.into_curve()?;
    let set = ApproxRootSet::from_recognition(&r)?;
    let report = verify_pole_orders(&set, &r.preprocessing.curve);
    Ok((set, report))
}
