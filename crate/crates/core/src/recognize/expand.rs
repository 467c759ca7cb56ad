use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::{series_invert_param, LaurentSeries, UniPoly};
use crate::splice::{ChainError, PuiseuxChain};

use super::{preprocess, ParamCurve, RecognizeError};

const MAX_RETRIES: u32 = 10;

/// Expansion of `y` in powers of `w = x^{-1/N}` at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxExpansion {
    /// `deg x(t)` of the preprocessed curve.
    pub degree: u64,
    /// Exponents of `w` at which the running gcd with `N` drops; the first
    /// is the leading exponent `-deg y`.
    pub jump_positions: Vec<i64>,
    /// Running gcd after each jump, ending in one.
    pub denominators: Vec<u64>,
    /// Characteristic exponent differences `e_2, …, e_n`, in units of the
    /// new denominator and negated so they match the edge determinants.
    pub exponent_jumps: Vec<i64>,
    /// Segments of the series between consecutive jumps.
    pub unit_parts: Vec<LaurentSeries>,
    pub truncation_order: i64,
    pub series: LaurentSeries,
}

impl PuiseuxExpansion {
    /// The chain implied by the jumps: `q_k` from the denominators and `p_k`
    /// from `Δ_k = e_k`.
    pub fn chain(&self) -> Result<PuiseuxChain, ChainError> {
        let mut pairs = Vec::with_capacity(self.denominators.len());
        let mut prev_g = self.degree;
        for (k, &g) in self.denominators.iter().enumerate() {
            let q = prev_g / g;
            let p = if k == 0 {
                (-self.jump_positions[0]) as u64 / g
            } else {
                let (pp, pq) = pairs[k - 1];
                let p = self.exponent_jumps[k - 1] + (pp * pq * q) as i64;
                if p <= 0 {
                    return Err(ChainError::NonPositive(k + 1));
                }
                p as u64
            };
            pairs.push((p, q));
            prev_g = g;
        }
        PuiseuxChain::new(pairs)
    }
}

/// `p(t(w))` by Horner's rule.
fn compose(p: &UniPoly, t: &LaurentSeries) -> LaurentSeries {
    let mut terms = p.terms().rev();
    let Some((top, lc)) = terms.next() else {
        return LaurentSeries::zero(t.truncation_order());
    };
    // acc has valuation ≤ 0, so constants need only exceed t by one.
    let big = t.truncation_order() + 1;
    let mut acc = LaurentSeries::monomial(lc.clone(), 0, big);
    for i in (0..top).rev() {
        acc = acc.mul(t);
        let c = p.coeff(i);
        if !c.is_zero() {
            acc = acc.add(&LaurentSeries::monomial(c, 0, big));
        }
    }
    acc
}

struct Attempt {
    expansion: PuiseuxExpansion,
    complete: bool,
}

fn attempt(curve: &ParamCurve, order: i64) -> Result<Attempt, RecognizeError> {
    let n = curve.x.degree().unwrap_or(0) as i64;
    let m = curve.y.degree().unwrap_or(0) as i64;
    let order = order.max(-m);
    let t = series_invert_param(&curve.x, order + m - n)?;
    let y = compose(&curve.y, &t);
    let y = if y.truncation_order() > order { y.truncate(order) } else { y };

    let mut g = n as u64;
    let mut positions = Vec::new();
    let mut denominators = Vec::new();
    for (i, _) in y.terms() {
        if i.rem_euclid(g as i64) != 0 {
            g = g.gcd(&i.unsigned_abs());
            positions.push(i);
            denominators.push(g);
            if g == 1 {
                break;
            }
        }
    }
    let exponent_jumps = positions
        .windows(2)
        .zip(&denominators[1..])
        .map(|(w, &g)| -(w[1] - w[0]) / g as i64)
        .collect();
    let mut unit_parts = Vec::new();
    for (k, &start) in positions.iter().enumerate() {
        let end = positions.get(k + 1).map_or(y.truncation_order(), |&e| e - 1);
        let coeffs = (start..=end).map(|i| y.coeff(i).expect("within order")).collect();
        unit_parts.push(LaurentSeries::new(start, coeffs, end));
    }
    Ok(Attempt {
        complete: g == 1,
        expansion: PuiseuxExpansion {
            degree: n as u64,
            jump_positions: positions,
            denominators,
            exponent_jumps,
            unit_parts,
            truncation_order: y.truncation_order(),
            series: y,
        },
    })
}

fn prepared(curve: &ParamCurve) -> Result<ParamCurve, RecognizeError> {
    let pre = preprocess(curve)?;
    if pre.line {
        return Err(RecognizeError::Line);
    }
    Ok(pre.curve)
}

/// Expands with an explicit truncation order for the series of `y` in `w`.
pub fn expand_at_infinity_with_order(curve: &ParamCurve, order: i64) -> Result<PuiseuxExpansion, RecognizeError> {
    let c = prepared(curve)?;
    let a = attempt(&c, order)?;
    if a.complete {
        Ok(a.expansion)
    } else {
        Err(RecognizeError::TruncationTooSmall { order })
    }
}

/// Expands with the default guard `N(1 + Σ|Δ_k|) + N`, where the sum runs over
/// the jumps found so far, doubling the order until every jump is seen.
pub fn expand_at_infinity(curve: &ParamCurve) -> Result<PuiseuxExpansion, RecognizeError> {
    let c = prepared(curve)?;
    let n = c.x.degree().unwrap_or(0) as i64;
    let mut order = 2 * n;
    for _ in 0..MAX_RETRIES {
        let a = attempt(&c, order)?;
        if a.complete {
            return Ok(a.expansion);
        }
        let seen: i64 = a.expansion.exponent_jumps.iter().map(|e| e.abs()).sum();
        order = (2 * order).max(n * (1 + seen) + n);
    }
    Err(RecognizeError::TruncationTooSmall { order })
}
