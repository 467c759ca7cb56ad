use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{rational_nth_root, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("valuation {valuation} is not divisible by {n}")]
    NonDivisibleValuation { valuation: i64, n: u32 },
    #[error("leading coefficient {0} has no rational root of the requested order")]
    NoRationalRoot(String),
    #[error("series is zero to its truncation order")]
    ZeroSeries,
    #[error("parametrisation must be monic of degree at least 1")]
    NotMonic,
    #[error("truncation order {0} too small")]
    InsufficientOrder(i64),
}

/// Truncated Laurent series `Σ_{i=lowest}^{order} c_i w^i + O(w^{order+1})`.
///
/// The stored coefficients start at the valuation, so the first one is
/// nonzero unless the series is zero to the known order.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    lowest: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl LaurentSeries {
    /// `coeffs[i]` is the coefficient of `w^(lowest + i)`; everything up to
    /// and including `w^order` is known.
    pub fn new(lowest: i64, mut coeffs: Vec<Rational>, order: i64) -> Self {
        let len = (order - lowest + 1).max(0) as usize;
        coeffs.resize(len, Rational::zero());
        let mut s = Self {
            lowest,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn zero(order: i64) -> Self {
        Self::new(order + 1, Vec::new(), order)
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(Rational::one(), 0, order)
    }

    /// `c * w^k + O(w^{order+1})`
    pub fn monomial(c: Rational, k: i64, order: i64) -> Self {
        Self::new(k, vec![c], order)
    }

    /// Embeds a polynomial in `w`.
    pub fn from_poly(p: &UniPoly, order: i64) -> Self {
        Self::new(0, p.coeffs().to_vec(), order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lowest += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the first nonzero term; `None` for a zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lowest)
    }

    pub fn truncation_order(&self) -> i64 {
        self.order
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `w^k`, or `None` when `k` is beyond the truncation.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k > self.order {
            return None;
        }
        if k < self.lowest {
            return Some(Rational::zero());
        }
        Some(self.coeffs[(k - self.lowest) as usize].clone())
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lowest + i as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order);
        Self::new(self.lowest, self.coeffs.clone(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let lowest = self.lowest.min(other.lowest).min(order + 1);
        let mut coeffs = vec![Rational::zero(); (order - lowest + 1).max(0) as usize];
        for s in [self, other] {
            for (k, c) in s.terms() {
                if k <= order {
                    coeffs[(k - lowest) as usize] += c;
                }
            }
        }
        Self::new(lowest, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Self {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            self.lowest,
            self.coeffs.iter().map(|a| a * c).collect(),
            self.order,
        )
    }

    /// Multiplies by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lowest: self.lowest + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // a = w^va (a0 + ... known to order), likewise b.
        let va = self.valuation_or_bound();
        let vb = other.valuation_or_bound();
        let order = (va + other.order).min(vb + self.order);
        let lowest = va + vb;
        if self.is_zero() || other.is_zero() || order < lowest {
            return Self::zero(order);
        }
        let len = (order - lowest + 1) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(lowest, coeffs, order)
    }

    fn valuation_or_bound(&self) -> i64 {
        if self.is_zero() {
            self.order + 1
        } else {
            self.lowest
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap_or_else(|| Self::one(self.order - self.lowest))
    }

    /// `1 / self`, keeping the relative precision.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroSeries)?;
        let rel = self.order - v;
        let a0 = &self.coeffs[0];
        let inv0 = a0.recip();
        let n = (rel + 1) as usize;
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::new(-v, out, -v + rel))
    }

    /// `self^alpha` for a series whose leading coefficient is one and whose
    /// valuation is zero.
    fn unit_power(&self, alpha: &Rational) -> Self {
        debug_assert_eq!(self.lowest, 0);
        debug_assert!(self.coeffs[0].is_one());
        let n = (self.order + 1) as usize;
        let g = &self.coeffs;
        let alpha1 = alpha + Rational::one();
        let mut f: Vec<Rational> = Vec::with_capacity(n);
        f.push(Rational::one());
        for k in 1..n {
            let mut acc = Rational::zero();
            let kr = Rational::from_integer(k.into());
            for j in 1..=k.min(g.len() - 1) {
                if g[j].is_zero() {
                    continue;
                }
                let jr = Rational::from_integer(j.into());
                acc += (&alpha1 * &jr - &kr) * &g[j] * &f[k - j];
            }
            f.push(acc / kr);
        }
        Self::new(0, f, self.order)
    }
}

/// `N`-th root of a Laurent series.
///
/// Requires the valuation to be divisible by `n` and the leading coefficient
/// to have an exact rational `n`-th root. The result agrees with the true
/// root to the same relative precision as the input.
pub fn series_nth_root(s: &LaurentSeries, n: u32) -> Result<LaurentSeries, SeriesError> {
    assert!(n > 0);
    let v = s.valuation().ok_or(SeriesError::ZeroSeries)?;
    if !v.is_multiple_of(&(n as i64)) {
        return Err(SeriesError::NonDivisibleValuation { valuation: v, n });
    }
    let lead = s.leading_coeff().expect("nonzero series");
    let root0 = rational_nth_root(lead, n).ok_or_else(|| SeriesError::NoRationalRoot(lead.to_string()))?;
    let unit = s.shift(-v).scale(&lead.recip());
    let alpha = Rational::new(1.into(), (n as i64).into());
    Ok(unit.unit_power(&alpha).scale(&root0).shift(v / n as i64))
}

/// Inverts a monic parametrisation `x(t)` of degree `N` at infinity.
///
/// Returns `t(w) = w^{-1} + a_0 + a_1 w + …` with
/// `x(t(w)) = w^{-N} + O(w^{order+1})`.
pub fn series_invert_param(x: &UniPoly, order: i64) -> Result<LaurentSeries, SeriesError> {
    let n = match x.degree() {
        Some(d) if d >= 1 && x.is_monic() => d,
        _ => return Err(SeriesError::NotMonic),
    };
    let ni = n as i64;
    if order < -ni {
        return Err(SeriesError::InsufficientOrder(order));
    }
    // With t = 1/s, x = s^{-N} u(s) where u(s) = s^N x(1/s) = 1 + c_{N-1} s + …
    // Then w = s u(s)^{-1/N}; Lagrange inversion gives
    // [w^m] s(w) = (1/m) [s^{m-1}] u(s)^{m/N}.
    let u: Vec<Rational> = (0..=n).map(|i| x.coeff(n - i)).collect();
    // t(w) is needed up to w^{order + N - 1}, i.e. s(w)/w to relative order
    // order + N.
    let rel = (order + ni).max(0);
    let mut s_over_w = Vec::with_capacity(rel as usize + 1);
    for m in 1..=(rel + 1) {
        let base = LaurentSeries::new(0, u.clone(), m - 1);
        let power = base.unit_power(&Rational::new(m.into(), ni.into()));
        let c = power.coeff(m - 1).unwrap_or_else(Rational::zero);
        s_over_w.push(c / Rational::from_integer(m.into()));
    }
    let sw = LaurentSeries::new(0, s_over_w, rel);
    Ok(sw.inverse()?.shift(-1))
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*w^{k}")?;
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(w^{})", self.order + 1)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_unipoly, rat, ratio};

    fn series(lowest: i64, coeffs: &[Rational], order: i64) -> LaurentSeries {
        LaurentSeries::new(lowest, coeffs.to_vec(), order)
    }

    /// `x(t(w))` computed by Horner in series arithmetic.
    fn compose_param(x: &UniPoly, t: &LaurentSeries) -> LaurentSeries {
        let order = t.truncation_order();
        let mut acc = LaurentSeries::zero(order + 1000);
        for c in x.coeffs().iter().rev() {
            acc = acc.mul(t).add(&LaurentSeries::monomial(c.clone(), 0, order + 1000));
        }
        acc
    }

    #[test]
    fn nth_root_of_perfect_square() {
        // w^{-2}(1 + 2w + w^2) -> w^{-1}(1 + w)
        let s = series(-2, &[rat(1), rat(2), rat(1)], 5);
        let r = series_nth_root(&s, 2).unwrap();
        assert_eq!(r, series(-1, &[rat(1), rat(1)], 6));
    }

    #[test]
    fn nth_root_of_one() {
        for n in 1..6 {
            let r = series_nth_root(&LaurentSeries::one(4), n).unwrap();
            assert_eq!(r, LaurentSeries::one(4));
        }
    }

    #[test]
    fn sqrt_one_plus_w() {
        let s = series(0, &[rat(1), rat(1)], 3);
        let r = series_nth_root(&s, 2).unwrap();
        let expect = series(0, &[rat(1), ratio(1, 2), ratio(-1, 8), ratio(1, 16)], 3);
        assert_eq!(r, expect);
        // squaring reproduces 1 + w to the truncation order
        assert_eq!(r.pow(2), s);
    }

    #[test]
    fn nth_root_errors() {
        let s = series(-3, &[rat(1)], 2);
        assert_eq!(
            series_nth_root(&s, 2).unwrap_err(),
            SeriesError::NonDivisibleValuation { valuation: -3, n: 2 }
        );
        let s = series(0, &[rat(2)], 2);
        assert!(matches!(series_nth_root(&s, 2), Err(SeriesError::NoRationalRoot(_))));
    }

    #[test]
    fn invert_pure_power() {
        let t = series_invert_param(&UniPoly::power_of_t(2), 6).unwrap();
        assert_eq!(t.valuation(), Some(-1));
        assert!(t.terms().all(|(k, _)| k == -1));
    }

    #[test]
    fn invert_t2_plus_1() {
        let x = parse_unipoly("t^2 + 1").unwrap();
        let t = series_invert_param(&x, 6).unwrap();
        assert_eq!(t.coeff(-1), Some(rat(1)));
        assert_eq!(t.coeff(0), Some(rat(0)));
        assert_eq!(t.coeff(1), Some(ratio(-1, 2)));
        let back = compose_param(&x, &t);
        assert_eq!(back.truncate(6), LaurentSeries::monomial(rat(1), -2, 6));
    }

    #[test]
    fn invert_example_curve() {
        let x = parse_unipoly("t^12 + t").unwrap();
        let t = series_invert_param(&x, 20).unwrap();
        assert_eq!(t.coeff(-1), Some(rat(1)));
        for k in 0..10 {
            assert_eq!(t.coeff(k), Some(rat(0)), "w^{k}");
        }
        assert_eq!(t.coeff(10), Some(ratio(-1, 12)));
        let back = compose_param(&x, &t);
        assert_eq!(back.truncate(20), LaurentSeries::monomial(rat(1), -12, 20));
    }

    #[test]
    fn inverse_round_trip() {
        let s = series(-1, &[rat(2), rat(3), rat(-1)], 6);
        let p = s.mul(&s.inverse().unwrap());
        assert_eq!(p, LaurentSeries::one(p.truncation_order()));
    }
}
