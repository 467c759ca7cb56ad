use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Rational, UniPoly};

/// Sparse polynomial over an ordered list of variables, e.g. `(x, y_1, y_2)`.
///
/// Terms are keyed by exponent tuples whose length always equals the number
/// of variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TowerPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl TowerPoly {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_owned(vars.iter().map(|v| v.to_string()).collect())
    }

    pub(crate) fn zero_owned(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    /// The `index`-th variable as a polynomial.
    pub fn variable(vars: &[&str], index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        Self::monomial(vars, exps, Rational::one())
    }

    pub fn monomial(vars: &[&str], exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent tuple length");
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * monomial(exps)` in place.
    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.vars.len(), "exponent tuple length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Highest exponent of variable `index`; `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[index]).max()
    }

    /// Maximum of `Σ weights[i] * e[i]` over the terms.
    pub fn weighted_degree(&self, weights: &[u64]) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| e.iter().zip(weights).map(|(&a, &w)| a as u64 * w).sum())
            .max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_owned(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = Self::zero_owned(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let n = self.vars.len();
        let mut acc = Self::zero_owned(self.vars.clone());
        acc.add_term(vec![0; n], Rational::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Re-expresses the polynomial over a longer variable list whose prefix
    /// is the current one.
    pub fn extend_vars(&self, vars: &[&str]) -> Self {
        assert!(vars.len() >= self.vars.len());
        assert!(self.vars.iter().zip(vars).all(|(a, b)| a == b));
        let extra = vars.len() - self.vars.len();
        Self {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.extend(std::iter::repeat_n(0, extra));
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes each variable by the matching binding; all bindings must
    /// share one variable list, which becomes the result's.
    pub fn compose(&self, bindings: &[TowerPoly]) -> Result<TowerPoly, AlgebraError> {
        if bindings.len() != self.vars.len() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.vars.len(),
                got: bindings.len(),
            });
        }
        let target = bindings
            .first()
            .map(|b| b.vars.clone())
            .unwrap_or_default();
        let one = {
            let mut p = Self::zero_owned(target.clone());
            p.add_term(vec![0; target.len()], Rational::one());
            p
        };
        let mut powers = PowerCache::new(bindings.to_vec(), one.clone(), |a, b| a.mul(b));
        let mut out = Self::zero_owned(target);
        for (e, c) in &self.terms {
            let mut term = one.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(powers.get(i, k));
                }
            }
            out = out.add(&term.scale(c));
        }
        Ok(out)
    }

    /// Substitutes each variable by a polynomial in `t`.
    pub fn eval_composed(&self, bindings: &[UniPoly]) -> Result<UniPoly, AlgebraError> {
        if bindings.len() != self.vars.len() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.vars.len(),
                got: bindings.len(),
            });
        }
        let mut powers = PowerCache::new(bindings.to_vec(), UniPoly::one(), |a, b| a * b);
        let mut out = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * powers.get(i, k);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable lists differ");
    }
}

/// `poly_eval_composed(p, bindings)`: exact substitution of every variable
/// of `p` by a polynomial in `t`.
pub fn poly_eval_composed(p: &TowerPoly, bindings: &[UniPoly]) -> Result<UniPoly, AlgebraError> {
    p.eval_composed(bindings)
}

/// Memoised powers of a fixed list of base values.
pub(crate) struct PowerCache<T, F> {
    bases: Vec<T>,
    one: T,
    powers: Vec<Vec<T>>,
    mul: F,
}

impl<T: Clone, F: Fn(&T, &T) -> T> PowerCache<T, F> {
    pub(crate) fn new(bases: Vec<T>, one: T, mul: F) -> Self {
        let powers = bases.iter().map(|_| vec![one.clone()]).collect();
        Self {
            bases,
            one,
            powers,
            mul,
        }
    }

    pub(crate) fn get(&mut self, index: usize, k: u32) -> &T {
        let k = k as usize;
        while self.powers[index].len() <= k {
            let next = (self.mul)(self.powers[index].last().unwrap(), &self.bases[index]);
            self.powers[index].push(next);
        }
        &self.powers[index][k]
    }

    #[allow(dead_code)]
    pub(crate) fn one(&self) -> &T {
        &self.one
    }
}

impl fmt::Display for TowerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest total degree first.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TowerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TowerPoly[{}]({self})", self.vars.join(","))
    }
}
