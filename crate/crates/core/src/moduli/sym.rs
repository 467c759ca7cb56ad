//! Coefficients that are either a polynomial in the one active unknown `s`
//! or depend on unknowns that have not been reached yet.

use num_traits::Zero;

use crate::algebra::{Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Sym {
    /// A polynomial in the active unknown.
    Known(UniPoly),
    /// Depends on a not-yet-determined unknown.
    Tainted,
}

impl Sym {
    pub(crate) fn zero() -> Self {
        Sym::Known(UniPoly::zero())
    }

    pub(crate) fn constant(c: Rational) -> Self {
        Sym::Known(UniPoly::constant(c))
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self, Sym::Known(p) if p.is_zero())
    }

    fn add(&self, other: &Sym) -> Sym {
        match (self, other) {
            (Sym::Known(a), Sym::Known(b)) => Sym::Known(a + b),
            _ => Sym::Tainted,
        }
    }

    fn mul(&self, other: &Sym) -> Sym {
        match (self, other) {
            (Sym::Known(a), Sym::Known(b)) => Sym::Known(a * b),
            (Sym::Known(a), Sym::Tainted) | (Sym::Tainted, Sym::Known(a)) if a.is_zero() => Sym::zero(),
            _ => Sym::Tainted,
        }
    }
}

/// A polynomial in `t` with [`Sym`] coefficients, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SymPoly(pub(crate) Vec<Sym>);

impl SymPoly {
    pub(crate) fn one() -> Self {
        SymPoly(vec![Sym::constant(Rational::from_integer(1.into()))])
    }

    pub(crate) fn from_unipoly(p: &UniPoly) -> Self {
        SymPoly(p.coeffs().iter().map(|c| Sym::constant(c.clone())).collect())
    }

    pub(crate) fn coeff(&self, k: usize) -> Sym {
        self.0.get(k).cloned().unwrap_or_else(Sym::zero)
    }

    pub(crate) fn len(&self) -> usize {
        self.0.len()
    }

    pub(crate) fn add_assign_scaled(&mut self, other: &SymPoly, by: &UniPoly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Sym::zero());
        }
        let by = Sym::Known(by.clone());
        for (i, c) in other.0.iter().enumerate() {
            if !c.is_zero() {
                self.0[i] = self.0[i].add(&c.mul(&by));
            }
        }
    }

    pub(crate) fn mul(&self, other: &SymPoly) -> SymPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return SymPoly(Vec::new());
        }
        let mut out = vec![Sym::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        SymPoly(out)
    }

    pub(crate) fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// The root of `p(s) = rhs` when `p` is linear.
pub(crate) fn solve_linear(p: &UniPoly, rhs: &Rational) -> Option<Rational> {
    if p.degree() != Some(1) {
        return None;
    }
    let a = p.coeff(1);
    let b = p.coeff(0);
    if a.is_zero() {
        return None;
    }
    Some((rhs - b) / a)
}
