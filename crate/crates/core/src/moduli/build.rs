use crate::algebra::UniPoly;
use crate::recognize::ParamCurve;
use crate::splice::PuiseuxChain;

use super::solve::solve_with;
use super::{Assigner, ModuliError, DEFAULT_MAX_RETRIES};

/// Builds a curve whose knot at infinity is the given positive braid.
///
/// Starts from `(t^{q_1}, t^{p_1})`; each extension substitutes
/// `t ← t^{q_k}` and solves for the perturbation of `x` realising `p_k`,
/// keeping unconstrained coefficients at the substituted curve and setting
/// stage-leading coefficients to one where an unknown controls them.
/// Failed extensions are retried with seeded perturbations.
pub fn build_positive_braid_curve(chain: &PuiseuxChain, seed: u64) -> Result<ParamCurve, ModuliError> {
    let inv = chain.invariants()?;
    if !inv.positive_braid {
        return Err(ModuliError::NotPositiveBraid);
    }
    let (p1, q1) = chain.pairs()[0];
    let mut x = UniPoly::power_of_t(q1 as usize);
    let mut y = UniPoly::power_of_t(p1 as usize);
    for k in 2..=chain.len() {
        let prefix = chain.prefix(k);
        let q = chain.q(k) as usize;
        let template = x.inflate(q);
        let y_next = y.inflate(q);
        let mut attempt = 0;
        let solved = loop {
            let jitter = (attempt > 0).then(|| seed.wrapping_mul(31).wrapping_add(attempt as u64));
            let mut assigner = Assigner::template(template.clone(), jitter);
            match solve_with(&prefix, &y_next, &mut assigner) {
                Ok(r) if !r.degenerate => break r,
                Ok(_) | Err(ModuliError::Infeasible { .. }) if attempt < DEFAULT_MAX_RETRIES => attempt += 1,
                Ok(_) => return Err(ModuliError::AllDegenerate { attempts: attempt + 1 }),
                Err(e) => return Err(e),
            }
        };
        x = solved.x;
        y = y_next;
    }
    Ok(ParamCurve::new(x, y))
}
