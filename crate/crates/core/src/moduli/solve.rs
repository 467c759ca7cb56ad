use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{PowerCache, Rational, UniPoly};
use crate::recognize::{recognize, ParamCurve};
use crate::semigroup::normal_form_for_pairs;
use crate::splice::PuiseuxChain;

use super::sym::{solve_linear, Sym, SymPoly};
use super::{
    expected_dimension, Assigner, FreeParameter, FreePolicy, ModuliError, ModuliSolveReport, ModuliSystem,
    SolvedUnknown, DEFAULT_MAX_RETRIES,
};

/// Where a reduction pass stopped.
enum Pass {
    /// Reduced to zero; carries `B_2, …, B_n`.
    Complete(Vec<Rational>),
    /// An undetermined lower coefficient was reached first.
    Free,
    /// A gap coefficient is linear in the active unknown.
    Solved { value: Rational, stage: usize, exponent: u64 },
    /// The stage-leading coefficient depends on the active unknown.
    Leading { poly: UniPoly },
    /// The coefficient at a stage target vanished.
    Degenerate(Vec<Rational>),
    Infeasible { stage: usize, exponent: u64 },
    Violation { stage: usize, exponent: u64 },
}

/// Runs the staged reduction for the known chain on symbolic `x`, `y`.
fn run_pass(chain: &PuiseuxChain, x: SymPoly, y: SymPoly) -> Pass {
    let n = chain.len();
    let pairs = chain.pairs();
    let mut values = vec![x, y];
    let mut leads = vec![Rational::one(), Rational::one()];
    for k in 1..=n {
        let g = chain.q_product(k + 1, n);
        let target = (k < n).then(|| chain.p(k + 1) * chain.q_product(k + 2, n));
        let mut expr = values[k].pow(pairs[k - 1].1 as u32);
        let mut powers = PowerCache::new(values.clone(), SymPoly::one(), |a, b| a.mul(b));
        let mut top = expr.len();
        loop {
            // Leading coefficient, skipping exact zeros.
            let mut lead = None;
            while top > 0 {
                top -= 1;
                match expr.coeff(top) {
                    Sym::Tainted => return Pass::Free,
                    Sym::Known(p) if p.is_zero() => continue,
                    Sym::Known(p) => {
                        lead = Some((top as u64, p));
                        break;
                    }
                }
            }
            let Some((d, c)) = lead else {
                if k == n {
                    return Pass::Complete(leads[2..].to_vec());
                }
                return Pass::Degenerate(leads[2..].to_vec());
            };
            let constant = c.degree().unwrap_or(0) == 0;
            if let Some(t) = target {
                if d < t {
                    return Pass::Degenerate(leads[2..].to_vec());
                }
                if d == t {
                    if !constant {
                        return Pass::Leading { poly: c };
                    }
                    leads.push(c.coeff(0));
                    values.push(expr);
                    break;
                }
            }
            let nf = if d % g == 0 { normal_form_for_pairs(&pairs[..k], d / g) } else { None };
            match nf {
                Some(a) => {
                    let mut mono = SymPoly::one();
                    let mut lc = Rational::one();
                    for (i, &e) in a.iter().enumerate() {
                        if e > 0 {
                            mono = mono.mul(powers.get(i, e as u32));
                            lc *= num_traits::pow(leads[i].clone(), e as usize);
                        }
                    }
                    expr.add_assign_scaled(&mono, &c.scale(&-lc.recip()));
                    expr.0[d as usize] = Sym::zero();
                    top = d as usize;
                }
                None if constant => return Pass::Infeasible { stage: k + 1, exponent: d },
                None => {
                    return match solve_linear(&c, &Rational::zero()) {
                        Some(value) => Pass::Solved {
                            value,
                            stage: k + 1,
                            exponent: d,
                        },
                        None => Pass::Violation { stage: k + 1, exponent: d },
                    };
                }
            }
        }
    }
    unreachable!("last stage returns")
}

fn symbolic_x(n: usize, known: &[Option<Rational>], active: Option<usize>) -> SymPoly {
    let mut coeffs: Vec<Sym> = known[..n]
        .iter()
        .enumerate()
        .map(|(i, k)| match (k, active) {
            (Some(v), _) => Sym::constant(v.clone()),
            (None, Some(a)) if a == i => Sym::Known(UniPoly::power_of_t(1)),
            (None, _) => Sym::Tainted,
        })
        .collect();
    coeffs.push(Sym::constant(Rational::one()));
    SymPoly(coeffs)
}

pub(crate) fn solve_with(
    chain: &PuiseuxChain,
    y: &UniPoly,
    assigner: &mut Assigner,
) -> Result<ModuliSolveReport, ModuliError> {
    let system = ModuliSystem::new(chain, y)?;
    let n = chain.degree() as usize;
    let ys = SymPoly::from_unipoly(y);
    let mut known: Vec<Option<Rational>> = vec![None; n];
    let mut free = Vec::new();
    let mut solved = Vec::new();
    let mut degenerate_leads = None;

    for &i in &system.unknown_indices {
        if known[i].is_some() {
            continue;
        }
        match run_pass(chain, symbolic_x(n, &known, Some(i)), ys.clone()) {
            Pass::Free => {
                let value = assigner.value(i);
                free.push(FreeParameter {
                    index: i,
                    value: value.clone(),
                    controls_leading: false,
                });
                known[i] = Some(value);
            }
            Pass::Solved { value, stage, exponent } => {
                let consistent = (stage >= 2).then(|| {
                    let e = system.thresholds[stage - 2] as i64;
                    (n - i) as i64 == e - exponent as i64
                });
                solved.push(SolvedUnknown {
                    index: i,
                    stage,
                    exponent,
                    value: value.clone(),
                    threshold_consistent: consistent,
                });
                known[i] = Some(value);
            }
            Pass::Leading { poly } => {
                let mut value = match solve_linear(&poly, &Rational::one()) {
                    Some(v) if assigner.unit_leading => v,
                    _ => assigner.value(i),
                };
                while poly.eval(&value).is_zero() {
                    value += Rational::one();
                }
                free.push(FreeParameter {
                    index: i,
                    value: value.clone(),
                    controls_leading: true,
                });
                known[i] = Some(value);
            }
            Pass::Complete(_) => {
                for j in (0..=i).rev() {
                    let value = assigner.value(j);
                    free.push(FreeParameter {
                        index: j,
                        value: value.clone(),
                        controls_leading: false,
                    });
                    known[j] = Some(value);
                }
                break;
            }
            Pass::Degenerate(leads) => {
                degenerate_leads = Some(leads);
                for j in (0..=i).rev() {
                    known[j] = Some(assigner.value(j));
                }
                break;
            }
            Pass::Infeasible { stage, exponent } => return Err(ModuliError::Infeasible { stage, exponent }),
            Pass::Violation { stage, exponent } => {
                return Err(ModuliError::TriangularityViolation { stage, exponent })
            }
        }
    }

    let mut x_coeffs: Vec<Rational> = known.into_iter().map(|v| v.expect("assigned")).collect();
    x_coeffs.push(Rational::one());
    let x = UniPoly::from_coeffs(x_coeffs);
    let report = |leads: Vec<Rational>, degenerate: bool| ModuliSolveReport {
        chain: chain.clone(),
        x: x.clone(),
        y: y.clone(),
        free_parameters: free.clone(),
        solved: solved.clone(),
        stage_leading_coeffs: leads,
        degenerate,
        expected_dimension: expected_dimension(chain).expect("checked by system"),
        seed: None,
        attempts: 1,
    };
    if let Some(leads) = degenerate_leads {
        return Ok(report(leads, true));
    }
    match run_pass(chain, SymPoly::from_unipoly(&x), ys) {
        Pass::Complete(leads) => {
            let found = recognize(&ParamCurve::new(x.clone(), y.clone()))
                .map_err(|e| ModuliError::RoundTrip { found: e.to_string() })?;
            match found.chain() {
                Some(c) if c == chain => Ok(report(leads, false)),
                Some(c) => Err(ModuliError::RoundTrip { found: c.to_string() }),
                None => Err(ModuliError::RoundTrip { found: "line".into() }),
            }
        }
        Pass::Degenerate(leads) => Ok(report(leads, true)),
        Pass::Infeasible { stage, exponent } => Err(ModuliError::Infeasible { stage, exponent }),
        Pass::Violation { stage, exponent } => Err(ModuliError::TriangularityViolation { stage, exponent }),
        Pass::Free | Pass::Solved { .. } | Pass::Leading { .. } => unreachable!("no symbols in numeric pass"),
    }
}

/// Solves for a monic `x(t)` with `recognize(x, y)` giving `chain`.
///
/// A degenerate outcome (some `B_k = 0`) is returned as a report with
/// `degenerate` set; see [`solve_for_x_with_retries`].
pub fn solve_for_x(chain: &PuiseuxChain, y: &UniPoly, policy: FreePolicy) -> Result<ModuliSolveReport, ModuliError> {
    let mut assigner = Assigner::from_policy(policy);
    let mut r = solve_with(chain, y, &mut assigner)?;
    if let FreePolicy::Random { seed } = policy {
        r.seed = Some(seed);
    }
    Ok(r)
}

/// Like [`solve_for_x`], retrying degenerate outcomes with fresh random
/// seeds `seed + 1, seed + 2, …` for the free coefficients.
pub fn solve_for_x_with_retries(
    chain: &PuiseuxChain,
    y: &UniPoly,
    policy: FreePolicy,
    max_retries: u32,
) -> Result<ModuliSolveReport, ModuliError> {
    let mut r = solve_for_x(chain, y, policy)?;
    let base = match policy {
        FreePolicy::Zero => 0,
        FreePolicy::Random { seed } => seed,
    };
    let mut attempts = 1;
    while r.degenerate && attempts <= max_retries {
        let seed = base.wrapping_add(attempts as u64);
        r = solve_for_x(chain, y, FreePolicy::Random { seed })?;
        attempts += 1;
    }
    r.attempts = attempts;
    if r.degenerate {
        return Err(ModuliError::AllDegenerate { attempts });
    }
    Ok(r)
}

/// Solves with `y = t^{deg y} + (random tail)`, drawing a fresh tail and
/// seed whenever the outcome is degenerate.
pub fn solve_random_y(chain: &PuiseuxChain, seed: u64, max_retries: Option<u32>) -> Result<ModuliSolveReport, ModuliError> {
    let retries = max_retries.unwrap_or(DEFAULT_MAX_RETRIES);
    let m = chain.y_degree() as usize;
    for attempt in 0..=retries {
        let s = seed.wrapping_add(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x9e37_79b9_7f4a_7c15);
        let mut coeffs: Vec<Rational> = (0..m)
            .map(|_| Rational::from_integer(rng.gen_range(-5i64..=5).into()))
            .collect();
        coeffs.push(Rational::one());
        let y = UniPoly::from_coeffs(coeffs);
        let mut r = solve_for_x(chain, &y, FreePolicy::Random { seed: s })?;
        if !r.degenerate {
            r.attempts = attempt + 1;
            return Ok(r);
        }
    }
    Err(ModuliError::AllDegenerate { attempts: retries + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(p: &[(u64, u64)]) -> PuiseuxChain {
        PuiseuxChain::new(p.to_vec()).unwrap()
    }

    fn poly(s: &str) -> UniPoly {
        crate::algebra::parse_unipoly(s).unwrap()
    }

    #[test]
    fn cusp_with_zero_policy() {
        let r = solve_for_x(&chain(&[(2, 3)]), &poly("t^2"), FreePolicy::Zero).unwrap();
        assert_eq!(r.x, poly("t^3"));
        assert!(!r.degenerate);
    }

    #[test]
    fn worked_example_chain() {
        let c = chain(&[(2, 3), (9, 2), (31, 2)]);
        let r = solve_for_x(&c, &poly("t^8 + t^2"), FreePolicy::Zero).unwrap();
        assert!(!r.degenerate, "{r:?}");
        let back = recognize(&ParamCurve::new(r.x.clone(), r.y.clone())).unwrap();
        assert_eq!(back.chain(), Some(&c));
        assert_eq!(r.stage_leading_coeffs.len(), 2);
    }

    #[test]
    fn pure_power_y_degenerate_or_success() {
        let c = chain(&[(2, 3), (9, 2), (31, 2)]);
        let r = solve_for_x(&c, &poly("t^8"), FreePolicy::Zero).unwrap();
        if r.degenerate {
            let r = solve_for_x_with_retries(&c, &poly("t^8"), FreePolicy::Random { seed: 1 }, 8).unwrap();
            assert!(!r.degenerate);
        }
    }

    #[test]
    fn intro_chain() {
        let c = chain(&[(2, 3), (5, 2)]);
        let r = solve_random_y(&c, 7, None).unwrap();
        assert!(!r.degenerate);
        assert_eq!(r.solved.len(), 3);
        assert_eq!(r.solved.iter().map(|s| s.exponent).collect::<Vec<_>>(), vec![11, 9, 7]);
    }

    #[test]
    fn not_sufficiently_negative() {
        let c = chain(&[(2, 3), (3, 2)]);
        assert_eq!(
            solve_for_x(&c, &poly("t^4"), FreePolicy::Zero).unwrap_err(),
            ModuliError::NotSufficientlyNegative
        );
    }

    #[test]
    fn bad_y() {
        let c = chain(&[(2, 3)]);
        assert_eq!(
            solve_for_x(&c, &poly("t^3"), FreePolicy::Zero).unwrap_err(),
            ModuliError::BadY { expected: 2 }
        );
    }
}
