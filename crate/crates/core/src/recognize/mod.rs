//! Recognition of polynomially parametrised curves: the splice diagram at
//! infinity, the tower `y_2, …, y_n`, and the defining polynomial.
//!
//! The reduction starts from `y^{q_1}` and repeatedly cancels the leading
//! power of `t` with a monomial in `x, y, y_2, …` whose pole order matches.
//! When the leading power is not a pole order of the current generators the
//! working expression becomes the next generator `y_{k+1}`. With this
//! convention `y_2 = y^3 - x^2` for the cusp-like stage of the worked example,
//! the negative of the textbook choice; only degrees and the final
//! polynomial are canonical.

mod expand;
mod preprocess;

pub use expand::{expand_at_infinity, expand_at_infinity_with_order, PuiseuxExpansion};
pub use preprocess::{preprocess, CoordinateMove, Preprocessed};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{parse_unipoly, ParseError, Rational, SeriesError, TowerPoly, UniPoly};
use crate::semigroup::normal_form_for_pairs;
use crate::splice::{ChainError, PuiseuxChain};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecognizeError {
    #[error("both coordinates are constant")]
    ConstantCurve,
    #[error("parametrisation is not birational onto its image (pole orders share the factor {gcd})")]
    NonBirational { gcd: u64 },
    #[error("internal error: nonzero coefficient at gap degree {degree}")]
    InternalGapHit { degree: u64 },
    #[error("internal error: defining polynomial does not vanish on the curve")]
    VerificationFailed,
    #[error("curve is a line; it has no Puiseux pairs")]
    Line,
    #[error("recovered chain rejected: {0}")]
    Chain(#[from] ChainError),
    #[error("series expansion failed: {0}")]
    Series(#[from] SeriesError),
    #[error("truncation order {order} too small to see every characteristic exponent")]
    TruncationTooSmall { order: i64 },
}

/// A polynomial map `t ↦ (x(t), y(t))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCurve {
    pub x: UniPoly,
    pub y: UniPoly,
}

impl ParamCurve {
    pub fn new(x: UniPoly, y: UniPoly) -> Self {
        Self { x, y }
    }

    /// Parses both coordinates with the polynomial text grammar.
    pub fn parse(x: &str, y: &str) -> Result<Self, ParseError> {
        Ok(Self::new(parse_unipoly(x)?, parse_unipoly(y)?))
    }
}

/// One stage of the reduction: the sequence of leading `t`-degrees seen
/// while reducing `y_k^{q_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageTrace {
    /// Index `k` of the generator whose power starts the stage.
    pub stage: usize,
    /// Leading degrees in order, starting with `q_k · deg y_k`.
    pub degrees: Vec<u64>,
    /// Degree of the next generator, or `None` if the expression vanished.
    pub closed_at: Option<u64>,
}

/// Output of [`recognize`] for a curve that is not a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionResult {
    pub chain: PuiseuxChain,
    /// `y_2, …, y_n`; `tower[i]` is over `(x, y, y2, …)` up to its own
    /// predecessor.
    pub tower: Vec<TowerPoly>,
    /// Defining polynomial in the original coordinates, scaled so the pure
    /// power `y^{deg x(t)}` has coefficient one.
    pub defining: TowerPoly,
    /// Defining polynomial in the preprocessed coordinates.
    pub defining_normalized: TowerPoly,
    /// `deg_t` of `x, y, y_2, …, y_n` on the preprocessed curve.
    pub pole_orders: Vec<u64>,
    pub stages: Vec<StageTrace>,
    pub preprocessing: Preprocessed,
}

/// Either a curve with a knot at infinity or a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Curve(Box<RecognitionResult>),
    /// The curve is coordinate-equivalent to a line; `defining` is the
    /// vanishing polynomial in the original coordinates.
    Line {
        defining: TowerPoly,
        preprocessing: Box<Preprocessed>,
    },
}

impl Recognition {
    pub fn curve(&self) -> Option<&RecognitionResult> {
        match self {
            Recognition::Curve(r) => Some(r),
            Recognition::Line { .. } => None,
        }
    }

    pub fn into_curve(self) -> Result<RecognitionResult, RecognizeError> {
        match self {
            Recognition::Curve(r) => Ok(*r),
            Recognition::Line { .. } => Err(RecognizeError::Line),
        }
    }

    pub fn chain(&self) -> Option<&PuiseuxChain> {
        self.curve().map(|r| &r.chain)
    }

    pub fn defining(&self) -> &TowerPoly {
        match self {
            Recognition::Curve(r) => &r.defining,
            Recognition::Line { defining, .. } => defining,
        }
    }
}

fn var_names(k: usize) -> Vec<String> {
    let mut v = vec!["x".to_string(), "y".to_string()];
    v.extend((2..=k).map(|i| format!("y{i}")));
    v
}

fn var_refs(names: &[String]) -> Vec<&str> {
    names.iter().map(String::as_str).collect()
}

fn degree(p: &UniPoly) -> u64 {
    p.degree().unwrap_or(0) as u64
}

/// Recognises the curve, returning its chain, tower and defining polynomial.
pub fn recognize(curve: &ParamCurve) -> Result<Recognition, RecognizeError> {
    let pre = preprocess(curve)?;
    if pre.line {
        let c = &pre.curve;
        let (lin, value) = if degree(&c.x) == 0 {
            (pre.new_x.clone(), c.x.coeff(0))
        } else {
            (pre.new_y.clone(), c.y.coeff(0))
        };
        let vars = ["x", "y"];
        let defining = normalize_original(lin.sub(&TowerPoly::constant(&vars, value)), curve);
        return Ok(Recognition::Line {
            defining,
            preprocessing: Box::new(pre),
        });
    }
    let reduced = reduce(&pre.curve)?;
    let vars2 = ["x", "y"];
    // Expand every generator in (x, y).
    let mut expanded = vec![TowerPoly::variable(&vars2, 0), TowerPoly::variable(&vars2, 1)];
    for y_k in &reduced.tower {
        let e = y_k.compose(&expanded[..y_k.vars().len()]).expect("arity");
        expanded.push(e);
    }
    let p_norm = reduced.last.compose(&expanded).expect("arity");
    let defining = normalize_original(p_norm.compose(&[pre.new_x.clone(), pre.new_y.clone()]).expect("arity"), curve);
    let check = defining
        .eval_composed(&[curve.x.clone(), curve.y.clone()])
        .expect("arity");
    if !check.is_zero() {
        return Err(RecognizeError::VerificationFailed);
    }
    let chain = PuiseuxChain::new(reduced.pairs)?;
    if !chain.is_valid() {
        return Err(ChainError::Invalid(chain.validate()).into());
    }
    Ok(Recognition::Curve(Box::new(RecognitionResult {
        chain,
        tower: reduced.tower,
        defining,
        defining_normalized: p_norm,
        pole_orders: reduced.pole_orders,
        stages: reduced.stages,
        preprocessing: pre,
    })))
}

/// Scales so that the coefficient of `y^{deg x(t)}` is one. When `x(t)` is
/// constant the polynomial is `x - c` instead.
fn normalize_original(p: TowerPoly, curve: &ParamCurve) -> TowerPoly {
    let dx = degree(&curve.x) as u32;
    let c = if dx == 0 { p.coeff(&[1, 0]) } else { p.coeff(&[0, dx]) };
    if c.is_zero() || c.is_one() {
        p
    } else {
        p.scale(&c.recip())
    }
}

struct Reduction {
    pairs: Vec<(u64, u64)>,
    tower: Vec<TowerPoly>,
    last: TowerPoly,
    pole_orders: Vec<u64>,
    stages: Vec<StageTrace>,
}

/// The staged reduction on a preprocessed curve.
fn reduce(curve: &ParamCurve) -> Result<Reduction, RecognizeError> {
    let n = degree(&curve.x);
    let m = degree(&curve.y);
    let g0 = n.gcd(&m);
    let mut pairs = vec![(m / g0, n / g0)];
    let mut gcd = g0;
    let mut values = vec![curve.x.clone(), curve.y.clone()];
    let mut pole_orders = vec![n, m];
    let mut tower: Vec<TowerPoly> = Vec::new();
    let mut stages = Vec::new();

    loop {
        let k = values.len() - 1;
        let names = var_names(k);
        let vars = var_refs(&names);
        let q_k = pairs[k - 1].1 as u32;
        let mut expr = TowerPoly::variable(&vars, k).pow(q_k);
        let mut value = values[k].pow(q_k);
        let mut trace = StageTrace {
            stage: k,
            degrees: Vec::new(),
            closed_at: None,
        };
        let mut powers = crate::algebra::PowerCache::new(values.clone(), UniPoly::one(), |a, b| a * b);
        loop {
            let Some(d) = value.degree().map(|d| d as u64) else {
                stages.push(trace);
                if gcd > 1 {
                    return Err(RecognizeError::NonBirational { gcd });
                }
                return Ok(Reduction {
                    pairs,
                    tower,
                    last: expr,
                    pole_orders,
                    stages,
                });
            };
            trace.degrees.push(d);
            let nf = if d % gcd == 0 {
                normal_form_for_pairs(&pairs, d / gcd)
            } else {
                None
            };
            match nf {
                Some(a) => {
                    let exps: Vec<u32> = a.iter().map(|&e| e as u32).collect();
                    let mut mono_value = UniPoly::one();
                    for (i, &e) in exps.iter().enumerate() {
                        if e > 0 {
                            mono_value = &mono_value * powers.get(i, e);
                        }
                    }
                    debug_assert_eq!(degree(&mono_value), d);
                    let lambda = value.leading_coeff().unwrap() / mono_value.leading_coeff().unwrap();
                    value = &value - &mono_value.scale(&lambda);
                    expr = expr.sub(&TowerPoly::monomial(&vars, exps, lambda));
                    debug_assert!(value.degree().is_none_or(|nd| (nd as u64) < d));
                }
                None => {
                    let g_new = gcd.gcd(&d);
                    if gcd == 1 || g_new == gcd {
                        return Err(RecognizeError::InternalGapHit { degree: d });
                    }
                    pairs.push((d / g_new, gcd / g_new));
                    gcd = g_new;
                    trace.closed_at = Some(d);
                    stages.push(trace);
                    tower.push(expr);
                    values.push(value);
                    pole_orders.push(d);
                    break;
                }
            }
        }
    }
}

/// Rational coefficient helper used by the CLI for term lists.
pub fn defining_terms(p: &TowerPoly) -> Vec<(u32, u32, Rational)> {
    let mut out: Vec<_> = p
        .terms()
        .map(|(e, c)| (e[0], e.get(1).copied().unwrap_or(0), c.clone()))
        .collect();
    out.sort_by_key(|t| std::cmp::Reverse((t.1, t.0)));
    out
}
