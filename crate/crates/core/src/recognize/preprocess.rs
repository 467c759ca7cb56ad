use num_traits::One;
use serde::Serialize;

use crate::algebra::{Rational, TowerPoly, UniPoly};

use super::{ParamCurve, RecognizeError};

/// One coordinate change applied while bringing a curve into general
/// position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum CoordinateMove {
    /// `x ← x / c`
    ScaleX {
        #[serde(serialize_with = "crate::algebra::serialize_rational")]
        by: Rational,
    },
    /// `y ← y / c`
    ScaleY {
        #[serde(serialize_with = "crate::algebra::serialize_rational")]
        by: Rational,
    },
    Swap,
    /// `x ← x - y^power`, applied once `y` is monic.
    ReduceX { power: u32 },
}

/// Result of [`preprocess`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub curve: ParamCurve,
    pub log: Vec<CoordinateMove>,
    /// The new coordinates as polynomials in the original `(x, y)`.
    pub new_x: TowerPoly,
    pub new_y: TowerPoly,
    /// Set when one coordinate became constant: the image is a line.
    pub line: bool,
}

fn degree(p: &UniPoly) -> usize {
    p.degree().unwrap_or(0)
}

/// Brings a curve into the position `deg x > deg y ≥ 1`, `deg y ∤ deg x`,
/// with both coordinates monic.
pub fn preprocess(curve: &ParamCurve) -> Result<Preprocessed, RecognizeError> {
    let (mut x, mut y) = (curve.x.clone(), curve.y.clone());
    if degree(&x) == 0 && degree(&y) == 0 {
        return Err(RecognizeError::ConstantCurve);
    }
    let vars = ["x", "y"];
    let mut nx = TowerPoly::variable(&vars, 0);
    let mut ny = TowerPoly::variable(&vars, 1);
    let mut log = Vec::new();
    loop {
        for (p, tp, is_x) in [(&mut x, &mut nx, true), (&mut y, &mut ny, false)] {
            let Some(lc) = p.leading_coeff().cloned() else { continue };
            if degree(p) == 0 || lc.is_one() {
                continue;
            }
            *p = p.scale(&lc.recip());
            *tp = tp.scale(&lc.recip());
            log.push(if is_x {
                CoordinateMove::ScaleX { by: lc }
            } else {
                CoordinateMove::ScaleY { by: lc }
            });
        }
        let (dx, dy) = (degree(&x), degree(&y));
        if dx == 0 || dy == 0 {
            return Ok(Preprocessed {
                curve: ParamCurve { x, y },
                log,
                new_x: nx,
                new_y: ny,
                line: true,
            });
        }
        if dy > dx {
            std::mem::swap(&mut x, &mut y);
            std::mem::swap(&mut nx, &mut ny);
            log.push(CoordinateMove::Swap);
            continue;
        }
        if dx % dy != 0 {
            break;
        }
        // Monic y: subtracting y^m kills the leading term of x.
        let m = (dx / dy) as u32;
        x = &x - &y.pow(m);
        nx = nx.sub(&ny.pow(m));
        log.push(CoordinateMove::ReduceX { power: m });
    }
    Ok(Preprocessed {
        curve: ParamCurve { x, y },
        log,
        new_x: nx,
        new_y: ny,
        line: false,
    })
}
