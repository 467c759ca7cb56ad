//! Links at infinity of polynomially parametrised plane curves, computed
//! exactly.
//!
//! A curve `t ↦ (x(t), y(t))` with one place at infinity has a knot at
//! infinity described by a chain of Puiseux pairs `(p_k, q_k)`. This crate
//! recovers that chain and the defining polynomial from a parametrisation
//! ([`recognize`]), computes the chain's closed-form invariants
//! ([`splice`]), the Weierstrass semigroup of pole orders ([`semigroup`]),
//! approximate roots ([`approx_roots`]), solves for parametrisations with a
//! prescribed chain ([`moduli`]) and enumerates every admissible chain of a
//! given degree ([`atlas`]).
//!
//! All arithmetic is over exact rationals.

pub mod algebra;
pub mod approx_roots;
pub mod atlas;
pub mod moduli;
pub mod recognize;
pub mod semigroup;
pub mod splice;

pub use algebra::{parse_unipoly, LaurentSeries, Rational, TowerPoly, UniPoly};
pub use recognize::{ParamCurve, RecognitionResult};
pub use splice::{ChainInvariants, PuiseuxChain, ValidityReport};
