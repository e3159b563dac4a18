//! Equivariant Poincaré series of multi-index filtrations on plane function germs.
//!
//! A finite group `G` acts on `(C², 0)`. Given the combinatorics of an
//! equivariant modification (dual graph, strata of the orbit space of the
//! exceptional divisor, their Euler characteristics and characters) this
//! crate computes the equivariant Poincaré series of divisorial filtrations
//! and of filtrations defined by invariant curves, as truncated power series
//! with coefficients in the ring of one-dimensional characters of `G`.
//! For cyclic diagonal actions an independent brute-force route over
//! monomials reproduces the same series from dimension counts.

pub mod bigint_json;
pub mod charring;
pub mod cli;
pub mod engine;
pub mod job;
pub mod oracle;
pub mod powerseries;
pub mod resolution;
pub mod strata;

pub use charring::{char_mul, CharElement, CharError, CharExponent, CharacterRing};
pub use engine::{
    curve_poincare, divisorial_poincare, poincare_from_dimensions, quotient_extract,
    restrict_to_character, DimensionTable, EngineError, Factor,
};
pub use oracle::{MonomialModel, OracleError};
pub use powerseries::{
    factor_power, series_eq_upto, series_mul, substitute_and_rescale, CharSeries, CoeffRing,
    Comparison, ExponentVector, IntSeries, Integers, Series, SeriesError, SubstitutionPlan,
    VarAction,
};
pub use resolution::{ComponentId, IntersectionMatrix, MultiplicityMatrix, ResolutionError, ResolutionGraph};
pub use strata::{Branch, CurveStrata, RemovedPoints, Stratum, StratumError, StratumModel, StratumRef};
