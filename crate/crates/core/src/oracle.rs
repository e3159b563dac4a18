//! Brute-force `P^G` for a cyclic group acting diagonally on `C²`.
//!
//! When every blow-up is centred at a coordinate fixed point, each `J^α(v)`
//! is spanned by the monomials it contains. Counting monomials then gives the
//! dimension tables directly, without strata or product formulas.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charring::{CharExponent, CharacterRing};
use crate::engine::{poincare_from_dimensions, DimensionTable, EngineError};
use crate::powerseries::{CharSeries, ExponentVector};
use crate::resolution::{ComponentId, MultiplicityMatrix, ResolutionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("character {0} does not belong to the oracle's group")]
    ForeignCharacter(CharExponent),
}

/// A coordinate axis used as a curve branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    /// `{x = 0}`, parametrized by `τ ↦ (0, τ)`.
    #[serde(rename = "x=0")]
    XZero,
    /// `{y = 0}`, parametrized by `τ ↦ (τ, 0)`.
    #[serde(rename = "y=0")]
    YZero,
}

/// A valuation value; `Infinite` is above every integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    Finite(u64),
    Infinite,
}

impl Val {
    /// `self ≥ v` for an integer threshold.
    pub fn at_least(self, v: i64) -> bool {
        match self {
            Val::Infinite => true,
            Val::Finite(x) => v < 0 || x >= v as u64,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(x) => write!(f, "{x}"),
            Val::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Valuations {
    /// Valuation vectors of `x` and `y` on the chosen components.
    Divisorial { x: Vec<u64>, y: Vec<u64> },
    Curve { axes: Vec<Axis> },
}

/// `Z_m` acting by `ξ·(x, y) = (ξ^k x, ξ^l y)`, with the filtration to count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialModel {
    order: u32,
    weights: (i64, i64),
    valuations: Valuations,
}

impl MonomialModel {
    /// Divisorial filtration of the chosen components; `sigma_x` is the
    /// component met by the strict transform of `{x = 0}`, so it carries the
    /// valuation vector of `x`.
    pub fn divisorial(
        order: u32,
        weights: (i64, i64),
        multiplicities: &MultiplicityMatrix,
        sigma_x: ComponentId,
        sigma_y: ComponentId,
        chosen: &[ComponentId],
    ) -> Result<Self, OracleError> {
        if order == 0 {
            return Err(OracleError::ZeroOrder);
        }
        Ok(Self {
            order,
            weights,
            valuations: Valuations::Divisorial {
                x: multiplicities.row_restricted(sigma_x, chosen)?,
                y: multiplicities.row_restricted(sigma_y, chosen)?,
            },
        })
    }

    /// Filtration by orders along coordinate axes.
    pub fn curve(order: u32, weights: (i64, i64), axes: Vec<Axis>) -> Result<Self, OracleError> {
        if order == 0 {
            return Err(OracleError::ZeroOrder);
        }
        Ok(Self {
            order,
            weights,
            valuations: Valuations::Curve { axes },
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weights(&self) -> (i64, i64) {
        self.weights
    }

    pub fn num_vars(&self) -> usize {
        match &self.valuations {
            Valuations::Divisorial { x, .. } => x.len(),
            Valuations::Curve { axes } => axes.len(),
        }
    }

    /// `Z_1` uses the empty presentation.
    pub fn ring(&self) -> CharacterRing {
        if self.order == 1 {
            CharacterRing::trivial()
        } else {
            CharacterRing::new(&[self.order as i64]).expect("positive order")
        }
    }

    /// Non-empty when `gcd(k, l)` shares a factor with `m`.
    pub fn warnings(&self) -> Vec<String> {
        let g = self.weights.0.gcd(&self.weights.1).gcd(&(self.order as i64));
        if g > 1 {
            vec![format!(
                "gcd(k, l) = gcd({}, {}) is not coprime to the group order {}",
                self.weights.0, self.weights.1, self.order
            )]
        } else {
            Vec::new()
        }
    }
}

/// Character of `x^a y^b` under `(g^*f)(p) = f(g⁻¹p)`: exponent `−(k·a + l·b) mod m`.
pub fn monomial_character(mm: &MonomialModel, a: u64, b: u64) -> CharExponent {
    let ring = mm.ring();
    if ring.rank() == 0 {
        return ring.trivial_exponent();
    }
    let m = mm.order as i128;
    let e = -((mm.weights.0 as i128 % m) * (a as i128 % m) + (mm.weights.1 as i128 % m) * (b as i128 % m));
    ring.exponent(&[e.rem_euclid(m) as i64]).expect("rank one")
}

/// `a·(row of σ_x) + b·(row of σ_y)` restricted to the chosen components.
pub fn monomial_divisorial_valuation(
    multiplicities: &MultiplicityMatrix,
    sigma_x: ComponentId,
    sigma_y: ComponentId,
    chosen: &[ComponentId],
    a: u64,
    b: u64,
) -> Result<ExponentVector, OracleError> {
    let x = multiplicities.row_restricted(sigma_x, chosen)?;
    let y = multiplicities.row_restricted(sigma_y, chosen)?;
    Ok(ExponentVector::new(
        x.iter().zip(&y).map(|(&p, &q)| (a * p + b * q) as u32).collect(),
    ))
}

/// Orders of `x^a y^b` along coordinate-axis branches.
pub fn monomial_curve_valuation(axes: &[Axis], a: u64, b: u64) -> Vec<Val> {
    axes.iter()
        .map(|axis| match axis {
            Axis::XZero if a == 0 => Val::Finite(b),
            Axis::YZero if b == 0 => Val::Finite(a),
            _ => Val::Infinite,
        })
        .collect()
}

fn valuation(mm: &MonomialModel, a: u64, b: u64) -> Vec<Val> {
    match &mm.valuations {
        Valuations::Divisorial { x, y } => x.iter().zip(y).map(|(&p, &q)| Val::Finite(a * p + b * q)).collect(),
        Valuations::Curve { axes } => monomial_curve_valuation(axes, a, b),
    }
}

/// `w ≥ v` and not `w ≥ v + 1̲`.
fn in_layer(w: &[Val], v: &[i64]) -> bool {
    w.iter().zip(v).all(|(x, &t)| x.at_least(t)) && !w.iter().zip(v).all(|(x, &t)| x.at_least(t + 1))
}

struct Monomial {
    character: usize,
    valuation: Vec<Val>,
}

/// Monomials `x^a y^b` with `a + b ≤ N + extra`.
///
/// Every nonconstant monomial has a valuation entry `≥ a + b` or `∞` in each
/// coordinate, so `a + b ≤ N` already sees every layer inside the region.
fn monomials(mm: &MonomialModel, bound: u32, extra: u32) -> Vec<Monomial> {
    let ring = mm.ring();
    let index_of = |c: &CharExponent| c.as_slice().first().copied().unwrap_or(0) as usize;
    let top = (bound + extra) as u64;
    let mut out = Vec::new();
    for a in 0..=top {
        for b in 0..=top - a {
            let c = monomial_character(mm, a, b);
            debug_assert!(ring.rank() <= 1);
            out.push(Monomial {
                character: index_of(&c),
                valuation: valuation(mm, a, b),
            });
        }
    }
    out
}

fn characters(mm: &MonomialModel) -> Vec<CharExponent> {
    mm.ring().characters()
}

/// Per-character tables, in the ring's character order.
pub fn dimension_tables(mm: &MonomialModel, bound: u32) -> Result<Vec<(CharExponent, DimensionTable)>, OracleError> {
    dimension_tables_with(mm, bound, 0)
}

/// As [`dimension_tables`], enumerating `extra` more monomial degrees.
pub fn dimension_tables_with(
    mm: &MonomialModel,
    bound: u32,
    extra: u32,
) -> Result<Vec<(CharExponent, DimensionTable)>, OracleError> {
    let chars = characters(mm);
    let mons = monomials(mm, bound, extra);
    let tables = DimensionTable::from_fn_many(mm.num_vars(), bound, chars.len(), |v, out| {
        for m in &mons {
            if in_layer(&m.valuation, v) {
                out[m.character] += 1;
            }
        }
    })?;
    Ok(chars.into_iter().zip(tables).collect())
}

/// `d^α` for one character.
pub fn dimension_table(mm: &MonomialModel, alpha: &CharExponent, bound: u32) -> Result<DimensionTable, OracleError> {
    dimension_tables(mm, bound)?
        .into_iter()
        .find(|(c, _)| c == alpha)
        .map(|(_, t)| t)
        .ok_or_else(|| OracleError::ForeignCharacter(alpha.clone()))
}

/// `d(v)` with characters ignored.
pub fn whole_ring_table(mm: &MonomialModel, bound: u32) -> Result<DimensionTable, OracleError> {
    let mons = monomials(mm, bound, 0);
    Ok(DimensionTable::from_fn(mm.num_vars(), bound, |v| {
        mons.iter().filter(|m| in_layer(&m.valuation, v)).count() as u64
    })?)
}

/// `P^G` assembled from the monomial dimension counts.
pub fn oracle_poincare(mm: &MonomialModel, bound: u32) -> Result<CharSeries, OracleError> {
    let tables = dimension_tables(mm, bound)?;
    Ok(poincare_from_dimensions(&tables, &mm.ring(), mm.num_vars(), bound)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{multiplicity_matrix, ComponentSpec, GraphDescription, ResolutionGraph};

    fn id(i: u32) -> ComponentId {
        ComponentId(i)
    }

    fn example_one_matrix() -> MultiplicityMatrix {
        let desc = GraphDescription {
            components: [(1, -1), (2, -3), (3, -1)]
                .iter()
                .map(|&(i, s)| ComponentSpec { id: id(i), self_intersection: s })
                .collect(),
            edges: vec![[id(1), id(2)], [id(2), id(3)]],
            e0: id(2),
        };
        multiplicity_matrix(&ResolutionGraph::build(&desc).unwrap()).unwrap()
    }

    fn example_one() -> MonomialModel {
        let chosen = [id(1), id(2), id(3)];
        MonomialModel::divisorial(3, (1, -1), &example_one_matrix(), id(3), id(1), &chosen).unwrap()
    }

    #[test]
    fn character_anchors() {
        let mm = example_one();
        // y carries u^{-l} = u, x carries u^{-k} = u^{-1}
        assert_eq!(monomial_character(&mm, 0, 1).as_slice(), &[1]);
        assert_eq!(monomial_character(&mm, 1, 0).as_slice(), &[2]);
        assert!(monomial_character(&mm, 1, 1).is_trivial());
        assert!(mm.warnings().is_empty());
    }

    #[test]
    fn divisorial_valuations() {
        let m = example_one_matrix();
        let chosen = [id(1), id(2), id(3)];
        let w = |a, b| monomial_divisorial_valuation(&m, id(3), id(1), &chosen, a, b).unwrap();
        assert_eq!(w(1, 0).components(), &[1, 1, 2]);
        assert_eq!(w(0, 1).components(), &[2, 1, 1]);
        assert_eq!(w(1, 1).components(), &[3, 2, 3]);
    }

    #[test]
    fn curve_valuations() {
        let x0 = [Axis::XZero];
        assert_eq!(monomial_curve_valuation(&x0, 0, 3), vec![Val::Finite(3)]);
        assert_eq!(monomial_curve_valuation(&x0, 1, 1), vec![Val::Infinite]);
        let node = [Axis::XZero, Axis::YZero];
        assert_eq!(monomial_curve_valuation(&node, 0, 0), vec![Val::Finite(0), Val::Finite(0)]);
        assert_eq!(monomial_curve_valuation(&node, 2, 0), vec![Val::Infinite, Val::Finite(2)]);
    }

    #[test]
    fn infinity_is_not_a_large_integer() {
        // x·y along {x=0} lies in every J(v), so it never sits in a layer
        let w = [Val::Infinite];
        assert!(!in_layer(&w, &[1_000_000]));
        assert!(!in_layer(&w, &[-1]));
        assert!(Val::Infinite > Val::Finite(u64::MAX));
    }

    #[test]
    fn dimension_samples() {
        let mm = example_one();
        let ring = mm.ring();
        let triv = dimension_table(&mm, &ring.trivial_exponent(), 6).unwrap();
        assert_eq!(triv.get(&[0, 0, 0]), 1);
        let u = dimension_table(&mm, &ring.generator(0), 6).unwrap();
        // y and x² both have character u and leave the layer at (2,1,1)
        assert_eq!(u.get(&[2, 1, 1]), 2);
        assert_eq!(u.get(&[2, 1, 2]), 1);
        for v in [[0, 1, 2], [1, 1, 1], [3, 0, 0]] {
            assert_eq!(u.get(&[-1, v[1], v[2]]), u.get(&[-2, v[1], v[2]]));
        }
    }

    #[test]
    fn partition_over_characters() {
        let mm = example_one();
        let tables = dimension_tables(&mm, 7).unwrap();
        let whole = whole_ring_table(&mm, 7).unwrap();
        crate::engine::for_each_region_point(3, 7, |v| {
            let sum: u64 = tables.iter().map(|(_, t)| t.get(v)).sum();
            assert_eq!(sum, whole.get(v), "at {v:?}");
        });
    }

    #[test]
    fn enumeration_bound_is_sound() {
        let mm = example_one();
        assert_eq!(dimension_tables(&mm, 8).unwrap(), dimension_tables_with(&mm, 8, 5).unwrap());
        let curve = MonomialModel::curve(3, (1, -1), vec![Axis::XZero, Axis::YZero]).unwrap();
        assert_eq!(dimension_tables(&curve, 8).unwrap(), dimension_tables_with(&curve, 8, 5).unwrap());
    }

    #[test]
    fn trivial_group_single_blowup() {
        let desc = GraphDescription {
            components: vec![ComponentSpec { id: id(1), self_intersection: -1 }],
            edges: vec![],
            e0: id(1),
        };
        let m = multiplicity_matrix(&ResolutionGraph::build(&desc).unwrap()).unwrap();
        let mm = MonomialModel::divisorial(1, (1, 1), &m, id(1), id(1), &[id(1)]).unwrap();
        let p = oracle_poincare(&mm, 20).unwrap();
        let ring = mm.ring();
        for v in 0..=20u32 {
            assert_eq!(p.coefficient(&[v]), ring.integer(v + 1));
        }
    }

    #[test]
    fn gcd_warning() {
        let m = example_one_matrix();
        let chosen = [id(1), id(2), id(3)];
        let mm = MonomialModel::divisorial(6, (2, 4), &m, id(3), id(1), &chosen).unwrap();
        assert_eq!(mm.warnings().len(), 1);
    }
}
