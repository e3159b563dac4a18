//! Series computations: the product formulas, the dimensions-to-series
//! pipeline, restriction to one character and quotient extraction.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::charring::{CharExponent, CharacterRing};
use crate::powerseries::{
    factor_power, required_input_bound, series_mul, substitute_and_rescale, CharSeries, ExponentVector, IntSeries,
    Integers, Series, SeriesError, SubstitutionPlan, VarAction,
};
use crate::resolution::ComponentId;
use crate::strata::{stratum_multiplicities, CurveStrata, Stratum, StratumError, StratumModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Stratum(#[from] StratumError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("stratum {stratum}: zero multiplicity vector with chi = {chi}")]
    ZeroMultiplicity { stratum: String, chi: i64 },
    #[error("extraction sends the factor with exponent {exponent} to a constant")]
    DegenerateExtraction { exponent: ExponentVector },
    #[error("dimension table: {0}")]
    Table(String),
    #[error("character {character}: nonzero coefficient {value} at negative exponent {exponent:?}")]
    NegativeSupport {
        character: CharExponent,
        exponent: Vec<i64>,
        value: i64,
    },
    #[error("integer overflow in the dimension pipeline")]
    Overflow,
}

/// `(1 − scalar · u^ℓ · t^m)^power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub scalar: BigInt,
    pub character: CharExponent,
    pub exponent: ExponentVector,
    pub power: i64,
}

impl Factor {
    fn expand(&self, ring: &CharacterRing, bound: u32) -> Result<CharSeries, SeriesError> {
        let c = ring.monomial(self.character.clone(), self.scalar.clone());
        factor_power(ring, &c, &self.exponent, self.power, bound)
    }
}

/// One factor `(1 − u^ℓ t^m)^{−χ}` per stratum with `χ ≠ 0`, sorted by `(m, ℓ)`.
///
/// With no targets the product is empty.
pub fn stratum_factors(
    model: &StratumModel,
    strata: &[Stratum],
    targets: &[ComponentId],
) -> Result<Vec<Factor>, EngineError> {
    let mut out = Vec::new();
    if targets.is_empty() {
        return Ok(out);
    }
    for (i, st) in strata.iter().enumerate() {
        if st.chi == 0 {
            continue;
        }
        let m = stratum_multiplicities(model, st, targets)?;
        if m.is_zero() {
            return Err(EngineError::ZeroMultiplicity {
                stratum: st.id.clone().unwrap_or_else(|| format!("#{i}")),
                chi: st.chi,
            });
        }
        out.push(Factor {
            scalar: BigInt::from(1),
            character: model.resolved_character(i, st)?,
            exponent: m,
            power: -st.chi,
        });
    }
    out.sort_by(|a, b| (&a.exponent, &a.character).cmp(&(&b.exponent, &b.character)));
    Ok(out)
}

/// Truncated product of factors in `num_vars` variables.
pub fn product_of_factors(
    ring: &CharacterRing,
    num_vars: usize,
    factors: &[Factor],
    bound: u32,
) -> Result<CharSeries, EngineError> {
    let mut acc = Series::one(ring.clone(), num_vars, bound);
    for f in factors {
        acc = series_mul(&acc, &f.expand(ring, bound)?)?;
    }
    Ok(acc)
}

/// `P^G(t) = ∏_Ξ (1 − u^{ℓ_Ξ} t^{m_Ξ})^{−χ(Ξ)}` up to total degree `bound`.
pub fn divisorial_poincare(model: &StratumModel, bound: u32) -> Result<CharSeries, EngineError> {
    let factors = stratum_factors(model, model.strata(), model.chosen())?;
    product_of_factors(model.ring(), model.chosen().len(), &factors, bound)
}

/// `P^G_C(t)` for a curve, from strata already adjusted by [`crate::strata::curve_strata`].
pub fn curve_poincare(model: &StratumModel, curve: &CurveStrata, bound: u32) -> Result<CharSeries, EngineError> {
    let factors = stratum_factors(model, &curve.strata, &curve.targets)?;
    product_of_factors(model.ring(), curve.targets.len(), &factors, bound)
}

/// The coefficient series `P^α` of one character.
pub fn restrict_to_character(p: &CharSeries, alpha: &CharExponent) -> IntSeries {
    p.map_coefficients(Integers, |c| c.coefficient(alpha))
}

/// Trivial part of every coefficient, then the monomial substitution of `plan`.
pub fn quotient_extract(p: &CharSeries, plan: &SubstitutionPlan) -> Result<IntSeries, EngineError> {
    let invariant = p.map_coefficients(Integers, |c| c.trivial_part());
    Ok(substitute_and_rescale(&invariant, plan)?)
}

/// Largest `|m| / deg(image of t^m)` over the factors, and at least the largest denominator.
///
/// Every monomial of the product is a nonnegative combination of factor
/// exponents, so this bounds the ratio over the whole support.
pub fn extraction_ratio(factors: &[Factor], plan: &SubstitutionPlan) -> Result<Ratio<u64>, EngineError> {
    let mut r = Ratio::from_integer(plan.max_denominator() as u64);
    for f in factors {
        let image = plan.weighted_degree(&f.exponent);
        if image.is_zero() {
            return Err(EngineError::DegenerateExtraction {
                exponent: f.exponent.clone(),
            });
        }
        let ratio = Ratio::from_integer(f.exponent.total_degree()) / image;
        if ratio > r {
            r = ratio;
        }
    }
    Ok(r)
}

/// Extraction complete up to `out_degree`: the product is expanded to the input
/// degree the substitution needs, then truncated back.
pub fn extract_from_factors(
    ring: &CharacterRing,
    num_vars: usize,
    factors: &[Factor],
    plan: &SubstitutionPlan,
    out_degree: u32,
) -> Result<IntSeries, EngineError> {
    let ratio = extraction_ratio(factors, plan)?;
    let input = required_input_bound(out_degree, ratio);
    let p = product_of_factors(ring, num_vars, factors, input)?;
    let plan = plan.clone().with_degree_ratio(ratio);
    Ok(quotient_extract(&p, &plan)?.truncate(out_degree))
}

/// Plan from 1-based `(source, target, denominator)` triples; unlisted sources are dropped.
pub fn plan_from_map(num_vars: usize, map: &[(usize, usize, u32)]) -> Result<SubstitutionPlan, EngineError> {
    let mut actions = vec![VarAction::Drop; num_vars];
    for &(source, target, denominator) in map {
        if source == 0 || source > num_vars {
            return Err(SeriesError::Plan(format!("source variable {source} out of range 1..={num_vars}")).into());
        }
        if target == 0 {
            return Err(SeriesError::Plan("target variables are numbered from 1".into()).into());
        }
        if actions[source - 1] != VarAction::Drop {
            return Err(SeriesError::Plan(format!("source variable {source} mapped twice")).into());
        }
        actions[source - 1] = VarAction::Map {
            target: target - 1,
            denominator,
        };
    }
    Ok(SubstitutionPlan::new(actions)?)
}

/// Dimensions `d(v) = dim J(v)/J(v+1̲)` for one character.
///
/// The table covers the region `{v ≥ −1̲ : Σ max(v_i, 0) ≤ N}`. Coordinate `−1`
/// stands for every negative value, so reads below it are clamped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTable {
    num_vars: usize,
    bound: u32,
    values: HashMap<u64, u64>,
}

/// Mixed-radix key of a region point, coordinates shifted by one.
#[derive(Debug, Clone, Copy)]
struct Keys {
    num_vars: usize,
    base: u64,
}

impl Keys {
    fn new(num_vars: usize, bound: u32) -> Result<Self, EngineError> {
        let base = bound as u64 + 2;
        base.checked_pow(num_vars as u32)
            .ok_or_else(|| EngineError::Table(format!("{num_vars} variables at degree {bound} exceed the key range")))?;
        Ok(Self { num_vars, base })
    }

    fn encode(&self, v: &[i64]) -> u64 {
        v.iter()
            .rev()
            .fold(0, |acc, &x| acc * self.base + (x.max(-1) + 1) as u64)
    }

    fn decode(&self, mut key: u64) -> Vec<i64> {
        (0..self.num_vars)
            .map(|_| {
                let x = (key % self.base) as i64 - 1;
                key /= self.base;
                x
            })
            .collect()
    }

    fn stride(&self, i: usize) -> u64 {
        self.base.pow(i as u32)
    }
}

/// Calls `f` on every point of the region in lexicographic order.
pub fn for_each_region_point(num_vars: usize, bound: u32, mut f: impl FnMut(&[i64])) {
    fn rec(v: &mut Vec<i64>, i: usize, budget: i64, f: &mut dyn FnMut(&[i64])) {
        if i == v.len() {
            f(v);
            return;
        }
        for x in -1..=budget {
            v[i] = x;
            rec(v, i + 1, budget - x.max(0), f);
        }
    }
    let mut v = vec![0i64; num_vars];
    rec(&mut v, 0, bound as i64, &mut f);
}

impl DimensionTable {
    /// Tabulates `f` over the region.
    pub fn from_fn(num_vars: usize, bound: u32, mut f: impl FnMut(&[i64]) -> u64) -> Result<Self, EngineError> {
        let mut tables = Self::from_fn_many(num_vars, bound, 1, |v, out| out[0] = f(v))?;
        Ok(tables.pop().expect("one table"))
    }

    /// Tabulates `count` functions in one sweep; `f` fills one slot per table.
    pub fn from_fn_many(
        num_vars: usize,
        bound: u32,
        count: usize,
        mut f: impl FnMut(&[i64], &mut [u64]),
    ) -> Result<Vec<Self>, EngineError> {
        let keys = Keys::new(num_vars, bound)?;
        let mut values = vec![HashMap::new(); count];
        let mut slot = vec![0u64; count];
        for_each_region_point(num_vars, bound, |v| {
            slot.iter_mut().for_each(|x| *x = 0);
            f(v, &mut slot);
            let key = keys.encode(v);
            for (table, &x) in values.iter_mut().zip(&slot) {
                if x != 0 {
                    table.insert(key, x);
                }
            }
        });
        Ok(values
            .into_iter()
            .map(|values| Self {
                num_vars,
                bound,
                values,
            })
            .collect())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// `d(v)` with coordinates below `−1` clamped.
    ///
    /// # Panics
    /// If the clamped point lies outside the region.
    pub fn get(&self, v: &[i64]) -> u64 {
        assert_eq!(v.len(), self.num_vars, "point dimension");
        let size: i64 = v.iter().map(|&x| x.max(0)).sum();
        assert!(size <= self.bound as i64, "point {v:?} outside the region");
        let keys = Keys {
            num_vars: self.num_vars,
            base: self.bound as u64 + 2,
        };
        self.values.get(&keys.encode(v)).copied().unwrap_or(0)
    }
}

/// Applies `Δ_i f(v) = f(v − e_i) − f(v)` to a sparse table over the region.
fn difference(
    keys: &Keys,
    bound: u32,
    table: &HashMap<u64, i64>,
    i: usize,
) -> Result<HashMap<u64, i64>, EngineError> {
    let stride = keys.stride(i);
    let mut out: HashMap<u64, i64> = HashMap::with_capacity(table.len() * 2);
    for (&key, &val) in table {
        let v = keys.decode(key);
        if v[i] >= 0 {
            let e = out.entry(key).or_insert(0);
            *e = e.checked_sub(val).ok_or(EngineError::Overflow)?;
        }
        let size: i64 = v.iter().map(|&x| x.max(0)).sum();
        if v[i] < 0 || size < bound as i64 {
            let e = out.entry(key + stride).or_insert(0);
            *e = e.checked_add(val).ok_or(EngineError::Overflow)?;
        }
    }
    out.retain(|_, x| *x != 0);
    Ok(out)
}

/// Assembles `P^G = Σ_α α·P^α` from per-character dimension tables.
///
/// Per character, `n(v) = Σ_ε (−1)^{s−|ε|} d(v − ε)` and
/// `P(v) = −Σ_{k≥0} n(v − k·1̲)`, all inside the region. Coefficients of `n`
/// at points with a negative coordinate must vanish; a nonzero value there
/// means the table is not a filtration's dimension table.
pub fn poincare_from_dimensions(
    tables: &[(CharExponent, DimensionTable)],
    ring: &CharacterRing,
    num_vars: usize,
    bound: u32,
) -> Result<CharSeries, EngineError> {
    let mut out = Series::zero(ring.clone(), num_vars, bound);
    for (alpha, table) in tables {
        let p = character_pipeline(alpha, table, num_vars, bound)?;
        for (v, c) in p {
            out.add_term(ExponentVector::new(v), &ring.monomial(alpha.clone(), BigInt::from(c)))?;
        }
    }
    Ok(out)
}

fn character_pipeline(
    alpha: &CharExponent,
    table: &DimensionTable,
    num_vars: usize,
    bound: u32,
) -> Result<Vec<(Vec<u32>, i64)>, EngineError> {
    if table.num_vars != num_vars {
        return Err(EngineError::Table(format!(
            "table has {} variables, expected {num_vars}",
            table.num_vars
        )));
    }
    if table.bound < bound {
        return Err(EngineError::Table(format!(
            "table covers degree {}, {bound} requested",
            table.bound
        )));
    }
    let keys = Keys::new(num_vars, table.bound)?;
    let mut n: HashMap<u64, i64> = table
        .values
        .iter()
        .map(|(&k, &x)| i64::try_from(x).map(|x| (k, x)).map_err(|_| EngineError::Overflow))
        .collect::<Result<_, _>>()?;
    for i in 0..num_vars {
        n = difference(&keys, table.bound, &n, i)?;
    }

    let mut p: HashMap<Vec<u32>, i64> = HashMap::new();
    for (&key, &val) in &n {
        let w = keys.decode(key);
        if w.iter().any(|&x| x < 0) {
            return Err(EngineError::NegativeSupport {
                character: alpha.clone(),
                exponent: w,
                value: val,
            });
        }
        let mut v: Vec<u32> = w.iter().map(|&x| x as u32).collect();
        let mut size: u64 = v.iter().map(|&x| x as u64).sum();
        while size <= bound as u64 {
            let e = p.entry(v.clone()).or_insert(0);
            *e = e.checked_sub(val).ok_or(EngineError::Overflow)?;
            v.iter_mut().for_each(|x| *x += 1);
            size += num_vars as u64;
            if num_vars == 0 {
                break;
            }
        }
    }
    let mut terms: Vec<(Vec<u32>, i64)> = p.into_iter().filter(|(_, c)| *c != 0).collect();
    terms.sort();
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{ComponentSpec, GraphDescription, ResolutionGraph};
    use crate::powerseries::series_eq_upto;

    fn id(i: u32) -> ComponentId {
        ComponentId(i)
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn example_one() -> StratumModel {
        let desc = GraphDescription {
            components: [(1, -1), (2, -3), (3, -1)]
                .iter()
                .map(|&(i, s)| ComponentSpec {
                    id: id(i),
                    self_intersection: s,
                })
                .collect(),
            edges: vec![[id(1), id(2)], [id(2), id(3)]],
            e0: id(2),
        };
        let graph = ResolutionGraph::build(&desc).unwrap();
        let ring = CharacterRing::new(&[3]).unwrap();
        let e = |x: i64| ring.exponent(&[x]).unwrap();
        let strata = vec![
            Stratum::new(vec![id(1)], 1).with_derivation(e(1), 1),
            Stratum::new(vec![id(3)], 1).with_derivation(e(2), 1),
            Stratum::new(vec![id(2), id(2), id(2)], 0),
        ];
        StratumModel::new(graph, ring, strata, vec![id(1), id(2), id(3)]).unwrap()
    }

    #[test]
    fn example_one_product() {
        let m = example_one();
        let ring = m.ring().clone();
        let p = divisorial_poincare(&m, 12).unwrap();
        let u = |x: i64| ring.exponent(&[x]).unwrap();
        let expected = product_of_factors(
            &ring,
            3,
            &[
                Factor { scalar: 1.into(), character: u(1), exponent: ev(&[2, 1, 1]), power: -1 },
                Factor { scalar: 1.into(), character: u(-1), exponent: ev(&[1, 1, 2]), power: -1 },
            ],
            12,
        )
        .unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.coefficient(&[0, 0, 0]), ring.one());
        assert_eq!(p.coefficient(&[2, 1, 1]), ring.monomial(u(1), 1.into()));
    }

    #[test]
    fn no_targets_gives_one() {
        let m = example_one().with_chosen(vec![]).unwrap();
        let p = divisorial_poincare(&m, 5).unwrap();
        assert_eq!(p, Series::one(m.ring().clone(), 0, 5));
    }

    #[test]
    fn restriction_and_augmentation() {
        let m = example_one();
        let p = divisorial_poincare(&m, 9).unwrap();
        let ring = m.ring();
        let triv = restrict_to_character(&p, &ring.trivial_exponent());
        assert_eq!(triv.coefficient(&[0, 0, 0]), BigInt::from(1));
        let u = restrict_to_character(&p, &ring.generator(0));
        assert_eq!(u.coefficient(&[0, 0, 0]), BigInt::zero());
        let mut sum = IntSeries::zero(Integers, 3, 9);
        for a in ring.characters() {
            sum = sum.try_add(&restrict_to_character(&p, &a)).unwrap();
        }
        assert_eq!(sum, p.map_coefficients(Integers, |c| c.augment()));
    }

    #[test]
    fn a2_extraction() {
        let m = example_one();
        let factors = stratum_factors(&m, m.strata(), m.chosen()).unwrap();
        let plan = plan_from_map(3, &[(1, 1, 3), (3, 2, 3)]).unwrap();
        assert_eq!(extraction_ratio(&factors, &plan).unwrap(), Ratio::from_integer(4));
        let got = extract_from_factors(m.ring(), 3, &factors, &plan, 12).unwrap();
        let z = CharacterRing::trivial();
        let one = z.trivial_exponent();
        let f = |m: &[u32], power| Factor { scalar: 1.into(), character: one.clone(), exponent: ev(m), power };
        let closed = product_of_factors(&z, 2, &[f(&[3, 3], 1), f(&[2, 1], -1), f(&[1, 2], -1), f(&[1, 1], -1)], 12)
            .unwrap()
            .map_coefficients(Integers, |c| c.augment());
        assert!(series_eq_upto(&got, &closed, 12).unwrap().is_equal());
    }

    #[test]
    fn plan_errors() {
        assert!(plan_from_map(3, &[(4, 1, 1)]).is_err());
        assert!(plan_from_map(3, &[(1, 1, 1), (1, 1, 1)]).is_err());
        assert!(plan_from_map(3, &[(1, 2, 1)]).is_err());
        assert!(plan_from_map(3, &[(1, 1, 0)]).is_err());
    }

    #[test]
    fn degenerate_extraction() {
        let m = example_one();
        let factors = stratum_factors(&m, m.strata(), m.chosen()).unwrap();
        let plan = plan_from_map(3, &[(2, 1, 1)]).unwrap();
        assert!(extraction_ratio(&factors, &plan).is_ok());
        let none = SubstitutionPlan::new(vec![VarAction::Drop; 3]).unwrap();
        assert!(matches!(
            extraction_ratio(&factors, &none),
            Err(EngineError::DegenerateExtraction { .. })
        ));
    }

    #[test]
    fn one_variable_cancellation() {
        let ring = CharacterRing::trivial();
        let t = DimensionTable::from_fn(1, 15, |v| u64::from(v[0] >= 0)).unwrap();
        let p = poincare_from_dimensions(&[(ring.trivial_exponent(), t)], &ring, 1, 15).unwrap();
        for k in 0..=15u32 {
            assert_eq!(p.coefficient(&[k]), ring.one());
        }
    }

    #[test]
    fn node_table_gives_one() {
        // d for two smooth transversal branches, read off from monomial counts
        let d = |v: &[i64]| -> u64 {
            match (v[0], v[1]) {
                (-1, -1) => 0,
                (a, -1) | (-1, a) => u64::from(a >= 0),
                (a, b) if a >= 1 && b >= 1 => 2,
                _ => 1,
            }
        };
        let ring = CharacterRing::trivial();
        let t = DimensionTable::from_fn(2, 10, d).unwrap();
        let p = poincare_from_dimensions(&[(ring.trivial_exponent(), t)], &ring, 2, 10).unwrap();
        assert_eq!(p, Series::one(ring, 2, 10));
    }

    #[test]
    fn region_and_clamping() {
        let mut count = 0;
        for_each_region_point(2, 2, |_| count += 1);
        // coordinates in {−1,0,1,2} with positive parts summing to at most 2
        assert_eq!(count, 13);
        let t = DimensionTable::from_fn(2, 2, |v| (v[0] + 2) as u64 * 10 + (v[1] + 2) as u64).unwrap();
        assert_eq!(t.get(&[-5, 1]), t.get(&[-1, 1]));
        assert_eq!(t.get(&[1, 1]), 33);
    }
}
