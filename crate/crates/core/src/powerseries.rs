//! Truncated multivariate power series over `Z` or over a character ring.
//!
//! Truncation is by total degree: a series with bound `N` knows every
//! coefficient at exponents `v ≥ 0` with `v₁ + … + v_s ≤ N` and nothing
//! above. Terms are kept sparse, keyed by exponent vector in graded-lex
//! order, so iteration order is also the canonical rendering order.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charring::{CharElement, CharError, CharacterRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series have {left} and {right} variables")]
    VariableCount { left: usize, right: usize },
    #[error("coefficient rings differ: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("exponent {exponent:?} has length {got}, series has {expected} variables")]
    ExponentLength {
        exponent: Vec<u32>,
        got: usize,
        expected: usize,
    },
    #[error("(1 - c·t^0)^{power} has a non-unit constant term")]
    ZeroExponent { power: i64 },
    #[error("comparison up to degree {requested} exceeds the known bound {available}")]
    BoundExceeded { requested: u32, available: u32 },
    #[error("term t^{exponent:?}: exponent {value} of variable {variable} is not divisible by {denominator}")]
    NotDivisible {
        exponent: Vec<u32>,
        variable: usize,
        value: u32,
        denominator: u32,
    },
    #[error("substitution plan: {0}")]
    Plan(String),
    #[error("malformed series record: {0}")]
    Malformed(String),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// A commutative coefficient ring for [`Series`].
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem;

    /// Orders of the character group; empty for `Z`.
    fn orders(&self) -> Vec<u32>;
    /// Coordinates in the character basis, trivial character first.
    fn decompose(&self, a: &Self::Elem) -> Vec<(Vec<u32>, BigInt)>;
    fn compose(&self, terms: &[(Vec<i64>, BigInt)]) -> Result<Self::Elem, SeriesError>;
}

/// The integers, for series whose characters have been projected away.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn scale(&self, a: &BigInt, k: &BigInt) -> BigInt {
        a * k
    }
    fn orders(&self) -> Vec<u32> {
        Vec::new()
    }
    fn decompose(&self, a: &BigInt) -> Vec<(Vec<u32>, BigInt)> {
        if a.is_zero() {
            Vec::new()
        } else {
            vec![(Vec::new(), a.clone())]
        }
    }
    fn compose(&self, terms: &[(Vec<i64>, BigInt)]) -> Result<BigInt, SeriesError> {
        let mut sum = BigInt::zero();
        for (e, c) in terms {
            if !e.is_empty() {
                return Err(SeriesError::Malformed(format!(
                    "integer coefficient carries a character {e:?}"
                )));
            }
            sum += c;
        }
        Ok(sum)
    }
}

impl CoeffRing for CharacterRing {
    type Elem = CharElement;

    fn zero(&self) -> CharElement {
        CharacterRing::zero(self)
    }
    fn one(&self) -> CharElement {
        CharacterRing::one(self)
    }
    fn is_zero(&self, a: &CharElement) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, a: &mut CharElement, b: &CharElement) {
        a.add_assign_unchecked(b);
    }
    fn mul(&self, a: &CharElement, b: &CharElement) -> CharElement {
        a.mul_unchecked(b)
    }
    fn scale(&self, a: &CharElement, k: &BigInt) -> CharElement {
        a.scale(k)
    }
    fn orders(&self) -> Vec<u32> {
        CharacterRing::orders(self).to_vec()
    }
    fn decompose(&self, a: &CharElement) -> Vec<(Vec<u32>, BigInt)> {
        a.terms()
            .map(|(e, c)| (e.as_slice().to_vec(), c.clone()))
            .collect()
    }
    fn compose(&self, terms: &[(Vec<i64>, BigInt)]) -> Result<CharElement, SeriesError> {
        Ok(self.element(terms.iter().cloned())?)
    }
}

/// Exponent vector `v` of a monomial `t^v`, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(components: Vec<u32>) -> Self {
        Self(components)
    }

    pub fn zero(num_vars: usize) -> Self {
        Self(vec![0; num_vars])
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: u32) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A power series in `num_vars` variables known up to total degree `bound`.
#[derive(Clone, Debug)]
pub struct Series<R: CoeffRing> {
    ring: R,
    num_vars: usize,
    bound: u32,
    terms: BTreeMap<ExponentVector, R::Elem>,
}

pub type IntSeries = Series<Integers>;
pub type CharSeries = Series<CharacterRing>;

impl<R: CoeffRing> PartialEq for Series<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.num_vars == other.num_vars
            && self.bound == other.bound
            && self.terms == other.terms
    }
}

impl<R: CoeffRing> Series<R> {
    pub fn zero(ring: R, num_vars: usize, bound: u32) -> Self {
        Self {
            ring,
            num_vars,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: R, num_vars: usize, bound: u32) -> Self {
        let c = ring.one();
        let mut s = Self::zero(ring, num_vars, bound);
        s.terms.insert(ExponentVector::zero(num_vars), c);
        s
    }

    pub fn from_terms<I>(ring: R, num_vars: usize, bound: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (ExponentVector, R::Elem)>,
    {
        let mut s = Self::zero(ring, num_vars, bound);
        for (e, c) in terms {
            s.add_term(e, &c)?;
        }
        Ok(s)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> R::Elem {
        self.terms
            .get(&ExponentVector(exponent.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `c·t^e`; terms above the bound are discarded.
    pub fn add_term(&mut self, exponent: ExponentVector, c: &R::Elem) -> Result<(), SeriesError> {
        if exponent.len() != self.num_vars {
            return Err(SeriesError::ExponentLength {
                got: exponent.len(),
                expected: self.num_vars,
                exponent: exponent.0,
            });
        }
        if exponent.total_degree() > self.bound as u64 {
            return Ok(());
        }
        self.add_term_unchecked(exponent, c);
        Ok(())
    }

    fn add_term_unchecked(&mut self, exponent: ExponentVector, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                self.ring.add_assign(slot.get_mut(), c);
                if self.ring.is_zero(slot.get()) {
                    slot.remove();
                }
            }
        }
    }

    /// Restricts to a smaller bound.
    pub fn truncate(&self, bound: u32) -> Self {
        let bound = bound.min(self.bound);
        Self {
            ring: self.ring.clone(),
            num_vars: self.num_vars,
            bound,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() <= bound as u64)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.num_vars != other.num_vars {
            return Err(SeriesError::VariableCount {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        if self.ring != other.ring {
            return Err(SeriesError::RingMismatch {
                left: format!("{:?}", self.ring),
                right: format!("{:?}", other.ring),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.truncate(other.bound);
        for (e, c) in &other.terms {
            if e.total_degree() <= out.bound as u64 {
                out.add_term_unchecked(e.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.num_vars, self.bound);
        for (e, c) in &self.terms {
            out.add_term_unchecked(e.clone(), &self.ring.scale(c, k));
        }
        out
    }

    /// Applies `f` to every coefficient, landing in another ring.
    pub fn map_coefficients<S: CoeffRing>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Series<S> {
        let mut out = Series::zero(ring, self.num_vars, self.bound);
        for (e, c) in &self.terms {
            let mapped = f(c);
            out.add_term_unchecked(e.clone(), &mapped);
        }
        out
    }

    /// Canonical text: one `coeff * u^(..) * t^(..)` line per character term.
    pub fn render_text(&self) -> String {
        let mut lines = Vec::new();
        for (e, c) in &self.terms {
            for (chi, coeff) in self.ring.decompose(c) {
                lines.push(format!("{} * u^{} * t^{}", coeff, tuple(&chi), e));
            }
        }
        if lines.is_empty() {
            "0".to_string()
        } else {
            lines.join("\n")
        }
    }

    pub fn to_machine(&self) -> MachineSeries {
        MachineSeries {
            num_vars: self.num_vars,
            bound: self.bound,
            orders: self.ring.orders(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| MachineTerm {
                    exponent: e.0.clone(),
                    char_terms: self
                        .ring
                        .decompose(c)
                        .into_iter()
                        .map(|(exponents, coefficient)| MachineCharTerm {
                            exponents: exponents.into_iter().map(i64::from).collect(),
                            coefficient,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds a series from its machine-readable form over `ring`.
    pub fn from_machine(ring: R, m: &MachineSeries) -> Result<Self, SeriesError> {
        if ring.orders() != m.orders {
            return Err(SeriesError::Malformed(format!(
                "record declares character orders {:?}, expected {:?}",
                m.orders,
                ring.orders()
            )));
        }
        let mut s = Self::zero(ring, m.num_vars, m.bound);
        for term in &m.terms {
            let parts: Vec<(Vec<i64>, BigInt)> = term
                .char_terms
                .iter()
                .map(|ct| (ct.exponents.clone(), ct.coefficient.clone()))
                .collect();
            let c = s.ring.compose(&parts)?;
            let e = ExponentVector(term.exponent.clone());
            if e.total_degree() > m.bound as u64 {
                return Err(SeriesError::Malformed(format!(
                    "term t^{e} lies above the declared bound {}",
                    m.bound
                )));
            }
            s.add_term(e, &c)?;
        }
        Ok(s)
    }
}

fn tuple(v: &[u32]) -> String {
    ExponentVector(v.to_vec()).to_string()
}

impl<R: CoeffRing> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

/// Machine-readable series: a list of `{exponent, char_terms}` records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineSeries {
    pub num_vars: usize,
    pub bound: u32,
    pub orders: Vec<u32>,
    pub terms: Vec<MachineTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineTerm {
    pub exponent: Vec<u32>,
    pub char_terms: Vec<MachineCharTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineCharTerm {
    pub exponents: Vec<i64>,
    #[serde(with = "crate::bigint_json")]
    pub coefficient: BigInt,
}

/// Product truncated at the smaller of the two bounds.
pub fn series_mul<R: CoeffRing>(a: &Series<R>, b: &Series<R>) -> Result<Series<R>, SeriesError> {
    a.check_compatible(b)?;
    let bound = a.bound.min(b.bound);
    let mut out = Series::zero(a.ring.clone(), a.num_vars, bound);
    for (ea, ca) in &a.terms {
        let da = ea.total_degree();
        if da > bound as u64 {
            // graded-lex order: everything after is higher degree
            break;
        }
        for (eb, cb) in &b.terms {
            if da + eb.total_degree() > bound as u64 {
                break;
            }
            out.add_term_unchecked(ea.add(eb), &a.ring.mul(ca, cb));
        }
    }
    Ok(out)
}

/// Product of many series; the result does not depend on the order.
pub fn series_product<'a, R: CoeffRing + 'a>(
    ring: R,
    num_vars: usize,
    bound: u32,
    factors: impl IntoIterator<Item = &'a Series<R>>,
) -> Result<Series<R>, SeriesError> {
    let mut acc = Series::one(ring, num_vars, bound);
    for f in factors {
        acc = series_mul(&acc, f)?;
    }
    Ok(acc)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Expansion of `(1 − c·t^m)^e` truncated at total degree `bound`.
///
/// For `e ≥ 0` this is the binomial polynomial; for `e < 0` the series
/// `Σ_k C(k+|e|−1, k) c^k t^{km}`.
pub fn factor_power<R: CoeffRing>(
    ring: &R,
    c: &R::Elem,
    m: &ExponentVector,
    e: i64,
    bound: u32,
) -> Result<Series<R>, SeriesError> {
    let s = m.len();
    let mut out = Series::one(ring.clone(), s, bound);
    if e == 0 {
        return Ok(out);
    }
    if m.is_zero() {
        return Err(SeriesError::ZeroExponent { power: e });
    }
    let step = m.total_degree();
    let max_k = bound as u64 / step;
    let max_k = if e > 0 { max_k.min(e as u64) } else { max_k };
    let neg_c = ring.scale(c, &BigInt::from(-1));
    let base = if e > 0 { &neg_c } else { c };
    let mut power = ring.one();
    for k in 1..=max_k {
        power = ring.mul(&power, base);
        let coeff = if e > 0 {
            binomial(e as u64, k)
        } else {
            binomial(k + e.unsigned_abs() - 1, k)
        };
        let exponent = m.scaled(k as u32);
        out.add_term_unchecked(exponent, &ring.scale(&power, &coeff));
    }
    Ok(out)
}

/// What happens to one input variable under a [`SubstitutionPlan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarAction {
    /// Set the variable to 1.
    Drop,
    /// `t_i = T_target^{1/denominator}`.
    Map { target: usize, denominator: u32 },
}

/// Monomial substitution `t_i ↦ T_j^{1/n_i}` or `t_i ↦ 1`.
///
/// The output bound is `floor(N / r)` where `r` is at least the largest
/// denominator. When variables are dropped, completeness of the output also
/// needs `r ≥ |v| / Σ_{kept} v_i/n_i` over every monomial that can occur in
/// the full (untruncated) input; callers that know the support supply it
/// through [`SubstitutionPlan::with_degree_ratio`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionPlan {
    actions: Vec<VarAction>,
    output_vars: usize,
    degree_ratio: Option<Ratio<u64>>,
}

impl SubstitutionPlan {
    pub fn new(actions: Vec<VarAction>) -> Result<Self, SeriesError> {
        let mut hit = Vec::new();
        for (i, a) in actions.iter().enumerate() {
            if let VarAction::Map { target, denominator } = *a {
                if denominator == 0 {
                    return Err(SeriesError::Plan(format!(
                        "variable {} has denominator 0",
                        i + 1
                    )));
                }
                if hit.len() <= target {
                    hit.resize(target + 1, false);
                }
                hit[target] = true;
            }
        }
        if let Some(j) = hit.iter().position(|&h| !h) {
            return Err(SeriesError::Plan(format!(
                "output variable {} is not the target of any input variable",
                j + 1
            )));
        }
        Ok(Self {
            output_vars: hit.len(),
            actions,
            degree_ratio: None,
        })
    }

    pub fn identity(num_vars: usize) -> Self {
        Self::new(
            (0..num_vars)
                .map(|target| VarAction::Map {
                    target,
                    denominator: 1,
                })
                .collect(),
        )
        .expect("identity plan is valid")
    }

    pub fn with_degree_ratio(mut self, ratio: Ratio<u64>) -> Self {
        self.degree_ratio = Some(ratio);
        self
    }

    pub fn actions(&self) -> &[VarAction] {
        &self.actions
    }

    pub fn input_vars(&self) -> usize {
        self.actions.len()
    }

    pub fn output_vars(&self) -> usize {
        self.output_vars
    }

    pub fn drops_variables(&self) -> bool {
        self.actions.iter().any(|a| *a == VarAction::Drop)
    }

    pub fn max_denominator(&self) -> u32 {
        self.actions
            .iter()
            .filter_map(|a| match a {
                VarAction::Map { denominator, .. } => Some(*denominator),
                VarAction::Drop => None,
            })
            .max()
            .unwrap_or(1)
    }

    /// `Σ_{kept} v_i / n_i`, the total degree of the image of `t^v`.
    pub fn weighted_degree(&self, v: &ExponentVector) -> Ratio<u64> {
        let mut acc = Ratio::zero();
        for (a, &x) in self.actions.iter().zip(v.components()) {
            if let VarAction::Map { denominator, .. } = a {
                acc += Ratio::new(x as u64, *denominator as u64);
            }
        }
        acc
    }

    pub fn effective_ratio(&self) -> Ratio<u64> {
        let den = Ratio::from_integer(self.max_denominator() as u64);
        match self.degree_ratio {
            Some(r) if r > den => r,
            _ => den,
        }
    }

    /// Guaranteed-complete output bound for an input known up to `bound`.
    pub fn output_bound(&self, bound: u32) -> u32 {
        let r = self.effective_ratio();
        (Ratio::from_integer(bound as u64) / r).floor().to_integer() as u32
    }
}

/// Applies a monomial substitution, merging terms that collide.
pub fn substitute_and_rescale<R: CoeffRing>(
    a: &Series<R>,
    plan: &SubstitutionPlan,
) -> Result<Series<R>, SeriesError> {
    if plan.input_vars() != a.num_vars {
        return Err(SeriesError::Plan(format!(
            "plan covers {} variables, series has {}",
            plan.input_vars(),
            a.num_vars
        )));
    }
    let out_bound = plan.output_bound(a.bound);
    let mut out = Series::zero(a.ring.clone(), plan.output_vars, out_bound);
    for (e, c) in &a.terms {
        let mut image = vec![0u32; plan.output_vars];
        for (i, (action, &x)) in plan.actions.iter().zip(e.components()).enumerate() {
            if let VarAction::Map { target, denominator } = *action {
                if x % denominator != 0 {
                    return Err(SeriesError::NotDivisible {
                        exponent: e.0.clone(),
                        variable: i + 1,
                        value: x,
                        denominator,
                    });
                }
                image[target] += x / denominator;
            }
        }
        let image = ExponentVector(image);
        if image.total_degree() <= out_bound as u64 {
            out.add_term_unchecked(image, c);
        }
    }
    Ok(out)
}

/// Outcome of [`series_eq_upto`].
#[derive(Debug, Clone, PartialEq)]
pub enum Comparison<E> {
    Equal,
    Differs {
        exponent: ExponentVector,
        left: E,
        right: E,
    },
}

impl<E> Comparison<E> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

/// Compares all coefficients of total degree `≤ n`; reports the smallest
/// differing exponent in graded-lex order.
pub fn series_eq_upto<R: CoeffRing>(
    a: &Series<R>,
    b: &Series<R>,
    n: u32,
) -> Result<Comparison<R::Elem>, SeriesError> {
    a.check_compatible(b)?;
    let available = a.bound.min(b.bound);
    if n > available {
        return Err(SeriesError::BoundExceeded {
            requested: n,
            available,
        });
    }
    let mut keys: Vec<&ExponentVector> = a
        .terms
        .keys()
        .chain(b.terms.keys())
        .filter(|e| e.total_degree() <= n as u64)
        .collect();
    keys.sort();
    keys.dedup();
    for e in keys {
        let left = a.coefficient(e.components());
        let right = b.coefficient(e.components());
        if left != right {
            return Ok(Comparison::Differs {
                exponent: e.clone(),
                left,
                right,
            });
        }
    }
    Ok(Comparison::Equal)
}

/// Ceiling of `bound · ratio`, the input bound needed for a given output bound.
pub fn required_input_bound(output_bound: u32, ratio: Ratio<u64>) -> u32 {
    (Ratio::from_integer(output_bound as u64) * ratio)
        .ceil()
        .to_integer()
        .to_u32()
        .unwrap_or(u32::MAX)
}
