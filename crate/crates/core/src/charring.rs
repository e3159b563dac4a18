//! The ring R₁(G) of one-dimensional characters of a finite group.
//!
//! The group itself never appears. Its abelianization is presented as a
//! direct sum of cyclic groups `Z/m₁ ⊕ … ⊕ Z/m_q`, and the character ring is
//! `Z[u₁,…,u_q]/(u_j^{m_j} − 1)`. A basis monomial `∏ u_j^{ℓ_j}` is stored
//! as its exponent tuple, always reduced into `0 ≤ ℓ_j < m_j`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("cyclic factor {index} has order {order}; orders must be positive")]
    NonPositiveOrder { index: usize, order: i64 },
    #[error("character exponent {exponents:?} has length {got}, ring has {expected} cyclic factors")]
    LengthMismatch {
        exponents: Vec<i64>,
        got: usize,
        expected: usize,
    },
    #[error("elements belong to different character rings ({left:?} vs {right:?})")]
    RingMismatch { left: Vec<u32>, right: Vec<u32> },
}

/// Presentation of R₁(G) by the orders of the cyclic factors of G/(G,G).
///
/// Cloning is cheap; the orders are shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharacterRing {
    orders: Arc<[u32]>,
}

impl fmt::Debug for CharacterRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CharacterRing{:?}", &*self.orders)
    }
}

impl CharacterRing {
    pub fn new(orders: &[i64]) -> Result<Self, CharError> {
        let mut checked = Vec::with_capacity(orders.len());
        for (index, &order) in orders.iter().enumerate() {
            if order < 1 || order > u32::MAX as i64 {
                return Err(CharError::NonPositiveOrder { index, order });
            }
            checked.push(order as u32);
        }
        Ok(Self {
            orders: checked.into(),
        })
    }

    /// The ring of the trivial group, i.e. `Z`.
    pub fn trivial() -> Self {
        Self {
            orders: Arc::from(Vec::new()),
        }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number of cyclic factors `q`.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Number of distinct characters, `∏ m_j`.
    pub fn group_order(&self) -> u64 {
        self.orders.iter().map(|&m| m as u64).product()
    }

    /// Reduces an arbitrary integer tuple into canonical form.
    pub fn exponent(&self, raw: &[i64]) -> Result<CharExponent, CharError> {
        if raw.len() != self.rank() {
            return Err(CharError::LengthMismatch {
                exponents: raw.to_vec(),
                got: raw.len(),
                expected: self.rank(),
            });
        }
        Ok(CharExponent(
            raw.iter()
                .zip(self.orders.iter())
                .map(|(&e, &m)| e.rem_euclid(m as i64) as u32)
                .collect(),
        ))
    }

    pub fn trivial_exponent(&self) -> CharExponent {
        CharExponent(vec![0; self.rank()])
    }

    /// The generator `u_j` as an exponent tuple.
    pub fn generator(&self, j: usize) -> CharExponent {
        let mut e = vec![0i64; self.rank()];
        e[j] = 1;
        self.exponent(&e).expect("length matches rank")
    }

    /// All basis characters, in lexicographic order of exponents.
    pub fn characters(&self) -> Vec<CharExponent> {
        let mut out = vec![CharExponent(Vec::new())];
        for &m in self.orders.iter() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |l| {
                        let mut e = prefix.0.clone();
                        e.push(l);
                        CharExponent(e)
                    })
                })
                .collect();
        }
        out
    }

    /// Product of two basis monomials.
    pub fn combine(&self, a: &CharExponent, b: &CharExponent) -> CharExponent {
        debug_assert_eq!(a.0.len(), self.rank());
        debug_assert_eq!(b.0.len(), self.rank());
        CharExponent(
            a.0.iter()
                .zip(&b.0)
                .zip(self.orders.iter())
                .map(|((&x, &y), &m)| ((x as u64 + y as u64) % m as u64) as u32)
                .collect(),
        )
    }

    /// `a^k` for an integer `k`, negative powers included.
    pub fn power(&self, a: &CharExponent, k: i64) -> CharExponent {
        CharExponent(
            a.0.iter()
                .zip(self.orders.iter())
                .map(|(&x, &m)| {
                    let m = m as i128;
                    ((x as i128 * k as i128).rem_euclid(m)) as u32
                })
                .collect(),
        )
    }

    /// Inverse of a basis monomial: its `(m_j − 1)`-th power per coordinate.
    pub fn inverse(&self, a: &CharExponent) -> CharExponent {
        self.power(a, -1)
    }

    pub fn zero(&self) -> CharElement {
        CharElement {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> CharElement {
        self.monomial(self.trivial_exponent(), BigInt::one())
    }

    pub fn integer(&self, n: impl Into<BigInt>) -> CharElement {
        self.monomial(self.trivial_exponent(), n.into())
    }

    pub fn monomial(&self, exponent: CharExponent, coefficient: BigInt) -> CharElement {
        let mut el = self.zero();
        el.add_term(exponent, coefficient);
        el
    }

    /// Builds an element from `(raw exponents, coefficient)` pairs, reducing and merging.
    pub fn element<I, C>(&self, terms: I) -> Result<CharElement, CharError>
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<BigInt>,
    {
        let mut el = self.zero();
        for (raw, c) in terms {
            let e = self.exponent(&raw)?;
            el.add_term(e, c.into());
        }
        Ok(el)
    }
}

/// Exponent tuple of a basis character, canonically reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct CharExponent(Vec<u32>);

impl CharExponent {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }
}

impl fmt::Display for CharExponent {
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

/// An element `Σ n_α α` of R₁(G). Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharElement {
    ring: CharacterRing,
    terms: BTreeMap<CharExponent, BigInt>,
}

impl CharElement {
    pub fn ring(&self) -> &CharacterRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CharExponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: &CharExponent) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    /// Coefficient of the trivial character.
    pub fn trivial_part(&self) -> BigInt {
        self.coefficient(&self.ring.trivial_exponent())
    }

    /// Sum of all coefficients: the ring map to `Z` sending every `u_j` to 1.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn add_term(&mut self, exponent: CharExponent, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), CharError> {
        if self.ring != other.ring {
            return Err(CharError::RingMismatch {
                left: self.ring.orders().to_vec(),
                right: other.ring.orders().to_vec(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CharError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CharError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = self.ring.zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(self.ring.combine(ea, eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = self.ring.zero();
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        out
    }
}

impl fmt::Display for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*u^{e}")?;
        }
        Ok(())
    }
}

// Operator forms panic on a ring mismatch; use `try_add`/`try_mul` to get an error.
impl Add for &CharElement {
    type Output = CharElement;
    fn add(self, rhs: &CharElement) -> CharElement {
        self.try_add(rhs).expect("character ring mismatch")
    }
}

impl Sub for &CharElement {
    type Output = CharElement;
    fn sub(self, rhs: &CharElement) -> CharElement {
        self.try_add(&-rhs).expect("character ring mismatch")
    }
}

impl Mul for &CharElement {
    type Output = CharElement;
    fn mul(self, rhs: &CharElement) -> CharElement {
        self.try_mul(rhs).expect("character ring mismatch")
    }
}

impl Neg for &CharElement {
    type Output = CharElement;
    fn neg(self) -> CharElement {
        self.scale(&BigInt::from(-1))
    }
}

/// `a · b` with a ring check.
pub fn char_mul(a: &CharElement, b: &CharElement) -> Result<CharElement, CharError> {
    a.try_mul(b)
}
