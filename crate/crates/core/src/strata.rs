//! Strata of the orbit space of the smooth part of the exceptional divisor.
//!
//! Strata are declared, not computed: each one lists the components carrying
//! the preimage points of one of its points (with repetition), its Euler
//! characteristic, the covering degree, and either its character directly or
//! the data of the corresponding point `p₀` on `E₀` to derive it from.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charring::{CharError, CharExponent, CharacterRing};
use crate::powerseries::ExponentVector;
use crate::resolution::{multiplicity_matrix, ComponentId, MultiplicityMatrix, ResolutionError, ResolutionGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratumError {
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("{context}: unknown component {id}")]
    UnknownComponent { context: String, id: ComponentId },
    #[error("stratum {stratum}: empty carrier")]
    EmptyCarrier { stratum: String },
    #[error("stratum {stratum}: degree {degree} differs from carrier size {carrier}")]
    DegreeMismatch {
        stratum: String,
        degree: u32,
        carrier: usize,
    },
    #[error("stratum {stratum}: degree {degree} is not divisible by the orbit size {p0_orbit_size} of p0")]
    OrbitSizeNotDividing {
        stratum: String,
        degree: u32,
        p0_orbit_size: u32,
    },
    #[error("stratum {stratum}: carrier entries {first} and {second} give different characters {first_char} and {second_char}")]
    InconsistentCarrier {
        stratum: String,
        first: ComponentId,
        second: ComponentId,
        first_char: CharExponent,
        second_char: CharExponent,
    },
    #[error("stratum {stratum}: given character {given} disagrees with derived {derived}")]
    CharacterDisagreement {
        stratum: String,
        given: CharExponent,
        derived: CharExponent,
    },
    #[error("stratum {stratum}: no character given and no derivation data")]
    MissingCharacter { stratum: String },
    #[error("stratum {stratum}: character {exponents} does not belong to a ring with {rank} cyclic factors")]
    ForeignCharacter {
        stratum: String,
        exponents: CharExponent,
        rank: usize,
    },
    #[error("unknown stratum {0}")]
    UnknownStratum(String),
    #[error("stratum {stratum}: removed point orbits have degree {removed}, but the stratum covers with degree {degree}")]
    RemovedDegree {
        stratum: String,
        removed: u32,
        degree: u32,
    },
}

/// Data of the point `p₀ ∈ E₀` used to derive a stratum's character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    /// Exponents of `u_{p₀}`.
    pub p0_char_exponents: CharExponent,
    /// `|Gp₀|`.
    pub p0_orbit_size: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub id: Option<String>,
    /// One entry per preimage point of a point of the stratum.
    pub carrier: Vec<ComponentId>,
    /// Euler characteristic of the stratum itself (not of its preimage).
    pub chi: i64,
    /// Covering degree `|Gp|`.
    pub degree: u32,
    pub char_exponents: Option<CharExponent>,
    pub derivation: Option<Derivation>,
    /// Points removed from the preimage by a curve; nonzero only after [`curve_strata`].
    pub removed_points: u64,
}

impl Stratum {
    pub fn new(carrier: Vec<ComponentId>, chi: i64) -> Self {
        Self {
            id: None,
            degree: carrier.len() as u32,
            carrier,
            chi,
            char_exponents: None,
            derivation: None,
            removed_points: 0,
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn with_character(mut self, c: CharExponent) -> Self {
        self.char_exponents = Some(c);
        self
    }

    pub fn with_derivation(mut self, p0_char_exponents: CharExponent, p0_orbit_size: u32) -> Self {
        self.derivation = Some(Derivation {
            p0_char_exponents,
            p0_orbit_size,
        });
        self
    }

    fn label(&self, index: usize) -> String {
        match &self.id {
            Some(id) => format!("{id:?}"),
            None => format!("#{index}"),
        }
    }
}

/// A component of a `G`-invariant curve, recorded by the component its strict transform meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub attach_component: ComponentId,
    #[serde(default = "one")]
    pub orbit_size: u32,
}

fn one() -> u32 {
    1
}

/// Reference to a stratum by position or by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StratumRef {
    Index(usize),
    Name(String),
}

impl fmt::Display for StratumRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumRef::Index(i) => write!(f, "#{i}"),
            StratumRef::Name(n) => write!(f, "{n:?}"),
        }
    }
}

/// `count` point orbits of a stratum that lie on the curve's strict transform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedPoints {
    pub stratum: StratumRef,
    pub count: u32,
    pub degree: u32,
}

/// Graph, character ring, strata and the chosen valuation components `E₁…E_s`.
#[derive(Debug, Clone)]
pub struct StratumModel {
    graph: ResolutionGraph,
    multiplicities: MultiplicityMatrix,
    ring: CharacterRing,
    strata: Vec<Stratum>,
    chosen: Vec<ComponentId>,
}

impl StratumModel {
    pub fn new(
        graph: ResolutionGraph,
        ring: CharacterRing,
        strata: Vec<Stratum>,
        chosen: Vec<ComponentId>,
    ) -> Result<Self, StratumError> {
        let multiplicities = multiplicity_matrix(&graph)?;
        for &c in &chosen {
            if !graph.contains(c) {
                return Err(StratumError::UnknownComponent {
                    context: "chosen components".into(),
                    id: c,
                });
            }
        }
        let model = Self {
            graph,
            multiplicities,
            ring,
            strata,
            chosen,
        };
        for (i, st) in model.strata.iter().enumerate() {
            model.check_stratum(i, st)?;
            model.resolved_character(i, st)?;
        }
        Ok(model)
    }

    pub fn graph(&self) -> &ResolutionGraph {
        &self.graph
    }

    pub fn multiplicities(&self) -> &MultiplicityMatrix {
        &self.multiplicities
    }

    pub fn ring(&self) -> &CharacterRing {
        &self.ring
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn chosen(&self) -> &[ComponentId] {
        &self.chosen
    }

    /// The same model with a different list of chosen components.
    pub fn with_chosen(&self, chosen: Vec<ComponentId>) -> Result<Self, StratumError> {
        Self::new(self.graph.clone(), self.ring.clone(), self.strata.clone(), chosen)
    }

    /// The same model with a different stratification.
    pub fn with_strata(&self, strata: Vec<Stratum>) -> Result<Self, StratumError> {
        Self::new(self.graph.clone(), self.ring.clone(), strata, self.chosen.clone())
    }

    fn check_stratum(&self, index: usize, st: &Stratum) -> Result<(), StratumError> {
        let label = st.label(index);
        if st.carrier.is_empty() {
            return Err(StratumError::EmptyCarrier { stratum: label });
        }
        if st.degree as usize != st.carrier.len() {
            return Err(StratumError::DegreeMismatch {
                stratum: label,
                degree: st.degree,
                carrier: st.carrier.len(),
            });
        }
        for &c in &st.carrier {
            if !self.graph.contains(c) {
                return Err(StratumError::UnknownComponent {
                    context: format!("stratum {label} carrier"),
                    id: c,
                });
            }
        }
        let rank = self.ring.rank();
        let given = st.char_exponents.iter();
        let p0 = st.derivation.iter().map(|d| &d.p0_char_exponents);
        for c in given.chain(p0) {
            if c.as_slice().len() != rank
                || c.as_slice().iter().zip(self.ring.orders()).any(|(&e, &m)| e >= m)
            {
                return Err(StratumError::ForeignCharacter {
                    stratum: label,
                    exponents: c.clone(),
                    rank,
                });
            }
        }
        Ok(())
    }

    /// The character `ℓ_Ξ`: given directly, derived, or both (then they must agree).
    /// Strata with `χ = 0` and no data get the trivial character.
    pub fn resolved_character(&self, index: usize, st: &Stratum) -> Result<CharExponent, StratumError> {
        let derived = match &st.derivation {
            Some(_) => Some(derive_character(self, index, st)?),
            None => None,
        };
        match (&st.char_exponents, derived) {
            (Some(given), Some(derived)) if *given != derived => Err(StratumError::CharacterDisagreement {
                stratum: st.label(index),
                given: given.clone(),
                derived,
            }),
            (Some(given), _) => Ok(given.clone()),
            (None, Some(derived)) => Ok(derived),
            (None, None) if st.chi == 0 => Ok(self.ring.trivial_exponent()),
            (None, None) => Err(StratumError::MissingCharacter {
                stratum: st.label(index),
            }),
        }
    }

    pub fn find_stratum(&self, r: &StratumRef) -> Result<usize, StratumError> {
        match r {
            StratumRef::Index(i) if *i < self.strata.len() => Ok(*i),
            StratumRef::Name(n) => self
                .strata
                .iter()
                .position(|s| s.id.as_deref() == Some(n.as_str()))
                .ok_or_else(|| StratumError::UnknownStratum(r.to_string())),
            _ => Err(StratumError::UnknownStratum(r.to_string())),
        }
    }
}

/// `m_{Ξ,i} = Σ_{p ∈ carrier} m_{σ(p), i}` for each target component `i`.
pub fn stratum_multiplicities(
    model: &StratumModel,
    st: &Stratum,
    targets: &[ComponentId],
) -> Result<ExponentVector, StratumError> {
    let mut out = vec![0u64; targets.len()];
    for &c in &st.carrier {
        let row = model.multiplicities.row_restricted(c, targets)?;
        for (acc, x) in out.iter_mut().zip(row) {
            *acc += x;
        }
    }
    Ok(ExponentVector::new(
        out.into_iter()
            .map(|x| u32::try_from(x).expect("multiplicity fits in u32"))
            .collect(),
    ))
}

fn derive_character(model: &StratumModel, index: usize, st: &Stratum) -> Result<CharExponent, StratumError> {
    let label = st.label(index);
    let d = st
        .derivation
        .as_ref()
        .ok_or_else(|| StratumError::MissingCharacter { stratum: label.clone() })?;
    if d.p0_orbit_size == 0 || st.degree % d.p0_orbit_size != 0 {
        return Err(StratumError::OrbitSizeNotDividing {
            stratum: label,
            degree: st.degree,
            p0_orbit_size: d.p0_orbit_size,
        });
    }
    let ratio = (st.degree / d.p0_orbit_size) as i64;
    let e0 = model.graph.e0();
    let mut result: Option<(ComponentId, CharExponent)> = None;
    for &c in &st.carrier {
        let m = model.multiplicities.get(c, e0)? as i64;
        let ch = model.ring.power(&d.p0_char_exponents, m * ratio);
        match &result {
            None => result = Some((c, ch)),
            Some((first, first_char)) if *first_char != ch => {
                return Err(StratumError::InconsistentCarrier {
                    stratum: label,
                    first: *first,
                    second: c,
                    first_char: first_char.clone(),
                    second_char: ch,
                })
            }
            Some(_) => {}
        }
    }
    result
        .map(|(_, ch)| ch)
        .ok_or(StratumError::EmptyCarrier { stratum: label })
}

/// `u_Ξ = u_{p₀}^{m_{σ(p),0}·|Gp|/|Gp₀|}`, checked to be independent of the carrier entry.
pub fn derive_stratum_character(model: &StratumModel, st: &Stratum) -> Result<CharExponent, StratumError> {
    derive_character(model, usize::MAX, st)
}

/// One declared `G`-orbit of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecl {
    pub components: Vec<ComponentId>,
    /// Points removed from each component's `CP¹`; defaults to the valence in the graph
    /// plus the curve points recorded on the strata.
    #[serde(default)]
    pub removed: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub subject: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }

    fn push(&mut self, subject: impl Into<String>, message: impl Into<String>) {
        self.findings.push(Finding {
            subject: subject.into(),
            message: message.into(),
        });
    }
}

/// Groups components that share a carrier; every other component is its own orbit.
pub fn default_orbits(model: &StratumModel, strata: &[Stratum]) -> Vec<OrbitDecl> {
    let ids = model.graph.ids();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for st in strata {
        let positions: Vec<usize> = st
            .carrier
            .iter()
            .filter_map(|&c| model.graph.position(c).ok())
            .collect();
        for w in positions.windows(2) {
            let (a, b) = (root(&mut parent, w[0]), root(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<ComponentId>> = BTreeMap::new();
    for (i, &id) in ids.iter().enumerate() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(id);
    }
    groups
        .into_values()
        .map(|components| OrbitDecl {
            components,
            removed: None,
        })
        .collect()
}

/// Euler-characteristic bookkeeping: per orbit, `Σ χ(Ξ)·deg(Ξ)` must equal
/// `Σ (2 − removed points)` over the orbit's components.
pub fn validate_strata(model: &StratumModel, strata: &[Stratum], orbits: &[OrbitDecl]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut orbit_of: BTreeMap<ComponentId, usize> = BTreeMap::new();
    for (k, o) in orbits.iter().enumerate() {
        for &c in &o.components {
            if !model.graph.contains(c) {
                report.push(format!("orbit {k}"), format!("unknown component {c}"));
            }
            if orbit_of.insert(c, k).is_some() {
                report.push(format!("orbit {k}"), format!("component {c} is declared in more than one orbit"));
            }
        }
        if let Some(r) = &o.removed {
            if r.len() != o.components.len() {
                report.push(
                    format!("orbit {k}"),
                    format!("{} removed counts for {} components", r.len(), o.components.len()),
                );
            }
        }
    }

    let mut lhs = vec![0i128; orbits.len()];
    let mut curve_points = vec![0i128; orbits.len()];
    for (i, st) in strata.iter().enumerate() {
        let label = st.label(i);
        if st.degree as usize != st.carrier.len() {
            report.push(
                format!("stratum {label}"),
                format!("degree {} differs from carrier size {}", st.degree, st.carrier.len()),
            );
        }
        let mut owners: Vec<usize> = st.carrier.iter().filter_map(|c| orbit_of.get(c).copied()).collect();
        owners.sort_unstable();
        owners.dedup();
        match owners.as_slice() {
            [k] if st.carrier.iter().all(|c| orbit_of.contains_key(c)) => {
                lhs[*k] += st.chi as i128 * st.degree as i128;
                curve_points[*k] += st.removed_points as i128;
            }
            _ => report.push(
                format!("stratum {label}"),
                "carrier does not lie in exactly one declared orbit".to_string(),
            ),
        }
    }

    for (k, o) in orbits.iter().enumerate() {
        let rhs: i128 = match &o.removed {
            Some(r) => r.iter().map(|&x| 2 - x as i128).sum(),
            None => {
                let mut total = -curve_points[k];
                for &c in &o.components {
                    if let Ok(v) = model.graph.valence(c) {
                        total += 2 - v as i128;
                    }
                }
                total
            }
        };
        if lhs[k] != rhs {
            let names: Vec<String> = o.components.iter().map(|c| c.to_string()).collect();
            report.push(
                format!("orbit {{{}}}", names.join(",")),
                format!("strata give sum chi*degree = {}, components give {}", lhs[k], rhs),
            );
        }
    }
    report
}

/// Strata adjusted for an invariant curve, with the branch attach components as targets.
#[derive(Debug, Clone)]
pub struct CurveStrata {
    pub strata: Vec<Stratum>,
    pub targets: Vec<ComponentId>,
}

/// Deletes the curve's point orbits from the strata they lie in.
///
/// Each removed orbit lowers `χ` of its stratum by one; characters are inherited.
/// Over-removal is not detected here; run [`validate_strata`] on the result.
pub fn curve_strata(
    model: &StratumModel,
    strata: &[Stratum],
    branches: &[Branch],
    removed: &[RemovedPoints],
) -> Result<CurveStrata, StratumError> {
    let mut targets = Vec::with_capacity(branches.len());
    for b in branches {
        if !model.graph.contains(b.attach_component) {
            return Err(StratumError::UnknownComponent {
                context: "curve branch".into(),
                id: b.attach_component,
            });
        }
        targets.push(b.attach_component);
    }
    let mut out: Vec<Stratum> = strata.to_vec();
    // Characters are frozen before χ changes so a stratum that drops to χ = 0
    // keeps the character it had.
    for (i, st) in out.iter_mut().enumerate() {
        if st.char_exponents.is_none() && st.chi != 0 {
            st.char_exponents = Some(model.resolved_character(i, &strata[i])?);
        }
    }
    for r in removed {
        let i = match &r.stratum {
            StratumRef::Index(i) if *i < out.len() => *i,
            StratumRef::Name(n) => out
                .iter()
                .position(|s| s.id.as_deref() == Some(n.as_str()))
                .ok_or_else(|| StratumError::UnknownStratum(r.stratum.to_string()))?,
            _ => return Err(StratumError::UnknownStratum(r.stratum.to_string())),
        };
        let st = &mut out[i];
        if r.degree != st.degree {
            return Err(StratumError::RemovedDegree {
                stratum: st.label(i),
                removed: r.degree,
                degree: st.degree,
            });
        }
        st.chi -= r.count as i64;
        st.removed_points += r.count as u64 * r.degree as u64;
    }
    Ok(CurveStrata { strata: out, targets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{ComponentSpec, GraphDescription};

    fn id(i: u32) -> ComponentId {
        ComponentId(i)
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
            Stratum::new(vec![id(1)], 1).with_id("x-axis").with_derivation(e(1), 1),
            Stratum::new(vec![id(3)], 1).with_id("y-axis").with_derivation(e(2), 1),
            Stratum::new(vec![id(1)], 0),
            Stratum::new(vec![id(2), id(2), id(2)], 0),
            Stratum::new(vec![id(3)], 0),
        ];
        StratumModel::new(graph, ring, strata, vec![id(1), id(2), id(3)]).unwrap()
    }

    #[test]
    fn multiplicities_of_example_one() {
        let m = example_one();
        let targets = m.chosen().to_vec();
        let x = stratum_multiplicities(&m, &m.strata()[0], &targets).unwrap();
        assert_eq!(x.components(), &[2, 1, 1]);
        let y = stratum_multiplicities(&m, &m.strata()[1], &targets).unwrap();
        assert_eq!(y.components(), &[1, 1, 2]);
        let mid = stratum_multiplicities(&m, &m.strata()[3], &targets).unwrap();
        assert_eq!(mid.components(), &[3, 3, 3]);
    }

    #[test]
    fn multiplicities_are_additive_in_the_carrier() {
        let m = example_one();
        let t = m.chosen().to_vec();
        let a = stratum_multiplicities(&m, &Stratum::new(vec![id(1)], 0), &t).unwrap();
        let b = stratum_multiplicities(&m, &Stratum::new(vec![id(3)], 0), &t).unwrap();
        let ab = stratum_multiplicities(&m, &Stratum::new(vec![id(1), id(3)], 0), &t).unwrap();
        assert_eq!(ab, a.add(&b));
    }

    #[test]
    fn derived_characters_of_example_one() {
        let m = example_one();
        let x = derive_stratum_character(&m, &m.strata()[0]).unwrap();
        assert_eq!(x.as_slice(), &[1]);
        let y = derive_stratum_character(&m, &m.strata()[1]).unwrap();
        assert_eq!(y.as_slice(), &[2]);
    }

    #[test]
    fn trivial_group_character_is_empty() {
        let graph = ResolutionGraph::build(&GraphDescription {
            components: vec![ComponentSpec {
                id: id(1),
                self_intersection: -1,
            }],
            edges: vec![],
            e0: id(1),
        })
        .unwrap();
        let ring = CharacterRing::trivial();
        let st = Stratum::new(vec![id(1)], 2).with_derivation(ring.trivial_exponent(), 1);
        let m = StratumModel::new(graph, ring, vec![st], vec![id(1)]).unwrap();
        let c = derive_stratum_character(&m, &m.strata()[0]).unwrap();
        assert!(c.as_slice().is_empty());
        let report = validate_strata(&m, m.strata(), &default_orbits(&m, m.strata()));
        assert!(report.is_ok(), "{report:?}");
    }

    #[test]
    fn derivation_errors() {
        let m = example_one();
        let ring = m.ring().clone();
        let bad = Stratum::new(vec![id(1), id(1), id(1)], 1).with_derivation(ring.exponent(&[1]).unwrap(), 2);
        assert!(matches!(
            derive_stratum_character(&m, &bad),
            Err(StratumError::OrbitSizeNotDividing { .. })
        ));
        // carrier entries with different m[σ, E0] disagree unless the power cancels
        let desc = GraphDescription {
            components: [(1, -1), (2, -2)]
                .iter()
                .map(|&(i, s)| ComponentSpec { id: id(i), self_intersection: s })
                .collect(),
            edges: vec![[id(1), id(2)]],
            e0: id(1),
        };
        let graph = ResolutionGraph::build(&desc).unwrap();
        let mm = crate::resolution::multiplicity_matrix(&graph).unwrap();
        assert_ne!(mm.get(id(1), id(1)).unwrap(), mm.get(id(2), id(1)).unwrap());
        let z5 = CharacterRing::new(&[5]).unwrap();
        let st = Stratum::new(vec![id(1), id(2)], 1).with_derivation(z5.exponent(&[1]).unwrap(), 1);
        let result = StratumModel::new(graph, z5, vec![st], vec![id(1)]);
        assert!(matches!(result, Err(StratumError::InconsistentCarrier { .. })));
    }

    #[test]
    fn given_and_derived_must_agree() {
        let m = example_one();
        let ring = m.ring().clone();
        let mut strata = m.strata().to_vec();
        strata[0].char_exponents = Some(ring.exponent(&[2]).unwrap());
        assert!(matches!(
            m.with_strata(strata),
            Err(StratumError::CharacterDisagreement { .. })
        ));
        let mut strata = m.strata().to_vec();
        strata[0].derivation = None;
        assert!(matches!(m.with_strata(strata), Err(StratumError::MissingCharacter { .. })));
    }

    #[test]
    fn euler_bookkeeping() {
        let m = example_one();
        let orbits = default_orbits(&m, m.strata());
        assert_eq!(orbits.len(), 3);
        assert!(validate_strata(&m, m.strata(), &orbits).is_ok());

        let mut strata = m.strata().to_vec();
        strata[0].chi = 2;
        let report = validate_strata(&m, &strata, &orbits);
        assert_eq!(report.findings.len(), 1);
        assert!(report.findings[0].subject.contains("E1"));

        let explicit = vec![
            OrbitDecl { components: vec![id(1)], removed: Some(vec![1]) },
            OrbitDecl { components: vec![id(2)], removed: Some(vec![2]) },
            OrbitDecl { components: vec![id(3)], removed: Some(vec![1]) },
        ];
        assert!(validate_strata(&m, m.strata(), &explicit).is_ok());
    }

    #[test]
    fn curve_removes_point_orbits() {
        let m = example_one();
        let branches = [Branch { attach_component: id(3), orbit_size: 1 }];
        let removed = [RemovedPoints { stratum: StratumRef::Name("y-axis".into()), count: 1, degree: 1 }];
        let cs = curve_strata(&m, m.strata(), &branches, &removed).unwrap();
        assert_eq!(cs.targets, vec![id(3)]);
        assert_eq!(cs.strata[1].chi, 0);
        assert_eq!(cs.strata[0].chi, 1);
        let mx = stratum_multiplicities(&m, &cs.strata[0], &cs.targets).unwrap();
        assert_eq!(mx.components(), &[1]);
        let report = validate_strata(&m, &cs.strata, &default_orbits(&m, &cs.strata));
        assert!(report.is_ok(), "{report:?}");

        let none = curve_strata(&m, m.strata(), &branches, &[]).unwrap();
        assert_eq!(none.strata, {
            let mut s = m.strata().to_vec();
            for (i, st) in s.iter_mut().enumerate() {
                if st.chi != 0 {
                    st.char_exponents = Some(m.resolved_character(i, &m.strata()[i]).unwrap());
                }
            }
            s
        });

        let unknown = [RemovedPoints { stratum: StratumRef::Index(42), count: 1, degree: 1 }];
        assert!(matches!(
            curve_strata(&m, m.strata(), &branches, &unknown),
            Err(StratumError::UnknownStratum(_))
        ));
    }
}
