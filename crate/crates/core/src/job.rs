//! Job files: one JSON document describing a model and what to do with it.

use std::fmt;

use num_bigint::BigInt;
use serde::Deserialize;
use thiserror::Error;

use crate::charring::{CharExponent, CharacterRing};
use crate::engine::{plan_from_map, product_of_factors, Factor};
use crate::oracle::{Axis, MonomialModel};
use crate::powerseries::{CharSeries, ExponentVector, IntSeries, Integers, MachineSeries, Series, SubstitutionPlan};
use crate::resolution::{ComponentId, GraphDescription, ResolutionGraph};
use crate::strata::{curve_strata, Branch, CurveStrata, OrbitDecl, RemovedPoints, Stratum, StratumModel};

/// A parse or validation failure, tagged with where in the job it happened.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct JobError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

fn err(location: impl Into<String>, message: impl fmt::Display) -> JobError {
    JobError {
        location: location.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub ring: Vec<i64>,
    pub graph: GraphDescription,
    pub chosen: Vec<ComponentId>,
    #[serde(default)]
    pub strata: Vec<StratumSpec>,
    #[serde(default)]
    pub orbits: Option<Vec<OrbitDecl>>,
    #[serde(default)]
    pub curve: Option<CurveSpec>,
    #[serde(default)]
    pub extraction: Option<ExtractionSpec>,
    #[serde(default)]
    pub oracle: Option<OracleSpec>,
    #[serde(default)]
    pub expected: Vec<ExpectedSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSpec {
    #[serde(default)]
    pub id: Option<String>,
    pub carrier: Vec<ComponentId>,
    pub chi: i64,
    /// Defaults to the carrier size.
    #[serde(default)]
    pub degree: Option<u32>,
    #[serde(default)]
    pub char_exponents: Option<Vec<i64>>,
    #[serde(default)]
    pub derivation: Option<DerivationSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    pub p0_char_exponents: Vec<i64>,
    pub p0_orbit_size: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub branches: Vec<Branch>,
    #[serde(default)]
    pub removed_points: Vec<RemovedPoints>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtractionSpec {
    pub map: Vec<MapEntry>,
}

/// `t_source = T_target^{1/denominator}`, variables numbered from 1.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub source: usize,
    pub target: usize,
    #[serde(default = "one")]
    pub denominator: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub order: u32,
    pub weights: [i64; 2],
    #[serde(default)]
    pub sigma_x: Option<ComponentId>,
    #[serde(default)]
    pub sigma_y: Option<ComponentId>,
    #[serde(default)]
    pub curve_axes: Option<Vec<Axis>>,
    /// Largest degree the oracle is asked for; the command degree is capped by it.
    #[serde(default, rename = "box")]
    pub max_degree: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Divisorial,
    Curve,
    Extract,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Divisorial => "divisorial",
            Target::Curve => "curve",
            Target::Extract => "extract",
        })
    }
}

/// An expected series, as closed-form factors or as explicit terms.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedSpec {
    pub target: Target,
    #[serde(default)]
    pub factors: Option<Vec<FactorSpec>>,
    #[serde(default)]
    pub series: Option<MachineSeries>,
}

/// `(1 − scalar · u^character · t^exponent)^power`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    #[serde(default = "one_i64")]
    pub scalar: i64,
    #[serde(default)]
    pub character: Option<Vec<i64>>,
    pub exponent: Vec<u32>,
    pub power: i64,
}

fn one_i64() -> i64 {
    1
}

/// The filtration an oracle section describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Divisorial,
    Curve,
}

/// A parsed and cross-validated job.
#[derive(Debug, Clone)]
pub struct Job {
    pub spec: JobSpec,
    pub model: StratumModel,
}

impl Job {
    pub fn from_json(text: &str) -> Result<Self, JobError> {
        let spec: JobSpec = serde_json::from_str(text)
            .map_err(|e| err(format!("line {} column {}", e.line(), e.column()), e))?;
        Self::from_spec(spec)
    }

    pub fn from_spec(spec: JobSpec) -> Result<Self, JobError> {
        let ring = CharacterRing::new(&spec.ring).map_err(|e| err("ring", e))?;
        let graph = ResolutionGraph::build(&spec.graph).map_err(|e| err("graph", e))?;
        let mut strata = Vec::with_capacity(spec.strata.len());
        for (i, s) in spec.strata.iter().enumerate() {
            strata.push(stratum_from_spec(&ring, s).map_err(|e| err(format!("strata[{i}]"), e))?);
        }
        for (i, &c) in spec.chosen.iter().enumerate() {
            if !graph.contains(c) {
                return Err(err(format!("chosen[{i}]"), format!("unknown component {c}")));
            }
        }
        let model = StratumModel::new(graph, ring, strata, spec.chosen.clone()).map_err(|e| err("model", e))?;
        let job = Self { spec, model };
        job.check_sections()?;
        Ok(job)
    }

    fn check_sections(&self) -> Result<(), JobError> {
        if let Some(curve) = &self.spec.curve {
            for (i, b) in curve.branches.iter().enumerate() {
                if !self.model.graph().contains(b.attach_component) {
                    return Err(err(
                        format!("curve.branches[{i}]"),
                        format!("unknown component {}", b.attach_component),
                    ));
                }
            }
            for (i, r) in curve.removed_points.iter().enumerate() {
                self.model
                    .find_stratum(&r.stratum)
                    .map_err(|e| err(format!("curve.removed_points[{i}]"), e))?;
            }
        }
        if self.spec.extraction.is_some() {
            self.extraction_plan()?;
        }
        if let Some(o) = &self.spec.oracle {
            let ring = self.model.ring();
            let rank_ok = if o.order == 1 {
                ring.rank() == 0 || ring.orders() == [1]
            } else {
                ring.orders() == [o.order]
            };
            if !rank_ok {
                return Err(err(
                    "oracle.order",
                    format!("cyclic order {} does not match ring orders {:?}", o.order, ring.orders()),
                ));
            }
            self.oracle_model()?;
        }
        for (i, e) in self.spec.expected.iter().enumerate() {
            let loc = format!("expected[{i}]");
            match (&e.factors, &e.series) {
                (Some(_), None) | (None, Some(_)) => {}
                _ => return Err(err(loc, "give exactly one of factors and series")),
            }
            let vars = self.target_vars(e.target).map_err(|m| err(&loc, m.message))?;
            for (j, f) in e.factors.iter().flatten().enumerate() {
                if f.exponent.len() != vars {
                    return Err(err(
                        format!("{loc}.factors[{j}]"),
                        format!("exponent has {} entries, the {} series has {vars} variables", f.exponent.len(), e.target),
                    ));
                }
                if e.target == Target::Extract && f.character.as_ref().is_some_and(|c| c.iter().any(|&x| x != 0)) {
                    return Err(err(format!("{loc}.factors[{j}]"), "extracted series carry no characters"));
                }
            }
        }
        Ok(())
    }

    /// Number of variables of the series a target produces.
    pub fn target_vars(&self, target: Target) -> Result<usize, JobError> {
        match target {
            Target::Divisorial => Ok(self.model.chosen().len()),
            Target::Curve => Ok(self.curve_spec()?.branches.len()),
            Target::Extract => Ok(self.extraction_plan()?.output_vars()),
        }
    }

    fn curve_spec(&self) -> Result<&CurveSpec, JobError> {
        self.spec.curve.as_ref().ok_or_else(|| err("curve", "job has no curve section"))
    }

    pub fn curve_strata(&self) -> Result<CurveStrata, JobError> {
        let c = self.curve_spec()?;
        curve_strata(&self.model, self.model.strata(), &c.branches, &c.removed_points).map_err(|e| err("curve", e))
    }

    pub fn extraction_plan(&self) -> Result<SubstitutionPlan, JobError> {
        let spec = self
            .spec
            .extraction
            .as_ref()
            .ok_or_else(|| err("extraction", "job has no extraction section"))?;
        let map: Vec<(usize, usize, u32)> = spec.map.iter().map(|m| (m.source, m.target, m.denominator)).collect();
        plan_from_map(self.model.chosen().len(), &map).map_err(|e| err("extraction.map", e))
    }

    pub fn oracle_mode(&self) -> Result<OracleMode, JobError> {
        let o = self.oracle_spec()?;
        match (o.sigma_x, o.sigma_y, &o.curve_axes) {
            (Some(_), Some(_), None) => Ok(OracleMode::Divisorial),
            (None, None, Some(_)) => Ok(OracleMode::Curve),
            _ => Err(err("oracle", "give either sigma_x and sigma_y, or curve_axes")),
        }
    }

    fn oracle_spec(&self) -> Result<&OracleSpec, JobError> {
        self.spec.oracle.as_ref().ok_or_else(|| err("oracle", "job has no oracle section"))
    }

    pub fn oracle_model(&self) -> Result<MonomialModel, JobError> {
        let o = self.oracle_spec()?;
        let weights = (o.weights[0], o.weights[1]);
        match self.oracle_mode()? {
            OracleMode::Divisorial => {
                let (sx, sy) = (o.sigma_x.expect("checked"), o.sigma_y.expect("checked"));
                MonomialModel::divisorial(o.order, weights, self.model.multiplicities(), sx, sy, self.model.chosen())
                    .map_err(|e| err("oracle", e))
            }
            OracleMode::Curve => {
                let axes = o.curve_axes.clone().expect("checked");
                let branches = self.curve_spec().map_err(|_| err("oracle.curve_axes", "needs a curve section"))?;
                if axes.len() != branches.branches.len() {
                    return Err(err(
                        "oracle.curve_axes",
                        format!("{} axes for {} curve branches", axes.len(), branches.branches.len()),
                    ));
                }
                MonomialModel::curve(o.order, weights, axes).map_err(|e| err("oracle", e))
            }
        }
    }

    /// Degree cap declared by the oracle section, if any.
    pub fn oracle_max_degree(&self) -> Option<u32> {
        self.spec.oracle.as_ref().and_then(|o| o.max_degree)
    }

    /// Orbits as declared, or grouped from the carriers.
    pub fn orbits(&self, strata: &[Stratum]) -> Vec<OrbitDecl> {
        match &self.spec.orbits {
            Some(o) => o.clone(),
            None => crate::strata::default_orbits(&self.model, strata),
        }
    }

    fn factors(&self, loc: &str, ring: &CharacterRing, specs: &[FactorSpec]) -> Result<Vec<Factor>, JobError> {
        specs
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let character = match &f.character {
                    Some(c) => ring.exponent(c).map_err(|e| err(format!("{loc}.factors[{j}]"), e))?,
                    None => ring.trivial_exponent(),
                };
                Ok(Factor {
                    scalar: BigInt::from(f.scalar),
                    character,
                    exponent: ExponentVector::new(f.exponent.clone()),
                    power: f.power,
                })
            })
            .collect()
    }

    /// Expected series over the character ring, for a divisorial or curve entry.
    pub fn expected_char_series(&self, index: usize, bound: u32) -> Result<CharSeries, JobError> {
        let loc = format!("expected[{index}]");
        let e = &self.spec.expected[index];
        let ring = self.model.ring();
        let vars = self.target_vars(e.target)?;
        match (&e.factors, &e.series) {
            (Some(f), _) => {
                let factors = self.factors(&loc, ring, f)?;
                product_of_factors(ring, vars, &factors, bound).map_err(|x| err(loc, x))
            }
            (None, Some(s)) => Series::from_machine(ring.clone(), s).map_err(|x| err(loc, x)),
            (None, None) => unreachable!("checked at load"),
        }
    }

    /// Expected integer series, for an extraction entry.
    pub fn expected_int_series(&self, index: usize, bound: u32) -> Result<IntSeries, JobError> {
        let loc = format!("expected[{index}]");
        let e = &self.spec.expected[index];
        let vars = self.target_vars(e.target)?;
        match (&e.factors, &e.series) {
            (Some(f), _) => {
                let ring = CharacterRing::trivial();
                let trimmed: Vec<FactorSpec> = f
                    .iter()
                    .map(|x| FactorSpec {
                        character: None,
                        ..x.clone()
                    })
                    .collect();
                let factors = self.factors(&loc, &ring, &trimmed)?;
                let p = product_of_factors(&ring, vars, &factors, bound).map_err(|x| err(loc, x))?;
                Ok(p.map_coefficients(Integers, |c| c.augment()))
            }
            (None, Some(s)) => Series::from_machine(Integers, s).map_err(|x| err(loc, x)),
            (None, None) => unreachable!("checked at load"),
        }
    }
}

fn stratum_from_spec(ring: &CharacterRing, s: &StratumSpec) -> Result<Stratum, String> {
    let exponent = |raw: &[i64], what: &str| -> Result<CharExponent, String> {
        ring.exponent(raw).map_err(|e| format!("{what}: {e}"))
    };
    let mut st = Stratum::new(s.carrier.clone(), s.chi);
    st.id = s.id.clone();
    if let Some(d) = s.degree {
        st.degree = d;
    }
    if let Some(c) = &s.char_exponents {
        st.char_exponents = Some(exponent(c, "char_exponents")?);
    }
    if let Some(d) = &s.derivation {
        st.derivation = Some(crate::strata::Derivation {
            p0_char_exponents: exponent(&d.p0_char_exponents, "derivation.p0_char_exponents")?,
            p0_orbit_size: d.p0_orbit_size,
        });
    }
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_ONE: &str = r#"{
        "ring": [3],
        "graph": {
            "components": [
                {"id": 1, "self_intersection": -1},
                {"id": 2, "self_intersection": -3},
                {"id": 3, "self_intersection": -1}
            ],
            "edges": [[1, 2], [2, 3]],
            "e0": 2
        },
        "chosen": [1, 2, 3],
        "strata": [
            {"carrier": [1], "chi": 1, "derivation": {"p0_char_exponents": [1], "p0_orbit_size": 1}},
            {"carrier": [3], "chi": 1, "char_exponents": [-1]}
        ],
        "extraction": {"map": [{"source": 1, "target": 1, "denominator": 3}, {"source": 3, "target": 2, "denominator": 3}]},
        "oracle": {"order": 3, "weights": [1, -1], "sigma_x": 3, "sigma_y": 1}
    }"#;

    #[test]
    fn parses_and_validates() {
        let job = Job::from_json(EXAMPLE_ONE).unwrap();
        assert_eq!(job.model.strata().len(), 2);
        assert_eq!(job.model.strata()[1].char_exponents.as_ref().unwrap().as_slice(), &[2]);
        assert_eq!(job.extraction_plan().unwrap().output_vars(), 2);
        assert_eq!(job.oracle_mode().unwrap(), OracleMode::Divisorial);
    }

    #[test]
    fn errors_carry_locations() {
        let bad = EXAMPLE_ONE.replace(r#""char_exponents": [-1]"#, r#""char_exponents": [1, 1]"#);
        let e = Job::from_json(&bad).unwrap_err();
        assert_eq!(e.location, "strata[1]");

        let bad = EXAMPLE_ONE.replace(r#""chosen": [1, 2, 3]"#, r#""chosen": [1, 7]"#);
        assert_eq!(Job::from_json(&bad).unwrap_err().location, "chosen[1]");

        let bad = EXAMPLE_ONE.replace(r#""source": 3"#, r#""source": 4"#);
        assert_eq!(Job::from_json(&bad).unwrap_err().location, "extraction.map");

        let bad = EXAMPLE_ONE.replace(r#""order": 3"#, r#""order": 5"#);
        assert_eq!(Job::from_json(&bad).unwrap_err().location, "oracle.order");

        let e = Job::from_json("{").unwrap_err();
        assert!(e.location.starts_with("line 1"));

        let bad = EXAMPLE_ONE.replace(r#""self_intersection": -3"#, r#""self_intersection": -2"#);
        assert_eq!(Job::from_json(&bad).unwrap_err().location, "model");
    }
}
