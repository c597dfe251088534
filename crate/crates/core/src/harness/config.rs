//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "field": {"poly": [1, 0, 1]},
//!   "places": {"primes": [{"p": 2, "factor_index": 0}]},
//!   "map": {"num": ["0", "-1", "1"], "den": ["1"]},
//!   "height": 100
//! }
//! ```
//!
//! Elements are either a single rational string (`"3/4"`), an integer, or an
//! array of power-basis coordinates (`["1/2", "3"]`, constant term first).

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::arith::Int;
use crate::dynamics::{KPoly, RationalMap};
use crate::error::{Error, Result};
use crate::nf::{FieldElement, NumberField};
use crate::places::{PlaceSet, UnitGroupData};

pub const DEFAULT_HEIGHT: u64 = 1000;
pub const DEFAULT_STEPS: usize = 15;
pub const DEFAULT_HEIGHT_CAP_DIGITS: u32 = 80;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum ElementSpec {
    Scalar(Scalar),
    Coords(Vec<Scalar>),
}

impl ElementSpec {
    pub fn resolve(&self, field: &NumberField) -> Result<FieldElement> {
        let parts: Vec<String> = match self {
            ElementSpec::Scalar(s) => vec![s.text()],
            ElementSpec::Coords(v) => v.iter().map(Scalar::text).collect(),
        };
        FieldElement::from_strings(field, &parts)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// Integer coefficients of the monic defining polynomial, constant term first.
    pub poly: Vec<Scalar>,
    #[serde(default)]
    pub assert_monogenic: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PrimeSpec {
    pub p: u64,
    /// Omitted: every place above `p`.
    #[serde(default)]
    pub factor_index: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PlacesSpec {
    #[serde(default)]
    pub primes: Vec<PrimeSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UnitsSpec {
    pub torsion: ElementSpec,
    #[serde(default)]
    pub free: Vec<ElementSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub num: Vec<ElementSpec>,
    #[serde(default)]
    pub den: Option<Vec<ElementSpec>>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub field: FieldSpec,
    pub delta1: ElementSpec,
    pub delta2: ElementSpec,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum EscapeKind {
    Unicritical,
    Laurent,
    Restriction,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub places: PlacesSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
    /// Orbit start.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Orbits stop after the first point of height above `10^height_cap_digits`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_cap_digits: Option<u32>,
    /// Curve exponent; defaults to `select_prime(d, m)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    /// Two roots of the map for the unit-equation route.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<ElementSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub escape: Option<EscapeKind>,
    /// `phi0` for the unicritical certificate, constant term first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi0: Option<Vec<ElementSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    /// Signed exponent of a power map `beta z^exponent`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<i64>,
    /// Number of family members or oracle starting points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Interpolation chain `c_0, ..., c_k`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<ElementSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_roots: Option<Vec<ElementSpec>>,
}

fn parse_int(s: &Scalar) -> Result<Int> {
    match s {
        Scalar::Int(n) => Ok(Int::from(*n)),
        Scalar::Text(t) => Int::from_str_radix(t.trim(), 10)
            .map_err(|_| Error::InvalidInput(format!("not an integer: {t}"))),
    }
}

pub fn build_field(spec: &FieldSpec) -> Result<NumberField> {
    let coeffs = spec
        .poly
        .iter()
        .map(parse_int)
        .collect::<Result<Vec<_>>>()?;
    NumberField::new(&coeffs, spec.assert_monogenic)
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))
    }

    pub fn field(&self) -> Result<NumberField> {
        match &self.field {
            Some(spec) => build_field(spec),
            None => Ok(NumberField::rationals()),
        }
    }

    pub fn place_set(&self, field: &NumberField) -> Result<PlaceSet> {
        let mut set = PlaceSet::archimedean(field);
        for spec in &self.places.primes {
            let places = match spec.factor_index {
                Some(i) => vec![field.place(spec.p, i)?],
                None => field.primes_above(spec.p)?,
            };
            set = set.union(places);
        }
        Ok(set)
    }

    pub fn units(&self, field: &NumberField) -> Result<Option<UnitGroupData>> {
        let Some(spec) = &self.units else {
            return Ok(None);
        };
        Ok(Some(UnitGroupData {
            torsion_generator: spec.torsion.resolve(field)?,
            free_generators: spec
                .free
                .iter()
                .map(|e| e.resolve(field))
                .collect::<Result<Vec<_>>>()?,
        }))
    }

    pub fn map(&self, field: &NumberField) -> Result<RationalMap> {
        let spec = self
            .map
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("config needs a \"map\"".into()))?;
        let num = resolve_all(&spec.num, field)?;
        let den = match &spec.den {
            Some(d) => resolve_all(d, field)?,
            None => vec![FieldElement::one(field)],
        };
        RationalMap::from_elements(field, num, den)
    }

    pub fn require(
        &self,
        value: &Option<ElementSpec>,
        name: &str,
        field: &NumberField,
    ) -> Result<FieldElement> {
        value
            .as_ref()
            .ok_or_else(|| Error::InvalidInput(format!("config needs \"{name}\"")))?
            .resolve(field)
    }

    pub fn poly(&self, coeffs: &[ElementSpec], field: &NumberField) -> Result<KPoly> {
        Ok(KPoly::new(field.clone(), resolve_all(coeffs, field)?))
    }

    pub fn height_or_default(&self) -> u64 {
        self.height.unwrap_or(DEFAULT_HEIGHT)
    }

    pub fn steps_or_default(&self) -> usize {
        self.steps.unwrap_or(DEFAULT_STEPS)
    }

    pub fn height_cap(&self) -> Int {
        num_traits::pow(
            Int::from(10),
            self.height_cap_digits.unwrap_or(DEFAULT_HEIGHT_CAP_DIGITS) as usize,
        )
    }
}

pub fn resolve_all(specs: &[ElementSpec], field: &NumberField) -> Result<Vec<FieldElement>> {
    specs.iter().map(|e| e.resolve(field)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = ExperimentConfig::from_json(
            r#"{"field": {"poly": [1, 0, 1]},
                "places": {"primes": [{"p": 2, "factor_index": 0}, {"p": 5}]},
                "map": {"num": ["0", -1, ["1", "0"]]},
                "alpha": ["1/2", "3"],
                "height": 5}"#,
        )
        .unwrap();
        let k = cfg.field().unwrap();
        assert_eq!(k.degree(), 2);
        let s = cfg.place_set(&k).unwrap();
        assert_eq!(s.s(), 4);
        assert_eq!(cfg.map(&k).unwrap().degree(), 2);
        let a = cfg.require(&cfg.alpha, "alpha", &k).unwrap();
        assert_eq!(a.to_strings(), vec!["1/2", "3/1"]);
        assert_eq!(cfg.height_or_default(), 5);
        assert_eq!(cfg.steps_or_default(), DEFAULT_STEPS);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_input() {
        assert!(ExperimentConfig::from_json(r#"{"hieght": 3}"#).is_err());
        let cfg = ExperimentConfig::from_json(r#"{"map": {"num": ["x"]}}"#).unwrap();
        assert!(cfg.map(&NumberField::rationals()).is_err());
        let cfg = ExperimentConfig::from_json(r#"{"field": {"poly": [-2, 0, 0, 1, 1]}}"#).unwrap();
        assert!(cfg.field().is_err());
    }
}
