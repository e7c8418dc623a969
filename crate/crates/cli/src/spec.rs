//! Job specifications: JSON text to a validated RankOneData.

use hochschild_core::group::{Character, FinGroup, GroupSpec};
use hochschild_core::rankone::RankOneData;
use hochschild_core::{Error as CoreError, PrimeField, Scalar};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Largest cohomological degree a job may request.
pub const MAX_JOB_DEGREE: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field `{field}`: {message}")]
    Validation { field: String, message: String },
}

impl SpecError {
    fn at(field: impl Into<String>, message: impl ToString) -> Self {
        SpecError::Validation {
            field: field.into(),
            message: message.to_string(),
        }
    }

    /// Field path of a validation error.
    pub fn field(&self) -> Option<&str> {
        match self {
            SpecError::Validation { field, .. } => Some(field),
            SpecError::Parse(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Bg,
    ExtD,
    Bar,
    Adjoint,
    Ring,
    Chainmaps,
    Gamma,
    HopfHochschild,
}

impl CheckName {
    /// Canonical order, also the report order.
    pub const ALL: [CheckName; 8] = [
        CheckName::Bg,
        CheckName::ExtD,
        CheckName::Bar,
        CheckName::Adjoint,
        CheckName::Ring,
        CheckName::Chainmaps,
        CheckName::Gamma,
        CheckName::HopfHochschild,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Bg => "bg",
            CheckName::ExtD => "ext_d",
            CheckName::Bar => "bar",
            CheckName::Adjoint => "adjoint",
            CheckName::Ring => "ring",
            CheckName::Chainmaps => "chainmaps",
            CheckName::Gamma => "gamma",
            CheckName::HopfHochschild => "hopf_hochschild",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupJson {
    Cyclic { order: usize },
    /// Order 2m, symmetries of an m-gon.
    Dihedral { order: usize },
    Product { left: Box<GroupJson>, right: Box<GroupJson> },
    Table { table: Vec<Vec<usize>> },
}

impl GroupJson {
    pub fn to_spec(&self) -> GroupSpec {
        match self {
            GroupJson::Cyclic { order } => GroupSpec::Cyclic(*order),
            GroupJson::Dihedral { order } => GroupSpec::Dihedral(*order),
            GroupJson::Product { left, right } => GroupSpec::Product(Box::new(left.to_spec()), Box::new(right.to_spec())),
            GroupJson::Table { table } => GroupSpec::Table(table.clone()),
        }
    }
}

/// χ on one element: either a field value or a power of the declared root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiAssignment {
    pub element: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<u64>,
}

fn default_max_degree() -> usize {
    6
}

fn default_oracle_max_degree() -> usize {
    3
}

fn default_checks() -> Vec<CheckName> {
    CheckName::ALL.to_vec()
}

/// The JSON document as written, with defaults filled in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobInput {
    pub prime: u64,
    pub n: usize,
    pub group: GroupJson,
    /// Order of the root that `power` entries of `chi` refer to; the root is
    /// the least element of F_p of that order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_order: Option<u64>,
    pub chi: Vec<ChiAssignment>,
    pub g1: usize,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    #[serde(default = "default_oracle_max_degree")]
    pub oracle_max_degree: usize,
    #[serde(default = "default_checks")]
    pub checks: Vec<CheckName>,
}

/// A validated job: the normalized input plus the algebra it describes.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub input: JobInput,
    pub data: RankOneData,
}

impl JobSpec {
    pub fn p_ord(&self) -> usize {
        self.data.p_ord
    }

    pub fn max_degree(&self) -> usize {
        self.input.max_degree
    }

    pub fn oracle_max_degree(&self) -> usize {
        self.input.oracle_max_degree
    }

    pub fn checks(&self) -> &[CheckName] {
        &self.input.checks
    }

    pub fn wants(&self, c: CheckName) -> bool {
        self.input.checks.contains(&c)
    }

    /// Lowers the degree range; the oracle range is clamped to it.
    pub fn with_max_degree(mut self, max_degree: usize) -> Result<Self, SpecError> {
        self.input.max_degree = max_degree;
        self.input.oracle_max_degree = self.input.oracle_max_degree.min(max_degree);
        validate(self.input)
    }

    pub fn with_checks(mut self, checks: Vec<CheckName>) -> Result<Self, SpecError> {
        self.input.checks = checks;
        validate(self.input)
    }
}

pub fn parse_spec(text: &str) -> Result<JobSpec, SpecError> {
    let input: JobInput = serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
    validate(input)
}

/// Checks every RankOneData invariant, attributing failures to a field.
pub fn validate(mut input: JobInput) -> Result<JobSpec, SpecError> {
    let field = PrimeField::new(input.prime).map_err(|e| SpecError::at("prime", e))?;
    if input.n < 2 {
        return Err(SpecError::at("n", format!("n = {} must be at least 2", input.n)));
    }
    let group = FinGroup::new(&input.group.to_spec()).map_err(|e| SpecError::at("group", e))?;
    if group.order() % field.p() as usize == 0 {
        return Err(SpecError::at(
            "prime",
            format!("p = {} divides |G| = {}", field.p(), group.order()),
        ));
    }
    let root = match input.root_order {
        None => None,
        Some(k) => Some(field.element_of_order(k).map_err(|e| SpecError::at("root_order", e))?),
    };
    let mut values: Vec<(usize, Scalar)> = Vec::with_capacity(input.chi.len());
    for (i, a) in input.chi.iter().enumerate() {
        let path = format!("chi[{i}]");
        if a.element >= group.order() {
            return Err(SpecError::at(
                format!("{path}.element"),
                format!("{} is not an element of a group of order {}", a.element, group.order()),
            ));
        }
        let v = match (a.value, a.power, root) {
            (Some(v), None, _) => field.elem(v),
            (None, Some(k), Some(z)) => field.pow(z, k as i64).map_err(|e| SpecError::at(&path, e))?,
            (None, Some(_), None) => return Err(SpecError::at(format!("{path}.power"), "needs `root_order`")),
            _ => return Err(SpecError::at(&path, "give exactly one of `value` and `power`")),
        };
        values.push((a.element, v));
    }
    let chi = Character::from_generator_values(field, &group, &values).map_err(|e| SpecError::at("chi", e))?;
    if input.g1 >= group.order() {
        return Err(SpecError::at("g1", format!("{} is not an element of G", input.g1)));
    }
    let data = RankOneData::new(field, input.n, &group, &chi, input.g1).map_err(|e| match e {
        CoreError::BadCharacteristic(_) | CoreError::NotPrime(_) => SpecError::at("prime", e),
        _ => SpecError::at("g1", e),
    })?;
    if input.max_degree > MAX_JOB_DEGREE {
        return Err(SpecError::at(
            "max_degree",
            format!("{} exceeds the limit {MAX_JOB_DEGREE}", input.max_degree),
        ));
    }
    if input.oracle_max_degree > input.max_degree {
        return Err(SpecError::at("oracle_max_degree", "must not exceed max_degree"));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (i, c) in input.checks.iter().enumerate() {
        if !seen.insert(*c) {
            return Err(SpecError::at(format!("checks[{i}]"), format!("`{c}` listed twice")));
        }
    }
    input.checks.sort();
    Ok(JobSpec { input, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: &str = r#"{"prime": 5, "n": 2, "group": {"kind": "cyclic", "order": 2},
        "chi": [{"element": 1, "value": 4}], "g1": 1}"#;

    #[test]
    fn e1_parses_with_defaults() {
        let spec = parse_spec(E1).unwrap();
        assert_eq!(spec.p_ord(), 1);
        assert_eq!(spec.max_degree(), 6);
        assert_eq!(spec.oracle_max_degree(), 3);
        assert_eq!(spec.checks(), &CheckName::ALL);
    }

    #[test]
    fn composite_prime_names_prime() {
        let err = parse_spec(&E1.replace("\"prime\": 5", "\"prime\": 6")).unwrap_err();
        assert_eq!(err.field(), Some("prime"));
    }

    #[test]
    fn noncentral_g1_names_g1() {
        // S3 as D6: reflections are not central.
        let text = r#"{"prime": 7, "n": 2, "group": {"kind": "dihedral", "order": 6},
            "chi": [{"element": 1, "value": 1}, {"element": 3, "value": 6}], "g1": 3}"#;
        let err = parse_spec(text).unwrap_err();
        assert_eq!(err.field(), Some("g1"));
    }

    #[test]
    fn powers_of_a_root() {
        let text = r#"{"prime": 5, "n": 2, "group": {"kind": "cyclic", "order": 4},
            "root_order": 4, "chi": [{"element": 1, "power": 1}], "g1": 2}"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.p_ord(), 2);
        let err = parse_spec(&text.replace("\"root_order\": 4, ", "")).unwrap_err();
        assert_eq!(err.field(), Some("chi[0].power"));
    }

    #[test]
    fn unknown_and_duplicate_checks() {
        assert!(matches!(
            parse_spec(&E1.replace("\"g1\": 1", "\"g1\": 1, \"checks\": [\"nope\"]")),
            Err(SpecError::Parse(_))
        ));
        let err = parse_spec(&E1.replace("\"g1\": 1", "\"g1\": 1, \"checks\": [\"bg\", \"bg\"]")).unwrap_err();
        assert_eq!(err.field(), Some("checks[1]"));
    }

    #[test]
    fn oracle_range_is_bounded() {
        let err = parse_spec(&E1.replace("\"g1\": 1", "\"g1\": 1, \"max_degree\": 2")).unwrap_err();
        assert_eq!(err.field(), Some("oracle_max_degree"));
        let spec = parse_spec(E1).unwrap().with_max_degree(2).unwrap();
        assert_eq!(spec.oracle_max_degree(), 2);
    }
}
