//! Built-in example jobs.
//!
//! Group elements of a product G × H are indexed a·|H| + b, and the cyclic
//! factor's generator is element 1 of its factor.

use crate::spec::{parse_spec, JobSpec, SpecError};

pub const NAMES: [&str; 5] = ["E1", "E2", "E3", "E4", "E5"];

/// Sweedler algebra: Z2 with χ(g) = -1.
const E1: &str = r#"{
  "prime": 5, "n": 2,
  "group": {"kind": "cyclic", "order": 2},
  "chi": [{"element": 1, "value": 4}],
  "g1": 1,
  "oracle_max_degree": 4
}"#;

/// Taft algebra of dimension 9.
const E2: &str = r#"{
  "prime": 7, "n": 3,
  "group": {"kind": "cyclic", "order": 3},
  "chi": [{"element": 1, "value": 2}],
  "g1": 1
}"#;

/// Z4 with χ(g) = 2 of order 4 and g1 = g², so χ^n is nontrivial.
const E3: &str = r#"{
  "prime": 5, "n": 2,
  "group": {"kind": "cyclic", "order": 4},
  "chi": [{"element": 1, "value": 2}],
  "g1": 2
}"#;

/// Z4 × S3 with χ = (5, sign) and g1 = (a, e); elements 6, 1, 3 are a, r, s.
const E4: &str = r#"{
  "prime": 13, "n": 4,
  "group": {"kind": "product",
            "left": {"kind": "cyclic", "order": 4},
            "right": {"kind": "dihedral", "order": 6}},
  "chi": [{"element": 6, "value": 5}, {"element": 1, "value": 1}, {"element": 3, "value": 12}],
  "g1": 6
}"#;

/// Z2 × Z4 with χ = (1, 2), so N = Z2 × {0, 2} and g1 = (0, 2).
const E5: &str = r#"{
  "prime": 5, "n": 2,
  "group": {"kind": "product",
            "left": {"kind": "cyclic", "order": 2},
            "right": {"kind": "cyclic", "order": 4}},
  "chi": [{"element": 4, "value": 1}, {"element": 1, "value": 2}],
  "g1": 2
}"#;

pub fn demo_text(name: &str) -> Option<&'static str> {
    match name.to_ascii_uppercase().as_str() {
        "E1" => Some(E1),
        "E2" => Some(E2),
        "E3" => Some(E3),
        "E4" => Some(E4),
        "E5" => Some(E5),
        _ => None,
    }
}

pub fn demo(name: &str) -> Result<JobSpec, SpecError> {
    let text = demo_text(name).ok_or_else(|| SpecError::Validation {
        field: "demo".into(),
        message: format!("unknown demo `{name}`; expected one of {}", NAMES.join(", ")),
    })?;
    parse_spec(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demos_validate() {
        let ords: Vec<usize> = NAMES.iter().map(|n| demo(n).unwrap().p_ord()).collect();
        assert_eq!(ords, vec![1, 1, 2, 1, 2]);
        assert_eq!(demo("E4").unwrap().data.dim_b(), 96);
        assert!(demo("E9").is_err());
    }
}
