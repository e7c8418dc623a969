//! Job reports and their JSON and table renderings.

use crate::spec::{CheckName, JobInput, JobSpec};
use hochschild_core::rankone::{ChainMapReport, ProductEntry, RankOneData, RingPresentation};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: CheckName,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductRow {
    pub left_degree: usize,
    pub left: String,
    pub right_degree: usize,
    pub right: String,
    pub expected: String,
    pub matches: bool,
}

impl From<&ProductEntry> for ProductRow {
    fn from(e: &ProductEntry) -> Self {
        ProductRow {
            left_degree: e.left_degree,
            left: e.left.clone(),
            right_degree: e.right_degree,
            right: e.right.clone(),
            expected: e.expected.clone(),
            matches: e.matches,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSummary {
    pub max_degree: usize,
    pub degree0_basis: Vec<String>,
    pub deg_y: usize,
    pub deg_z: usize,
    pub basis: Vec<Vec<String>>,
    pub z_squared_zero: bool,
    pub graded_commutative: bool,
    /// Degrees m where cup with y was checked to be bijective.
    pub y_bijective_from: Vec<usize>,
    pub g_classes_in_kernel: usize,
    pub center_of_kernel_dim: usize,
    pub table: Vec<ProductRow>,
}

impl From<&RingPresentation> for RingSummary {
    fn from(p: &RingPresentation) -> Self {
        RingSummary {
            max_degree: p.max_degree,
            degree0_basis: p.degree0_basis.clone(),
            deg_y: p.deg_y,
            deg_z: p.deg_z,
            basis: p.basis.clone(),
            z_squared_zero: p.z_squared_zero,
            graded_commutative: p.graded_commutative,
            y_bijective_from: p.y_bijective.iter().filter(|e| e.1).map(|e| e.0).collect(),
            g_classes_in_kernel: p.g_classes_in_kernel,
            center_of_kernel_dim: p.center_of_kernel_dim,
            table: p.table.iter().map(ProductRow::from).collect(),
        }
    }
}

/// The conventions the numbers depend on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignConvention {
    /// e(m) with g acting on degree m of the small resolution by χ(g)^{e(m)}.
    pub twist_exponents: Vec<i64>,
    /// Sign carried by ψ in odd degrees; absent when chain maps were not run.
    pub psi_odd_sign: Option<i8>,
    /// Odd degrees where ψ∘φ = id was observed.
    pub odd_identity_degrees: Option<Vec<usize>>,
}

impl SignConvention {
    pub fn new(r: &RankOneData, max_degree: usize, maps: Option<&ChainMapReport>) -> Self {
        SignConvention {
            twist_exponents: (0..=max_degree).map(|m| r.twist_exponent(m)).collect(),
            psi_odd_sign: maps.map(|m| m.psi_odd_sign),
            odd_identity_degrees: maps.map(|m| m.odd_identity.iter().filter(|e| e.1).map(|e| e.0).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub input: JobInput,
    pub dim_b: usize,
    pub p_ord: usize,
    /// Cohomology dimensions per route, index = degree.
    pub dims: BTreeMap<String, Vec<usize>>,
    pub ring: Option<RingSummary>,
    pub checks: Vec<CheckResult>,
    pub sign_convention: SignConvention,
    /// Wall-clock milliseconds per route; the only nondeterministic field.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Serialize)]
struct Deterministic<'a> {
    input: &'a JobInput,
    dim_b: usize,
    p_ord: usize,
    dims: &'a BTreeMap<String, Vec<usize>>,
    ring: &'a Option<RingSummary>,
    checks: &'a [CheckResult],
    sign_convention: &'a SignConvention,
}

impl Report {
    pub fn new(
        spec: &JobSpec,
        dims: BTreeMap<String, Vec<usize>>,
        ring: Option<RingSummary>,
        checks: Vec<CheckResult>,
        sign_convention: SignConvention,
        timings: BTreeMap<String, f64>,
    ) -> Self {
        Report {
            input: spec.input.clone(),
            dim_b: spec.data.dim_b(),
            p_ord: spec.p_ord(),
            dims,
            ring,
            checks,
            sign_convention,
            timings,
        }
    }

    pub fn check(&self, name: CheckName) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// True iff no check failed; skipped checks do not count against it.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Pretty JSON; without timings the output is reproducible byte for byte.
    pub fn to_json(&self, with_timings: bool) -> String {
        let out = if with_timings {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string_pretty(&Deterministic {
                input: &self.input,
                dim_b: self.dim_b,
                p_ord: self.p_ord,
                dims: &self.dims,
                ring: &self.ring,
                checks: &self.checks,
                sign_convention: &self.sign_convention,
            })
        };
        out.expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let i = &self.input;
        let _ = writeln!(
            s,
            "p = {}  n = {}  dim B = {}  g1 = {}  p_ord = {}",
            i.prime, i.n, self.dim_b, i.g1, self.p_ord
        );
        let width = self.dims.keys().map(|k| k.len()).max().unwrap_or(0).max(6);
        let _ = writeln!(s, "\n{:width$}  dims by degree", "route");
        for (route, d) in &self.dims {
            let cells: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{route:width$}  {}", cells.join(" "));
        }
        if let Some(ring) = &self.ring {
            let _ = writeln!(
                s,
                "\nring: Z(kN) ⊗ k[y,z]/(z²) with deg y = {}, deg z = {}; degree-0 basis {}",
                ring.deg_y,
                ring.deg_z,
                ring.degree0_basis.join(", ")
            );
            let bad = ring.table.iter().filter(|e| !e.matches).count();
            let _ = writeln!(s, "      {} products checked, {bad} mismatches", ring.table.len());
        }
        if let Some(sign) = self.sign_convention.psi_odd_sign {
            let _ = writeln!(s, "\npsi sign in odd degrees: {sign:+}");
        }
        let _ = writeln!(s);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIPPED",
            };
            let _ = writeln!(s, "{:16} {status:8} {}", c.name.as_str(), c.detail);
        }
        s
    }
}
