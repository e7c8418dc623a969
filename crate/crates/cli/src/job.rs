//! Runs the requested routes and cross-checks for one job.
//!
//! The bg route always runs first since every other check compares against
//! it; the remaining checks run on scoped threads and are reassembled in
//! canonical order, so the report does not depend on scheduling.

use crate::report::{CheckResult, Report, RingSummary, SignConvention, Status};
use crate::spec::{CheckName, JobSpec};
use hochschild_core::algebra::Bimodule;
use hochschild_core::hochschild::BarComplex;
use hochschild_core::rankone::{adjoint_route, bg_complex, ring_presentation, ChainMapReport, ChainMaps, RankOneData};
use hochschild_core::smashext::{build_gamma, ext_d_dims, gamma_iso_d, hom_d_spot_check, hopf_hochschild_dims};
use hochschild_core::Error as CoreError;
use std::collections::BTreeMap;
use std::time::Instant;

/// The bar oracle is skipped when its top cochain space is larger than this.
pub const BAR_ORACLE_BUDGET: u128 = 200_000;

/// Degrees for the direct Hom_𝒟 comparison inside the ext_d check.
const SPOT_CHECK_MAX_DEGREE: usize = 2;

/// What one check contributes beyond its verdict.
#[derive(Default)]
struct Extras {
    dims: Option<Vec<usize>>,
    ring: Option<RingSummary>,
    chain_maps: Option<ChainMapReport>,
}

struct Outcome {
    result: CheckResult,
    extras: Extras,
    millis: f64,
}

fn compare(route: &[usize], bg: &[usize]) -> Result<(), String> {
    match route.iter().zip(bg).position(|(a, b)| a != b) {
        None if route.len() <= bg.len() => Ok(()),
        None => Err(format!("route has {} degrees, bg only {}", route.len(), bg.len())),
        Some(m) => Err(format!("degree {m}: route gives {}, bg gives {}", route[m], bg[m])),
    }
}

fn from_dims(route: Vec<usize>, bg: &[usize], detail: String) -> (Status, String, Extras) {
    let status = match compare(&route, bg) {
        Ok(()) => (Status::Pass, detail),
        Err(e) => (Status::Fail, e),
    };
    (
        status.0,
        status.1,
        Extras {
            dims: Some(route),
            ..Extras::default()
        },
    )
}

fn bar_cochain_count(r: &RankOneData, top: usize) -> u128 {
    let slots = (r.dim_b() - 1) as u128;
    slots.pow(top as u32) * r.dim_b() as u128
}

type CheckOutput = Result<(Status, String, Extras), CoreError>;

fn run_check(c: CheckName, spec: &JobSpec, bg: &[usize]) -> CheckOutput {
    let r = &spec.data;
    let max = spec.max_degree();
    let oracle = spec.oracle_max_degree();
    let oracle_bg = &bg[..=oracle];
    match c {
        CheckName::Bg => unreachable!("bg is evaluated before the other checks"),
        CheckName::ExtD => {
            let dims = ext_d_dims(r, oracle)?;
            let spot = hom_d_spot_check(r, oracle.min(SPOT_CHECK_MAX_DEGREE))?;
            if let Some(bad) = spot.iter().find(|s| s.passed() == Some(false)) {
                return Ok((
                    Status::Fail,
                    format!("Hom_D differs from the invariant cochains in degree {}", bad.degree),
                    Extras::default(),
                ));
            }
            let skipped: Vec<usize> = spot.iter().filter(|s| s.passed().is_none()).map(|s| s.degree).collect();
            let detail = if skipped.is_empty() {
                format!("agrees with bg through degree {oracle}; Hom_D spot check passed")
            } else {
                format!("agrees with bg through degree {oracle}; Hom_D spot check over budget in degrees {skipped:?}")
            };
            Ok(from_dims(dims, oracle_bg, detail))
        }
        CheckName::Bar => {
            let count = bar_cochain_count(r, oracle + 1);
            if count > BAR_ORACLE_BUDGET {
                return Ok((
                    Status::Skipped,
                    format!(
                        "BudgetExceeded: {count} cochains in degree {} (budget {BAR_ORACLE_BUDGET})",
                        oracle + 1
                    ),
                    Extras::default(),
                ));
            }
            let bar = BarComplex::regular(r.b(), oracle)?;
            let dims = bar.complex.cohomology_dims()?;
            Ok(from_dims(dims, oracle_bg, format!("agrees with bg through degree {oracle}")))
        }
        CheckName::Adjoint => {
            let route = adjoint_route(r, max)?;
            let detail = format!("{} class summands agree with bg through degree {max}", route.summands.len());
            Ok(from_dims(route.dims, bg, detail))
        }
        CheckName::Ring => {
            let deg = max.max(2 * r.p_ord + 1);
            let pres = ring_presentation(r, deg)?;
            let summary = RingSummary::from(&pres);
            let (status, detail) = if !pres.class_counts_agree() {
                (
                    Status::Fail,
                    format!(
                        "{} G-classes in N but dim Z(kN) = {}",
                        pres.g_classes_in_kernel, pres.center_of_kernel_dim
                    ),
                )
            } else if pres.degree0_basis.len() != bg[0] {
                (Status::Fail, "degree-0 basis does not span HH^0".to_string())
            } else {
                (
                    Status::Pass,
                    format!("{} products match through degree {deg}", pres.table.len()),
                )
            };
            Ok((
                status,
                detail,
                Extras {
                    ring: Some(summary),
                    ..Extras::default()
                },
            ))
        }
        CheckName::Chainmaps => {
            let maps = ChainMaps::new(r, max)?;
            let rep = maps.report().clone();
            let odd_ok = rep.odd_identity.iter().all(|e| e.1);
            let (status, detail) = match rep.even_identity.iter().find(|e| !e.1) {
                Some((m, _)) => (Status::Fail, format!("psi∘phi is not the identity in degree {m}")),
                None => (
                    Status::Pass,
                    format!(
                        "squares and equivariance hold through degree {max}; psi∘phi = id in even degrees{}",
                        if odd_ok { " and odd degrees" } else { "" }
                    ),
                ),
            };
            Ok((
                status,
                detail,
                Extras {
                    chain_maps: Some(rep),
                    ..Extras::default()
                },
            ))
        }
        CheckName::Gamma => {
            let gamma = build_gamma(&r.smash)?;
            let iso = gamma_iso_d(&gamma, &r.smash)?;
            let how = if iso.exhaustive { "exhaustive" } else { "sampled" };
            Ok((
                Status::Pass,
                format!("dim {}; {how} on {} basis pairs", iso.dim, iso.pairs_checked),
                Extras::default(),
            ))
        }
        CheckName::HopfHochschild => {
            let hh = hopf_hochschild_dims(&r.smash, &Bimodule::regular(r.b()), oracle)?;
            Ok(from_dims(hh.dims, oracle_bg, format!("agrees with bg through degree {oracle}")))
        }
    }
}

fn evaluate(c: CheckName, spec: &JobSpec, bg: &[usize]) -> Outcome {
    let start = Instant::now();
    let (status, detail, extras) = match run_check(c, spec, bg) {
        Ok(out) => out,
        Err(e @ CoreError::BudgetExceeded { .. }) => (Status::Skipped, format!("BudgetExceeded: {e}"), Extras::default()),
        Err(e) => (Status::Fail, e.to_string(), Extras::default()),
    };
    Outcome {
        result: CheckResult {
            name: c,
            status,
            detail,
        },
        extras,
        millis: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// HH^{2i} and HH^{2i+1} have equal dimension wherever both were computed.
fn parity_violation(dims: &[usize]) -> Option<usize> {
    dims.chunks_exact(2).position(|p| p[0] != p[1]).map(|i| 2 * i)
}

pub fn run_job(spec: &JobSpec) -> Report {
    let r = &spec.data;
    let max = spec.max_degree();
    let mut timings = BTreeMap::new();
    let mut dims = BTreeMap::new();
    let mut checks = Vec::new();

    let start = Instant::now();
    let bg = bg_complex(r, max);
    timings.insert("bg".to_string(), start.elapsed().as_secs_f64() * 1e3);
    let bg = match bg {
        Ok(bg) => bg.dims(),
        Err(e) => {
            // Nothing can be compared without the primary route.
            checks = spec
                .checks()
                .iter()
                .map(|&name| CheckResult {
                    name,
                    status: Status::Fail,
                    detail: format!("bg route failed: {e}"),
                })
                .collect();
            return Report::new(spec, dims, None, checks, SignConvention::new(r, max, None), timings);
        }
    };
    dims.insert("bg".to_string(), bg.clone());
    if spec.wants(CheckName::Bg) {
        let closed: Vec<usize> = (0..=max).map(|m| r.closed_form_dim(m)).collect();
        let (status, detail) = if let Err(e) = compare(&bg, &closed) {
            (Status::Fail, format!("closed form: {e}"))
        } else if let Some(m) = parity_violation(&bg) {
            (Status::Fail, format!("dim HH^{m} != dim HH^{}", m + 1))
        } else {
            (Status::Pass, format!("matches the closed form through degree {max}"))
        };
        checks.push(CheckResult {
            name: CheckName::Bg,
            status,
            detail,
        });
    }

    let others: Vec<CheckName> = spec.checks().iter().copied().filter(|&c| c != CheckName::Bg).collect();
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = others
            .iter()
            .map(|&c| {
                let bg = &bg;
                s.spawn(move || evaluate(c, spec, bg))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });

    let mut ring = None;
    let mut chain_maps = None;
    for o in outcomes {
        let name = o.result.name.as_str().to_string();
        timings.insert(name.clone(), o.millis);
        if let Some(d) = o.extras.dims {
            dims.insert(name, d);
        }
        ring = ring.or(o.extras.ring);
        chain_maps = chain_maps.or(o.extras.chain_maps);
        checks.push(o.result);
    }
    checks.sort_by_key(|c| c.name);
    Report::new(spec, dims, ring, checks, SignConvention::new(r, max, chain_maps.as_ref()), timings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity() {
        assert_eq!(parity_violation(&[1, 1, 0, 0, 1]), None);
        assert_eq!(parity_violation(&[1, 1, 2, 0]), Some(2));
    }

    #[test]
    fn comparison_reports_first_difference() {
        assert!(compare(&[1, 1], &[1, 1, 1]).is_ok());
        assert_eq!(compare(&[1, 2], &[1, 1]).unwrap_err(), "degree 1: route gives 2, bg gives 1");
    }
}
