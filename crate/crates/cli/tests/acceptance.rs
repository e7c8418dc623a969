//! Acceptance suite: one PASS/FAIL line per criterion, exact equality throughout.

use hochschild_cli::{demo, run_job, CheckName, Status};
use hochschild_core::algebra::Bimodule;
use hochschild_core::complex::CochainComplex;
use hochschild_core::hochschild::BarComplex;
use hochschild_core::linalg::Matrix;
use hochschild_core::rankone::{adjoint_route, bg_complex, cup_classes, ring_presentation, ChainMaps, RankOneData};
use hochschild_core::smashext::{build_gamma, ext_d_dims, gamma_iso_d, hopf_hochschild_dims, ExtDComplex};
use hochschild_core::{PrimeField, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<(), String>;

fn data(name: &str) -> RankOneData {
    demo(name).expect("demo validates").data
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn bar_dims(r: &RankOneData, max: usize) -> Vec<usize> {
    BarComplex::regular(r.b(), max).unwrap().complex.cohomology_dims().unwrap()
}

fn bg_dims(r: &RankOneData, max: usize) -> Vec<usize> {
    bg_complex(r, max).unwrap().dims()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = data("E1");
    let bg = bg_dims(&r, 6);
    eq("bg dims", bg.clone(), vec![1; 7])?;
    eq("bar dims", bar_dims(&r, 4), bg[..=4].to_vec())?;
    eq("ext_d dims", ext_d_dims(&r, 4).unwrap(), bg[..=4].to_vec())?;
    within(start, Duration::from_secs(10))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let r = data("E2");
    let bg = bg_dims(&r, 6);
    eq("bg dims", bg.clone(), vec![1; 7])?;
    eq("bar dims", bar_dims(&r, 3), bg[..=3].to_vec())?;
    within(start, Duration::from_secs(30))
}

fn criterion_3() -> Outcome {
    let r = data("E3");
    let bg = bg_dims(&r, 6);
    eq("bg dims", bg.clone(), vec![1, 1, 0, 0, 1, 1, 0])?;
    eq("bar dims", bar_dims(&r, 3), bg[..=3].to_vec())?;
    eq("ext_d dims", ext_d_dims(&r, 3).unwrap(), bg[..=3].to_vec())
}

fn criterion_4() -> Outcome {
    let r = data("E5");
    let bg = bg_complex(&r, 5).unwrap();
    eq("bg dims", bg.dims(), vec![2, 2, 0, 0, 2, 2])?;
    // The two G-class sums in N are a basis of HH^0.
    let sums = r.kernel_class_sums();
    eq("class sums in N", sums.len(), 2)?;
    let coords: Vec<Vec<Scalar>> = sums.iter().map(|(_, v)| bg.class_coordinates(0, v).unwrap()).collect();
    eq("rank of class sums in HH^0", Matrix::from_row_vectors(r.field, 2, &coords).unwrap().rank(), 2)?;
    let pres = ring_presentation(&r, 5).unwrap();
    eq("degree-0 basis", pres.degree0_basis.len(), 2)?;
    eq("ext_d dims", ext_d_dims(&r, 3).unwrap(), bg.dims()[..=3].to_vec())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let r = data("E4");
    let bg = bg_dims(&r, 6);
    eq("bg dims", bg.clone(), vec![3; 7])?;
    eq("ext_d dims", ext_d_dims(&r, 3).unwrap(), bg[..=3].to_vec())?;
    eq("adjoint dims", adjoint_route(&r, 6).unwrap().dims, bg.clone())?;
    let spec = demo("E4").unwrap().with_checks(vec![CheckName::Bar]).unwrap();
    let report = run_job(&spec);
    let bar = report.check(CheckName::Bar).expect("bar requested");
    eq("bar status", bar.status, Status::Skipped)?;
    ensure(bar.detail.starts_with("BudgetExceeded"), || bar.detail.clone())?;
    within(start, Duration::from_secs(60))
}

fn criterion_6() -> Outcome {
    for name in ["E1", "E2", "E3", "E4", "E5"] {
        let r = data(name);
        let pres = ring_presentation(&r, 6).map_err(|e| format!("{name}: {e}"))?;
        ensure(pres.z_squared_zero, || format!("{name}: z⌣z != 0"))?;
        ensure(pres.table.iter().all(|e| e.matches), || format!("{name}: product table mismatch"))?;
        let want: Vec<(usize, bool)> = (0..=6 - pres.deg_y).map(|m| (m, true)).collect();
        eq(&format!("{name}: cup with y"), pres.y_bijective.clone(), want)?;
        ensure(pres.class_counts_agree(), || format!("{name}: class counts differ"))?;
        eq(&format!("{name}: deg y"), pres.deg_y, 2 * r.p_ord)?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for name in ["E1", "E2", "E3"] {
        let r = data(name);
        let maps = ChainMaps::new(&r, 6).map_err(|e| format!("{name}: {e}"))?;
        let even: Vec<(usize, bool)> = (0..=3).map(|l| (2 * l, true)).collect();
        eq(&format!("{name}: psi∘phi on even degrees"), maps.report().even_identity.clone(), even)?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for (name, dim) in [("E1", 8), ("E2", 27), ("E3", 16)] {
        let r = data(name);
        let iso = gamma_iso_d(&build_gamma(&r.smash).unwrap(), &r.smash).map_err(|e| format!("{name}: {e}"))?;
        eq(&format!("{name}: dim"), iso.dim, dim)?;
        ensure(iso.exhaustive && iso.pairs_checked == dim * dim, || format!("{name}: {iso:?}"))?;
    }
    let r = data("E4");
    let iso = gamma_iso_d(&build_gamma(&r.smash).unwrap(), &r.smash).map_err(|e| format!("E4: {e}"))?;
    eq("E4 dim", iso.dim, 384)?;
    eq("E4 sampled pairs", iso.pairs_checked, 10_000)
}

fn criterion_9() -> Outcome {
    for name in ["E1", "E3"] {
        let r = data(name);
        let hh = hopf_hochschild_dims(&r.smash, &Bimodule::regular(r.b()), 3).map_err(|e| format!("{name}: {e}"))?;
        eq(&format!("{name}: Hopf-Hochschild dims"), hh.dims, bg_dims(&r, 3))?;
    }
    Ok(())
}

fn d_squared_zero(what: &str, c: &CochainComplex) -> Outcome {
    for m in 0..c.top_degree().saturating_sub(1) {
        let dd = c.differential(m + 1).mul(c.differential(m)).unwrap();
        ensure(dd.is_zero(), || format!("{what}: d∘d != 0 at degree {m}"))?;
    }
    Ok(())
}

fn rank_nullity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let p = [3u64, 5, 7, 13, 101][i % 5];
        let k = PrimeField::new(p).unwrap();
        let (rows, cols) = (rng.gen_range(1..=9), rng.gen_range(1..=9));
        // Sparse entries make rank deficiency common.
        let entries: Vec<Vec<i64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..p as i64) } else { 0 })
                    .collect()
            })
            .collect();
        let a = Matrix::from_i64(k, &entries);
        let ker = a.kernel_basis();
        eq("rank + nullity", a.rank() + ker.dim(), cols)?;
        eq("row rank vs column rank", a.transpose().rank(), a.rank())?;
        for v in ker.vectors() {
            ensure(a.mul_vec(&v).unwrap().iter().all(|c| c.is_zero()), || "kernel vector not killed".into())?;
        }
    }
    Ok(())
}

fn sign(f: PrimeField, l: usize, m: usize) -> Scalar {
    if l * m % 2 == 1 {
        f.neg(Scalar::ONE)
    } else {
        Scalar::ONE
    }
}

fn graded_commutativity(name: &str) -> Outcome {
    let r = data(name);
    let f = r.field;
    let bg = bg_complex(&r, 4).unwrap();
    let maps = ChainMaps::new(&r, 4).unwrap();
    let dims = bg.dims();
    for l in 0..=4 {
        for m in 0..=4 - l {
            for i in 0..dims[l] {
                for j in 0..dims[m] {
                    let ab = cup_classes(&r, &bg, &maps, (l, i), (m, j)).unwrap();
                    let ba = cup_classes(&r, &bg, &maps, (m, j), (l, i)).unwrap();
                    let s = sign(f, l, m);
                    let ba: Vec<Scalar> = ba.into_iter().map(|c| f.mul(s, c)).collect();
                    eq(&format!("{name}: small cup ({l},{i})x({m},{j})"), ab, ba)?;
                }
            }
        }
    }
    let ext = ExtDComplex::new(&r, 4).unwrap();
    let c = &ext.complex.invariant.complex;
    let coh: Vec<_> = (0..=4).map(|m| c.cohomology(m).unwrap()).collect();
    for l in 0..=4 {
        for m in 0..=4 - l {
            for i in 0..coh[l].dim() {
                for j in 0..coh[m].dim() {
                    let (a, b) = (coh[l].representative(i), coh[m].representative(j));
                    let ab = ext.complex.cup(&a, l, &b, m).unwrap();
                    let ba = ext.complex.cup(&b, m, &a, l).unwrap();
                    let s = sign(f, l, m);
                    let ba: Vec<Scalar> = ba.into_iter().map(|c| f.mul(s, c)).collect();
                    ensure(coh[l + m].class_equal(&ab, &ba).unwrap(), || {
                        format!("{name}: Ext-D cup ({l},{i})x({m},{j}) not graded commutative")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    for name in ["E1", "E2", "E3", "E4", "E5"] {
        let r = data(name);
        let bg = bg_complex(&r, 6).unwrap();
        d_squared_zero(&format!("{name} bg"), &bg.invariant.complex)?;
        let ext = ExtDComplex::new(&r, 3).unwrap();
        d_squared_zero(&format!("{name} Ext-D"), &ext.complex.bar.complex)?;
        d_squared_zero(&format!("{name} Ext-D invariant"), &ext.complex.invariant.complex)?;
        let dims = bg.dims();
        for i in 0..3 {
            eq(&format!("{name}: HH^{} vs HH^{}", 2 * i, 2 * i + 1), dims[2 * i], dims[2 * i + 1])?;
        }
    }
    for name in ["E1", "E2", "E3"] {
        let r = data(name);
        d_squared_zero(&format!("{name} bar"), &BarComplex::regular(r.b(), 3).unwrap().complex)?;
    }
    rank_nullity()?;
    for name in ["E1", "E2", "E3"] {
        graded_commutativity(name)?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("E1 dims, bar and Ext-D agreement through degree 4", criterion_1),
        ("E2 dims, bar agreement through degree 3", criterion_2),
        ("E3 gap pattern, bar and Ext-D agreement", criterion_3),
        ("E5 kernel of order 4, class-sum basis", criterion_4),
        ("E4 nonabelian, adjoint route, bar skipped", criterion_5),
        ("ring presentation on E1-E5", criterion_6),
        ("chain maps on E1-E3", criterion_7),
        ("Gamma is isomorphic to D", criterion_8),
        ("Hopf-Hochschild equals Hochschild", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (what, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:2}: PASS  {what} ({secs:.2}s)", i + 1),
            Err(e) => {
                println!("criterion {:2}: FAIL  {what} ({secs:.2}s): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
