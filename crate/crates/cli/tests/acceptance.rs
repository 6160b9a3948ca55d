//! Acceptance suite: one line per criterion, then a hard assertion.
//!
//! Summary lines go to the raw stderr handle so they show up without
//! `--nocapture`.

use std::f64::consts::PI;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::Instant;

use grafting_lab::boundary::*;
use grafting_lab::curves::*;
use grafting_lab::graft::*;
use grafting_lab::surface::{FnCoords, PantsDecomposition, PantsSurface};
use grafting_lab::teich::*;
use grafting_lab::{CertifiedInterval, Surface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// tolerances
const ROUND_TRIP_TOL: f64 = 1e-6;
const ROUND_TRIP_SECONDS: f64 = 10.0;
const GRID_POINTS: usize = 500;
const MIN_CATALOG: usize = 10;
const SLOPE_LIMIT: f64 = 0.05;
const MINSKY_TOL: f64 = 1.0 + 1e-6;
const COLLAPSE_TOL: f64 = 1e-15;
const MODULI_TOL: f64 = 1e-12;
const MODULI_SAMPLES: usize = 10_000;
const ASYMPTOTIC_T: f64 = 1e8;
const ASYMPTOTIC_TOL: f64 = 1e-6;
const DILATATION_TOL: f64 = 1e-12;
const SECTOR_T: f64 = 1e6;
const SECTOR_TOL: f64 = 1e-4;
const REFINE_BUDGET: f64 = 0.01;
const WIDTH_FRACTION: f64 = 0.25;
const CERT_POINTS: usize = 60;
const REFINE_CERT: f64 = 0.05;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn bundled() -> (Surface, Catalog, WeightedMulticurve) {
    let s = Surface::from_json_str(&std::fs::read_to_string(example("genus2.surface.json")).unwrap()).unwrap();
    let cat = Catalog::from_json_str(&std::fs::read_to_string(example("genus2.catalog.json")).unwrap(), s.topology())
        .unwrap();
    let lam = WeightedMulticurve::parse("g1:1.0,g2:1.0", s.topology()).unwrap();
    (s, cat, lam)
}

fn bundled_rays() -> (GraftRay, TeichRayModel) {
    let (s, cat, lam) = bundled();
    let g = GraftRay::new(GraftParams::new(s.clone(), lam.clone()).unwrap(), &cat.curves).unwrap();
    let k0 = matched_k0(&lam, g.params().theta0);
    let m = TeichRayModel::with_constants(s, lam, &cat.curves, k0, DEFAULT_KAPPA).unwrap();
    (g, m)
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

fn genus_two(lengths: Vec<f64>, twists: Vec<f64>) -> Surface {
    PantsSurface::new(PantsDecomposition::genus_two(), FnCoords::new(lengths, twists).unwrap()).unwrap()
}

/// The shared 500-point grid: lengths log-uniform in [0.005, 0.5], twists in [-3, 3].
fn thin_grid() -> Vec<Surface> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6163_6365_7074);
    (0..GRID_POINTS)
        .map(|_| {
            let l = (0..3).map(|_| (rng.gen_range(0.005f64.ln()..0.5f64.ln())).exp()).collect();
            let t = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
            genus_two(l, t)
        })
        .collect()
}

fn slope(ys: &[f64]) -> f64 {
    let n = ys.len() as f64;
    let xm = (n - 1.0) / 2.0;
    let ym = ys.iter().sum::<f64>() / n;
    let num: f64 = ys.iter().enumerate().map(|(i, y)| (i as f64 - xm) * (y - ym)).sum();
    let den: f64 = (0..ys.len()).map(|i| (i as f64 - xm).powi(2)).sum();
    num / den
}

fn fn_round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let l: Vec<f64> = (0..3).map(|_| rng.gen_range(0.01..4.0)).collect();
        let t: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let s = genus_two(l.clone(), t.clone());
        for j in 0..3 {
            worst = worst.max((s.length_readback(j).unwrap() - l[j]).abs());
            worst = worst.max((s.twist_parameter_readback(j) - t[j]).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst <= ROUND_TRIP_TOL && secs < ROUND_TRIP_SECONDS,
        format!("max coordinate error {worst:.3e} (tol {ROUND_TRIP_TOL:.0e}), {secs:.2}s"),
    )
}

fn broken_arc_containment() -> Verdict {
    let topo = PantsDecomposition::genus_two();
    let cat = Catalog::genus_two();
    let curves: Vec<_> = cat.curves.iter().filter(|c| c.is_pants_curve().is_none()).collect();
    let cals: Vec<_> = curves.iter().map(|c| calibrate(&topo, c, DEFAULT_M).unwrap()).collect();
    let mut misses = 0;
    let mut total = 0;
    for s in thin_grid() {
        for (c, cal) in curves.iter().zip(&cals) {
            let exact = s.geodesic_length(c).unwrap();
            total += 1;
            if !broken_arc_estimate(&s, c, cal).unwrap().interval.contains(exact) {
                misses += 1;
            }
        }
    }
    let mut worst_slope = f64::NEG_INFINITY;
    let mut sup_err = 0.0f64;
    for c in &curves {
        let errs: Vec<f64> = (0..8)
            .map(|m| {
                let l = 0.1 * 0.5f64.powi(m);
                let s = genus_two(vec![l; 3], vec![0.0; 3]);
                (s.geodesic_length(c).unwrap() - central_value(&s, c).unwrap()).abs()
            })
            .collect();
        sup_err = errs.iter().copied().fold(sup_err, f64::max);
        worst_slope = worst_slope.max(slope(&errs));
    }
    verdict(
        curves.len() >= MIN_CATALOG && misses == 0 && sup_err.is_finite() && worst_slope <= SLOPE_LIMIT,
        format!(
            "{} curves, {misses}/{total} misses; sup |exact - central| {sup_err:.3}, worst slope {worst_slope:.4} per halving (limit {SLOPE_LIMIT})",
            curves.len()
        ),
    )
}

fn minsky_remark() -> Verdict {
    let topo = PantsDecomposition::genus_two();
    let duals: Vec<_> = (0..3).map(|j| dual_curve(&topo, j).unwrap()).collect();
    let mut worst = 0.0f64;
    for s in thin_grid() {
        for (j, dual) in duals.iter().enumerate() {
            let tw = s.curve_twisting_number(dual, j).unwrap();
            worst = worst.max((s.coords().twist(j) - tw).abs());
        }
    }
    verdict(worst <= MINSKY_TOL, format!("max |t_j - tw| = {worst:.6} (limit 1 + 1e-6)"))
}

fn grafting_bounds() -> Verdict {
    let (g, _) = bundled_rays();
    let snap = g.at(0.0).unwrap();
    let base = g.params().base.coords().lengths().to_vec();
    let collapse = snap
        .len_bounds
        .iter()
        .zip(&base)
        .map(|(b, l)| (b.lo() - l).abs().max((b.hi() - l).abs()))
        .fold(snap.dist_to_base.hi(), f64::max);

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut moduli = 0.0f64;
    for _ in 0..MODULI_SAMPLES {
        let l = rng.gen_range(0.01..4.0);
        let c = rng.gen_range(0.1..3.0);
        let t = 10f64.powf(rng.gen_range(-3.0..6.0));
        let a = annular_cover_bound(l, c, t).unwrap();
        let b = length_bounds(l, c, c, g.params().theta0, t).unwrap().hi();
        moduli = moduli.max((a - b).abs() / b.max(1.0));
    }

    let (th, cmax) = (g.params().theta0, g.params().c_max());
    let mut asym = 0.0f64;
    for &(j, c) in g.params().lam.components() {
        let b = g.grafted_length_bounds(ASYMPTOTIC_T, j).unwrap();
        let up = PI * base[j] / c;
        let lo = 2.0 * th * base[j] / cmax;
        asym = asym.max((ASYMPTOTIC_T * b.hi() - up).abs() / up);
        asym = asym.max((ASYMPTOTIC_T * b.lo() - lo).abs() / lo);
    }
    verdict(
        collapse <= COLLAPSE_TOL && moduli <= MODULI_TOL && asym <= ASYMPTOTIC_TOL,
        format!("t=0 collapse {collapse:.1e}, moduli mismatch {moduli:.1e} over {MODULI_SAMPLES}, relative t*bound error at 1e8 {asym:.1e}"),
    )
}

fn dilatation() -> Verdict {
    let grid = std::iter::once(0.0).chain(log_grid(1e-3, 1e6, 200));
    let worst = grid.map(|t| (dilatation_of_t(t).unwrap() - (t + 1.0)).abs()).fold(0.0, f64::max);
    verdict(worst <= DILATATION_TOL, format!("max |K(t) - (t+1)| = {worst:.1e} on [0, 1e6]"))
}

fn twist_budget() -> Verdict {
    let (g, _) = bundled_rays();
    let t0 = g.params().t0;
    let mut limit = 0.0f64;
    for &(_, c) in g.params().lam.components() {
        let d = sector_term(t0, c, SECTOR_T).unwrap() - 2.0 * SECTOR_T.ln();
        limit = limit.max((d - 2.0 * (2.0 * c / (t0 * PI)).ln()).abs());
    }
    let sup = |n: usize| {
        log_grid(10.0, 1e6, n)
            .iter()
            .flat_map(|&t| g.params().lam.components().iter().map(move |&(j, _)| (t, j)))
            .map(|(t, j)| g.twist_budget(t, j, t0).unwrap().hi())
            .fold(0.0, f64::max)
    };
    let (coarse, fine) = (sup(51), sup(501));
    let change = (fine - coarse).abs() / coarse;
    verdict(
        limit <= SECTOR_TOL && coarse.is_finite() && change < REFINE_BUDGET,
        format!(
            "sector limit error {limit:.1e}; sup B = {coarse:.4} (x10 grid {fine:.4}, change {:.3}%)",
            100.0 * change
        ),
    )
}

fn convergence() -> Verdict {
    let (g, _) = bundled_rays();
    let cat: Vec<_> = g.catalog().cloned().collect();
    let weight: Vec<f64> = cat.iter().map(|c| g.params().lam.intersection(c)).collect();
    let late = g.catalog_lengths(20f64.exp()).unwrap();
    let early = g.catalog_lengths(10f64.exp()).unwrap();
    let (mut all_contain, mut all_shrink) = (true, true);
    let (mut worst_late, mut worst_early, mut pairs) = (0.0f64, 0.0f64, 0);
    for a in 0..cat.len() {
        for b in 0..cat.len() {
            if a == b || weight[a] == 0.0 || weight[b] == 0.0 {
                continue;
            }
            pairs += 1;
            let target = weight[a] / weight[b];
            let r20 = ratio(late[a], late[b]).unwrap();
            let r10 = ratio(early[a], early[b]).unwrap();
            all_contain &= r20.contains(target);
            all_shrink &= r20.width() < r10.width();
            worst_late = worst_late.max(r20.width() / target);
            worst_early = worst_early.max(r10.width() / target);
        }
    }
    let detected = thurston_limit(&g, 20f64.exp()).unwrap().verdict == LimitVerdict::Detected { curves: vec![0, 1] };
    verdict(
        all_contain && all_shrink && worst_late <= WIDTH_FRACTION && detected,
        format!(
            "{pairs} pairs; worst width {:.1}% at e^20 vs {:.1}% at e^10; limit {}",
            100.0 * worst_late,
            100.0 * worst_early,
            if detected { "g1+g2" } else { "not detected" }
        ),
    )
}

fn certificate() -> Verdict {
    let (g, m) = bundled_rays();
    let run =
        |n| quasi_geodesic_certificate(&g, &m, &log_grid(1e2, 1e6, n), DEFAULT_EPS0, DEFAULT_SLACK, DEFAULT_BOUND);
    let coarse = run(CERT_POINTS).unwrap();
    let fine = run(10 * CERT_POINTS).unwrap();
    let (a, b) = (coarse.sup_distance.hi(), fine.sup_distance.hi());
    let change = (b - a).abs() / a;
    let mut matches = true;
    let mut worst = 0.0f64;
    for p in &coarse.per_t {
        for c in p.components.iter().filter(|c| g.params().lam.contains(c.curve)) {
            let pred = predicted_log_ratio(&g, &m, c.curve).unwrap();
            let widened = CertifiedInterval::new((pred.lo() - DEFAULT_SLACK).max(0.0), pred.hi() + DEFAULT_SLACK);
            matches &= widened.contains_interval(&c.log_ratio);
            worst = worst.max((c.log_ratio.hi() - pred.hi()).abs());
        }
    }
    verdict(
        coarse.pass && a.is_finite() && change < REFINE_CERT && matches,
        format!(
            "sup distance [{:.4}, {a:.4}] <= {DEFAULT_BOUND}, x10 grid {b:.4} (change {:.2}%), K0 = {:.4}; log ratio vs prediction off by {worst:.4} (slack {DEFAULT_SLACK})",
            coarse.sup_distance.lo(),
            100.0 * change,
            m.k0()
        ),
    )
}

fn compactness() -> Verdict {
    let (g, _) = bundled_rays();
    let grid = log_grid(1e2, 1e6, CERT_POINTS);
    let images: Vec<_> = grid.iter().map(|&t| ProductRegionImage::of_family(&g, t, DEFAULT_EPS0).unwrap()).collect();
    let good = pi0_compactness_check(&images, DEFAULT_COMPACT_M, DEFAULT_COMPACT_T);
    let violation = FnFamily {
        names: vec!["g1".into(), "g2".into(), "g3".into()],
        lengths: |t: f64| {
            vec![CertifiedInterval::point(0.1 / t), CertifiedInterval::point(0.1 / t), CertifiedInterval::point(1.0)]
        },
        // twist parameter of the thick curve equal to t
        twists: |t: f64| {
            vec![CertifiedInterval::new(0.0, 1.0), CertifiedInterval::new(0.0, 1.0), CertifiedInterval::point(t)]
        },
    };
    let images: Vec<_> =
        grid.iter().map(|&t| ProductRegionImage::of_family(&violation, t, DEFAULT_EPS0).unwrap()).collect();
    let bad = pi0_compactness_check(&images, DEFAULT_COMPACT_M, DEFAULT_COMPACT_T);
    verdict(
        good.pass && !bad.pass && bad.witness.is_some(),
        format!(
            "grafting family lengths [{:.3}, {:.3}], |twist| <= {:.2} (M = {DEFAULT_COMPACT_M}, T = {DEFAULT_COMPACT_T}); violation witness {:?}",
            good.min_length,
            good.max_length,
            good.max_abs_twist,
            bad.witness.map(|w| (w.0, w.1))
        ),
    )
}

fn cli_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_grafting-lab");
    let dir = tempfile::tempdir().unwrap();
    let surface = example("genus2.surface.json");
    let catalog = example("genus2.catalog.json");
    let io = |out: &PathBuf| {
        vec![
            "--surface".to_string(),
            surface.display().to_string(),
            "--catalog".into(),
            catalog.display().to_string(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let lam = ["--lam", "g1:1.0,g2:1.0"];
    let runs: Vec<(&str, Vec<&str>, i32)> = vec![
        ("length", vec![], 0),
        ("length", vec!["--format", "json"], 0),
        ("graft-ray", lam.to_vec(), 0),
        ("teich-ray", [&lam[..], &["--format", "json"]].concat(), 0),
        ("converge", lam.to_vec(), 0),
        ("converge", [&lam[..], &["--t-min", "2", "--t-max", "3"]].concat(), 2),
        ("distance", lam.to_vec(), 0),
        ("certify", [&lam[..], &["--format", "json"]].concat(), 0),
        ("certify", lam.to_vec(), 0),
    ];
    let mut bad = Vec::new();
    for (k, (cmd, extra, want)) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let out = dir.path().join(format!("{k}-{rep}.out"));
            let status = Command::new(bin).arg(cmd).args(io(&out)).args(extra).stderr(Stdio::null()).status().unwrap();
            if status.code() != Some(*want) {
                bad.push(format!("{cmd} exit {:?} (want {want})", status.code()));
            }
            outputs.push(std::fs::read(&out).unwrap_or_default());
        }
        if outputs[0].is_empty() || outputs[0] != outputs[1] {
            bad.push(format!("{cmd} {extra:?} output differs"));
        }
    }
    verdict(
        bad.is_empty(),
        format!(
            "{} bundled runs, two each; {}",
            runs.len(),
            if bad.is_empty() { "byte-identical, exit codes as expected".to_string() } else { bad.join("; ") }
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 FN round trip", fn_round_trip),
        ("2 broken-arc containment", broken_arc_containment),
        ("3 Minsky remark", minsky_remark),
        ("4 grafting bounds", grafting_bounds),
        ("5 dilatation identity", dilatation),
        ("6 twist budget", twist_budget),
        ("7 convergence", convergence),
        ("8 quasi-geodesic certificate", certificate),
        ("9 compactness", compactness),
        ("10 CLI determinism", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            verdict(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        let line = format!(
            "criterion {name}: {} ({:.1}s) {}\n",
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
        std::io::stderr().lock().write_all(line.as_bytes()).unwrap();
        if !v.pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
