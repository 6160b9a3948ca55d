use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use grafting_lab::boundary::{
    assemble, certificate_point, pi0_compactness_check, predicted_log_ratio, thurston_limit, CertificatePoint,
    LimitVerdict, ProductRegionImage, SurfaceFamily,
};
use grafting_lab::curves::{broken_arc_estimate, calibrate, Catalog, WeightedMulticurve};
use grafting_lab::graft::{GraftParams, GraftRay};
use grafting_lab::teich::{matched_k0, teich_distance, TeichRayModel, DEFAULT_K0};
use grafting_lab::Surface;
use rayon::prelude::*;
use serde_json::json;

use crate::output::{emit, json_text, lo_hi, num, render, Cell, Table, SCHEMA};
use crate::{ConvergeArgs, Family, Format, Grid, Io, LengthArgs, Outcome, Overrides, RayArgs};

const SWEEP_HEADER: &[&str] = &["t", "curve_id", "len_lo", "len_hi", "twistbudget_hi", "dist_lo", "dist_hi"];
const DISTANCE_HEADER: &[&str] = &["t", "curve_id", "dist_lo", "dist_hi", "log_ratio_lo", "log_ratio_hi"];

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(io: &Io) -> Result<(Surface, Catalog)> {
    let surface = Surface::from_json_str(&read(&io.surface)?).with_context(|| io.surface.display().to_string())?;
    let catalog = Catalog::from_json_str(&read(&io.catalog)?, surface.topology())
        .with_context(|| io.catalog.display().to_string())?;
    Ok((surface, catalog))
}

fn log_grid(g: &Grid) -> Result<Vec<f64>> {
    if !(g.t_min > 0.0 && g.t_min.is_finite()) {
        bail!("--t-min must be positive for a log-spaced grid, got {}", g.t_min);
    }
    if !(g.t_max >= g.t_min && g.t_max.is_finite()) {
        bail!("--t-max {} must be finite and at least --t-min {}", g.t_max, g.t_min);
    }
    if g.steps < 2 {
        bail!("--steps must be at least 2, got {}", g.steps);
    }
    let ratio = g.t_max / g.t_min;
    let last = (g.steps - 1) as f64;
    Ok((0..g.steps)
        .map(|k| match k {
            0 => g.t_min,
            k if k + 1 == g.steps => g.t_max,
            k => g.t_min * ratio.powf(k as f64 / last),
        })
        .collect())
}

fn multicurve(g: &Grid, s: &Surface) -> Result<WeightedMulticurve> {
    WeightedMulticurve::parse(&g.lam, s.topology()).with_context(|| format!("--lam \"{}\"", g.lam))
}

fn graft_ray(s: &Surface, cat: &Catalog, lam: &WeightedMulticurve, o: &Overrides) -> Result<GraftRay> {
    let mut p = GraftParams::new(s.clone(), lam.clone())?.with_t0(o.t0)?.with_m(o.m);
    if let Some(th) = o.theta0 {
        p = p.with_theta0(th)?;
    }
    Ok(GraftRay::new(p, &cat.curves)?)
}

fn teich_model(s: &Surface, cat: &Catalog, lam: &WeightedMulticurve, o: &Overrides, k0: f64) -> Result<TeichRayModel> {
    Ok(TeichRayModel::with_constants(s.clone(), lam.clone(), &cat.curves, k0, o.kappa)?)
}

/// Both rays with the model normalized against the grafting ray.
fn matched_pair(a: &RayArgs) -> Result<(GraftRay, TeichRayModel)> {
    let (s, cat) = load(&a.io)?;
    let lam = multicurve(&a.grid, &s)?;
    let g = graft_ray(&s, &cat, &lam, &a.over)?;
    let k0 = a.over.k0.unwrap_or_else(|| matched_k0(&lam, g.params().theta0));
    let m = teich_model(&s, &cat, &lam, &a.over, k0)?;
    Ok((g, m))
}

fn par_rows<F>(grid: &[f64], f: F) -> Result<Vec<Vec<Cell>>>
where
    F: Fn(f64) -> Result<Vec<Vec<Cell>>> + Sync,
{
    let blocks = grid.par_iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

pub fn length(a: &LengthArgs) -> Result<Outcome> {
    let (s, cat) = load(&a.io)?;
    let topo = s.topology();
    let rows = cat
        .curves
        .par_iter()
        .map(|c| -> Result<Vec<Cell>> {
            let exact = s.geodesic_length(c)?;
            let cal = calibrate(topo, c, a.m)?;
            let est = broken_arc_estimate(&s, c, &cal)?;
            let [lo, hi] = lo_hi(est.interval);
            Ok(vec![
                c.id.clone().into(),
                exact.into(),
                est.central.into(),
                lo,
                hi,
                cal.c.into(),
                est.interval.contains(exact).into(),
                est.pants_curve.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t =
        Table::new(&["curve_id", "exact", "central", "est_lo", "est_hi", "calibration", "contains", "pants_curve"]);
    let all = rows.iter().all(|r| matches!(r[6], Cell::Bool(true)));
    rows.into_iter().for_each(|r| t.push(r));
    emit(&a.io, &render(&t, a.io.format, "length", json!({ "m": a.m, "all_contained": all }))?)?;
    Ok(Outcome::Done)
}

pub fn graft_ray_sweep(a: &RayArgs) -> Result<Outcome> {
    let (s, cat) = load(&a.io)?;
    let lam = multicurve(&a.grid, &s)?;
    let g = graft_ray(&s, &cat, &lam, &a.over)?;
    let grid = log_grid(&a.grid)?;
    let rows = par_rows(&grid, |t| {
        let snap = g.at(t)?;
        let [dl, dh] = lo_hi(snap.dist_to_base);
        cat.curves
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let [lo, hi] = lo_hi(g.curve_length_bounds(t, k)?);
                let budget = c.is_pants_curve().and_then(|j| snap.twist_budget[j]).map(|b| b.hi());
                Ok(vec![t.into(), c.id.clone().into(), lo, hi, budget.into(), dl.clone(), dh.clone()])
            })
            .collect()
    })?;
    let mut table = Table::new(SWEEP_HEADER);
    rows.into_iter().for_each(|r| table.push(r));
    let p = g.params();
    let extra = json!({ "family": "graft", "theta0": p.theta0, "eps0": p.eps0, "t0": p.t0, "lam": a.grid.lam });
    emit(&a.io, &render(&table, a.io.format, "graft-ray", extra)?)?;
    Ok(Outcome::Done)
}

pub fn teich_ray(a: &RayArgs) -> Result<Outcome> {
    let (s, cat) = load(&a.io)?;
    let lam = multicurve(&a.grid, &s)?;
    let m = teich_model(&s, &cat, &lam, &a.over, a.over.k0.unwrap_or(DEFAULT_K0))?;
    let grid = log_grid(&a.grid)?;
    let products = m.twist_products();
    let rows = par_rows(&grid, |t| {
        let lengths = m.catalog_lengths(t)?;
        let d = teich_distance(t)?;
        Ok(cat
            .curves
            .iter()
            .zip(lengths)
            .map(|(c, l)| {
                let [lo, hi] = lo_hi(l);
                let budget = c.is_pants_curve().map(|j| products[j].hi());
                vec![t.into(), c.id.clone().into(), lo, hi, budget.into(), d.into(), d.into()]
            })
            .collect())
    })?;
    let mut table = Table::new(SWEEP_HEADER);
    rows.into_iter().for_each(|r| table.push(r));
    let extra = json!({ "family": "teich", "k0": m.k0(), "kappa": m.kappa(), "lam": a.grid.lam });
    emit(&a.io, &render(&table, a.io.format, "teich-ray", extra)?)?;
    Ok(Outcome::Done)
}

fn verdict_text(v: &LimitVerdict, names: &[String]) -> String {
    match v {
        LimitVerdict::Detected { curves } => {
            format!("detected:{}", curves.iter().map(|&j| names[j].as_str()).collect::<Vec<_>>().join("+"))
        }
        LimitVerdict::Inconclusive { feasible } => format!("inconclusive:{}", feasible.len()),
    }
}

pub fn converge(a: &ConvergeArgs) -> Result<Outcome> {
    let r = &a.ray;
    let (g, m) = matched_pair(r)?;
    let family: &dyn SurfaceFamily = match a.family {
        Family::Graft => &g,
        Family::Teich => &m,
    };
    let grid = log_grid(&r.grid)?;
    let names = family.curve_names();
    let limits = grid.par_iter().map(|&t| Ok(thurston_limit(family, t)?)).collect::<Result<Vec<_>>>()?;
    let mut table =
        Table::new(&["t", "curve_id", "scaled_lo", "scaled_hi", "normalized_lo", "normalized_hi", "verdict"]);
    for lim in &limits {
        let v = verdict_text(&lim.verdict, &names);
        for (k, id) in lim.curve_ids.iter().enumerate() {
            let [sl, sh] = lo_hi(lim.scaled[k]);
            let [nl, nh] = lo_hi(lim.normalized[k]);
            table.push(vec![lim.t.into(), id.clone().into(), sl, sh, nl, nh, v.clone().into()]);
        }
    }
    let last = limits.last().expect("grid has at least two points");
    let verdict = verdict_text(&last.verdict, &names);
    let extra = json!({ "family": family.label(), "t_max": last.t, "verdict": verdict, "lam": r.grid.lam });
    emit(&r.io, &render(&table, r.io.format, "converge", extra)?)?;
    Ok(match &last.verdict {
        LimitVerdict::Detected { .. } => Outcome::Done,
        LimitVerdict::Inconclusive { feasible } => Outcome::Inconclusive(format!(
            "{} candidate limits fit at t = {}; increase --t-max",
            feasible.len(),
            last.t
        )),
    })
}

fn distance_rows(points: &[CertificatePoint], names: &[String]) -> Table {
    let mut table = Table::new(DISTANCE_HEADER);
    for p in points {
        for c in &p.components {
            let [dl, dh] = lo_hi(c.distance);
            let [rl, rh] = lo_hi(c.log_ratio);
            table.push(vec![p.t.into(), names[c.curve].clone().into(), dl, dh, rl, rh]);
        }
        let [dl, dh] = lo_hi(p.distance);
        table.push(vec![p.t.into(), "total".into(), dl, dh, Cell::Empty, Cell::Empty]);
    }
    table
}

fn points(a: &RayArgs, g: &GraftRay, m: &TeichRayModel) -> Result<Vec<CertificatePoint>> {
    let grid = log_grid(&a.grid)?;
    grid.par_iter().map(|&t| Ok(certificate_point(g, m, t, a.over.eps0, a.over.slack)?)).collect()
}

pub fn distance(a: &RayArgs) -> Result<Outcome> {
    let (g, m) = matched_pair(a)?;
    let pts = points(a, &g, &m)?;
    let names = SurfaceFamily::curve_names(&g);
    let table = distance_rows(&pts, &names);
    let extra = json!({ "k0": m.k0(), "kappa": m.kappa(), "slack": a.over.slack, "eps0": a.over.eps0 });
    emit(&a.io, &render(&table, a.io.format, "distance", extra)?)?;
    Ok(Outcome::Done)
}

pub fn certify(a: &RayArgs) -> Result<Outcome> {
    let (g, m) = matched_pair(a)?;
    let names = SurfaceFamily::curve_names(&g);
    let pts = points(a, &g, &m)?;
    let images =
        pts.par_iter().map(|p| Ok(ProductRegionImage::of_family(&g, p.t, a.over.eps0)?)).collect::<Result<Vec<_>>>()?;
    let compact = pi0_compactness_check(&images, a.over.m, a.over.t_bound);
    let cert = assemble(pts, a.over.bound)?;
    let predicted = g
        .params()
        .lam
        .components()
        .iter()
        .map(|&(j, _)| Ok((names[j].clone(), json!(predicted_log_ratio(&g, &m, j)?))))
        .collect::<Result<serde_json::Map<_, _>>>()?;
    let text = match a.io.format {
        Format::Csv => distance_rows(&cert.per_t, &names).to_csv(),
        Format::Json => json_text(&json!({
            "schema": SCHEMA,
            "command": "certify",
            "sup_distance": cert.sup_distance,
            "bound": cert.bound,
            "pass": cert.pass,
            "k0": m.k0(),
            "kappa": m.kappa(),
            "theta0": g.params().theta0,
            "slack": a.over.slack,
            "eps0": a.over.eps0,
            "predicted_log_ratio": predicted,
            "pi0_compactness": compact,
            "per_t": cert.per_t,
        }))?,
    };
    emit(&a.io, &text)?;
    eprintln!(
        "sup distance [{}, {}], bound {}, {}",
        num(cert.sup_distance.lo()),
        num(cert.sup_distance.hi()),
        num(cert.bound),
        if cert.pass { "pass" } else { "not certified" }
    );
    Ok(if cert.pass {
        Outcome::Done
    } else {
        Outcome::Inconclusive(format!("sup distance upper end {} exceeds {}", cert.sup_distance.hi(), cert.bound))
    })
}
