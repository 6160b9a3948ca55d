use approx::assert_abs_diff_eq;
use grafting_lab::curves::*;
use grafting_lab::surface::{FnCoords, PantsDecomposition, PantsSurface, Side};
use grafting_lab::LabError;

fn genus_two(lengths: [f64; 3], twists: [f64; 3]) -> PantsSurface<f64> {
    let coords = FnCoords::new(lengths.to_vec(), twists.to_vec()).unwrap();
    PantsSurface::new(PantsDecomposition::genus_two(), coords).unwrap()
}

fn seam(from: usize, to: usize) -> Step {
    Step::Seam { from, to, slot: None }
}

fn wind(curve: usize, turns: i64) -> Step {
    Step::Wind { curve, turns }
}

fn lp(curve: usize, turns: i64) -> Step {
    Step::Loop { curve, turns }
}

#[test]
fn dual_intersections() {
    let topo = PantsDecomposition::genus_two();
    for j in 0..3 {
        let d = dual_curve(&topo, j).unwrap();
        for h in 0..3 {
            assert_eq!(d.intersection_number(h), if h == j { 2 } else { 0 });
        }
    }
    let torus = PantsDecomposition::punctured_torus();
    assert_eq!(dual_curve(&torus, 0).unwrap().intersection_number(0), 1);
    let g = CurveClass::pants_curve("g1", 0);
    assert_eq!(g.intersection_number(0), 0);
    assert_eq!(dual_of(&topo, &dual_curve(&topo, 0).unwrap()), Err(LabError::DualOfNonPantsCurve));
}

#[test]
fn punctured_torus_dual_has_length() {
    let coords = FnCoords::new(vec![0.8], vec![0.3]).unwrap();
    let s = PantsSurface::new(PantsDecomposition::punctured_torus(), coords).unwrap();
    let d = dual_curve(s.topology(), 0).unwrap();
    let l = s.geodesic_length(&d).unwrap();
    // collar lemma: a curve crossing g1 is longer than the collar width
    assert!(l > 2.0 * (1.0 / (0.4f64).sinh()).asinh());
}

#[test]
fn catalog_curves_are_normal_and_hyperbolic() {
    let topo = PantsDecomposition::genus_two();
    let cat = Catalog::genus_two();
    assert!(cat.curves.iter().filter(|c| c.is_pants_curve().is_none()).count() >= 10);
    let s = genus_two([0.3, 0.5, 0.7], [0.1, -0.2, 0.4]);
    for c in &cat.curves {
        let n = c.normalize(&topo).unwrap();
        assert_eq!(n.steps(), c.steps(), "{}", c.id);
        assert!(s.geodesic_length(c).unwrap() > 0.0);
    }
}

#[test]
fn catalog_json_round_trip() {
    let topo = PantsDecomposition::genus_two();
    let cat = Catalog::genus_two();
    let text = serde_json::to_string(&cat.to_json(&topo)).unwrap();
    let back = Catalog::from_json_str(&text, &topo).unwrap();
    let s = genus_two([0.3, 0.5, 0.7], [0.1, -0.2, 0.4]);
    for (a, b) in cat.curves.iter().zip(&back.curves) {
        assert_eq!(a.id, b.id);
        assert_abs_diff_eq!(s.geodesic_length(a).unwrap(), s.geodesic_length(b).unwrap(), epsilon = 1e-12);
    }
}

#[test]
fn catalog_schema_errors() {
    let topo = PantsDecomposition::genus_two();
    let bad = r#"[{"id": "x", "itinerary": [["seam", 0, 1], ["twirl", 1, 0]]}]"#;
    match Catalog::from_json_str(bad, &topo).unwrap_err() {
        LabError::Schema(m) => assert!(m.starts_with("/0/itinerary/1/0"), "{m}"),
        e => panic!("{e}"),
    }
    let open = r#"[{"id": "x", "itinerary": [["seam", 0, 1], ["wind", 1, 0]]}]"#;
    match Catalog::from_json_str(open, &topo).unwrap_err() {
        LabError::Schema(m) => assert!(m.starts_with("/0/itinerary"), "{m}"),
        e => panic!("{e}"),
    }
}

#[test]
fn expanded_seam_normalizes_to_h_ii() {
    let topo = PantsDecomposition::genus_two();
    // H_12, once around g2, back along H_21: this is H_11
    let expanded = CurveClass::broken("x", vec![seam(0, 1), lp(1, 1), seam(1, 0), wind(0, 0), seam(0, 0), wind(0, 0)]);
    let n = expanded.normalize(&topo).unwrap();
    assert_eq!(n.steps().len(), 4);
    assert!(matches!(n.steps()[0], Step::Seam { from: 0, to: 0, .. }));
    let s = genus_two([0.4, 0.9, 0.6], [0.3, 0.1, -0.7]);
    assert_abs_diff_eq!(s.geodesic_length(&n).unwrap(), s.geodesic_length(&expanded).unwrap(), epsilon = 1e-9);
    // idempotent
    assert_eq!(n.normalize(&topo).unwrap(), n);
}

#[test]
fn backtracking_seams_cancel() {
    let topo = PantsDecomposition::genus_two();
    let d1 = dual_curve(&topo, 0).unwrap();
    let mut steps = d1.steps().to_vec();
    // splice a trip out to g3 and straight back after the first seam
    steps.splice(1..1, [lp(0, 0), seam(0, 2), lp(2, 0), seam(2, 0)]);
    let c = CurveClass::broken("x", steps);
    let n = c.normalize(&topo).unwrap();
    assert_eq!(n.intersections(3), vec![2, 0, 0]);
    let s = genus_two([0.4, 0.9, 0.6], [0.3, 0.1, -0.7]);
    assert_abs_diff_eq!(s.geodesic_length(&n).unwrap(), s.geodesic_length(&d1).unwrap(), epsilon = 1e-9);
}

/// Hand-built itineraries, some with removable detours.
fn zoo() -> Vec<CurveClass> {
    let mut out = Vec::new();
    let cat = Catalog::genus_two();
    for c in cat.curves.iter().filter(|c| c.is_pants_curve().is_none()) {
        out.push(c.clone());
    }
    let topo = PantsDecomposition::genus_two();
    for (k, c) in cat.curves.iter().filter(|c| c.is_pants_curve().is_none()).enumerate() {
        let steps = c.steps().to_vec();
        let Step::Seam { from: a, to: b, .. } = steps[0] else { unreachable!() };
        // detour to the third curve of the pant and back
        let other = (0..3).find(|x| *x != a && *x != b).unwrap();
        let mut detoured = vec![seam(a, other), lp(other, 0), seam(other, a), lp(a, 0)];
        if a == b {
            detoured.extend_from_slice(&steps);
        } else {
            detoured.push(steps[0]);
            detoured.extend_from_slice(&steps[1..]);
        }
        let start = c.resolve(&topo).unwrap();
        let grafting_lab::surface::Move::Seam { from, .. } = start[0] else { unreachable!() };
        out.push(CurveClass::broken(format!("z{k}"), detoured).with_start(from));
    }
    out
}

#[test]
fn normalization_keeps_crossings_and_length() {
    let topo = PantsDecomposition::genus_two();
    let s = genus_two([0.2, 1.1, 0.45], [-0.6, 0.25, 1.3]);
    let zoo = zoo();
    assert!(zoo.len() >= 20);
    for c in &zoo {
        let n = c.normalize(&topo).unwrap();
        assert_eq!(n.intersections(3), c.intersections(3), "{}", c.id);
        assert_abs_diff_eq!(s.geodesic_length(&n).unwrap(), s.geodesic_length(c).unwrap(), epsilon = 1e-8);
        assert!(n.steps().len() <= c.steps().len());
    }
}

#[test]
fn estimate_thin_dual() {
    let topo = PantsDecomposition::genus_two();
    let d1 = dual_curve(&topo, 0).unwrap();
    let cal = calibrate(&topo, &d1, DEFAULT_M).unwrap();
    let s = genus_two([0.01; 3], [0.0; 3]);
    let est = broken_arc_estimate(&s, &d1, &cal).unwrap();
    assert!((est.central - 4.0 * 100f64.ln()).abs() < 0.05, "{}", est.central);
    assert!(est.interval.contains(s.geodesic_length(&d1).unwrap()));
}

#[test]
fn estimate_for_pants_curve_is_flagged() {
    let topo = PantsDecomposition::genus_two();
    let g = CurveClass::pants_curve("g1", 0);
    let cal = calibrate(&topo, &g, DEFAULT_M).unwrap();
    let s = genus_two([0.2, 0.3, 0.4], [0.0; 3]);
    let est = broken_arc_estimate(&s, &g, &cal).unwrap();
    assert!(est.pants_curve);
    assert_eq!(est.interval.lo(), 0.0);
    assert!(est.interval.contains(0.2));
}

#[test]
fn estimate_requires_thin_regime() {
    let topo = PantsDecomposition::genus_two();
    let d1 = dual_curve(&topo, 0).unwrap();
    let cal = Calibration { m: 4.0, c: 1.0 };
    let s = genus_two([0.2, 4.5, 0.4], [0.0; 3]);
    assert!(matches!(broken_arc_estimate(&s, &d1, &cal), Err(LabError::ThinRegime { .. })));
}

#[test]
fn twist_slope() {
    let topo = PantsDecomposition::genus_two();
    let d1 = dual_curve(&topo, 0).unwrap();
    let l1 = 0.05;
    let at = |t: f64| genus_two([l1, 0.1, 0.1], [t, 0.0, 0.0]);
    let c0 = central_value(&at(2.3), &d1).unwrap();
    let c1 = central_value(&at(3.3), &d1).unwrap();
    assert!(((c1 - c0) - 2.0 * l1).abs() < 0.2 * l1);
    // the exact length follows the twist term once it dominates (Tw l >> 1)
    let h = 1e-4;
    let t = 200.0;
    let slope = (at(t + h).geodesic_length(&d1).unwrap() - at(t - h).geodesic_length(&d1).unwrap()) / (2.0 * h);
    assert!((slope - 2.0 * l1).abs() < 0.02 * l1, "{slope}");
}

#[test]
fn length_is_lipschitz_in_coordinates() {
    let topo = PantsDecomposition::genus_two();
    let cat = Catalog::genus_two();
    let base = genus_two([0.3, 0.6, 0.9], [0.2, -0.5, 1.1]);
    let d = 1e-5;
    for c in &cat.curves {
        let l0 = base.geodesic_length(c).unwrap();
        for j in 0..3 {
            let bumped = base.coords().clone().with_length(j, base.coords().length(j) + d).unwrap();
            let s = PantsSurface::new(topo.clone(), bumped).unwrap();
            assert!((s.geodesic_length(c).unwrap() - l0).abs() <= 100.0 * d);
            let twisted = base.coords().clone().with_twist(j, base.coords().twist(j) + d);
            let s = PantsSurface::new(topo.clone(), twisted).unwrap();
            assert!((s.geodesic_length(c).unwrap() - l0).abs() <= 100.0 * d);
        }
    }
}

#[test]
fn explicit_start_side() {
    let topo = PantsDecomposition::genus_two();
    let c = CurveClass::broken("x", vec![seam(0, 0), wind(0, 0), seam(0, 0), wind(0, 0)]).with_start(Side::new(1, 0));
    let s = genus_two([0.4, 0.9, 0.6], [0.3, 0.1, -0.7]);
    let d = dual_curve(&topo, 0).unwrap();
    assert_abs_diff_eq!(s.geodesic_length(&c).unwrap(), s.geodesic_length(&d).unwrap(), epsilon = 1e-9);
}
