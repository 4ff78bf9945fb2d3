use std::f64::consts::{FRAC_PI_2, TAU};

use cr_umbilic::ellipsoid::{EllipsoidSpec, Mode};
use cr_umbilic::scan::{
    cell_diagonal, chart_distance, distance_to_gamma, emit, emit_csv, gamma_chart, grid_axes, scan_grid,
    torus_param, torus_xyuv, verify_curve, Format, ScanConfig, Scanner, CONVERGED_TOL, CSV_HEADER,
    NORMALIZATION_NOTE,
};
use cr_umbilic::ScanError;
use proptest::prelude::*;

fn config(a: i64, b: i64, n: usize, workers: usize) -> ScanConfig {
    let mut c = ScanConfig::new(EllipsoidSpec::from_ints(a, b).unwrap());
    c.resolution = n;
    c.workers = workers;
    c
}

fn csv_bytes(c: &ScanConfig) -> Vec<u8> {
    let mut out = Vec::new();
    emit_csv(&scan_grid(c).unwrap().records, &mut out).unwrap();
    out
}

#[test]
fn grid_axes_layout() {
    let (eta, phi) = grid_axes(5);
    assert_eq!(eta.len(), 5);
    assert_eq!(phi.len(), 5);
    assert_eq!(eta[0], 0.0);
    assert!((eta[4] - FRAC_PI_2).abs() < 1e-15);
    assert!((phi[1] - TAU / 5.0).abs() < 1e-15);
    assert!(cell_diagonal(64) > 0.0 && cell_diagonal(64) < cell_diagonal(16));
}

#[test]
fn record_count_and_csv_shape() {
    let c = config(2, 3, 12, 2);
    let res = scan_grid(&c).unwrap();
    assert_eq!(res.records.len(), 12 * 12 * 12);
    let text = String::from_utf8(csv_bytes(&c)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 12 * 12 * 12 + 1);
    assert_eq!(lines[0], CSV_HEADER);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 12));
    let max = res.records.iter().map(|r| r.abs_i).fold(0.0, f64::max);
    assert!(max <= 1.0 + 1e-12);
}

#[test]
fn worker_count_does_not_change_output() {
    let one = csv_bytes(&config(2, 3, 16, 1));
    let three = csv_bytes(&config(2, 3, 16, 3));
    assert_eq!(one, three);
}

#[test]
fn converged_records_are_zeros_on_the_torus() {
    let c = config(2, 3, 16, 2);
    let spec = c.spec.clone();
    let res = scan_grid(&c).unwrap();
    assert!(res.converged > 0);
    let scanner = Scanner::new(&spec).unwrap();
    for r in res.records.iter().filter(|r| r.converged) {
        assert!(r.refined);
        assert!(r.abs_i < CONVERGED_TOL);
        assert!(scanner.value(r.chart()).norm() / res.scale < CONVERGED_TOL);
        let p = torus_xyuv(&spec, r.eta, r.phi1, r.phi2);
        for (x, y) in p.iter().zip(r.xyuv()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn curve_is_found_by_the_scan() {
    let c = config(2, 3, 24, 2);
    let spec = c.spec.clone();
    let res = scan_grid(&c).unwrap();
    let near = res.records.iter().filter(|r| r.converged).map(|r| distance_to_gamma(&spec, r.chart()));
    assert!(near.fold(f64::INFINITY, f64::min) < 1e-10);
    for k in 0..8 {
        let g = gamma_chart(&spec, TAU * k as f64 / 8.0);
        let hit = res
            .records
            .iter()
            .filter(|r| r.converged && chart_distance(r.chart(), g) < cell_diagonal(24))
            .any(|r| distance_to_gamma(&spec, r.chart()) < 1e-10);
        assert!(hit, "no converged zero near γ({k}/8·2π)");
    }
}

#[test]
fn verify_modes_agree() {
    for (a, b) in [("2", "3"), ("1", "2"), ("7/3", "9/2")] {
        let spec = EllipsoidSpec::parse(a, b).unwrap();
        let exact = verify_curve(&spec, Mode::Exact, 0).unwrap();
        let float = verify_curve(&spec, Mode::Float, 64).unwrap();
        assert!(exact.passed && float.passed, "{spec}");
        assert_eq!(float.samples, 64);
        assert!(float.max_normalized.unwrap() < CONVERGED_TOL);
    }
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    assert!(matches!(verify_curve(&spec, Mode::Float, 0), Err(ScanError::InvalidConfig(_))));
}

#[test]
fn refinement() {
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    let scanner = Scanner::new(&spec).unwrap();
    let scale = scanner.grid_scale(16);
    let g = gamma_chart(&spec, 0.7);
    let (on, steps) = scanner.refine_counted(g, scale);
    assert!(on.converged && steps <= 2);
    let start = [g[0] + 0.02, g[1] - 0.03, g[2] + 0.01];
    let r = scanner.refine(start, scale);
    assert!(r.converged);
    assert!(distance_to_gamma(&spec, r.chart()) < 1e-10);
    let p = torus_param(&spec, start[0], start[1], start[2]);
    let r2 = cr_umbilic::scan::refine_zero(&p, &spec).unwrap();
    assert!(r2.converged);
}

#[test]
fn perturbed_start_returns_to_the_curve() {
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    let g = gamma_chart(&spec, 0.3);
    let start = [g[0] + 1e-3, g[1] + 1e-3, g[2] - 1e-3];
    let r = cr_umbilic::scan::refine_zero(&torus_param(&spec, start[0], start[1], start[2]), &spec).unwrap();
    assert!(r.converged);
    assert!(distance_to_gamma(&spec, r.chart()) < 1e-6);
}

#[test]
fn empty_scan_is_header_only() {
    let mut out = Vec::new();
    emit_csv(&[], &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), format!("{CSV_HEADER}\n"));
}

#[test]
fn json_and_file_output() {
    let c = config(2, 3, 6, 1);
    let res = scan_grid(&c).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    emit(&res, &c, Format::Json, &path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["a"], "2");
    assert_eq!(doc["resolution"], 6);
    assert_eq!(doc["normalization"], NORMALIZATION_NOTE);
    assert_eq!(doc["records"].as_array().unwrap().len(), 216);
    let csv = dir.path().join("scan.csv");
    emit(&res, &c, Format::Csv, &csv).unwrap();
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 217);
    assert_eq!("csv".parse::<Format>(), Ok(Format::Csv));
    assert!("xml".parse::<Format>().is_err());
}

#[test]
fn invalid_configurations() {
    let mut c = config(2, 3, 1, 1);
    assert!(matches!(scan_grid(&c), Err(ScanError::InvalidConfig(_))));
    c.resolution = 8;
    c.threshold = 0.0;
    assert!(scan_grid(&c).is_err());
    c.threshold = 1e-2;
    c.workers = 0;
    assert!(scan_grid(&c).is_err());
    assert!(EllipsoidSpec::from_ints(1, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chart_round_trip(eta in 0.05f64..1.5, p1 in 0.0f64..TAU, p2 in 0.0f64..TAU) {
        let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
        let xyuv = torus_xyuv(&spec, eta, p1, p2);
        let back = cr_umbilic::scan::chart_of(&spec, xyuv);
        prop_assert!(chart_distance(back, [eta, p1, p2]) < 1e-12);
    }
}
