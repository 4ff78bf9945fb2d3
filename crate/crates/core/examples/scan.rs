//! Scans E(2,3) on a 64³ grid, refines candidates and reports how the
//! converged zeros sit relative to the curve γ.

use std::f64::consts::TAU;
use std::time::Instant;

use cr_umbilic::ellipsoid::EllipsoidSpec;
use cr_umbilic::scan::{cell_diagonal, chart_distance, distance_to_gamma, gamma_chart, scan_grid, ScanConfig};

fn main() {
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    let mut config = ScanConfig::new(spec.clone());
    if let Some(w) = std::env::args().nth(1) {
        config.workers = w.parse().expect("worker count");
    }
    let t = Instant::now();
    let res = scan_grid(&config).unwrap();
    println!(
        "{} records, {} candidates, {} refined, {} converged in {:.2?}",
        res.records.len(),
        res.candidates,
        res.refined,
        res.converged,
        t.elapsed()
    );
    let diag = cell_diagonal(config.resolution);
    let conv: Vec<[f64; 3]> = res.records.iter().filter(|r| r.converged).map(|r| r.chart()).collect();
    let mut worst_near: f64 = 0.0;
    let mut worst_curve: f64 = 0.0;
    for k in 0..32 {
        let g = gamma_chart(&spec, TAU * k as f64 / 32.0);
        let best = conv
            .iter()
            .filter(|c| chart_distance(**c, g) <= diag)
            .map(|c| (chart_distance(*c, g), distance_to_gamma(&spec, *c)))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((near, curve)) => {
                worst_near = worst_near.max(near);
                worst_curve = worst_curve.max(curve);
            }
            None => println!("theta_{k}: no converged point within one cell"),
        }
    }
    println!("max distance to gamma(theta_k): {worst_near:.3e}, max distance to gamma(R): {worst_curve:.3e}");
}
