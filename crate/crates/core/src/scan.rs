//! Numeric scan of an ellipsoid for zeros of the invariant: grid evaluation,
//! Gauss–Newton refinement, curve verification and CSV/JSON output.
//!
//! Reported magnitudes are `|I| = 12|num|/|ρ_branch|⁴` divided by the largest
//! value seen on the grid. The invariant is only defined up to a nowhere
//! vanishing factor, so only the zero set carries meaning and the scale is a
//! presentation choice.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{certify_fixed, CertificateReport};
use crate::ellipsoid::{ellipsoid_rho, gamma_xyuv, residual_xyuv, EllipsoidSpec, Mode};
use crate::error::ScanError;
use crate::invariant::{Branch, BranchChoice, CartanInvariant};
use crate::poly4::{Exp, FloatPoly, SurfacePoint, Var};

/// Relative magnitude below which a refined point counts as a zero.
pub const CONVERGED_TOL: f64 = 1e-9;
/// Gauss–Newton step norm below which iteration stops.
pub const STEP_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 50;
const TIKHONOV: f64 = 1e-12;
/// Grid size per axis of the reference grid used to fix the scale outside a
/// full scan.
pub const REFERENCE_RESOLUTION: usize = 16;

pub const CSV_HEADER: &str = "eta,phi1,phi2,x,y,u,v,re_i,im_i,abs_i,refined,converged";

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub spec: EllipsoidSpec,
    pub resolution: usize,
    pub threshold: f64,
    pub refine: bool,
    pub workers: usize,
    pub seed: u64,
    /// Cap on refined candidates; a seeded subsample is refined beyond it.
    pub max_refine: usize,
}

impl ScanConfig {
    pub fn new(spec: EllipsoidSpec) -> Self {
        ScanConfig {
            spec,
            resolution: 64,
            threshold: 1e-2,
            refine: true,
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            seed: 0,
            max_refine: 1 << 16,
        }
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        if self.resolution < 2 {
            return Err(ScanError::InvalidConfig("resolution must be at least 2".into()));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(ScanError::InvalidConfig("threshold must lie in (0, 1)".into()));
        }
        if self.workers == 0 {
            return Err(ScanError::InvalidConfig("workers must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRecord {
    pub eta: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
    pub re_i: f64,
    pub im_i: f64,
    pub abs_i: f64,
    pub refined: bool,
    pub converged: bool,
}

impl ScanRecord {
    pub fn chart(&self) -> [f64; 3] {
        [self.eta, self.phi1, self.phi2]
    }

    pub fn xyuv(&self) -> [f64; 4] {
        [self.x, self.y, self.u, self.v]
    }

    fn csv_line(&self) -> String {
        let f = |v: f64| format!("{v:.16e}");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            f(self.eta),
            f(self.phi1),
            f(self.phi2),
            f(self.x),
            f(self.y),
            f(self.u),
            f(self.v),
            f(self.re_i),
            f(self.im_i),
            f(self.abs_i),
            self.refined,
            self.converged
        )
    }
}

/// `(x, y, u, v) = (cos η cos φ₁/√a, cos η sin φ₁, sin η cos φ₂/√b, sin η sin φ₂)`.
pub fn torus_param(spec: &EllipsoidSpec, eta: f64, phi1: f64, phi2: f64) -> SurfacePoint<Complex64> {
    SurfacePoint::from_xyuv(torus_xyuv(spec, eta, phi1, phi2))
}

pub fn torus_xyuv(spec: &EllipsoidSpec, eta: f64, phi1: f64, phi2: f64) -> [f64; 4] {
    let (se, ce) = eta.sin_cos();
    let (s1, c1) = phi1.sin_cos();
    let (s2, c2) = phi2.sin_cos();
    [ce * c1 / spec.a_f64().sqrt(), ce * s1, se * c2 / spec.b_f64().sqrt(), se * s2]
}

/// Canonical chart `(η, φ₁, φ₂) ∈ [0, π/2] × [0, 2π)²` of a surface point.
pub fn chart_of(spec: &EllipsoidSpec, p: [f64; 4]) -> [f64; 3] {
    let sa = spec.a_f64().sqrt();
    let sb = spec.b_f64().sqrt();
    let eta = (sb * p[2]).hypot(p[3]).atan2((sa * p[0]).hypot(p[1]));
    let wrap = |t: f64| {
        let r = t.rem_euclid(TAU);
        if r >= TAU {
            0.0
        } else {
            r
        }
    };
    [eta, wrap(p[1].atan2(sa * p[0])), wrap(p[3].atan2(sb * p[2]))]
}

/// Chart of `γ(θ)`.
pub fn gamma_chart(spec: &EllipsoidSpec, theta: f64) -> [f64; 3] {
    chart_of(spec, gamma_xyuv(spec, theta))
}

/// Euclidean distance in `(η, φ₁, φ₂)` with the angles taken mod 2π.
pub fn chart_distance(p: [f64; 3], q: [f64; 3]) -> f64 {
    let ang = |d: f64| (d + PI).rem_euclid(TAU) - PI;
    let d0 = p[0] - q[0];
    let d1 = ang(p[1] - q[1]);
    let d2 = ang(p[2] - q[2]);
    (d0 * d0 + d1 * d1 + d2 * d2).sqrt()
}

/// Chart distance from `p` to the curve `γ(ℝ)`.
pub fn distance_to_gamma(spec: &EllipsoidSpec, p: [f64; 3]) -> f64 {
    let f = |t: f64| chart_distance(p, gamma_chart(spec, t));
    let n = 4096;
    let h = TAU / n as f64;
    let mut best = (0.0, f64::INFINITY);
    for k in 0..n {
        let t = k as f64 * h;
        let d = f(t);
        if d < best.1 {
            best = (t, d);
        }
    }
    // golden-section polish around the best sample
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best.0 - h, best.0 + h);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    best.1.min(f1).min(f2)
}

mod dd {
    //! Double-double arithmetic (about 106 significant bits).

    #[derive(Clone, Copy, Debug)]
    pub struct Dd(pub f64, pub f64);

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        (s, b - (s - a))
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }

    impl Dd {
        pub const ZERO: Dd = Dd(0.0, 0.0);

        pub fn from(x: f64) -> Dd {
            Dd(x, 0.0)
        }

        pub fn add(self, o: Dd) -> Dd {
            let (s, e) = two_sum(self.0, o.0);
            let (t, f) = two_sum(self.1, o.1);
            let (s, e) = quick_two_sum(s, e + t);
            let (hi, lo) = quick_two_sum(s, e + f);
            Dd(hi, lo)
        }

        pub fn neg(self) -> Dd {
            Dd(-self.0, -self.1)
        }

        pub fn mul(self, o: Dd) -> Dd {
            let (p, e) = two_prod(self.0, o.0);
            let e = e + (self.0 * o.1 + self.1 * o.0);
            let (hi, lo) = quick_two_sum(p, e);
            Dd(hi, lo)
        }

        pub fn to_f64(self) -> f64 {
            self.0 + self.1
        }
    }

    #[derive(Clone, Copy, Debug)]
    pub struct Cdd {
        pub re: Dd,
        pub im: Dd,
    }

    impl Cdd {
        pub const ZERO: Cdd = Cdd { re: Dd::ZERO, im: Dd::ZERO };
        pub const ONE: Cdd = Cdd { re: Dd(1.0, 0.0), im: Dd::ZERO };

        pub fn new(re: f64, im: f64) -> Cdd {
            Cdd { re: Dd::from(re), im: Dd::from(im) }
        }

        pub fn add(self, o: Cdd) -> Cdd {
            Cdd { re: self.re.add(o.re), im: self.im.add(o.im) }
        }

        pub fn mul(self, o: Cdd) -> Cdd {
            Cdd {
                re: self.re.mul(o.re).add(self.im.mul(o.im).neg()),
                im: self.re.mul(o.im).add(self.im.mul(o.re)),
            }
        }
    }
}

use dd::Cdd;

/// `FloatPoly` evaluation with double-double accumulation.
fn eval_dd(p: &FloatPoly, vals: [Complex64; 4]) -> Complex64 {
    let maxe: Exp = p.max_exponents();
    let mut pw: [Vec<Cdd>; 4] = Default::default();
    for k in 0..4 {
        let base = Cdd::new(vals[k].re, vals[k].im);
        let mut v = Vec::with_capacity(maxe[k] as usize + 1);
        v.push(Cdd::ONE);
        for j in 1..=maxe[k] as usize {
            v.push(v[j - 1].mul(base));
        }
        pw[k] = v;
    }
    let mut acc = Cdd::ZERO;
    for (e, c) in p.terms() {
        let m = pw[0][e[0] as usize].mul(pw[1][e[1] as usize]).mul(pw[2][e[2] as usize]).mul(pw[3][e[3] as usize]);
        acc = acc.add(m.mul(Cdd::new(c.re, c.im)));
    }
    Complex64::new(acc.re.to_f64(), acc.im.to_f64())
}

struct BranchPolys {
    num: FloatPoly,
    rho_d: FloatPoly,
    num_grad: [FloatPoly; 4],
    rho_d_grad: [FloatPoly; 4],
}

/// Precomputed float data for scanning one ellipsoid.
pub struct Scanner {
    spec: EllipsoidSpec,
    invariant: CartanInvariant,
    w: BranchPolys,
    z: BranchPolys,
}

impl Scanner {
    pub fn new(spec: &EllipsoidSpec) -> Result<Self, ScanError> {
        let invariant = CartanInvariant::new(&ellipsoid_rho(spec))?;
        let polys = |b: Branch, v: Var| {
            let num = invariant.numerator(b);
            let rho_d = invariant.rho().partial(v);
            let grad = |p: &crate::poly4::Poly4<crate::scalar::GaussianRational>| {
                Var::ALL.map(|x| FloatPoly::from_exact(&p.partial(x)))
            };
            BranchPolys {
                num: FloatPoly::from_exact(num),
                rho_d: FloatPoly::from_exact(&rho_d),
                num_grad: grad(num),
                rho_d_grad: grad(&rho_d),
            }
        };
        Ok(Scanner {
            spec: spec.clone(),
            w: polys(Branch::W, Var::W),
            z: polys(Branch::Z, Var::Z),
            invariant,
        })
    }

    pub fn spec(&self) -> &EllipsoidSpec {
        &self.spec
    }

    pub fn invariant(&self) -> &CartanInvariant {
        &self.invariant
    }

    fn branch(&self, z: Complex64, w: Complex64) -> &BranchPolys {
        match self.invariant.float().select_branch(z, w, BranchChoice::Auto) {
            Ok((Branch::Z, _)) => &self.z,
            _ => &self.w,
        }
    }

    /// `I = 12 num/ρ_branch⁴` at a chart point, in double precision.
    pub fn value(&self, chart: [f64; 3]) -> Complex64 {
        let p = torus_param(&self.spec, chart[0], chart[1], chart[2]);
        self.invariant
            .float()
            .evaluate_unchecked(p.z, p.w, BranchChoice::Auto)
            .map(|(v, _)| v)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    /// `I` with a double-double numerator, and its chart gradient.
    fn value_and_jacobian(&self, chart: [f64; 3]) -> (Complex64, [Complex64; 3]) {
        let xyuv = torus_xyuv(&self.spec, chart[0], chart[1], chart[2]);
        let z = Complex64::new(xyuv[0], xyuv[1]);
        let w = Complex64::new(xyuv[2], xyuv[3]);
        let vals = [z, w, z.conj(), w.conj()];
        let b = self.branch(z, w);
        let n = eval_dd(&b.num, vals);
        let r = b.rho_d.eval4(vals);
        let i_val = 12.0 * n / r.powi(4);

        let (se, ce) = chart[0].sin_cos();
        let (s1, c1) = chart[1].sin_cos();
        let (s2, c2) = chart[2].sin_cos();
        let sa = self.spec.a_f64().sqrt();
        let sb = self.spec.b_f64().sqrt();
        // d(x, y, u, v)/d(η, φ₁, φ₂)
        let dx = [-se * c1 / sa, -ce * s1 / sa, 0.0];
        let dy = [-se * s1, ce * c1, 0.0];
        let du = [ce * c2 / sb, 0.0, -se * s2 / sb];
        let dv = [ce * s2, 0.0, se * c2];
        let dn: Vec<Complex64> = b.num_grad.iter().map(|g| g.eval4(vals)).collect();
        let dr: Vec<Complex64> = b.rho_d_grad.iter().map(|g| g.eval4(vals)).collect();
        let mut jac = [Complex64::new(0.0, 0.0); 3];
        for k in 0..3 {
            let dz = Complex64::new(dx[k], dy[k]);
            let dw = Complex64::new(du[k], dv[k]);
            let d = [dz, dw, dz.conj(), dw.conj()];
            let dnum: Complex64 = (0..4).map(|i| dn[i] * d[i]).sum();
            let drho: Complex64 = (0..4).map(|i| dr[i] * d[i]).sum();
            jac[k] = 12.0 * (dnum * r - 4.0 * n * drho) / r.powi(5);
        }
        (i_val, jac)
    }

    /// Largest `|I|` over a uniform grid of the given resolution.
    pub fn grid_scale(&self, resolution: usize) -> f64 {
        let (etas, phis) = grid_axes(resolution);
        let mut m: f64 = 0.0;
        for e in &etas {
            for p1 in &phis {
                for p2 in &phis {
                    m = m.max(self.value([*e, *p1, *p2]).norm());
                }
            }
        }
        m
    }

    /// Gauss–Newton on `(Re I, Im I)/scale` over the chart parameters.
    pub fn refine(&self, start: [f64; 3], scale: f64) -> ScanRecord {
        self.refine_counted(start, scale).0
    }

    /// As [`Scanner::refine`], also returning the number of iterations taken.
    pub fn refine_counted(&self, start: [f64; 3], scale: f64) -> (ScanRecord, usize) {
        let mut t = start;
        let mut converged = false;
        let mut iterations = 0;
        for _ in 0..MAX_ITERATIONS {
            iterations += 1;
            let (f, j) = self.value_and_jacobian(t);
            let f = f / scale;
            let jr: [f64; 3] = [j[0].re / scale, j[1].re / scale, j[2].re / scale];
            let ji: [f64; 3] = [j[0].im / scale, j[1].im / scale, j[2].im / scale];
            let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
            // (J Jᵀ + λ) y = F, step = −Jᵀ y
            let m00 = dot(&jr, &jr) + TIKHONOV;
            let m01 = dot(&jr, &ji);
            let m11 = dot(&ji, &ji) + TIKHONOV;
            let det = m00 * m11 - m01 * m01;
            if !det.is_finite() || det == 0.0 || !f.re.is_finite() || !f.im.is_finite() {
                break;
            }
            let y0 = (m11 * f.re - m01 * f.im) / det;
            let y1 = (m00 * f.im - m01 * f.re) / det;
            let step = [-(jr[0] * y0 + ji[0] * y1), -(jr[1] * y0 + ji[1] * y1), -(jr[2] * y0 + ji[2] * y1)];
            for k in 0..3 {
                t[k] += step[k];
            }
            let norm = dot(&step, &step).sqrt();
            if !norm.is_finite() {
                break;
            }
            if norm < STEP_TOL {
                let (fv, _) = self.value_and_jacobian(t);
                converged = fv.norm() / scale < CONVERGED_TOL;
                break;
            }
        }
        let xyuv = torus_xyuv(&self.spec, t[0], t[1], t[2]);
        let chart = chart_of(&self.spec, xyuv);
        let (fv, _) = self.value_and_jacobian(t);
        let rel = fv / scale;
        let converged = converged && residual_xyuv(&self.spec, xyuv).abs() < 1e-12;
        let record = ScanRecord {
            eta: chart[0],
            phi1: chart[1],
            phi2: chart[2],
            x: xyuv[0],
            y: xyuv[1],
            u: xyuv[2],
            v: xyuv[3],
            re_i: rel.re,
            im_i: rel.im,
            abs_i: rel.norm(),
            refined: true,
            converged,
        };
        (record, iterations)
    }
}

/// `η_i = i·(π/2)/(n−1)`, `φ_j = 2πj/n`.
pub fn grid_axes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let etas = (0..n).map(|i| i as f64 * FRAC_PI_2 / (n - 1) as f64).collect();
    let phis = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
    (etas, phis)
}

/// Chart diagonal of one grid cell, `√(dη² + 2dφ²)`.
pub fn cell_diagonal(n: usize) -> f64 {
    let de = FRAC_PI_2 / (n - 1) as f64;
    let dp = TAU / n as f64;
    (de * de + 2.0 * dp * dp).sqrt()
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub records: Vec<ScanRecord>,
    /// Largest `|I|` on the grid; every reported value is divided by it.
    pub scale: f64,
    pub candidates: usize,
    pub refined: usize,
    pub converged: usize,
}

/// Grid evaluation plus optional refinement of the nodes below the
/// threshold. Output order is `(η, φ₁, φ₂)` regardless of worker count.
pub fn scan_grid(config: &ScanConfig) -> Result<ScanResult, ScanError> {
    config.validate()?;
    let scanner = Scanner::new(&config.spec)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| ScanError::InvalidConfig(e.to_string()))?;
    pool.install(|| scan_with(&scanner, config))
}

fn scan_with(scanner: &Scanner, config: &ScanConfig) -> Result<ScanResult, ScanError> {
    let n = config.resolution;
    let (etas, phis) = grid_axes(n);
    let values: Vec<([f64; 3], Complex64)> = (0..n * n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
            let c = [etas[i], phis[j], phis[k]];
            (c, scanner.value(c))
        })
        .collect();
    let scale = values.iter().fold(0.0f64, |m, (_, v)| m.max(v.norm()));
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(ScanError::InvalidConfig(format!("degenerate scan scale {scale}")));
    }
    let mut records: Vec<ScanRecord> = values
        .par_iter()
        .map(|(c, v)| {
            let xyuv = torus_xyuv(&config.spec, c[0], c[1], c[2]);
            let rel = v / scale;
            ScanRecord {
                eta: c[0],
                phi1: c[1],
                phi2: c[2],
                x: xyuv[0],
                y: xyuv[1],
                u: xyuv[2],
                v: xyuv[3],
                re_i: rel.re,
                im_i: rel.im,
                abs_i: rel.norm(),
                refined: false,
                converged: false,
            }
        })
        .collect();

    let candidates: Vec<usize> = (0..records.len()).filter(|&i| records[i].abs_i < config.threshold).collect();
    let mut refined = 0;
    let mut converged = 0;
    if config.refine {
        let chosen: Vec<usize> = if candidates.len() > config.max_refine {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut pick: Vec<usize> = sample(&mut rng, candidates.len(), config.max_refine)
                .into_iter()
                .map(|k| candidates[k])
                .collect();
            pick.sort_unstable();
            pick
        } else {
            candidates.clone()
        };
        let out: Vec<(usize, ScanRecord)> = chosen
            .par_iter()
            .map(|&i| (i, scanner.refine(records[i].chart(), scale)))
            .collect();
        for (i, r) in out {
            refined += 1;
            converged += usize::from(r.converged);
            records[i] = r;
        }
    }
    records.sort_by(|a, b| {
        a.eta
            .total_cmp(&b.eta)
            .then(a.phi1.total_cmp(&b.phi1))
            .then(a.phi2.total_cmp(&b.phi2))
    });
    Ok(ScanResult { records, scale, candidates: candidates.len(), refined, converged })
}

/// Standalone refinement from a surface point; the scale is the maximum over
/// the reference grid.
pub fn refine_zero(start: &SurfacePoint<Complex64>, spec: &EllipsoidSpec) -> Result<ScanRecord, ScanError> {
    let scanner = Scanner::new(spec)?;
    let scale = scanner.grid_scale(REFERENCE_RESOLUTION);
    Ok(scanner.refine(chart_of(spec, start.xyuv()), scale))
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub mode: Mode,
    pub passed: bool,
    /// Float mode: number of samples and the largest normalized `|I|`.
    pub samples: usize,
    pub max_normalized: Option<f64>,
    pub certificate: Option<CertificateReport>,
}

/// Checks that `I` vanishes along `γ`: exactly through the pullback
/// certificate, or at `thetas` equispaced samples in double precision.
pub fn verify_curve(spec: &EllipsoidSpec, mode: Mode, thetas: usize) -> Result<VerifyReport, ScanError> {
    match mode {
        Mode::Exact => {
            let rep = certify_fixed(spec)?;
            Ok(VerifyReport { mode, passed: rep.passed(), samples: 0, max_normalized: None, certificate: Some(rep) })
        }
        Mode::Float => {
            if thetas == 0 {
                return Err(ScanError::InvalidConfig("thetas must be positive".into()));
            }
            let scanner = Scanner::new(spec)?;
            let scale = scanner.grid_scale(REFERENCE_RESOLUTION);
            let mut worst: f64 = 0.0;
            for k in 0..thetas {
                let theta = TAU * k as f64 / thetas as f64;
                let c = gamma_chart(spec, theta);
                let (v, _) = scanner.value_and_jacobian(c);
                worst = worst.max(v.norm() / scale);
            }
            Ok(VerifyReport {
                mode,
                passed: worst < CONVERGED_TOL,
                samples: thetas,
                max_normalized: Some(worst),
                certificate: None,
            })
        }
    }
}

pub fn emit_csv<W: Write>(records: &[ScanRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_line())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonScan<'a> {
    a: String,
    b: String,
    resolution: usize,
    threshold: f64,
    normalization: &'static str,
    scale: f64,
    records: &'a [ScanRecord],
}

pub const NORMALIZATION_NOTE: &str =
    "abs_i = 12|num|/|rho_branch|^4 divided by the largest value on the grid; only the zero set is meaningful";

pub fn emit_json<W: Write>(result: &ScanResult, config: &ScanConfig, mut out: W) -> std::io::Result<()> {
    let doc = JsonScan {
        a: config.spec.a().to_string(),
        b: config.spec.b().to_string(),
        resolution: config.resolution,
        threshold: config.threshold,
        normalization: NORMALIZATION_NOTE,
        scale: result.scale,
        records: &result.records,
    };
    serde_json::to_writer_pretty(&mut out, &doc).map_err(std::io::Error::other)?;
    writeln!(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected csv or json)")),
        }
    }
}

/// Writes a scan to `path` in the chosen format.
pub fn emit(result: &ScanResult, config: &ScanConfig, format: Format, path: &Path) -> Result<(), ScanError> {
    let file = std::fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    match format {
        Format::Csv => emit_csv(&result.records, &mut out)?,
        Format::Json => emit_json(result, config, &mut out)?,
    }
    out.flush()?;
    Ok(())
}
