//! The `cartan` command line. Exit codes: 0 success, 1 verification failed,
//! 2 usage or input error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::ellipsoid::{ellipsoid_rho, sphere_rational_point, sphere_rho, EllipsoidSpec, Mode};
use crate::graph::{graph_implicit_crosscheck, rigid_surface_point};
use crate::invariant::{Branch, BranchChoice, CartanInvariant};
use crate::poly4::{Poly4, SurfacePoint, Var};
use crate::scalar::{GaussianRational, Rational, Scalar};
use crate::scan::{emit, scan_grid, verify_curve, Format, ScanConfig};
use crate::tables::{derived_vs_printed, derived_vs_printed_symbolic, table_weighted_sum, PrintedTables};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cartan", version, about = "Cartan's CR invariant: exact evaluation, umbilical curves on ellipsoids, scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate or check the invariant of a defining polynomial.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Ellipsoid construction, curve verification and scanning.
    #[command(subcommand)]
    Ellipsoid(EllipsoidCmd),
    /// Audit the printed numerator tables.
    #[command(subcommand)]
    Tables(TablesCmd),
    /// Graph versus implicit cross-check on rigid surfaces.
    #[command(subcommand)]
    Graph(GraphCmd),
}

#[derive(Subcommand, Debug)]
enum InvariantCmd {
    /// Value of 12·num/ρ_branch⁴ at a point of the surface.
    Eval {
        /// Polynomial JSON file for ρ.
        #[arg(long)]
        rho: PathBuf,
        /// z as re,im with rational parts.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Exact rational evaluation; otherwise double precision.
        #[arg(long)]
        exact: bool,
        /// Branch: auto, w or z.
        #[arg(long, default_value = "auto")]
        branch: String,
    },
    /// Checks that the invariant of the unit sphere vanishes.
    CheckSphere {
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

impl SpecArgs {
    fn spec(&self) -> Result<EllipsoidSpec, String> {
        EllipsoidSpec::parse(&self.a, &self.b).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand, Debug)]
enum EllipsoidCmd {
    /// Writes the defining polynomial as JSON.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks that the invariant vanishes along γ.
    VerifyCurve {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        #[arg(long, default_value_t = 256)]
        thetas: usize,
    },
    /// Grid scan for zeros of the invariant.
    Scan {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        #[arg(long, default_value_t = 1e-2)]
        threshold: f64,
        /// Gauss–Newton refinement of the candidates: true or false.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        refine: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum TablesCmd {
    /// Cell-wise weighted sum of the printed tables.
    Check {
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Compares derived numerators against the printed tables.
    Diff {
        #[arg(long)]
        tables: Option<PathBuf>,
        #[arg(long, default_value = "2")]
        a: String,
        #[arg(long, default_value = "3")]
        b: String,
        /// Cell-exact comparison with a, b formal (slow).
        #[arg(long)]
        symbolic: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Runs the cross-check for φ = zz̄ and φ = zz̄ + z²z̄².
    Check {
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

type Outcome = Result<bool, String>;

fn io(e: std::io::Error) -> String {
    e.to_string()
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Invariant(InvariantCmd::Eval { rho, z, w, exact, branch }) => {
            invariant_eval(&rho, &z, &w, exact, &branch, out)
        }
        Command::Invariant(InvariantCmd::CheckSphere { points }) => check_sphere(points, out),
        Command::Ellipsoid(EllipsoidCmd::Build { spec, out: path }) => {
            let text = ellipsoid_rho(&spec.spec()?).to_json();
            match path {
                Some(p) => std::fs::write(&p, text + "\n").map_err(io)?,
                None => writeln!(out, "{text}").map_err(io)?,
            }
            Ok(true)
        }
        Command::Ellipsoid(EllipsoidCmd::VerifyCurve { spec, mode, thetas }) => {
            let spec = spec.spec()?;
            let rep = verify_curve(&spec, mode, thetas).map_err(|e| e.to_string())?;
            if let Some(c) = &rep.certificate {
                writeln!(
                    out,
                    "{}: numerator {} terms, degree {}; curve on surface {}; invariant vanishes {}; {:.2?}",
                    c.tower, c.numerator_terms, c.numerator_degree, c.curve_on_surface, c.invariant_vanishes, c.elapsed
                )
                .map_err(io)?;
            }
            if let Some(m) = rep.max_normalized {
                writeln!(out, "{} samples, max normalized |I| = {m:.3e}", rep.samples).map_err(io)?;
            }
            writeln!(out, "{}", if rep.passed { "PASS" } else { "FAIL" }).map_err(io)?;
            Ok(rep.passed)
        }
        Command::Ellipsoid(EllipsoidCmd::Scan { spec, threads, out: path, format, resolution, threshold, refine, seed }) => {
            let mut config = ScanConfig::new(spec.spec()?);
            if let Some(t) = threads {
                config.workers = t;
            }
            config.resolution = resolution;
            config.threshold = threshold;
            config.refine = refine;
            config.seed = seed;
            let res = scan_grid(&config).map_err(|e| e.to_string())?;
            emit(&res, &config, format, &path).map_err(|e| e.to_string())?;
            writeln!(
                out,
                "{} records, scale {:.6e}, {} candidates, {} refined, {} converged -> {}",
                res.records.len(),
                res.scale,
                res.candidates,
                res.refined,
                res.converged,
                path.display()
            )
            .map_err(io)?;
            Ok(true)
        }
        Command::Tables(TablesCmd::Check { tables }) => {
            let t = load_tables(tables)?;
            let cells = table_weighted_sum(&t);
            for c in &cells {
                let loc = (0..t.numerators.len())
                    .filter_map(|k| {
                        let row = t.numerators[k].rows.iter().position(|r| r.cos == c.cos && r.sin == c.sin)?;
                        let at = t.location(k + 1, row, c.s, c.t)?;
                        let v = t.cell(k + 1, row, c.s, c.t)?;
                        Some(format!("N{} = {v} at {at}", k + 1))
                    })
                    .collect::<Vec<_>>()
                    .join(", ");
                writeln!(
                    out,
                    "cos^{} sin^{} a^({}/2) b^({}/2): residual {} (eighths) [{}]",
                    c.cos, c.sin, c.s, c.t, c.residual, loc
                )
                .map_err(io)?;
            }
            writeln!(out, "{} nonzero cell(s)", cells.len()).map_err(io)?;
            Ok(cells.is_empty())
        }
        Command::Tables(TablesCmd::Diff { tables, a, b, symbolic }) => {
            let t = load_tables(tables)?;
            let rep = if symbolic {
                derived_vs_printed_symbolic(&t)
            } else {
                let spec = EllipsoidSpec::parse(&a, &b).map_err(|e| e.to_string())?;
                derived_vs_printed(&t, &crate::radical::RadicalTower::for_spec(&spec))
            }
            .map_err(|e| e.to_string())?;
            write!(out, "{rep}").map_err(io)?;
            Ok(rep.derived_weighted_sum_zero && rep.flag_count() == 0)
        }
        Command::Graph(GraphCmd::Check { points }) => graph_check(points, out),
    }
}

fn load_tables(path: Option<PathBuf>) -> Result<PrintedTables, String> {
    match path {
        None => Ok(PrintedTables::builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
            PrintedTables::from_json(&text).map_err(|e| e.to_string())
        }
    }
}

fn invariant_eval(rho: &PathBuf, z: &str, w: &str, exact: bool, branch: &str, out: &mut dyn Write) -> Outcome {
    let text = std::fs::read_to_string(rho).map_err(|e| format!("{}: {e}", rho.display()))?;
    let rho = Poly4::<GaussianRational>::from_json(&text).map_err(|e| e.to_string())?;
    let z = GaussianRational::parse_pair(z).map_err(|e| e.to_string())?;
    let w = GaussianRational::parse_pair(w).map_err(|e| e.to_string())?;
    let choice = match branch {
        "auto" => BranchChoice::Auto,
        "w" => BranchChoice::W,
        "z" => BranchChoice::Z,
        other => return Err(format!("unknown branch {other:?} (expected auto, w or z)")),
    };
    let inv = CartanInvariant::new(&rho).map_err(|e| e.to_string())?;
    let pt = SurfacePoint::new(z, w);
    let (text, b) = if exact {
        let (v, b) = inv.evaluate_exact(&pt, choice).map_err(|e| e.to_string())?;
        (v.to_string(), b)
    } else {
        let (v, b) = inv.evaluate_float(&pt.to_float(), choice).map_err(|e| e.to_string())?;
        (format!("{:.17e}{:+.17e}i", v.re, v.im), b)
    };
    let b = if b == Branch::W { "w" } else { "z" };
    writeln!(out, "{text}\t(branch {b})").map_err(io)?;
    Ok(true)
}

/// Distinct rational points on `S³` from small stereographic parameters.
pub fn sphere_sample(count: usize) -> Vec<SurfacePoint<GaussianRational>> {
    let mut pts = Vec::with_capacity(count);
    'outer: for d in 1..=6i64 {
        for p in -3..=3i64 {
            for q in -3..=3i64 {
                for r in 0..=2i64 {
                    if pts.len() == count {
                        break 'outer;
                    }
                    let f = |n| Rational::new(n, d).expect("nonzero denominator");
                    pts.push(sphere_rational_point(&f(p), &f(q), &f(r + d % 2)));
                }
            }
        }
    }
    pts.dedup();
    pts
}

fn check_sphere(points: usize, out: &mut dyn Write) -> Outcome {
    let rho = sphere_rho();
    let inv = CartanInvariant::new(&rho).map_err(|e| e.to_string())?;
    let reduced = inv.numerator(Branch::W).reduce_mod(&rho).map_err(|e| e.to_string())?;
    let mut zero = 0;
    let pts = sphere_sample(points);
    for pt in &pts {
        if inv.numerator_exact(pt, Branch::W).map_err(|e| e.to_string())?.is_zero() {
            zero += 1;
        }
    }
    writeln!(out, "num reduced mod rho: {}", if reduced.is_zero() { "0" } else { "nonzero" }).map_err(io)?;
    writeln!(out, "{zero}/{} rational points give exact zero", pts.len()).map_err(io)?;
    let ok = reduced.is_zero() && zero == pts.len();
    writeln!(out, "{}", if ok { "PASS" } else { "FAIL" }).map_err(io)?;
    Ok(ok)
}

/// Rigid-surface points `(z, u + iφ(z))` for small Gaussian-rational `z`.
pub fn rigid_sample(phi: &Poly4<GaussianRational>, count: usize) -> Vec<SurfacePoint<GaussianRational>> {
    let mut pts = Vec::with_capacity(count);
    let mut k: i64 = 0;
    while pts.len() < count {
        let re = Rational::new(k % 5 - 2, 3).expect("nonzero");
        let im = Rational::new((k / 5) % 5 - 1, 2).expect("nonzero");
        let u = Rational::new(k % 7 - 3, 4).expect("nonzero");
        pts.push(rigid_surface_point(phi, &GaussianRational::new(re, im), &GaussianRational::real(u)));
        k += 1;
    }
    pts
}

fn graph_check(points: usize, out: &mut dyn Write) -> Outcome {
    let zzb = Poly4::<GaussianRational>::var(Var::Z) * Poly4::var(Var::Zb);
    let quartic = zzb.clone() + zzb.pow(2);
    let mut ok = true;
    for (name, phi, spherical) in [("z*zb", &zzb, true), ("z*zb + z^2*zb^2", &quartic, false)] {
        let rep = graph_implicit_crosscheck(phi, &rigid_sample(phi, points)).map_err(|e| e.to_string())?;
        let shape = if spherical {
            rep.graph_identically_zero && rep.implicit_identically_zero
        } else {
            !rep.graph_identically_zero && !rep.implicit_identically_zero && rep.graph_nonzero > 0
        };
        let pass = rep.passed() && shape && rep.points_checked >= points;
        ok &= pass;
        writeln!(
            out,
            "phi = {name}: hessian identity {}, levi identity {}, graph zero {}, implicit zero {}, {}/{} verdicts agree: {}",
            rep.hessian_identity,
            rep.levi_identity,
            rep.graph_identically_zero,
            rep.implicit_identically_zero,
            rep.verdicts_agree,
            rep.points_checked,
            if pass { "PASS" } else { "FAIL" }
        )
        .map_err(io)?;
    }
    Ok(ok)
}
