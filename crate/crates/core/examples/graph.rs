//! Rigid surfaces Im w = φ(z, z̄): graph expression against the implicit one.
use cr_umbilic::cli::rigid_sample;
use cr_umbilic::graph::graph_implicit_crosscheck;
use cr_umbilic::{GaussianRational, Poly4, Var};

fn main() {
    let zzb = Poly4::<GaussianRational>::var(Var::Z) * Poly4::var(Var::Zb);
    for phi in [zzb.clone(), zzb.clone() + zzb.pow(2)] {
        let rep = graph_implicit_crosscheck(&phi, &rigid_sample(&phi, 20)).unwrap();
        println!("phi = {phi}");
        println!("  {rep:?}");
        println!("  passed: {}", rep.passed());
    }
}
