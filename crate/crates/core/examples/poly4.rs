//! Polynomials in z, w, z̄, w̄: arithmetic, derivatives, JSON.
use cr_umbilic::{GaussianRational, Poly4, Var};

fn main() {
    let v = Poly4::<GaussianRational>::var;
    let rho = v(Var::Z) * v(Var::Zb) + v(Var::W) * v(Var::Wb) - Poly4::one();
    println!("rho = {rho}");
    println!("rho_w = {}", rho.partial(Var::W));
    println!("real defining: {}", rho.is_real_defining());
    let p = rho.pow(3);
    println!("rho^3: {} terms, degree {}", p.len(), p.total_degree());
    println!("rho^3 mod rho = {}", p.reduce_mod(&rho).unwrap());
    let pt = (GaussianRational::from_fracs((3, 5), (0, 1)), GaussianRational::from_fracs((0, 1), (4, 5)));
    println!("rho(3/5, 4i/5) = {}", rho.evaluate_exact(&pt.0, &pt.1));
    println!("{}", rho.to_json());
}
