//! The invariant numerator of E(2,3) and its value at a rational point.
use cr_umbilic::ellipsoid::{ellipsoid_rho, sphere_rho, EllipsoidSpec};
use cr_umbilic::invariant::{coincidence_check, Branch, BranchChoice, CartanInvariant};
use cr_umbilic::{GaussianRational, SurfacePoint};

fn main() {
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    let t = std::time::Instant::now();
    let inv = CartanInvariant::new(&ellipsoid_rho(&spec)).unwrap();
    let num = inv.numerator(Branch::W);
    println!("num_w: {} terms, degree {} ({:.2?})", num.len(), num.total_degree(), t.elapsed());

    let pt = SurfacePoint::new(GaussianRational::from_fracs((0, 1), (1, 2)), GaussianRational::from_fracs((1, 2), (0, 1)));
    println!("num_w(i/2, 1/2) = {}", inv.numerator_exact(&pt, Branch::W).unwrap());
    let (value, branch) = inv.evaluate_exact(&pt, BranchChoice::Auto).unwrap();
    println!("I(i/2, 1/2) = {value} on branch {branch:?}");
    let (f, _) = inv.evaluate_float(&pt.to_float(), BranchChoice::Auto).unwrap();
    println!("float: {f}");

    let sphere = CartanInvariant::new(&sphere_rho()).unwrap();
    println!("sphere numerator is zero mod rho: {}", sphere.numerator(Branch::W).reduce_mod(&sphere_rho()).unwrap().is_zero());
    let rep = coincidence_check(&ellipsoid_rho(&spec), &[pt]).unwrap();
    println!("num_w rho_z^4 = num_z rho_w^4 as polynomials: {}", rep.polynomial_identity);
}
