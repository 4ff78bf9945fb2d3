//! Ellipsoids E(a, b): defining polynomial, rational points, the curve γ.
use cr_umbilic::ellipsoid::{
    ellipsoid_rational_point, ellipsoid_rho, gamma_xyuv, on_surface_exact, residual_xyuv, EllipsoidSpec,
};
use cr_umbilic::Rational;

fn main() {
    let spec = EllipsoidSpec::parse("7/3", "9/2").unwrap();
    let rho = ellipsoid_rho(&spec);
    println!("{spec}: rho = {rho}");
    println!("{}", spec.to_json());
    let r = |n| Rational::from_int(n);
    if let Some(pt) = ellipsoid_rational_point(&spec, &[r(1), r(2), r(0), r(1)]) {
        println!("rational point ({}, {}) on surface: {}", pt.z, pt.w, on_surface_exact(&rho, &pt));
    }
    for k in 0..4 {
        let theta = k as f64 * std::f64::consts::FRAC_PI_2;
        let p = gamma_xyuv(&spec, theta);
        println!("gamma({theta:.4}) = {p:?}, residual {:.1e}", residual_xyuv(&spec, p));
    }
    println!("(1, 1) rejected: {}", EllipsoidSpec::from_ints(1, 1).is_err());
}
