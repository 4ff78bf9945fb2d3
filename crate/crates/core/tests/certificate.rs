use cr_umbilic::certificate::{certify_fixed, is_zero_trig, pullback_exact};
use cr_umbilic::ellipsoid::{ellipsoid_rho, EllipsoidSpec};
use cr_umbilic::invariant::{assemble_invariant, Branch};
use cr_umbilic::{GaussianRational, Poly4, Var};

#[test]
fn fixed_towers_certify() {
    for (a, b) in [("2", "3"), ("2", "2"), ("1", "2"), ("3", "1"), ("7/3", "9/2"), ("5", "11/7")] {
        let spec = EllipsoidSpec::parse(a, b).unwrap();
        let rep = certify_fixed(&spec).unwrap();
        assert!(rep.curve_on_surface && rep.invariant_vanishes, "{spec}: {rep:?}");
        assert!(rep.numerator_degree <= 12);
    }
}

#[test]
fn certificate_is_not_vacuous() {
    // the same pullback must detect functions that do not vanish on γ
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    let z = Poly4::<GaussianRational>::var(Var::Z);
    assert!(!is_zero_trig(&pullback_exact(&z, &spec).unwrap()));
    let num = assemble_invariant(&ellipsoid_rho(&spec), Branch::W).unwrap().num;
    let shifted = num + Poly4::var(Var::W) * Poly4::var(Var::Wb);
    assert!(!is_zero_trig(&pullback_exact(&shifted, &spec).unwrap()));
    // the z-branch numerator vanishes along γ as well
    let numz = assemble_invariant(&ellipsoid_rho(&spec), Branch::Z).unwrap().num;
    assert!(is_zero_trig(&pullback_exact(&numz, &spec).unwrap()));
}
