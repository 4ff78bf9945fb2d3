mod common;

use common::{ellipsoid_points, q, v, P};
use cr_umbilic::ellipsoid::{
    ellipsoid_rho, gamma_float, gamma_xyuv, normal_form_convert, on_surface_exact, on_surface_float, residual_xyuv,
    sphere_rational_point, sphere_rho, webster_equivalent, EllipsoidSpec, NormalFormDirection, NormalForms,
};
use cr_umbilic::scan::torus_xyuv;
use cr_umbilic::{EllipsoidError, GaussianRational, Rational, SurfacePoint, Var};
use proptest::prelude::*;

fn gq(n: i64, d: i64) -> GaussianRational {
    GaussianRational::real(q(n, d))
}

#[test]
fn defining_polynomials() {
    let quad = |c1: GaussianRational, c2: GaussianRational, c3: GaussianRational, c4: GaussianRational| {
        (v(Var::Z).pow(2) + v(Var::Zb).pow(2)).scale(&c1)
            + (v(Var::Z) * v(Var::Zb)).scale(&c2)
            + (v(Var::W).pow(2) + v(Var::Wb).pow(2)).scale(&c3)
            + (v(Var::W) * v(Var::Wb)).scale(&c4)
            - P::one()
    };
    let e23 = ellipsoid_rho(&EllipsoidSpec::from_ints(2, 3).unwrap());
    assert_eq!(e23, quad(gq(1, 4), gq(3, 2), gq(1, 2), gq(2, 1)));
    let e12 = ellipsoid_rho(&EllipsoidSpec::from_ints(1, 2).unwrap());
    assert_eq!(e12, quad(gq(0, 1), gq(1, 1), gq(1, 4), gq(3, 2)));
    assert!(matches!(EllipsoidSpec::from_ints(1, 1), Err(EllipsoidError::InvalidSpec(_))));
    assert!(EllipsoidSpec::parse("1/2", "3").is_err());
    assert!(EllipsoidSpec::parse("two", "3").is_err());
}

#[test]
fn spec_json() {
    let s = EllipsoidSpec::parse("7/3", "9/2").unwrap();
    assert_eq!(s.to_json(), r#"{"a":"7/3","b":"9/2"}"#);
    assert_eq!(EllipsoidSpec::from_json(&s.to_json()).unwrap(), s);
    assert!(EllipsoidSpec::from_json(r#"{"a":"1","b":"1"}"#).is_err());
}

#[test]
fn gamma_examples() {
    let s = EllipsoidSpec::from_ints(2, 3).unwrap();
    let p = gamma_xyuv(&s, 0.0);
    let want = [0.1f64.sqrt(), 0.0, 0.0, -(0.8f64.sqrt())];
    for k in 0..4 {
        assert!((p[k] - want[k]).abs() < 1e-15);
    }
    let p = gamma_xyuv(&s, std::f64::consts::FRAC_PI_2);
    let want = [0.0, 0.6f64.sqrt(), (2.0f64 / 15.0).sqrt(), 0.0];
    for k in 0..4 {
        assert!((p[k] - want[k]).abs() < 1e-15);
    }
    let s12 = EllipsoidSpec::from_ints(1, 2).unwrap();
    for theta in [0.0, 0.4, 2.0, 5.5f64] {
        let p = gamma_xyuv(&s12, theta);
        assert!(p[0] == 0.0 && p[1] == 0.0);
        assert!((p[2] - theta.sin() / 2f64.sqrt()).abs() < 1e-15 && (p[3] + theta.cos()).abs() < 1e-15);
    }
}

#[test]
fn gamma_on_surface_for_many_specs() {
    for (a, b) in [("2", "3"), ("2", "2"), ("1", "2"), ("3", "1"), ("7/3", "9/2"), ("100", "5/4")] {
        let s = EllipsoidSpec::parse(a, b).unwrap();
        let rho = ellipsoid_rho(&s);
        for k in 0..256 {
            let theta = std::f64::consts::TAU * k as f64 / 256.0;
            assert!(residual_xyuv(&s, gamma_xyuv(&s, theta)).abs() < 1e-12);
            assert!(on_surface_float(&rho, &gamma_float(&s, theta)));
        }
    }
}

#[test]
fn normal_forms() {
    let a_to = |x: Rational| normal_form_convert(&x, None, NormalFormDirection::AToCapitalA);
    assert_eq!(a_to(q(3, 1)).unwrap(), q(1, 4));
    assert_eq!(a_to(Rational::from_int(1)).unwrap(), q(0, 1));
    assert_eq!(normal_form_convert(&q(1, 4), None, NormalFormDirection::CapitalAToA).unwrap(), q(3, 1));
    assert_eq!(normal_form_convert(&q(8, 1), Some(&q(2, 1)), NormalFormDirection::AlphaBetaToA).unwrap(), q(4, 1));
    assert!(normal_form_convert(&q(1, 2), None, NormalFormDirection::CapitalAToA).is_err());
    assert!(normal_form_convert(&q(1, 2), None, NormalFormDirection::AToCapitalA).is_err());
    assert!(normal_form_convert(&q(1, 1), Some(&q(0, 1)), NormalFormDirection::AlphaBetaToA).is_err());
    let nf = NormalForms::from_alpha_beta(&[(q(4, 1), q(1, 1)), (q(3, 1), q(3, 1))]).unwrap();
    assert_eq!(nf.a_form, vec![q(4, 1), q(1, 1)]);
    assert_eq!(nf.capital_form, vec![q(3, 10), q(0, 1)]);
}

#[test]
fn webster_examples() {
    let pair = |a: i64, b: i64| (q(a, 1), q(b, 1));
    assert!(webster_equivalent(&[pair(4, 1)], &[pair(8, 2)]).unwrap());
    assert!(webster_equivalent(&[pair(1, 1)], &[pair(1, 1)]).unwrap());
    assert!(!webster_equivalent(&[pair(2, 1)], &[pair(3, 1)]).unwrap());
    assert!(webster_equivalent(&[pair(2, 1), pair(5, 1)], &[pair(5, 1), pair(2, 1)]).unwrap());
    assert!(webster_equivalent(&[pair(0, 1)], &[pair(1, 1)]).is_err());
}

#[test]
fn rational_points() {
    let s = |a, b, c| sphere_rational_point(&q(a, 1), &q(b, 1), &q(c, 1));
    assert_eq!(s(0, 0, 0), SurfacePoint::new(gq(0, 1), GaussianRational::from_ints(0, 1)));
    assert_eq!(s(1, 0, 0), SurfacePoint::new(gq(1, 1), gq(0, 1)));
    let p = s(1, 1, 1);
    assert_eq!(p, SurfacePoint::new(GaussianRational::from_fracs((1, 2), (1, 2)), GaussianRational::from_fracs((1, 2), (-1, 2))));
    assert!(on_surface_exact(&sphere_rho(), &p));
    let half = SurfacePoint::new(GaussianRational::from_fracs((0, 1), (1, 2)), gq(1, 2));
    assert!(on_surface_exact(&ellipsoid_rho(&EllipsoidSpec::from_ints(2, 3).unwrap()), &half));
    assert!(on_surface_exact(&sphere_rho(), &SurfacePoint::new(gq(3, 5), gq(4, 5))));
    assert!(!on_surface_exact(&sphere_rho(), &SurfacePoint::new(gq(1, 1), gq(1, 1))));
    let spec = EllipsoidSpec::parse("7/3", "9/2").unwrap();
    let rho = ellipsoid_rho(&spec);
    for p in ellipsoid_points(&spec, 40) {
        assert!(on_surface_exact(&rho, &p));
    }
}

fn spec() -> impl Strategy<Value = EllipsoidSpec> {
    (1i64..20, 1i64..5, 1i64..20, 1i64..5)
        .prop_filter_map("valid", |(an, ad, bn, bd)| {
            EllipsoidSpec::new(q(an + ad, ad), q(bn + bd, bd)).ok()
        })
}

fn pos() -> impl Strategy<Value = Rational> {
    (1i64..30, 1i64..30).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn torus_param_on_surface(eta in 0.0..std::f64::consts::FRAC_PI_2, p1 in 0.0..std::f64::consts::TAU, p2 in 0.0..std::f64::consts::TAU) {
        let s = EllipsoidSpec::from_ints(2, 3).unwrap();
        prop_assert!(residual_xyuv(&s, torus_xyuv(&s, eta, p1, p2)).abs() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rho_is_real_quadric(s in spec()) {
        let rho = ellipsoid_rho(&s);
        prop_assert!(rho.is_real_defining());
        prop_assert_eq!(rho.total_degree(), 2);
    }

    #[test]
    fn capital_round_trip(a in pos()) {
        let a = a + &Rational::one();
        let cap = normal_form_convert(&a, None, NormalFormDirection::AToCapitalA).unwrap();
        prop_assert!(cap < q(1, 2) && !cap.is_negative());
        prop_assert_eq!(normal_form_convert(&cap, None, NormalFormDirection::CapitalAToA).unwrap(), a);
    }

    #[test]
    fn webster_reflexive_symmetric_scaling(a1 in pos(), b1 in pos(), a2 in pos(), b2 in pos(), l in pos()) {
        let e1 = vec![(a1.clone(), b1.clone())];
        let e2 = vec![(a2, b2)];
        prop_assert!(webster_equivalent(&e1, &e1).unwrap());
        prop_assert_eq!(webster_equivalent(&e1, &e2).unwrap(), webster_equivalent(&e2, &e1).unwrap());
        let scaled = vec![(a1 * &l, b1 * &l)];
        prop_assert!(webster_equivalent(&e1, &scaled).unwrap());
    }
}
