mod common;

use common::{ellipsoid_points, heisenberg_points, q, sphere_points, v, Pt, P};
use cr_umbilic::ellipsoid::{ellipsoid_rho, heisenberg_rho, sphere_rho, EllipsoidSpec};
use cr_umbilic::invariant::{
    assemble_invariant, coincidence_check, graph_hessian_h, lbar_apply, levi_determinant, levi_nondegenerate_at,
    tangential_fields, Branch, BranchChoice, CartanInvariant, PwQuotient,
};
use cr_umbilic::{GaussianRational, InvariantError, Rational, Scalar, SurfacePoint, Var};
use proptest::prelude::*;

fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    GaussianRational::from_fracs(re, im)
}

fn e23() -> P {
    ellipsoid_rho(&EllipsoidSpec::from_ints(2, 3).unwrap())
}

fn half_point() -> Pt {
    SurfacePoint::new(g((0, 1), (1, 2)), g((1, 2), (0, 1)))
}

/// Levi determinant by cofactor expansion along the first column.
fn levi_cofactor(rho: &P) -> P {
    let d = |a: Var| rho.partial(a);
    let dd = |a: Var, b: Var| rho.partial(a).partial(b);
    let m10 = d(Var::Z) * dd(Var::W, Var::Wb) - d(Var::W) * dd(Var::Z, Var::Wb);
    let m20 = d(Var::Z) * dd(Var::W, Var::Zb) - d(Var::W) * dd(Var::Z, Var::Zb);
    // −det = −(−ρ_z̄·M₁₀ + ρ_w̄·M₂₀)
    d(Var::Zb) * m10 - d(Var::Wb) * m20
}

#[test]
fn tangential_field_examples() {
    let f = tangential_fields(&sphere_rho()).unwrap();
    assert_eq!((f.l_z, f.l_w), (-v(Var::Wb), v(Var::Zb)));
    let f = tangential_fields(&e23()).unwrap();
    let two = GaussianRational::from_int(2);
    assert_eq!(f.lb_zb, -(v(Var::Wb) + v(Var::W).scale(&two)));
    let f = tangential_fields(&heisenberg_rho()).unwrap();
    assert_eq!(f.lb_zb, P::constant(g((0, 1), (-1, 2))));
    assert_eq!(f.lb_wb, -v(Var::Z));
    assert_eq!(tangential_fields(&(v(Var::Z) - v(Var::Wb))).unwrap_err(), InvariantError::NotRealDefining);
}

#[test]
fn tangency() {
    for rho in [sphere_rho(), heisenberg_rho(), e23()] {
        let f = tangential_fields(&rho).unwrap();
        assert!(f.apply_l(&rho).is_zero());
        assert!(f.apply_lbar(&rho).is_zero());
    }
}

#[test]
fn levi_examples() {
    let s = levi_determinant(&sphere_rho()).unwrap();
    assert_eq!(s, v(Var::Z) * v(Var::Zb) + v(Var::W) * v(Var::Wb));
    let p35 = SurfacePoint::new(g((3, 5), (0, 1)), g((4, 5), (0, 1)));
    assert!(s.evaluate_point(&p35).is_one());
    assert_eq!(levi_determinant(&e23()).unwrap().evaluate_point(&half_point()), g((31, 8), (0, 1)));
    assert_eq!(levi_determinant(&heisenberg_rho()).unwrap(), P::constant(g((-1, 4), (0, 1))));
    assert!(levi_nondegenerate_at(&e23(), &half_point()).unwrap());
    assert!(levi_nondegenerate_at(&sphere_rho(), &p35).unwrap());
    let off = SurfacePoint::new(g((1, 1), (0, 1)), g((1, 1), (0, 1)));
    assert!(matches!(levi_nondegenerate_at(&sphere_rho(), &off), Err(InvariantError::OffSurface(_))));
}

#[test]
fn hessian_examples() {
    assert!(graph_hessian_h(&heisenberg_rho()).unwrap().is_zero());
    assert!(graph_hessian_h(&sphere_rho()).unwrap().is_zero());
    // rigid pair of φ = z²z̄²: ρ = (w − w̄)/(2i) − z²z̄², H = z̄²/2
    let half_i = g((0, 1), (1, 2));
    let rho = v(Var::W).scale(&-half_i.clone()) + v(Var::Wb).scale(&half_i) - v(Var::Z).pow(2) * v(Var::Zb).pow(2);
    assert_eq!(graph_hessian_h(&rho).unwrap(), v(Var::Zb).pow(2).scale(&g((1, 2), (0, 1))));
}

#[test]
fn lbar_examples() {
    let rho = sphere_rho();
    assert_eq!(lbar_apply(&rho, &PwQuotient::new(P::one(), 0)).unwrap(), PwQuotient::new(P::zero(), 1));
    let qn = v(Var::Zb).pow(2) + v(Var::Wb).pow(2);
    let out = lbar_apply(&rho, &PwQuotient::new(qn, 3)).unwrap();
    let two = GaussianRational::from_int(2);
    let three = GaussianRational::from_int(3);
    let expect = -(v(Var::W) * v(Var::Zb) * v(Var::Wb)).scale(&two)
        - v(Var::Z) * v(Var::Wb).pow(2)
        - (v(Var::Z) * v(Var::Zb).pow(2)).scale(&three);
    assert_eq!(out, PwQuotient::new(expect, 4));
}

#[test]
fn invariant_degree_and_baseline() {
    let res = assemble_invariant(&e23(), Branch::W).unwrap();
    assert!(res.num.total_degree() <= 12);
    assert_eq!(res.denom_power, 4);
    assert_eq!(res.num.len(), 185);
    let inv = CartanInvariant::new(&e23()).unwrap();
    let p = half_point();
    // frozen from an independent computer-algebra evaluation
    assert_eq!(inv.numerator_exact(&p, Branch::W).unwrap(), GaussianRational::real(q(1862395983, 131072)));
    assert_eq!(inv.numerator_exact(&p, Branch::Z).unwrap(), GaussianRational::real(q(22992543, 131072)));
    let (val, branch) = inv.evaluate_exact(&p, BranchChoice::Auto).unwrap();
    assert_eq!(branch, Branch::W);
    assert_eq!(val, GaussianRational::real(q(68977629, 2048)));
    let (f, _) = inv.evaluate_float(&p.to_float(), BranchChoice::Auto).unwrap();
    assert!((f.re - 68977629.0 / 2048.0).abs() < 1e-8 && f.im.abs() < 1e-8);
}

#[test]
fn invariant_baseline_non_integer_axes() {
    let spec = EllipsoidSpec::parse("7/3", "9/2").unwrap();
    let inv = CartanInvariant::new(&ellipsoid_rho(&spec)).unwrap();
    let p = SurfacePoint::new(g((-3, 11), (-6, 11)), g((0, 1), (8, 11)));
    let nw = GaussianRational::from_fracs((-13984073719111600, 23110245319491), (-201489021197800, 2567805035499));
    assert_eq!(inv.numerator_exact(&p, Branch::W).unwrap(), nw);
    let nz = GaussianRational::new(
        "524703678993509275/537838436526336".parse::<Rational>().unwrap(),
        "1792921291810123825/3944148534526464".parse::<Rational>().unwrap(),
    );
    assert_eq!(inv.numerator_exact(&p, Branch::Z).unwrap(), nz);
}

#[test]
fn evaluation_errors() {
    let inv = CartanInvariant::new(&e23()).unwrap();
    let off = SurfacePoint::new(g((0, 1), (1, 1)), g((1, 2), (0, 1)));
    assert!(matches!(inv.evaluate_exact(&off, BranchChoice::Auto), Err(InvariantError::OffSurface(_))));
    // on the sphere, w = 0 makes ρ_w vanish
    let s = CartanInvariant::new(&sphere_rho()).unwrap();
    let p = SurfacePoint::new(g((1, 1), (0, 1)), g((0, 1), (0, 1)));
    assert_eq!(s.evaluate_exact(&p, BranchChoice::W).unwrap_err(), InvariantError::BranchDegenerate);
    assert_eq!(s.evaluate_exact(&p, BranchChoice::Auto).unwrap().1, Branch::Z);
    assert!(CartanInvariant::new(&(v(Var::Z) - v(Var::Wb))).is_err());
}

#[test]
fn spherical_models_vanish() {
    let s = CartanInvariant::new(&sphere_rho()).unwrap();
    assert!(s.numerator(Branch::W).reduce_mod(&sphere_rho()).unwrap().is_zero());
    for p in sphere_points(100) {
        assert!(s.evaluate_exact(&p, BranchChoice::Auto).unwrap().0.is_zero());
    }
    let h = CartanInvariant::new(&heisenberg_rho()).unwrap();
    for p in heisenberg_points(100, false) {
        assert!(h.numerator_exact(&p, Branch::W).unwrap().is_zero());
    }
}

#[test]
fn coincidence() {
    let e = e23();
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    for (rho, pts) in [
        (sphere_rho(), sphere_points(120)),
        (heisenberg_rho(), heisenberg_points(60, true)),
        (e.clone(), ellipsoid_points(&spec, 60)),
    ] {
        let rep = coincidence_check(&rho, &pts).unwrap();
        assert!(rep.polynomial_identity);
        assert!(rep.points_checked >= 50, "{rep:?}");
        assert!(rep.values_agree());
    }
}

/// `h(z, w) = (2z, w + 3z)`; `ρ' = ρ ∘ h⁻¹`.
fn pushforward(rho: &P) -> P {
    let half = GaussianRational::real(q(1, 2));
    let m3h = GaussianRational::real(q(-3, 2));
    rho.compose(&[
        v(Var::Z).scale(&half),
        v(Var::W) + v(Var::Z).scale(&m3h),
        v(Var::Zb).scale(&half),
        v(Var::Wb) + v(Var::Zb).scale(&m3h),
    ])
}

fn h_of(p: &Pt) -> Pt {
    let two = GaussianRational::from_int(2);
    let three = GaussianRational::from_int(3);
    SurfacePoint::new(p.z.clone() * &two, p.w.clone() + &(p.z.clone() * &three))
}

#[test]
fn levi_transformation_law() {
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    let rho = e23();
    let rho2 = pushforward(&rho);
    assert!(rho2.is_real_defining());
    let l1 = levi_determinant(&rho).unwrap();
    let l2 = levi_determinant(&rho2).unwrap();
    let det_sq = GaussianRational::from_int(4);
    let pts = ellipsoid_points(&spec, 20);
    assert_eq!(pts.len(), 20);
    for p in &pts {
        let hp = h_of(p);
        assert!(rho2.evaluate_point(&hp).is_zero());
        assert_eq!(l1.evaluate_point(p), det_sq.clone() * &l2.evaluate_point(&hp));
    }
}

#[test]
fn zero_set_equivariance() {
    let spec = EllipsoidSpec::from_ints(2, 3).unwrap();
    for (rho, pts) in [(e23(), ellipsoid_points(&spec, 10)), (sphere_rho(), sphere_points(10))] {
        let a = CartanInvariant::new(&rho).unwrap();
        let b = CartanInvariant::new(&pushforward(&rho)).unwrap();
        for p in &pts {
            let za = a.evaluate_exact(p, BranchChoice::Auto).unwrap().0.is_zero();
            let zb = b.evaluate_exact(&h_of(p), BranchChoice::Auto).unwrap().0.is_zero();
            assert_eq!(za, zb);
        }
    }
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-3i64..4, -3i64..4, 1i64..3).prop_map(|(a, b, d)| GaussianRational::from_fracs((a, d), (b, d)))
}

fn small_poly(max_exp: u32) -> impl Strategy<Value = P> {
    prop::collection::vec((prop::array::uniform4(0..=max_exp), coeff()), 1..4).prop_map(P::from_terms)
}

fn real_quadric() -> impl Strategy<Value = P> {
    small_poly(1).prop_map(|p| {
        let p = p + v(Var::Z) * v(Var::Zb) + v(Var::W) * v(Var::Wb);
        let total = p.clone() + p.conjugate_swap();
        P::from_terms(total.terms().filter(|(e, _)| e.iter().sum::<u32>() <= 2).map(|(e, c)| (*e, c.clone())))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lbar_is_a_derivation(n1 in small_poly(2), n2 in small_poly(2), k1 in 0u32..3, k2 in 0u32..3, ell in any::<bool>()) {
        let rho = if ell { e23() } else { sphere_rho() };
        let rho_w = rho.partial(Var::W);
        let a = PwQuotient::new(n1, k1);
        let b = PwQuotient::new(n2, k2);
        let lhs = lbar_apply(&rho, &a.mul(&b)).unwrap();
        let rhs = lbar_apply(&rho, &a).unwrap().mul(&b).add(&a.mul(&lbar_apply(&rho, &b).unwrap()), &rho_w);
        prop_assert!(lhs.same_value(&rhs, &rho_w));
        prop_assert_eq!(lhs.k, k1 + k2 + 1);
        let sq = lbar_apply(&rho, &a.mul(&a)).unwrap();
        let twice = a.mul(&lbar_apply(&rho, &a).unwrap()).add(&a.mul(&lbar_apply(&rho, &a).unwrap()), &rho_w);
        prop_assert!(sq.same_value(&twice, &rho_w));
    }

    #[test]
    fn levi_matches_cofactor_oracle(rho in real_quadric()) {
        prop_assert!(rho.is_real_defining());
        prop_assert_eq!(levi_determinant(&rho).unwrap(), levi_cofactor(&rho));
    }

    #[test]
    fn lbar_iteration_bookkeeping(n in small_poly(2), k in 0u32..4, times in 1u32..4) {
        let rho = e23();
        let mut qq = PwQuotient::new(n, k);
        for _ in 0..times {
            qq = lbar_apply(&rho, &qq).unwrap();
        }
        prop_assert_eq!(qq.k, k + times);
    }
}
