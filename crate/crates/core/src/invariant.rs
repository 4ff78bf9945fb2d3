//! Implicit-form CR operators and the seven-term sphericity invariant.
//!
//! For a real defining polynomial `ρ`, every intermediate is kept as a
//! [`PwQuotient`] `num / ρ_w^k`, so that applying `L̄` is a closed polynomial
//! operation. The invariant is
//!
//! ```text
//! I_[w] = 12 ρ_w⁹ ( A³L̄⁴B − 6A²L̄A·L̄³B − 4A²L̄²A·L̄²B − A²L̄³A·L̄B
//!                   + 15A(L̄A)²L̄²B + 10A·L̄A·L̄²A·L̄B − 15(L̄A)³L̄B )
//! ```
//!
//! with `A = L(ρ)/ρ_w²` (Levi determinant) and `B = H(ρ)/ρ_w³`; every term
//! sits over `ρ_w¹³`, so the result is `12·num/ρ_w⁴`.

use num_complex::Complex64;

use crate::error::InvariantError;
use crate::poly4::{FloatPoly, Poly4, SurfacePoint, Var};
use crate::scalar::{GaussianRational, Scalar};

/// Signed weights of the seven terms.
pub const TERM_WEIGHTS: [i64; 7] = [1, -6, -4, -1, 15, 10, -15];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    W,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BranchChoice {
    #[default]
    Auto,
    W,
    Z,
}

fn require_real<S: Scalar>(rho: &Poly4<S>) -> Result<(), InvariantError> {
    if rho.is_real_defining() {
        Ok(())
    } else {
        Err(InvariantError::NotRealDefining)
    }
}

/// `L = l_z ∂_z + l_w ∂_w` and `L̄ = lb_zb ∂_z̄ + lb_wb ∂_w̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentialFields<S: Scalar> {
    pub l_z: Poly4<S>,
    pub l_w: Poly4<S>,
    pub lb_zb: Poly4<S>,
    pub lb_wb: Poly4<S>,
}

impl<S: Scalar> TangentialFields<S> {
    pub fn apply_l(&self, p: &Poly4<S>) -> Poly4<S> {
        self.l_z.mul_ref(&p.partial(Var::Z)) + self.l_w.mul_ref(&p.partial(Var::W))
    }

    pub fn apply_lbar(&self, p: &Poly4<S>) -> Poly4<S> {
        self.lb_zb.mul_ref(&p.partial(Var::Zb)) + self.lb_wb.mul_ref(&p.partial(Var::Wb))
    }
}

pub fn tangential_fields<S: Scalar>(rho: &Poly4<S>) -> Result<TangentialFields<S>, InvariantError> {
    require_real(rho)?;
    Ok(TangentialFields {
        l_z: -rho.partial(Var::W),
        l_w: rho.partial(Var::Z),
        lb_zb: -rho.partial(Var::Wb),
        lb_wb: rho.partial(Var::Zb),
    })
}

fn det3<S: Scalar>(m: &[[Poly4<S>; 3]; 3]) -> Poly4<S> {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m[r1][c1].mul_ref(&m[r2][c2]) - m[r1][c2].mul_ref(&m[r2][c1])
    };
    m[0][0].mul_ref(&minor(1, 2, 1, 2)) - m[0][1].mul_ref(&minor(1, 2, 0, 2))
        + m[0][2].mul_ref(&minor(1, 2, 0, 1))
}

/// `−det [[0, ρ_z, ρ_w], [ρ_z̄, ρ_zz̄, ρ_wz̄], [ρ_w̄, ρ_zw̄, ρ_ww̄]]`.
pub fn levi_determinant<S: Scalar>(rho: &Poly4<S>) -> Result<Poly4<S>, InvariantError> {
    require_real(rho)?;
    let d = |v: Var| rho.partial(v);
    let dd = |a: Var, b: Var| rho.partial(a).partial(b);
    let m = [
        [Poly4::zero(), d(Var::Z), d(Var::W)],
        [d(Var::Zb), dd(Var::Z, Var::Zb), dd(Var::W, Var::Zb)],
        [d(Var::Wb), dd(Var::Z, Var::Wb), dd(Var::W, Var::Wb)],
    ];
    Ok(-det3(&m))
}

/// `H = ρ_z²ρ_ww − 2ρ_zρ_wρ_zw + ρ_w²ρ_zz`, so that a graph `w = Θ` has
/// `Θ_zz = −H/ρ_w³`.
pub fn graph_hessian_h<S: Scalar>(rho: &Poly4<S>) -> Result<Poly4<S>, InvariantError> {
    require_real(rho)?;
    let rz = rho.partial(Var::Z);
    let rw = rho.partial(Var::W);
    let rzz = rz.partial(Var::Z);
    let rzw = rz.partial(Var::W);
    let rww = rw.partial(Var::W);
    let two = S::from_int(2);
    Ok(rz.mul_ref(&rz).mul_ref(&rww) - rz.mul_ref(&rw).mul_ref(&rzw).scale(&two) + rw.mul_ref(&rw).mul_ref(&rzz))
}

/// `num / ρ_w^k` relative to an ambient `ρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PwQuotient<S: Scalar> {
    pub num: Poly4<S>,
    pub k: u32,
}

impl<S: Scalar> PwQuotient<S> {
    pub fn new(num: Poly4<S>, k: u32) -> Self {
        PwQuotient { num, k }
    }

    pub fn mul(&self, other: &Self) -> Self {
        PwQuotient::new(self.num.mul_ref(&other.num), self.k + other.k)
    }

    fn lift(&self, k: u32, rho_w: &Poly4<S>) -> Poly4<S> {
        self.num.mul_ref(&rho_w.pow(k - self.k))
    }

    pub fn add(&self, other: &Self, rho_w: &Poly4<S>) -> Self {
        let k = self.k.max(other.k);
        PwQuotient::new(self.lift(k, rho_w) + other.lift(k, rho_w), k)
    }

    /// Equality as rational functions: `num₁ ρ_w^{k₂} = num₂ ρ_w^{k₁}`.
    pub fn same_value(&self, other: &Self, rho_w: &Poly4<S>) -> bool {
        let k = self.k.max(other.k);
        self.lift(k, rho_w) == other.lift(k, rho_w)
    }
}

/// Derivatives of `ρ` needed by the quotient rule for `L̄` on `num/ρ_w^k`.
#[derive(Clone, Debug)]
pub struct Ambient<S: Scalar> {
    pub rho: Poly4<S>,
    pub rho_w: Poly4<S>,
    rho_zb: Poly4<S>,
    rho_wb: Poly4<S>,
    rho_wzb: Poly4<S>,
    rho_wwb: Poly4<S>,
}

impl<S: Scalar> Ambient<S> {
    pub fn new(rho: &Poly4<S>) -> Result<Self, InvariantError> {
        require_real(rho)?;
        let rho_w = rho.partial(Var::W);
        Ok(Ambient {
            rho: rho.clone(),
            rho_zb: rho.partial(Var::Zb),
            rho_wb: rho.partial(Var::Wb),
            rho_wzb: rho_w.partial(Var::Zb),
            rho_wwb: rho_w.partial(Var::Wb),
            rho_w,
        })
    }

    /// `L̄(num/ρ_w^k) = num'/ρ_w^{k+1}`.
    pub fn lbar_apply(&self, q: &PwQuotient<S>) -> PwQuotient<S> {
        let k = S::from_int(q.k as i64);
        let a = q.num.partial(Var::Zb).mul_ref(&self.rho_w) - q.num.mul_ref(&self.rho_wzb).scale(&k);
        let b = q.num.partial(Var::Wb).mul_ref(&self.rho_w) - q.num.mul_ref(&self.rho_wwb).scale(&k);
        PwQuotient::new(self.rho_zb.mul_ref(&b) - self.rho_wb.mul_ref(&a), q.k + 1)
    }

    pub fn lbar_iter(&self, q: &PwQuotient<S>, n: u32) -> PwQuotient<S> {
        (0..n).fold(q.clone(), |acc, _| self.lbar_apply(&acc))
    }
}

pub fn lbar_apply<S: Scalar>(rho: &Poly4<S>, q: &PwQuotient<S>) -> Result<PwQuotient<S>, InvariantError> {
    Ok(Ambient::new(rho)?.lbar_apply(q))
}

/// The seven unweighted terms, each over `ρ_w¹³`, for the `w` branch.
pub fn seven_terms<S: Scalar>(rho: &Poly4<S>) -> Result<[PwQuotient<S>; 7], InvariantError> {
    let amb = Ambient::new(rho)?;
    let a0 = PwQuotient::new(levi_determinant(rho)?, 2);
    let b0 = PwQuotient::new(graph_hessian_h(rho)?, 3);
    let a1 = amb.lbar_apply(&a0);
    let a2 = amb.lbar_apply(&a1);
    let a3 = amb.lbar_apply(&a2);
    let b1 = amb.lbar_apply(&b0);
    let b2 = amb.lbar_apply(&b1);
    let b3 = amb.lbar_apply(&b2);
    let b4 = amb.lbar_apply(&b3);
    let aa = a0.mul(&a0);
    Ok([
        aa.mul(&a0).mul(&b4),
        aa.mul(&a1).mul(&b3),
        aa.mul(&a2).mul(&b2),
        aa.mul(&a3).mul(&b1),
        a0.mul(&a1).mul(&a1).mul(&b2),
        a0.mul(&a1).mul(&a2).mul(&b1),
        a1.mul(&a1).mul(&a1).mul(&b1),
    ])
}

/// `I = 12·num/ρ_branch^denom_power`; the factor 12 is not folded into `num`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantResult<S: Scalar> {
    pub num: Poly4<S>,
    pub denom_power: u32,
    pub branch: Branch,
}

fn assemble_w<S: Scalar>(rho: &Poly4<S>) -> Result<Poly4<S>, InvariantError> {
    let terms = seven_terms(rho)?;
    let mut num = Poly4::zero();
    for (t, w) in terms.iter().zip(TERM_WEIGHTS) {
        debug_assert_eq!(t.k, 13);
        num = num + t.num.scale(&S::from_int(w));
    }
    Ok(num)
}

pub fn assemble_invariant<S: Scalar>(rho: &Poly4<S>, branch: Branch) -> Result<InvariantResult<S>, InvariantError> {
    require_real(rho)?;
    let num = match branch {
        Branch::W => assemble_w(rho)?,
        Branch::Z => assemble_w(&rho.swap_zw())?.swap_zw(),
    };
    Ok(InvariantResult { num, denom_power: 4, branch })
}

/// Exact and floating evaluator of the invariant on one hypersurface.
#[derive(Clone, Debug)]
pub struct CartanInvariant {
    rho: Poly4<GaussianRational>,
    rho_z: Poly4<GaussianRational>,
    rho_w: Poly4<GaussianRational>,
    num_w: Poly4<GaussianRational>,
    num_z: Poly4<GaussianRational>,
    float: FloatInvariant,
}

/// Double-precision copies of `ρ`, `ρ_z`, `ρ_w` and both numerators.
#[derive(Clone, Debug)]
pub struct FloatInvariant {
    pub rho: FloatPoly,
    pub rho_z: FloatPoly,
    pub rho_w: FloatPoly,
    pub num_w: FloatPoly,
    pub num_z: FloatPoly,
}

/// Absolute on-surface tolerance used in floating mode.
pub const FLOAT_SURFACE_TOL: f64 = 1e-9;

impl CartanInvariant {
    pub fn new(rho: &Poly4<GaussianRational>) -> Result<Self, InvariantError> {
        let num_w = assemble_invariant(rho, Branch::W)?.num;
        let num_z = assemble_invariant(rho, Branch::Z)?.num;
        let rho_z = rho.partial(Var::Z);
        let rho_w = rho.partial(Var::W);
        let float = FloatInvariant {
            rho: FloatPoly::from_exact(rho),
            rho_z: FloatPoly::from_exact(&rho_z),
            rho_w: FloatPoly::from_exact(&rho_w),
            num_w: FloatPoly::from_exact(&num_w),
            num_z: FloatPoly::from_exact(&num_z),
        };
        Ok(CartanInvariant { rho: rho.clone(), rho_z, rho_w, num_w, num_z, float })
    }

    pub fn rho(&self) -> &Poly4<GaussianRational> {
        &self.rho
    }

    pub fn numerator(&self, branch: Branch) -> &Poly4<GaussianRational> {
        match branch {
            Branch::W => &self.num_w,
            Branch::Z => &self.num_z,
        }
    }

    pub fn float(&self) -> &FloatInvariant {
        &self.float
    }

    fn check_exact(&self, pt: &SurfacePoint<GaussianRational>) -> Result<(), InvariantError> {
        let r = self.rho.evaluate_point(pt);
        if r.is_zero() {
            Ok(())
        } else {
            Err(InvariantError::OffSurface(r.to_string()))
        }
    }

    /// Branch chosen exactly by comparing `|ρ_z|²` and `|ρ_w|²`; ties go to `w`.
    pub fn select_branch_exact(
        &self,
        pt: &SurfacePoint<GaussianRational>,
        choice: BranchChoice,
    ) -> Result<(Branch, GaussianRational), InvariantError> {
        let dz = self.rho_z.evaluate_point(pt);
        let dw = self.rho_w.evaluate_point(pt);
        let pick = match choice {
            BranchChoice::W => Branch::W,
            BranchChoice::Z => Branch::Z,
            BranchChoice::Auto => {
                if dz.is_zero() && dw.is_zero() {
                    return Err(InvariantError::BranchDegenerate);
                }
                if dz.norm_sqr() > dw.norm_sqr() {
                    Branch::Z
                } else {
                    Branch::W
                }
            }
        };
        let d = if pick == Branch::W { dw } else { dz };
        if d.is_zero() {
            return Err(InvariantError::BranchDegenerate);
        }
        Ok((pick, d))
    }

    /// `num_branch` at the point, without the `12/ρ_branch⁴` factor.
    pub fn numerator_exact(
        &self,
        pt: &SurfacePoint<GaussianRational>,
        branch: Branch,
    ) -> Result<GaussianRational, InvariantError> {
        self.check_exact(pt)?;
        Ok(self.numerator(branch).evaluate_point(pt))
    }

    /// `12·num(p)/ρ_branch(p)⁴`, exactly.
    pub fn evaluate_exact(
        &self,
        pt: &SurfacePoint<GaussianRational>,
        choice: BranchChoice,
    ) -> Result<(GaussianRational, Branch), InvariantError> {
        self.check_exact(pt)?;
        let (branch, d) = self.select_branch_exact(pt, choice)?;
        let num = self.numerator(branch).evaluate_point(pt);
        let value = num * &GaussianRational::from_ints(12, 0) * &d.pow(4).inv()?;
        Ok((value, branch))
    }

    /// `12·num(p)/ρ_branch(p)⁴` in double precision.
    pub fn evaluate_float(
        &self,
        pt: &SurfacePoint<Complex64>,
        choice: BranchChoice,
    ) -> Result<(Complex64, Branch), InvariantError> {
        let r = self.float.rho.eval(pt.z, pt.w);
        if r.norm() > FLOAT_SURFACE_TOL {
            return Err(InvariantError::OffSurface(format!("{:e}", r.norm())));
        }
        self.float.evaluate_unchecked(pt.z, pt.w, choice)
    }
}

impl FloatInvariant {
    pub fn select_branch(&self, z: Complex64, w: Complex64, choice: BranchChoice) -> Result<(Branch, Complex64), InvariantError> {
        let dz = self.rho_z.eval(z, w);
        let dw = self.rho_w.eval(z, w);
        let pick = match choice {
            BranchChoice::W => Branch::W,
            BranchChoice::Z => Branch::Z,
            BranchChoice::Auto => {
                if dz.norm() > dw.norm() {
                    Branch::Z
                } else {
                    Branch::W
                }
            }
        };
        let d = if pick == Branch::W { dw } else { dz };
        if d.norm() == 0.0 {
            return Err(InvariantError::BranchDegenerate);
        }
        Ok((pick, d))
    }

    /// Value without the membership check.
    pub fn evaluate_unchecked(&self, z: Complex64, w: Complex64, choice: BranchChoice) -> Result<(Complex64, Branch), InvariantError> {
        let (branch, d) = self.select_branch(z, w, choice)?;
        let num = match branch {
            Branch::W => self.num_w.eval(z, w),
            Branch::Z => self.num_z.eval(z, w),
        };
        Ok((12.0 * num / d.powi(4), branch))
    }
}

pub fn levi_nondegenerate_at(
    rho: &Poly4<GaussianRational>,
    pt: &SurfacePoint<GaussianRational>,
) -> Result<bool, InvariantError> {
    let r = rho.evaluate_point(pt);
    if !r.is_zero() {
        return Err(InvariantError::OffSurface(r.to_string()));
    }
    Ok(!levi_determinant(rho)?.evaluate_point(pt).is_zero())
}

pub fn levi_nondegenerate_at_float(
    rho: &Poly4<GaussianRational>,
    pt: &SurfacePoint<Complex64>,
) -> Result<bool, InvariantError> {
    let r = rho.evaluate_float(pt.z, pt.w);
    if r.norm() > FLOAT_SURFACE_TOL {
        return Err(InvariantError::OffSurface(format!("{:e}", r.norm())));
    }
    Ok(levi_determinant(rho)?.evaluate_float(pt.z, pt.w).norm() > 1e-12)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceReport {
    /// Whether `num_w·ρ_z⁴ = num_z·ρ_w⁴` holds in the polynomial ring.
    pub polynomial_identity: bool,
    pub points_checked: usize,
    pub points_agreeing: usize,
    /// Points skipped because they are off the surface or one branch
    /// derivative vanishes there.
    pub points_skipped: usize,
}

impl CoincidenceReport {
    pub fn values_agree(&self) -> bool {
        self.points_agreeing == self.points_checked
    }
}

pub fn coincidence_check(
    rho: &Poly4<GaussianRational>,
    points: &[SurfacePoint<GaussianRational>],
) -> Result<CoincidenceReport, InvariantError> {
    let inv = CartanInvariant::new(rho)?;
    let lhs = inv.num_w.mul_ref(&inv.rho_z.pow(4));
    let rhs = inv.num_z.mul_ref(&inv.rho_w.pow(4));
    let mut report = CoincidenceReport {
        polynomial_identity: lhs == rhs,
        points_checked: 0,
        points_agreeing: 0,
        points_skipped: 0,
    };
    for pt in points {
        let vw = inv.evaluate_exact(pt, BranchChoice::W);
        let vz = inv.evaluate_exact(pt, BranchChoice::Z);
        match (vw, vz) {
            (Ok((a, _)), Ok((b, _))) => {
                report.points_checked += 1;
                if a == b {
                    report.points_agreeing += 1;
                }
            }
            _ => report.points_skipped += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = Poly4<GaussianRational>;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::real(Rational::new(n, d).unwrap())
    }
    fn v(x: Var) -> P {
        P::var(x)
    }

    fn sphere() -> P {
        v(Var::Z) * v(Var::Zb) + v(Var::W) * v(Var::Wb) - P::one()
    }

    fn heisenberg() -> P {
        let half_i = GaussianRational::from_fracs((0, 1), (1, 2));
        v(Var::W).scale(&-half_i.clone()) + v(Var::Wb).scale(&half_i) - v(Var::Z) * v(Var::Zb)
    }

    fn e23() -> P {
        (v(Var::Z).pow(2) + v(Var::Zb).pow(2)).scale(&q(1, 4))
            + (v(Var::Z) * v(Var::Zb)).scale(&q(3, 2))
            + (v(Var::W).pow(2) + v(Var::Wb).pow(2)).scale(&q(1, 2))
            + (v(Var::W) * v(Var::Wb)).scale(&q(2, 1))
            - P::one()
    }

    #[test]
    fn tangential_examples() {
        let f = tangential_fields(&sphere()).unwrap();
        assert_eq!(f.l_z, -v(Var::Wb));
        assert_eq!(f.l_w, v(Var::Zb));
        let g = tangential_fields(&e23()).unwrap();
        assert_eq!(g.lb_zb, -(v(Var::Wb) + v(Var::W).scale(&q(2, 1))));
        let h = tangential_fields(&heisenberg()).unwrap();
        assert_eq!(h.lb_zb, P::constant(GaussianRational::from_fracs((0, 1), (-1, 2))));
        assert_eq!(h.lb_wb, -v(Var::Z));
        assert_eq!(tangential_fields(&(v(Var::Z) - v(Var::Wb))), Err(InvariantError::NotRealDefining));
    }

    #[test]
    fn levi_examples() {
        assert_eq!(levi_determinant(&sphere()).unwrap(), v(Var::Z) * v(Var::Zb) + v(Var::W) * v(Var::Wb));
        let l = levi_determinant(&e23()).unwrap();
        let val = l.evaluate_exact(&GaussianRational::from_fracs((0, 1), (1, 2)), &q(1, 2));
        assert_eq!(val, q(31, 8));
        assert_eq!(levi_determinant(&heisenberg()).unwrap(), P::constant(q(-1, 4)));
    }

    #[test]
    fn hessian_examples() {
        assert!(graph_hessian_h(&heisenberg()).unwrap().is_zero());
        assert!(graph_hessian_h(&sphere()).unwrap().is_zero());
        let phi = v(Var::Z).pow(2) * v(Var::Zb).pow(2);
        let rho = heisenberg() + v(Var::Z) * v(Var::Zb) - phi;
        assert_eq!(graph_hessian_h(&rho).unwrap(), v(Var::Zb).pow(2).scale(&q(1, 2)));
    }

    #[test]
    fn lbar_examples() {
        let rho = sphere();
        let c = lbar_apply(&rho, &PwQuotient::new(P::one(), 0)).unwrap();
        assert!(c.num.is_zero());
        assert_eq!(c.k, 1);
        let q3 = PwQuotient::new(v(Var::Zb).pow(2) + v(Var::Wb).pow(2), 3);
        let out = lbar_apply(&rho, &q3).unwrap();
        let expect = (v(Var::W) * v(Var::Zb) * v(Var::Wb)).scale(&q(-2, 1))
            - v(Var::Z) * v(Var::Wb).pow(2)
            - (v(Var::Z) * v(Var::Zb).pow(2)).scale(&q(3, 1));
        assert_eq!(out, PwQuotient::new(expect, 4));
    }

    #[test]
    fn sphere_numerator_vanishes() {
        let r = assemble_invariant(&sphere(), Branch::W).unwrap();
        assert_eq!(r.denom_power, 4);
        assert!(r.num.reduce_mod(&sphere()).unwrap().is_zero());
    }

    #[test]
    fn quadric_degree_bound() {
        let r = assemble_invariant(&e23(), Branch::W).unwrap();
        assert!(r.num.total_degree() <= 12);
        assert!(!r.num.is_zero());
    }

    #[test]
    fn branch_degenerate_off_axis() {
        let inv = CartanInvariant::new(&sphere()).unwrap();
        let pt = SurfacePoint::new(q(3, 5), q(4, 5));
        let (val, _) = inv.evaluate_exact(&pt, BranchChoice::Auto).unwrap();
        assert!(val.is_zero());
        let off = SurfacePoint::new(q(1, 1), q(1, 1));
        assert!(matches!(inv.evaluate_exact(&off, BranchChoice::Auto), Err(InvariantError::OffSurface(_))));
        let on_axis = SurfacePoint::new(q(1, 1), q(0, 1));
        assert_eq!(inv.evaluate_exact(&on_axis, BranchChoice::W), Err(InvariantError::BranchDegenerate));
    }
}
