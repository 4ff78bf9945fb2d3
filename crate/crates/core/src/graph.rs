//! Graph-form operators for hypersurfaces `w = Θ(z, z̄, w̄)` and their rigid
//! implicit counterparts, used to cross-check the implicit pipeline.

use crate::error::GraphError;
use crate::invariant::{assemble_invariant, graph_hessian_h, levi_determinant, Branch};
use crate::poly4::{Poly4, SurfacePoint, Var};
use crate::scalar::{GaussianRational, Scalar};

type P = Poly4<GaussianRational>;

/// A graphing function with no `w` dependence.
#[derive(Clone, Debug, PartialEq)]
pub struct Theta {
    poly: P,
}

impl Theta {
    pub fn new(poly: P) -> Result<Self, GraphError> {
        if poly.degree_in(Var::W) > 0 {
            return Err(GraphError::NotTheta);
        }
        Ok(Theta { poly })
    }

    pub fn poly(&self) -> &P {
        &self.poly
    }

    pub fn theta_zz(&self) -> P {
        self.poly.partial(Var::Z).partial(Var::Z)
    }

    fn theta_wb(&self) -> P {
        self.poly.partial(Var::Wb)
    }

    /// `D̃ = Θ_w̄ ∂_z̄ − Θ_z̄ ∂_w̄`, so that `𝓛̄ = D̃/Θ_w̄`.
    fn d_tilde(&self, f: &P) -> P {
        self.theta_wb().mul_ref(&f.partial(Var::Zb)) - self.poly.partial(Var::Zb).mul_ref(&f.partial(Var::Wb))
    }
}

/// `Δ = −Θ_w̄ Θ_zz̄ + Θ_z̄ Θ_zw̄`.
pub fn delta_of_theta(theta: &Theta) -> P {
    let t = &theta.poly;
    let t_z = t.partial(Var::Z);
    -(t.partial(Var::Wb).mul_ref(&t_z.partial(Var::Zb))) + t.partial(Var::Zb).mul_ref(&t_z.partial(Var::Wb))
}

/// `num / (Θ_w̄^pow_theta_wb · Δ^pow_delta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphQuotient {
    pub num: P,
    pub pow_theta_wb: u32,
    pub pow_delta: u32,
}

impl GraphQuotient {
    pub fn new(num: P, pow_theta_wb: u32, pow_delta: u32) -> Self {
        GraphQuotient { num, pow_theta_wb, pow_delta }
    }

    pub fn poly(num: P) -> Self {
        GraphQuotient::new(num, 0, 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        GraphQuotient::new(
            self.num.mul_ref(&other.num),
            self.pow_theta_wb + other.pow_theta_wb,
            self.pow_delta + other.pow_delta,
        )
    }

    fn lift(&self, j: u32, k: u32, t: &P, delta: &P) -> P {
        self.num
            .mul_ref(&t.pow(j - self.pow_theta_wb))
            .mul_ref(&delta.pow(k - self.pow_delta))
    }

    pub fn add(&self, other: &Self, theta: &Theta) -> Self {
        let j = self.pow_theta_wb.max(other.pow_theta_wb);
        let k = self.pow_delta.max(other.pow_delta);
        let t = theta.theta_wb();
        let d = delta_of_theta(theta);
        GraphQuotient::new(self.lift(j, k, &t, &d) + other.lift(j, k, &t, &d), j, k)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        GraphQuotient::new(self.num.scale(c), self.pow_theta_wb, self.pow_delta)
    }

    /// Equality by cross-multiplication.
    pub fn same_value(&self, other: &Self, theta: &Theta) -> bool {
        let j = self.pow_theta_wb.max(other.pow_theta_wb);
        let k = self.pow_delta.max(other.pow_delta);
        let t = theta.theta_wb();
        let d = delta_of_theta(theta);
        self.lift(j, k, &t, &d) == other.lift(j, k, &t, &d)
    }

    /// Exact value at a point, or `None` where the denominator vanishes.
    pub fn evaluate(&self, theta: &Theta, pt: &SurfacePoint<GaussianRational>) -> Option<GaussianRational> {
        let den = theta.theta_wb().evaluate_point(pt).pow(self.pow_theta_wb)
            * &delta_of_theta(theta).evaluate_point(pt).pow(self.pow_delta);
        if den.is_zero() {
            return None;
        }
        Some(self.num.evaluate_point(pt) * &den.inv().ok()?)
    }
}

/// `𝓛̄ f` by the quotient rule; denominators stay products of `Θ_w̄` and `Δ`.
pub fn lbar_graph_apply(theta: &Theta, f: &GraphQuotient) -> GraphQuotient {
    let t = theta.theta_wb();
    let delta = delta_of_theta(theta);
    let (j, k) = (f.pow_theta_wb, f.pow_delta);
    let t_f = if j > 0 { t.clone() } else { P::one() };
    let d_f = if k > 0 { delta.clone() } else { P::one() };
    let mut num = theta.d_tilde(&f.num).mul_ref(&t_f).mul_ref(&d_f);
    if j > 0 {
        num = num - f.num.mul_ref(&theta.d_tilde(&t)).mul_ref(&d_f).scale(&GaussianRational::from_ints(j as i64, 0));
    }
    if k > 0 {
        num = num - f.num.mul_ref(&t_f).mul_ref(&theta.d_tilde(&delta)).scale(&GaussianRational::from_ints(k as i64, 0));
    }
    GraphQuotient::new(num, j + 1 + u32::from(j > 0), k + u32::from(k > 0))
}

/// `□ = Δ/(−Θ_w̄)`.
pub fn box_of_theta(theta: &Theta) -> GraphQuotient {
    GraphQuotient::new(-delta_of_theta(theta), 1, 0)
}

/// `□^{−n} = (−Θ_w̄)^n / Δ^n`.
fn box_inv_pow(theta: &Theta, n: u32) -> GraphQuotient {
    GraphQuotient::new((-theta.theta_wb()).pow(n), 0, n)
}

/// The seven-term expansion of `(□⁻¹𝓛̄)⁴ Θ_zz` as one quotient.
pub fn sphericity_expression(theta: &Theta) -> Result<GraphQuotient, GraphError> {
    if delta_of_theta(theta).is_zero() {
        return Err(GraphError::DegenerateGraph);
    }
    let f = GraphQuotient::poly(theta.theta_zz());
    let bx = box_of_theta(theta);
    let f1 = lbar_graph_apply(theta, &f);
    let f2 = lbar_graph_apply(theta, &f1);
    let f3 = lbar_graph_apply(theta, &f2);
    let f4 = lbar_graph_apply(theta, &f3);
    let b1 = lbar_graph_apply(theta, &bx);
    let b2 = lbar_graph_apply(theta, &b1);
    let b3 = lbar_graph_apply(theta, &b2);
    let terms: [(i64, GraphQuotient, u32); 7] = [
        (1, f4, 4),
        (-6, b1.mul(&f3), 5),
        (-4, b2.mul(&f2), 5),
        (-1, b3.mul(&f1), 5),
        (15, b1.mul(&b1).mul(&f2), 6),
        (10, b1.mul(&b2).mul(&f1), 6),
        (-15, b1.mul(&b1).mul(&b1).mul(&f1), 7),
    ];
    let mut acc = GraphQuotient::poly(P::zero());
    for (w, t, n) in terms {
        let term = t.mul(&box_inv_pow(theta, n)).scale(&GaussianRational::from_ints(w, 0));
        acc = acc.add(&term, theta);
    }
    Ok(acc)
}

/// Rigid pair `Θ = w̄ + 2iφ`, `ρ = (w − w̄)/(2i) − φ`.
pub fn rigid_pair_from_phi(phi: &P) -> Result<(Theta, P), GraphError> {
    if phi.degree_in(Var::W) > 0 || phi.degree_in(Var::Wb) > 0 || !phi.is_real_defining() {
        return Err(GraphError::NotReal);
    }
    let two_i = GaussianRational::from_ints(0, 2);
    let half_i = GaussianRational::from_fracs((0, 1), (1, 2));
    let theta = Theta::new(P::var(Var::Wb) + phi.scale(&two_i))?;
    let rho = P::var(Var::W).scale(&-half_i.clone()) + P::var(Var::Wb).scale(&half_i) - phi.clone();
    Ok((theta, rho))
}

/// On-surface point of the rigid surface `Im w = φ(z, z̄)` with `Re w = u`.
pub fn rigid_surface_point(phi: &P, z: &GaussianRational, u: &GaussianRational) -> SurfacePoint<GaussianRational> {
    let h = phi.evaluate_exact(z, &GaussianRational::zero());
    let w = u.clone() + GaussianRational::i() * &h;
    SurfacePoint::new(z.clone(), w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    /// `Θ_zz ρ_w³ + H(ρ) = 0` in the polynomial ring.
    pub hessian_identity: bool,
    /// `L(ρ) + ρ_w³ Δ = 0` in the polynomial ring.
    pub levi_identity: bool,
    pub graph_identically_zero: bool,
    pub implicit_identically_zero: bool,
    pub points_checked: usize,
    pub graph_nonzero: usize,
    pub implicit_nonzero: usize,
    pub verdicts_agree: usize,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.hessian_identity && self.levi_identity && self.verdicts_agree == self.points_checked
    }
}

pub fn graph_implicit_crosscheck(
    phi: &P,
    points: &[SurfacePoint<GaussianRational>],
) -> Result<CrosscheckReport, GraphError> {
    let (theta, rho) = rigid_pair_from_phi(phi)?;
    let rho_w = rho.partial(Var::W);
    let rho_w3 = rho_w.pow(3);
    let hessian_identity = (theta.theta_zz().mul_ref(&rho_w3) + graph_hessian_h(&rho)?).is_zero();
    let levi_identity = (levi_determinant(&rho)? + rho_w3.mul_ref(&delta_of_theta(&theta))).is_zero();
    let sph = sphericity_expression(&theta)?;
    let inv = assemble_invariant(&rho, Branch::W)?;
    let mut report = CrosscheckReport {
        hessian_identity,
        levi_identity,
        graph_identically_zero: sph.num.is_zero(),
        implicit_identically_zero: inv.num.is_zero(),
        points_checked: 0,
        graph_nonzero: 0,
        implicit_nonzero: 0,
        verdicts_agree: 0,
    };
    for pt in points {
        if !rho.evaluate_point(pt).is_zero() {
            continue;
        }
        let Some(g) = sph.evaluate(&theta, pt) else { continue };
        let i = inv.num.evaluate_point(pt);
        report.points_checked += 1;
        report.graph_nonzero += usize::from(!g.is_zero());
        report.implicit_nonzero += usize::from(!i.is_zero());
        if g.is_zero() == i.is_zero() {
            report.verdicts_agree += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> P {
        P::var(x)
    }
    fn zzb() -> P {
        v(Var::Z) * v(Var::Zb)
    }
    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn delta_examples() {
        let heis = Theta::new(v(Var::Wb) + zzb().scale(&gi(0, 2))).unwrap();
        assert_eq!(delta_of_theta(&heis), P::constant(gi(0, -2)));
        assert!(delta_of_theta(&Theta::new(v(Var::Wb)).unwrap()).is_zero());
        let pert = Theta::new(v(Var::Wb) + (zzb() + zzb().pow(2)).scale(&gi(0, 2))).unwrap();
        assert_eq!(delta_of_theta(&pert), (P::one() + zzb().scale(&gi(4, 0))).scale(&gi(0, -2)));
        assert_eq!(Theta::new(v(Var::W)), Err(GraphError::NotTheta));
    }

    #[test]
    fn lbar_graph_examples() {
        let heis = Theta::new(v(Var::Wb) + zzb().scale(&gi(0, 2))).unwrap();
        assert!(lbar_graph_apply(&heis, &GraphQuotient::poly(P::one())).num.is_zero());
        assert!(lbar_graph_apply(&heis, &GraphQuotient::poly(heis.theta_zz())).num.is_zero());
        let pert = Theta::new(v(Var::Wb) + (zzb() + zzb().pow(2)).scale(&gi(0, 2))).unwrap();
        let f = GraphQuotient::poly(pert.theta_zz());
        assert_eq!(f.num, v(Var::Zb).pow(2).scale(&gi(0, 4)));
        let got = lbar_graph_apply(&pert, &f);
        assert!(got.same_value(&GraphQuotient::poly(v(Var::Zb).scale(&gi(0, 8))), &pert));
    }

    #[test]
    fn sphericity_examples() {
        let heis = Theta::new(v(Var::Wb) + zzb().scale(&gi(0, 2))).unwrap();
        assert!(sphericity_expression(&heis).unwrap().num.is_zero());
        let pert = Theta::new(v(Var::Wb) + (zzb() + zzb().pow(2)).scale(&gi(0, 2))).unwrap();
        assert!(!sphericity_expression(&pert).unwrap().num.is_zero());
        let scaled = Theta::new(v(Var::Wb) + zzb().scale(&gi(0, 8))).unwrap();
        assert!(sphericity_expression(&scaled).unwrap().num.is_zero());
        assert_eq!(sphericity_expression(&Theta::new(v(Var::Wb)).unwrap()), Err(GraphError::DegenerateGraph));
    }

    #[test]
    fn rigid_pairs() {
        let (t, rho) = rigid_pair_from_phi(&zzb()).unwrap();
        assert_eq!(t.poly(), &(v(Var::Wb) + zzb().scale(&gi(0, 2))));
        assert!(rho.is_real_defining());
        let (t0, rho0) = rigid_pair_from_phi(&P::zero()).unwrap();
        assert_eq!(t0.poly(), &v(Var::Wb));
        assert_eq!(rho0.partial(Var::W), P::constant(GaussianRational::from_fracs((0, 1), (-1, 2))));
        assert_eq!(rigid_pair_from_phi(&v(Var::Z)), Err(GraphError::NotReal));
    }

    #[test]
    fn heisenberg_levi_value() {
        let (_, rho) = rigid_pair_from_phi(&zzb()).unwrap();
        assert_eq!(levi_determinant(&rho).unwrap(), P::constant(GaussianRational::from_fracs((-1, 4), (0, 1))));
    }
}
