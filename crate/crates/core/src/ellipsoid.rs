//! Ellipsoids `a x² + y² + b u² + v² = 1` in ℂ², their normal forms, the
//! distinguished curve `γ`, and exact rational points.

use std::fmt;

use num_complex::Complex64;
use serde_json::Value;

use crate::error::EllipsoidError;
use crate::poly4::{Poly4, SurfacePoint, Var};
use crate::scalar::{GaussianRational, Rational, Scalar};
use crate::symbolic::RatFn;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            _ => Err(format!("unknown mode {s:?} (expected exact or float)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EllipsoidSpec {
    a: Rational,
    b: Rational,
}

impl EllipsoidSpec {
    pub fn new(a: Rational, b: Rational) -> Result<Self, EllipsoidError> {
        let one = Rational::one();
        if a < one || b < one {
            return Err(EllipsoidError::InvalidSpec(format!("need a >= 1 and b >= 1, got a = {a}, b = {b}")));
        }
        if a.is_one() && b.is_one() {
            return Err(EllipsoidError::InvalidSpec("(a, b) = (1, 1) is the sphere".into()));
        }
        Ok(EllipsoidSpec { a, b })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self, EllipsoidError> {
        EllipsoidSpec::new(Rational::from_int(a), Rational::from_int(b))
    }

    pub fn parse(a: &str, b: &str) -> Result<Self, EllipsoidError> {
        let p = |s: &str| s.parse::<Rational>().map_err(|e| EllipsoidError::InvalidSpec(e.to_string()));
        EllipsoidSpec::new(p(a)?, p(b)?)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn a_f64(&self) -> f64 {
        self.a.to_f64()
    }

    pub fn b_f64(&self) -> f64 {
        self.b.to_f64()
    }

    pub fn to_json(&self) -> String {
        format!("{{\"a\":\"{}\",\"b\":\"{}\"}}", self.a, self.b)
    }

    pub fn from_json(text: &str) -> Result<Self, EllipsoidError> {
        let v: Value = serde_json::from_str(text).map_err(|e| EllipsoidError::InvalidSpec(e.to_string()))?;
        let field = |k: &str| {
            v.get(k)
                .and_then(Value::as_str)
                .ok_or_else(|| EllipsoidError::InvalidSpec(format!("missing string field {k:?}")))
        };
        EllipsoidSpec::parse(field("a")?, field("b")?)
    }
}

impl fmt::Display for EllipsoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E(a = {}, b = {})", self.a, self.b)
    }
}

/// `((a−1)/4)(z² + z̄²) + ((a+1)/2)zz̄ + ((b−1)/4)(w² + w̄²) + ((b+1)/2)ww̄ − 1`
/// over any coefficient field.
pub fn ellipsoid_rho_generic<S: Scalar>(a: &S, b: &S) -> Poly4<S> {
    let one = S::one();
    let quarter = S::from_rational(&Rational::new(1, 4).expect("nonzero"));
    let half = S::from_rational(&Rational::new(1, 2).expect("nonzero"));
    let v = Poly4::<S>::var;
    let part = |c: &S, x: Var, xb: Var| {
        let sq = (c.clone() - &one) * &quarter;
        let mix = (c.clone() + &one) * &half;
        (v(x).pow(2) + v(xb).pow(2)).scale(&sq) + (v(x) * v(xb)).scale(&mix)
    };
    part(a, Var::Z, Var::Zb) + part(b, Var::W, Var::Wb) - Poly4::one()
}

pub fn ellipsoid_rho(spec: &EllipsoidSpec) -> Poly4<GaussianRational> {
    ellipsoid_rho_generic(&GaussianRational::real(spec.a.clone()), &GaussianRational::real(spec.b.clone()))
}

/// `ρ` with formal `a`, `b`.
pub fn ellipsoid_rho_symbolic() -> Poly4<RatFn> {
    ellipsoid_rho_generic(&RatFn::x(), &RatFn::y())
}

/// Real coordinates `(x, y, u, v)` of `γ(θ)`.
pub fn gamma_xyuv(spec: &EllipsoidSpec, theta: f64) -> [f64; 4] {
    let (a, b) = (spec.a_f64(), spec.b_f64());
    let r2 = a * b - 1.0;
    let (c, s) = (theta.cos(), theta.sin());
    [
        ((a - 1.0) / (a * r2)).sqrt() * c,
        (b * (a - 1.0) / r2).sqrt() * s,
        ((b - 1.0) / (b * r2)).sqrt() * s,
        -(a * (b - 1.0) / r2).sqrt() * c,
    ]
}

pub fn gamma_float(spec: &EllipsoidSpec, theta: f64) -> SurfacePoint<Complex64> {
    SurfacePoint::from_xyuv(gamma_xyuv(spec, theta))
}

/// `a x² + y² + b u² + v² − 1` in real coordinates.
pub fn residual_xyuv(spec: &EllipsoidSpec, p: [f64; 4]) -> f64 {
    spec.a_f64() * p[0] * p[0] + p[1] * p[1] + spec.b_f64() * p[2] * p[2] + p[3] * p[3] - 1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormDirection {
    AlphaBetaToA,
    AToCapitalA,
    CapitalAToA,
}

/// `a = α/β`.
pub fn alpha_beta_to_a(alpha: &Rational, beta: &Rational) -> Result<Rational, EllipsoidError> {
    if beta.signum() <= 0 || alpha < beta {
        return Err(EllipsoidError::OutOfDomain(format!("need alpha >= beta > 0, got ({alpha}, {beta})")));
    }
    Ok(alpha.clone() * &beta.inv().expect("positive"))
}

/// `A = (a − 1)/(2a + 2)`.
pub fn a_to_capital(a: &Rational) -> Result<Rational, EllipsoidError> {
    if *a < Rational::one() {
        return Err(EllipsoidError::OutOfDomain(format!("need a >= 1, got {a}")));
    }
    let den = a.clone() * &Rational::from_int(2) + &Rational::from_int(2);
    Ok((a.clone() - &Rational::one()) * &den.inv().expect("positive"))
}

/// `a = (1 + 2A)/(1 − 2A)`.
pub fn capital_to_a(cap: &Rational) -> Result<Rational, EllipsoidError> {
    let two_a = cap.clone() * &Rational::from_int(2);
    if cap.is_negative() || two_a >= Rational::one() {
        return Err(EllipsoidError::OutOfDomain(format!("need 0 <= A < 1/2, got {cap}")));
    }
    let den = Rational::one() - &two_a;
    Ok((Rational::one() + &two_a) * &den.inv().expect("positive"))
}

/// Converts a single value; `AlphaBetaToA` expects `(α, Some(β))`.
pub fn normal_form_convert(
    value: &Rational,
    beta: Option<&Rational>,
    direction: NormalFormDirection,
) -> Result<Rational, EllipsoidError> {
    match direction {
        NormalFormDirection::AlphaBetaToA => {
            let beta = beta.ok_or_else(|| EllipsoidError::OutOfDomain("beta required".into()))?;
            alpha_beta_to_a(value, beta)
        }
        NormalFormDirection::AToCapitalA => a_to_capital(value),
        NormalFormDirection::CapitalAToA => capital_to_a(value),
    }
}

/// An ellipsoid in ℂ^N given by weights `(α_i, β_i)`, with its derived forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForms {
    pub alpha_beta: Vec<(Rational, Rational)>,
    pub a_form: Vec<Rational>,
    pub capital_form: Vec<Rational>,
}

impl NormalForms {
    pub fn from_alpha_beta(pairs: &[(Rational, Rational)]) -> Result<Self, EllipsoidError> {
        let a_form = pairs.iter().map(|(al, be)| alpha_beta_to_a(al, be)).collect::<Result<Vec<_>, _>>()?;
        let capital_form = a_form.iter().map(a_to_capital).collect::<Result<Vec<_>, _>>()?;
        Ok(NormalForms { alpha_beta: pairs.to_vec(), a_form, capital_form })
    }
}

/// Whether two ellipsoids have the same multiset of `(α − β)/(α + β)`.
pub fn webster_equivalent(
    e1: &[(Rational, Rational)],
    e2: &[(Rational, Rational)],
) -> Result<bool, EllipsoidError> {
    let ratios = |e: &[(Rational, Rational)]| -> Result<Vec<Rational>, EllipsoidError> {
        let mut out = e
            .iter()
            .map(|(al, be)| {
                if al.signum() <= 0 || be.signum() <= 0 {
                    return Err(EllipsoidError::OutOfDomain(format!("entries must be positive, got ({al}, {be})")));
                }
                Ok((al.clone() - be) * &(al.clone() + be).inv().expect("positive"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.sort();
        Ok(out)
    };
    Ok(ratios(e1)? == ratios(e2)?)
}

/// Inverse stereographic image of `(α, β, γ)` on `S³`.
pub fn sphere_rational_point(alpha: &Rational, beta: &Rational, gamma: &Rational) -> SurfacePoint<GaussianRational> {
    let n = alpha.clone() * alpha + &(beta.clone() * beta) + &(gamma.clone() * gamma);
    let inv = (Rational::one() + &n).inv().expect("positive");
    let two = Rational::from_int(2);
    let x = two.clone() * alpha * &inv;
    let y = two.clone() * beta * &inv;
    let u = two * gamma * &inv;
    let v = (Rational::one() - &n) * &inv;
    SurfacePoint::new(GaussianRational::new(x, y), GaussianRational::new(u, v))
}

/// Second intersection of the line through `(0, 0, 0, 1)` with direction
/// `dir` and the ellipsoid; `None` for a zero direction.
pub fn ellipsoid_rational_point(spec: &EllipsoidSpec, dir: &[Rational; 4]) -> Option<SurfacePoint<GaussianRational>> {
    let q = spec.a.clone() * &dir[0] * &dir[0]
        + &(dir[1].clone() * &dir[1])
        + &(spec.b.clone() * &dir[2] * &dir[2])
        + &(dir[3].clone() * &dir[3]);
    if q.is_zero() {
        return None;
    }
    let t = -(Rational::from_int(2) * &dir[3]) * &q.inv().ok()?;
    let c = |k: usize| t.clone() * &dir[k];
    Some(SurfacePoint::new(
        GaussianRational::new(c(0), c(1)),
        GaussianRational::new(c(2), Rational::one() + &c(3)),
    ))
}

/// `w = u + i|z|²` on the Heisenberg surface `Im w = |z|²`.
pub fn heisenberg_rational_point(x: &Rational, y: &Rational, u: &Rational) -> SurfacePoint<GaussianRational> {
    let z = GaussianRational::new(x.clone(), y.clone());
    SurfacePoint::new(z.clone(), GaussianRational::new(u.clone(), z.norm_sqr()))
}

/// Heisenberg defining polynomial `(w − w̄)/(2i) − zz̄`.
pub fn heisenberg_rho() -> Poly4<GaussianRational> {
    let half_i = GaussianRational::from_fracs((0, 1), (1, 2));
    let v = Poly4::<GaussianRational>::var;
    v(Var::W).scale(&-half_i.clone()) + v(Var::Wb).scale(&half_i) - v(Var::Z) * v(Var::Zb)
}

/// Unit sphere `zz̄ + ww̄ − 1`.
pub fn sphere_rho() -> Poly4<GaussianRational> {
    let v = Poly4::<GaussianRational>::var;
    v(Var::Z) * v(Var::Zb) + v(Var::W) * v(Var::Wb) - Poly4::one()
}

pub fn on_surface_exact(rho: &Poly4<GaussianRational>, pt: &SurfacePoint<GaussianRational>) -> bool {
    rho.evaluate_point(pt).is_zero()
}

pub fn on_surface_float(rho: &Poly4<GaussianRational>, pt: &SurfacePoint<Complex64>) -> bool {
    rho.evaluate_float(pt.z, pt.w).norm() < 1e-12
}
