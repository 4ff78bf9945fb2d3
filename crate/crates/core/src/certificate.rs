//! Pullback of polynomials along `γ` and the exact vanishing certificate.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::ellipsoid::{ellipsoid_rho, ellipsoid_rho_symbolic, EllipsoidSpec};
use crate::error::RadicalError;
use crate::invariant::{assemble_invariant, Branch};
use crate::poly4::{Exp, Poly4};
use crate::radical::{RadicalElement, RadicalTower, TrigLaurent};
use crate::scalar::{GaussianRational, Scalar};
use crate::symbolic::RatFn;

/// `γ(θ)` as `(z, w, z̄, w̄)` over a tower:
/// `z = (p/(sr)) cos θ + i (tp/r) sin θ`, `w = (q/(tr)) sin θ − i (sq/r) cos θ`.
pub fn gamma_radical<S: Scalar>(tower: &Arc<RadicalTower<S>>) -> Result<[TrigLaurent<S>; 4], RadicalError> {
    let s = RadicalElement::s(tower);
    let t = RadicalElement::t(tower);
    let inv_named = |x: &RadicalElement<S>, name: &str| {
        x.inv().map_err(|_| RadicalError::NonInvertibleGenerator(name.to_string()))
    };
    let s_inv = inv_named(&s, "s")?;
    let t_inv = inv_named(&t, "t")?;
    let r_inv = RadicalElement::invert_generator(tower, "r")?;
    let p = RadicalElement::generator(tower, "p").expect("tower has p");
    let q = RadicalElement::generator(tower, "q").expect("tower has q");
    let i = RadicalElement::scalar(tower, S::imag_unit());
    let cos = TrigLaurent::cos(tower);
    let sin = TrigLaurent::sin(tower);

    let zc = p.mul(&s_inv)?.mul(&r_inv)?;
    let zs = i.mul(&t)?.mul(&p)?.mul(&r_inv)?;
    let ws = q.mul(&t_inv)?.mul(&r_inv)?;
    let wc = i.mul(&s)?.mul(&q)?.mul(&r_inv)?.neg();
    let z = cos.scale(&zc)?.add(&sin.scale(&zs)?)?;
    let w = sin.scale(&ws)?.add(&cos.scale(&wc)?)?;
    let zb = z.conj_image();
    let wb = w.conj_image();
    Ok([z, w, zb, wb])
}

/// `num(γ(θ))` as a trigonometric Laurent polynomial.
pub fn pullback<S: Scalar>(num: &Poly4<S>, coords: &[TrigLaurent<S>; 4]) -> Result<TrigLaurent<S>, RadicalError> {
    let tower = coords[0].tower().clone();
    for c in &coords[1..] {
        if c.tower().id() != tower.id() {
            return Err(RadicalError::TowerMismatch);
        }
    }
    let maxe = num.max_exponents();
    let powers: Vec<Vec<TrigLaurent<S>>> = (0..4)
        .map(|k| {
            let mut v = vec![TrigLaurent::constant(&RadicalElement::one(&tower))];
            for j in 1..=maxe[k] as usize {
                let next = v[j - 1].mul_unchecked(&coords[k]);
                v.push(next);
            }
            v
        })
        .collect();

    let mut groups: BTreeMap<(u32, u32), Vec<(u32, u32, S)>> = BTreeMap::new();
    for (e, c) in num.terms() {
        groups.entry((e[0], e[1])).or_default().push((e[2], e[3], c.clone()));
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let parts: Vec<TrigLaurent<S>> = groups
        .par_iter()
        .map(|((ez, ew), inner_terms)| {
            let mut inner = TrigLaurent::zero(&tower);
            for (ezb, eww, c) in inner_terms {
                let m = powers[2][*ezb as usize].mul_unchecked(&powers[3][*eww as usize]).scale_scalar(c);
                inner.add_assign_unchecked(&m);
            }
            powers[0][*ez as usize].mul_unchecked(&powers[1][*ew as usize]).mul_unchecked(&inner)
        })
        .collect();
    let mut acc = TrigLaurent::zero(&tower);
    for p in &parts {
        acc.add_assign_unchecked(p);
    }
    Ok(acc)
}

/// `D·γ` and `D = s t r²`; over the symbolic tower `D·γ` has polynomial
/// coefficients, which keeps the pullback free of rational-function
/// denominators.
pub fn gamma_cleared<S: Scalar>(
    tower: &Arc<RadicalTower<S>>,
) -> Result<([TrigLaurent<S>; 4], RadicalElement<S>), RadicalError> {
    let r = RadicalElement::generator(tower, "r").expect("tower has r");
    let d = RadicalElement::s(tower).mul(&RadicalElement::t(tower))?.mul(&r.mul(&r)?)?;
    let [z, w, zb, wb] = gamma_radical(tower)?;
    Ok(([z.scale(&d)?, w.scale(&d)?, zb.scale(&d)?, wb.scale(&d)?], d))
}

/// `D^deg · num(γ)` computed from the cleared coordinates of
/// [`gamma_cleared`]; zero exactly when `num(γ)` is, `D` being invertible.
pub fn pullback_cleared<S: Scalar>(
    num: &Poly4<S>,
    cleared: &[TrigLaurent<S>; 4],
    d: &RadicalElement<S>,
) -> Result<TrigLaurent<S>, RadicalError> {
    let deg = num.total_degree();
    let mut dpow_terms: BTreeMap<u32, Vec<(Exp, S)>> = BTreeMap::new();
    for (e, c) in num.terms() {
        dpow_terms.entry(deg - e.iter().sum::<u32>()).or_default().push((*e, c.clone()));
    }
    let mut acc = TrigLaurent::zero(cleared[0].tower());
    let dl = TrigLaurent::constant(d);
    for (k, terms) in dpow_terms {
        let mut homog = Poly4::zero();
        for (e, c) in terms {
            homog.add_term(e, c);
        }
        let part = pullback(&homog, cleared)?;
        acc.add_assign_unchecked(&part.mul(&dl.pow(k))?);
    }
    Ok(acc)
}

/// Identically zero as a function of `θ` (component-wise zero).
pub fn is_zero_trig<S: Scalar>(t: &TrigLaurent<S>) -> bool {
    t.is_zero()
}

/// `D^deg · num(v)` for radical values `v` of the cleared coordinates.
pub fn eval_cleared<S: Scalar>(
    num: &Poly4<S>,
    vals: &[RadicalElement<S>; 4],
    d: &RadicalElement<S>,
) -> Result<RadicalElement<S>, RadicalError> {
    let tower = d.tower().clone();
    let deg = num.total_degree();
    let maxe = num.max_exponents();
    let powers = |x: &RadicalElement<S>, n: u32| -> Result<Vec<RadicalElement<S>>, RadicalError> {
        let mut v = vec![RadicalElement::one(&tower)];
        for j in 1..=n as usize {
            let next = v[j - 1].mul(x)?;
            v.push(next);
        }
        Ok(v)
    };
    let pw: Vec<Vec<RadicalElement<S>>> = (0..4).map(|k| powers(&vals[k], maxe[k])).collect::<Result<_, _>>()?;
    let dp = powers(d, deg)?;
    let mut acc = RadicalElement::zero(&tower);
    for (e, c) in num.terms() {
        let m = pw[0][e[0] as usize]
            .mul(&pw[1][e[1] as usize])?
            .mul(&pw[2][e[2] as usize])?
            .mul(&pw[3][e[3] as usize])?
            .mul(&dp[(deg - e.iter().sum::<u32>()) as usize])?
            .scale(c);
        acc = acc.add(&m)?;
    }
    Ok(acc)
}

/// Whether `num(γ)` vanishes, decided by exact evaluation at `2N + 1`
/// distinct nodes `ζ = 1, 2, …`; `N` bounds the frequencies of the pullback,
/// so vanishing at the nodes forces every Laurent coefficient to vanish.
pub fn vanishes_at_nodes<S: Scalar>(
    num: &Poly4<S>,
    cleared: &[TrigLaurent<S>; 4],
    d: &RadicalElement<S>,
) -> Result<bool, RadicalError> {
    let n = num.total_degree() as i64;
    for node in 1..=(2 * n + 1) {
        let x = S::from_int(node);
        let vals = [
            cleared[0].eval_at(&x)?,
            cleared[1].eval_at(&x)?,
            cleared[2].eval_at(&x)?,
            cleared[3].eval_at(&x)?,
        ];
        if !eval_cleared(num, &vals, d)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How vanishing along `γ` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateMethod {
    /// Full Laurent expansion of the pullback.
    Expansion,
    /// Exact evaluation at enough nodes to pin down the Laurent polynomial.
    Nodes,
}

#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub tower: String,
    pub method: CertificateMethod,
    pub numerator_terms: usize,
    pub numerator_degree: u32,
    /// `γ*ρ = 0`, i.e. `γ` lies on the ellipsoid.
    pub curve_on_surface: bool,
    /// `γ*(num) = 0`, the invariant vanishes along `γ`.
    pub invariant_vanishes: bool,
    pub elapsed: Duration,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.curve_on_surface && self.invariant_vanishes
    }
}

fn certify<S: Scalar>(
    label: String,
    rho: &Poly4<S>,
    tower: &Arc<RadicalTower<S>>,
    method: CertificateMethod,
) -> Result<CertificateReport, RadicalError> {
    let start = Instant::now();
    let num = assemble_invariant(rho, Branch::W)?.num;
    let (coords, d) = gamma_cleared(tower)?;
    let check = |p: &Poly4<S>| -> Result<bool, RadicalError> {
        match method {
            CertificateMethod::Expansion => Ok(is_zero_trig(&pullback_cleared(p, &coords, &d)?)),
            CertificateMethod::Nodes => vanishes_at_nodes(p, &coords, &d),
        }
    };
    let on = check(rho)?;
    let vanishes = check(&num)?;
    Ok(CertificateReport {
        tower: label,
        method,
        numerator_terms: num.len(),
        numerator_degree: num.total_degree(),
        curve_on_surface: on,
        invariant_vanishes: vanishes,
        elapsed: start.elapsed(),
    })
}

/// Certificate over the fixed tower of one ellipsoid.
pub fn certify_fixed(spec: &EllipsoidSpec) -> Result<CertificateReport, RadicalError> {
    let tower = RadicalTower::for_spec(spec);
    certify(format!("fixed {spec}"), &ellipsoid_rho(spec), &tower, CertificateMethod::Expansion)
}

/// Certificate with `a`, `b` formal.
pub fn certify_symbolic() -> Result<CertificateReport, RadicalError> {
    let tower = RadicalTower::<RatFn>::symbolic();
    certify("symbolic (a, b)".to_string(), &ellipsoid_rho_symbolic(), &tower, CertificateMethod::Expansion)
}

/// Lifts a Gaussian-rational polynomial into a fixed tower's scalar field.
pub fn pullback_exact(
    num: &Poly4<GaussianRational>,
    spec: &EllipsoidSpec,
) -> Result<TrigLaurent<GaussianRational>, RadicalError> {
    let tower = RadicalTower::for_spec(spec);
    pullback(num, &gamma_radical(&tower)?)
}
