//! Sparse polynomials in the four formally independent variables
//! `z, w, z̄, w̄`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde_json::Value;

use crate::error::PolyError;
use crate::scalar::{GaussianRational, Rational, Scalar};

/// Exponent vector `(e_z, e_w, e_z̄, e_w̄)`.
pub type Exp = [u32; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z,
    W,
    Zb,
    Wb,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z, Var::W, Var::Zb, Var::Wb];

    pub fn index(self) -> usize {
        match self {
            Var::Z => 0,
            Var::W => 1,
            Var::Zb => 2,
            Var::Wb => 3,
        }
    }

    pub fn name(self) -> &'static str {
        ["z", "w", "zb", "wb"][self.index()]
    }

    /// Partner under conjugation (`z ↔ z̄`, `w ↔ w̄`).
    pub fn conj(self) -> Var {
        match self {
            Var::Z => Var::Zb,
            Var::W => Var::Wb,
            Var::Zb => Var::Z,
            Var::Wb => Var::W,
        }
    }

    /// Partner under the formal swap `z ↔ w`, `z̄ ↔ w̄`.
    pub fn swap(self) -> Var {
        match self {
            Var::Z => Var::W,
            Var::W => Var::Z,
            Var::Zb => Var::Wb,
            Var::Wb => Var::Zb,
        }
    }
}

fn grlex(a: &Exp, b: &Exp) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn divides(d: &Exp, m: &Exp) -> bool {
    (0..4).all(|k| d[k] <= m[k])
}

#[derive(Clone, PartialEq)]
pub struct Poly4<S> {
    terms: BTreeMap<Exp, S>,
}

impl<S: Scalar> Default for Poly4<S> {
    fn default() -> Self {
        Poly4 { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> Poly4<S> {
    pub fn zero() -> Self {
        Poly4::default()
    }

    pub fn one() -> Self {
        Poly4::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Poly4::monomial([0; 4], c)
    }

    pub fn monomial(e: Exp, c: S) -> Self {
        let mut p = Poly4::zero();
        p.add_term(e, c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Poly4::monomial(e, S::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp, S)>>(terms: I) -> Self {
        let mut p = Poly4::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exp) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, e: Exp, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Poly4::zero();
        }
        Poly4 {
            terms: self.terms.iter().map(|(e, v)| (*e, v.clone() * c)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Poly4::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                out.add_term(e, c1.clone() * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly4::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn partial(&self, v: Var) -> Self {
        let k = v.index();
        let mut out = Poly4::zero();
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[k] -= 1;
            out.add_term(e2, c.clone() * &S::from_int(e[k] as i64));
        }
        out
    }

    /// Swaps `z ↔ z̄`, `w ↔ w̄` and conjugates the coefficients.
    pub fn conjugate_swap(&self) -> Self {
        Poly4 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[2], e[3], e[0], e[1]], c.conj()))
                .collect(),
        }
    }

    /// The formal exchange `z ↔ w`, `z̄ ↔ w̄`; coefficients untouched.
    pub fn swap_zw(&self) -> Self {
        Poly4 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[1], e[0], e[3], e[2]], c.clone()))
                .collect(),
        }
    }

    pub fn is_real_defining(&self) -> bool {
        self.conjugate_swap() == *self
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly4<T> {
        Poly4::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Evaluates in the coefficient field itself.
    pub fn eval_scalar(&self, vals: &[S; 4]) -> S {
        let powers = power_tables(vals, &self.max_exponents(), S::one());
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for k in 0..4 {
                if e[k] > 0 {
                    m = m * &powers[k][e[k] as usize];
                }
            }
            acc += &m;
        }
        acc
    }

    pub fn max_exponents(&self) -> Exp {
        let mut m = [0; 4];
        for e in self.terms.keys() {
            for k in 0..4 {
                m[k] = m[k].max(e[k]);
            }
        }
        m
    }

    /// Simultaneous substitution of every variable by a polynomial.
    pub fn compose(&self, images: &[Poly4<S>; 4]) -> Self {
        let maxe = self.max_exponents();
        let powers: Vec<Vec<Poly4<S>>> = (0..4)
            .map(|k| {
                let mut v = vec![Poly4::one()];
                for j in 1..=maxe[k] as usize {
                    let next = v[j - 1].mul_ref(&images[k]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly4::zero();
        for (e, c) in &self.terms {
            let mut m = Poly4::constant(c.clone());
            for k in 0..4 {
                if e[k] > 0 {
                    m = m.mul_ref(&powers[k][e[k] as usize]);
                }
            }
            out = out + m;
        }
        out
    }

    /// Substitutes a single variable, leaving the others in place.
    pub fn substitute(&self, v: Var, image: &Poly4<S>) -> Self {
        let mut images = Var::ALL.map(Poly4::var);
        images[v.index()] = image.clone();
        self.compose(&images)
    }

    fn leading(&self) -> Option<(&Exp, &S)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Remainder of division by the single divisor `d` under graded-lex order
    /// with `z > w > z̄ > w̄`. No remainder term is divisible by the leading
    /// monomial of `d`.
    pub fn reduce_mod(&self, d: &Poly4<S>) -> Result<Poly4<S>, PolyError> {
        let (dl, dc) = d.leading().ok_or(PolyError::ZeroDivisor)?;
        let dl = *dl;
        let dc_inv = dc.inv()?;
        let mut p = self.clone();
        let mut rem = Poly4::zero();
        while let Some((lm, lc)) = p.leading() {
            let lm = *lm;
            let lc = lc.clone();
            if divides(&dl, &lm) {
                let shift = [lm[0] - dl[0], lm[1] - dl[1], lm[2] - dl[2], lm[3] - dl[3]];
                let f = lc * &dc_inv;
                for (e, c) in &d.terms {
                    let e2 = [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2], e[3] + shift[3]];
                    p.add_term(e2, -(c.clone() * &f));
                }
            } else {
                p.terms.remove(&lm);
                rem.add_term(lm, lc);
            }
        }
        Ok(rem)
    }
}

fn power_tables<T: Scalar>(vals: &[T; 4], maxe: &Exp, one: T) -> Vec<Vec<T>> {
    (0..4)
        .map(|k| {
            let mut v = vec![one.clone()];
            for j in 1..=maxe[k] as usize {
                let next = v[j - 1].clone() * &vals[k];
                v.push(next);
            }
            v
        })
        .collect()
}

impl Poly4<GaussianRational> {
    /// Exact value at `(z, w)` with `z̄ := conj z`, `w̄ := conj w`.
    pub fn evaluate_exact(&self, z: &GaussianRational, w: &GaussianRational) -> GaussianRational {
        self.eval_scalar(&[z.clone(), w.clone(), z.conj(), w.conj()])
    }

    pub fn evaluate_float(&self, z: Complex64, w: Complex64) -> Complex64 {
        FloatPoly::from_exact(self).eval(z, w)
    }

    pub fn evaluate_point(&self, pt: &SurfacePoint<GaussianRational>) -> GaussianRational {
        self.evaluate_exact(&pt.z, &pt.w)
    }

    /// Parses the polynomial JSON format.
    pub fn from_json(text: &str) -> Result<Self, PolyError> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| PolyError::MalformedInput(format!("invalid JSON: {e}")))?;
        let bad = |m: &str| PolyError::MalformedInput(m.to_string());
        let vars = v.get("vars").ok_or_else(|| bad("missing \"vars\""))?;
        if vars != &serde_json::json!(["z", "w", "zb", "wb"]) {
            return Err(bad("\"vars\" must be [\"z\",\"w\",\"zb\",\"wb\"]"));
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"terms\" array"))?;
        let mut out = BTreeMap::new();
        for (idx, t) in terms.iter().enumerate() {
            let e = t
                .get("e")
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("term {idx}: missing exponent vector \"e\"")))?;
            if e.len() != 4 {
                return Err(bad(&format!("term {idx}: exponent vector must have 4 entries")));
            }
            let mut exp = [0u32; 4];
            for k in 0..4 {
                exp[k] = e[k]
                    .as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| bad(&format!("term {idx}: exponents must be nonnegative integers")))?;
            }
            let field = |name: &str| -> Result<Rational, PolyError> {
                let s = t
                    .get(name)
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad(&format!("term {idx}: missing string field \"{name}\"")))?;
                Rational::parse_canonical(s)
                    .map_err(|e| PolyError::MalformedInput(format!("term {idx}: {e}")))
            };
            let c = GaussianRational::new(field("re")?, field("im")?);
            if c.is_zero() {
                return Err(bad(&format!("term {idx}: zero coefficient")));
            }
            if out.insert(exp, c).is_some() {
                return Err(bad(&format!("term {idx}: duplicate exponent vector {exp:?}")));
            }
        }
        Ok(Poly4 { terms: out })
    }

    /// Canonical JSON: one term per line, terms in lexicographic exponent order.
    pub fn to_json(&self) -> String {
        let mut s = String::from("{\"vars\":[\"z\",\"w\",\"zb\",\"wb\"],\"terms\":[");
        for (k, (e, c)) in self.terms.iter().enumerate() {
            s.push_str(if k == 0 { "\n" } else { ",\n" });
            s.push_str(&format!(
                "{{\"e\":[{},{},{},{}],\"re\":\"{}\",\"im\":\"{}\"}}",
                e[0], e[1], e[2], e[3], c.re, c.im
            ));
        }
        s.push_str("\n]}\n");
        s
    }
}

impl<S: Scalar> fmt::Display for Poly4<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        for (k, e) in keys.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[v.index()] > 0)
                .map(|v| match e[v.index()] {
                    1 => v.name().to_string(),
                    n => format!("{}^{n}", v.name()),
                })
                .collect();
            let c = &self.terms[e];
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for Poly4<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar> Add for Poly4<S> {
    type Output = Poly4<S>;
    fn add(mut self, rhs: Poly4<S>) -> Poly4<S> {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<'a, S: Scalar> Add<&'a Poly4<S>> for &'a Poly4<S> {
    type Output = Poly4<S>;
    fn add(self, rhs: &'a Poly4<S>) -> Poly4<S> {
        self.clone() + rhs.clone()
    }
}

impl<S: Scalar> Sub for Poly4<S> {
    type Output = Poly4<S>;
    fn sub(mut self, rhs: Poly4<S>) -> Poly4<S> {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl<'a, S: Scalar> Sub<&'a Poly4<S>> for &'a Poly4<S> {
    type Output = Poly4<S>;
    fn sub(self, rhs: &'a Poly4<S>) -> Poly4<S> {
        self.clone() - rhs.clone()
    }
}

impl<S: Scalar> Mul for Poly4<S> {
    type Output = Poly4<S>;
    fn mul(self, rhs: Poly4<S>) -> Poly4<S> {
        self.mul_ref(&rhs)
    }
}

impl<'a, S: Scalar> Mul<&'a Poly4<S>> for &'a Poly4<S> {
    type Output = Poly4<S>;
    fn mul(self, rhs: &'a Poly4<S>) -> Poly4<S> {
        self.mul_ref(rhs)
    }
}

impl<'a, S: Scalar> Mul<&'a Poly4<S>> for Poly4<S> {
    type Output = Poly4<S>;
    fn mul(self, rhs: &'a Poly4<S>) -> Poly4<S> {
        self.mul_ref(rhs)
    }
}

impl<S: Scalar> Neg for Poly4<S> {
    type Output = Poly4<S>;
    fn neg(self) -> Poly4<S> {
        Poly4 {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

/// A point `(z, w)` of ℂ²; barred coordinates are the conjugates.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfacePoint<T> {
    pub z: T,
    pub w: T,
}

impl<T> SurfacePoint<T> {
    pub fn new(z: T, w: T) -> Self {
        SurfacePoint { z, w }
    }
}

impl SurfacePoint<GaussianRational> {
    pub fn to_float(&self) -> SurfacePoint<Complex64> {
        SurfacePoint::new(self.z.to_c64(), self.w.to_c64())
    }
}

impl SurfacePoint<Complex64> {
    /// Real coordinates `(x, y, u, v)`.
    pub fn xyuv(&self) -> [f64; 4] {
        [self.z.re, self.z.im, self.w.re, self.w.im]
    }

    pub fn from_xyuv(c: [f64; 4]) -> Self {
        SurfacePoint::new(Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]))
    }
}

/// Double-precision copy of an exact polynomial for repeated evaluation.
#[derive(Clone, Debug)]
pub struct FloatPoly {
    terms: Vec<(Exp, Complex64)>,
    max_exp: Exp,
}

impl FloatPoly {
    pub fn from_exact(p: &Poly4<GaussianRational>) -> Self {
        FloatPoly {
            terms: p.terms().map(|(e, c)| (*e, c.to_c64())).collect(),
            max_exp: p.max_exponents(),
        }
    }

    pub fn terms(&self) -> &[(Exp, Complex64)] {
        &self.terms
    }

    pub fn max_exponents(&self) -> Exp {
        self.max_exp
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.eval4([z, w, z.conj(), w.conj()])
    }

    pub fn eval4(&self, vals: [Complex64; 4]) -> Complex64 {
        let mut pw: [Vec<Complex64>; 4] = Default::default();
        for k in 0..4 {
            let mut v = Vec::with_capacity(self.max_exp[k] as usize + 1);
            v.push(Complex64::new(1.0, 0.0));
            for j in 1..=self.max_exp[k] as usize {
                v.push(v[j - 1] * vals[k]);
            }
            pw[k] = v;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += c * pw[0][e[0] as usize] * pw[1][e[1] as usize] * pw[2][e[2] as usize] * pw[3][e[3] as usize];
        }
        acc
    }
}
