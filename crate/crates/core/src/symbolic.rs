//! Rational functions in two formal real symbols `x`, `y` over the Gaussian
//! rationals.
//!
//! Used as the scalar field of the symbolic radical tower, where the
//! ellipsoid parameters `a = x`, `b = y` stay formal so that one computation
//! covers every ellipsoid at once.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::ScalarError;
use crate::scalar::{GaussianRational, Rational, Scalar};

type Monomial = (u32, u32);

fn grlex(a: &Monomial, b: &Monomial) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

/// Sparse polynomial in `x`, `y` with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = SymPoly::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn monomial(x_exp: u32, y_exp: u32, c: GaussianRational) -> Self {
        let mut p = SymPoly::zero();
        p.add_term((x_exp, y_exp), c);
        p
    }

    pub fn x() -> Self {
        SymPoly::monomial(1, 0, GaussianRational::one())
    }

    pub fn y() -> Self {
        SymPoly::monomial(0, 1, GaussianRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn sub_term(&mut self, m: Monomial, c: &GaussianRational) {
        self.add_term(m, -c.clone());
    }

    pub fn leading(&self) -> Option<(Monomial, &GaussianRational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(m, c)| (*m, c))
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|m| m.0).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|m| m.1).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => (0, 0),
            Some(first) => it.fold(*first, |acc, m| (acc.0.min(m.0), acc.1.min(m.1))),
        }
    }

    fn shift_down(&self, m: Monomial) -> SymPoly {
        SymPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ((k.0 - m.0, k.1 - m.1), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v.clone() * c)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term((m1.0 + m2.0, m1.1 + m2.1), c1.clone() * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::constant(GaussianRational::one());
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn conj(&self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &SymPoly) -> Option<SymPoly> {
        let (dm, dc) = d.leading()?;
        if self.is_zero() {
            return Some(SymPoly::zero());
        }
        if self.degree_x() < d.degree_x() || self.degree_y() < d.degree_y() {
            return None;
        }
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = SymPoly::zero();
        while let Some((lm, lc)) = rem.leading() {
            if lm.0 < dm.0 || lm.1 < dm.1 {
                return None;
            }
            let qm = (lm.0 - dm.0, lm.1 - dm.1);
            let qc = lc.clone() * &dc_inv;
            for (m, c) in &d.terms {
                rem.sub_term((m.0 + qm.0, m.1 + qm.1), &(c.clone() * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn eval(&self, x: &GaussianRational, y: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for ((i, j), c) in &self.terms {
            acc += &(c.clone() * &x.pow(*i) * &y.pow(*j));
        }
        acc
    }

    /// Splits `self = unit · x^i y^j · rest` with `rest` monic and free of
    /// monomial factors. `rest` is `None` when it is constant.
    fn normalize(&self) -> (GaussianRational, Monomial, Option<SymPoly>) {
        let mc = self.monomial_content();
        let shifted = self.shift_down(mc);
        let (_, lc) = shifted.leading().expect("nonzero polynomial");
        let unit = lc.clone();
        if shifted.terms.len() == 1 {
            return (unit, mc, None);
        }
        let inv = unit.inv().expect("nonzero leading coefficient");
        (unit, mc, Some(shifted.scale(&inv)))
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut keys: Vec<_> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        for m in keys {
            let c = &self.terms[m];
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match *m {
                (0, 0) => String::new(),
                (i, 0) => format!("x^{i}"),
                (0, j) => format!("y^{j}"),
                (i, j) => format!("x^{i}*y^{j}"),
            };
            if mono.is_empty() {
                write!(f, "{c:?}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{c:?}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(mut self, rhs: SymPoly) -> SymPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(mut self, rhs: SymPoly) -> SymPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

/// Element of `Q(i)(x, y)`.
///
/// The denominator is a product of monic polynomial factors; `x` and `y`
/// appear as atomic factors. After every operation, numerator factors that
/// exactly divide out of the denominator are cancelled, so a value that is a
/// polynomial ends up with an empty denominator.
#[derive(Clone)]
pub struct RatFn {
    num: SymPoly,
    den: Vec<(SymPoly, u32)>,
}

impl RatFn {
    pub fn from_poly(p: SymPoly) -> Self {
        RatFn { num: p, den: Vec::new() }
    }

    pub fn x() -> Self {
        RatFn::from_poly(SymPoly::x())
    }

    pub fn y() -> Self {
        RatFn::from_poly(SymPoly::y())
    }

    pub fn from_gaussian_const(c: GaussianRational) -> Self {
        RatFn::from_poly(SymPoly::constant(c))
    }

    pub fn numerator(&self) -> &SymPoly {
        &self.num
    }

    /// The value as a polynomial, when its denominator has cancelled.
    pub fn as_polynomial(&self) -> Option<&SymPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn denominator(&self) -> SymPoly {
        self.den
            .iter()
            .fold(SymPoly::constant(GaussianRational::one()), |acc, (f, e)| acc.mul_ref(&f.pow(*e)))
    }

    /// Value at numeric `(x, y)`; `None` if the denominator vanishes there.
    pub fn eval(&self, x: &GaussianRational, y: &GaussianRational) -> Option<GaussianRational> {
        let d = self.denominator().eval(x, y);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x, y) * &d.inv().ok()?)
    }

    fn push_factor(den: &mut Vec<(SymPoly, u32)>, f: SymPoly, e: u32) {
        if e == 0 {
            return;
        }
        match den.iter_mut().find(|(g, _)| *g == f) {
            Some((_, k)) => *k += e,
            None => den.push((f, e)),
        }
    }

    fn push_monomial(den: &mut Vec<(SymPoly, u32)>, m: Monomial) {
        RatFn::push_factor(den, SymPoly::x(), m.0);
        RatFn::push_factor(den, SymPoly::y(), m.1);
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, e) in self.den.iter_mut() {
            if *f == SymPoly::x() || *f == SymPoly::y() {
                let mc = self.num.monomial_content();
                let avail = if *f == SymPoly::x() { mc.0 } else { mc.1 };
                let c = avail.min(*e);
                if c > 0 {
                    let shift = if *f == SymPoly::x() { (c, 0) } else { (0, c) };
                    self.num = self.num.shift_down(shift);
                    *e -= c;
                }
            } else {
                while *e > 0 {
                    match self.num.div_exact(f) {
                        Some(q) => {
                            self.num = q;
                            *e -= 1;
                        }
                        None => break,
                    }
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    fn exponent_of(den: &[(SymPoly, u32)], f: &SymPoly) -> u32 {
        den.iter().find(|(g, _)| g == f).map(|(_, e)| *e).unwrap_or(0)
    }

    fn same_den(&self, other: &RatFn) -> bool {
        self.den.len() == other.den.len()
            && self
                .den
                .iter()
                .all(|(f, e)| RatFn::exponent_of(&other.den, f) == *e)
    }

    fn add_impl(&self, other: &RatFn, negate: bool) -> RatFn {
        let rhs_num = if negate { -other.num.clone() } else { other.num.clone() };
        if self.same_den(other) {
            let mut out = RatFn {
                num: self.num.clone() + rhs_num,
                den: self.den.clone(),
            };
            if !out.den.is_empty() {
                out.reduce();
            }
            return out;
        }
        let mut lcm: Vec<(SymPoly, u32)> = self.den.clone();
        for (f, e) in &other.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k = (*k).max(*e),
                None => lcm.push((f.clone(), *e)),
            }
        }
        let cofactor = |den: &[(SymPoly, u32)]| {
            lcm.iter().fold(SymPoly::constant(GaussianRational::one()), |acc, (f, e)| {
                let missing = e - RatFn::exponent_of(den, f);
                if missing == 0 {
                    acc
                } else {
                    acc.mul_ref(&f.pow(missing))
                }
            })
        };
        let num = self.num.mul_ref(&cofactor(&self.den)) + rhs_num.mul_ref(&cofactor(&other.den));
        let mut out = RatFn { num, den: lcm };
        out.reduce();
        out
    }

    fn mul_impl(&self, other: &RatFn) -> RatFn {
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            RatFn::push_factor(&mut den, f.clone(), *e);
        }
        let mut out = RatFn {
            num: self.num.mul_ref(&other.num),
            den,
        };
        if !out.den.is_empty() {
            out.reduce();
        }
        out
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        if self.same_den(other) {
            return self.num == other.num;
        }
        self.add_impl(other, true).num.is_zero()
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (k, (g, e)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "({g})")?;
            } else {
                write!(f, "({g})^{e}")?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: RatFn) -> RatFn {
        self.add_impl(&rhs, false)
    }
}

impl<'a> Add<&'a RatFn> for RatFn {
    type Output = RatFn;
    fn add(self, rhs: &'a RatFn) -> RatFn {
        self.add_impl(rhs, false)
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: RatFn) -> RatFn {
        self.add_impl(&rhs, true)
    }
}

impl<'a> Sub<&'a RatFn> for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &'a RatFn) -> RatFn {
        self.add_impl(rhs, true)
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: RatFn) -> RatFn {
        self.mul_impl(&rhs)
    }
}

impl<'a> Mul<&'a RatFn> for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &'a RatFn) -> RatFn {
        self.mul_impl(rhs)
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -self.num, den: self.den }
    }
}

impl<'a> AddAssign<&'a RatFn> for RatFn {
    fn add_assign(&mut self, rhs: &'a RatFn) {
        if self.den.is_empty() && rhs.den.is_empty() {
            for (m, c) in &rhs.num.terms {
                self.num.add_term(*m, c.clone());
            }
        } else {
            *self = self.add_impl(rhs, false);
        }
    }
}

impl<'a> SubAssign<&'a RatFn> for RatFn {
    fn sub_assign(&mut self, rhs: &'a RatFn) {
        if self.den.is_empty() && rhs.den.is_empty() {
            for (m, c) in &rhs.num.terms {
                self.num.sub_term(*m, c);
            }
        } else {
            *self = self.add_impl(rhs, true);
        }
    }
}

impl Scalar for RatFn {
    fn zero() -> Self {
        RatFn::from_poly(SymPoly::zero())
    }

    fn one() -> Self {
        RatFn::from_gaussian_const(GaussianRational::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (unit, mono, rest) = self.num.normalize();
        let num = self
            .den
            .iter()
            .fold(SymPoly::constant(unit.inv()?), |acc, (f, e)| acc.mul_ref(&f.pow(*e)));
        let mut den = Vec::new();
        RatFn::push_monomial(&mut den, mono);
        if let Some(r) = rest {
            RatFn::push_factor(&mut den, r, 1);
        }
        let mut out = RatFn { num, den };
        out.reduce();
        Ok(out)
    }

    fn conj(&self) -> Self {
        let mut den = Vec::new();
        let mut num = self.num.conj();
        for (f, e) in &self.den {
            let (unit, mono, rest) = f.conj().normalize();
            // conj of a monic factor stays monic; keep the unit for safety
            num = num.scale(&unit.inv().expect("unit").pow(*e));
            RatFn::push_monomial(&mut den, (mono.0 * e, mono.1 * e));
            if let Some(r) = rest {
                RatFn::push_factor(&mut den, r, *e);
            }
        }
        let mut out = RatFn { num, den };
        out.reduce();
        out
    }

    fn from_rational(q: &Rational) -> Self {
        RatFn::from_gaussian_const(GaussianRational::real(q.clone()))
    }

    fn imag_unit() -> Self {
        RatFn::from_gaussian_const(GaussianRational::i())
    }
}
