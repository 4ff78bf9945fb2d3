//! Square-free radical algebras over a scalar field and trigonometric Laurent
//! polynomials with coefficients in them.
//!
//! A tower adjoins generators `g_k` with `g_k² = c_k` for scalars `c_k`.
//! Elements are stored as maps from generator subsets (bit masks) to scalar
//! coefficients. The representation is faithful only when no product of
//! distinct squares is a perfect square in the scalar field; a component-wise
//! zero always means the real value is zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::ellipsoid::EllipsoidSpec;
use crate::error::RadicalError;
use crate::scalar::{GaussianRational, Rational, Scalar};
use crate::symbolic::RatFn;

static NEXT_TOWER_ID: AtomicU64 = AtomicU64::new(1);

pub type Mask = u8;
type Comps<S> = BTreeMap<Mask, S>;

fn add_comp<S: Scalar>(acc: &mut Comps<S>, m: Mask, c: S) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

/// Generators `g_k` with `g_k² = squares[k]`, plus the ellipsoid parameters
/// `a = s²`, `b = t²` and the elements `s`, `t`.
pub struct RadicalTower<S: Scalar> {
    id: u64,
    names: Vec<&'static str>,
    squares: Vec<S>,
    square_products: Vec<S>,
    a: S,
    b: S,
    s: Comps<S>,
    t: Comps<S>,
}

impl<S: Scalar> fmt::Debug for RadicalTower<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadicalTower")
            .field("id", &self.id)
            .field("generators", &self.names)
            .field("squares", &self.squares)
            .finish()
    }
}

impl<S: Scalar> RadicalTower<S> {
    fn build(names: Vec<&'static str>, squares: Vec<S>, a: S, b: S, s: Comps<S>, t: Comps<S>) -> Arc<Self> {
        let n = names.len();
        let mut square_products = Vec::with_capacity(1 << n);
        for mask in 0usize..(1 << n) {
            let mut c = S::one();
            for (k, sq) in squares.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    c = c * sq;
                }
            }
            square_products.push(c);
        }
        Arc::new(RadicalTower {
            id: NEXT_TOWER_ID.fetch_add(1, Ordering::Relaxed),
            names,
            squares,
            square_products,
            a,
            b,
            s,
            t,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn generator_names(&self) -> &[&'static str] {
        &self.names
    }

    pub fn squares(&self) -> &[S] {
        &self.squares
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| *n == name)
    }

    fn mul_comps(&self, x: &Comps<S>, y: &Comps<S>) -> Comps<S> {
        let mut out = Comps::new();
        for (m1, c1) in x {
            for (m2, c2) in y {
                let shared = m1 & m2;
                let mut c = c1.clone() * c2;
                if shared != 0 {
                    c = c * &self.square_products[shared as usize];
                }
                add_comp(&mut out, m1 ^ m2, c);
            }
        }
        out
    }

    fn mul_comps_into(&self, acc: &mut Comps<S>, x: &Comps<S>, y: &Comps<S>) {
        for (m1, c1) in x {
            for (m2, c2) in y {
                let shared = m1 & m2;
                let mut c = c1.clone() * c2;
                if shared != 0 {
                    c = c * &self.square_products[shared as usize];
                }
                add_comp(acc, m1 ^ m2, c);
            }
        }
    }
}

impl RadicalTower<GaussianRational> {
    /// Generators `s, t, p, q, r` with squares `a, b, a−1, b−1, ab−1`.
    pub fn fixed(a: &Rational, b: &Rational) -> Arc<Self> {
        let g = |q: Rational| GaussianRational::real(q);
        let one = Rational::one();
        let squares = vec![
            g(a.clone()),
            g(b.clone()),
            g(a.clone() - &one),
            g(b.clone() - &one),
            g(a.clone() * b - &one),
        ];
        let unit = |k: u8| Comps::from([(1u8 << k, GaussianRational::one())]);
        RadicalTower::build(
            vec!["s", "t", "p", "q", "r"],
            squares,
            g(a.clone()),
            g(b.clone()),
            unit(0),
            unit(1),
        )
    }

    pub fn for_spec(spec: &EllipsoidSpec) -> Arc<Self> {
        RadicalTower::fixed(spec.a(), spec.b())
    }
}

impl RadicalTower<RatFn> {
    /// Generators `s, t, p, q, r` with squares `a, b, a−1, b−1, ab−1` over
    /// `Q(i)(a, b)`.
    pub fn symbolic() -> Arc<Self> {
        let a = RatFn::x();
        let b = RatFn::y();
        let one = RatFn::one();
        let squares = vec![a.clone(), b.clone(), a.clone() - &one, b.clone() - &one, a.clone() * &b - &one];
        let unit = |k: u8| Comps::from([(1u8 << k, RatFn::one())]);
        RadicalTower::build(vec!["s", "t", "p", "q", "r"], squares, a, b, unit(0), unit(1))
    }
}

/// Element of a radical tower.
#[derive(Clone)]
pub struct RadicalElement<S: Scalar> {
    tower: Arc<RadicalTower<S>>,
    comps: Comps<S>,
}

fn check<S: Scalar>(x: &Arc<RadicalTower<S>>, y: &Arc<RadicalTower<S>>) -> Result<(), RadicalError> {
    if x.id == y.id {
        Ok(())
    } else {
        Err(RadicalError::TowerMismatch)
    }
}

impl<S: Scalar> RadicalElement<S> {
    fn from_comps(tower: &Arc<RadicalTower<S>>, comps: Comps<S>) -> Self {
        RadicalElement { tower: tower.clone(), comps }
    }

    pub fn zero(tower: &Arc<RadicalTower<S>>) -> Self {
        RadicalElement::from_comps(tower, Comps::new())
    }

    pub fn scalar(tower: &Arc<RadicalTower<S>>, c: S) -> Self {
        let mut comps = Comps::new();
        add_comp(&mut comps, 0, c);
        RadicalElement::from_comps(tower, comps)
    }

    pub fn one(tower: &Arc<RadicalTower<S>>) -> Self {
        RadicalElement::scalar(tower, S::one())
    }

    /// The generator called `name`; a generator whose square is zero is
    /// itself zero.
    pub fn generator(tower: &Arc<RadicalTower<S>>, name: &str) -> Option<Self> {
        let k = tower.index_of(name)?;
        if tower.squares[k].is_zero() {
            return Some(RadicalElement::zero(tower));
        }
        Some(RadicalElement::from_comps(tower, Comps::from([(1u8 << k, S::one())])))
    }

    /// `s = √a`.
    pub fn s(tower: &Arc<RadicalTower<S>>) -> Self {
        RadicalElement::from_comps(tower, tower.s.clone())
    }

    /// `t = √b`.
    pub fn t(tower: &Arc<RadicalTower<S>>) -> Self {
        RadicalElement::from_comps(tower, tower.t.clone())
    }

    /// `g⁻¹ = g / g²`.
    pub fn invert_generator(tower: &Arc<RadicalTower<S>>, name: &str) -> Result<Self, RadicalError> {
        let k = tower
            .index_of(name)
            .ok_or_else(|| RadicalError::NonInvertibleGenerator(format!("{name} (not a generator)")))?;
        let sq = &tower.squares[k];
        if sq.is_zero() {
            return Err(RadicalError::NonInvertibleGenerator(name.to_string()));
        }
        Ok(RadicalElement::from_comps(tower, Comps::from([(1u8 << k, sq.inv()?)])))
    }

    pub fn tower(&self) -> &Arc<RadicalTower<S>> {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn component(&self, mask: Mask) -> S {
        self.comps.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Mask, &S)> {
        self.comps.iter()
    }

    /// The scalar value when only the empty-subset component is present.
    pub fn as_scalar(&self) -> Option<S> {
        match self.comps.len() {
            0 => Some(S::zero()),
            1 => self.comps.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RadicalError> {
        check(&self.tower, &other.tower)?;
        let mut comps = self.comps.clone();
        for (m, c) in &other.comps {
            add_comp(&mut comps, *m, c.clone());
        }
        Ok(RadicalElement::from_comps(&self.tower, comps))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RadicalError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RadicalError> {
        check(&self.tower, &other.tower)?;
        Ok(RadicalElement::from_comps(&self.tower, self.tower.mul_comps(&self.comps, &other.comps)))
    }

    pub fn neg(&self) -> Self {
        RadicalElement::from_comps(&self.tower, self.comps.iter().map(|(m, c)| (*m, -c.clone())).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut comps = Comps::new();
        for (m, v) in &self.comps {
            add_comp(&mut comps, *m, v.clone() * c);
        }
        RadicalElement::from_comps(&self.tower, comps)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = RadicalElement::one(&self.tower);
        for _ in 0..n {
            acc = RadicalElement::from_comps(&self.tower, self.tower.mul_comps(&acc.comps, &self.comps));
        }
        acc
    }

    /// Conjugates scalar coefficients; the generators are real.
    pub fn conj(&self) -> Self {
        RadicalElement::from_comps(&self.tower, self.comps.iter().map(|(m, c)| (*m, c.conj())).collect())
    }

    /// Inverse by multiplying through with the sign-flip conjugate for each
    /// generator in turn, leaving a scalar.
    pub fn inv(&self) -> Result<Self, RadicalError> {
        let mut cur = self.comps.clone();
        let mut acc = Comps::from([(0u8, S::one())]);
        for k in 0..self.tower.names.len() {
            let bit = 1u8 << k;
            if !cur.keys().any(|m| m & bit != 0) {
                continue;
            }
            let flipped: Comps<S> = cur
                .iter()
                .map(|(m, c)| (*m, if m & bit != 0 { -c.clone() } else { c.clone() }))
                .collect();
            cur = self.tower.mul_comps(&cur, &flipped);
            acc = self.tower.mul_comps(&acc, &flipped);
        }
        let c = match cur.len() {
            1 if cur.contains_key(&0) => cur[&0].clone(),
            _ => return Err(RadicalError::NonInvertible),
        };
        let ci = c.inv().map_err(|_| RadicalError::NonInvertible)?;
        Ok(RadicalElement::from_comps(&self.tower, acc).scale(&ci))
    }
}

impl<S: Scalar> PartialEq for RadicalElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.tower.id == other.tower.id && self.comps == other.comps
    }
}

impl<S: Scalar> fmt::Display for RadicalElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, name) in self.tower.names.iter().enumerate() {
                if m & (1 << j) != 0 {
                    write!(f, "*{name}")?;
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for RadicalElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ_k c_k ζ^k` with `ζ = e^{iθ}` and radical coefficients.
#[derive(Clone)]
pub struct TrigLaurent<S: Scalar> {
    tower: Arc<RadicalTower<S>>,
    terms: BTreeMap<i32, Comps<S>>,
}

impl<S: Scalar> TrigLaurent<S> {
    pub fn zero(tower: &Arc<RadicalTower<S>>) -> Self {
        TrigLaurent { tower: tower.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: &RadicalElement<S>) -> Self {
        TrigLaurent::monomial(0, c)
    }

    pub fn monomial(k: i32, c: &RadicalElement<S>) -> Self {
        let mut out = TrigLaurent::zero(&c.tower);
        if !c.is_zero() {
            out.terms.insert(k, c.comps.clone());
        }
        out
    }

    fn scalar_term(tower: &Arc<RadicalTower<S>>, k: i32, c: S) -> Self {
        TrigLaurent::monomial(k, &RadicalElement::scalar(tower, c))
    }

    /// `cos θ = (ζ + ζ⁻¹)/2`.
    pub fn cos(tower: &Arc<RadicalTower<S>>) -> Self {
        let half = S::from_rational(&Rational::new(1, 2).expect("nonzero"));
        TrigLaurent::scalar_term(tower, 1, half.clone()).add_unchecked(&TrigLaurent::scalar_term(tower, -1, half))
    }

    /// `sin θ = (ζ − ζ⁻¹)/(2i)`.
    pub fn sin(tower: &Arc<RadicalTower<S>>) -> Self {
        let half_i = S::imag_unit() * &S::from_rational(&Rational::new(1, 2).expect("nonzero"));
        TrigLaurent::scalar_term(tower, 1, -half_i.clone()).add_unchecked(&TrigLaurent::scalar_term(tower, -1, half_i))
    }

    pub fn tower(&self) -> &Arc<RadicalTower<S>> {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i32) -> RadicalElement<S> {
        RadicalElement::from_comps(&self.tower, self.terms.get(&k).cloned().unwrap_or_default())
    }

    pub fn frequencies(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().copied()
    }

    pub fn num_components(&self) -> usize {
        self.terms.values().map(|c| c.len()).sum()
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, comps) in &other.terms {
            let slot = out.terms.entry(*k).or_default();
            for (m, c) in comps {
                add_comp(slot, *m, c.clone());
            }
            if slot.is_empty() {
                out.terms.remove(k);
            }
        }
        out
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (k, comps) in &other.terms {
            let slot = self.terms.entry(*k).or_default();
            for (m, c) in comps {
                add_comp(slot, *m, c.clone());
            }
            if slot.is_empty() {
                self.terms.remove(k);
            }
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i32, Comps<S>> = BTreeMap::new();
        for (k1, x) in &self.terms {
            for (k2, y) in &other.terms {
                let slot = terms.entry(k1 + k2).or_default();
                self.tower.mul_comps_into(slot, x, y);
            }
        }
        terms.retain(|_, c| !c.is_empty());
        TrigLaurent { tower: self.tower.clone(), terms }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RadicalError> {
        check(&self.tower, &other.tower)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RadicalError> {
        check(&self.tower, &other.tower)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RadicalError> {
        check(&self.tower, &other.tower)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Self {
        self.scale_scalar(&-S::one())
    }

    pub fn scale_scalar(&self, c: &S) -> Self {
        let mut terms = BTreeMap::new();
        for (k, comps) in &self.terms {
            let mut out = Comps::new();
            for (m, v) in comps {
                add_comp(&mut out, *m, v.clone() * c);
            }
            if !out.is_empty() {
                terms.insert(*k, out);
            }
        }
        TrigLaurent { tower: self.tower.clone(), terms }
    }

    pub fn scale(&self, c: &RadicalElement<S>) -> Result<Self, RadicalError> {
        check(&self.tower, &c.tower)?;
        let mut terms = BTreeMap::new();
        for (k, comps) in &self.terms {
            let out = self.tower.mul_comps(comps, &c.comps);
            if !out.is_empty() {
                terms.insert(*k, out);
            }
        }
        Ok(TrigLaurent { tower: self.tower.clone(), terms })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = TrigLaurent::constant(&RadicalElement::one(&self.tower));
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Image under `i ↦ −i`, `ζ ↦ ζ⁻¹` (complex conjugation for real `θ`).
    pub fn conj_image(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, comps)| (-k, comps.iter().map(|(m, c)| (*m, c.conj())).collect()))
            .collect();
        TrigLaurent { tower: self.tower.clone(), terms }
    }

    fn top(&self) -> Option<(i32, RadicalElement<S>)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, RadicalElement::from_comps(&self.tower, c.clone())))
    }

    fn bottom(&self) -> Option<(i32, RadicalElement<S>)> {
        self.terms.iter().next().map(|(k, c)| (*k, RadicalElement::from_comps(&self.tower, c.clone())))
    }

    fn span(&self) -> i32 {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => -1,
        }
    }

    /// Exact quotient `self / d`; long division from whichever end of `d`
    /// has an invertible coefficient.
    pub fn div_exact(&self, d: &Self) -> Result<Self, RadicalError> {
        check(&self.tower, &d.tower)?;
        let (dh, dtop) = d.top().ok_or(RadicalError::NonExactDivision)?;
        let (dl, dbot) = d.bottom().ok_or(RadicalError::NonExactDivision)?;
        let (from_top, lead_inv) = match dtop.inv() {
            Ok(x) => (true, x),
            Err(_) => (false, dbot.inv().map_err(|_| RadicalError::NonExactDivision)?),
        };
        let mut rem = self.clone();
        let mut quot = TrigLaurent::zero(&self.tower);
        while !rem.is_zero() {
            if rem.span() < d.span() {
                return Err(RadicalError::NonExactDivision);
            }
            let (k, c) = if from_top { rem.top() } else { rem.bottom() }.expect("nonzero");
            let shift = if from_top { k - dh } else { k - dl };
            let qc = c.mul(&lead_inv)?;
            let step = TrigLaurent::monomial(shift, &qc);
            rem = rem.add_unchecked(&step.mul_unchecked(d).neg());
            quot = quot.add_unchecked(&step);
        }
        Ok(quot)
    }

    /// Formal value at `ζ = x`, `x ≠ 0`.
    pub fn eval_at(&self, x: &S) -> Result<RadicalElement<S>, RadicalError> {
        let x_inv = x.inv()?;
        let mut acc = Comps::new();
        for (k, comps) in &self.terms {
            let f = if *k >= 0 { x.pow(*k as u32) } else { x_inv.pow(k.unsigned_abs()) };
            for (m, c) in comps {
                add_comp(&mut acc, *m, c.clone() * &f);
            }
        }
        Ok(RadicalElement::from_comps(&self.tower, acc))
    }

    /// Coefficients `h_j` with `self = Σ_j h_j cos^{n−j}θ sin^jθ`, `j = 0..=n`.
    pub fn to_homogeneous(&self, n: u32) -> Result<Vec<RadicalElement<S>>, RadicalError> {
        let n_i = n as i32;
        if self.terms.keys().any(|k| k.abs() > n_i || (k + n_i) % 2 != 0) {
            return Err(RadicalError::DegenerateComparison(format!(
                "not a homogeneous trigonometric form of degree {n}"
            )));
        }
        let minv = homogeneous_basis_inverse(n);
        let size = n as usize + 1;
        let mut out = Vec::with_capacity(size);
        for row in minv.iter().take(size) {
            let mut acc = Comps::new();
            for (m, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let freq = -n_i + 2 * m as i32;
                if let Some(comps) = self.terms.get(&freq) {
                    let e = S::from_gaussian(entry);
                    for (mask, c) in comps {
                        add_comp(&mut acc, *mask, c.clone() * &e);
                    }
                }
            }
            out.push(RadicalElement::from_comps(&self.tower, acc));
        }
        Ok(out)
    }

    /// Inverse of [`to_homogeneous`](Self::to_homogeneous).
    pub fn from_homogeneous(tower: &Arc<RadicalTower<S>>, coeffs: &[RadicalElement<S>]) -> Result<Self, RadicalError> {
        let n = coeffs.len() as u32 - 1;
        let c = TrigLaurent::cos(tower);
        let s = TrigLaurent::sin(tower);
        let mut acc = TrigLaurent::zero(tower);
        for (j, h) in coeffs.iter().enumerate() {
            let basis = c.pow(n - j as u32).mul_unchecked(&s.pow(j as u32));
            acc = acc.add_unchecked(&basis.scale(h)?);
        }
        Ok(acc)
    }
}

impl<S: Scalar> PartialEq for TrigLaurent<S> {
    fn eq(&self, other: &Self) -> bool {
        self.tower.id == other.tower.id && self.terms == other.terms
    }
}

impl<S: Scalar> fmt::Debug for TrigLaurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, k) in self.terms.keys().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{}]*zeta^{k}", self.coeff(*k))?;
        }
        Ok(())
    }
}

/// Inverse of the matrix taking `cos^{n−j} sin^j` to its ζ-coefficients at
/// frequencies `−n, −n+2, …, n`.
fn homogeneous_basis_inverse(n: u32) -> Vec<Vec<GaussianRational>> {
    let size = n as usize + 1;
    let half = GaussianRational::from_fracs((1, 2), (0, 1));
    let cos = vec![half.clone(), GaussianRational::zero(), half];
    // sin = (ζ − ζ⁻¹)/(2i): coefficient of ζ⁻¹ is i/2, of ζ is −i/2
    let sin = vec![GaussianRational::from_fracs((0, 1), (1, 2)), GaussianRational::zero(), GaussianRational::from_fracs((0, 1), (-1, 2))];
    let mul = |x: &[GaussianRational], y: &[GaussianRational]| {
        let mut out = vec![GaussianRational::zero(); x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out[i + j] += &(a.clone() * b);
            }
        }
        out
    };
    // column j: dense ζ-coefficients at frequencies −n..=n (index f + n)
    let mut m = vec![vec![GaussianRational::zero(); size]; size];
    for j in 0..size {
        let mut poly = vec![GaussianRational::one()];
        for _ in 0..(size - 1 - j) {
            poly = mul(&poly, &cos);
        }
        for _ in 0..j {
            poly = mul(&poly, &sin);
        }
        for (row, slot) in m.iter_mut().enumerate() {
            slot[j] = poly[2 * row].clone();
        }
    }
    invert_matrix(m)
}

fn invert_matrix(mut m: Vec<Vec<GaussianRational>>) -> Vec<Vec<GaussianRational>> {
    let n = m.len();
    let mut inv: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("basis matrix is invertible");
        m.swap(col, piv);
        inv.swap(col, piv);
        let pinv = m[col][col].inv().expect("nonzero pivot");
        for j in 0..n {
            m[col][j] = m[col][j].clone() * &pinv;
            inv[col][j] = inv[col][j].clone() * &pinv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let a = m[col][j].clone() * &f;
                m[r][j] -= &a;
                let b = inv[col][j].clone() * &f;
                inv[r][j] -= &b;
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }
    fn tower23() -> Arc<RadicalTower<GaussianRational>> {
        RadicalTower::fixed(&q(2, 1), &q(3, 1))
    }
    fn gen(t: &Arc<RadicalTower<GaussianRational>>, n: &str) -> RadicalElement<GaussianRational> {
        RadicalElement::generator(t, n).unwrap()
    }
    fn sc(t: &Arc<RadicalTower<GaussianRational>>, n: i64, d: i64) -> RadicalElement<GaussianRational> {
        RadicalElement::scalar(t, GaussianRational::real(q(n, d)))
    }

    #[test]
    fn relation_squares() {
        let t = tower23();
        let st = gen(&t, "s").mul(&gen(&t, "t")).unwrap();
        assert_eq!(st.pow(2), sc(&t, 6, 1));
        assert_eq!(gen(&t, "p").pow(2), sc(&t, 1, 1));
        let pqr = gen(&t, "p").mul(&gen(&t, "q")).unwrap().mul(&gen(&t, "r")).unwrap();
        assert_eq!(pqr.pow(2), sc(&t, 10, 1));
    }

    #[test]
    fn generator_inverse() {
        let t = tower23();
        assert_eq!(RadicalElement::invert_generator(&t, "r").unwrap(), gen(&t, "r").scale(&GaussianRational::real(q(1, 5))));
        assert_eq!(RadicalElement::invert_generator(&t, "s").unwrap(), gen(&t, "s").scale(&GaussianRational::real(q(1, 2))));
        let t1 = RadicalTower::fixed(&q(1, 1), &q(2, 1));
        assert!(matches!(RadicalElement::invert_generator(&t1, "p"), Err(RadicalError::NonInvertibleGenerator(_))));
    }

    #[test]
    fn tower_mismatch() {
        let a = tower23();
        let b = tower23();
        assert_eq!(gen(&a, "s").add(&gen(&b, "s")), Err(RadicalError::TowerMismatch));
    }

    #[test]
    fn general_inverse() {
        let t = tower23();
        // s − t has norm a − b = −1
        let x = gen(&t, "s").sub(&gen(&t, "t")).unwrap();
        let xi = x.inv().unwrap();
        assert_eq!(x.mul(&xi).unwrap(), sc(&t, 1, 1));
        let y = sc(&t, 3, 1).add(&gen(&t, "r").mul(&gen(&t, "q")).unwrap()).unwrap();
        assert_eq!(y.mul(&y.inv().unwrap()).unwrap(), sc(&t, 1, 1));
    }

    #[test]
    fn pythagoras() {
        let t = tower23();
        let c = TrigLaurent::cos(&t);
        let s = TrigLaurent::sin(&t);
        let one = TrigLaurent::constant(&RadicalElement::one(&t));
        assert!(c.pow(2).add(&s.pow(2)).unwrap().sub(&one).unwrap().is_zero());
        assert!(!c.is_zero());
    }

    #[test]
    fn homogeneous_round_trip() {
        let t = tower23();
        let coeffs: Vec<_> = (0..8).map(|j| sc(&t, j as i64 - 3, 1).add(&gen(&t, "s")).unwrap()).collect();
        let f = TrigLaurent::from_homogeneous(&t, &coeffs).unwrap();
        assert_eq!(f.to_homogeneous(7).unwrap(), coeffs);
        assert!(f.to_homogeneous(6).is_err());
    }

    #[test]
    fn exact_division() {
        let t = tower23();
        let c = TrigLaurent::cos(&t);
        let e = c.scale(&gen(&t, "s")).unwrap().add(&TrigLaurent::sin(&t)).unwrap();
        let prod = e.pow(3).mul(&c).unwrap();
        assert_eq!(prod.div_exact(&e.pow(2)).unwrap(), e.mul(&c).unwrap());
        assert_eq!(c.div_exact(&e), Err(RadicalError::NonExactDivision));
    }

    #[test]
    fn symbolic_tower() {
        let t = RadicalTower::symbolic();
        let r = RadicalElement::generator(&t, "r").unwrap();
        let s = RadicalElement::s(&t);
        let tt = RadicalElement::t(&t);
        let st = s.mul(&tt).unwrap();
        let rr = r.pow(2);
        let one = RadicalElement::one(&t);
        assert_eq!(rr.add(&one).unwrap(), st.pow(2));
        let ri = RadicalElement::invert_generator(&t, "r").unwrap();
        assert_eq!(r.mul(&ri).unwrap(), one);
    }
}
