//! The printed coefficient tables `N₁ … N₇`, their weighted-sum audit and a
//! comparison against numerators derived from the invariant pipeline.
//!
//! Each `Nᵢ` is a homogeneous form of degree 7 in `cos θ`, `sin θ`; row `j`
//! holds the coefficient of `cos^{7−j} θ sin^j θ` as a sum of cells
//! `c · a^{s/2} b^{t/2}`, times `√−1` on odd rows.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{gamma_radical, pullback};
use crate::ellipsoid::ellipsoid_rho_generic;
use crate::error::RadicalError;
use crate::invariant::{seven_terms, TERM_WEIGHTS};
use crate::poly4::Var;
use crate::radical::{RadicalElement, RadicalTower, TrigLaurent};
use crate::scalar::{GaussianRational, Rational, Scalar};
use crate::symbolic::RatFn;

const TABLES_JSON: &str = include_str!("../data/tables.json");

/// `8 cᵢ`, the table weights in eighths.
pub const WEIGHTS_EIGHTHS: [i64; 7] = [1, 6, 4, 1, 15, 10, 15];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub c: i64,
    pub s: u32,
    pub t: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub cos: u32,
    pub sin: u32,
    pub imag: bool,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Numerator {
    pub numerator: usize,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrintedTables {
    pub weights: Vec<String>,
    pub prefactor: String,
    pub denominator: serde_json::Value,
    pub numerators: Vec<Numerator>,
}

impl PrintedTables {
    /// The checked-in transcription shipped with the crate.
    pub fn builtin() -> Self {
        PrintedTables::from_json(TABLES_JSON).expect("bundled tables are well formed")
    }

    pub fn from_json(text: &str) -> Result<Self, RadicalError> {
        let bad = |m: String| RadicalError::DegenerateComparison(format!("malformed tables: {m}"));
        let t: PrintedTables = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        if t.numerators.len() != 7 || t.weights.len() != 7 {
            return Err(bad("expected seven numerators and seven weights".into()));
        }
        for (k, w) in t.weights.iter().enumerate() {
            let w = Rational::parse_canonical(w).map_err(|e| bad(e.to_string()))?;
            if w != Rational::new(WEIGHTS_EIGHTHS[k], 8).expect("nonzero") {
                return Err(bad(format!("weight {} is {w}", k + 1)));
            }
        }
        for (k, n) in t.numerators.iter().enumerate() {
            if n.numerator != k + 1 || n.rows.len() != 8 {
                return Err(bad(format!("numerator {} must have eight rows", k + 1)));
            }
            for (j, r) in n.rows.iter().enumerate() {
                if r.cos != 7 - j as u32 || r.sin != j as u32 || r.imag != (j % 2 == 1) {
                    return Err(bad(format!("numerator {} row {j} out of pattern", k + 1)));
                }
            }
        }
        Ok(t)
    }

    /// `cᵢ` as exact rationals.
    pub fn weights(&self) -> Vec<Rational> {
        WEIGHTS_EIGHTHS.iter().map(|w| Rational::new(*w, 8).expect("nonzero")).collect()
    }

    pub fn cell(&self, numerator: usize, row: usize, s: u32, t: u32) -> Option<i64> {
        self.numerators[numerator - 1].rows[row]
            .cells
            .iter()
            .find(|c| c.s == s && c.t == t)
            .map(|c| c.c)
    }

    /// JSON path of a printed cell, for pointing at a suspicious entry.
    pub fn location(&self, numerator: usize, row: usize, s: u32, t: u32) -> Option<String> {
        let idx = self.numerators[numerator - 1].rows[row]
            .cells
            .iter()
            .position(|c| c.s == s && c.t == t)?;
        Some(format!("numerators[{}].rows[{row}].cells[{idx}]", numerator - 1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualCell {
    pub cos: u32,
    pub sin: u32,
    pub s: u32,
    pub t: u32,
    /// `Σᵢ 8cᵢ · Nᵢ[cell]`.
    pub residual: i64,
}

/// Cell-wise `Σᵢ 8cᵢ Nᵢ`; returns the nonzero cells.
pub fn table_weighted_sum(tables: &PrintedTables) -> Vec<ResidualCell> {
    let mut acc: BTreeMap<(u32, u32, u32, u32), i64> = BTreeMap::new();
    for (k, n) in tables.numerators.iter().enumerate() {
        for r in &n.rows {
            for c in &r.cells {
                *acc.entry((r.cos, r.sin, c.s, c.t)).or_default() += WEIGHTS_EIGHTHS[k] * c.c;
            }
        }
    }
    let mut out: Vec<ResidualCell> = acc
        .into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|((cos, sin, s, t), residual)| ResidualCell { cos, sin, s, t, residual })
        .collect();
    out.sort_by_key(|c| (std::cmp::Reverse(c.cos), c.s, c.t));
    out
}

/// Cell residual `Σᵢ 8cᵢ Nᵢ[cell]` with one printed entry replaced.
pub fn weighted_cell_with_override(
    tables: &PrintedTables,
    row: usize,
    s: u32,
    t: u32,
    numerator: usize,
    value: i64,
) -> i64 {
    let mut sum = 0;
    for (k, n) in tables.numerators.iter().enumerate() {
        let printed = n.rows[row].cells.iter().find(|c| c.s == s && c.t == t).map(|c| c.c).unwrap_or(0);
        let v = if k + 1 == numerator { value } else { printed };
        sum += WEIGHTS_EIGHTHS[k] * v;
    }
    sum
}

/// `s·cos θ − i t·sin θ`.
fn e_form<S: Scalar>(tower: &Arc<RadicalTower<S>>) -> Result<TrigLaurent<S>, RadicalError> {
    let s = RadicalElement::s(tower);
    let it = RadicalElement::t(tower).scale(&S::imag_unit());
    TrigLaurent::cos(tower).scale(&s)?.sub(&TrigLaurent::sin(tower).scale(&it)?)
}

fn check_nondegenerate<S: Scalar>(tower: &Arc<RadicalTower<S>>) -> Result<(), RadicalError> {
    let one = S::one();
    if (tower.a().clone() - &one).is_zero() {
        return Err(RadicalError::DegenerateComparison("a = 1 kills the prefactor a − 1".into()));
    }
    if (tower.b().clone() - &one).is_zero() {
        return Err(RadicalError::DegenerateComparison("b = 1 makes D vanish".into()));
    }
    if (tower.a().clone() - tower.b()).is_zero() {
        return Err(RadicalError::DegenerateComparison(
            "a = b makes s ± t zero divisors in the fixed tower".into(),
        ));
    }
    Ok(())
}

/// `Nᵢ` recovered from `Tᵢ = cᵢ √−1 (a−1) Nᵢ / D` along `γ`, as coefficients
/// of `cos^{7−j} sin^j`, `j = 0..=7`, up to the overall sign.
pub fn derived_numerators<S: Scalar>(
    tower: &Arc<RadicalTower<S>>,
) -> Result<Vec<Vec<RadicalElement<S>>>, RadicalError> {
    check_nondegenerate(tower)?;
    let rho = ellipsoid_rho_generic(tower.a(), tower.b());
    let terms = seven_terms(&rho)?;
    let coords = gamma_radical(tower)?;
    let rho_w = pullback(&rho.partial(Var::W), &coords)?;

    let q = RadicalElement::generator(tower, "q").expect("tower has q");
    let r_inv = RadicalElement::invert_generator(tower, "r")?;
    let ratio = q.mul(&r_inv)?;
    let ab1 = RadicalElement::scalar(tower, tower.a().clone() * tower.b() - &S::one());
    let d = e_form(tower)?.pow(8).scale(&ratio.pow(11).mul(&ab1)?)?;
    let a1 = tower.a().clone() - &S::one();

    let k = terms[0].k;
    let rho_w_k = rho_w.pow(k);
    let weights: Vec<Rational> = WEIGHTS_EIGHTHS.iter().map(|w| Rational::new(*w, 8).expect("nonzero")).collect();
    terms
        .par_iter()
        .enumerate()
        .map(|(i, term)| {
            debug_assert_eq!(term.k, k);
            let signed = S::from_int(TERM_WEIGHTS[i]);
            let scale = signed * &(S::from_rational(&weights[i]) * &S::imag_unit() * &a1).inv()?;
            let top = pullback(&term.num, &coords)?.mul(&d)?.scale_scalar(&scale);
            top.div_exact(&rho_w_k)?.to_homogeneous(7)
        })
        .collect()
}

/// Printed row `j` of `Nᵢ` as a radical element.
fn printed_row<S: Scalar>(tower: &Arc<RadicalTower<S>>, row: &Row) -> Result<RadicalElement<S>, RadicalError> {
    let s = RadicalElement::s(tower);
    let t = RadicalElement::t(tower);
    let mut acc = RadicalElement::zero(tower);
    for c in &row.cells {
        let m = s.pow(c.s).mul(&t.pow(c.t))?.scale(&S::from_int(c.c));
        acc = acc.add(&m)?;
    }
    if row.imag {
        acc = acc.scale(&S::imag_unit());
    }
    Ok(acc)
}

/// A cell whose derived value differs from the printed one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellMismatch {
    pub numerator: usize,
    pub cos: u32,
    pub sin: u32,
    pub s: u32,
    pub t: u32,
    pub printed: Option<i64>,
    /// Derived coefficient after the sign convention, as text (may be
    /// non-integral or non-real when something is badly off).
    pub derived: String,
    pub location: Option<String>,
}

/// A row whose derived value differs from the printed one, with the printed
/// cells that could absorb the whole difference by an integer correction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowMismatch {
    pub numerator: usize,
    pub cos: u32,
    pub sin: u32,
    pub residual: String,
    /// `(s, t, correction)`: the row matches once `correction` is added to
    /// that cell.
    pub candidates: Vec<(u32, u32, i64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableDiffReport {
    pub tower: String,
    /// `+1` or `−1`; the overall sign relating derived and printed numerators.
    pub sign: i32,
    /// `Σᵢ cᵢ Nᵢ = 0` for the derived numerators, exactly.
    pub derived_weighted_sum_zero: bool,
    /// Cell-level differences (symbolic tower).
    pub cells: Vec<CellMismatch>,
    /// Row-level differences (fixed tower, where half-integer powers of
    /// `a`, `b` collapse and cells cannot be separated).
    pub rows: Vec<RowMismatch>,
}

impl TableDiffReport {
    pub fn flags_cell(&self, numerator: usize, sin: u32, s: u32, t: u32) -> bool {
        self.cells
            .iter()
            .any(|c| c.numerator == numerator && c.sin == sin && c.s == s && c.t == t)
            || self.rows.iter().any(|r| {
                r.numerator == numerator && r.sin == sin && r.candidates.iter().any(|c| c.0 == s && c.1 == t)
            })
    }

    pub fn flag_count(&self) -> usize {
        self.cells.len() + self.rows.len()
    }
}

impl fmt::Display for TableDiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tower: {}", self.tower)?;
        writeln!(f, "overall sign (derived = sign * printed): {}", if self.sign > 0 { "+1" } else { "-1" })?;
        writeln!(f, "derived weighted sum is zero: {}", self.derived_weighted_sum_zero)?;
        for c in &self.cells {
            writeln!(
                f,
                "N{} cos^{} sin^{} a^({}/2) b^({}/2): printed {}, derived {}{}",
                c.numerator,
                c.cos,
                c.sin,
                c.s,
                c.t,
                c.printed.map_or("-".to_string(), |v| v.to_string()),
                c.derived,
                c.location.as_ref().map_or(String::new(), |l| format!(" at {l}"))
            )?;
        }
        for r in &self.rows {
            write!(f, "N{} row cos^{} sin^{}: residual {}; candidate cells", r.numerator, r.cos, r.sin, r.residual)?;
            if r.candidates.is_empty() {
                write!(f, " none")?;
            }
            for (s, t, d) in &r.candidates {
                write!(f, " [a^({s}/2) b^({t}/2) {d:+}]")?;
            }
            writeln!(f)?;
        }
        if self.cells.is_empty() && self.rows.is_empty() {
            writeln!(f, "no differences")?;
        }
        Ok(())
    }
}

fn weighted_sum_zero<S: Scalar>(derived: &[Vec<RadicalElement<S>>]) -> Result<bool, RadicalError> {
    for j in 0..8 {
        let mut acc = RadicalElement::zero(derived[0][j].tower());
        for (i, rows) in derived.iter().enumerate() {
            acc = acc.add(&rows[j].scale(&S::from_int(WEIGHTS_EIGHTHS[i])))?;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sign `σ` making `σ·derived` agree with the printed tables on the most
/// rows.
fn detect_sign<S: Scalar>(
    tables: &PrintedTables,
    derived: &[Vec<RadicalElement<S>>],
    printed: &[Vec<RadicalElement<S>>],
) -> Result<i32, RadicalError> {
    let mut plus = 0;
    let mut minus = 0;
    for i in 0..7 {
        for j in 0..tables.numerators[i].rows.len() {
            if derived[i][j] == printed[i][j] {
                plus += 1;
            }
            if derived[i][j].neg() == printed[i][j] {
                minus += 1;
            }
        }
    }
    Ok(if minus > plus { -1 } else { 1 })
}

fn printed_all<S: Scalar>(
    tables: &PrintedTables,
    tower: &Arc<RadicalTower<S>>,
) -> Result<Vec<Vec<RadicalElement<S>>>, RadicalError> {
    tables
        .numerators
        .iter()
        .map(|n| n.rows.iter().map(|r| printed_row(tower, r)).collect())
        .collect()
}

/// Row-level diff over a fixed tower.
pub fn derived_vs_printed(
    tables: &PrintedTables,
    tower: &Arc<RadicalTower<GaussianRational>>,
) -> Result<TableDiffReport, RadicalError> {
    let derived = derived_numerators(tower)?;
    let printed = printed_all(tables, tower)?;
    let sign = detect_sign(tables, &derived, &printed)?;
    let s = RadicalElement::s(tower);
    let t = RadicalElement::t(tower);
    let mut rows = Vec::new();
    for (i, n) in tables.numerators.iter().enumerate() {
        for (j, row) in n.rows.iter().enumerate() {
            let d = if sign < 0 { derived[i][j].neg() } else { derived[i][j].clone() };
            let res = d.sub(&printed[i][j])?;
            if res.is_zero() {
                continue;
            }
            let unit = if row.imag { GaussianRational::i() } else { GaussianRational::one() };
            let mut candidates = Vec::new();
            for c in &row.cells {
                let basis = s.pow(c.s).mul(&t.pow(c.t))?.scale(&unit);
                if let Some(delta) = integer_multiple(&res, &basis) {
                    candidates.push((c.s, c.t, delta));
                }
            }
            rows.push(RowMismatch {
                numerator: i + 1,
                cos: row.cos,
                sin: row.sin,
                residual: res.to_string(),
                candidates,
            });
        }
    }
    Ok(TableDiffReport {
        tower: format!("fixed a = {}, b = {}", tower.a(), tower.b()),
        sign,
        derived_weighted_sum_zero: weighted_sum_zero(&derived)?,
        cells: Vec::new(),
        rows,
    })
}

/// `Some(δ)` when `x = δ·basis` for an integer `δ`.
fn integer_multiple(x: &RadicalElement<GaussianRational>, basis: &RadicalElement<GaussianRational>) -> Option<i64> {
    let (mask, b) = {
        let mut it = basis.components();
        let (m, c) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        (*m, c.clone())
    };
    let mut it = x.components();
    let (m, c) = it.next()?;
    if it.next().is_some() || *m != mask {
        return None;
    }
    let q = c.clone() * &b.inv().ok()?;
    if !q.is_real() || !q.re.is_integer() {
        return None;
    }
    q.re.numer().try_into().ok()
}

/// Cell-level diff over the symbolic tower, where `a`, `b` are formal and
/// every cell is separated exactly.
pub fn derived_vs_printed_symbolic(tables: &PrintedTables) -> Result<TableDiffReport, RadicalError> {
    let tower = RadicalTower::<RatFn>::symbolic();
    let derived = derived_numerators(&tower)?;
    let printed = printed_all(tables, &tower)?;
    let sign = detect_sign(tables, &derived, &printed)?;
    let mut cells = Vec::new();
    for (i, n) in tables.numerators.iter().enumerate() {
        for (j, row) in n.rows.iter().enumerate() {
            let d = if sign < 0 { derived[i][j].neg() } else { derived[i][j].clone() };
            let unit_inv = if row.imag { -GaussianRational::i() } else { GaussianRational::one() };
            let mut derived_cells: BTreeMap<(u32, u32), GaussianRational> = BTreeMap::new();
            let mut irregular = Vec::new();
            for (mask, c) in d.components() {
                let (sb, tb) = (u32::from(mask & 1), u32::from((mask >> 1) & 1));
                match c.as_polynomial() {
                    Some(p) if mask & !3 == 0 => {
                        for ((ea, eb), v) in p.terms() {
                            derived_cells.insert((2 * ea + sb, 2 * eb + tb), v.clone() * &unit_inv);
                        }
                    }
                    _ => irregular.push(format!("[{mask:05b}] {c}")),
                }
            }
            let mut keys: Vec<(u32, u32)> = derived_cells.keys().copied().collect();
            keys.extend(row.cells.iter().map(|c| (c.s, c.t)));
            keys.sort();
            keys.dedup();
            for (s, t) in keys {
                let printed_v = tables.cell(i + 1, j, s, t);
                let dv = derived_cells.get(&(s, t)).cloned().unwrap_or_else(GaussianRational::zero);
                let pv = GaussianRational::from_ints(printed_v.unwrap_or(0), 0);
                if dv != pv {
                    cells.push(CellMismatch {
                        numerator: i + 1,
                        cos: row.cos,
                        sin: row.sin,
                        s,
                        t,
                        printed: printed_v,
                        derived: dv.to_string(),
                        location: tables.location(i + 1, j, s, t),
                    });
                }
            }
            for text in irregular {
                cells.push(CellMismatch {
                    numerator: i + 1,
                    cos: row.cos,
                    sin: row.sin,
                    s: 0,
                    t: 0,
                    printed: None,
                    derived: text,
                    location: None,
                });
            }
        }
    }
    Ok(TableDiffReport {
        tower: "symbolic (a, b)".to_string(),
        sign,
        derived_weighted_sum_zero: weighted_sum_zero(&derived)?,
        cells,
        rows: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellipsoid::EllipsoidSpec;

    #[test]
    fn builtin_tables_parse() {
        let t = PrintedTables::builtin();
        assert_eq!(t.numerators.len(), 7);
        assert_eq!(t.cell(1, 0, 9, 6), Some(499));
        assert_eq!(t.cell(1, 6, 1, 6), Some(2287));
    }

    #[test]
    fn weighted_sum_spot_cells() {
        let t = PrintedTables::builtin();
        let res = table_weighted_sum(&t);
        assert_eq!(res, vec![ResidualCell { cos: 1, sin: 6, s: 1, t: 6, residual: -600 }]);
        assert_eq!(weighted_cell_with_override(&t, 6, 1, 6, 1, 2887), 0);
        assert_eq!(weighted_cell_with_override(&t, 0, 9, 6, 1, 499), 0);
        assert_eq!(weighted_cell_with_override(&t, 7, 0, 7, 1, t.cell(1, 7, 0, 7).unwrap()), 0);
    }

    #[test]
    fn degenerate_towers() {
        let t = PrintedTables::builtin();
        for (a, b) in [(2, 1), (1, 2), (3, 3)] {
            let tower = RadicalTower::for_spec(&EllipsoidSpec::from_ints(a, b).unwrap());
            assert!(matches!(derived_vs_printed(&t, &tower), Err(RadicalError::DegenerateComparison(_))));
        }
    }
}
