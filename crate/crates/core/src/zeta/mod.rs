//! The 26 zeta coefficient functions of the Ricci formula for (alpha, beta)-metrics.
//!
//! [`generic_zeta`] derives them exactly from Q, Theta, psi. [`table_zeta`] parses
//! the published closed forms for the square and Randers-change-of-square metrics,
//! transcribed verbatim (typos included). [`compare_zeta`] decides equality per
//! index and attaches a numeric witness to every disagreement.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{PhiKind, QtpSymbols};
use crate::ratfield::{Expr, F64RationalFunction, Poly2, RationalFunction, Var, DEFAULT_POLE_TOL};

pub const ZETA_COUNT: usize = 26;

const SQUARE_TABLE: &str = include_str!("square_table.txt");
const RANDERS_SQUARE_TABLE: &str = include_str!("randers_square_table.txt");

/// Generic coefficients in terms of Q, Theta, psi and their partials.
/// `X` abbreviates `B - s^2`.
const GENERIC: [&str; ZETA_COUNT] = [
    "2*psi*Theta_s*X - 2*s*psi*Theta + Theta^2 - Theta_s",
    "2*psi*psi_ss*X^2 - (6*s*psi*psi_s + psi_ss)*X + 2*s*psi_s",
    "-4*(2*Q*Theta_s + Q_s*Theta)*psi*X + 4*Q*Theta_s + 2*Q_s*Theta + 4*Q*Theta*(s*psi - Theta) - 2*Theta_B",
    "-4*psi*(2*Q*psi_ss + Q_s*psi_s + Q_ss*psi_s^2)*X^2 \
     + (-4*psi^2*(Q - s*Q_s) + 4*Q_ss*psi + 2*Q_s*psi_s + 4*Q*psi_ss - 2*psi_sB + 20*s*Q*psi*psi_s)*X \
     + 2*psi*(Q - s*Q_s) - 4*psi_s - Q_ss - 10*s*Q*psi_s",
    "4*psi*Theta - 2*Theta_B",
    "2*(2*psi*psi_s - psi_sB)*X - 2*psi_s",
    "-Theta",
    "-psi_s*X",
    "8*Q*psi*(Q*Theta_s + Q_s*Theta)*X + 4*Q^2*(Theta^2 - Theta_s) + 4*Q*(Theta_B - Q_s)",
    "(4*psi^2*(2*Q*Q_ss - Q_s^2) + 8*Q*psi*(Q*psi_ss + Q_s*psi_s) - 4*Q^2*psi_s^2)*X^2 \
     + (-16*s*Q*psi*(Q*psi_s + Q_s*psi) - 4*psi*(2*Q*Q_ss - Q_s^2) - 4*Q*(Q*psi_ss + Q_s*psi_s) + 4*Q*psi_sB + 4*Q_s*psi_B)*X \
     - 4*s^2*Q^2*psi^2 + 4*(2 + 3*s*Q)*(Q*psi_s + Q_s*psi) - 8*Q^2*psi + 2*Q*Q_ss - Q_s^2 + 4*s*Q*psi_B",
    "4*psi^2 + 4*psi_B",
    "4*Q*(-2*psi*Theta + Theta_B)",
    "(8*psi*(Q_s*psi - Q*psi_s) + 4*Q*psi_sB + 4*Q_s*psi_B)*X + 8*s*Q*psi^2 + 4*Q*psi_s - 4*(1 - s*Q)*psi_B",
    "2*psi",
    "4*Q*Theta",
    "4*(Q*psi_s - Q_s*psi)*X + 2*Q_s - 2*(1 + 2*s*Q)*psi",
    "2*Q*Theta",
    "2*(Q*psi_s + Q_s*psi)*X + 2*s*Q*psi - Q_s",
    "2*(1 + s*Q)*Q_s - 2*Q^2",
    "-8*(psi^2 + psi_B)*Q",
    "-4*Q^2*Theta",
    "2*Q*psi - 4*Q^2*psi_s*X",
    "2*Q*psi",
    "2*Q",
    "-4*Q^2*psi",
    "-Q^2",
];

/// Where a zeta set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaSource {
    Generic,
    PaperTable,
}

impl fmt::Display for ZetaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZetaSource::Generic => "generic",
            ZetaSource::PaperTable => "paper-table",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ZetaSet {
    entries: Vec<RationalFunction>,
    compiled: Vec<F64RationalFunction>,
    source: ZetaSource,
}

impl ZetaSet {
    fn new(entries: Vec<RationalFunction>, source: ZetaSource) -> Self {
        let compiled = entries.iter().map(RationalFunction::to_f64).collect();
        ZetaSet { entries, compiled, source }
    }

    /// All-zero set, the coefficients of a Riemannian metric.
    pub fn zero(source: ZetaSource) -> Self {
        Self::new(vec![RationalFunction::zero(); ZETA_COUNT], source)
    }

    pub fn source(&self) -> ZetaSource {
        self.source
    }

    /// 1-based access, matching the usual numbering zeta_1 .. zeta_26.
    pub fn get(&self, index: usize) -> &RationalFunction {
        assert!((1..=ZETA_COUNT).contains(&index), "zeta index {index} out of range");
        &self.entries[index - 1]
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn eval(&self, s: f64, b: f64) -> Result<[f64; ZETA_COUNT]> {
        self.eval_with_tol(s, b, DEFAULT_POLE_TOL)
    }

    /// Entrywise evaluation; a denominator below `tol` in magnitude is a pole.
    pub fn eval_with_tol(&self, s: f64, b: f64, tol: f64) -> Result<[f64; ZETA_COUNT]> {
        let mut out = [0.0; ZETA_COUNT];
        for (slot, r) in out.iter_mut().zip(&self.compiled) {
            *slot = r.eval(s, b, tol)?;
        }
        Ok(out)
    }
}

/// Derives all 26 coefficients exactly from the given symbols.
pub fn generic_zeta(sym: &QtpSymbols) -> Result<ZetaSet> {
    let x = RationalFunction::from_poly(&Poly2::var(Var::B) - &Poly2::var(Var::S).pow(2));
    let env = |name: &str| if name == "X" { Some(x.clone()) } else { sym.lookup(name).cloned() };
    let simplify = |r: RationalFunction| r.cancel_factors(&sym.basis);
    let entries = GENERIC
        .iter()
        .map(|src| Expr::parse(src)?.eval(&env, &simplify))
        .collect::<Result<Vec<_>>>()?;
    Ok(ZetaSet::new(entries, ZetaSource::Generic))
}

/// Parses a table in the `<index>: <expression>` format; `#` starts a comment line.
pub fn parse_table(text: &str) -> Result<ZetaSet> {
    let mut slots: Vec<Option<RationalFunction>> = vec![None; ZETA_COUNT];
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (idx, body) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("missing ':' in `{line}`") })?;
        let idx: usize = idx
            .trim()
            .parse()
            .ok()
            .filter(|k| (1..=ZETA_COUNT).contains(k))
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad zeta index `{idx}`") })?;
        slots[idx - 1] = Some(Expr::parse(body)?.eval_closed()?);
    }
    let entries = slots
        .into_iter()
        .enumerate()
        .map(|(k, e)| e.ok_or_else(|| Error::Parse { pos: 0, msg: format!("zeta_{} missing", k + 1) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(ZetaSet::new(entries, ZetaSource::PaperTable))
}

/// The published closed forms; only the square and Randers-change-of-square
/// metrics have one.
pub fn table_zeta(kind: PhiKind) -> Result<ZetaSet> {
    match kind {
        PhiKind::Square => parse_table(SQUARE_TABLE),
        PhiKind::RandersSquare => parse_table(RANDERS_SQUARE_TABLE),
        other => Err(Error::NoTable(other.to_string())),
    }
}

pub fn eval_zeta(set: &ZetaSet, s: f64, b: f64) -> Result<[f64; ZETA_COUNT]> {
    set.eval(s, b)
}

/// A numeric point where two disagreeing coefficients differ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub s: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaVerdict {
    pub index: usize,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaComparison {
    pub verdicts: Vec<ZetaVerdict>,
}

impl ZetaComparison {
    pub fn all_match(&self) -> bool {
        self.verdicts.iter().all(|v| v.matches)
    }

    pub fn mismatched(&self) -> Vec<usize> {
        self.verdicts.iter().filter(|v| !v.matches).map(|v| v.index).collect()
    }
}

/// Sample points inside the validity region of every named metric.
const WITNESS_POINTS: [(f64, f64); 6] =
    [(0.2, 0.09), (-0.1, 0.09), (0.25, 0.0625), (0.05, 0.01), (-0.2, 0.04), (0.1, 0.16)];

/// Exact per-index comparison. Equal sets compare equal as rational functions;
/// each mismatch carries the first sample point where the values differ.
pub fn compare_zeta(left: &ZetaSet, right: &ZetaSet) -> ZetaComparison {
    let verdicts = left
        .entries
        .iter()
        .zip(&right.entries)
        .enumerate()
        .map(|(k, (a, b))| {
            let matches = a.equals(b);
            let witness = if matches { None } else { find_witness(a, b) };
            ZetaVerdict { index: k + 1, matches, witness }
        })
        .collect();
    ZetaComparison { verdicts }
}

fn find_witness(a: &RationalFunction, b: &RationalFunction) -> Option<Witness> {
    let mut fallback = None;
    for &(s, bb) in &WITNESS_POINTS {
        let (Ok(left), Ok(right)) = (a.eval(s, bb, DEFAULT_POLE_TOL), b.eval(s, bb, DEFAULT_POLE_TOL)) else {
            continue;
        };
        let w = Witness { s, b: bb, left, right };
        if (left - right).abs() > 1e-9 * (1.0 + left.abs().max(right.abs())) {
            return Some(w);
        }
        fallback.get_or_insert(w);
    }
    fallback
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{qtp, PhiFamily};

    #[test]
    fn tables_parse() {
        for k in [PhiKind::Square, PhiKind::RandersSquare] {
            let t = table_zeta(k).unwrap();
            assert_eq!(t.entries().len(), ZETA_COUNT);
            assert_eq!(t.source(), ZetaSource::PaperTable);
        }
        assert!(matches!(table_zeta(PhiKind::Randers), Err(Error::NoTable(_))));
    }

    #[test]
    fn generic_formulas_parse() {
        for src in GENERIC {
            Expr::parse(src).unwrap();
        }
    }

    #[test]
    fn riemannian_zetas_vanish() {
        let z = generic_zeta(&qtp(&PhiFamily::named(PhiKind::Riemannian)).unwrap()).unwrap();
        for k in 1..=ZETA_COUNT {
            assert!(z.get(k).is_zero(), "zeta_{k}");
        }
    }

    #[test]
    fn missing_entry_is_reported() {
        assert!(parse_table("1: s\n").is_err());
        assert!(parse_table("27: s\n").is_err());
    }

    #[test]
    fn self_comparison_matches() {
        let t = table_zeta(PhiKind::Square).unwrap();
        let cmp = compare_zeta(&t, &t);
        assert!(cmp.all_match());
        assert!(cmp.verdicts.iter().all(|v| v.witness.is_none()));
    }
}
