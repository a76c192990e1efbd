use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactRational, Var};

/// Exponent pair `(deg_s, deg_B)`.
pub type Exponent = (u32, u32);

/// Which ring operation [`poly_op`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial in `s` and `B` with exact rational coefficients.
///
/// Terms are keyed by `(deg_s, deg_B)`. No zero coefficient is ever stored, so
/// the zero polynomial is the empty map and structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<Exponent, ExactRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(value: ExactRational) -> Self {
        Self::monomial(value, (0, 0))
    }

    pub fn from_int(value: i64) -> Self {
        Self::constant(ExactRational::from_integer(BigInt::from(value)))
    }

    pub fn var(var: Var) -> Self {
        match var {
            Var::S => Self::monomial(ExactRational::one(), (1, 0)),
            Var::B => Self::monomial(ExactRational::one(), (0, 1)),
        }
    }

    pub fn monomial(coeff: ExactRational, exp: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial in `s` alone from coefficients, constant term first.
    pub fn from_s_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = ExactRational>,
    {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(k, c)| ((k as u32, 0), c)),
        )
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, ExactRational)>,
    {
        let mut out = Self::zero();
        for (exp, c) in terms {
            out.add_term(exp, c);
        }
        out
    }

    fn add_term(&mut self, exp: Exponent, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == (0, 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &ExactRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: Exponent) -> ExactRational {
        self.terms.get(&exp).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn degree(&self, var: Var) -> u32 {
        self.terms
            .keys()
            .map(|&(ds, db)| match var {
                Var::S => ds,
                Var::B => db,
            })
            .max()
            .unwrap_or(0)
    }

    /// Leading term in lex order with `s` dominant.
    pub fn leading_term(&self) -> Option<(Exponent, &ExactRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, k: &ExactRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn diff(&self, var: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(ds, db), c)| {
            let (k, exp) = match var {
                Var::S if ds > 0 => (ds, (ds - 1, db)),
                Var::B if db > 0 => (db, (ds, db - 1)),
                _ => return None,
            };
            Some((exp, c * ExactRational::from_integer(BigInt::from(k))))
        }))
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, s: &ExactRational, b: &ExactRational) -> ExactRational {
        self.terms
            .iter()
            .map(|(&(ds, db), c)| c * pow_rational(s, ds) * pow_rational(b, db))
            .fold(ExactRational::zero(), |acc, t| acc + t)
    }

    /// Double-precision value; see [`F64Poly`].
    pub fn eval(&self, s: f64, b: f64) -> f64 {
        self.to_f64().eval(s, b)
    }

    /// Coefficients split once into `f64` pairs, laid out for repeated evaluation.
    pub fn to_f64(&self) -> F64Poly {
        let rows_b = self.degree(Var::B) as usize + 1;
        let mut rows: Vec<Vec<Dd>> = vec![Vec::new(); if self.is_zero() { 0 } else { rows_b }];
        for (&(ds, db), c) in &self.terms {
            let row = &mut rows[db as usize];
            if row.len() <= ds as usize {
                row.resize(ds as usize + 1, Dd::ZERO);
            }
            row[ds as usize] = Dd::from_exact(c);
        }
        F64Poly { rows }
    }

    /// Quotient `self / divisor` when the division is exact, `None` otherwise.
    pub fn div_exact(&self, divisor: &Poly2) -> Option<Poly2> {
        let (lead_exp, lead_coeff) = divisor.leading_term()?;
        let lead_coeff = lead_coeff.clone();
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some(((rs, rb), rc)) = rem.leading_term() {
            if rs < lead_exp.0 || rb < lead_exp.1 {
                return None;
            }
            let exp = (rs - lead_exp.0, rb - lead_exp.1);
            let c = rc / &lead_coeff;
            let step = Poly2::monomial(c.clone(), exp);
            rem = &rem - &(&step * divisor);
            quot.add_term(exp, c);
        }
        Some(quot)
    }

    /// Largest monomial `s^a B^b` dividing every term.
    pub fn monomial_content(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(&first) = it.next() else {
            return (0, 0);
        };
        it.fold(first, |(a, b), &(ds, db)| (a.min(ds), b.min(db)))
    }

    /// Divides every exponent by the monomial `s^a B^b`; the caller guarantees it divides.
    pub fn shift_down(&self, exp: Exponent) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(ds, db), c)| ((ds - exp.0, db - exp.1), c.clone()))
                .collect(),
        }
    }

    /// Same polynomial scaled to integer, coprime coefficients with positive
    /// leading coefficient. Zero stays zero.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_integer::gcd(num_gcd, v);
        }
        let mut k = ExactRational::new(den_lcm, num_gcd.abs());
        if self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            k = -k;
        }
        self.scale(&k)
    }
}

fn pow_rational(x: &ExactRational, e: u32) -> ExactRational {
    num_traits::pow(x.clone(), e as usize)
}

/// Exact ring operation on two polynomials.
/// A [`Poly2`] prepared for floating-point evaluation: one dense row in `s` per
/// power of `B`, coefficients stored as unevaluated `hi + lo` pairs and Horner's
/// rule run in double-double arithmetic. Expanded zeta numerators cancel badly
/// near `s^2 = B`; plain `f64` Horner loses up to eight digits there.
#[derive(Debug, Clone, PartialEq)]
pub struct F64Poly {
    rows: Vec<Vec<Dd>>,
}

impl F64Poly {
    pub fn eval(&self, s: f64, b: f64) -> f64 {
        self.eval_dd(s, b).hi
    }

    pub(crate) fn eval_dd(&self, s: f64, b: f64) -> Dd {
        self.rows.iter().rev().fold(Dd::ZERO, |acc, row| {
            let inner = row.iter().rev().fold(Dd::ZERO, |a, &c| a.mul_f64(s).add(c));
            acc.mul_f64(b).add(inner)
        })
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from_exact(c: &ExactRational) -> Dd {
        let hi = c.to_f64().unwrap_or(f64::NAN);
        let lo = match ExactRational::from_float(hi) {
            Some(h) => (c - h).to_f64().unwrap_or(0.0),
            None => 0.0,
        };
        Dd { hi, lo }
    }

    fn quick_two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    /// Dekker's splitting, so no fused multiply-add is needed.
    fn split(a: f64) -> (f64, f64) {
        let t = 134_217_729.0 * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }

    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        let (ah, al) = Self::split(a);
        let (bh, bl) = Self::split(b);
        (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
    }

    fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = Self::two_prod(self.hi, x);
        Self::quick_two_sum(p, e + self.lo * x)
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = Self::two_sum(self.hi, o.hi);
        Self::quick_two_sum(s, e + self.lo + o.lo)
    }

    pub fn div(self, o: Dd) -> f64 {
        let q = self.hi / o.hi;
        // one correction step: (self - q * o) / o
        let (p, e) = Self::two_prod(q, o.hi);
        let r = ((self.hi - p) - e + self.lo - q * o.lo) / o.hi;
        q + r
    }
}

pub fn poly_op(a: &Poly2, b: &Poly2, kind: PolyOp) -> Poly2 {
    match kind {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(as_, ab), ac) in &self.terms {
            for (&(bs, bb), bc) in &rhs.terms {
                out.add_term((as_ + bs, ab + bb), ac * bc);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly2> for Poly2 {
            type Output = Poly2;
            fn $method(self, rhs: Poly2) -> Poly2 {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Ascending order reads naturally for the low-degree polynomials we print.
        for (k, (&(ds, db), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let is_unit = mag.is_one();
            let has_vars = ds > 0 || db > 0;
            if !is_unit || !has_vars {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({}/{})", mag.numer(), mag.denom())?;
                }
                if has_vars {
                    write!(f, "*")?;
                }
            }
            let mut parts = Vec::new();
            match ds {
                0 => {}
                1 => parts.push("s".to_string()),
                d => parts.push(format!("s^{d}")),
            }
            match db {
                0 => {}
                1 => parts.push("B".to_string()),
                d => parts.push(format!("B^{d}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactRational {
        ExactRational::from_integer(BigInt::from(n))
    }

    fn s() -> Poly2 {
        Poly2::var(Var::S)
    }

    fn b() -> Poly2 {
        Poly2::var(Var::B)
    }

    #[test]
    fn difference_of_squares() {
        let one = Poly2::one();
        let p = poly_op(&(&one + &s()), &(&one - &s()), PolyOp::Mul);
        assert_eq!(p, &one - &s().pow(2));
    }

    #[test]
    fn additive_identity() {
        let p = &(&s() * &b()) + &Poly2::from_int(3);
        assert_eq!(poly_op(&p, &Poly2::zero(), PolyOp::Add), p);
    }

    #[test]
    fn hand_expansion_collects_s_squared() {
        // (1+2s+s^2)(1+2B-3s^2), expanded by hand:
        // 1 + 2s - 2s^2 - 6s^3 - 3s^4 + 2B + 4sB + 2s^2 B
        let left = Poly2::from_s_coeffs([q(1), q(2), q(1)]);
        let right = Poly2::from_terms([((0, 0), q(1)), ((0, 1), q(2)), ((2, 0), q(-3))]);
        let prod = poly_op(&left, &right, PolyOp::Mul);
        let expected = Poly2::from_terms([
            ((0, 0), q(1)),
            ((1, 0), q(2)),
            ((2, 0), q(-2)),
            ((3, 0), q(-6)),
            ((4, 0), q(-3)),
            ((0, 1), q(2)),
            ((1, 1), q(4)),
            ((2, 1), q(2)),
        ]);
        assert_eq!(prod, expected);
        assert_eq!(prod.coeff((2, 0)), q(-2));
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(s().pow(3).diff(Var::S), Poly2::monomial(q(3), (2, 0)));
        let p = Poly2::from_terms([((0, 0), q(1)), ((0, 1), q(2)), ((2, 0), q(-3))]);
        assert_eq!(p.diff(Var::B), Poly2::from_int(2));
        let s2b = Poly2::monomial(q(1), (2, 1));
        assert_eq!(s2b.diff(Var::S), Poly2::monomial(q(2), (1, 1)));
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let p = &s() - &s();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn exact_division() {
        let a = &Poly2::one() - &s();
        let c = &(&Poly2::one() + &b()) - &s().pow(2);
        let prod = &(&a * &a) * &c;
        assert_eq!(prod.div_exact(&a).unwrap(), &a * &c);
        assert_eq!(prod.div_exact(&c).unwrap(), &a * &a);
        assert!(c.div_exact(&a).is_none());
        assert!((&c + &Poly2::one()).div_exact(&(&s() + &b())).is_none());
    }

    #[test]
    fn float_eval_matches_exact() {
        let p = Poly2::from_terms([((0, 0), q(1)), ((3, 2), q(-7)), ((1, 1), q(5))]);
        let e = p.eval_exact(&ExactRational::new(1.into(), 4.into()), &ExactRational::new(1.into(), 2.into()));
        assert!((p.eval(0.25, 0.5) - e.to_f64().unwrap()).abs() < 1e-15);
    }

    #[test]
    fn primitive_normalizes_scale() {
        let p = Poly2::from_terms([((0, 0), ExactRational::new((-2).into(), 3.into())), ((1, 0), q(-4))]);
        assert_eq!(p.primitive(), Poly2::from_terms([((0, 0), q(1)), ((1, 0), q(6))]));
    }

    #[test]
    fn display_is_readable() {
        let p = Poly2::from_terms([((0, 0), q(1)), ((2, 0), q(-3)), ((0, 1), q(2))]);
        assert_eq!(p.to_string(), "1 + 2*B - 3*s^2");
    }
}
