use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::{F64Poly, Poly2};
use super::{ExactRational, Var};
use crate::error::{Error, Result};

/// Default pole tolerance for [`RationalFunction::eval`].
pub const DEFAULT_POLE_TOL: f64 = 1e-12;

/// Which field operation [`rf_op`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Element of Q(s, B) stored as an unreduced quotient `num / den`.
///
/// Equality is decided by cross-multiplication, so two values compare equal
/// whenever they are the same function regardless of how they were built.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Poly2,
    den: Poly2,
}

impl RationalFunction {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    pub fn from_poly(p: Poly2) -> Self {
        Self { num: p, den: Poly2::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_poly(Poly2::from_int(v))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly2::var(v))
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(self.combine_mul(&rhs.den, &rhs.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Quotient rule, applied without any cancellation.
    pub fn diff(&self, var: Var) -> Self {
        let num = &(&self.num.diff(var) * &self.den) - &(&self.num * &self.den.diff(var));
        Self { num, den: &self.den * &self.den }
    }

    /// Cross-multiplication equality test.
    pub fn equals(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    /// Double-precision value at `(s, B)`.
    ///
    /// Fails with [`Error::Pole`] when `|den(s, B)| < tol`.
    pub fn eval(&self, s: f64, b: f64, tol: f64) -> Result<f64> {
        let d = self.den.eval(s, b);
        if d.is_nan() || d.abs() < tol {
            return Err(Error::Pole { s, b });
        }
        Ok(self.num.eval(s, b) / d)
    }

    /// Numerator and denominator rounded to `f64` once, for repeated evaluation.
    pub fn to_f64(&self) -> F64RationalFunction {
        F64RationalFunction { num: self.num.to_f64(), den: self.den.to_f64() }
    }

    /// Exact value at a rational point, `None` at a pole.
    pub fn eval_exact(&self, s: &ExactRational, b: &ExactRational) -> Option<ExactRational> {
        let d = self.den.eval_exact(s, b);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_exact(s, b) / d)
    }

    /// Cancels every factor in `basis` as often as it divides both numerator and
    /// denominator, strips a common monomial and rescales the denominator to a
    /// primitive integer polynomial. The value of the function never changes.
    pub fn cancel_factors(&self, basis: &[Poly2]) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let shift = {
            let (na, nb) = num.monomial_content();
            let (da, db) = den.monomial_content();
            (na.min(da), nb.min(db))
        };
        if shift != (0, 0) {
            num = num.shift_down(shift);
            den = den.shift_down(shift);
        }
        for f in basis {
            if f.is_constant() {
                continue;
            }
            while let Some(d2) = den.div_exact(f) {
                match num.div_exact(f) {
                    Some(n2) => {
                        num = n2;
                        den = d2;
                    }
                    None => break,
                }
            }
        }
        let prim = den.primitive();
        if let (Some((_, a)), Some((_, b))) = (den.leading_term(), prim.leading_term()) {
            let k = b / a;
            if !k.is_one() {
                num = num.scale(&k);
            }
        }
        Self { num, den: prim }
    }

    fn combine_mul(&self, num: &Poly2, den: &Poly2) -> Self {
        Self { num: &self.num * num, den: &self.den * den }
    }

    fn combine_add(&self, rhs: &Self, negate: bool) -> Self {
        let rhs_num = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.den == rhs.den {
            return Self { num: &self.num + &rhs_num, den: self.den.clone() };
        }
        if rhs.den.is_constant() && self.den.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs_num * &self.den);
            return Self { num, den: &self.den * &rhs.den };
        }
        // One denominator often divides the other in derivative chains.
        if let Some(k) = self.den.div_exact(&rhs.den) {
            return Self { num: &self.num + &(&rhs_num * &k), den: self.den.clone() };
        }
        if let Some(k) = rhs.den.div_exact(&self.den) {
            return Self { num: &(&self.num * &k) + &rhs_num, den: rhs.den.clone() };
        }
        let num = &(&self.num * &rhs.den) + &(&rhs_num * &self.den);
        Self { num, den: &self.den * &rhs.den }
    }
}

/// Double-precision image of a [`RationalFunction`].
#[derive(Debug, Clone, PartialEq)]
pub struct F64RationalFunction {
    num: F64Poly,
    den: F64Poly,
}

impl F64RationalFunction {
    /// Same contract as [`RationalFunction::eval`].
    pub fn eval(&self, s: f64, b: f64, tol: f64) -> Result<f64> {
        let d = self.den.eval_dd(s, b);
        if d.hi.is_nan() || d.hi.abs() < tol {
            return Err(Error::Pole { s, b });
        }
        Ok(self.num.eval_dd(s, b).div(d))
    }
}

/// Exact field operation; division by the zero function is an error.
pub fn rf_op(a: &RationalFunction, b: &RationalFunction, kind: RfOp) -> Result<RationalFunction> {
    Ok(match kind {
        RfOp::Add => a + b,
        RfOp::Sub => a - b,
        RfOp::Mul => a * b,
        RfOp::Div => a.checked_div(b)?,
    })
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Eq for RationalFunction {}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.combine_add(rhs, false)
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.combine_add(rhs, true)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.combine_mul(&rhs.num, &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> Self {
        -&self
    }
}

impl From<Poly2> for RationalFunction {
    fn from(p: Poly2) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly2::one() {
            write!(f, "{}", self.num)
        } else if self.den.coeff((0, 0)).is_negative() {
            write!(f, "({}) / ({})", -&self.num, -&self.den)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
