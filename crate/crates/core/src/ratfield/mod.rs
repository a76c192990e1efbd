//! Exact arithmetic in the rational function field Q(s, B).
//!
//! Polynomials are sparse maps from exponent pairs to arbitrary-precision
//! rationals. Rational functions are kept as plain quotients; equality is
//! decided by cross-multiplication rather than a canonical form.

mod expr;
mod poly;
mod ratfunc;

pub use expr::Expr;
pub use poly::{poly_op, Exponent, F64Poly, Poly2, PolyOp};
pub use ratfunc::{rf_op, F64RationalFunction, RationalFunction, RfOp, DEFAULT_POLE_TOL};

/// Arbitrary-precision rational, always stored with a positive, coprime denominator.
pub type ExactRational = num_rational::BigRational;

/// The two generators of the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    S,
    B,
}

/// Formal partial derivative of a polynomial.
pub fn poly_diff(p: &Poly2, var: Var) -> Poly2 {
    p.diff(var)
}

/// Quotient-rule derivative of a rational function.
pub fn rf_diff(r: &RationalFunction, var: Var) -> RationalFunction {
    r.diff(var)
}

/// `true` iff `a.num * b.den - b.num * a.den` is the zero polynomial.
pub fn rf_equal(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.equals(b)
}

/// Guarded double-precision evaluation; see [`RationalFunction::eval`].
pub fn rf_eval(r: &RationalFunction, s: f64, b: f64, tol: f64) -> crate::Result<f64> {
    r.eval(s, b, tol)
}
