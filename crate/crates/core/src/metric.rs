//! Polynomial phi families defining (alpha, beta)-metrics `F = alpha * phi(beta / alpha)`,
//! their validity check, and the auxiliary functions Q, Theta, psi with all partial
//! derivatives consumed by the zeta coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratfield::{ExactRational, Poly2, RationalFunction, Var};

/// Grid used when a caller does not pick one.
pub const DEFAULT_SHEN_GRID: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiKind {
    Riemannian,
    Randers,
    Square,
    RandersSquare,
    Custom,
}

impl PhiKind {
    pub fn name(self) -> &'static str {
        match self {
            PhiKind::Riemannian => "riemannian",
            PhiKind::Randers => "randers",
            PhiKind::Square => "square",
            PhiKind::RandersSquare => "randers-square",
            PhiKind::Custom => "custom",
        }
    }
}

impl fmt::Display for PhiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Supremum of admissible `b = ||beta||_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValidityBound {
    Bounded(f64),
    Unbounded,
}

impl ValidityBound {
    pub fn admits(self, b: f64) -> bool {
        match self {
            ValidityBound::Bounded(b0) => b < b0,
            ValidityBound::Unbounded => true,
        }
    }
}

/// Outcome of [`shen_validity`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Valid,
    Invalid { witness: f64 },
}

impl Verdict {
    pub fn is_valid(self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// A polynomial `phi(s)` together with its name and validity bound.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiFamily {
    kind: PhiKind,
    coeffs: Vec<ExactRational>,
    bound: ValidityBound,
}

fn int(v: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(v))
}

/// Builds one of the named families, or a custom polynomial (coefficients
/// constant term first) when `kind` is [`PhiKind::Custom`].
pub fn make_phi(kind: PhiKind, custom_coeffs: Option<&[ExactRational]>) -> Result<PhiFamily> {
    let (coeffs, bound) = match kind {
        PhiKind::Riemannian => (vec![int(1)], ValidityBound::Unbounded),
        PhiKind::Randers => (vec![int(1), int(1)], ValidityBound::Bounded(1.0)),
        PhiKind::Square => (vec![int(1), int(2), int(1)], ValidityBound::Bounded(1.0)),
        // phi(s) vanishes at s = -(3 - sqrt 5)/2, the root of 1 - 3b + b^2.
        PhiKind::RandersSquare => (
            vec![int(1), int(3), int(1)],
            ValidityBound::Bounded((3.0 - 5f64.sqrt()) / 2.0),
        ),
        PhiKind::Custom => {
            let raw = custom_coeffs
                .ok_or_else(|| Error::InvalidPhi("custom phi needs coefficients".into()))?;
            let mut coeffs = raw.to_vec();
            while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
                coeffs.pop();
            }
            if coeffs.is_empty() {
                return Err(Error::InvalidPhi("empty coefficient list".into()));
            }
            if !coeffs[0].is_positive() {
                return Err(Error::InvalidPhi(format!("phi(0) = {} is not positive", coeffs[0])));
            }
            (coeffs, ValidityBound::Unbounded)
        }
    };
    Ok(PhiFamily { kind, coeffs, bound })
}

impl PhiFamily {
    pub fn named(kind: PhiKind) -> Self {
        assert!(kind != PhiKind::Custom, "custom phi needs coefficients");
        make_phi(kind, None).expect("named families are valid")
    }

    pub fn custom(coeffs: &[ExactRational]) -> Result<Self> {
        make_phi(PhiKind::Custom, Some(coeffs))
    }

    /// Custom family from floating-point coefficients, converted exactly.
    pub fn custom_f64(coeffs: &[f64]) -> Result<Self> {
        let exact = coeffs
            .iter()
            .map(|&c| {
                ExactRational::from_float(c)
                    .ok_or_else(|| Error::InvalidPhi(format!("coefficient {c} is not finite")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::custom(&exact)
    }

    pub fn kind(&self) -> PhiKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn bound(&self) -> ValidityBound {
        self.bound
    }

    pub fn phi(&self) -> Poly2 {
        Poly2::from_s_coeffs(self.coeffs.iter().cloned())
    }

    /// `phi - s phi'`.
    pub fn reduced_denominator(&self) -> Poly2 {
        let phi = self.phi();
        &phi - &(&Poly2::var(Var::S) * &phi.diff(Var::S))
    }

    /// `phi - s phi' + (B - s^2) phi''`.
    pub fn delta(&self) -> Poly2 {
        let phi2 = self.phi().diff(Var::S).diff(Var::S);
        let b_minus_s2 = &Poly2::var(Var::B) - &Poly2::var(Var::S).pow(2);
        &self.reduced_denominator() + &(&b_minus_s2 * &phi2)
    }

    /// Polynomials tried as common factors when simplifying Q, Theta, psi and
    /// everything built from them: rational linear factors of `phi` and
    /// `phi - s phi'`, their cofactors, and `delta`.
    pub fn factor_basis(&self) -> Vec<Poly2> {
        let mut basis: Vec<Poly2> = Vec::new();
        let mut push = |p: Poly2| {
            if p.is_constant() {
                return;
            }
            let p = p.primitive();
            if !basis.contains(&p) {
                basis.push(p);
            }
        };
        for p in [self.phi(), self.reduced_denominator()] {
            let (linear, rest) = split_rational_roots(&p);
            linear.into_iter().for_each(&mut push);
            push(rest);
        }
        push(self.delta());
        basis
    }
}

impl fmt::Display for PhiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (phi = {})", self.kind, self.phi())
    }
}

/// Splits a univariate polynomial in `s` into linear factors `v s - u` with
/// rational roots `u / v` and a cofactor. Root search is skipped when the
/// extreme coefficients are too large to enumerate divisors.
fn split_rational_roots(p: &Poly2) -> (Vec<Poly2>, Poly2) {
    const MAX_ENUM: i64 = 1_000_000;
    let mut rest = p.primitive();
    let mut factors = Vec::new();
    if rest.is_zero() || rest.degree(Var::B) > 0 {
        return (factors, rest);
    }
    let (low, _) = rest.monomial_content();
    if low > 0 {
        factors.push(Poly2::var(Var::S));
        rest = rest.shift_down((low, 0));
    }
    let deg = rest.degree(Var::S);
    let (Some(a0), Some(an)) = (
        rest.coeff((0, 0)).numer().abs().to_i64(),
        rest.coeff((deg, 0)).numer().abs().to_i64(),
    ) else {
        return (factors, rest);
    };
    if deg == 0 || a0 > MAX_ENUM || an > MAX_ENUM {
        return (factors, rest);
    }
    for u in divisors(a0) {
        for v in divisors(an) {
            for sign in [1, -1] {
                let root = ExactRational::new(BigInt::from(sign * u), BigInt::from(v));
                if !rest.eval_exact(&root, &ExactRational::zero()).is_zero() {
                    continue;
                }
                let lin = Poly2::from_s_coeffs([int(-sign * u), int(v)]).primitive();
                while let Some(q) = rest.div_exact(&lin) {
                    rest = q;
                }
                if !factors.contains(&lin) {
                    factors.push(lin);
                }
            }
        }
    }
    (factors, rest)
}

fn divisors(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            if k != n / k {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

/// Checks both positivity conditions for an (alpha, beta)-metric on a uniform
/// grid of `s` in `[-b, b]` with `B = b^2`; the first failing `s` is the witness.
pub fn shen_validity(phi: &PhiFamily, b: f64, grid: usize) -> Verdict {
    let b = b.abs();
    let grid = grid.max(2);
    let p0 = phi.phi();
    let p1 = p0.diff(Var::S);
    let (p0, p1, p2) = (p0.to_f64(), p1.to_f64(), p1.diff(Var::S).to_f64());
    let bb = b * b;
    for k in 0..grid {
        let s = if k == grid - 1 { b } else { -b + 2.0 * b * (k as f64) / ((grid - 1) as f64) };
        let v0 = p0.eval(s, 0.0);
        let v1 = p1.eval(s, 0.0);
        let v2 = p2.eval(s, 0.0);
        let second = v0 - s * v1 + (bb - s * s) * v2;
        if !(v0 > 0.0 && second > 0.0) {
            return Verdict::Invalid { witness: s };
        }
    }
    Verdict::Valid
}

/// Q, Theta, psi and the partial derivatives entering the zeta coefficients.
#[derive(Debug, Clone)]
pub struct QtpSymbols {
    pub q: RationalFunction,
    pub q_s: RationalFunction,
    pub q_ss: RationalFunction,
    pub theta: RationalFunction,
    pub theta_s: RationalFunction,
    pub theta_b: RationalFunction,
    pub psi: RationalFunction,
    pub psi_s: RationalFunction,
    pub psi_ss: RationalFunction,
    pub psi_b: RationalFunction,
    pub psi_sb: RationalFunction,
    /// Factors used to keep the entries small; reused by the zeta derivation.
    pub basis: Vec<Poly2>,
}

impl QtpSymbols {
    /// Looks an entry up by the name used in the zeta formulas.
    pub fn lookup(&self, name: &str) -> Option<&RationalFunction> {
        Some(match name {
            "Q" => &self.q,
            "Q_s" => &self.q_s,
            "Q_ss" => &self.q_ss,
            "Theta" => &self.theta,
            "Theta_s" => &self.theta_s,
            "Theta_B" => &self.theta_b,
            "psi" => &self.psi,
            "psi_s" => &self.psi_s,
            "psi_ss" => &self.psi_ss,
            "psi_B" => &self.psi_b,
            "psi_sB" => &self.psi_sb,
            _ => return None,
        })
    }

    pub fn entries(&self) -> [(&'static str, &RationalFunction); 11] {
        [
            ("Q", &self.q),
            ("Q_s", &self.q_s),
            ("Q_ss", &self.q_ss),
            ("Theta", &self.theta),
            ("Theta_s", &self.theta_s),
            ("Theta_B", &self.theta_b),
            ("psi", &self.psi),
            ("psi_s", &self.psi_s),
            ("psi_ss", &self.psi_ss),
            ("psi_B", &self.psi_b),
            ("psi_sB", &self.psi_sb),
        ]
    }
}

/// Builds Q, Theta, psi exactly:
///
/// * `Q = phi' / (phi - s phi')`
/// * `Theta = (phi phi' - s (phi phi'' + phi'^2)) / (2 phi Delta)`
/// * `psi = phi'' / (2 Delta)`
///
/// with `Delta = phi - s phi' + (B - s^2) phi''`. `B` enters only through `Delta`.
pub fn qtp(phi: &PhiFamily) -> Result<QtpSymbols> {
    let reduced = phi.reduced_denominator();
    if reduced.is_zero() {
        return Err(Error::DegeneratePhi);
    }
    let basis = phi.factor_basis();
    let red = |r: RationalFunction| r.cancel_factors(&basis);

    let p0 = phi.phi();
    let p1 = p0.diff(Var::S);
    let p2 = p1.diff(Var::S);
    let s = Poly2::var(Var::S);
    let delta = phi.delta();
    let two = Poly2::from_int(2);

    let q = red(RationalFunction::new(p1.clone(), reduced)?);
    let q_s = red(q.diff(Var::S));
    let q_ss = red(q_s.diff(Var::S));

    let theta_num = &(&p0 * &p1) - &(&s * &(&(&p0 * &p2) + &(&p1 * &p1)));
    let theta = red(RationalFunction::new(theta_num, &(&two * &p0) * &delta)?);
    let theta_s = red(theta.diff(Var::S));
    let theta_b = red(theta.diff(Var::B));

    let psi = red(RationalFunction::new(p2, &two * &delta)?);
    let psi_s = red(psi.diff(Var::S));
    let psi_ss = red(psi_s.diff(Var::S));
    let psi_b = red(psi.diff(Var::B));
    let psi_sb = red(psi_s.diff(Var::B));

    Ok(QtpSymbols { q, q_s, q_ss, theta, theta_s, theta_b, psi, psi_s, psi_ss, psi_b, psi_sb, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::Expr;

    fn rf(src: &str) -> RationalFunction {
        Expr::parse(src).unwrap().eval_closed().unwrap()
    }

    #[test]
    fn named_coefficients() {
        let c = |k| PhiFamily::named(k).coeffs_f64();
        assert_eq!(c(PhiKind::Square), vec![1.0, 2.0, 1.0]);
        assert_eq!(c(PhiKind::RandersSquare), vec![1.0, 3.0, 1.0]);
        assert_eq!(c(PhiKind::Riemannian), vec![1.0]);
        assert_eq!(c(PhiKind::Randers), vec![1.0, 1.0]);
    }

    #[test]
    fn randers_change_of_square_is_square_plus_s() {
        let sq = PhiFamily::named(PhiKind::Square).phi();
        let rs = PhiFamily::named(PhiKind::RandersSquare).phi();
        assert_eq!(&sq + &Poly2::var(Var::S), rs);
    }

    #[test]
    fn custom_phi_must_be_positive_at_zero() {
        assert!(matches!(PhiFamily::custom_f64(&[0.0, 1.0]), Err(Error::InvalidPhi(_))));
        assert!(matches!(PhiFamily::custom_f64(&[-1.0]), Err(Error::InvalidPhi(_))));
        assert!(matches!(make_phi(PhiKind::Custom, None), Err(Error::InvalidPhi(_))));
        let p = PhiFamily::custom_f64(&[1.0, 0.5, 0.0, 0.0]).unwrap();
        assert_eq!(p.coeffs().len(), 2);
    }

    #[test]
    fn shen_examples() {
        let sq = PhiFamily::named(PhiKind::Square);
        assert!(shen_validity(&sq, 0.5, 1000).is_valid());
        assert!(!shen_validity(&sq, 1.0, 1000).is_valid());
        let rs = PhiFamily::named(PhiKind::RandersSquare);
        match shen_validity(&rs, 0.39, DEFAULT_SHEN_GRID) {
            Verdict::Invalid { witness } => assert!(witness < -0.38),
            Verdict::Valid => panic!("phi(-0.39) < 0"),
        }
        assert!(shen_validity(&rs, 0.3, DEFAULT_SHEN_GRID).is_valid());
    }

    #[test]
    fn randers_square_bound_is_root_of_phi() {
        let ValidityBound::Bounded(b0) = PhiFamily::named(PhiKind::RandersSquare).bound() else {
            panic!("bounded")
        };
        assert!((1.0 - 3.0 * b0 + b0 * b0).abs() < 1e-15);
        assert!((b0 - 0.381_966).abs() < 1e-6);
    }

    #[test]
    fn riemannian_symbols_vanish() {
        let sym = qtp(&PhiFamily::named(PhiKind::Riemannian)).unwrap();
        for (name, r) in sym.entries() {
            assert!(r.is_zero(), "{name} should vanish");
        }
    }

    #[test]
    fn q_for_square_and_randers_square() {
        let sq = qtp(&PhiFamily::named(PhiKind::Square)).unwrap();
        assert_eq!(sq.q, rf("2/(1-s)"));
        let rs = qtp(&PhiFamily::named(PhiKind::RandersSquare)).unwrap();
        assert_eq!(rs.q, rf("(3+2*s)/(1-s^2)"));
        assert_eq!(rs.q_s, rf("(2+6*s+2*s^2)/(1-s^2)^2"));
    }

    #[test]
    fn delta_is_common_to_both_metrics() {
        let expected = rf("1+2*B-3*s^2");
        for k in [PhiKind::Square, PhiKind::RandersSquare] {
            assert_eq!(RationalFunction::from_poly(PhiFamily::named(k).delta()), expected);
        }
    }

    #[test]
    fn q_times_reduced_denominator_is_phi_prime() {
        for k in [PhiKind::Riemannian, PhiKind::Randers, PhiKind::Square, PhiKind::RandersSquare] {
            let phi = PhiFamily::named(k);
            let sym = qtp(&phi).unwrap();
            let lhs = &sym.q * &RationalFunction::from_poly(phi.reduced_denominator());
            assert_eq!(lhs, RationalFunction::from_poly(phi.phi().diff(Var::S)), "{k}");
        }
    }

    #[test]
    fn partials_are_consistent() {
        let sym = qtp(&PhiFamily::named(PhiKind::RandersSquare)).unwrap();
        assert_eq!(sym.q_ss, sym.q.diff(Var::S).diff(Var::S));
        assert_eq!(sym.psi_sb, sym.psi.diff(Var::B).diff(Var::S));
        assert_eq!(sym.theta_b, sym.theta.diff(Var::B));
        // psi for both metrics is 1 / (1 - 3 s^2 + 2B).
        assert_eq!(sym.psi, rf("1/(1-3*s^2+2*B)"));
    }

    #[test]
    fn denominators_stay_in_the_factor_basis() {
        let phi = PhiFamily::named(PhiKind::RandersSquare);
        let sym = qtp(&phi).unwrap();
        for (name, r) in sym.entries() {
            let mut den = r.den().clone();
            for f in &sym.basis {
                while let Some(q) = den.div_exact(f) {
                    den = q;
                }
            }
            assert!(den.is_constant(), "{name}: leftover {den}");
        }
    }

    #[test]
    fn factor_basis_splits_linear_factors() {
        let basis = PhiFamily::named(PhiKind::Square).factor_basis();
        let lin = |a: i64, b: i64| Poly2::from_s_coeffs([int(a), int(b)]).primitive();
        assert!(basis.contains(&lin(1, 1)));
        assert!(basis.contains(&lin(1, -1)));
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn degenerate_phi_rejected() {
        let bogus = PhiFamily { kind: PhiKind::Custom, coeffs: vec![int(0), int(1)], bound: ValidityBound::Unbounded };
        assert!(matches!(qtp(&bogus), Err(Error::DegeneratePhi)));
    }
}
