//! Ricci curvature `Ric = alpha_Ric + RT` of (alpha, beta)-metrics on homogeneous
//! spaces, assembled three ways:
//!
//! * [`ricci_general`]: the general RT sum over the contracted scalars,
//! * [`ricci_homogeneous`]: the same sum written directly in structure constants,
//! * [`ricci_vanishing_s`]: the three surviving terms when the S-curvature vanishes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    alpha_ricci, contracted_scalars, s_curvature_vanishes, AlphaRicciMode, ContractedScalars, LieAlgebraSpec,
};
use crate::error::{Error, Result};
use crate::metric::{qtp, shen_validity, PhiFamily, PhiKind, QtpSymbols, ValidityBound, Verdict, DEFAULT_SHEN_GRID};
use crate::ratfield::DEFAULT_POLE_TOL;
use crate::zeta::{generic_zeta, table_zeta, ZetaSet, ZetaSource, ZETA_COUNT};

/// Values below this magnitude count as zero in sign patterns.
pub const SIGN_TOL: f64 = 1e-12;

/// The RT term from contracted scalars and zeta values (`zeta[k - 1]` is zeta_k)
/// on an `n`-dimensional space.
pub fn rt_term(sc: &ContractedScalars, zeta: &[f64; ZETA_COUNT], n: usize) -> f64 {
    let z = |k: usize| zeta[k - 1];
    let m = n as f64 - 1.0;
    let a = sc.alpha;

    let mut rt = (m * z(1) + z(2)) * sc.r00 * sc.r00 / (a * a);
    rt += ((m * z(3) + z(4)) * sc.r00 * sc.s0 + (m * z(5) + z(6)) * sc.r00 * sc.r0 + (m * z(7) + z(8)) * sc.r00_0) / a;
    rt += (m * z(9) + z(10)) * sc.s0 * sc.s0;
    rt += (sc.r * sc.r00 - sc.r0 * sc.r0) * z(11);
    rt += (m * z(12) + z(13)) * sc.r0 * sc.s0;
    rt += (sc.r00 * sc.rll - sc.r0l_rl0 + sc.r00l_bl - sc.r0l0_bl) * z(14);
    rt += (m * z(15) + z(16)) * sc.r0l_sl0;
    rt += (m * z(17) + z(18)) * sc.s00;
    rt += sc.s0l_sl0 * z(19);
    rt += a * (sc.r * sc.s0 * z(20) + (m * z(21) + z(22)) * sc.sl_sl0);
    rt += a
        * ((3.0 * sc.sl_rl0 - 2.0 * sc.s0 * sc.rll + 2.0 * sc.rl_sl0 - 2.0 * sc.s0l_bl + sc.sl0_bl) * z(23)
            + sc.sl0l * z(24));
    rt += a * a * (sc.sl_sl * z(25) + sc.sjl_slj * z(26));
    rt
}

/// A phi family with its symbols and zeta sets derived once.
#[derive(Debug, Clone)]
pub struct AlphaBetaMetric {
    phi: PhiFamily,
    symbols: QtpSymbols,
    generic: ZetaSet,
    table: Option<ZetaSet>,
    pole_tol: f64,
}

impl AlphaBetaMetric {
    pub fn new(phi: PhiFamily) -> Result<Self> {
        let symbols = qtp(&phi)?;
        let generic = generic_zeta(&symbols)?;
        let table = match phi.kind() {
            PhiKind::Square | PhiKind::RandersSquare => Some(table_zeta(phi.kind())?),
            _ => None,
        };
        Ok(AlphaBetaMetric { phi, symbols, generic, table, pole_tol: DEFAULT_POLE_TOL })
    }

    pub fn named(kind: PhiKind) -> Result<Self> {
        Self::new(PhiFamily::named(kind))
    }

    /// Tolerance below which a zeta denominator counts as a pole.
    pub fn with_pole_tol(mut self, tol: f64) -> Self {
        self.pole_tol = tol;
        self
    }

    pub fn phi(&self) -> &PhiFamily {
        &self.phi
    }

    pub fn symbols(&self) -> &QtpSymbols {
        &self.symbols
    }

    pub fn zeta(&self, source: ZetaSource) -> Result<&ZetaSet> {
        match source {
            ZetaSource::Generic => Ok(&self.generic),
            ZetaSource::PaperTable => self.table.as_ref().ok_or_else(|| Error::NoTable(self.phi.kind().to_string())),
        }
    }

    pub fn zeta_values(&self, source: ZetaSource, s: f64, b: f64) -> Result<[f64; ZETA_COUNT]> {
        self.zeta(source)?.eval_with_tol(s, b, self.pole_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RicciFormula {
    General,
    Homogeneous,
    VanishingS,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RicciReport {
    pub formula: RicciFormula,
    pub direction: Vec<f64>,
    pub alpha_ric: f64,
    pub rt_term: f64,
    pub total: f64,
    pub s_vanishes: bool,
    pub zeta_source: ZetaSource,
    pub s_ratio: f64,
    #[serde(rename = "B_value")]
    pub b_value: f64,
    pub validity: Verdict,
}

/// Shared setup: validity at `b = c`, the direction, zeta values at `(s, c^2)` and alpha_Ric.
struct Prepared {
    alpha: f64,
    s: f64,
    b_value: f64,
    zeta: [f64; ZETA_COUNT],
    alpha_ric: f64,
    validity: Verdict,
}

fn prepare(
    alg: &LieAlgebraSpec,
    metric: &AlphaBetaMetric,
    z: &[f64],
    mode: &AlphaRicciMode,
    source: ZetaSource,
) -> Result<Prepared> {
    let c = alg.c();
    let phi = metric.phi();
    if let ValidityBound::Bounded(b0) = phi.bound() {
        if c >= b0 {
            return Err(Error::Bound { c, b0, metric: phi.kind().to_string() });
        }
    }
    let validity = shen_validity(phi, c, DEFAULT_SHEN_GRID);
    if let Verdict::Invalid { witness } = validity {
        return Err(Error::ShenInvalid { metric: phi.kind().to_string(), b: c, witness });
    }
    let n = alg.dimension();
    if z.len() != n || z.iter().any(|v| !v.is_finite()) {
        return Err(Error::Direction { expected: n, got: z.len() });
    }
    let alpha = z.iter().map(|v| v * v).sum::<f64>().sqrt();
    if alpha == 0.0 {
        return Err(Error::Direction { expected: n, got: z.len() });
    }
    let s = c * z[n - 1] / alpha;
    debug_assert!(s.abs() <= c * (1.0 + 1e-15));
    let b_value = c * c;
    let zeta = metric.zeta_values(source, s, b_value)?;
    let alpha_ric = alpha_ricci(alg, z, mode)?;
    Ok(Prepared { alpha, s, b_value, zeta, alpha_ric, validity })
}

fn report(
    formula: RicciFormula,
    z: &[f64],
    source: ZetaSource,
    p: &Prepared,
    rt: f64,
    s_vanishes: bool,
) -> RicciReport {
    RicciReport {
        formula,
        direction: z.to_vec(),
        alpha_ric: p.alpha_ric,
        rt_term: rt,
        total: p.alpha_ric + rt,
        s_vanishes,
        zeta_source: source,
        s_ratio: p.s,
        b_value: p.b_value,
        validity: p.validity,
    }
}

/// `Ric(Z)` through the contracted scalars (dual-path checked) and the general RT sum.
pub fn ricci_general(
    alg: &LieAlgebraSpec,
    metric: &AlphaBetaMetric,
    z: &[f64],
    mode: &AlphaRicciMode,
    source: ZetaSource,
) -> Result<RicciReport> {
    let p = prepare(alg, metric, z, mode, source)?;
    let sc = contracted_scalars(alg, z)?;
    let rt = rt_term(&sc, &p.zeta, alg.dimension());
    Ok(report(RicciFormula::General, z, source, &p, rt, s_curvature_vanishes(alg)))
}

/// Structure constants contracted with `y`; index `0` in a name means contraction.
struct Contracted {
    /// `C^0_{ij}`
    up0: Vec<Vec<f64>>,
    /// `C^m_{i0}` as `[m][i]`
    low_j: Vec<Vec<f64>>,
    /// `C^m_{0j}` as `[m][j]`
    low_i: Vec<Vec<f64>>,
    /// `C^0_{0j}`
    c00: Vec<f64>,
    /// `C^0_{i0}`
    c0_0: Vec<f64>,
}

impl Contracted {
    fn new(alg: &LieAlgebraSpec, y: &[f64]) -> Self {
        let n = alg.dimension();
        let c = |m, i, j| alg.get(m, i, j);
        let up0: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|m| y[m] * c(m, i, j)).sum()).collect()).collect();
        let low_j = (0..n).map(|m| (0..n).map(|i| (0..n).map(|j| c(m, i, j) * y[j]).sum()).collect()).collect();
        let low_i = (0..n).map(|m| (0..n).map(|j| (0..n).map(|i| y[i] * c(m, i, j)).sum()).collect()).collect();
        let c00 = (0..n).map(|j| (0..n).map(|i| up0[i][j] * y[i]).sum()).collect();
        let c0_0 = (0..n).map(|i| (0..n).map(|j| up0[i][j] * y[j]).sum()).collect();
        Contracted { up0, low_j, low_i, c00, c0_0 }
    }
}

/// `Ric(Z)` from the homogeneous-space display: thirteen groups written directly
/// in contracted structure constants.
pub fn ricci_homogeneous(
    alg: &LieAlgebraSpec,
    metric: &AlphaBetaMetric,
    z: &[f64],
    mode: &AlphaRicciMode,
    source: ZetaSource,
) -> Result<RicciReport> {
    let p = prepare(alg, metric, z, mode, source)?;
    let n = alg.dimension();
    let nn = n - 1;
    let cv = alg.c();
    let c = |m, i, j| alg.get(m, i, j);
    let k = Contracted::new(alg, z);
    let zeta = |i: usize| p.zeta[i - 1];
    let m = n as f64 - 1.0;
    let a = p.alpha;
    let sum = |f: &dyn Fn(usize) -> f64| (0..n).map(f).sum::<f64>();
    let (c2, c3, c4) = (cv * cv, cv * cv * cv, cv * cv * cv * cv);

    let c00n = k.c00[nn];
    let cnn0 = k.low_j[nn][nn];
    let trace_nl = sum(&|l| c(l, nn, l));

    let mut rt = c2 * c00n * c00n / (a * a) * (m * zeta(1) + zeta(2));
    rt += c3 * c00n * cnn0 / (2.0 * a) * (m * (zeta(3) - zeta(5)) + zeta(4) - zeta(6));
    rt -= cv * sum(&|l| k.c00[l] * (k.up0[nn][l] + k.low_j[l][nn])) / a * (m * zeta(7) + zeta(8));
    rt += c4 * cnn0 * cnn0 / 4.0 * (m * (zeta(9) - zeta(12)) + zeta(10) - zeta(11) - zeta(13));
    rt -= c2 / 4.0
        * (4.0 * c00n * trace_nl
            + sum(&|l| {
                (k.low_j[l][nn] + k.up0[nn][l]) * (2.0 * k.up0[nn][l] + k.low_i[nn][l] + 2.0 * k.low_i[l][nn])
            })
            + 2.0 * sum(&|l| c(nn, nn, l) * k.c0_0[l]))
        * zeta(14);
    rt += c2 / 4.0 * sum(&|l| k.low_i[nn][l] * (k.low_j[l][nn] + k.up0[nn][l])) * (m * zeta(15) + zeta(16));
    rt += c2 / 2.0 * sum(&|l| c(nn, nn, l) * k.c00[l]) * (m * zeta(17) + zeta(18));
    rt -= c2 / 4.0 * sum(&|l| k.low_j[nn][l].powi(2)) * zeta(19);
    rt += c3 / 4.0 * a * sum(&|l| k.low_j[nn][l] * c(nn, nn, l)) * (m * zeta(21) + zeta(22));
    rt += c3 / 4.0
        * a
        * (4.0 * cnn0 * trace_nl - sum(&|l| c(nn, nn, l) * (4.0 * k.up0[nn][l] - k.low_i[nn][l])))
        * zeta(23);
    rt += cv / 4.0 * a * spin_term(alg, &k) * zeta(24);
    rt += c2 / 4.0
        * a
        * a
        * (c2 * sum(&|l| c(nn, nn, l).powi(2)) * zeta(25) - sum(&|l| sum(&|i| c(nn, l, i).powi(2))) * zeta(26));

    Ok(report(RicciFormula::Homogeneous, z, source, &p, rt, s_curvature_vanishes(alg)))
}

/// `2 C^n_{t0} C^l_{lt} + C^n_{lt} C^0_{lt}`, summed over `l` and `t`.
fn spin_term(alg: &LieAlgebraSpec, k: &Contracted) -> f64 {
    let n = alg.dimension();
    let nn = n - 1;
    let mut acc = 0.0;
    for t in 0..n {
        for l in 0..n {
            acc += 2.0 * k.low_j[nn][t] * alg.get(l, l, t) + alg.get(nn, l, t) * k.up0[l][t];
        }
    }
    acc
}

/// `Ric(Z)` from the reduced formula valid when the S-curvature vanishes;
/// fails with [`Error::SCurvatureNonvanishing`] otherwise.
pub fn ricci_vanishing_s(
    alg: &LieAlgebraSpec,
    metric: &AlphaBetaMetric,
    z: &[f64],
    mode: &AlphaRicciMode,
    source: ZetaSource,
) -> Result<RicciReport> {
    if !s_curvature_vanishes(alg) {
        return Err(Error::SCurvatureNonvanishing);
    }
    let p = prepare(alg, metric, z, mode, source)?;
    let n = alg.dimension();
    let nn = n - 1;
    let cv = alg.c();
    let k = Contracted::new(alg, z);
    let a = p.alpha;
    let zeta = |i: usize| p.zeta[i - 1];
    let sq_l0: f64 = (0..n).map(|l| k.low_j[nn][l].powi(2)).sum();
    let sq_ik: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| alg.get(nn, i, j).powi(2)).sum();
    let rt = -cv * cv / 4.0 * sq_l0 * zeta(19) + cv / 4.0 * a * spin_term(alg, &k) * zeta(24)
        - cv * cv / 4.0 * a * a * sq_ik * zeta(26);
    Ok(report(RicciFormula::VanishingS, z, source, &p, rt, true))
}

/// Deterministic unit directions: a circle for `n = 2`, a Fibonacci sphere for
/// `n = 3`, and for `n >= 4` a low-discrepancy additive sequence mapped through
/// Box-Muller to Gaussian vectors and normalized.
pub fn direction_grid(n: usize, samples: usize) -> Vec<Vec<f64>> {
    match n {
        0 | 1 => Vec::new(),
        2 => (0..samples)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / samples as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..samples)
                .map(|k| {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / samples as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let t = golden * k as f64;
                    vec![r * t.cos(), r * t.sin(), z]
                })
                .collect()
        }
        _ => {
            let dims = n + n % 2;
            // generalized golden ratio: the positive root of x^(d+1) = x + 1
            let mut g = 2.0f64;
            for _ in 0..64 {
                g = (1.0 + g).powf(1.0 / (dims as f64 + 1.0));
            }
            let steps: Vec<f64> = (1..=dims).map(|d| g.powi(-(d as i32)).fract()).collect();
            (0..samples)
                .map(|k| {
                    let u: Vec<f64> =
                        steps.iter().map(|a| (0.5 + a * (k + 1) as f64).fract().clamp(1e-12, 1.0 - 1e-12)).collect();
                    let mut v: Vec<f64> = u
                        .chunks(2)
                        .flat_map(|p| {
                            let r = (-2.0 * p[0].ln()).sqrt();
                            let t = 2.0 * PI * p[1];
                            [r * t.cos(), r * t.sin()]
                        })
                        .take(n)
                        .collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 0.0 {
                        v.iter_mut().for_each(|x| *x /= norm);
                    } else {
                        v[0] = 1.0;
                    }
                    v
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SignPattern {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub s_vanishes: bool,
    pub samples: usize,
    pub min: f64,
    pub max: f64,
    pub signs: SignPattern,
    /// Vanishing S-curvature and negative Ricci curvature on every sample.
    pub implies_riemannian: bool,
    pub message: String,
}

impl ImplicationReport {
    /// Builds the report from Ricci values already computed on a direction grid.
    pub fn from_values(s_vanishes: bool, values: &[f64]) -> Self {
        let mut signs = SignPattern::default();
        for &v in values {
            if v.abs() <= SIGN_TOL {
                signs.zero += 1;
            } else if v < 0.0 {
                signs.negative += 1;
            } else {
                signs.positive += 1;
            }
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let all_negative = !values.is_empty() && signs.negative == values.len();
        let implies_riemannian = s_vanishes && all_negative;
        let message = if !s_vanishes {
            "S-curvature nonvanishing; corollary not applicable".to_string()
        } else if implies_riemannian {
            "vanishing S-curvature and negative Ricci curvature on every sample: the space must be Riemannian".to_string()
        } else {
            format!(
                "vanishing S-curvature but Ricci curvature is not negative everywhere \
                 ({} negative, {} zero, {} positive); corollary not applicable",
                signs.negative, signs.zero, signs.positive
            )
        };
        ImplicationReport {
            s_vanishes,
            samples: values.len(),
            min: if values.is_empty() { 0.0 } else { min },
            max: if values.is_empty() { 0.0 } else { max },
            signs,
            implies_riemannian,
            message,
        }
    }
}

/// Samples `Ric` over [`direction_grid`] and checks whether vanishing
/// S-curvature together with negative Ricci curvature forces a Riemannian metric.
pub fn riemannian_implication(
    alg: &LieAlgebraSpec,
    metric: &AlphaBetaMetric,
    samples: usize,
    mode: &AlphaRicciMode,
    source: ZetaSource,
) -> Result<ImplicationReport> {
    let values = direction_grid(alg.dimension(), samples)
        .iter()
        .map(|z| ricci_general(alg, metric, z, mode, source).map(|r| r.total))
        .collect::<Result<Vec<_>>>()?;
    Ok(ImplicationReport::from_values(s_curvature_vanishes(alg), &values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, validate_algebra, RawAlgebra};
    use approx::assert_abs_diff_eq;

    fn setup(raw: RawAlgebra, kind: PhiKind) -> (LieAlgebraSpec, AlphaBetaMetric) {
        let metric = AlphaBetaMetric::named(kind).unwrap();
        (validate_algebra(&raw, metric.phi()).unwrap(), metric)
    }

    const E1: [f64; 3] = [1.0, 0.0, 0.0];

    #[test]
    fn so3_square_worked_example() {
        let (alg, metric) = setup(catalog::so3(0.5), PhiKind::Square);
        let lg = AlphaRicciMode::LieGroup;
        for f in [ricci_general, ricci_homogeneous, ricci_vanishing_s] {
            let r = f(&alg, &metric, &E1, &lg, ZetaSource::Generic).unwrap();
            assert_abs_diff_eq!(r.alpha_ric, 0.5, epsilon = 1e-12);
            assert_abs_diff_eq!(r.rt_term, 0.75, epsilon = 1e-12);
            assert_abs_diff_eq!(r.total, 1.25, epsilon = 1e-12);
            assert_eq!(r.b_value, 0.25);
            assert_eq!(r.s_ratio, 0.0);
        }
    }

    #[test]
    fn so3_randers_square() {
        let c = 0.3;
        let (alg, metric) = setup(catalog::so3(c), PhiKind::RandersSquare);
        let r = ricci_homogeneous(&alg, &metric, &E1, &AlphaRicciMode::LieGroup, ZetaSource::Generic).unwrap();
        assert_abs_diff_eq!(r.total, 0.5 + 8.0 * c * c, epsilon = 1e-12);
    }

    #[test]
    fn heisenberg_square_e1() {
        let c = 0.5;
        let (alg, metric) = setup(catalog::heisenberg(c), PhiKind::Square);
        let r = ricci_vanishing_s(&alg, &metric, &E1, &AlphaRicciMode::LieGroup, ZetaSource::Generic).unwrap();
        assert_abs_diff_eq!(r.total, -0.5 + 3.0 * c * c, epsilon = 1e-12);
    }

    #[test]
    fn vanishing_s_rejects_solvable() {
        let (alg, metric) = setup(catalog::solvable(0.5), PhiKind::Square);
        let err = ricci_vanishing_s(&alg, &metric, &E1, &AlphaRicciMode::LieGroup, ZetaSource::Generic).unwrap_err();
        assert_eq!(err, Error::SCurvatureNonvanishing);
    }

    #[test]
    fn riemannian_metric_has_no_rt() {
        let (alg, metric) = setup(catalog::solvable(0.7), PhiKind::Riemannian);
        let r = ricci_general(&alg, &metric, &[0.3, -0.4, 1.0], &AlphaRicciMode::LieGroup, ZetaSource::Generic).unwrap();
        assert_eq!(r.rt_term, 0.0);
        assert_eq!(r.total, r.alpha_ric);
        assert!(matches!(metric.zeta(ZetaSource::PaperTable), Err(Error::NoTable(_))));
    }

    #[test]
    fn rt_of_zero_scalars_is_zero() {
        let sc = ContractedScalars { alpha: 1.0, ..Default::default() };
        assert_eq!(rt_term(&sc, &[1.0; ZETA_COUNT], 4), 0.0);
    }

    #[test]
    fn implication_messages() {
        let lg = AlphaRicciMode::LieGroup;
        let (alg, metric) = setup(catalog::solvable(0.5), PhiKind::Square);
        let rep = riemannian_implication(&alg, &metric, 20, &lg, ZetaSource::Generic).unwrap();
        assert!(!rep.implies_riemannian);
        assert_eq!(rep.message, "S-curvature nonvanishing; corollary not applicable");

        let (alg, metric) = setup(catalog::so3(0.5), PhiKind::Square);
        let rep = riemannian_implication(&alg, &metric, 50, &lg, ZetaSource::Generic).unwrap();
        assert!(rep.min > 0.0 && !rep.implies_riemannian);

        let rep = ImplicationReport::from_values(true, &[-1.0, -0.5]);
        assert!(rep.implies_riemannian);
    }

    #[test]
    fn direction_grids_are_unit_and_deterministic() {
        for n in 2..=6 {
            let g = direction_grid(n, 37);
            assert_eq!(g.len(), 37);
            for v in &g {
                assert_eq!(v.len(), n);
                assert_abs_diff_eq!(v.iter().map(|x| x * x).sum::<f64>(), 1.0, epsilon = 1e-12);
            }
            assert_eq!(g, direction_grid(n, 37));
        }
    }

    #[test]
    fn bound_rechecked_against_the_metric() {
        let alg = validate_algebra(&catalog::so3(0.5), &PhiFamily::named(PhiKind::Square)).unwrap();
        let metric = AlphaBetaMetric::named(PhiKind::RandersSquare).unwrap();
        let err = ricci_general(&alg, &metric, &E1, &AlphaRicciMode::LieGroup, ZetaSource::Generic).unwrap_err();
        assert!(matches!(err, Error::Bound { .. }));
    }
}
