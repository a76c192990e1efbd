//! The twenty direction-contracted scalars feeding the Ricci formula.
//!
//! A lower or upper index `0` means contraction with the evaluation direction
//! `y = Z`; `l` is summed over the whole basis. Every scalar is computed twice:
//! by contracting the beta tensors, and by the closed forms in contracted
//! structure constants. The two must agree.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use super::spec::LieAlgebraSpec;
use super::tensors::{beta_tensors, BetaTensors};
use crate::error::{Error, Result};

/// Relative tolerance of the dual-path check.
pub const DUAL_PATH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ContractedScalars {
    pub r00: f64,
    pub s0: f64,
    pub r0: f64,
    /// `r_{ij} b^i b^j`; vanishes for every algebra.
    pub r: f64,
    /// `r_{00;0}`
    pub r00_0: f64,
    /// `r^l_l`
    pub rll: f64,
    /// `r_{0l} r^l_0`
    pub r0l_rl0: f64,
    /// `r_{00;l} b^l`
    pub r00l_bl: f64,
    /// `r_{0l;0} b^l`
    pub r0l0_bl: f64,
    /// `r_{0l} s^l_0`
    pub r0l_sl0: f64,
    /// `s_{0;0}`
    pub s00: f64,
    /// `s_{0l} s^l_0`
    pub s0l_sl0: f64,
    /// `s_l s^l_0`
    pub sl_sl0: f64,
    /// `s_l r^l_0`
    pub sl_rl0: f64,
    /// `r_l s^l_0`
    pub rl_sl0: f64,
    /// `s_{0;l} b^l`
    pub s0l_bl: f64,
    /// `s_{l;0} b^l`
    pub sl0_bl: f64,
    /// `s^l_{0;l}`
    pub sl0l: f64,
    /// `s_l s^l`
    pub sl_sl: f64,
    /// `s^j_l s^l_j`
    pub sjl_slj: f64,
    /// `alpha(Z) = |Z|` in the orthonormal basis.
    pub alpha: f64,
    /// `beta(Z) = c Z_n`.
    pub beta: f64,
    /// `s = beta(Z) / alpha(Z)`.
    pub s_ratio: f64,
}

impl ContractedScalars {
    pub const NAMES: [&'static str; 20] = [
        "r00", "s0", "r0", "r", "r00_0", "rll", "r0l_rl0", "r00l_bl", "r0l0_bl", "r0l_sl0", "s00", "s0l_sl0",
        "sl_sl0", "sl_rl0", "rl_sl0", "s0l_bl", "sl0_bl", "sl0l", "sl_sl", "sjl_slj",
    ];

    /// The twenty scalars in [`Self::NAMES`] order.
    pub fn values(&self) -> [f64; 20] {
        [
            self.r00,
            self.s0,
            self.r0,
            self.r,
            self.r00_0,
            self.rll,
            self.r0l_rl0,
            self.r00l_bl,
            self.r0l0_bl,
            self.r0l_sl0,
            self.s00,
            self.s0l_sl0,
            self.sl_sl0,
            self.sl_rl0,
            self.rl_sl0,
            self.s0l_bl,
            self.sl0_bl,
            self.sl0l,
            self.sl_sl,
            self.sjl_slj,
        ]
    }

    pub fn named(&self) -> impl Iterator<Item = (&'static str, f64)> {
        Self::NAMES.into_iter().zip(self.values())
    }
}

/// Checks the direction and returns `(y, alpha, beta, s)`.
pub(crate) fn direction(alg: &LieAlgebraSpec, z: &[f64]) -> Result<(Array1<f64>, f64, f64, f64)> {
    let n = alg.dimension();
    if z.len() != n || z.iter().any(|v| !v.is_finite()) {
        return Err(Error::Direction { expected: n, got: z.len() });
    }
    let alpha = z.iter().map(|v| v * v).sum::<f64>().sqrt();
    if alpha == 0.0 {
        return Err(Error::Direction { expected: n, got: z.len() });
    }
    let beta = alg.c() * z[n - 1];
    Ok((Array1::from(z.to_vec()), alpha, beta, beta / alpha))
}

/// Path A: contractions of [`BetaTensors`] with `y = Z` and `b`.
pub fn scalars_by_tensors(alg: &LieAlgebraSpec, t: &BetaTensors, z: &[f64]) -> Result<ContractedScalars> {
    let (y, alpha, beta, s_ratio) = direction(alg, z)?;
    let n = alg.dimension();
    let b = &t.b;
    let r = &t.r_ij;
    let s = &t.s_ij;
    let quad = |m: &Array2<f64>, u: &Array1<f64>, v: &Array1<f64>| u.dot(&m.dot(v));
    let tri = |a: &ndarray::Array3<f64>, u: &Array1<f64>, v: &Array1<f64>, w: &Array1<f64>| {
        let mut acc = 0.0;
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    acc += a[[j, k, m]] * u[j] * v[k] * w[m];
                }
            }
        }
        acc
    };
    let r_l0 = r.dot(&y);
    let s_l0 = s.dot(&y);
    let r_0l = y.dot(r);
    let s_0l = y.dot(s);
    let sl0l: f64 = (0..n).map(|l| (0..n).map(|k| t.s_jk_m[[l, k, l]] * y[k]).sum::<f64>()).sum();
    let sjl_slj: f64 = (0..n).flat_map(|j| (0..n).map(move |l| (j, l))).map(|(j, l)| s[[j, l]] * s[[l, j]]).sum();

    Ok(ContractedScalars {
        r00: quad(r, &y, &y),
        s0: t.s_i.dot(&y),
        r0: t.r_i.dot(&y),
        r: quad(r, b, b),
        r00_0: tri(&t.r_jk_m, &y, &y, &y),
        rll: r.diag().sum(),
        r0l_rl0: r_0l.dot(&r_l0),
        r00l_bl: tri(&t.r_jk_m, &y, &y, b),
        r0l0_bl: tri(&t.r_jk_m, &y, b, &y),
        r0l_sl0: r_0l.dot(&s_l0),
        s00: quad(&t.s_j_k, &y, &y),
        s0l_sl0: s_0l.dot(&s_l0),
        sl_sl0: t.s_i.dot(&s_l0),
        sl_rl0: t.s_i.dot(&r_l0),
        rl_sl0: t.r_i.dot(&s_l0),
        s0l_bl: quad(&t.s_j_k, &y, b),
        sl0_bl: quad(&t.s_j_k, b, &y),
        sl0l,
        sl_sl: t.s_i.dot(&t.s_i),
        sjl_slj,
        alpha,
        beta,
        s_ratio,
    })
}

/// Path B: closed forms in the structure constants contracted with `y`.
pub fn scalars_closed_form(alg: &LieAlgebraSpec, z: &[f64]) -> Result<ContractedScalars> {
    let (y, alpha, beta, s_ratio) = direction(alg, z)?;
    let n = alg.dimension();
    let nn = n - 1;
    let cv = alg.c();
    let c2 = cv * cv;
    let c3 = c2 * cv;
    let c = |m, i, j| alg.get(m, i, j);
    // C^0_{ij}, C^m_{i0}, C^m_{0j}, C^0_{0j}, C^0_{i0}
    let up0 = Array2::from_shape_fn((n, n), |(i, j)| (0..n).map(|m| y[m] * c(m, i, j)).sum::<f64>());
    let low_j = Array2::from_shape_fn((n, n), |(m, i)| (0..n).map(|j| c(m, i, j) * y[j]).sum::<f64>());
    let low_i = Array2::from_shape_fn((n, n), |(m, j)| (0..n).map(|i| y[i] * c(m, i, j)).sum::<f64>());
    let c00 = Array1::from_shape_fn(n, |j| (0..n).map(|i| up0[[i, j]] * y[i]).sum::<f64>());
    let c0_0 = Array1::from_shape_fn(n, |i| (0..n).map(|j| up0[[i, j]] * y[j]).sum::<f64>());
    let sum = |f: &dyn Fn(usize) -> f64| (0..n).map(f).sum::<f64>();

    Ok(ContractedScalars {
        r00: cv * c00[nn],
        s0: 0.5 * c2 * low_j[[nn, nn]],
        r0: 0.5 * c2 * low_i[[nn, nn]],
        r: 0.0,
        r00_0: cv * sum(&|i| c00[i] * (up0[[i, nn]] + low_i[[i, nn]])),
        rll: cv * sum(&|l| c(l, l, nn)),
        r0l_rl0: 0.25 * c2 * sum(&|l| (up0[[nn, l]] + low_j[[l, nn]]).powi(2)),
        r00l_bl: 0.5
            * c2
            * sum(&|t| (low_i[[t, nn]] + up0[[t, nn]]) * (low_i[[nn, t]] + up0[[nn, t]] + low_i[[t, nn]])),
        r0l0_bl: 0.25
            * c2
            * sum(&|t| {
                2.0 * c(nn, nn, t) * c0_0[t]
                    + (low_j[[nn, t]] + up0[[t, nn]] + low_i[[t, nn]]) * (up0[[nn, t]] + low_j[[t, nn]])
            }),
        r0l_sl0: 0.25 * c2 * sum(&|l| (up0[[nn, l]] + low_j[[l, nn]]) * low_i[[nn, l]]),
        s00: 0.5 * c2 * sum(&|t| c(nn, nn, t) * c00[t]),
        s0l_sl0: -0.25 * c2 * sum(&|l| low_i[[nn, l]].powi(2)),
        sl_sl0: 0.25 * c3 * sum(&|l| c(nn, nn, l) * low_j[[nn, l]]),
        sl_rl0: -0.25 * c3 * sum(&|l| c(nn, nn, l) * (up0[[nn, l]] + low_j[[l, nn]])),
        rl_sl0: 0.25 * c3 * sum(&|l| c(nn, l, nn) * low_j[[nn, l]]),
        s0l_bl: 0.25 * c3 * sum(&|t| c(nn, nn, t) * (low_i[[t, nn]] + up0[[nn, t]] + low_i[[nn, t]])),
        sl0_bl: -0.25 * c3 * sum(&|t| c(nn, t, nn) * (low_i[[nn, t]] + up0[[nn, t]] + low_j[[t, nn]])),
        sl0l: 0.25
            * cv
            * sum(&|t| {
                sum(&|l| 2.0 * low_j[[nn, t]] * c(l, l, t) + c(nn, l, t) * (low_i[[t, l]] + low_i[[l, t]] + up0[[l, t]]))
            }),
        sl_sl: 0.25 * c2 * c2 * sum(&|l| c(nn, nn, l).powi(2)),
        sjl_slj: -0.25 * c2 * sum(&|j| sum(&|l| c(nn, j, l).powi(2))),
        alpha,
        beta,
        s_ratio,
    })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= DUAL_PATH_TOL * (1.0 + a.abs().max(b.abs()))
}

/// Both paths; fails with [`Error::DualPathMismatch`] naming the first scalar
/// that disagrees, otherwise returns the tensor-path values.
pub fn contracted_scalars_with(alg: &LieAlgebraSpec, t: &BetaTensors, z: &[f64]) -> Result<ContractedScalars> {
    let a = scalars_by_tensors(alg, t, z)?;
    let b = scalars_closed_form(alg, z)?;
    for ((name, x), y) in a.named().zip(b.values()) {
        if !close(x, y) {
            return Err(Error::DualPathMismatch { scalar: name, tensor: x, closed: y });
        }
    }
    Ok(a)
}

pub fn contracted_scalars(alg: &LieAlgebraSpec, z: &[f64]) -> Result<ContractedScalars> {
    contracted_scalars_with(alg, &beta_tensors(alg), z)
}
