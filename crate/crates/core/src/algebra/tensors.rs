use ndarray::{Array1, Array2, Array3, Array4};

use super::spec::LieAlgebraSpec;

/// Connection coefficients at the origin in the orthonormal basis, 0-based,
/// always indexed `[m, i, j]` (upper index first).
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionData {
    /// `Gamma^m_{ij} = f(i,j) C^m_{ij} + nabla[m,i,j]`, `f(i,j) = 1` iff `i < j`.
    pub gamma: Array3<f64>,
    /// `<nabla_{w_i} w_j, w_m> = -(C^i_{jm} + C^j_{im} + C^m_{ij}) / 2`.
    pub nabla: Array3<f64>,
    /// `[m, i, j, l]`: derivative of `<nabla_{w_i} w_j, w_m>` along `w_l`.
    pub nabla_derivative: Array4<f64>,
}

pub fn christoffel(alg: &LieAlgebraSpec) -> ConnectionData {
    let n = alg.dimension();
    let c = |m, i, j| alg.get(m, i, j);
    let nabla = Array3::from_shape_fn((n, n, n), |(m, i, j)| -0.5 * (c(i, j, m) + c(j, i, m) + c(m, i, j)));
    let gamma = Array3::from_shape_fn((n, n, n), |(m, i, j)| {
        let f = if i < j { 1.0 } else { 0.0 };
        f * c(m, i, j) + nabla[[m, i, j]]
    });
    let nabla_derivative = Array4::from_shape_fn((n, n, n, n), |(m, i, j, l)| {
        0.5 * (0..n)
            .map(|t| {
                c(i, l, t) * c(t, j, m)
                    + c(j, l, t) * c(t, i, m)
                    + c(m, l, t) * c(t, i, j)
                    + c(t, j, m) * c(t, l, i)
                    + c(t, i, m) * c(t, l, j)
                    + c(t, i, j) * c(t, l, m)
            })
            .sum::<f64>()
    });
    ConnectionData { gamma, nabla, nabla_derivative }
}

/// The tensors of the 1-form `beta = c w_n^*` at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaTensors {
    /// `b_k = c delta_{nk}`.
    pub b: Array1<f64>,
    pub r_ij: Array2<f64>,
    pub s_ij: Array2<f64>,
    pub r_i: Array1<f64>,
    pub s_i: Array1<f64>,
    /// `s_{jk;m}` as `[j, k, m]`.
    pub s_jk_m: Array3<f64>,
    /// `s_{j;k}` as `[j, k]`.
    pub s_j_k: Array2<f64>,
    /// `b_{j;k;m}` as `[j, k, m]`.
    pub b_jkm: Array3<f64>,
    /// `r_{jk;m} = s_{jk;m} + b_{k;j;m}` as `[j, k, m]`.
    pub r_jk_m: Array3<f64>,
}

pub fn beta_tensors(alg: &LieAlgebraSpec) -> BetaTensors {
    beta_tensors_with(alg, &christoffel(alg))
}

pub fn beta_tensors_with(alg: &LieAlgebraSpec, conn: &ConnectionData) -> BetaTensors {
    let n = alg.dimension();
    let nn = n - 1;
    let cv = alg.c();
    let c = |m, i, j| alg.get(m, i, j);
    let gamma = &conn.gamma;
    let nab = &conn.nabla;

    let b = Array1::from_shape_fn(n, |k| if k == nn { cv } else { 0.0 });
    let s_ij = Array2::from_shape_fn((n, n), |(j, k)| 0.5 * cv * c(nn, j, k));
    let r_ij = Array2::from_shape_fn((n, n), |(j, k)| 0.5 * cv * (c(k, j, nn) + c(j, k, nn)));
    let s_i = Array1::from_shape_fn(n, |k| 0.5 * cv * cv * c(nn, nn, k));
    let r_i = Array1::from_shape_fn(n, |k| cv * r_ij[[nn, k]]);

    let s_jk_m = Array3::from_shape_fn((n, n, n), |(j, k, m)| {
        0.5 * cv
            * (0..n)
                .map(|t| {
                    -c(t, j, k) * c(nn, m, t)
                        + 0.5 * c(nn, j, t) * (-c(t, k, m) + c(m, k, t) + c(k, m, t))
                        + 0.5 * c(nn, t, k) * (-c(t, j, m) + c(m, j, t) + c(j, m, t))
                })
                .sum::<f64>()
    });
    let s_j_k = Array2::from_shape_fn((n, n), |(j, k)| {
        let tail: f64 = (0..n).map(|t| c(nn, t, j) * gamma[[t, nn, k]]).sum();
        cv * (s_jk_m[[nn, j, k]] + 0.5 * cv * tail)
    });
    let b_jkm = Array3::from_shape_fn((n, n, n), |(j, k, m)| {
        let sum: f64 = (0..n)
            .map(|t| -gamma[[j, nn, t]] * nab[[t, m, k]] - gamma[[t, nn, k]] * nab[[t, m, j]] + c(t, m, nn) * nab[[j, t, k]])
            .sum();
        cv * (sum + conn.nabla_derivative[[j, nn, k, m]])
    });
    let r_jk_m = Array3::from_shape_fn((n, n, n), |(j, k, m)| s_jk_m[[j, k, m]] + b_jkm[[k, j, m]]);

    BetaTensors { b, r_ij, s_ij, r_i, s_i, s_jk_m, s_j_k, b_jkm, r_jk_m }
}
