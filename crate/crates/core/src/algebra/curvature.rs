use ndarray::{Array2, Array3};

use super::scalars::direction;
use super::spec::LieAlgebraSpec;
use super::tensors::beta_tensors;
use crate::error::{Error, Result};

pub const S_CURVATURE_TOL: f64 = 1e-12;

/// Symmetry tolerance for explicit Ricci matrices.
pub const MATRIX_SYMMETRY_TOL: f64 = 1e-12;

/// True iff `r_ij` and `s_i` vanish, i.e. `<[w, Y], Y> = 0` for every `Y`.
pub fn s_curvature_vanishes(alg: &LieAlgebraSpec) -> bool {
    let t = beta_tensors(alg);
    t.r_ij.iter().chain(t.s_i.iter()).all(|v| v.abs() <= S_CURVATURE_TOL)
}

/// How the Ricci curvature of `alpha` is obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum AlphaRicciMode {
    /// Left-invariant metric on the group itself (trivial isotropy).
    LieGroup,
    /// A user-supplied symmetric matrix `M`; `Ric(Z) = Z^T M Z`.
    Explicit(Array2<f64>),
}

/// Ricci curvature of `alpha` in direction `z`.
pub fn alpha_ricci(alg: &LieAlgebraSpec, z: &[f64], mode: &AlphaRicciMode) -> Result<f64> {
    direction(alg, z)?;
    match mode {
        AlphaRicciMode::LieGroup => Ok(lie_group_ricci(alg.structure(), z)),
        AlphaRicciMode::Explicit(m) => {
            let n = alg.dimension();
            check_symmetric(m, n)?;
            Ok((0..n).map(|i| (0..n).map(|j| z[i] * m[[i, j]] * z[j]).sum::<f64>()).sum())
        }
    }
}

pub fn check_symmetric(m: &Array2<f64>, n: usize) -> Result<()> {
    if m.dim() != (n, n) || m.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonSymmetricMatrix { n });
    }
    for i in 0..n {
        for j in 0..i {
            let (a, b) = (m[[i, j]], m[[j, i]]);
            if (a - b).abs() > MATRIX_SYMMETRY_TOL * (1.0 + a.abs().max(b.abs())) {
                return Err(Error::NonSymmetricMatrix { n });
            }
        }
    }
    Ok(())
}

/// `Ric(y) = sum_i <R(e_i, y) y, e_i>` with `R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]`
/// for the connection `<nabla_X Y, Z> = (<[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>) / 2`.
fn lie_group_ricci(c: &Array3<f64>, y: &[f64]) -> f64 {
    let n = y.len();
    // g[i, j, k] = <nabla_{e_i} e_j, e_k>
    let g = Array3::from_shape_fn((n, n, n), |(i, j, k)| 0.5 * (c[[k, i, j]] - c[[i, j, k]] + c[[j, k, i]]));
    let nab = |x: &[f64], v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|k| {
                let mut acc = 0.0;
                for i in 0..n {
                    if x[i] == 0.0 {
                        continue;
                    }
                    for j in 0..n {
                        acc += x[i] * v[j] * g[[i, j, k]];
                    }
                }
                acc
            })
            .collect()
    };
    let bracket = |x: &[f64], v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|k| {
                let mut acc = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        acc += x[i] * v[j] * c[[k, i, j]];
                    }
                }
                acc
            })
            .collect()
    };
    let nab_y_y = nab(y, y);
    let mut total = 0.0;
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        let a = nab(&e, &nab_y_y);
        let b = nab(y, &nab(&e, y));
        let d = nab(&bracket(&e, y), y);
        total += a[i] - b[i] - d[i];
    }
    total
}
