use ndarray::{Array3, Axis};

use crate::error::{Error, Result};
use crate::metric::{shen_validity, PhiFamily, ValidityBound, Verdict, DEFAULT_SHEN_GRID};

/// Antisymmetry tolerance applied before the constants are symmetrized exactly.
pub const ANTISYMMETRY_TOL: f64 = 1e-12;

/// Unvalidated structure constants `C[m, i, j] = <[w_i, w_j], w_m>` (0-based)
/// together with the length `c` of the invariant vector field `w = c w_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RawAlgebra {
    pub c: f64,
    pub structure: Array3<f64>,
}

impl RawAlgebra {
    pub fn new(c: f64, structure: Array3<f64>) -> Self {
        RawAlgebra { c, structure }
    }

    pub fn zeros(n: usize, c: f64) -> Self {
        RawAlgebra { c, structure: Array3::zeros((n, n, n)) }
    }

    /// Antisymmetric part of an arbitrary tensor: `C[m,i,j] = (f(m,i,j) - f(m,j,i)) / 2`.
    pub fn antisymmetrized<F>(n: usize, c: f64, mut f: F) -> Self
    where
        F: FnMut(usize, usize, usize) -> f64,
    {
        let raw = Array3::from_shape_fn((n, n, n), |(m, i, j)| f(m, i, j));
        let structure = Array3::from_shape_fn((n, n, n), |(m, i, j)| 0.5 * (raw[[m, i, j]] - raw[[m, j, i]]));
        RawAlgebra { c, structure }
    }

    /// Adds `v` to the `w_m` component of `[w_i, w_j]` and completes by antisymmetry.
    pub fn bracket(mut self, i: usize, j: usize, m: usize, v: f64) -> Self {
        self.structure[[m, i, j]] += v;
        self.structure[[m, j, i]] -= v;
        self
    }

    pub fn dimension(&self) -> usize {
        self.structure.len_of(Axis(0))
    }
}

/// Structure constants that passed [`validate_algebra`]: exactly antisymmetric,
/// `n >= 2`, and `c` inside the validity range of the metric it was checked against.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraSpec {
    c: f64,
    structure: Array3<f64>,
}

impl LieAlgebraSpec {
    pub fn dimension(&self) -> usize {
        self.structure.len_of(Axis(0))
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn structure(&self) -> &Array3<f64> {
        &self.structure
    }

    /// `C^m_{ij}`, 0-based.
    pub fn get(&self, m: usize, i: usize, j: usize) -> f64 {
        self.structure[[m, i, j]]
    }

    pub fn to_raw(&self) -> RawAlgebra {
        RawAlgebra { c: self.c, structure: self.structure.clone() }
    }

    /// Same algebra with a different `c`; the caller is responsible for
    /// revalidating against a metric.
    pub fn with_c(&self, c: f64) -> RawAlgebra {
        RawAlgebra { c, structure: self.structure.clone() }
    }
}

/// Checks dimension, finiteness, antisymmetry (to [`ANTISYMMETRY_TOL`]) and the
/// bound `0 < c < b0` of `phi`; custom families are checked with [`shen_validity`] at `b = c`.
pub fn validate_algebra(raw: &RawAlgebra, phi: &PhiFamily) -> Result<LieAlgebraSpec> {
    let shape = raw.structure.shape();
    let n = shape[0];
    if shape[1] != n || shape[2] != n {
        return Err(Error::InvalidAlgebra(format!("structure tensor has shape {shape:?}, expected n x n x n")));
    }
    if n < 2 {
        return Err(Error::Dimension(n));
    }
    if raw.structure.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidAlgebra("structure constants must be finite".into()));
    }
    if !(raw.c.is_finite() && raw.c > 0.0) {
        return Err(Error::InvalidAlgebra(format!("c must be positive, got {}", raw.c)));
    }
    let c3 = &raw.structure;
    for m in 0..n {
        for i in 0..n {
            for j in i..n {
                if (c3[[m, i, j]] + c3[[m, j, i]]).abs() > ANTISYMMETRY_TOL {
                    return Err(Error::Asymmetry { m: m + 1, i: i + 1, j: j + 1 });
                }
            }
        }
    }
    if let ValidityBound::Bounded(b0) = phi.bound() {
        if raw.c >= b0 {
            return Err(Error::Bound { c: raw.c, b0, metric: phi.kind().to_string() });
        }
    }
    if let Verdict::Invalid { witness } = shen_validity(phi, raw.c, DEFAULT_SHEN_GRID) {
        return Err(Error::ShenInvalid { metric: phi.kind().to_string(), b: raw.c, witness });
    }
    let structure = Array3::from_shape_fn((n, n, n), |(m, i, j)| 0.5 * (c3[[m, i, j]] - c3[[m, j, i]]));
    Ok(LieAlgebraSpec { c: raw.c, structure })
}

/// Small algebras used in examples and tests. The last basis vector is always `w / c`.
pub mod catalog {
    use super::RawAlgebra;

    pub fn abelian(n: usize, c: f64) -> RawAlgebra {
        RawAlgebra::zeros(n, c)
    }

    /// `[e1,e2]=e3`, `[e2,e3]=e1`, `[e3,e1]=e2`.
    pub fn so3(c: f64) -> RawAlgebra {
        RawAlgebra::zeros(3, c).bracket(0, 1, 2, 1.0).bracket(1, 2, 0, 1.0).bracket(2, 0, 1, 1.0)
    }

    /// `[e1,e2]=e3`, with `w` along the central direction `e3`.
    pub fn heisenberg(c: f64) -> RawAlgebra {
        RawAlgebra::zeros(3, c).bracket(0, 1, 2, 1.0)
    }

    /// `[e3,e1]=e1`, with `w` along `e3`.
    pub fn solvable(c: f64) -> RawAlgebra {
        RawAlgebra::zeros(3, c).bracket(2, 0, 0, 1.0)
    }
}
