//! Exact derivation of the zeta coefficient functions of the (alpha, beta)-metric
//! Ricci formula, and Ricci / S-curvature computations for homogeneous Finsler
//! spaces described by Lie-algebra structure constants.
//!
//! The crate is organised bottom-up:
//!
//! * [`ratfield`]: exact arithmetic in Q(s, B)
//! * [`metric`]: polynomial phi families, validity checks, Q / Theta / psi
//! * [`zeta`]: generic and tabulated zeta coefficients and their comparison
//! * [`algebra`]: structure constants, connection, beta tensors, contracted scalars
//! * [`ricci`]: assembly of the Ricci curvature and the S-curvature reductions

pub mod algebra;
pub mod error;
pub mod metric;
pub mod ratfield;
pub mod ricci;
pub mod zeta;

pub use algebra::{
    alpha_ricci, beta_tensors, catalog, christoffel, contracted_scalars, s_curvature_vanishes, validate_algebra,
    AlphaRicciMode, BetaTensors, ConnectionData, ContractedScalars, LieAlgebraSpec, RawAlgebra,
};
pub use error::{Error, Result};
pub use metric::{make_phi, qtp, shen_validity, PhiFamily, PhiKind, QtpSymbols, ValidityBound, Verdict};
pub use ratfield::{ExactRational, Poly2, RationalFunction, Var};
pub use ricci::{
    direction_grid, ricci_general, ricci_homogeneous, ricci_vanishing_s, riemannian_implication, rt_term,
    AlphaBetaMetric, ImplicationReport, RicciFormula, RicciReport, SignPattern,
};
pub use zeta::{
    compare_zeta, eval_zeta, generic_zeta, table_zeta, Witness, ZetaComparison, ZetaSet, ZetaSource, ZetaVerdict,
    ZETA_COUNT,
};
