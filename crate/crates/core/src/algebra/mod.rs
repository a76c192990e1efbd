//! Homogeneous-space data at the origin: structure constants of the tangent
//! space, connection coefficients, the tensors of `beta`, the direction-contracted
//! scalars, the S-curvature criterion and the Ricci curvature of `alpha`.

mod curvature;
mod scalars;
mod spec;
mod tensors;

pub use curvature::{alpha_ricci, check_symmetric, s_curvature_vanishes, AlphaRicciMode, S_CURVATURE_TOL};
pub use scalars::{
    contracted_scalars, contracted_scalars_with, scalars_by_tensors, scalars_closed_form, ContractedScalars,
    DUAL_PATH_TOL,
};
pub use spec::{catalog, validate_algebra, LieAlgebraSpec, RawAlgebra, ANTISYMMETRY_TOL};
pub use tensors::{beta_tensors, beta_tensors_with, christoffel, BetaTensors, ConnectionData};
