use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,

    #[error("pole: denominator vanishes at s = {s}, B = {b}")]
    Pole { s: f64, b: f64 },

    #[error("expression parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown symbol `{0}` in expression")]
    UnknownSymbol(String),

    #[error("invalid phi: {0}")]
    InvalidPhi(String),

    #[error("degenerate phi: phi - s*phi' is identically zero")]
    DegeneratePhi,

    #[error("no closed-form zeta table is available for metric `{0}`")]
    NoTable(String),

    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),

    #[error("structure constants are not antisymmetric at (m, i, j) = ({m}, {i}, {j}) (1-based)")]
    Asymmetry { m: usize, i: usize, j: usize },

    #[error("c ≥ b0: c = {c} is outside the validity bound {b0} of the {metric} metric")]
    Bound { c: f64, b0: f64, metric: String },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("{metric} metric is not a Finsler metric at b = {b}: condition fails at s = {witness}")]
    ShenInvalid { metric: String, b: f64, witness: f64 },

    #[error("dual-path disagreement for scalar `{scalar}`: tensor path {tensor}, closed form {closed}")]
    DualPathMismatch { scalar: &'static str, tensor: f64, closed: f64 },

    #[error("direction must be a nonzero vector of length {expected}, got length {got}")]
    Direction { expected: usize, got: usize },

    #[error("explicit Ricci matrix must be a symmetric {n}x{n} matrix")]
    NonSymmetricMatrix { n: usize },

    #[error("S-curvature does not vanish: <[w, Y], Y> is not identically zero")]
    SCurvatureNonvanishing,
}

impl Error {
    /// Math-domain failures as opposed to malformed or out-of-contract input.
    pub fn is_math_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::ShenInvalid { .. }
                | Error::DualPathMismatch { .. }
                | Error::SCurvatureNonvanishing
                | Error::DegeneratePhi
                | Error::DivisionByZeroFunction
        )
    }
}
