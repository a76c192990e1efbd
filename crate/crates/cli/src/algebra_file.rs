//! The JSON algebra file: dimension, the nonzero brackets `[w_i, w_j]` for `i < j`
//! (1-based), `c = ||beta||`, the metric and how `alpha`'s Ricci curvature is supplied.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use finric_core::{validate_algebra, AlphaRicciMode, LieAlgebraSpec, PhiFamily, PhiKind, RawAlgebra};
use ndarray::Array2;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dimension: usize,
    #[serde(default)]
    pub brackets: Vec<Bracket>,
    pub c: f64,
    pub metric: MetricField,
    #[serde(default)]
    pub alpha_ricci: AlphaRicciField,
}

/// `[w_i, w_j] = sum_m coeffs[m] w_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<usize, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricField {
    Named(PhiKind),
    Poly { phi_poly: Vec<f64> },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum AlphaRicciField {
    #[default]
    LieGroup,
    Explicit { matrix: Vec<Vec<f64>> },
}

/// A validated file.
#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    pub spec: LieAlgebraSpec,
    pub phi: PhiFamily,
    pub mode: AlphaRicciMode,
    /// Hex SHA-256 of the raw file bytes.
    pub digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl MetricField {
    pub fn to_phi(&self) -> Result<PhiFamily> {
        match self {
            MetricField::Named(PhiKind::Custom) => {
                Err(CliError::File("metric \"custom\" needs explicit coefficients: use {\"phi_poly\": [...]}".into()))
            }
            MetricField::Named(kind) => Ok(PhiFamily::named(*kind)),
            MetricField::Poly { phi_poly } => Ok(PhiFamily::custom_f64(phi_poly)?),
        }
    }

    pub fn from_phi(phi: &PhiFamily) -> Self {
        match phi.kind() {
            PhiKind::Custom => MetricField::Poly { phi_poly: phi.coeffs_f64() },
            kind => MetricField::Named(kind),
        }
    }
}

impl AlgebraFile {
    /// Parses JSON text; errors carry the line and column reported by the parser.
    pub fn from_json(text: &str, path: &Path) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra file is always serializable")
    }

    fn raw(&self) -> Result<RawAlgebra> {
        let n = self.dimension;
        if n < 2 {
            return Err(finric_core::Error::Dimension(n).into());
        }
        let mut seen = BTreeSet::new();
        let mut raw = RawAlgebra::zeros(n, self.c);
        for b in &self.brackets {
            if !(1..=n).contains(&b.i) || !(1..=n).contains(&b.j) {
                return Err(CliError::File(format!("bracket ({}, {}) has an index outside 1..={n}", b.i, b.j)));
            }
            if b.i >= b.j {
                return Err(CliError::File(format!("bracket ({}, {}) must have i < j", b.i, b.j)));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(CliError::File(format!("bracket ({}, {}) appears twice", b.i, b.j)));
            }
            for (&m, &v) in &b.coeffs {
                if !(1..=n).contains(&m) {
                    return Err(CliError::File(format!("bracket ({}, {}) has component {m} outside 1..={n}", b.i, b.j)));
                }
                raw = raw.bracket(b.i - 1, b.j - 1, m - 1, v);
            }
        }
        Ok(raw)
    }

    fn mode(&self) -> Result<AlphaRicciMode> {
        match &self.alpha_ricci {
            AlphaRicciField::LieGroup => Ok(AlphaRicciMode::LieGroup),
            AlphaRicciField::Explicit { matrix } => {
                let n = self.dimension;
                if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
                    return Err(finric_core::Error::NonSymmetricMatrix { n }.into());
                }
                let m = Array2::from_shape_fn((n, n), |(i, j)| matrix[i][j]);
                finric_core::algebra::check_symmetric(&m, n)?;
                Ok(AlphaRicciMode::Explicit(m))
            }
        }
    }

    /// Builds and validates the algebra against the chosen metric.
    pub fn to_spec(&self) -> Result<(LieAlgebraSpec, PhiFamily, AlphaRicciMode)> {
        let phi = self.metric.to_phi()?;
        let spec = validate_algebra(&self.raw()?, &phi)?;
        Ok((spec, phi, self.mode()?))
    }

    /// Inverse of [`AlgebraFile::to_spec`]: lists every nonzero `C^m_{ij}` with `i < j`.
    pub fn from_spec(spec: &LieAlgebraSpec, phi: &PhiFamily, mode: &AlphaRicciMode) -> Self {
        let n = spec.dimension();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<usize, f64> =
                    (0..n).filter(|&m| spec.get(m, i, j) != 0.0).map(|m| (m + 1, spec.get(m, i, j))).collect();
                if !coeffs.is_empty() {
                    brackets.push(Bracket { i: i + 1, j: j + 1, coeffs });
                }
            }
        }
        let alpha_ricci = match mode {
            AlphaRicciMode::LieGroup => AlphaRicciField::LieGroup,
            AlphaRicciMode::Explicit(m) => {
                AlphaRicciField::Explicit { matrix: m.rows().into_iter().map(|r| r.to_vec()).collect() }
            }
        };
        AlgebraFile { dimension: n, brackets, c: spec.c(), metric: MetricField::from_phi(phi), alpha_ricci }
    }
}

pub fn parse_algebra(path: &Path) -> Result<LoadedAlgebra> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: 1,
        column: e.utf8_error().valid_up_to() + 1,
        msg: "file is not valid UTF-8".into(),
    })?;
    let file = AlgebraFile::from_json(&text, path)?;
    let (spec, phi, mode) = file.to_spec()?;
    Ok(LoadedAlgebra { spec, phi, mode, digest: sha256_hex(text.as_bytes()) })
}
