//! Versioned JSON file format for representations.
//!
//! `Z` is never stored; loading recomputes it as `[X, Y] / (i hbar)`.
//! Floats are written in shortest round-trip form and parsed exactly, so
//! save/load reproduces every value bit for bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::reps::{RepKind, RepMeta, Representation};
use crate::surface::{RawParams, SurfaceParams};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexEntry {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<ComplexEntry> for Complex64 {
    fn from(c: ComplexEntry) -> Self {
        Complex64::new(c.re, c.im)
    }
}

/// On-disk representation record, schema version 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFileV1 {
    pub schema_version: u32,
    pub params: RawParams,
    pub dim: usize,
    #[serde(rename = "X_diag")]
    pub x_diag: Vec<f64>,
    #[serde(rename = "Y")]
    pub y: Vec<Vec<ComplexEntry>>,
    pub kind: RepKind,
    #[serde(default)]
    pub meta: RepMeta,
}

impl RepFileV1 {
    pub fn from_rep(rep: &Representation) -> Self {
        let n = rep.dim();
        Self {
            schema_version: SCHEMA_VERSION,
            params: rep.params().raw(),
            dim: n,
            x_diag: rep.x_diag(),
            y: (0..n)
                .map(|i| (0..n).map(|j| rep.y().get(i, j).into()).collect())
                .collect(),
            kind: rep.kind(),
            meta: rep.meta().clone(),
        }
    }

    /// Checks the shape of the record without validating parameters.
    pub fn check_shape(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let n = self.dim;
        if n == 0 {
            return Err(Error::Schema("dim must be at least 1".into()));
        }
        if self.x_diag.len() != n {
            return Err(Error::Schema(format!(
                "X_diag has {} entries, dim is {n}",
                self.x_diag.len()
            )));
        }
        if self.y.len() != n || self.y.iter().any(|r| r.len() != n) {
            return Err(Error::Schema(format!("Y must be a {n} x {n} array")));
        }
        Ok(())
    }

    /// Validates the record and rebuilds the representation, recomputing `Z`.
    pub fn to_representation(&self) -> Result<Representation> {
        self.check_shape()?;
        let params = SurfaceParams::try_from(self.params)?;
        let rows = self
            .y
            .iter()
            .map(|r| r.iter().map(|&e| e.into()).collect())
            .collect();
        let y = HermitianMatrix::new(ComplexMatrix::from_rows(rows)?)?;
        Representation::new(params, &self.x_diag, y, self.kind, self.meta.clone())
    }

    pub fn to_json(&self) -> String {
        // Serializing plain numbers, strings and arrays cannot fail.
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        file.check_shape()?;
        Ok(file)
    }
}
