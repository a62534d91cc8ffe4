//! JSON form of a Frobenius matrix.
//!
//! ```json
//! {
//!   "p": 31, "N": 3, "r": 1, "mode": "jacobian-h2",
//!   "variable_order": ["x"],
//!   "basis": [{"label": [0, 1], "level": 2}, ...],
//!   "polarization_slot": null,
//!   "entries": [[...], ...]
//! }
//! ```
//!
//! Entries are row-major integers in (-p^N, p^N); column k is the image of
//! basis vector k. Export writes residues in [0, p^N).

use std::path::Path;

use padic_core::{PadicContext, PadicMatrix};
use serde::{Deserialize, Serialize};

use crate::approx::{BasisVector, CohomologyKind, FrobeniusApprox, Provenance};
use crate::FrobeniusError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrobeniusFile {
    pub p: u64,
    #[serde(rename = "N")]
    pub n_digits: u32,
    pub r: u32,
    pub mode: CohomologyKind,
    #[serde(default)]
    pub variable_order: Vec<String>,
    pub basis: Vec<BasisVector>,
    #[serde(default)]
    pub polarization_slot: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    pub entries: Vec<Vec<i128>>,
}

fn schema(msg: impl Into<String>) -> FrobeniusError {
    FrobeniusError::Schema(msg.into())
}

impl FrobeniusFile {
    pub fn into_approx(self) -> Result<FrobeniusApprox, FrobeniusError> {
        let ctx = PadicContext::new(self.p, self.n_digits).map_err(|e| schema(e.to_string()))?;
        let n = self.entries.len();
        if n == 0 || self.entries.iter().any(|r| r.len() != n) {
            return Err(schema("entries must form a nonempty square matrix"));
        }
        if self.basis.len() != n {
            return Err(schema(format!("basis has {} vectors for a {n}x{n} matrix", self.basis.len())));
        }
        let m = ctx.modulus() as i128;
        let mut mat = PadicMatrix::zero(ctx, n, n);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= m || v <= -m {
                    return Err(schema(format!("entry ({i}, {j}) = {v} is out of range for p^N")));
                }
                mat.set(i, j, ctx.from_i128(v));
            }
        }
        let expected_r = match self.mode {
            CohomologyKind::CurveH1 => 0,
            CohomologyKind::JacobianH2 | CohomologyKind::TensorSquare => 1,
            CohomologyKind::Hypersurface => self.r,
        };
        if self.r != expected_r {
            return Err(schema(format!("r = {} does not match mode {:?}", self.r, self.mode)));
        }
        let weight = match self.mode {
            CohomologyKind::CurveH1 => 1,
            _ => 2 * self.r,
        };
        if let Some(b) = self.basis.iter().find(|b| b.level > weight) {
            return Err(schema(format!("basis level {} exceeds the weight {weight}", b.level)));
        }
        match (self.mode, self.polarization_slot) {
            (CohomologyKind::Hypersurface, None) => {
                return Err(FrobeniusError::InvariantViolation(
                    "hypersurface mode needs a polarization slot".into(),
                ))
            }
            (CohomologyKind::Hypersurface, Some(s)) => {
                if s >= n {
                    return Err(schema("polarization slot out of range"));
                }
                let pr = ctx.pow_p(self.r);
                for k in 0..n {
                    let (row, col) = (mat.get(s, k), mat.get(k, s));
                    let want = if k == s { pr } else { 0 };
                    if row != want || col != want {
                        return Err(FrobeniusError::InvariantViolation(format!(
                            "polarization row/column must be p^{} on the diagonal and 0 elsewhere",
                            self.r
                        )));
                    }
                }
                if self.basis[s].level != self.r {
                    return Err(FrobeniusError::InvariantViolation(
                        "polarization class must have level r".into(),
                    ));
                }
            }
            (_, Some(_)) => return Err(schema("only hypersurface mode has a polarization slot")),
            _ => {}
        }
        Ok(FrobeniusApprox {
            matrix: mat,
            p: self.p,
            precision: self.n_digits,
            r: self.r,
            kind: self.mode,
            variable_order: self.variable_order,
            basis: self.basis,
            polarization_slot: self.polarization_slot,
            provenance: Provenance::Imported,
            truncation: self.truncation,
        })
    }

    pub fn from_approx(f: &FrobeniusApprox) -> Self {
        let n = f.dim();
        FrobeniusFile {
            p: f.p,
            n_digits: f.precision,
            r: f.r,
            mode: f.kind,
            variable_order: f.variable_order.clone(),
            basis: f.basis.clone(),
            polarization_slot: f.polarization_slot,
            truncation: f.truncation,
            entries: (0..n).map(|i| (0..n).map(|j| f.matrix.get(i, j) as i128).collect()).collect(),
        }
    }
}

pub fn parse_frobenius(text: &str) -> Result<FrobeniusApprox, FrobeniusError> {
    let file: FrobeniusFile = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    file.into_approx()
}

pub fn import_frobenius(path: &Path) -> Result<FrobeniusApprox, FrobeniusError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| FrobeniusError::Io(format!("{}: {e}", path.display())))?;
    parse_frobenius(&text)
}

/// Pretty JSON; importing it gives back an identical approximation apart
/// from provenance.
pub fn export_frobenius(f: &FrobeniusApprox) -> String {
    serde_json::to_string_pretty(&FrobeniusFile::from_approx(f)).expect("serializable")
}
