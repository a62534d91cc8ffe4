use griffiths::GriffithsBasis;
use padic_core::PadicMatrix;
use serde::{Deserialize, Serialize};

/// Which cohomology group the matrix acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CohomologyKind {
    /// H^n of an even-dimensional hypersurface, polarization included.
    Hypersurface,
    /// H^1 of a curve.
    CurveH1,
    /// H^2 of a Jacobian, given directly or as Lambda^2 H^1.
    JacobianH2,
    /// H^1 (x) H^1 of a curve.
    TensorSquare,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    Imported,
}

/// One basis vector: a label (monomial exponents, index pair, ...) and its
/// Hodge level, the largest j with the vector in F^j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisVector {
    pub label: Vec<u32>,
    pub level: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pole_order: Option<u32>,
}

/// Frobenius on H^w mod p^N; column k is the image of basis vector k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusApprox {
    pub matrix: PadicMatrix,
    pub p: u64,
    pub precision: u32,
    /// Twist weight: n/2 for hypersurfaces, 1 for weight-2 Jacobian
    /// structures, 0 for H^1.
    pub r: u32,
    pub kind: CohomologyKind,
    pub variable_order: Vec<String>,
    pub basis: Vec<BasisVector>,
    pub polarization_slot: Option<usize>,
    pub provenance: Provenance,
    /// Number of series terms used, when computed.
    pub truncation: Option<u32>,
}

impl FrobeniusApprox {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Cohomological degree: 1 for curves, 2r otherwise.
    pub fn weight(&self) -> u32 {
        match self.kind {
            CohomologyKind::CurveH1 => 1,
            _ => 2 * self.r,
        }
    }

    pub fn levels(&self) -> Vec<u32> {
        self.basis.iter().map(|b| b.level).collect()
    }

    /// Indices of the basis vectors spanning F^j.
    pub fn filtration(&self, j: u32) -> Vec<usize> {
        (0..self.basis.len()).filter(|&k| self.basis[k].level >= j).collect()
    }

    /// Same matrix with fewer digits.
    pub fn truncate(&self, prec: u32) -> Result<Self, padic_core::PadicError> {
        let mut out = self.clone();
        out.matrix = self.matrix.change_precision(prec)?;
        out.precision = prec.min(self.precision);
        Ok(out)
    }
}

/// Basis metadata for a Griffiths basis, polarization class last.
pub(crate) fn basis_vectors(b: &GriffithsBasis) -> Vec<BasisVector> {
    let n = b.n as u32;
    let mut out: Vec<BasisVector> = b
        .monomials
        .iter()
        .zip(&b.pole_orders)
        .map(|(m, &l)| BasisVector { label: m.exponents.clone(), level: n + 1 - l, pole_order: Some(l) })
        .collect();
    if b.polarization_slot.is_some() {
        out.push(BasisVector { label: vec![], level: n / 2, pole_order: None });
    }
    out
}
