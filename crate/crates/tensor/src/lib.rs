//! Lambda^2 H^1 and H^1 (x) H^1 with Frobenius and Hodge levels induced from
//! a filtration-adapted H^1 basis.
//!
//! Row order: for the exterior square, pairs (a, b) with a < b in
//! lexicographic order, so the g(g-1)/2 pairs with both indices outside F^1
//! come last. For the tensor square, pairs meeting F^1 come first and the
//! g^2 pairs with both indices outside F^1 last, each group lexicographic.

use frobenius::{BasisVector, CohomologyKind, FrobeniusApprox};
use padic_core::{PadicError, PadicMatrix};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("expected Frobenius on H^1, found {0:?}")]
    NotH1(CohomologyKind),
    #[error("the first g basis vectors must span F^1 (levels {0:?})")]
    NotAdapted(Vec<u32>),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Wedge,
    Tensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedStructure {
    pub construction: Construction,
    /// Frobenius on the induced space, weight 2 (r = 1). Basis labels are
    /// the index pairs.
    pub approx: FrobeniusApprox,
    /// H^1 basis indices of each induced basis vector.
    pub pairs: Vec<(usize, usize)>,
    /// Induced basis vectors before this index span F^1.
    pub filtration_cut: usize,
    /// Dimension of H / F^1: g(g-1)/2 or g^2.
    pub obstruction_codim: usize,
}

/// Serializable record of the pair order, for reports and manifests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairManifest {
    pub construction: Construction,
    pub pairs: Vec<(usize, usize)>,
    pub levels: Vec<u32>,
    pub filtration_cut: usize,
}

impl InducedStructure {
    pub fn manifest(&self) -> PairManifest {
        PairManifest {
            construction: self.construction,
            pairs: self.pairs.clone(),
            levels: self.approx.levels(),
            filtration_cut: self.filtration_cut,
        }
    }
}

/// Genus of an adapted H^1 structure: levels 1^g followed by 0^g.
fn adapted_genus(f: &FrobeniusApprox) -> Result<usize, TensorError> {
    if f.kind != CohomologyKind::CurveH1 {
        return Err(TensorError::NotH1(f.kind));
    }
    let levels = f.levels();
    let n = levels.len();
    let g = n / 2;
    let ok = n % 2 == 0 && levels.iter().enumerate().all(|(i, &l)| l == u32::from(i < g));
    if !ok {
        return Err(TensorError::NotAdapted(levels));
    }
    Ok(g)
}

fn induced(
    f: &FrobeniusApprox,
    construction: Construction,
    pairs: Vec<(usize, usize)>,
    entry: impl Fn(&PadicMatrix, (usize, usize), (usize, usize)) -> u128 + Sync,
    codim: usize,
) -> InducedStructure {
    let m = &f.matrix;
    let n = pairs.len();
    let data: Vec<u128> = (0..n * n).into_par_iter().map(|k| entry(m, pairs[k / n], pairs[k % n])).collect();
    let mut matrix = PadicMatrix::zero(*m.ctx(), n, n);
    for (k, v) in data.into_iter().enumerate() {
        matrix.set(k / n, k % n, v);
    }
    let matrix = matrix.with_loss(m.loss());
    let levels = f.levels();
    let basis: Vec<BasisVector> = pairs
        .iter()
        .map(|&(a, b)| BasisVector {
            label: vec![a as u32, b as u32],
            level: levels[a] + levels[b],
            pole_order: None,
        })
        .collect();
    let kind = match construction {
        Construction::Wedge => CohomologyKind::JacobianH2,
        Construction::Tensor => CohomologyKind::TensorSquare,
    };
    let approx = FrobeniusApprox {
        matrix,
        p: f.p,
        precision: f.precision,
        r: 1,
        kind,
        variable_order: f.variable_order.clone(),
        basis,
        polarization_slot: None,
        provenance: f.provenance,
        truncation: f.truncation,
    };
    InducedStructure { construction, approx, pairs, filtration_cut: n - codim, obstruction_codim: codim }
}

/// Lambda^2 M with entries M[a,c] M[b,d] - M[a,d] M[b,c].
pub fn wedge_square(f: &FrobeniusApprox) -> Result<InducedStructure, TensorError> {
    let g = adapted_genus(f)?;
    let n = 2 * g;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let ctx = *f.matrix.ctx();
    Ok(induced(
        f,
        Construction::Wedge,
        pairs,
        |m, (a, b), (c, d)| ctx.sub(ctx.mul(m.get(a, c), m.get(b, d)), ctx.mul(m.get(a, d), m.get(b, c))),
        g * (g - 1) / 2,
    ))
}

/// Kronecker square with entries M[a,c] M[b,d].
pub fn tensor_square(f: &FrobeniusApprox) -> Result<InducedStructure, TensorError> {
    let g = adapted_genus(f)?;
    let n = 2 * g;
    let all = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
    let (tail, mut pairs): (Vec<_>, Vec<_>) = all.partition(|&(a, b)| a >= g && b >= g);
    pairs.extend(tail);
    let ctx = *f.matrix.ctx();
    Ok(induced(f, Construction::Tensor, pairs, |m, (a, b), (c, d)| ctx.mul(m.get(a, c), m.get(b, d)), g * g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobenius::Provenance;
    use padic_core::PadicContext;

    fn h1(matrix: PadicMatrix) -> FrobeniusApprox {
        let n = matrix.rows();
        FrobeniusApprox {
            p: matrix.ctx().p(),
            precision: matrix.ctx().prec(),
            matrix,
            r: 0,
            kind: CohomologyKind::CurveH1,
            variable_order: vec![],
            basis: (0..n)
                .map(|i| BasisVector { label: vec![i as u32], level: u32::from(i < n / 2), pole_order: None })
                .collect(),
            polarization_slot: None,
            provenance: Provenance::Imported,
            truncation: None,
        }
    }

    #[test]
    fn identity_goes_to_identity() {
        let ctx = PadicContext::new(31, 3).unwrap();
        for g in 1..=4 {
            let f = h1(PadicMatrix::identity(ctx, 2 * g));
            let w = wedge_square(&f).unwrap();
            let t = tensor_square(&f).unwrap();
            assert_eq!(w.approx.matrix, PadicMatrix::identity(ctx, g * (2 * g - 1)));
            assert_eq!(t.approx.matrix, PadicMatrix::identity(ctx, 4 * g * g));
            assert_eq!(w.obstruction_codim, g * (g - 1) / 2);
            assert_eq!(t.obstruction_codim, g * g);
            // The obstruction codomain is exactly the level-0 tail.
            for s in [&w, &t] {
                let levels = s.approx.levels();
                assert!(levels[..s.filtration_cut].iter().all(|&l| l >= 1));
                assert!(levels[s.filtration_cut..].iter().all(|&l| l == 0));
            }
        }
    }

    #[test]
    fn rejects_unadapted_basis() {
        let ctx = PadicContext::new(31, 3).unwrap();
        let mut f = h1(PadicMatrix::identity(ctx, 4));
        f.basis.swap(0, 3);
        assert!(matches!(wedge_square(&f), Err(TensorError::NotAdapted(_))));
    }
}
