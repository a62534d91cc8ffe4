use padic_core::{rank_lower_bound, PadicMatrix};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use zeta::CyclotomicSplit;

use crate::tate::{corank_upper_bound, pi_i_matrix, stacked_obstruction, tate_basis, TateFactor, Workspace};
use crate::ObstructionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    /// Obstruction map per cyclotomic factor, with Frobenius powers.
    Galois,
    /// Obstruction map on the whole Tate space at once.
    Vanilla,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorRecord {
    pub label: String,
    pub i: u64,
    pub gamma: u32,
    pub dim_t: usize,
    /// Galois mode only.
    pub dim_l: Option<usize>,
    pub rank_lower_bound: Option<usize>,
    pub observed_dim: usize,
    pub is_polarization: bool,
    /// Which computation gave dim L_i (Galois mode only).
    pub route: Option<BoundRoute>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundRoute {
    /// Rank of pi_i on an approximate basis of T_i.
    Kernel,
    /// Corank of the stacked matrix, no kernel needed.
    Stacked,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportFlags {
    pub bound_mode: BoundMode,
    pub tensor: bool,
    /// Some kernel had a dimension other than gamma_i deg Phi_i.
    pub kernel_dim_mismatch: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub bound: usize,
    pub p: u64,
    pub precision: u32,
    pub rank_t: usize,
    pub factors: Vec<FactorRecord>,
    /// Rank lower bound of the single stacked map in vanilla mode.
    pub vanilla_rank: Option<usize>,
    pub flags: ReportFlags,
}

impl ObstructionReport {
    /// The dictionary layout: bound, precision, p, "rank T(X_Fpbar)",
    /// factors as [string, multiplicity], "dim Ti", "dim Li", mode.
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "precision": self.precision,
            "p": self.p,
            "rank T(X_Fpbar)": self.rank_t,
            "factors": self.factors.iter().map(|f| json!([f.label, f.gamma])).collect::<Vec<_>>(),
            "dim Ti": self.factors.iter().map(|f| f.dim_t).collect::<Vec<_>>(),
            "dim Li": self.factors.iter().filter_map(|f| f.dim_l).collect::<Vec<_>>(),
            "mode": {
                "obstruction": self.flags.bound_mode,
                "tensor": self.flags.tensor,
                "kernel_dim_mismatch": self.flags.kernel_dim_mismatch,
            },
        })
    }

    pub fn factor_multiset(&self) -> Vec<(String, u32)> {
        let mut v: Vec<(String, u32)> = self.factors.iter().map(|f| (f.label.clone(), f.gamma)).collect();
        v.sort();
        v
    }
}

fn ordered(mut tfs: Vec<TateFactor>) -> Vec<TateFactor> {
    tfs.sort_by_key(|t| (!t.is_polarization, t.factor.i));
    tfs
}

/// Upper bound for dim L_i from the kernel basis: dim T_i minus the rank
/// lower bound of pi_i. None without a usable kernel.
fn kernel_route(t: &TateFactor, ws: &Workspace) -> Result<Option<usize>, ObstructionError> {
    if !t.kernel_available {
        return Ok(None);
    }
    if t.basis.cols() == 0 {
        return Ok(Some(0));
    }
    let pi = pi_i_matrix(&t.basis, t.factor.degree(), ws, false)?;
    Ok(Some(t.dim_t.saturating_sub(rank_lower_bound(&pi))))
}

/// The smaller of the two bounds; the stacked one never exceeds `cap`.
fn best(kernel: Option<usize>, stacked: usize, cap: usize) -> (usize, BoundRoute) {
    let stacked = stacked.min(cap);
    match kernel {
        Some(k) if k < stacked => (k, BoundRoute::Kernel),
        Some(k) if k == stacked => (k, BoundRoute::Both),
        _ => (stacked, BoundRoute::Stacked),
    }
}

/// dim L_i bounded per factor (Galois) or once for the whole Tate space
/// (vanilla), each time by the smaller of the kernel and stacked routes.
/// The polarization always contributes 1.
pub fn accumulate_bound(
    tfs: Vec<TateFactor>,
    ws: &Workspace,
    mode: BoundMode,
    tensor: bool,
) -> Result<ObstructionReport, ObstructionError> {
    let tfs = ordered(tfs);
    let rank_t: usize = tfs.iter().map(|t| t.dim_t).sum();
    let mismatch = tfs.iter().any(TateFactor::dim_mismatch);
    let record = |t: &TateFactor, dim_l: Option<usize>, route: Option<BoundRoute>| FactorRecord {
        label: t.factor.label(),
        i: t.factor.i,
        gamma: t.factor.gamma,
        dim_t: t.dim_t,
        dim_l,
        rank_lower_bound: match (dim_l, t.is_polarization) {
            (Some(l), false) => Some(t.dim_t - l),
            _ => None,
        },
        observed_dim: t.observed_dim,
        is_polarization: t.is_polarization,
        route,
    };
    let (factors, bound, vanilla_rank) = match mode {
        BoundMode::Galois => {
            let dims: Vec<(usize, Option<BoundRoute>)> = tfs
                .par_iter()
                .map(|t| {
                    if t.is_polarization {
                        return Ok((1, None));
                    }
                    let kernel = kernel_route(t, ws)?;
                    let c = stacked_obstruction(&[&t.factor.phi], t.factor.degree(), ws)?;
                    let (l, route) = best(kernel, corank_upper_bound(&c), t.dim_t);
                    Ok((l, Some(route)))
                })
                .collect::<Result<_, ObstructionError>>()?;
            let factors: Vec<FactorRecord> =
                tfs.iter().zip(&dims).map(|(t, &(l, route))| record(t, Some(l), route)).collect();
            let bound = dims.iter().map(|d| d.0).sum();
            (factors, bound, None)
        }
        BoundMode::Vanilla => {
            let (pol, rest): (Vec<&TateFactor>, Vec<&TateFactor>) =
                tfs.iter().partition(|t| t.is_polarization);
            let rest_dim: usize = rest.iter().map(|t| t.dim_t).sum();
            let bound_rest = if rest.is_empty() {
                0
            } else {
                let kernel = if rest.iter().all(|t| t.kernel_available) {
                    let bases: Vec<PadicMatrix> =
                        rest.iter().filter(|t| t.basis.cols() > 0).map(|t| t.basis.clone()).collect();
                    Some(if bases.is_empty() {
                        0
                    } else {
                        let b = PadicMatrix::hstack(&bases)?;
                        rest_dim.saturating_sub(rank_lower_bound(&pi_i_matrix(&b, 1, ws, true)?))
                    })
                } else {
                    None
                };
                let phis: Vec<&[num_bigint::BigInt]> = rest.iter().map(|t| t.factor.phi.as_slice()).collect();
                let c = stacked_obstruction(&phis, 1, ws)?;
                best(kernel, corank_upper_bound(&c), rest_dim).0
            };
            let bound = bound_rest + pol.len();
            let factors: Vec<FactorRecord> = tfs.iter().map(|t| record(t, None, None)).collect();
            (factors, bound, Some(rank_t - bound))
        }
    };
    Ok(ObstructionReport {
        bound,
        p: ws.p,
        precision: ws.precision,
        rank_t,
        factors,
        vanilla_rank,
        flags: ReportFlags { bound_mode: mode, tensor, kernel_dim_mismatch: mismatch },
    })
}

impl ObstructionReport {
    /// Tate bases for every factor of `split`, plus the polarization for
    /// hypersurfaces, then [`accumulate_bound`]. `split` describes the part
    /// of cohomology in the workspace (primitive cohomology for
    /// hypersurfaces).
    pub fn compute(
        ws: &Workspace,
        split: &CyclotomicSplit,
        mode: BoundMode,
        tensor: bool,
    ) -> Result<Self, ObstructionError> {
        let mut tfs: Vec<TateFactor> =
            split.factors.par_iter().map(|f| tate_basis(f, ws)).collect::<Result<_, _>>()?;
        if ws.has_polarization_factor() {
            tfs.push(TateFactor::polarization(*ws.frob.ctx()));
        }
        accumulate_bound(tfs, ws, mode, tensor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobenius::{BasisVector, CohomologyKind, FrobeniusApprox, Provenance};
    use padic_core::PadicContext;
    use zeta::{cyclotomic, CyclotomicFactor};

    fn hypersurface_toy() -> Workspace {
        // Primitive part: e0 fixed by F/p, e1 obstructed level-0 vector
        // with F/p = -1; polarization last.
        let ctx = PadicContext::new(11, 3).unwrap();
        let m = PadicMatrix::from_i128_rows(ctx, &[vec![11, 0, 0], vec![0, -11, 0], vec![0, 0, 11]]);
        let f = FrobeniusApprox {
            matrix: m,
            p: 11,
            precision: 3,
            r: 1,
            kind: CohomologyKind::Hypersurface,
            variable_order: vec![],
            basis: [1, 0, 1]
                .iter()
                .map(|&l| BasisVector { label: vec![], level: l, pole_order: None })
                .collect(),
            polarization_slot: Some(2),
            provenance: Provenance::Computed,
            truncation: None,
        };
        Workspace::new(&f).unwrap()
    }

    #[test]
    fn polarization_first_then_ascending() {
        let ws = hypersurface_toy();
        let split = CyclotomicSplit {
            factors: vec![
                CyclotomicFactor { i: 1, phi: cyclotomic(1), gamma: 1 },
                CyclotomicFactor { i: 2, phi: cyclotomic(2), gamma: 1 },
            ],
            h: vec![1.into()],
            u: 2,
            v: 1,
        };
        let r = ObstructionReport::compute(&ws, &split, BoundMode::Galois, false).unwrap();
        let labels: Vec<(&str, bool)> =
            r.factors.iter().map(|f| (f.label.as_str(), f.is_polarization)).collect();
        assert_eq!(labels, vec![("t - 1", true), ("t - 1", false), ("t + 1", false)]);
        // e1 is obstructed by a unit, so only the polarization and e0 survive.
        assert_eq!(r.bound, 2);
        assert_eq!(r.rank_t, 3);
        let j = r.to_json();
        assert_eq!(j["dim Li"], serde_json::json!([1, 1, 0]));
        assert_eq!(j["factors"], serde_json::json!([["t - 1", 1], ["t - 1", 1], ["t + 1", 1]]));
        assert_eq!(j["mode"]["obstruction"], "galois");

        let v = ObstructionReport::compute(&ws, &split, BoundMode::Vanilla, false).unwrap();
        assert_eq!((v.bound, v.vanilla_rank), (2, Some(1)));
        assert_eq!(v.to_json()["dim Li"], serde_json::json!([]));
    }
}
