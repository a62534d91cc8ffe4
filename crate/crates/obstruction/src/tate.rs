use frobenius::{CohomologyKind, FrobeniusApprox};
use griffiths::GriffithsBasis;
use num_bigint::BigInt;
use padic_core::{kernel_mod_pn, rank_lower_bound, PadicContext, PadicError, PadicMatrix};
use zeta::CyclotomicFactor;

use crate::ObstructionError;

/// Projection onto the coordinates of level < r, skipping the polarization
/// class. Rows follow the basis order; columns index the full basis.
pub fn obstruction_matrix(f: &FrobeniusApprox) -> PadicMatrix {
    let keep: Vec<usize> =
        (0..f.dim()).filter(|&k| f.basis[k].level < f.r && Some(k) != f.polarization_slot).collect();
    projection(*f.matrix.ctx(), &keep, f.dim())
}

/// The same projection computed from a Griffiths basis, with the
/// polarization column appended when the basis has one.
pub fn obstruction_matrix_for_basis(b: &GriffithsBasis, ctx: PadicContext) -> PadicMatrix {
    let n = b.n as u32;
    let r = n / 2;
    let keep: Vec<usize> = (0..b.pole_orders.len()).filter(|&k| n + 1 - b.pole_orders[k] < r).collect();
    projection(ctx, &keep, b.dim())
}

fn projection(ctx: PadicContext, keep: &[usize], cols: usize) -> PadicMatrix {
    let mut m = PadicMatrix::zero(ctx, keep.len(), cols);
    for (row, &k) in keep.iter().enumerate() {
        m.set(row, k, 1);
    }
    m
}

/// Frobenius and projection restricted to the part of cohomology the
/// cyclotomic factors describe: primitive cohomology for hypersurfaces, the
/// whole space otherwise.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub frob: PadicMatrix,
    pub projection: PadicMatrix,
    pub p: u64,
    pub r: u32,
    pub precision: u32,
    pub kind: CohomologyKind,
    /// Columns of the original basis kept in `frob`.
    pub kept: Vec<usize>,
}

impl Workspace {
    pub fn new(f: &FrobeniusApprox) -> Result<Self, ObstructionError> {
        if f.kind == CohomologyKind::CurveH1 {
            return Err(ObstructionError::BadInput(
                "H^1 has no Tate classes; use a weight-2 structure".into(),
            ));
        }
        let kept: Vec<usize> = (0..f.dim()).filter(|&k| Some(k) != f.polarization_slot).collect();
        let frob = f.matrix.select(&kept, &kept);
        let full = obstruction_matrix(f);
        let projection = full.select(&(0..full.rows()).collect::<Vec<_>>(), &kept);
        Ok(Workspace { frob, projection, p: f.p, r: f.r, precision: f.precision, kind: f.kind, kept })
    }

    pub fn has_polarization_factor(&self) -> bool {
        self.kind == CohomologyKind::Hypersurface
    }
}

/// Approximate basis of T_i = ker Phi_i(F / p^r).
#[derive(Clone, Debug)]
pub struct TateFactor {
    pub factor: CyclotomicFactor,
    /// gamma_i * deg Phi_i, used for the bound whatever the kernel shows.
    pub dim_t: usize,
    /// Columns: unit-normalized kernel generators. Empty for the
    /// polarization factor, which is handled without a basis.
    pub basis: PadicMatrix,
    pub observed_dim: usize,
    pub is_polarization: bool,
    /// False when the kernel needed more digits than F carries; the bound
    /// then rests on [`stacked_obstruction`] alone.
    pub kernel_available: bool,
}

impl TateFactor {
    pub fn dim_mismatch(&self) -> bool {
        !self.is_polarization && self.kernel_available && self.observed_dim != self.dim_t
    }

    pub fn polarization(ctx: PadicContext) -> Self {
        TateFactor {
            factor: CyclotomicFactor { i: 1, phi: zeta::cyclotomic(1), gamma: 1 },
            dim_t: 1,
            basis: PadicMatrix::zero(ctx, 0, 0),
            observed_dim: 1,
            is_polarization: true,
            kernel_available: true,
        }
    }
}

/// sum_k a_k p^(r(deg - k)) F^k, the homogenized Phi_i at (F, p^r).
fn homogenized(phi: &[BigInt], f: &PadicMatrix, p: u64, r: u32) -> Result<PadicMatrix, PadicError> {
    let ctx = *f.ctx();
    let deg = phi.len() - 1;
    let coeff = |k: usize| {
        let c: i128 = (&phi[k]).try_into().expect("cyclotomic coefficients are small");
        ctx.mul(ctx.from_i128(c), ctx.pow(p as u128 % ctx.modulus(), (r as u64) * (deg - k) as u64))
    };
    let id = PadicMatrix::identity(ctx, f.rows());
    let mut acc = id.scale(coeff(deg));
    for j in 0..deg {
        acc = acc.mul(f)?.add(&id.scale(coeff(deg - j - 1)))?;
    }
    Ok(acc)
}

pub fn tate_basis(factor: &CyclotomicFactor, ws: &Workspace) -> Result<TateFactor, ObstructionError> {
    let h = homogenized(&factor.phi, &ws.frob, ws.p, ws.r)?;
    let (basis, kernel_available) = match kernel_mod_pn(&h) {
        Ok(b) => (b, true),
        Err(PadicError::PrecisionExhausted { .. }) => (PadicMatrix::zero(*h.ctx(), h.cols(), 0), false),
        Err(e) => return Err(e.into()),
    };
    Ok(TateFactor {
        factor: factor.clone(),
        dim_t: factor.dim(),
        observed_dim: basis.cols(),
        basis,
        is_polarization: false,
        kernel_available,
    })
}

/// Re-reads `m` at its trusted precision, so that loss is zero.
fn settle(m: &PadicMatrix) -> Result<PadicMatrix, PadicError> {
    m.change_precision(m.trusted_prec().max(1))
}

/// Divides by p^e with e = min(cap, valuation at trusted precision). Every
/// block is a scalar multiple of (F / p^r)^j B, which keeps the Q_p-rank of
/// the stack.
fn divide_out(m: &PadicMatrix, cap: u32) -> Result<PadicMatrix, PadicError> {
    let m = settle(m)?;
    let v = if m.is_zero() { cap } else { m.valuation() };
    let e = cap.min(v).min(m.ctx().prec().saturating_sub(1));
    m.divide_by_p_power(e)
}

fn at_prec(m: &PadicMatrix, prec: u32) -> Result<PadicMatrix, PadicError> {
    if m.ctx().prec() == prec {
        Ok(m.clone())
    } else {
        m.change_precision(prec)
    }
}

/// Stack of [pi] (F/p^r)^j B for j < deg Phi_i (only j = 0 when
/// `single_block`), with precision brought to the least trusted block.
pub fn pi_i_matrix(
    basis: &PadicMatrix,
    deg: usize,
    ws: &Workspace,
    single_block: bool,
) -> Result<PadicMatrix, ObstructionError> {
    let blocks = if single_block { 1 } else { deg };
    let mut cur = settle(basis)?;
    let mut out = Vec::with_capacity(blocks);
    for j in 0..blocks {
        if j > 0 {
            let f = at_prec(&ws.frob, cur.ctx().prec())?;
            cur = divide_out(&f.mul(&cur)?, ws.r)?;
        }
        let proj = at_prec(&ws.projection, cur.ctx().prec())?;
        out.push(proj.mul(&cur)?);
    }
    let prec = out.iter().map(|b| b.trusted_prec()).min().unwrap_or(0).max(1);
    let out: Vec<PadicMatrix> = out.iter().map(|b| b.change_precision(prec)).collect::<Result<_, _>>()?;
    Ok(PadicMatrix::vstack(&out)?)
}

/// Rows [Phi(F, p^r); pi; pi F; ...; pi F^(blocks - 1)] with Phi the
/// product of `phis`. Its kernel is the part of ker Phi(F / p^r) on which
/// pi (F / p^r)^j vanishes for all j < blocks. Nothing is divided, so the
/// stack keeps every trusted digit of F.
pub fn stacked_obstruction(
    phis: &[&[BigInt]],
    blocks: usize,
    ws: &Workspace,
) -> Result<PadicMatrix, ObstructionError> {
    let frob = settle(&ws.frob)?;
    let ctx = *frob.ctx();
    let n = frob.rows();
    let mut a = PadicMatrix::identity(ctx, n);
    for phi in phis {
        a = a.mul(&homogenized(phi, &frob, ws.p, ws.r)?)?;
    }
    let proj = at_prec(&ws.projection, ctx.prec())?;
    let mut out = vec![a];
    let mut fj = PadicMatrix::identity(ctx, n);
    for j in 0..blocks {
        if j > 0 {
            fj = frob.mul(&fj)?;
        }
        out.push(proj.mul(&fj)?);
    }
    Ok(PadicMatrix::vstack(&out)?)
}

/// Upper bound for the dimension of the kernel of any exact matrix
/// congruent to `m`.
pub fn corank_upper_bound(m: &PadicMatrix) -> usize {
    m.cols() - rank_lower_bound(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogenized_cyclotomic() {
        let ctx = PadicContext::new(7, 3).unwrap();
        // F = 7 * rotation; Phi_4 homogenized is F^2 + 49 I = 0.
        let f = PadicMatrix::from_i128_rows(ctx, &[vec![0, -7], vec![7, 0]]);
        let h = homogenized(&zeta::cyclotomic(4), &f, 7, 1).unwrap();
        assert!(h.is_zero());
        let h1 = homogenized(&zeta::cyclotomic(1), &f, 7, 1).unwrap();
        assert_eq!(h1.to_i128_rows(), vec![vec![-7, -7], vec![7, -7]]);
    }

    #[test]
    fn divide_out_caps_at_valuation() {
        let ctx = PadicContext::new(7, 4).unwrap();
        let m = PadicMatrix::from_i128_rows(ctx, &[vec![49, 7]]);
        let d = divide_out(&m, 1).unwrap();
        assert_eq!((d.to_i128_rows(), d.ctx().prec()), (vec![vec![7, 1]], 3));
        let d = divide_out(&m, 5).unwrap();
        assert_eq!(d.to_i128_rows(), vec![vec![7, 1]]);
    }
}
