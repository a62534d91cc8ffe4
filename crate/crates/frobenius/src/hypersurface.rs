use griffiths::{GriffithsBasis, HypersurfaceInput, Reducer, Term};
use padic_core::{PadicContext, PadicMatrix};
use polyring::binomial;
use rayon::prelude::*;

use crate::approx::{basis_vectors, CohomologyKind, FrobeniusApprox, Provenance};
use crate::{FrobeniusError, FrobeniusOptions};

fn floor_log(p: u64, x: u64) -> u32 {
    let mut e = 0;
    let mut q = p;
    while q <= x {
        e += 1;
        q = q.saturating_mul(p);
    }
    e
}

/// Number K of series terms: every omitted term k >= K satisfies
/// k - (n+1) floor(log_p(l_max + k)) >= N + 1.
pub fn hypersurface_truncation(n: usize, p: u64, l_max: u32, n_digits: u32) -> u32 {
    let ok =
        |k: u32| k as i64 - (n as i64 + 1) * floor_log(p, (l_max + k) as u64) as i64 >= n_digits as i64 + 1;
    let mut k = 1;
    // The deficit only grows at powers of p, so a window of p + 64 terms
    // past the candidate reaches the next jump.
    while !(k..k + p as u32 + 64).all(ok) {
        k += 1;
    }
    k
}

fn vp(p: u64, mut x: u64) -> u32 {
    let mut v = 0;
    while x > 0 && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Digits M for the reduction: the result is p^n X / p^S with S bounded by
/// the p-parts of m - 1 over the controlled range of pole orders.
pub fn working_precision(n: usize, p: u64, top_pole: u32, n_digits: u32) -> u32 {
    let s_max: u32 = ((n as u32 + 3)..=top_pole).map(|m| vp(p, m as u64 - 1)).sum();
    n_digits + 2 + s_max.saturating_sub(n as u32 + 1)
}

/// (-1)^j sum_{k=j}^{K-1} C(l+k-1, k) C(k, j) mod p^M.
fn series_coefficient(l: u32, j: u32, big_k: u32, ctx: &PadicContext) -> u128 {
    let mut s = 0u128;
    for k in j..big_k {
        let c = binomial((l + k - 1) as u64, k as u64) as u128 % ctx.modulus();
        let c2 = binomial(k as u64, j as u64) as u128 % ctx.modulus();
        s = ctx.add(s, ctx.mul(c, c2));
    }
    if j % 2 == 1 {
        ctx.neg(s)
    } else {
        s
    }
}

/// Frobenius on H^n (with the polarization class in even dimension) for a
/// hypersurface, or on H^1 for a smooth plane curve.
pub fn frobenius_hypersurface(
    input: &HypersurfaceInput,
    p: u64,
    n_digits: u32,
    basis: &GriffithsBasis,
    opts: FrobeniusOptions,
) -> Result<FrobeniusApprox, FrobeniusError> {
    let n = input.n;
    let l_max = *basis.pole_orders.iter().max().unwrap_or(&1);
    let big_k = hypersurface_truncation(n, p, l_max, n_digits) + opts.extra_truncation;
    let top_pole = p as u32 * (l_max + big_k - 1);
    let m_digits = working_precision(n, p, top_pole, n_digits) + opts.extra_precision;
    let work = PadicContext::new(p, m_digits)?;
    let reducer = Reducer::new(input, basis, work)?;
    let f = input.graded()?.to_residues(work);
    let mut powers = vec![polyring::GradedPoly::monomial(polyring::Monomial::one(f.nvars()), 1, f.ring())];
    for j in 1..big_k as usize {
        powers.push(powers[j - 1].mul(&f)?);
    }

    let columns: Vec<Result<Vec<u128>, FrobeniusError>> = basis
        .monomials
        .par_iter()
        .zip(&basis.pole_orders)
        .map(|(beta, &l)| {
            let mut terms = Vec::new();
            for (j, fj) in powers.iter().enumerate() {
                let dj = series_coefficient(l, j as u32, big_k, &work);
                if dj == 0 {
                    continue;
                }
                let pole = p as u32 * (l + j as u32);
                for (w, c) in fj.terms() {
                    let exps = beta
                        .exponents
                        .iter()
                        .zip(&w.exponents)
                        .map(|(&b, &e)| p as u32 * (b + 1 + e) - 1)
                        .collect();
                    terms.push(Term { exps, pole, coeff: work.mul(dj, c as u128) });
                }
            }
            let class = reducer.reduce_terms(&terms)?;
            untwist(&class.coords, class.shift, n as u32, &work, n_digits)
        })
        .collect();

    let prim = basis.primitive_dim();
    let dim = basis.dim();
    let out = PadicContext::new(p, n_digits)?;
    let mut mat = PadicMatrix::zero(out, dim, dim);
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col?.into_iter().enumerate() {
            mat.set(r, c, v);
        }
    }
    let r = input.twist();
    if let Some(slot) = basis.polarization_slot {
        debug_assert_eq!(slot, prim);
        mat.set(slot, slot, out.pow_p(r));
    }
    Ok(FrobeniusApprox {
        matrix: mat,
        p,
        precision: n_digits,
        r: if basis.polarization_slot.is_some() { r } else { 0 },
        kind: if basis.polarization_slot.is_some() {
            CohomologyKind::Hypersurface
        } else {
            CohomologyKind::CurveH1
        },
        variable_order: basis.variable_order.clone(),
        basis: basis_vectors(basis),
        polarization_slot: basis.polarization_slot,
        provenance: Provenance::Computed,
        truncation: Some(big_k),
    })
}

/// p^n X / p^S, reduced mod p^N: the image in H^{n+1}(U) carries p^{n+1}
/// and one power of p is removed by the Tate twist.
fn untwist(
    x: &[u128],
    s: u32,
    n: u32,
    work: &PadicContext,
    n_digits: u32,
) -> Result<Vec<u128>, FrobeniusError> {
    let out = (work.p() as u128).pow(n_digits);
    if s <= n {
        let f = work.pow_p(n - s);
        return Ok(x.iter().map(|&v| work.mul(v, f) % out).collect());
    }
    let e = s - n;
    let available = work.prec() - e;
    if available < n_digits {
        return Err(FrobeniusError::PrecisionExhausted { needed: n_digits, available });
    }
    let pe = (work.p() as u128).pow(e);
    if x.iter().any(|v| v % pe != 0) {
        return Err(FrobeniusError::InvariantViolation(format!(
            "Frobenius column is not integral (denominator p^{e})"
        )));
    }
    Ok(x.iter().map(|v| (v / pe) % out).collect())
}
