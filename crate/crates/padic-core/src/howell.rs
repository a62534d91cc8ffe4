//! Row reduction over Z/p^N with minimal-valuation pivoting.
//!
//! Only row operations are used, so the reduced matrix has the same kernel
//! as the input. Choosing the pivot of least valuation over the whole residual
//! block keeps every residual entry known to the full input precision; the
//! digits lost show up only when solving for kernel vectors.

use crate::{PadicContext, PadicError, PadicMatrix};

#[derive(Clone, Debug)]
pub struct HowellForm {
    pub h: PadicMatrix,
    /// (row, col) of each pivot, sorted by column.
    pub pivot_positions: Vec<(usize, usize)>,
    /// Valuation of each pivot, aligned with `pivot_positions`.
    pub pivot_valuations: Vec<u32>,
    /// Pivot columns in the order they were selected; row t holds the t-th.
    selection: Vec<(usize, u32)>,
}

impl HowellForm {
    pub fn rank(&self) -> usize {
        self.selection.len()
    }

    /// Valuations in selection order (non-decreasing).
    pub fn selection_valuations(&self) -> Vec<u32> {
        self.selection.iter().map(|&(_, v)| v).collect()
    }
}

pub fn howell_form(m: &PadicMatrix) -> Result<HowellForm, PadicError> {
    let ctx = *m.ctx();
    let trusted = m.trusted_prec();
    if trusted == 0 {
        if m.is_zero() {
            return Ok(HowellForm {
                h: m.clone(),
                pivot_positions: vec![],
                pivot_valuations: vec![],
                selection: vec![],
            });
        }
        return Err(PadicError::PrecisionExhausted { loss: m.loss(), prec: ctx.prec() });
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut h: Vec<Vec<u128>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut used = vec![false; cols];
    let mut selection = Vec::new();
    let mut t = 0;
    while t < rows {
        // Least valuation, then lowest column, then lowest row.
        let mut best: Option<(u32, usize, usize)> = None;
        for c in (0..cols).filter(|&c| !used[c]) {
            for (r, row) in h.iter().enumerate().skip(t) {
                let x = row[c];
                if x == 0 {
                    continue;
                }
                let v = ctx.valuation(x);
                if v >= trusted {
                    continue;
                }
                if best.map_or(true, |b| (v, c, r) < b) {
                    best = Some((v, c, r));
                }
            }
        }
        let Some((e, c, r)) = best else { break };
        h.swap(t, r);
        let (_, unit) = ctx.split(h[t][c]);
        let uinv = ctx.inv(unit).expect("unit part is invertible");
        let pe = (ctx.p() as u128).pow(e);
        let pivot_row = h[t].clone();
        for row in h.iter_mut().skip(t + 1) {
            let x = row[c];
            if x == 0 {
                continue;
            }
            // x has valuation >= e, so x / p^e is an honest integer.
            let factor = ctx.mul(x / pe, uinv);
            for j in 0..cols {
                if pivot_row[j] != 0 {
                    row[j] = ctx.sub(row[j], ctx.mul(factor, pivot_row[j]));
                }
            }
            row[c] = 0;
        }
        used[c] = true;
        selection.push((c, e));
        t += 1;
    }
    let mut positions: Vec<((usize, usize), u32)> =
        selection.iter().enumerate().map(|(row, &(c, e))| ((row, c), e)).collect();
    positions.sort_by_key(|&((_, c), _)| c);
    let flat: Vec<u128> = h.into_iter().flatten().collect();
    let hm = PadicMatrix::from_residues(ctx, rows, cols, flat)?.with_loss(m.loss());
    Ok(HowellForm {
        h: hm,
        pivot_positions: positions.iter().map(|&(p, _)| p).collect(),
        pivot_valuations: positions.iter().map(|&(_, v)| v).collect(),
        selection,
    })
}

/// Generators of the free part of the kernel, one unit-normalized column per
/// non-pivot column. The result carries the digits consumed by back
/// substitution in its `loss`.
pub fn kernel_mod_pn(m: &PadicMatrix) -> Result<PadicMatrix, PadicError> {
    let hf = howell_form(m)?;
    let ctx: PadicContext = *m.ctx();
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &(c, _) in &hf.selection {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let max_e = hf.selection.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let loss = m.loss() + max_e;
    if loss >= ctx.prec() && !free.is_empty() {
        return Err(PadicError::PrecisionExhausted { loss, prec: ctx.prec() });
    }
    let mut out = PadicMatrix::zero(ctx, cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        let mut v = vec![0u128; cols];
        v[f] = 1;
        for (t, &(c, e)) in hf.selection.iter().enumerate().rev() {
            let row = hf.h.row(t);
            let mut s = 0u128;
            for j in 0..cols {
                if j != c && v[j] != 0 && row[j] != 0 {
                    s = ctx.add(s, ctx.mul(row[j], v[j]));
                }
            }
            let pe = (ctx.p() as u128).pow(e);
            debug_assert_eq!(s % pe, 0);
            let (_, unit) = ctx.split(row[c]);
            let uinv = ctx.inv(unit).expect("unit part is invertible");
            v[c] = ctx.neg(ctx.mul(s / pe, uinv));
        }
        for (r, x) in v.into_iter().enumerate() {
            out.set(r, k, x);
        }
    }
    Ok(out.with_loss(loss))
}

/// Count of pivots with valuation below the trusted precision. Any exact
/// matrix congruent to `m` at that precision has at least this rank.
pub fn rank_lower_bound(m: &PadicMatrix) -> usize {
    if m.trusted_prec() == 0 {
        return 0;
    }
    match howell_form(m) {
        Ok(hf) => hf.rank(),
        Err(_) => 0,
    }
}
