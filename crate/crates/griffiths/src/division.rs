use padic_core::PadicContext;
use polyring::{GradedPoly, MonomialIndex};

use crate::echelon::leading_echelon_mod_p;
use crate::GriffithsError;

/// Writes every degree-t monomial as sum_i c_i * g_i plus a combination of
/// standard monomials, over Z/p^M.
pub(crate) struct DivisionTable {
    pub target: MonomialIndex,
    pub source: MonomialIndex,
    pub standard: Vec<usize>,
    ngens: usize,
    quot: Vec<u128>,
    rem: Vec<u128>,
}

impl DivisionTable {
    /// `gens` have integer coefficients; the Jacobian ideal mod p decides
    /// which products are used.
    pub fn build(gens: &[GradedPoly], t: u32, ctx: &PadicContext) -> Result<Self, GriffithsError> {
        let nvars = gens[0].nvars();
        let e = gens[0].degree();
        let ech = leading_echelon_mod_p(gens, t, ctx.p());
        let target = ech.index;
        let source = MonomialIndex::new(nvars, t.saturating_sub(e));
        let len = target.len();
        let src_len = if t >= e { source.len() } else { 0 };
        let mut q = vec![vec![0u128; len]; len];
        for (r, &(gi, si)) in ech.selected.iter().enumerate() {
            let mu = source.get(si);
            for (mon, c) in gens[gi].terms() {
                let k = target.index_of(&mu.mul(mon).exponents).expect("degree t monomial");
                q[r][k] = ctx.add(q[r][k], ctx.from_i128(c));
            }
        }
        let nsel = ech.selected.len();
        for (j, &s) in ech.standard.iter().enumerate() {
            q[nsel + j][s] = 1 % ctx.modulus();
        }
        let inv = invert(q, ctx).ok_or(GriffithsError::SingularDivision { degree: t })?;
        let ngens = gens.len();
        let nstd = ech.standard.len();
        let mut quot = vec![0u128; len * ngens * src_len];
        let mut rem = vec![0u128; len * nstd];
        for k in 0..len {
            for (r, &(gi, si)) in ech.selected.iter().enumerate() {
                quot[(k * ngens + gi) * src_len + si] = inv[k][r];
            }
            for j in 0..nstd {
                rem[k * nstd + j] = inv[k][nsel + j];
            }
        }
        Ok(DivisionTable { target, source, standard: ech.standard, ngens, quot, rem })
    }

    /// Coefficients over the source monomials of c_i in the division of the
    /// k-th target monomial.
    pub fn quotient(&self, k: usize, i: usize) -> &[u128] {
        let s = self.source.len();
        if self.quot.is_empty() {
            return &[];
        }
        &self.quot[(k * self.ngens + i) * s..(k * self.ngens + i + 1) * s]
    }

    /// Remainder of the k-th target monomial on the standard monomials.
    pub fn remainder(&self, k: usize) -> &[u128] {
        let n = self.standard.len();
        &self.rem[k * n..(k + 1) * n]
    }
}

/// Gauss-Jordan inverse over Z/p^M; None if some column has no unit pivot.
fn invert(mut a: Vec<Vec<u128>>, ctx: &PadicContext) -> Option<Vec<Vec<u128>>> {
    let n = a.len();
    let one = 1 % ctx.modulus();
    let mut inv: Vec<Vec<u128>> = (0..n)
        .map(|i| {
            let mut r = vec![0u128; n];
            r[i] = one;
            r
        })
        .collect();
    let p = ctx.p() as u128;
    for c in 0..n {
        let r = (c..n).find(|&r| a[r][c] % p != 0)?;
        a.swap(c, r);
        inv.swap(c, r);
        let u = ctx.inv(a[c][c])?;
        for x in a[c].iter_mut() {
            *x = ctx.mul(*x, u);
        }
        for x in inv[c].iter_mut() {
            *x = ctx.mul(*x, u);
        }
        let (pa, pi) = (a[c].clone(), inv[c].clone());
        for r in 0..n {
            if r == c || a[r][c] == 0 {
                continue;
            }
            let f = ctx.neg(a[r][c]);
            for (x, &y) in a[r].iter_mut().zip(&pa) {
                if y != 0 {
                    *x = ctx.add(*x, ctx.mul(f, y));
                }
            }
            for (x, &y) in inv[r].iter_mut().zip(&pi) {
                if y != 0 {
                    *x = ctx.add(*x, ctx.mul(f, y));
                }
            }
        }
    }
    Some(inv)
}
