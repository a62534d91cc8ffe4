use padic_core::{PadicContext, PadicMatrix};

use crate::{monomials_of_degree, GradedPoly, MonomialIndex, PolyError};

/// Matrix of (g_0, ..., g_k) -> sum g_i * gens[i] from the degree t - e
/// pieces into the degree t piece, where e is the common degree of `gens`.
/// Rows are the degree-t monomials and columns run over (generator, monomial)
/// pairs, generator-major, both in increasing grevlex order.
pub fn macaulay_matrix(gens: &[GradedPoly], t: u32, ctx: &PadicContext) -> Result<PadicMatrix, PolyError> {
    let Some(first) = gens.first() else {
        return Err(PolyError::Empty);
    };
    let (nvars, e) = (first.nvars(), first.degree());
    for g in gens {
        if g.degree() != e && !g.is_zero() {
            return Err(PolyError::DegreeMismatch { expected: e, found: g.degree() });
        }
        if g.nvars() != nvars {
            return Err(PolyError::VariableCount { expected: nvars, found: g.nvars() });
        }
    }
    let target = MonomialIndex::new(nvars, t);
    let source = if t >= e { monomials_of_degree(nvars, t - e) } else { vec![] };
    let mut m = PadicMatrix::zero(*ctx, target.len(), gens.len() * source.len());
    for (gi, g) in gens.iter().enumerate() {
        for (si, mu) in source.iter().enumerate() {
            let col = gi * source.len() + si;
            for (mon, c) in g.terms() {
                let row = target.index_of(&mu.mul(mon).exponents).expect("degree t monomial");
                let v = ctx.add(m.get(row, col), ctx.from_i128(c));
                m.set(row, col, v);
            }
        }
    }
    Ok(m)
}

/// Coefficient of u^t in (1 + u + ... + u^(d-2))^nvars, the Hilbert function
/// of the Jacobian ring of a smooth degree-d form.
pub fn jacobian_hilbert_coefficient(nvars: usize, d: u32, t: u32) -> u64 {
    if d < 2 {
        return 0;
    }
    let mut series = vec![0u64; t as usize + 1];
    series[0] = 1;
    for _ in 0..nvars {
        let mut next = vec![0u64; t as usize + 1];
        for (i, &a) in series.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..=(d - 2) as usize {
                if i + j <= t as usize {
                    next[i + j] += a;
                }
            }
        }
        series = next;
    }
    series[t as usize]
}
