use crate::{PadicContext, PadicError, PadicMatrix};

/// A polynomial over Z/p^N, coefficients from the constant term up, trusted
/// modulo p^(N - loss).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMod {
    pub ctx: PadicContext,
    pub coeffs: Vec<u128>,
    pub loss: u32,
}

impl PolyMod {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn trusted_prec(&self) -> u32 {
        self.ctx.prec().saturating_sub(self.loss)
    }

    pub fn symmetric(&self) -> Vec<i128> {
        self.coeffs.iter().map(|&c| self.ctx.symmetric(c)).collect()
    }

    /// Coefficients reversed: det(1 - tM) from det(tI - M).
    pub fn reversed(&self) -> PolyMod {
        let mut c = self.coeffs.clone();
        c.reverse();
        PolyMod { ctx: self.ctx, coeffs: c, loss: self.loss }
    }
}

/// det(tI - M) by Berkowitz's division-free recurrence.
pub fn charpoly_mod_pn(m: &PadicMatrix) -> Result<PolyMod, PadicError> {
    if !m.is_square() {
        return Err(PadicError::NotSquare(m.rows(), m.cols()));
    }
    let ctx = *m.ctx();
    let n = m.rows();
    // v holds the current charpoly, highest degree first.
    let mut v = vec![1 % ctx.modulus()];
    for r in 0..n {
        let a = m.get(r, r);
        // t = [1, -a, -R C, -R A C, ..., -R A^(r-1) C]
        let mut t = Vec::with_capacity(r + 2);
        t.push(1 % ctx.modulus());
        t.push(ctx.neg(a));
        let mut col: Vec<u128> = (0..r).map(|i| m.get(i, r)).collect();
        for k in 0..r {
            let dot = (0..r).fold(0, |s, j| ctx.add(s, ctx.mul(m.get(r, j), col[j])));
            t.push(ctx.neg(dot));
            if k + 1 < r {
                col =
                    (0..r).map(|i| (0..r).fold(0, |s, j| ctx.add(s, ctx.mul(m.get(i, j), col[j])))).collect();
            }
        }
        let mut next = vec![0u128; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                if i >= j {
                    *slot = ctx.add(*slot, ctx.mul(t[i - j], vj));
                }
            }
        }
        v = next;
    }
    v.reverse();
    Ok(PolyMod { ctx, coeffs: v, loss: m.loss() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_gives_power_of_t_minus_one() {
        let ctx = PadicContext::new(31, 3).unwrap();
        let cp = charpoly_mod_pn(&PadicMatrix::identity(ctx, 3)).unwrap();
        assert_eq!(cp.symmetric(), vec![-1, 3, -3, 1]);
    }

    #[test]
    fn companion_matrix() {
        // t^3 - 2t + 5
        let ctx = PadicContext::new(31, 4).unwrap();
        let m = PadicMatrix::from_i128_rows(ctx, &[vec![0, 0, -5], vec![1, 0, 2], vec![0, 1, 0]]);
        let cp = charpoly_mod_pn(&m).unwrap();
        assert_eq!(cp.symmetric(), vec![5, -2, 0, 1]);
    }

    #[test]
    fn genus2_frobenius_reverse_charpoly() {
        let ctx = PadicContext::new(31, 3).unwrap();
        let m = PadicMatrix::from_i128_rows(
            ctx,
            &[
                vec![31 * 482, 31 * 284, 16241, 3075],
                vec![31 * 386, 31 * 886, 2644, 12126],
                vec![31 * 284, 31 * 659, 6336, 9750],
                vec![31 * 194, 31 * 876, 27408, 10841],
            ],
        );
        let rev = charpoly_mod_pn(&m).unwrap().reversed();
        assert_eq!(rev.symmetric(), vec![1, -3, 14, -93, 961]);
    }
}
