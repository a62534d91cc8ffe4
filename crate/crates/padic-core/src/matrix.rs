use std::fmt;

use crate::{PadicContext, PadicError};

/// Dense matrix over Z/p^N. Entries are trusted modulo p^(N - loss).
#[derive(Clone, PartialEq, Eq)]
pub struct PadicMatrix {
    ctx: PadicContext,
    rows: usize,
    cols: usize,
    data: Vec<u128>,
    loss: u32,
}

impl fmt::Debug for PadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "PadicMatrix {}x{} mod {}^{} (loss {})",
            self.rows,
            self.cols,
            self.ctx.p(),
            self.ctx.prec(),
            self.loss
        )?;
        for r in 0..self.rows {
            let row: Vec<i128> = self.row(r).iter().map(|&x| self.ctx.symmetric(x)).collect();
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}

impl PadicMatrix {
    pub fn zero(ctx: PadicContext, rows: usize, cols: usize) -> Self {
        PadicMatrix { ctx, rows, cols, data: vec![0; rows * cols], loss: 0 }
    }

    pub fn identity(ctx: PadicContext, n: usize) -> Self {
        let mut m = Self::zero(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ctx.modulus();
        }
        m
    }

    /// Builds a matrix from row-major residues; fails if any entry is >= p^N.
    pub fn from_residues(
        ctx: PadicContext,
        rows: usize,
        cols: usize,
        data: Vec<u128>,
    ) -> Result<Self, PadicError> {
        if data.len() != rows * cols {
            return Err(PadicError::DimensionMismatch { expected: (rows, cols), found: (data.len(), 1) });
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= ctx.modulus()) {
            return Err(PadicError::EntryOutOfRange(bad));
        }
        Ok(PadicMatrix { ctx, rows, cols, data, loss: 0 })
    }

    pub fn from_i128_rows(ctx: PadicContext, rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(ctx, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = ctx.from_i128(x);
            }
        }
        m
    }

    pub fn from_fn(
        ctx: PadicContext,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u128,
    ) -> Self {
        let mut m = Self::zero(ctx, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % ctx.modulus();
            }
        }
        m
    }

    #[inline]
    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn loss(&self) -> u32 {
        self.loss
    }

    /// Number of trusted p-adic digits, N - loss.
    #[inline]
    pub fn trusted_prec(&self) -> u32 {
        self.ctx.prec().saturating_sub(self.loss)
    }

    pub fn with_loss(mut self, loss: u32) -> Self {
        self.loss = loss.min(self.ctx.prec());
        self
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u128 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u128) {
        self.data[r * self.cols + c] = v % self.ctx.modulus();
    }

    pub fn row(&self, r: usize) -> &[u128] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u128> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn data(&self) -> &[u128] {
        &self.data
    }

    /// Entries in the symmetric range, row by row.
    pub fn to_i128_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|&x| self.ctx.symmetric(x)).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Minimum valuation over all entries (N if the matrix is zero).
    pub fn valuation(&self) -> u32 {
        self.data.iter().map(|&x| self.ctx.valuation(x)).min().unwrap_or(self.ctx.prec())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.ctx, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t.loss = self.loss;
        t
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), PadicError> {
        if self.ctx != *other.ctx() {
            return Err(PadicError::ContextMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(PadicError::DimensionMismatch {
                expected: (self.rows, self.cols),
                found: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.ctx.add(*a, b);
        }
        out.loss = self.loss.max(other.loss);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.ctx.sub(*a, b);
        }
        out.loss = self.loss.max(other.loss);
        Ok(out)
    }

    pub fn scale(&self, s: u128) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.ctx.mul(*a, s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        if self.ctx != *other.ctx() {
            return Err(PadicError::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(PadicError::DimensionMismatch {
                expected: (self.cols, other.cols),
                found: (other.rows, other.cols),
            });
        }
        let mut out = Self::zero(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = self.ctx.add(out.data[idx], self.ctx.mul(a, other.get(k, j)));
                }
            }
        }
        out.loss = self.loss.max(other.loss);
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self, PadicError> {
        if !self.is_square() {
            return Err(PadicError::NotSquare(self.rows, self.cols));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.ctx, self.rows).with_loss(self.loss);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Rows `rows` and columns `cols` (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zero(self.ctx, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        out.loss = self.loss;
        out
    }

    pub fn vstack(blocks: &[PadicMatrix]) -> Result<Self, PadicError> {
        let first = blocks.first().ok_or(PadicError::Empty)?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut loss = 0;
        for b in blocks {
            if b.cols != cols || b.ctx != first.ctx {
                return Err(PadicError::DimensionMismatch {
                    expected: (b.rows, cols),
                    found: (b.rows, b.cols),
                });
            }
            data.extend_from_slice(&b.data);
            loss = loss.max(b.loss);
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        Ok(PadicMatrix { ctx: first.ctx, rows, cols, data, loss })
    }

    pub fn hstack(blocks: &[PadicMatrix]) -> Result<Self, PadicError> {
        let t: Vec<PadicMatrix> = blocks.iter().map(|b| b.transpose()).collect();
        Ok(Self::vstack(&t)?.transpose())
    }

    /// Re-reads the matrix at a different precision. Lowering precision drops
    /// digits; raising it pads with zeros and keeps the trusted digit count.
    pub fn change_precision(&self, prec: u32) -> Result<Self, PadicError> {
        let ctx = self.ctx.with_prec(prec)?;
        let trusted = self.trusted_prec().min(prec);
        let data = self.data.iter().map(|&x| x % ctx.modulus()).collect();
        Ok(PadicMatrix { ctx, rows: self.rows, cols: self.cols, data, loss: prec - trusted })
    }

    /// Divides every entry by p^e; fails unless all entries are divisible.
    /// The result lives at precision N - e.
    pub fn divide_by_p_power(&self, e: u32) -> Result<Self, PadicError> {
        if e == 0 {
            return Ok(self.clone());
        }
        if e >= self.ctx.prec() {
            return Err(PadicError::PrecisionExhausted { loss: e, prec: self.ctx.prec() });
        }
        let pe = (self.ctx.p() as u128).pow(e);
        if self.data.iter().any(|&x| x % pe != 0) {
            return Err(PadicError::NotDivisible(e));
        }
        let ctx = self.ctx.with_prec(self.ctx.prec() - e)?;
        let data = self.data.iter().map(|&x| x / pe).collect();
        Ok(PadicMatrix { ctx, rows: self.rows, cols: self.cols, data, loss: self.loss.min(ctx.prec()) })
    }

    pub fn is_congruent(&self, other: &Self, prec: u32) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) || self.ctx.p() != other.ctx.p() {
            return false;
        }
        let m = (self.ctx.p() as u128).pow(prec);
        self.data.iter().zip(&other.data).all(|(&a, &b)| a % m == b % m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(31, 3).unwrap()
    }

    #[test]
    fn product_and_power() {
        let a = PadicMatrix::from_i128_rows(ctx(), &[vec![1, 2], vec![3, 4]]);
        let a2 = a.mul(&a).unwrap();
        assert_eq!(a2.to_i128_rows(), vec![vec![7, 10], vec![15, 22]]);
        assert_eq!(a.pow(2).unwrap(), a2);
        assert_eq!(a.pow(0).unwrap(), PadicMatrix::identity(ctx(), 2));
    }

    #[test]
    fn stacking() {
        let a = PadicMatrix::from_i128_rows(ctx(), &[vec![1, 2]]);
        let b = PadicMatrix::from_i128_rows(ctx(), &[vec![3, 4]]);
        let v = PadicMatrix::vstack(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(v.to_i128_rows(), vec![vec![1, 2], vec![3, 4]]);
        let h = PadicMatrix::hstack(&[a, b]).unwrap();
        assert_eq!(h.to_i128_rows(), vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn division_by_p_tracks_precision() {
        let a = PadicMatrix::from_i128_rows(ctx(), &[vec![31, 62], vec![0, 31 * 31]]);
        let b = a.divide_by_p_power(1).unwrap();
        assert_eq!(b.ctx().prec(), 2);
        assert_eq!(b.to_i128_rows(), vec![vec![1, 2], vec![0, 31]]);
        let c = PadicMatrix::from_i128_rows(ctx(), &[vec![1]]);
        assert!(matches!(c.divide_by_p_power(1), Err(PadicError::NotDivisible(1))));
    }

    #[test]
    fn out_of_range_entries_are_rejected() {
        let r = PadicMatrix::from_residues(ctx(), 1, 1, vec![31 * 31 * 31]);
        assert!(matches!(r, Err(PadicError::EntryOutOfRange(_))));
    }
}
