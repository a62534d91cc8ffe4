use padic_core::{PadicContext, PadicMatrix};

use crate::{FrobeniusApprox, FrobeniusError};

/// Sign of det(Frob) as a unit mod p after dividing the columns of each
/// Hodge level j by p^j. Returns +1 or -1.
pub fn functional_equation_sign(f: &FrobeniusApprox) -> Result<i8, FrobeniusError> {
    let levels = f.levels();
    let max = *levels.iter().max().unwrap_or(&0);
    if f.matrix.trusted_prec() <= max {
        return Err(FrobeniusError::PrecisionExhausted {
            needed: max + 1,
            available: f.matrix.trusted_prec(),
        });
    }
    let p = f.p as u128;
    let n = f.dim();
    let ctx = PadicContext::new(f.p, 1)?;
    let mut divided = PadicMatrix::zero(ctx, n, n);
    for c in 0..n {
        let pj = p.pow(levels[c]);
        for r in 0..n {
            let v = f.matrix.get(r, c);
            if v % pj != 0 {
                return Err(FrobeniusError::InvariantViolation(format!(
                    "column {c} is not divisible by p^{}",
                    levels[c]
                )));
            }
            divided.set(r, c, (v / pj) % p);
        }
    }
    let det = det_mod_p(&divided, f.p);
    if det == 1 {
        Ok(1)
    } else if det == f.p - 1 {
        Ok(-1)
    } else {
        Err(FrobeniusError::SignUndetermined(det))
    }
}

fn det_mod_p(m: &PadicMatrix, p: u64) -> u64 {
    let n = m.rows();
    let mut a: Vec<Vec<u64>> = (0..n).map(|r| (0..n).map(|c| m.get(r, c) as u64).collect()).collect();
    let mut det = 1u64;
    let inv = |x: u64| {
        let (mut r, mut b, mut e) = (1u64, x, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = (r as u128 * b as u128 % p as u128) as u64;
            }
            b = (b as u128 * b as u128 % p as u128) as u64;
            e >>= 1;
        }
        r
    };
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
        if r != c {
            a.swap(r, c);
            det = (p - det) % p;
        }
        det = (det as u128 * a[c][c] as u128 % p as u128) as u64;
        let iv = inv(a[c][c]);
        for r in c + 1..n {
            let f = (a[r][c] as u128 * iv as u128 % p as u128) as u64;
            if f == 0 {
                continue;
            }
            for k in c..n {
                let sub = (f as u128 * a[c][k] as u128 % p as u128) as u64;
                a[r][k] = (a[r][k] + p - sub) % p;
            }
        }
    }
    det
}
