use crate::PadicError;

/// Largest modulus we accept. Leaves headroom for doubling inside `u128`.
const MODULUS_CAP: u128 = 1 << 125;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulm(r, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Barrett reduction for moduli below 2^63, used by the hot loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FastMod {
    m: u64,
    mu: u128,
}

#[inline(always)]
fn mulhi_u128(a: u128, b: u128) -> u128 {
    const MASK: u128 = u64::MAX as u128;
    let (a0, a1) = (a & MASK, a >> 64);
    let (b0, b1) = (b & MASK, b >> 64);
    let a0b0 = a0 * b0;
    let a0b1 = a0 * b1;
    let a1b0 = a1 * b0;
    let a1b1 = a1 * b1;
    let mid = (a0b0 >> 64) + (a0b1 & MASK) + (a1b0 & MASK);
    a1b1 + (a0b1 >> 64) + (a1b0 >> 64) + (mid >> 64)
}

impl FastMod {
    pub fn new(m: u64) -> Option<Self> {
        if m < 2 || m >= 1 << 63 {
            return None;
        }
        Some(FastMod { m, mu: u128::MAX / m as u128 })
    }

    #[inline(always)]
    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// Reduces any `x < 2^127`.
    #[inline(always)]
    pub fn reduce(&self, x: u128) -> u64 {
        let q = mulhi_u128(x, self.mu);
        let mut r = x.wrapping_sub(q.wrapping_mul(self.m as u128));
        while r >= self.m as u128 {
            r -= self.m as u128;
        }
        r as u64
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }
}

/// The ring Z/p^N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    prec: u32,
    modulus: u128,
    fast: Option<FastMod>,
}

impl PadicContext {
    pub fn new(p: u64, prec: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if prec == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let mut modulus: u128 = 1;
        for _ in 0..prec {
            modulus = modulus
                .checked_mul(p as u128)
                .filter(|m| *m <= MODULUS_CAP)
                .ok_or(PadicError::ModulusTooLarge { p, prec })?;
        }
        let fast = u64::try_from(modulus).ok().and_then(FastMod::new);
        Ok(PadicContext { p, prec, modulus, fast })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn prec(&self) -> u32 {
        self.prec
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn fast(&self) -> Option<FastMod> {
        self.fast
    }

    /// Same prime, different precision.
    pub fn with_prec(&self, prec: u32) -> Result<Self, PadicError> {
        PadicContext::new(self.p, prec)
    }

    pub fn pow_p(&self, e: u32) -> u128 {
        if e >= self.prec {
            return 0;
        }
        (self.p as u128).pow(e)
    }

    #[inline]
    pub fn from_i128(&self, x: i128) -> u128 {
        let m = self.modulus as i128;
        let r = x % m;
        if r < 0 {
            (r + m) as u128
        } else {
            r as u128
        }
    }

    #[inline]
    pub fn from_i64(&self, x: i64) -> u128 {
        self.from_i128(x as i128)
    }

    /// Representative in (-p^N/2, p^N/2].
    pub fn symmetric(&self, x: u128) -> i128 {
        let x = x % self.modulus;
        if x > self.modulus / 2 {
            x as i128 - self.modulus as i128
        } else {
            x as i128
        }
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        if let Some(f) = self.fast {
            return f.reduce(a * b) as u128;
        }
        if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
            return (a * b) % self.modulus;
        }
        mul_wide_mod(a, b, self.modulus)
    }

    pub fn pow(&self, mut a: u128, mut e: u64) -> u128 {
        let mut r = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// p-adic valuation of a residue; zero has valuation N by convention.
    pub fn valuation(&self, a: u128) -> u32 {
        if a == 0 {
            return self.prec;
        }
        let mut v = 0;
        let mut a = a;
        while a % self.p as u128 == 0 {
            a /= self.p as u128;
            v += 1;
        }
        v
    }

    /// Splits a nonzero residue as p^v * u and returns (v, u mod p^(N-v)).
    pub fn split(&self, a: u128) -> (u32, u128) {
        let v = self.valuation(a);
        if v >= self.prec {
            return (self.prec, 0);
        }
        (v, a / (self.p as u128).pow(v))
    }

    /// Inverse of a unit.
    pub fn inv(&self, a: u128) -> Option<u128> {
        if a % self.p as u128 == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, (a % self.modulus) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.from_i128(t0))
    }

    /// Divides `a` by `b` assuming v(a) >= v(b) = e; the quotient is only
    /// meaningful mod p^(N-e).
    pub fn div_exact(&self, a: u128, b: u128) -> Option<u128> {
        let (e, u) = self.split(b);
        if e >= self.prec {
            return None;
        }
        let pe = (self.p as u128).pow(e);
        if a % pe != 0 {
            return None;
        }
        let uinv = self.inv(u)?;
        Some(self.mul(a / pe, uinv))
    }

    /// Reduce a residue of this context into a context of lower precision.
    pub fn project(&self, a: u128, target: &PadicContext) -> u128 {
        debug_assert_eq!(self.p, target.p);
        a % target.modulus
    }
}

fn mul_wide_mod(a: u128, b: u128, m: u128) -> u128 {
    const MASK: u128 = u64::MAX as u128;
    let (a0, a1) = (a & MASK, a >> 64);
    let (b0, b1) = (b & MASK, b >> 64);
    let lo0 = a0 * b0;
    let mid1 = a0 * b1;
    let mid2 = a1 * b0;
    let hi = a1 * b1;
    let (mid, c1) = mid1.overflowing_add(mid2);
    let (lo, c2) = lo0.overflowing_add(mid << 64);
    let hi = hi + (mid >> 64) + ((c1 as u128) << 64) + c2 as u128;
    let mut r = hi % m;
    for i in (0..128).rev() {
        r = (r << 1) | ((lo >> i) & 1);
        if r >= m {
            r -= m;
        }
    }
    r
}
