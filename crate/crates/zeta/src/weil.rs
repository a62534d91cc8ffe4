use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use padic_core::PolyMod;

use crate::intpoly::{primitive_part, trim, IntPoly};
use crate::roots::max_root_norm_deviation;
use crate::ZetaError;

/// Tolerance for the floating-point root-norm sanity check.
pub const ROOT_NORM_TOLERANCE: f64 = 1e-6;

/// det(1 - tF) for a Frobenius F of the given weight over F_p: integer
/// coefficients, constant term 1, roots of absolute value p^(-weight/2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilPolynomial {
    pub coeffs: IntPoly,
    pub p: u64,
    pub weight: u32,
}

/// The characteristic polynomial of p^(-r) F written as scale * primitive,
/// with `primitive` an integer polynomial of content 1 and positive leading
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledCharpoly {
    pub scale: BigRational,
    pub primitive: IntPoly,
}

fn q_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Smallest N with p^N above twice the coefficient bound
/// binom(m, ceil(m/2)) * q^(weight * ceil(m/2) / 2), never below `requested`.
/// For odd exponents the bound is rounded up.
pub fn min_precision(m: usize, p: u64, weight: u32, requested: u32) -> u32 {
    assert!(m >= 1 && p >= 2);
    let c = m.div_ceil(2);
    let sq = binomial(m, c).pow(2) * q_pow(p, weight * c as u32);
    let mut bound = sq.sqrt();
    if &bound * &bound != sq {
        bound += 1;
    }
    let twice = bound * 2;
    let (mut n, mut pn) = (0u32, BigInt::one());
    while pn <= twice {
        pn *= p;
        n += 1;
    }
    n.max(requested)
}

impl WeilPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// The sign e in P(t) = e (q^(w/2) t)^m P(1 / (q^w t)), read off the top
    /// coefficient. None when the top coefficient is not +-q^(wm/2).
    pub fn sign(&self) -> Option<i8> {
        let m = self.degree() as u32;
        if (self.weight * m) % 2 == 1 {
            return None;
        }
        let top = q_pow(self.p, self.weight * m / 2);
        let last = self.coeffs.last()?;
        if *last == top {
            Some(1)
        } else if *last == -top {
            Some(-1)
        } else {
            None
        }
    }

    /// Exact check of the functional equation and the constant term.
    pub fn satisfies_functional_equation(&self) -> bool {
        let Some(sign) = self.sign() else { return false };
        if self.coeffs.first().map_or(true, |c| !c.is_one()) {
            return false;
        }
        let m = self.degree();
        (0..=m / 2).all(|k| {
            let e = self.weight * (m - 2 * k) as u32 / 2;
            let expected = &self.coeffs[k] * q_pow(self.p, e) * BigInt::from(sign);
            self.coeffs[m - k] == expected
        })
    }

    /// Largest | |root| * p^(w/2) - 1 | over the distinct complex roots.
    pub fn root_norm_deviation(&self) -> f64 {
        max_root_norm_deviation(&self.coeffs, self.p, self.weight)
    }

    pub fn residues(&self, modulus: u128) -> Vec<u128> {
        let m = BigInt::from(modulus);
        self.coeffs
            .iter()
            .map(|c| {
                let r = ((c % &m) + &m) % &m;
                u128::try_from(r).expect("residue below modulus")
            })
            .collect()
    }

    /// The characteristic polynomial of p^(-weight/2) F. Needs even weight.
    pub fn scaled_charpoly(&self) -> Result<ScaledCharpoly, ZetaError> {
        if self.weight % 2 == 1 {
            return Err(ZetaError::BadInput("odd weight has no integral twist".into()));
        }
        let r = self.weight / 2;
        let m = self.degree();
        // t^m chi(1/t) = P(t q^-r), so chi = sum_k c_k q^(-rk) t^(m-k).
        let mut a = vec![BigInt::zero(); m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            a[m - k] = c * q_pow(self.p, r * (m - k) as u32);
        }
        let (g, primitive) = primitive_part(&trim(a));
        let scale = BigRational::new(g, q_pow(self.p, r * m as u32));
        Ok(ScaledCharpoly { scale, primitive })
    }

    /// Divides out the polarization factor 1 - p^r t (r = weight / 2).
    pub fn without_polarization(&self) -> Result<WeilPolynomial, ZetaError> {
        if self.weight % 2 == 1 || self.degree() == 0 {
            return Err(ZetaError::BadInput("no polarization factor in this weight".into()));
        }
        let q = q_pow(self.p, self.weight / 2);
        // P = (1 - q t) S, so s_k = c_k + q s_{k-1}.
        let m = self.degree();
        let mut s: IntPoly = Vec::with_capacity(m);
        let mut prev = BigInt::zero();
        for k in 0..m {
            let v = &self.coeffs[k] + &q * &prev;
            s.push(v.clone());
            prev = v;
        }
        if self.coeffs[m] != -(&q * &prev) {
            return Err(ZetaError::InconsistentLift("1 - p^r t does not divide P".into()));
        }
        Ok(WeilPolynomial { coeffs: s, p: self.p, weight: self.weight })
    }
}

impl ScaledCharpoly {
    pub fn degree(&self) -> usize {
        self.primitive.len().saturating_sub(1)
    }
}

/// Lifts det(1 - tF) mod p^N to the integers. Coefficients of t^k for
/// k <= m/2 are taken in the symmetric interval, the rest follow from the
/// functional equation with sign (-1)^m * det_sign, where det_sign is the
/// sign of det(F) / p^(wm/2).
pub fn weil_lift(approx: &PolyMod, weight: u32, det_sign: i8) -> Result<WeilPolynomial, ZetaError> {
    let m = approx.degree();
    let p = approx.ctx.p();
    if m == 0 {
        return Err(ZetaError::BadInput("constant polynomial".into()));
    }
    if (weight as usize * m) % 2 == 1 {
        return Err(ZetaError::BadInput(format!(
            "weight {weight} and degree {m} have no functional equation"
        )));
    }
    if det_sign != 1 && det_sign != -1 {
        return Err(ZetaError::BadInput(format!("sign {det_sign} is not +-1")));
    }
    let trusted = approx.trusted_prec();
    let needed = min_precision(m, p, weight, 0);
    if trusted < needed {
        return Err(ZetaError::InsufficientPrecision { needed, available: trusted });
    }
    let modulus = BigInt::from(p).pow(trusted);
    let half = &modulus / 2;
    let sign = if m % 2 == 0 { det_sign } else { -det_sign };
    let mut coeffs = vec![BigInt::zero(); m + 1];
    for k in 0..=m / 2 {
        let mut c = BigInt::from(approx.coeffs[k]) % &modulus;
        if c > half {
            c -= &modulus;
        }
        coeffs[k] = c;
    }
    for k in m / 2 + 1..=m {
        let e = weight * (2 * k - m) as u32 / 2;
        coeffs[k] = &coeffs[m - k] * q_pow(p, e) * BigInt::from(sign);
    }
    let w = WeilPolynomial { coeffs, p, weight };
    if !w.coeffs[0].is_one() {
        return Err(ZetaError::InconsistentLift("constant term is not 1".into()));
    }
    for (k, (c, &a)) in w.coeffs.iter().zip(&approx.coeffs).enumerate() {
        let diff: BigInt = c - BigInt::from(a);
        if !(diff % &modulus).is_zero() {
            return Err(ZetaError::InconsistentLift(format!(
                "coefficient of t^{k} disagrees with the approximation mod {p}^{trusted}"
            )));
        }
    }
    if !w.satisfies_functional_equation() {
        return Err(ZetaError::InconsistentLift("functional equation fails".into()));
    }
    let dev = w.root_norm_deviation();
    if !(dev < ROOT_NORM_TOLERANCE) {
        return Err(ZetaError::InconsistentLift(format!("root norms deviate by {dev:e}")));
    }
    Ok(w)
}

impl std::fmt::Display for WeilPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let s = if first {
                if c.is_negative() {
                    "-"
                } else {
                    ""
                }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            first = false;
            match k {
                0 => write!(f, "{s}{mag}")?,
                1 if mag.is_one() => write!(f, "{s}t")?,
                1 => write!(f, "{s}{mag}t")?,
                _ if mag.is_one() => write!(f, "{s}t^{k}")?,
                _ => write!(f, "{s}{mag}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
