use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, coefficients from the constant term up, no trailing
/// zeros (the zero polynomial is empty).
pub type IntPoly = Vec<BigInt>;

pub(crate) fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

#[cfg(test)]
pub(crate) fn from_i64(c: &[i64]) -> IntPoly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// a / b when b is monic and divides a exactly.
pub(crate) fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    debug_assert!(b.last().is_some_and(One::is_one));
    let mut r: IntPoly = a.to_vec();
    if r.is_empty() {
        return Some(vec![]);
    }
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + b.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive_part(a: &[BigInt]) -> (BigInt, IntPoly) {
    let mut g = content(a);
    if g.is_zero() {
        return (BigInt::zero(), vec![]);
    }
    if a.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    (g.clone(), a.iter().map(|c| c / &g).collect())
}

pub fn euler_phi(n: u64) -> u64 {
    let (mut m, mut out, mut q) = (n, n, 2);
    while q * q <= m {
        if m % q == 0 {
            while m % q == 0 {
                m /= q;
            }
            out -= out / q;
        }
        q += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn mobius(n: u64) -> i32 {
    let (mut m, mut s, mut q) = (n, 1, 2);
    while q * q <= m {
        if m % q == 0 {
            m /= q;
            if m % q == 0 {
                return 0;
            }
            s = -s;
        }
        q += 1;
    }
    if m > 1 {
        s = -s;
    }
    s
}

/// The n-th cyclotomic polynomial, as the product of (t^d - 1)^mu(n/d).
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    let binomial = |d: u64| {
        let mut v = vec![BigInt::zero(); d as usize + 1];
        v[0] = BigInt::from(-1);
        v[d as usize] = BigInt::one();
        v
    };
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num: IntPoly = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            num = mul(&num, &binomial(d));
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            num = div_exact_monic(&num, &binomial(d)).expect("cyclotomic identity");
        }
    }
    debug_assert!(num.last().is_some_and(One::is_one));
    num
}

/// Renders in descending powers of `var`, e.g. "t^2 + 1" or "31*t^4 - 3*t".
pub fn format_poly(a: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mon = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        match (mag.is_one(), mon.is_empty()) {
            (_, true) => out.push_str(&mag.to_string()),
            (true, false) => out.push_str(&mon),
            (false, false) => out.push_str(&format!("{mag}*{mon}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
