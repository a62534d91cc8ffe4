use num_bigint::BigInt;
use num_traits::Zero;

use crate::intpoly::trim;
use crate::WeilPolynomial;

/// Power sums s_1..s_count of the inverse roots of P(t) = prod (1 - a t),
/// from k c_k + sum_{i=1}^{k} s_i c_{k-i} = 0.
pub fn power_sums(coeffs: &[BigInt], count: usize) -> Vec<BigInt> {
    let c = |k: usize| coeffs.get(k).cloned().unwrap_or_default();
    let mut s: Vec<BigInt> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut v = -(c(k) * BigInt::from(k));
        for i in 1..k {
            v -= &s[i - 1] * c(k - i);
        }
        s.push(v);
    }
    s
}

/// Inverse of [`power_sums`]: the degree-m polynomial with constant term 1
/// whose inverse roots have power sums `s`.
fn from_power_sums(s: &[BigInt], m: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(1)];
    for k in 1..=m {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc += &s[i - 1] * &c[k - i];
        }
        let kk = BigInt::from(k);
        assert!((&acc % &kk).is_zero(), "power sums are not those of an integer polynomial");
        c.push(-(acc / kk));
    }
    trim(c)
}

/// det(1 - t Lambda^2 F) from det(1 - tF), exactly. The inverse roots are
/// the products a_i a_j with i < j.
pub fn wedge_square_charpoly(w: &WeilPolynomial) -> WeilPolynomial {
    let m = w.degree();
    let big_m = m * (m - 1) / 2;
    let s = power_sums(&w.coeffs, 2 * big_m);
    let t: Vec<BigInt> = (1..=big_m).map(|k| (&s[k - 1] * &s[k - 1] - &s[2 * k - 1]) / 2).collect();
    WeilPolynomial { coeffs: from_power_sums(&t, big_m), p: w.p, weight: 2 * w.weight }
}

/// det(1 - t F (x) F) from det(1 - tF), exactly.
pub fn tensor_square_charpoly(w: &WeilPolynomial) -> WeilPolynomial {
    let m = w.degree();
    let big_m = m * m;
    let s = power_sums(&w.coeffs, big_m);
    let t: Vec<BigInt> = s.iter().map(|x| x * x).collect();
    WeilPolynomial { coeffs: from_power_sums(&t, big_m), p: w.p, weight: 2 * w.weight }
}
