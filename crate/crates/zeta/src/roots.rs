use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

type RatPoly = Vec<BigRational>;

fn trim(mut a: RatPoly) -> RatPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn monic(a: RatPoly) -> RatPoly {
    let lc = a.last().cloned().expect("nonzero polynomial");
    a.into_iter().map(|c| c / &lc).collect()
}

fn rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / lb;
        let s = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            r[s + j] -= &c * bj;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn quo(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let lb = b.last().unwrap();
    let mut q = vec![BigRational::zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() {
        let c = r.last().unwrap() / lb;
        let s = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            r[s + j] -= &c * bj;
        }
        q[s] = c;
        r.pop();
    }
    q
}

/// a / gcd(a, a') over Q.
fn squarefree_part(a: &[BigInt]) -> RatPoly {
    let a: RatPoly = trim(a.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    if a.len() <= 2 {
        return a;
    }
    let da: RatPoly =
        trim(a.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(k.into())).collect());
    let (mut x, mut y) = (monic(a.clone()), monic(da));
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { monic(r) };
    }
    quo(&a, &x)
}

fn eval(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for &a in c.iter().rev() {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// Aberth-Ehrlich iteration on a polynomial with roots near the unit circle.
fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, (2.0 * std::f64::consts::PI * k as f64 + 0.4) / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut worst = 0f64;
        for i in 0..n {
            let (v, d) = eval(c, z[i]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::one() / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            z[i] -= w;
            worst = worst.max(w.norm());
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

/// Largest | |z| p^(weight/2) - 1 | over the distinct roots z of the
/// integer polynomial `coeffs` (constant term first).
pub fn max_root_norm_deviation(coeffs: &[BigInt], p: u64, weight: u32) -> f64 {
    let sf = squarefree_part(coeffs);
    if sf.len() <= 1 {
        return 0.0;
    }
    // Substitute t = s p^(-w/2) so the roots in s lie on the unit circle.
    let scale = (p as f64).powf(-(weight as f64) / 2.0);
    let lc = sf.last().unwrap().to_f64().unwrap();
    let c: Vec<Complex64> = sf
        .iter()
        .enumerate()
        .map(|(k, a)| {
            Complex64::new(a.to_f64().unwrap() / lc * scale.powi(k as i32 - (sf.len() as i32 - 1)), 0.0)
        })
        .collect();
    aberth(&c).iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max)
}
