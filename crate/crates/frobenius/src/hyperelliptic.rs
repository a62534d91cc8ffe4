//! Kedlaya's algorithm for y^2 = Q(x), deg Q = 2g + 1, on the basis
//! x^i dx / y, i < 2g.

use std::collections::BTreeMap;

use padic_core::{PadicContext, PadicMatrix};

use crate::approx::{BasisVector, CohomologyKind, FrobeniusApprox, Provenance};
use crate::{FrobeniusError, FrobeniusOptions};

fn floor_log(p: u64, x: u64) -> u32 {
    let mut e = 0;
    let mut q = p;
    while q <= x {
        e += 1;
        q = q.saturating_mul(p);
    }
    e
}

fn vp(p: u64, mut x: u64) -> u32 {
    let mut v = 0;
    while x > 0 && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Smallest K with k - floor(log_p(2k + 1)) >= N for every k >= K.
pub fn hyperelliptic_truncation(p: u64, n_digits: u32) -> u32 {
    let ok = |k: u32| k as i64 - floor_log(p, 2 * k as u64 + 1) as i64 >= n_digits as i64;
    let mut k = 1;
    while !(k..k + p as u32 + 64).all(ok) {
        k += 1;
    }
    k
}

type Poly = Vec<u128>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mul(a: &[u128], b: &[u128], ctx: &PadicContext) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
    out
}

fn add_into(acc: &mut Poly, b: &[u128], ctx: &PadicContext) {
    if acc.len() < b.len() {
        acc.resize(b.len(), 0);
    }
    for (x, &y) in acc.iter_mut().zip(b) {
        *x = ctx.add(*x, y);
    }
}

/// value = poly / p^shift
struct Level {
    poly: Poly,
    shift: u32,
}

fn merge(levels: &mut BTreeMap<u32, Level>, s: u32, poly: Poly, shift: u32, ctx: &PadicContext) {
    match levels.get_mut(&s) {
        None => {
            levels.insert(s, Level { poly, shift });
        }
        Some(l) => {
            if l.shift >= shift {
                let f = ctx.pow_p(l.shift - shift);
                let scaled: Poly = poly.iter().map(|&x| ctx.mul(x, f)).collect();
                add_into(&mut l.poly, &scaled, ctx);
            } else {
                let f = ctx.pow_p(shift - l.shift);
                for x in l.poly.iter_mut() {
                    *x = ctx.mul(*x, f);
                }
                add_into(&mut l.poly, &poly, ctx);
                l.shift = shift;
            }
        }
    }
}

fn invert(mut a: Vec<Vec<u128>>, ctx: &PadicContext) -> Option<Vec<Vec<u128>>> {
    let n = a.len();
    let mut inv: Vec<Vec<u128>> =
        (0..n).map(|i| (0..n).map(|j| (i == j) as u128 % ctx.modulus()).collect()).collect();
    for c in 0..n {
        let r = (c..n).find(|&r| a[r][c] % ctx.p() as u128 != 0)?;
        a.swap(c, r);
        inv.swap(c, r);
        let u = ctx.inv(a[c][c])?;
        a[c].iter_mut().for_each(|x| *x = ctx.mul(*x, u));
        inv[c].iter_mut().for_each(|x| *x = ctx.mul(*x, u));
        let (pa, pi) = (a[c].clone(), inv[c].clone());
        for r in 0..n {
            if r == c || a[r][c] == 0 {
                continue;
            }
            let f = ctx.neg(a[r][c]);
            for (x, &y) in a[r].iter_mut().zip(&pa) {
                *x = ctx.add(*x, ctx.mul(f, y));
            }
            for (x, &y) in inv[r].iter_mut().zip(&pi) {
                *x = ctx.add(*x, ctx.mul(f, y));
            }
        }
    }
    Some(inv)
}

struct Curve {
    ctx: PadicContext,
    g: usize,
    q: Poly,
    dq: Poly,
    lc_inv: u128,
    /// Solves r = a Q + b Q' for deg r <= 2g: rows give (a_0..a_{2g-1}, b_0..b_{2g}).
    sylvester_inv: Vec<Vec<u128>>,
}

impl Curve {
    fn new(coeffs: &[i128], ctx: PadicContext) -> Result<Self, FrobeniusError> {
        let q: Poly = coeffs.iter().map(|&c| ctx.from_i128(c)).collect();
        let deg = q.len() - 1;
        let g = (deg - 1) / 2;
        let dq: Poly = (1..=deg).map(|i| ctx.mul(q[i], i as u128)).collect();
        let lc_inv = ctx
            .inv(q[deg])
            .ok_or_else(|| FrobeniusError::InvariantViolation("leading coefficient divisible by p".into()))?;
        let size = 4 * g + 1;
        // Columns: x^i Q for i < 2g, then x^i Q' for i <= 2g.
        let mut m = vec![vec![0u128; size]; size];
        for i in 0..2 * g {
            for (k, &c) in q.iter().enumerate() {
                m[i + k][i] = c;
            }
        }
        for i in 0..=2 * g {
            for (k, &c) in dq.iter().enumerate() {
                m[i + k][2 * g + i] = c;
            }
        }
        let sylvester_inv = invert(m, &ctx)
            .ok_or_else(|| FrobeniusError::InvariantViolation("Q and Q' are not coprime mod p".into()))?;
        Ok(Curve { ctx, g, q, dq, lc_inv, sylvester_inv })
    }

    /// Splits a into (quotient, remainder) by Q.
    fn divmod(&self, a: &[u128]) -> (Poly, Poly) {
        let ctx = &self.ctx;
        let dq = self.q.len() - 1;
        let mut r = a.to_vec();
        if r.len() <= dq {
            return (vec![], r);
        }
        let mut quot = vec![0u128; r.len() - dq];
        for k in (dq..r.len()).rev() {
            let c = ctx.mul(r[k], self.lc_inv);
            if c == 0 {
                continue;
            }
            quot[k - dq] = c;
            for (i, &qi) in self.q.iter().enumerate() {
                r[k - dq + i] = ctx.sub(r[k - dq + i], ctx.mul(c, qi));
            }
        }
        r.truncate(dq);
        (quot, r)
    }

    /// A dx / y^{2s+1} = (A div Q) dx / y^{2s-1} + (a + 2 b' / (2s - 1)) dx / y^{2s-1}
    /// where A mod Q = a Q + b Q'.
    fn lower_pole(&self, a: &[u128], s: u32) -> (Poly, Poly, u32) {
        let ctx = &self.ctx;
        let g = self.g;
        let (quot, rem) = self.divmod(a);
        let mut sol = vec![0u128; 4 * g + 1];
        for (k, &rk) in rem.iter().enumerate() {
            if rk == 0 {
                continue;
            }
            for (x, row) in sol.iter_mut().zip(&self.sylvester_inv) {
                *x = ctx.add(*x, ctx.mul(row[k], rk));
            }
        }
        let (aa, bb) = sol.split_at(2 * g);
        let (e, u) = ctx.split(2 * s as u128 - 1);
        let uinv = ctx.inv(u).expect("unit");
        let pe = ctx.pow_p(e);
        let mut out: Poly = aa.iter().map(|&x| ctx.mul(x, pe)).collect();
        out.resize(2 * g + 1, 0);
        for i in 1..bb.len() {
            let t = ctx.mul(ctx.mul(bb[i], 2 * i as u128), uinv);
            out[i - 1] = ctx.add(out[i - 1], t);
        }
        (quot, out, e)
    }

    /// Reduces A dx / y to the basis; returns (coords, extra shift).
    fn lower_degree(&self, mut a: Poly) -> (Vec<u128>, u32) {
        let ctx = &self.ctx;
        let g = self.g as u64;
        let mut shift = 0;
        trim(&mut a);
        let lc = self.q[self.q.len() - 1];
        for e in (2 * g as usize..a.len()).rev() {
            let c = a[e];
            if c == 0 {
                continue;
            }
            // L_e = x^{j-1} (2j Q + x Q'), j = e - 2g, has degree e and leading
            // coefficient (2e - 2g + 1) lc; d(x^j y) makes it exact.
            let j = e as u64 - 2 * g;
            let mut l = vec![0u128; e + 1];
            if j == 0 {
                l[..self.dq.len()].copy_from_slice(&self.dq);
            } else {
                let two_j = ctx.from_i128(2 * j as i128);
                for (k, &qk) in self.q.iter().enumerate() {
                    let idx = k + j as usize - 1;
                    l[idx] = ctx.add(l[idx], ctx.mul(two_j, qk));
                }
                for (k, &dk) in self.dq.iter().enumerate() {
                    let idx = k + j as usize;
                    l[idx] = ctx.add(l[idx], dk);
                }
            }
            let (v, u) = ctx.split((2 * e as u64 - 2 * g + 1) as u128);
            let f = ctx.mul(c, ctx.inv(ctx.mul(u, lc)).expect("unit"));
            let pv = ctx.pow_p(v);
            a[e] = 0;
            for (k, x) in a.iter_mut().enumerate().take(e) {
                *x = ctx.sub(ctx.mul(*x, pv), ctx.mul(f, l[k]));
            }
            shift += v;
        }
        a.resize(2 * self.g, 0);
        (a, shift)
    }
}

/// Frobenius on H^1 of y^2 = Q(x), Q given from the constant term up.
pub fn frobenius_hyperelliptic(
    coeffs: &[i128],
    p: u64,
    n_digits: u32,
    opts: FrobeniusOptions,
) -> Result<FrobeniusApprox, FrobeniusError> {
    let deg = coeffs.len().saturating_sub(1);
    if deg < 3 || deg % 2 == 0 {
        return Err(FrobeniusError::Schema(format!("need odd degree >= 3, found {deg}")));
    }
    if p == 2 {
        return Err(FrobeniusError::InvariantViolation("p must be odd".into()));
    }
    let g = (deg - 1) / 2;
    let big_k = hyperelliptic_truncation(p, n_digits) + opts.extra_truncation;

    // Bound the denominators: pole steps divide by 2s - 1, degree steps by
    // 2e - 2g + 1 for e up to the largest degree left at pole order 1.
    let s_top = (p * (2 * big_k as u64 - 1) - 1) / 2;
    let mut e_max = 2 * g as u64;
    for i in 0..2 * g as u64 {
        for k in 0..big_k as u64 {
            let s = (p * (2 * k + 1) - 1) / 2;
            let d = p * (i + 1) - 1 + p * k * deg as u64;
            e_max = e_max.max(d.saturating_sub(s * (2 * g as u64 + 1)));
        }
    }
    let s_bound: u32 = (1..=s_top).map(|s| vp(p, 2 * s - 1)).sum::<u32>()
        + (2 * g as u64..=e_max).map(|e| vp(p, 2 * e - 2 * g as u64 + 1)).sum::<u32>();
    let m_digits = n_digits + s_bound + 1 + opts.extra_precision;
    let ctx = PadicContext::new(p, m_digits)?;
    let curve = Curve::new(coeffs, ctx)?;

    // E = Q(x^p) - Q(x)^p
    let mut qp: Poly = vec![1];
    for _ in 0..p {
        qp = poly_mul(&qp, &curve.q, &ctx);
    }
    let mut e_poly = vec![0u128; qp.len()];
    for (k, &c) in curve.q.iter().enumerate() {
        e_poly[k * p as usize] = c;
    }
    for (x, &y) in e_poly.iter_mut().zip(&qp) {
        *x = ctx.sub(*x, y);
    }
    let mut e_pows: Vec<Poly> = vec![vec![1]];
    for k in 1..big_k as usize {
        e_pows.push(poly_mul(&e_pows[k - 1], &e_poly, &ctx));
    }
    // C(-1/2, k) = (-1)^k C(2k, k) / 4^k
    let mut binom_half = vec![1u128 % ctx.modulus()];
    for k in 1..big_k as u128 {
        let prev = binom_half[k as usize - 1];
        let num = ctx.from_i128(-(2 * k as i128 - 1));
        let den = ctx.inv(2 * k).expect("p odd and p > 2k");
        binom_half.push(ctx.mul(ctx.mul(prev, num), den));
    }

    let out = PadicContext::new(p, n_digits)?;
    let mut mat = PadicMatrix::zero(out, 2 * g, 2 * g);
    for i in 0..2 * g {
        let mut levels: BTreeMap<u32, Level> = BTreeMap::new();
        for k in 0..big_k as usize {
            let s = ((p * (2 * k as u64 + 1) - 1) / 2) as u32;
            let shift_x = p as usize * (i + 1) - 1;
            let mut poly = vec![0u128; shift_x + e_pows[k].len()];
            for (t, &c) in e_pows[k].iter().enumerate() {
                poly[shift_x + t] = ctx.mul(c, binom_half[k]);
            }
            merge(&mut levels, s, poly, 0, &ctx);
        }
        while let Some((&s, _)) = levels.iter().next_back() {
            if s == 0 {
                break;
            }
            let Level { poly, shift } = levels.remove(&s).unwrap();
            let (quot, lowered, e) = curve.lower_pole(&poly, s);
            merge(&mut levels, s - 1, quot, shift, &ctx);
            merge(&mut levels, s - 1, lowered, shift + e, &ctx);
        }
        let Level { poly, shift } = levels.remove(&0).unwrap_or(Level { poly: vec![], shift: 0 });
        let (coords, extra) = curve.lower_degree(poly);
        let total = shift + extra;
        // value = p * coords / p^total
        let col: Vec<u128> = if total <= 1 {
            let f = ctx.pow_p(1 - total);
            coords.iter().map(|&c| ctx.mul(c, f)).collect()
        } else {
            let e = total - 1;
            if m_digits - e < n_digits {
                return Err(FrobeniusError::PrecisionExhausted { needed: n_digits, available: m_digits - e });
            }
            let pe = (p as u128).pow(e);
            if coords.iter().any(|c| c % pe != 0) {
                return Err(FrobeniusError::InvariantViolation(format!(
                    "Frobenius column is not integral (denominator p^{e})"
                )));
            }
            coords.iter().map(|c| c / pe).collect()
        };
        for (r, v) in col.into_iter().enumerate() {
            mat.set(r, i, v % out.modulus());
        }
    }
    let basis = (0..2 * g)
        .map(|i| BasisVector {
            label: vec![i as u32],
            level: (i < g) as u32,
            pole_order: Some(if i < g { 1 } else { 2 }),
        })
        .collect();
    Ok(FrobeniusApprox {
        matrix: mat,
        p,
        precision: n_digits,
        r: 0,
        kind: CohomologyKind::CurveH1,
        variable_order: vec!["x".into()],
        basis,
        polarization_slot: None,
        provenance: Provenance::Computed,
        truncation: Some(big_k),
    })
}
