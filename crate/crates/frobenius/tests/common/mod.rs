//! Brute-force point counts over F_p and F_{p^2}.

#![allow(dead_code)]

use polyring::GradedPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

/// F_p[s] / (s^2 - nr) with nr a non-residue.
pub struct Field2 {
    pub p: u64,
    pub nr: u64,
}

impl Field2 {
    pub fn new(p: u64) -> Self {
        let nr = (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1).unwrap();
        Field2 { p, nr }
    }
    pub fn elements(&self) -> impl Iterator<Item = Fp2> + '_ {
        (0..self.p).flat_map(move |a| (0..self.p).map(move |b| Fp2 { a, b }))
    }
    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }
    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 { a: (x.a * y.a + self.nr * (x.b * y.b % p)) % p, b: (x.a * y.b + x.b * y.a) % p }
    }
    pub fn scalar(&self, c: i128, x: Fp2) -> Fp2 {
        let c = c.rem_euclid(self.p as i128) as u64;
        Fp2 { a: c * x.a % self.p, b: c * x.b % self.p }
    }
    pub fn pow(&self, x: Fp2, e: u32) -> Fp2 {
        let mut r = Fp2 { a: 1, b: 0 };
        for _ in 0..e {
            r = self.mul(r, x);
        }
        r
    }
    pub fn eval(&self, f: &GradedPoly, pt: &[Fp2]) -> Fp2 {
        let mut acc = Fp2 { a: 0, b: 0 };
        for (m, c) in f.terms() {
            let mut t = Fp2 { a: 1, b: 0 };
            for (x, &e) in pt.iter().zip(&m.exponents) {
                t = self.mul(t, self.pow(*x, e));
            }
            acc = self.add(acc, self.scalar(c, t));
        }
        acc
    }
    /// Number of y with y^2 = v, indexed by (a, b).
    pub fn square_counts(&self) -> Vec<u32> {
        let mut out = vec![0; (self.p * self.p) as usize];
        for y in self.elements() {
            let s = self.mul(y, y);
            out[(s.a * self.p + s.b) as usize] += 1;
        }
        out
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Points of a plane curve over F_p.
pub fn plane_points(f: &GradedPoly, p: u64) -> u64 {
    let mut n = 0;
    for y in 0..p {
        for z in 0..p {
            n += (f.eval_mod(&[1, y, z], p) == 0) as u64;
        }
    }
    for z in 0..p {
        n += (f.eval_mod(&[0, 1, z], p) == 0) as u64;
    }
    n + (f.eval_mod(&[0, 0, 1], p) == 0) as u64
}

/// Points of a plane curve over F_{p^2}.
pub fn plane_points_2(f: &GradedPoly, k: &Field2) -> u64 {
    let (zero, one) = (Fp2 { a: 0, b: 0 }, Fp2 { a: 1, b: 0 });
    let els: Vec<Fp2> = k.elements().collect();
    let mut n = 0;
    for &y in &els {
        for &z in &els {
            n += (k.eval(f, &[one, y, z]) == zero) as u64;
        }
    }
    for &z in &els {
        n += (k.eval(f, &[zero, one, z]) == zero) as u64;
    }
    n + (k.eval(f, &[zero, zero, one]) == zero) as u64
}

/// Points of y^2 = Q(x), deg Q odd, over F_p and F_{p^2} (one point at infinity).
pub fn hyperelliptic_points(q: &[i128], p: u64) -> (u64, u64) {
    let mut sq = vec![0u64; p as usize];
    for y in 0..p {
        sq[(y * y % p) as usize] += 1;
    }
    let n1 = (0..p)
        .map(|x| {
            let v = q.iter().rev().fold(0i128, |acc, &c| (acc * x as i128 + c).rem_euclid(p as i128));
            sq[v as usize]
        })
        .sum::<u64>()
        + 1;
    let k = Field2::new(p);
    let sq2 = k.square_counts();
    let mut n2 = 1;
    for x in k.elements() {
        let mut v = Fp2 { a: 0, b: 0 };
        for &c in q.iter().rev() {
            v = k.add(k.mul(v, x), k.scalar(c, Fp2 { a: 1, b: 0 }));
        }
        n2 += sq2[(v.a * p + v.b) as usize] as u64;
    }
    (n1, n2)
}

/// c_1, c_2 of the reciprocal characteristic polynomial from N_1, N_2.
pub fn low_coefficients(p: u64, n1: u64, n2: u64) -> (i128, i128) {
    let s1 = p as i128 + 1 - n1 as i128;
    let s2 = (p * p) as i128 + 1 - n2 as i128;
    (-s1, (s1 * s1 - s2) / 2)
}
