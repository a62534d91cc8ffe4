use num_bigint::BigInt;
use num_integer::Integer;

use crate::intpoly::{cyclotomic, div_exact_monic, euler_phi, format_poly, mul, IntPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactor {
    pub i: u64,
    pub phi: IntPoly,
    pub gamma: u32,
}

impl CyclotomicFactor {
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Tate-space dimension contributed by this factor.
    pub fn dim(&self) -> usize {
        self.gamma as usize * self.degree()
    }

    pub fn label(&self) -> String {
        format_poly(&self.phi, "t")
    }
}

/// chi = h * prod Phi_i^gamma_i with no root of unity among the roots of h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicSplit {
    /// Ascending i, only gamma_i > 0.
    pub factors: Vec<CyclotomicFactor>,
    pub h: IntPoly,
    /// lcm of the i (1 when there are no factors).
    pub u: u64,
    /// Largest deg Phi_i (0 when there are no factors).
    pub v: usize,
}

impl CyclotomicSplit {
    pub fn reassemble(&self) -> IntPoly {
        let mut out = self.h.clone();
        for f in &self.factors {
            for _ in 0..f.gamma {
                out = mul(&out, &f.phi);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(CyclotomicFactor::dim).sum()
    }
}

/// Trial division by every Phi_i with phi(i) <= deg chi. Since phi(i) >=
/// sqrt(i / 2), no i beyond 2 deg^2 can qualify.
pub fn cyclotomic_split(chi: &[BigInt]) -> CyclotomicSplit {
    let mut h: IntPoly = chi.to_vec();
    let deg = h.len().saturating_sub(1) as u64;
    let mut factors = Vec::new();
    for i in 1..=2 * deg * deg + 2 {
        let d = euler_phi(i);
        if d > (h.len().saturating_sub(1)) as u64 {
            continue;
        }
        let phi = cyclotomic(i);
        let mut gamma = 0;
        while h.len() > d as usize {
            match div_exact_monic(&h, &phi) {
                Some(q) => {
                    h = q;
                    gamma += 1;
                }
                None => break,
            }
        }
        if gamma > 0 {
            factors.push(CyclotomicFactor { i, phi, gamma });
        }
    }
    let u = factors.iter().fold(1u64, |acc, f| acc.lcm(&f.i));
    let v = factors.iter().map(CyclotomicFactor::degree).max().unwrap_or(0);
    CyclotomicSplit { factors, h, u, v }
}
