use polyring::{parse_poly, GradedPoly, Ring, SparsePoly};
use serde::{Deserialize, Serialize};

use crate::echelon::{inv_mod, leading_echelon_mod_p};
use crate::GriffithsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Even-dimensional hypersurface in P^{n+1}; works on H^n.
    Hypersurface,
    /// Smooth plane curve; works on H^1 and its tensor constructions.
    JacobianPlaneCurve,
    /// y^2 = f(x) with f squarefree of odd degree.
    JacobianHyperelliptic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceInput {
    pub f: SparsePoly,
    /// Dimension of X.
    pub n: usize,
    /// Degree of f (of the univariate f in hyperelliptic mode).
    pub d: u32,
    pub mode: Mode,
}

impl HypersurfaceInput {
    pub fn new(f: SparsePoly, mode: Mode) -> Result<Self, GriffithsError> {
        match mode {
            Mode::Hypersurface | Mode::JacobianPlaneCurve => {
                if !f.is_homogeneous() || f.is_zero() {
                    return Err(GriffithsError::BadInput(
                        "polynomial must be homogeneous and nonzero".into(),
                    ));
                }
                let nvars = f.vars.len();
                let d = f.total_degree().unwrap_or(0);
                if d < 2 {
                    return Err(GriffithsError::BadInput(format!("degree {d} is too small")));
                }
                let n = match mode {
                    Mode::JacobianPlaneCurve if nvars == 3 => 1,
                    Mode::JacobianPlaneCurve => {
                        return Err(GriffithsError::BadInput(format!(
                            "a plane curve needs 3 variables, found {nvars}"
                        )))
                    }
                    _ if nvars >= 4 && nvars % 2 == 0 => nvars - 2,
                    _ => {
                        return Err(GriffithsError::BadInput(format!(
                            "hypersurface mode needs an even-dimensional X, found {nvars} variables"
                        )))
                    }
                };
                Ok(HypersurfaceInput { f, n, d, mode })
            }
            Mode::JacobianHyperelliptic => {
                let f = hyperelliptic_rhs(&f)?;
                let d = f.total_degree().unwrap_or(0);
                if d < 3 || d % 2 == 0 {
                    return Err(GriffithsError::BadInput(format!(
                        "y^2 = f(x) needs f of odd degree >= 3, found degree {d}"
                    )));
                }
                Ok(HypersurfaceInput { f, n: 1, d, mode })
            }
        }
    }

    pub fn parse(text: &str, mode: Mode) -> Result<Self, GriffithsError> {
        HypersurfaceInput::new(parse_poly(text)?, mode)
    }

    pub fn nvars(&self) -> usize {
        self.n + 2
    }

    /// The r with Tate classes of weight 2r: n/2 for hypersurfaces, 1 for
    /// the H^2 of a Jacobian.
    pub fn twist(&self) -> u32 {
        match self.mode {
            Mode::Hypersurface => (self.n / 2) as u32,
            _ => 1,
        }
    }

    pub fn genus(&self) -> Option<usize> {
        match self.mode {
            Mode::Hypersurface => None,
            Mode::JacobianPlaneCurve => Some(((self.d - 1) * (self.d - 2) / 2) as usize),
            Mode::JacobianHyperelliptic => Some(((self.d - 1) / 2) as usize),
        }
    }

    pub fn variable_order(&self) -> Vec<String> {
        self.f.vars.clone()
    }

    pub fn graded(&self) -> Result<GradedPoly, GriffithsError> {
        Ok(self.f.to_graded(Ring::Integers)?)
    }

    /// Coefficients of f(x) from the constant term up (hyperelliptic mode).
    pub fn hyperelliptic_coeffs(&self) -> Result<Vec<i128>, GriffithsError> {
        Ok(self.f.univariate_coeffs()?)
    }
}

/// Accepts either f(x) or y^2 - f(x) (any nonzero multiple is rejected).
fn hyperelliptic_rhs(f: &SparsePoly) -> Result<SparsePoly, GriffithsError> {
    if f.vars.len() <= 1 {
        return Ok(f.clone());
    }
    let bad = || GriffithsError::BadInput("expected f(x) or y^2 - f(x)".into());
    if f.vars.len() != 2 {
        return Err(bad());
    }
    let yi = f.vars.iter().position(|v| v == "y").ok_or_else(bad)?;
    let xi = 1 - yi;
    let mut y2 = None;
    let mut rhs = SparsePoly { vars: vec![f.vars[xi].clone()], terms: Default::default() };
    for (e, &c) in &f.terms {
        match e[yi] {
            0 => {
                rhs.terms.insert(vec![e[xi]], -c);
            }
            2 if e[xi] == 0 => y2 = Some(c),
            _ => return Err(bad()),
        }
    }
    match y2 {
        Some(1) => Ok(rhs),
        Some(-1) => Ok(rhs.neg()),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Rejection {
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("characteristic {p} must exceed {bound}")]
    BadCharacteristic { p: u64, bound: u64 },
    #[error("{p} divides the degree {d}")]
    DividesDegree { p: u64, d: u32 },
    #[error("reduction mod {p} is singular")]
    SingularReduction { p: u64 },
}

/// Checks the conditions under which the integral cohomology computations
/// are valid at p.
pub fn good_prime_check(input: &HypersurfaceInput, p: u64, char_bound: u64) -> Result<(), Rejection> {
    if !padic_core::is_prime(p) {
        return Err(Rejection::NotPrime { p });
    }
    let r = input.twist() as u64;
    let bound = (2 * r + 6).max(input.n as u64 + 1).max(char_bound);
    if input.mode == Mode::JacobianHyperelliptic {
        if p == 2 || p <= bound {
            return Err(Rejection::BadCharacteristic { p, bound });
        }
        let coeffs = input.hyperelliptic_coeffs().map_err(|_| Rejection::SingularReduction { p })?;
        if !squarefree_mod_p(&coeffs, p) {
            return Err(Rejection::SingularReduction { p });
        }
        return Ok(());
    }
    if p <= bound {
        return Err(Rejection::BadCharacteristic { p, bound });
    }
    if input.d as u64 % p == 0 {
        return Err(Rejection::DividesDegree { p, d: input.d });
    }
    let f = input.graded().map_err(|_| Rejection::SingularReduction { p })?;
    if !jacobian_ring_vanishes_mod_p(&f, p) {
        return Err(Rejection::SingularReduction { p });
    }
    Ok(())
}

/// Smoothness test: the partials of f generate everything in degree
/// (n+2)(d-2)+1 over F_p.
pub fn jacobian_ring_vanishes_mod_p(f: &GradedPoly, p: u64) -> bool {
    let nvars = f.nvars();
    let d = f.degree();
    let t = nvars as u32 * (d - 2) + 1;
    let Ok(grad) = f.gradient() else { return false };
    let ech = leading_echelon_mod_p(&grad, t, p);
    ech.standard.is_empty()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let lb = inv_mod(*b.last().unwrap(), p);
    while a.len() >= b.len() {
        let c = (*a.last().unwrap() as u128 * lb as u128 % p as u128) as u64;
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - (c as u128 * bi as u128 % p as u128) as u64) % p;
        }
        trim(&mut a);
    }
    a
}

/// True when f mod p keeps its degree and has no repeated factor.
pub fn squarefree_mod_p(coeffs: &[i128], p: u64) -> bool {
    let mut f: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(p as i128) as u64).collect();
    let deg = coeffs.len() - 1;
    trim(&mut f);
    if f.len() != deg + 1 {
        return false;
    }
    let mut g: Vec<u64> = (1..f.len()).map(|i| (f[i] as u128 * i as u128 % p as u128) as u64).collect();
    trim(&mut g);
    if g.is_empty() {
        return false;
    }
    let (mut a, mut b) = (f, g);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}
