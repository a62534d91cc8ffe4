use std::collections::BTreeMap;

use padic_core::PadicContext;

use crate::{Monomial, PolyError};

/// Coefficient ring of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Integers,
    Residues(PadicContext),
}

impl Ring {
    fn normalize(&self, c: i128) -> i128 {
        match self {
            Ring::Integers => c,
            Ring::Residues(ctx) => ctx.from_i128(c) as i128,
        }
    }

    fn add(&self, a: i128, b: i128) -> Result<i128, PolyError> {
        match self {
            Ring::Integers => a.checked_add(b).ok_or(PolyError::Overflow),
            Ring::Residues(ctx) => Ok(ctx.add(a as u128, b as u128) as i128),
        }
    }

    fn mul(&self, a: i128, b: i128) -> Result<i128, PolyError> {
        match self {
            Ring::Integers => a.checked_mul(b).ok_or(PolyError::Overflow),
            Ring::Residues(ctx) => Ok(ctx.mul(a as u128, b as u128) as i128),
        }
    }
}

/// A homogeneous polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    nvars: usize,
    degree: u32,
    ring: Ring,
    terms: BTreeMap<Monomial, i128>,
}

impl GradedPoly {
    pub fn zero(nvars: usize, degree: u32, ring: Ring) -> Self {
        GradedPoly { nvars, degree, ring, terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: i128, ring: Ring) -> Self {
        let mut p = GradedPoly::zero(m.nvars(), m.degree(), ring);
        let c = ring.normalize(c);
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, degree: u32, ring: Ring, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, i128)>,
    {
        let mut p = GradedPoly::zero(nvars, degree, ring);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::VariableCount { expected: nvars, found: m.nvars() });
            }
            if m.degree() != degree {
                return Err(PolyError::NotHomogeneous);
            }
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: i128) -> Result<(), PolyError> {
        let c = self.ring.normalize(c);
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = self.ring.add(*entry, c)?;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i128)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> i128 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableCount { expected: self.nvars, found: other.nvars });
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = match self.ring {
                Ring::Integers => -*c,
                Ring::Residues(ctx) => ctx.neg(*c as u128) as i128,
            };
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: i128) -> Result<Self, PolyError> {
        let s = self.ring.normalize(s);
        let mut out = GradedPoly::zero(self.nvars, self.degree, self.ring);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), self.ring.mul(c, s)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = GradedPoly::zero(self.nvars, self.degree + other.degree, self.ring);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.mul(b), self.ring.mul(ca, cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self, PolyError> {
        let mut out = GradedPoly::monomial(Monomial::one(self.nvars), 1, self.ring);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Partial derivative in the i-th variable.
    pub fn derivative(&self, i: usize) -> Result<Self, PolyError> {
        let mut out = GradedPoly::zero(self.nvars, self.degree.saturating_sub(1), self.ring);
        for (m, c) in self.terms() {
            let e = m.exponents[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents.clone();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), self.ring.mul(c, e as i128)?)?;
        }
        Ok(out)
    }

    /// All partial derivatives, in variable order.
    pub fn gradient(&self) -> Result<Vec<Self>, PolyError> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn to_residues(&self, ctx: PadicContext) -> Self {
        let ring = Ring::Residues(ctx);
        let mut out = GradedPoly::zero(self.nvars, self.degree, ring);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c).expect("residue arithmetic cannot overflow");
        }
        out
    }

    /// Value at a point of F_q^n, q prime below 2^32.
    pub fn eval_mod(&self, point: &[u64], q: u64) -> u64 {
        let mut acc = 0u64;
        for (m, c) in self.terms() {
            let mut t = c.rem_euclid(q as i128) as u64;
            for (x, &e) in point.iter().zip(&m.exponents) {
                for _ in 0..e {
                    t = t * x % q;
                }
            }
            acc = (acc + t) % q;
        }
        acc
    }
}

/// A polynomial in named variables as read from text, not necessarily
/// homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    pub vars: Vec<String>,
    pub terms: BTreeMap<Vec<u32>, i128>,
}

impl SparsePoly {
    pub fn constant(vars: Vec<String>, c: i128) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; vars.len()], c);
        }
        SparsePoly { vars, terms }
    }

    pub fn variable(vars: Vec<String>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, 1);
        SparsePoly { vars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            let v = out.terms.entry(e.clone()).or_insert(0);
            *v = v.checked_add(c).ok_or(PolyError::Overflow)?;
        }
        out.terms.retain(|_, v| *v != 0);
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        let mut out = SparsePoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let c = ca.checked_mul(cb).ok_or(PolyError::Overflow)?;
                let v = out.terms.entry(e).or_insert(0);
                *v = v.checked_add(c).ok_or(PolyError::Overflow)?;
            }
        }
        out.terms.retain(|_, v| *v != 0);
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self, PolyError> {
        let mut out = SparsePoly::constant(self.vars.clone(), 1);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn to_graded(&self, ring: Ring) -> Result<GradedPoly, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let degree = self.total_degree().unwrap_or(0);
        GradedPoly::from_terms(
            self.vars.len(),
            degree,
            ring,
            self.terms.iter().map(|(e, &c)| (Monomial::new(e.clone()), c)),
        )
    }

    /// Coefficients c_0, c_1, ... of a polynomial in one variable.
    pub fn univariate_coeffs(&self) -> Result<Vec<i128>, PolyError> {
        if self.vars.len() > 1 {
            return Err(PolyError::VariableCount { expected: 1, found: self.vars.len() });
        }
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![0; deg + 1];
        for (e, &c) in &self.terms {
            out[e.first().copied().unwrap_or(0) as usize] = c;
        }
        Ok(out)
    }
}
