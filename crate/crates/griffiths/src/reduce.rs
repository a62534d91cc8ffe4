//! Pole-order reduction of x^alpha Omega / f^m to the Griffiths basis.
//!
//! Large pole orders are handled by a controlled walk: the numerator is kept
//! as x^w * h with h of fixed degree D = (n+1)d - n - 1 and each step trades
//! a degree-d factor of x^w for one pole order, using one of a handful of
//! precomputed D x D maps. States with equal w are merged. From pole order
//! n+2 down, dense matrices map numerators straight to basis coordinates.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use padic_core::PadicContext;
use polyring::{GradedPoly, MonomialIndex};
use rayon::prelude::*;

use crate::basis::GriffithsBasis;
use crate::division::DivisionTable;
use crate::input::{HypersurfaceInput, Mode};
use crate::GriffithsError;

/// c * x^exps * Omega / f^pole with c a residue mod p^M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub exps: Vec<u32>,
    pub pole: u32,
    pub coeff: u128,
}

/// coords / p^shift, coords taken mod p^M; the value is known mod p^(M - shift).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedClass {
    pub coords: Vec<u128>,
    pub shift: u32,
}

impl ReducedClass {
    /// Coordinates as integral residues mod p^(M - shift).
    pub fn integral(&self, ctx: &PadicContext) -> Result<Vec<u128>, GriffithsError> {
        let ps = (ctx.p() as u128).pow(self.shift);
        if self.coords.iter().any(|c| c % ps != 0) {
            return Err(GriffithsError::NotIntegral { shift: self.shift });
        }
        let m = ctx.modulus() / ps;
        Ok(self.coords.iter().map(|c| (c / ps) % m).collect())
    }
}

#[derive(Clone)]
struct State {
    h: Vec<u128>,
    shift: u32,
}

struct StepMaps {
    /// Column-major D x D.
    c: Vec<u128>,
    b: Vec<(usize, Vec<u128>)>,
}

pub struct Reducer {
    ctx: PadicContext,
    n: usize,
    d: u32,
    nvars: usize,
    big_d: u32,
    dim: usize,
    rd: MonomialIndex,
    vs: MonomialIndex,
    tables: BTreeMap<u32, DivisionTable>,
    /// dense[m] maps R_{dm-n-2} to basis coordinates, row-major.
    dense: Vec<Option<(MonomialIndex, Vec<Vec<u128>>)>>,
    steps: Vec<OnceLock<StepMaps>>,
}

impl Reducer {
    /// `ctx` sets the working precision p^M.
    pub fn new(
        input: &HypersurfaceInput,
        basis: &GriffithsBasis,
        ctx: PadicContext,
    ) -> Result<Self, GriffithsError> {
        if input.mode == Mode::JacobianHyperelliptic {
            return Err(GriffithsError::BadInput("pole reduction needs a homogeneous f".into()));
        }
        let (n, d, nvars) = (input.n, input.d, input.nvars());
        if (d as usize) < nvars {
            return Err(GriffithsError::BadInput(format!(
                "controlled reduction needs degree >= number of variables ({d} < {nvars})"
            )));
        }
        let grad = input.graded()?.gradient()?;
        let big_d = (n as u32 + 1) * d - n as u32 - 1;
        let basis_pos: HashMap<Vec<u32>, usize> =
            basis.monomials.iter().enumerate().map(|(i, m)| (m.exponents.clone(), i)).collect();
        let dim = basis.primitive_dim();

        let mut dense: Vec<Option<(MonomialIndex, Vec<Vec<u128>>)>> = vec![None; n + 3];
        for m in 1..=(n as u32 + 2) {
            let t = d as i64 * m as i64 - n as i64 - 2;
            if t < 0 {
                continue;
            }
            let t = t as u32;
            let tab = DivisionTable::build(&grad, t, &ctx)?;
            let lower_inv = ctx.inv(m as u128 - 1);
            let mut rows = Vec::with_capacity(tab.target.len());
            for k in 0..tab.target.len() {
                let mut row = vec![0u128; dim];
                for (j, &s) in tab.standard.iter().enumerate() {
                    let c = tab.remainder(k)[j];
                    if c == 0 {
                        continue;
                    }
                    let pos = basis_pos.get(&tab.target.get(s).exponents).ok_or_else(|| {
                        GriffithsError::BadInput("basis does not match the Jacobian ring".into())
                    })?;
                    row[*pos] = ctx.add(row[*pos], c);
                }
                if let (Some(inv), Some((lower_idx, lower))) = (lower_inv, &dense[m as usize - 1]) {
                    // sum_i d/dx_i c_i, then one pole order down.
                    let mut g = vec![0u128; lower_idx.len()];
                    for i in 0..nvars {
                        for (si, &c) in tab.quotient(k, i).iter().enumerate() {
                            let nu = &tab.source.get(si).exponents;
                            if c == 0 || nu[i] == 0 {
                                continue;
                            }
                            let mut e = nu.clone();
                            e[i] -= 1;
                            let j = lower_idx.index_of(&e).expect("lower degree");
                            g[j] = ctx.add(g[j], ctx.mul(c, nu[i] as u128));
                        }
                    }
                    for (j, &gj) in g.iter().enumerate() {
                        if gj == 0 {
                            continue;
                        }
                        let f = ctx.mul(gj, inv);
                        for (x, &y) in row.iter_mut().zip(&lower[j]) {
                            *x = ctx.add(*x, ctx.mul(f, y));
                        }
                    }
                }
                rows.push(row);
            }
            dense[m as usize] = Some((tab.target, rows));
        }

        let mut tables = BTreeMap::new();
        for a in 1..=nvars as u32 {
            let t = big_d + d - a;
            let tab = DivisionTable::build(&grad, t, &ctx)?;
            debug_assert!(tab.standard.is_empty());
            tables.insert(t, tab);
        }
        let vs = MonomialIndex::new(nvars, d);
        let steps = (0..vs.len()).map(|_| OnceLock::new()).collect();
        Ok(Reducer {
            ctx,
            n,
            d,
            nvars,
            big_d,
            dim,
            rd: MonomialIndex::new(nvars, big_d),
            vs,
            tables,
            dense,
            steps,
        })
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn step_maps(&self, vi: usize) -> &StepMaps {
        self.steps[vi].get_or_init(|| self.build_step(vi))
    }

    fn build_step(&self, vi: usize) -> StepMaps {
        let ctx = &self.ctx;
        let v = &self.vs.get(vi).exponents;
        let a_set: Vec<usize> = (0..self.nvars).filter(|&i| v[i] > 0).collect();
        let t = self.big_d + self.d - a_set.len() as u32;
        let tab = &self.tables[&t];
        let dd = self.rd.len();
        let mut c = vec![0u128; dd * dd];
        let mut b: Vec<(usize, Vec<u128>)> = a_set.iter().map(|&i| (i, vec![0u128; dd * dd])).collect();
        for mu in 0..dd {
            let mut target: Vec<u32> = self.rd.get(mu).exponents.clone();
            for i in 0..self.nvars {
                target[i] += v[i] - (v[i] > 0) as u32;
            }
            let k = tab.target.index_of(&target).expect("target degree");
            for i in 0..self.nvars {
                let in_a = v[i] > 0;
                for (si, &q) in tab.quotient(k, i).iter().enumerate() {
                    if q == 0 {
                        continue;
                    }
                    let nu = &tab.source.get(si).exponents;
                    if !in_a && nu[i] == 0 {
                        continue;
                    }
                    let mut e = nu.clone();
                    for &j in &a_set {
                        e[j] += 1;
                    }
                    e[i] -= 1;
                    let r = self.rd.index_of(&e).expect("degree D");
                    if nu[i] > 0 {
                        c[mu * dd + r] = ctx.add(c[mu * dd + r], ctx.mul(q, nu[i] as u128));
                    }
                    if in_a {
                        let bi = &mut b.iter_mut().find(|(j, _)| *j == i).unwrap().1;
                        bi[mu * dd + r] = ctx.add(bi[mu * dd + r], q);
                    }
                }
            }
        }
        StepMaps { c, b }
    }

    /// The degree-d monomial removed from x^w at the next step: one of each
    /// variable present, then extra powers on the largest remaining exponents.
    fn choose_step(&self, w: &[u32]) -> Vec<u32> {
        let mut v: Vec<u32> = w.iter().map(|&x| (x > 0) as u32).collect();
        let mut left = self.d - v.iter().sum::<u32>();
        while left > 0 {
            let i = (0..self.nvars).max_by_key(|&i| (w[i] - v[i], std::cmp::Reverse(i))).unwrap();
            v[i] += 1;
            left -= 1;
        }
        v
    }

    fn apply_step(&self, w: &[u32], st: &State, m: u32) -> (Vec<u32>, State) {
        let ctx = &self.ctx;
        let v = self.choose_step(w);
        let maps = self.step_maps(self.vs.index_of(&v).expect("degree d"));
        let dd = self.rd.len();
        let weights: Vec<u128> =
            maps.b.iter().map(|(i, _)| (w[*i] - v[*i] + 1) as u128 % ctx.modulus()).collect();
        let mut out = vec![0u128; dd];
        for (mu, &hm) in st.h.iter().enumerate() {
            if hm == 0 {
                continue;
            }
            let col = &maps.c[mu * dd..(mu + 1) * dd];
            for (x, &y) in out.iter_mut().zip(col) {
                if y != 0 {
                    *x = ctx.add(*x, ctx.mul(hm, y));
                }
            }
            for ((_, bi), &wt) in maps.b.iter().zip(&weights) {
                let f = ctx.mul(hm, wt);
                let col = &bi[mu * dd..(mu + 1) * dd];
                for (x, &y) in out.iter_mut().zip(col) {
                    if y != 0 {
                        *x = ctx.add(*x, ctx.mul(f, y));
                    }
                }
            }
        }
        let (e, u) = ctx.split(m as u128 - 1);
        let uinv = ctx.inv(u).expect("unit part");
        for x in out.iter_mut() {
            *x = ctx.mul(*x, uinv);
        }
        let w2: Vec<u32> = w.iter().zip(&v).map(|(a, b)| a - b).collect();
        (w2, State { h: out, shift: st.shift + e })
    }

    fn merge(&self, into: &mut State, other: State) {
        let ctx = &self.ctx;
        if into.shift >= other.shift {
            let f = ctx.pow_p(into.shift - other.shift);
            for (x, y) in into.h.iter_mut().zip(other.h) {
                *x = ctx.add(*x, ctx.mul(f, y));
            }
        } else {
            let f = ctx.pow_p(other.shift - into.shift);
            for (x, y) in into.h.iter_mut().zip(other.h) {
                *x = ctx.add(ctx.mul(*x, f), y);
            }
            into.shift = other.shift;
        }
    }

    /// Splits x^alpha as x^w * x^gamma with |gamma| = D taken from the
    /// largest exponents.
    fn split(&self, alpha: &[u32]) -> (Vec<u32>, usize) {
        let mut w = alpha.to_vec();
        let mut gamma = vec![0u32; self.nvars];
        for _ in 0..self.big_d {
            let i = (0..self.nvars).max_by_key(|&i| (w[i], std::cmp::Reverse(i))).unwrap();
            w[i] -= 1;
            gamma[i] += 1;
        }
        (w, self.rd.index_of(&gamma).expect("degree D"))
    }

    fn dense_row(&self, m: u32, exps: &[u32]) -> Result<&[u128], GriffithsError> {
        let bad = || GriffithsError::BadInput(format!("numerator degree does not match pole order {m}"));
        let (idx, rows) = self.dense.get(m as usize).and_then(|x| x.as_ref()).ok_or_else(bad)?;
        let k = idx.index_of(exps).ok_or_else(bad)?;
        Ok(&rows[k])
    }

    /// Reduces a sum of terms. Each term must satisfy |exps| = d*pole - n - 2.
    pub fn reduce_terms(&self, terms: &[Term]) -> Result<ReducedClass, GriffithsError> {
        let ctx = &self.ctx;
        let low = self.n as u32 + 2;
        let mut result = State { h: vec![0u128; self.dim], shift: 0 };
        let mut by_pole: BTreeMap<u32, Vec<&Term>> = BTreeMap::new();
        for t in terms {
            if t.exps.len() != self.nvars
                || t.pole == 0
                || t.exps.iter().sum::<u32>() as i64 != self.d as i64 * t.pole as i64 - self.n as i64 - 2
            {
                return Err(GriffithsError::BadInput(format!(
                    "term {:?} / f^{} has the wrong degree",
                    t.exps, t.pole
                )));
            }
            if t.pole <= low {
                let row = self.dense_row(t.pole, &t.exps)?;
                for (x, &y) in result.h.iter_mut().zip(row) {
                    *x = ctx.add(*x, ctx.mul(t.coeff, y));
                }
            } else {
                by_pole.entry(t.pole).or_default().push(t);
            }
        }
        let top = match by_pole.keys().next_back() {
            Some(&m) => m,
            None => return Ok(ReducedClass { coords: result.h, shift: 0 }),
        };
        let dd = self.rd.len();
        let mut cur: HashMap<Vec<u32>, State> = HashMap::new();
        for m in (low + 1..=top).rev() {
            for t in by_pole.get(&m).into_iter().flatten() {
                let (w, g) = self.split(&t.exps);
                let mut h = vec![0u128; dd];
                h[g] = t.coeff;
                let st = State { h, shift: 0 };
                match cur.get_mut(&w) {
                    Some(s) => self.merge(s, st),
                    None => {
                        cur.insert(w, st);
                    }
                }
            }
            let stepped: Vec<(Vec<u32>, State)> =
                cur.par_iter().map(|(w, st)| self.apply_step(w, st, m)).collect();
            let mut next: HashMap<Vec<u32>, State> = HashMap::with_capacity(stepped.len());
            for (w, st) in stepped {
                match next.get_mut(&w) {
                    Some(s) => self.merge(s, st),
                    None => {
                        next.insert(w, st);
                    }
                }
            }
            cur = next;
        }
        let (idx, rows) = self.dense[low as usize].as_ref().expect("pole n+2 is nonempty");
        for (w, st) in cur {
            let mut acc = vec![0u128; self.dim];
            for (mu, &hm) in st.h.iter().enumerate() {
                if hm == 0 {
                    continue;
                }
                let e: Vec<u32> = w.iter().zip(&self.rd.get(mu).exponents).map(|(a, b)| a + b).collect();
                let row = &rows[idx.index_of(&e).expect("degree of pole n+2")];
                for (x, &y) in acc.iter_mut().zip(row) {
                    *x = ctx.add(*x, ctx.mul(hm, y));
                }
            }
            self.merge(&mut result, State { h: acc, shift: st.shift });
        }
        Ok(ReducedClass { coords: result.h, shift: result.shift })
    }
}

/// Reduces numerator * Omega / f^m to basis coordinates over `ctx`.
pub fn griffiths_dwork_reduce(
    input: &HypersurfaceInput,
    basis: &GriffithsBasis,
    numerator: &GradedPoly,
    m: u32,
    ctx: PadicContext,
) -> Result<ReducedClass, GriffithsError> {
    let r = Reducer::new(input, basis, ctx)?;
    let terms: Vec<Term> = numerator
        .terms()
        .map(|(mon, c)| Term { exps: mon.exponents.clone(), pole: m, coeff: ctx.from_i128(c) })
        .collect();
    r.reduce_terms(&terms)
}
