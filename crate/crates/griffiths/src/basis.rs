use polyring::Monomial;
use serde::{Deserialize, Serialize};

use crate::echelon::leading_echelon_mod_p;
use crate::input::{HypersurfaceInput, Mode};
use crate::GriffithsError;

/// Monomial basis of primitive H^n(X) as classes x^beta Omega / f^l,
/// ordered lowest degree (deepest Hodge filtration) first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GriffithsBasis {
    pub mode: Mode,
    pub n: usize,
    pub d: u32,
    pub variable_order: Vec<String>,
    /// Numerator monomials. In hyperelliptic mode these are x^i for the
    /// forms x^i dx / y.
    pub monomials: Vec<Monomial>,
    pub pole_orders: Vec<u32>,
    /// `filtration_cuts[j]` is the dimension of F^j of primitive cohomology,
    /// for j = 0..=n; the first `filtration_cuts[j]` basis vectors span it.
    pub filtration_cuts: Vec<usize>,
    /// Index of h^{n/2} when the full H^n is used in even dimension; it sits
    /// after every primitive vector.
    pub polarization_slot: Option<usize>,
}

impl GriffithsBasis {
    pub fn primitive_dim(&self) -> usize {
        self.monomials.len()
    }

    /// Dimension including the polarization class.
    pub fn dim(&self) -> usize {
        self.monomials.len() + self.polarization_slot.is_some() as usize
    }

    /// Primitive Hodge numbers h^{j, n-j}, listed for j = n down to 0 (the
    /// order in which blocks appear).
    pub fn block_sizes(&self) -> Vec<usize> {
        let c = &self.filtration_cuts;
        (0..=self.n).rev().map(|j| c[j] - c.get(j + 1).copied().unwrap_or(0)).collect()
    }

    /// Size of F^j in the full cohomology (polarization class included: it
    /// lies in F^{n/2}).
    pub fn filtration_dim(&self, j: usize) -> usize {
        let prim = self.filtration_cuts.get(j).copied().unwrap_or(0);
        match self.polarization_slot {
            Some(_) if j <= self.n / 2 => prim + 1,
            _ => prim,
        }
    }

    pub fn manifest(&self) -> BasisManifest {
        BasisManifest {
            mode: self.mode,
            variable_order: self.variable_order.clone(),
            monomials: self.monomials.iter().map(|m| m.exponents.clone()).collect(),
            pole_orders: self.pole_orders.clone(),
            filtration_cuts: self.filtration_cuts.clone(),
            polarization_slot: self.polarization_slot,
        }
    }
}

/// Serializable record of a basis, carried next to every Frobenius matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisManifest {
    pub mode: Mode,
    pub variable_order: Vec<String>,
    pub monomials: Vec<Vec<u32>>,
    pub pole_orders: Vec<u32>,
    pub filtration_cuts: Vec<usize>,
    pub polarization_slot: Option<usize>,
}

/// Builds the basis from the standard monomials of the Jacobian ideal mod p
/// in degrees (n+1-j)d - n - 2. The polarization slot is included for
/// hypersurfaces and omitted for curves.
pub fn griffiths_basis(input: &HypersurfaceInput, p: u64) -> Result<GriffithsBasis, GriffithsError> {
    if input.mode == Mode::JacobianHyperelliptic {
        return Ok(hyperelliptic_basis(input));
    }
    let f = input.graded()?;
    let grad = f.gradient()?;
    let (n, d) = (input.n, input.d);
    let mut monomials = Vec::new();
    let mut pole_orders = Vec::new();
    let mut cuts = vec![0; n + 1];
    for j in (0..=n).rev() {
        let l = (n + 1 - j) as u32;
        let deg = l as i64 * d as i64 - n as i64 - 2;
        if deg >= 0 {
            let ech = leading_echelon_mod_p(&grad, deg as u32, p);
            for &s in &ech.standard {
                monomials.push(ech.index.get(s).clone());
                pole_orders.push(l);
            }
        }
        cuts[j] = monomials.len();
    }
    let polarization_slot = match input.mode {
        Mode::Hypersurface => Some(monomials.len()),
        _ => None,
    };
    Ok(GriffithsBasis {
        mode: input.mode,
        n,
        d,
        variable_order: input.variable_order(),
        monomials,
        pole_orders,
        filtration_cuts: cuts,
        polarization_slot,
    })
}

/// x^i dx / y for i < 2g; the first g span F^1.
fn hyperelliptic_basis(input: &HypersurfaceInput) -> GriffithsBasis {
    let g = input.genus().unwrap_or(0);
    GriffithsBasis {
        mode: input.mode,
        n: 1,
        d: input.d,
        variable_order: input.variable_order(),
        monomials: (0..2 * g as u32).map(|i| Monomial::new(vec![i])).collect(),
        pole_orders: (0..2 * g).map(|i| if i < g { 1 } else { 2 }).collect(),
        filtration_cuts: vec![2 * g, g],
        polarization_slot: None,
    }
}
