//! Conjugated block-diagonal Frobenius matrices whose Tate spaces and
//! obstruction ranks are known exactly over Q.

use frobenius::{BasisVector, CohomologyKind, FrobeniusApprox, Provenance};
use griffiths::{griffiths_basis, HypersurfaceInput, Mode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use obstruction::{
    corank_upper_bound, obstruction_matrix_for_basis, pi_i_matrix, stacked_obstruction, tate_basis,
    BoundMode, ObstructionReport, Workspace,
};
use padic_core::{PadicContext, PadicMatrix};
use proptest::prelude::*;
use zeta::{cyclotomic, CyclotomicFactor, CyclotomicSplit};

const P: i64 = 31;

type Mat = Vec<Vec<BigRational>>;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn mat(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).fold(BigRational::zero(), |s, l| s + &a[i][l] * &b[l][j])).collect())
        .collect()
}

fn rank(a: &Mat) -> usize {
    let mut a = a.clone();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, pr);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn inverse(a: &Mat) -> Mat {
    let n = a.len();
    let mut m: Mat = a
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().cloned().chain((0..n).map(|j| if i == j { q(1) } else { q(0) })).collect())
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !m[i][c].is_zero()).unwrap();
        m.swap(c, pr);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn to_int(a: &Mat) -> Vec<Vec<i128>> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.is_integer());
                    i128::try_from(x.to_integer()).unwrap()
                })
                .collect()
        })
        .collect()
}

/// D = diag(P * rotation by 90 degrees, P, -P, A) with A free of Tate
/// eigenvalues; blocks of T_4, T_1, T_2 are coordinates {0,1}, {2}, {3}.
fn block_diagonal() -> Mat {
    let p = P;
    mat(&[
        vec![0, -p, 0, 0, 0, 0],
        vec![p, 0, 0, 0, 0, 0],
        vec![0, 0, p, 0, 0, 0],
        vec![0, 0, 0, -p, 0, 0],
        vec![0, 0, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 1, 2],
    ])
}

/// Unit lower times unit upper triangular: unimodular.
fn unimodular(lower: &[i64], upper: &[i64]) -> Mat {
    let n = 6;
    let (mut l, mut u) = (vec![vec![0i64; n]; n], vec![vec![0i64; n]; n]);
    let (mut a, mut b) = (lower.iter().cycle(), upper.iter().cycle());
    for i in 0..n {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..i {
            l[i][j] = *a.next().unwrap();
            u[j][i] = *b.next().unwrap();
        }
    }
    mul(&mat(&l), &mat(&u))
}

fn approx(f: &Mat, prec: u32) -> FrobeniusApprox {
    let ctx = PadicContext::new(P as u64, prec).unwrap();
    let levels = [1, 1, 1, 1, 0, 0];
    FrobeniusApprox {
        matrix: PadicMatrix::from_i128_rows(ctx, &to_int(f)),
        p: P as u64,
        precision: prec,
        r: 1,
        kind: CohomologyKind::JacobianH2,
        variable_order: vec![],
        basis: levels
            .iter()
            .enumerate()
            .map(|(i, &l)| BasisVector { label: vec![i as u32], level: l, pole_order: None })
            .collect(),
        polarization_slot: None,
        provenance: Provenance::Imported,
        truncation: None,
    }
}

fn split() -> CyclotomicSplit {
    let factors =
        [1u64, 2, 4].iter().map(|&i| CyclotomicFactor { i, phi: cyclotomic(i), gamma: 1 }).collect();
    CyclotomicSplit { factors, h: vec![BigInt::one()], u: 4, v: 2 }
}

/// Exact dim ker pi_i for each factor (ordered i = 1, 2, 4).
fn exact_dim_l(u: &Mat) -> Vec<usize> {
    let d = block_diagonal();
    let dq: Mat = d.iter().map(|r| r.iter().map(|x| x / q(P)).collect()).collect();
    let proj = mat(&[vec![0, 0, 0, 0, 1, 0], vec![0, 0, 0, 0, 0, 1]]);
    let blocks: [(&[usize], usize); 3] = [(&[2], 1), (&[3], 1), (&[0, 1], 2)];
    blocks
        .iter()
        .map(|&(cols, deg)| {
            let e: Mat =
                (0..6).map(|i| cols.iter().map(|&c| if i == c { q(1) } else { q(0) }).collect()).collect();
            let mut stack: Mat = Vec::new();
            let mut cur = e;
            for _ in 0..deg {
                stack.extend(mul(&proj, &mul(u, &cur)));
                cur = mul(&dq, &cur);
            }
            cols.len() - rank(&stack)
        })
        .collect()
}

fn conjugate(u: &Mat) -> Mat {
    mul(&mul(u, &block_diagonal()), &inverse(u))
}

#[test]
fn identity_frobenius_is_all_tate() {
    let ctx = PadicContext::new(31, 4).unwrap();
    let mut f = approx(&mat(&vec![vec![0; 6]; 6]), 4);
    f.matrix = PadicMatrix::identity(ctx, 6).scale(31);
    let ws = Workspace::new(&f).unwrap();
    let tf = tate_basis(&CyclotomicFactor { i: 1, phi: cyclotomic(1), gamma: 6 }, &ws).unwrap();
    assert_eq!(tf.observed_dim, 6);
    assert_eq!(tf.basis, PadicMatrix::identity(ctx, 6));
}

#[test]
fn unobstructed_tate_space_gives_full_bound() {
    let u = unimodular(&[0], &[0]);
    let f = approx(&conjugate(&u), 6);
    let ws = Workspace::new(&f).unwrap();
    for t in split().factors {
        let tf = tate_basis(&t, &ws).unwrap();
        let pi = pi_i_matrix(&tf.basis, t.degree(), &ws, false).unwrap();
        assert!(pi.is_zero());
    }
    let report = ObstructionReport::compute(&ws, &split(), BoundMode::Galois, false).unwrap();
    assert_eq!(report.bound, report.rank_t);
    assert_eq!(report.rank_t, 4);
}

#[test]
fn tate_basis_spans_the_exact_eigenspace() {
    let u = unimodular(&[1, -2, 0, 3], &[2, 1, -1]);
    let f = approx(&conjugate(&u), 6);
    let ws = Workspace::new(&f).unwrap();
    let t4 = CyclotomicFactor { i: 4, phi: cyclotomic(4), gamma: 1 };
    let tf = tate_basis(&t4, &ws).unwrap();
    assert_eq!(tf.observed_dim, 2);
    let prec = tf.basis.trusted_prec();
    // Phi_4(F/p) p^2 is 2p^2 on T_1 and T_2, so two digits go to pivots.
    assert_eq!(prec, 4);
    let ctx = PadicContext::new(31, prec).unwrap();
    let exact: Vec<Vec<i128>> = to_int(&u).iter().map(|r| r[..2].to_vec()).collect();
    let exact = PadicMatrix::from_i128_rows(ctx, &exact);
    let b = tf.basis.change_precision(prec).unwrap();
    let joint = PadicMatrix::hstack(&[b, exact]).unwrap();
    assert_eq!(padic_core::rank_lower_bound(&joint), 2);
}

#[test]
fn quartic_and_quintic_projections() {
    let k3 = HypersurfaceInput::parse("y^4 - x^3*z + y*z^3 + z*w^3 + w^4", Mode::Hypersurface).unwrap();
    let b = griffiths_basis(&k3, 89).unwrap();
    let ctx = PadicContext::new(89, 1).unwrap();
    let pi = obstruction_matrix_for_basis(&b, ctx);
    assert_eq!((pi.rows(), pi.cols()), (1, 22));
    let k = (0..22).find(|&c| pi.get(0, c) == 1).unwrap();
    assert_eq!(b.monomials[k].degree(), 8);

    let quintic = HypersurfaceInput::parse("x^5 + y^5 + z^5 + w^5", Mode::Hypersurface).unwrap();
    let b = griffiths_basis(&quintic, 11).unwrap();
    let pi = obstruction_matrix_for_basis(&b, PadicContext::new(11, 1).unwrap());
    assert_eq!((pi.rows(), pi.cols()), (4, 53));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bounds_match_exact_oracle(
        lower in prop::collection::vec(-3i64..=3, 15),
        upper in prop::collection::vec(-3i64..=3, 15),
    ) {
        let u = unimodular(&lower, &upper);
        let f = conjugate(&u);
        let expected = exact_dim_l(&u);
        let mut previous = usize::MAX;
        for prec in 3..=7 {
            let a = approx(&f, prec);
            let ws = Workspace::new(&a).unwrap();
            let galois = ObstructionReport::compute(&ws, &split(), BoundMode::Galois, false).unwrap();
            let vanilla = ObstructionReport::compute(&ws, &split(), BoundMode::Vanilla, false).unwrap();
            prop_assert!(galois.bound <= vanilla.bound);
            prop_assert!(galois.bound <= previous, "bound grew with precision");
            previous = galois.bound;
            prop_assert!(!galois.flags.kernel_dim_mismatch);
            let got: Vec<usize> = galois.factors.iter().map(|r| r.dim_l.unwrap()).collect();
            // Never below the truth: the bound is an upper bound.
            for (g, e) in got.iter().zip(&expected) {
                prop_assert!(g >= e);
            }
            if prec == 7 {
                prop_assert_eq!(&got, &expected);
            }
        }
    }

    #[test]
    fn stacked_route_alone_bounds_the_oracle(
        lower in prop::collection::vec(-3i64..=3, 15),
        upper in prop::collection::vec(-3i64..=3, 15),
    ) {
        let u = unimodular(&lower, &upper);
        let f = conjugate(&u);
        let expected = exact_dim_l(&u);
        for prec in 2..=6 {
            let ws = Workspace::new(&approx(&f, prec)).unwrap();
            let got: Vec<usize> = split()
                .factors
                .iter()
                .map(|t| corank_upper_bound(&stacked_obstruction(&[&t.phi], t.degree(), &ws).unwrap()))
                .collect();
            for (g, e) in got.iter().zip(&expected) {
                prop_assert!(g >= e);
            }
            if prec >= 4 {
                prop_assert_eq!(&got, &expected);
            }
        }
    }

    #[test]
    fn kernels_are_kernels(
        lower in prop::collection::vec(-3i64..=3, 15),
        upper in prop::collection::vec(-3i64..=3, 15),
    ) {
        let f = approx(&conjugate(&unimodular(&lower, &upper)), 5);
        let ws = Workspace::new(&f).unwrap();
        for t in split().factors {
            let tf = tate_basis(&t, &ws).unwrap();
            let prec = tf.basis.trusted_prec();
            let frob = ws.frob.change_precision(prec).unwrap();
            let b = tf.basis.change_precision(prec).unwrap();
            // Phi_i homogenized at (F, p) applied to the basis.
            let mut acc = b.scale(0);
            let mut pow = b.clone();
            let deg = t.degree();
            for (k, c) in t.phi.iter().enumerate() {
                let c: i128 = c.try_into().unwrap();
                let w = frob.ctx().mul(frob.ctx().from_i128(c), frob.ctx().pow(31, (deg - k) as u64));
                acc = acc.add(&pow.scale(w)).unwrap();
                pow = frob.mul(&pow).unwrap();
            }
            prop_assert!(acc.is_zero());
        }
    }
}
