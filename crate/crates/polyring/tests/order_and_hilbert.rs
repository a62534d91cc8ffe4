use std::cmp::Ordering;

use padic_core::{rank_lower_bound, PadicContext};
use polyring::{
    grevlex_compare, jacobian_hilbert_coefficient, macaulay_matrix, monomials_of_degree, parse_poly,
    GradedPoly, Monomial, Ring,
};
use proptest::prelude::*;

/// The definition read literally: compare degrees, then look at the last
/// nonzero entry of the difference.
fn literal_grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    if da != db {
        return da.cmp(&db);
    }
    let diff: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect();
    match diff.iter().rev().find(|&&x| x != 0) {
        None => Ordering::Equal,
        Some(&x) if x < 0 => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

fn all_monomials(nvars: usize, max_deg: u32) -> Vec<Monomial> {
    (0..=max_deg).flat_map(|d| monomials_of_degree(nvars, d)).collect()
}

#[test]
fn grevlex_matches_literal_definition_exhaustively() {
    for nvars in 1..=4 {
        let mons = all_monomials(nvars, 6);
        for a in &mons {
            for b in &mons {
                assert_eq!(grevlex_compare(a, b), literal_grevlex(&a.exponents, &b.exponents));
            }
        }
    }
}

#[test]
fn grevlex_is_a_monomial_order() {
    for nvars in 1..=4 {
        let mons = all_monomials(nvars, 6);
        let shifts = all_monomials(nvars, 2);
        for a in &mons {
            for b in &mons {
                let o = grevlex_compare(a, b);
                assert_eq!(o, grevlex_compare(b, a).reverse());
                assert_eq!(o == Ordering::Equal, a == b);
                for s in &shifts {
                    assert_eq!(grevlex_compare(&a.mul(s), &b.mul(s)), o);
                }
            }
        }
        // Sorting never disagrees with pairwise comparison, so the order is
        // transitive on this set.
        let mut sorted = mons.clone();
        sorted.sort();
        assert!(sorted.windows(2).all(|w| grevlex_compare(&w[0], &w[1]) == Ordering::Less));
    }
}

fn cokernel_dim(f: &GradedPoly, t: u32, ctx: &PadicContext) -> usize {
    let m = macaulay_matrix(&f.gradient().unwrap(), t, ctx).unwrap();
    m.rows() - rank_lower_bound(&m)
}

#[test]
fn fermat_quartic_surface() {
    let ctx = PadicContext::new(31, 1).unwrap();
    let f = parse_poly("x0^4 + x1^4 + x2^4 + x3^4").unwrap().to_graded(Ring::Integers).unwrap();
    assert_eq!(cokernel_dim(&f, 4, &ctx), 19);
}

#[test]
fn generic_quartic_surface_beyond_socle() {
    let ctx = PadicContext::new(31, 1).unwrap();
    let f = parse_poly("y^4 - x^3*z + y*z^3 + z*w^3 + w^4 + 3*x^2*y*w - 7*x*y*z*w")
        .unwrap()
        .to_graded(Ring::Integers)
        .unwrap();
    assert_eq!(cokernel_dim(&f, 9, &ctx), 0);
    assert_eq!(cokernel_dim(&f, 8, &ctx), 1);
}

fn random_form(nvars: usize, d: u32, coeffs: &[i64]) -> GradedPoly {
    let mons = monomials_of_degree(nvars, d);
    GradedPoly::from_terms(
        nvars,
        d,
        Ring::Integers,
        mons.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, c as i128)),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cokernel_follows_hilbert_series(
        nvars in 2usize..=4,
        d in 3u32..=5,
        coeffs in prop::collection::vec(-15i64..15, 40..60),
    ) {
        // Four variables in degree 5 is slow enough to sample sparingly.
        prop_assume!(!(nvars == 4 && d == 5) || coeffs[0] % 4 == 0);
        let ctx = PadicContext::new(31, 1).unwrap();
        let f = random_form(nvars, d, &coeffs);
        let socle = nvars as u32 * (d - 2);
        prop_assume!(cokernel_dim(&f, socle + 1, &ctx) == 0);
        for t in 0..=socle + 1 {
            prop_assert_eq!(
                cokernel_dim(&f, t, &ctx) as u64,
                jacobian_hilbert_coefficient(nvars, d, t),
                "t = {}", t
            );
        }
    }
}

#[test]
fn hilbert_coefficients_by_direct_expansion() {
    // (1 + u + u^2)^3 = 1 + 3u + 6u^2 + 7u^3 + 6u^4 + 3u^5 + u^6
    let expected = [1, 3, 6, 7, 6, 3, 1, 0];
    for (t, &e) in expected.iter().enumerate() {
        assert_eq!(jacobian_hilbert_coefficient(3, 4, t as u32), e);
    }
}
