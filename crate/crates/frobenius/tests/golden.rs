mod common;

use common::{hyperelliptic_points, low_coefficients, plane_points, plane_points_2, Field2};
use frobenius::{compute_frobenius, stability_recheck, FrobeniusApprox, FrobeniusOptions};
use griffiths::{HypersurfaceInput, Mode};
use padic_core::charpoly_mod_pn;

fn reciprocal_charpoly(f: &FrobeniusApprox) -> Vec<i128> {
    charpoly_mod_pn(&f.matrix).unwrap().reversed().symmetric()
}

const GENUS_TWO: &str = "4x^5 - 36x^4 + 56x^3 - 76x^2 + 44x - 23";
const GENUS_THREE: &str = "x*y^3 + x^3*z - x*y^2*z + x^2*z^2 + y^2*z^2 - y*z^3";

/// The reciprocal characteristic polynomial is pinned by N_1, N_2 and the
/// functional equation; the printed polynomial for this example is not, so
/// the point counts are the oracle here.
#[test]
fn genus_two_matches_point_counts() {
    let c = HypersurfaceInput::parse(GENUS_TWO, Mode::JacobianHyperelliptic).unwrap();
    let q = c.hyperelliptic_coeffs().unwrap();
    let (n1, n2) = hyperelliptic_points(&q, 31);
    assert_eq!((n1, n2), (42, 998));
    let (c1, c2) = low_coefficients(31, n1, n2);
    let f = compute_frobenius(&c, 31, 3, FrobeniusOptions::default()).unwrap();
    assert_eq!(reciprocal_charpoly(&f), vec![1, c1, c2, 31 * c1, 961]);
    assert_eq!((c1, c2), (10, 68));
    stability_recheck(&c, &f).unwrap();
}

#[test]
fn genus_three_frobenius() {
    let c = HypersurfaceInput::parse(GENUS_THREE, Mode::JacobianPlaneCurve).unwrap();
    let f = compute_frobenius(&c, 31, 3, FrobeniusOptions::default()).unwrap();
    // Printed coefficients from t^2 on; c_1 = 8 is forced by c_5 = 31^2 c_1.
    let expected = [1, 8, 78, 408, 2418, 7688, 29791];
    let m = 29791;
    let sym: Vec<i128> = expected
        .iter()
        .map(|&x: &i128| {
            let r = x.rem_euclid(m);
            if r > m / 2 {
                r - m
            } else {
                r
            }
        })
        .collect();
    assert_eq!(reciprocal_charpoly(&f), sym);
    let g = c.graded().unwrap();
    let (n1, n2) = (plane_points(&g, 31), plane_points_2(&g, &Field2::new(31)));
    assert_eq!(low_coefficients(31, n1, n2), (8, 78));
    stability_recheck(&c, &f).unwrap();
}

#[test]
fn deepest_filtration_columns_are_integral_and_divisible() {
    let c = HypersurfaceInput::parse(GENUS_THREE, Mode::JacobianPlaneCurve).unwrap();
    let f = compute_frobenius(&c, 31, 3, FrobeniusOptions::default()).unwrap();
    for k in f.filtration(1) {
        for r in 0..f.dim() {
            assert_eq!(f.matrix.get(r, k) % 31, 0);
        }
    }
    assert_eq!(frobenius::functional_equation_sign(&f).map(|s| s.abs()), Ok(1));
}

#[test]
fn hyperelliptic_stability_at_higher_precision() {
    let c = HypersurfaceInput::parse(GENUS_TWO, Mode::JacobianHyperelliptic).unwrap();
    let f = compute_frobenius(&c, 31, 3, FrobeniusOptions::default()).unwrap();
    let g =
        compute_frobenius(&c, 31, 6, FrobeniusOptions { extra_truncation: 2, extra_precision: 1 }).unwrap();
    frobenius::compare_digits(&f, &g).unwrap();
    assert_eq!(reciprocal_charpoly(&g), vec![1, 10, 68, 310, 961]);
}
