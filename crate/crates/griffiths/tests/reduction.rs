use griffiths::{
    good_prime_check, griffiths_basis, GriffithsBasis, HypersurfaceInput, Mode, Reducer, Rejection, Term,
};
use padic_core::PadicContext;
use polyring::{jacobian_hilbert_coefficient, monomials_of_degree, GradedPoly, Monomial, Ring};
use proptest::prelude::*;

const QUARTIC: &str = "x*y^3 + x^3*z - x*y^2*z + x^2*z^2 + y^2*z^2 - y*z^3";

fn setup(text: &str, mode: Mode, p: u64, prec: u32) -> (HypersurfaceInput, GriffithsBasis, Reducer) {
    let input = HypersurfaceInput::parse(text, mode).unwrap();
    let basis = griffiths_basis(&input, p).unwrap();
    let ctx = PadicContext::new(p, prec).unwrap();
    let r = Reducer::new(&input, &basis, ctx).unwrap();
    (input, basis, r)
}

fn terms_of(g: &GradedPoly, pole: u32, ctx: &PadicContext) -> Vec<Term> {
    g.terms().map(|(m, c)| Term { exps: m.exponents.clone(), pole, coeff: ctx.from_i128(c) }).collect()
}

fn reduce(r: &Reducer, g: &GradedPoly, pole: u32) -> Vec<u128> {
    let c = r.reduce_terms(&terms_of(g, pole, r.ctx())).unwrap();
    assert_eq!(c.shift, 0);
    c.coords
}

fn form(nvars: usize, deg: u32, seed: &[i64]) -> GradedPoly {
    GradedPoly::from_terms(
        nvars,
        deg,
        Ring::Integers,
        monomials_of_degree(nvars, deg).into_iter().zip(seed.iter().cycle()).map(|(m, &c)| (m, c as i128)),
    )
    .unwrap()
}

#[test]
fn block_sizes_follow_hodge_numbers() {
    let (_, b, _) = setup(QUARTIC, Mode::JacobianPlaneCurve, 31, 2);
    assert_eq!(b.block_sizes(), vec![3, 3]);
    let k3 = HypersurfaceInput::parse("y^4 - x^3*z + y*z^3 + z*w^3 + w^4", Mode::Hypersurface).unwrap();
    let b = griffiths_basis(&k3, 89).unwrap();
    assert_eq!(b.block_sizes(), vec![1, 19, 1]);
    assert_eq!(b.dim(), 22);
    assert_eq!(b.filtration_dim(1), 21);
    let cubic =
        HypersurfaceInput::parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3 + x0*x1*x2", Mode::Hypersurface)
            .unwrap();
    let b = griffiths_basis(&cubic, 31).unwrap();
    let expected: Vec<usize> = (1..=5u32)
        .map(|l| (3 * l).checked_sub(6).map_or(0, |t| jacobian_hilbert_coefficient(6, 3, t) as usize))
        .collect();
    assert_eq!(expected, vec![0, 1, 20, 1, 0]);
    assert_eq!(b.block_sizes(), expected);
}

#[test]
fn singular_surface_is_rejected() {
    let s = HypersurfaceInput::parse("(x0^2 - x1^2)^2 + x2^4 + x3^4", Mode::Hypersurface).unwrap();
    assert_eq!(good_prime_check(&s, 13, 3), Err(Rejection::SingularReduction { p: 13 }));
}

#[test]
fn basis_monomials_reduce_to_unit_vectors() {
    let (_, b, r) = setup(QUARTIC, Mode::JacobianPlaneCurve, 31, 4);
    for (i, (m, &l)) in b.monomials.iter().zip(&b.pole_orders).enumerate() {
        let g = GradedPoly::monomial(m.clone(), 1, Ring::Integers);
        let mut unit = vec![0u128; b.primitive_dim()];
        unit[i] = 1;
        assert_eq!(reduce(&r, &g, l), unit);
    }
}

/// x^a Omega / f^m = x^a f Omega / f^(m+1), checked across the dense and
/// controlled ranges.
#[test]
fn multiplying_by_f_raises_pole_order() {
    for (text, p) in [(QUARTIC, 31), ("x^3 + y^3 + z^3 - 5*x*y*z", 43)] {
        let (input, _, r) = setup(text, Mode::JacobianPlaneCurve, p, 5);
        let f = input.graded().unwrap();
        let d = input.d;
        for m in 1..9u32 {
            let g = form(3, d * m - 3, &[3, -1, 4, 1, -5, 9, 2, -6]);
            let lhs = reduce(&r, &g, m);
            let rhs = reduce(&r, &g.mul(&f).unwrap(), m + 1);
            assert_eq!(lhs, rhs, "{text}: m = {m}");
        }
    }
}

/// sum g_i f_i / f^m = (sum d g_i / dx_i) / ((m-1) f^(m-1)).
#[test]
fn exact_forms_reduce_to_zero() {
    let (input, _, r) = setup(QUARTIC, Mode::JacobianPlaneCurve, 31, 5);
    let ctx = *r.ctx();
    let f = input.graded().unwrap();
    let grad = f.gradient().unwrap();
    for m in 2..12u32 {
        let deg = 4 * m - 3 - 3;
        let mut lhs = GradedPoly::zero(3, 4 * m - 3, Ring::Integers);
        let mut div = GradedPoly::zero(3, deg.saturating_sub(1), Ring::Integers);
        for (i, gi) in grad.iter().enumerate() {
            let a = form(3, deg, &[(i as i64 + 2) * 7 - m as i64, 1, -3, 2, 5]);
            lhs = lhs.add(&a.mul(gi).unwrap()).unwrap();
            div = div.add(&a.derivative(i).unwrap()).unwrap();
        }
        let x = reduce(&r, &lhs, m);
        let y = reduce(&r, &div, m - 1);
        let scaled: Vec<u128> = x.iter().map(|&v| ctx.mul(v, (m - 1) as u128)).collect();
        assert_eq!(scaled, y, "m = {m}");
    }
}

#[test]
fn k3_pole_reduction_is_consistent() {
    let (input, _, r) = setup("y^4 - x^3*z + y*z^3 + z*w^3 + w^4", Mode::Hypersurface, 89, 3);
    let f = input.graded().unwrap();
    for m in 1..6u32 {
        let g = form(4, 4 * m - 4, &[1, -2, 0, 3]);
        assert_eq!(reduce(&r, &g, m), reduce(&r, &g.mul(&f).unwrap(), m + 1), "m = {m}");
    }
}

#[test]
fn denominators_from_multiples_of_p() {
    // Pole orders above p + 1 divide by m - 1 = p along the way.
    let (input, b, r) = setup(QUARTIC, Mode::JacobianPlaneCurve, 7, 6);
    let f = input.graded().unwrap();
    let g = GradedPoly::monomial(b.monomials[4].clone(), 1, Ring::Integers);
    let lifted = g.mul(&f.pow(9).unwrap()).unwrap();
    let c = r.reduce_terms(&terms_of(&lifted, 11, r.ctx())).unwrap();
    assert!(c.shift >= 1);
    let ctx = *r.ctx();
    let coords = c.integral(&ctx).unwrap();
    let mut unit = vec![0u128; 6];
    unit[4] = 1;
    assert_eq!(coords, unit);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reduction_is_linear(
        m in 1u32..10,
        a in prop::collection::vec(-50i64..50, 8),
        b in prop::collection::vec(-50i64..50, 8),
        s in -20i128..20,
    ) {
        let (_, _, r) = setup(QUARTIC, Mode::JacobianPlaneCurve, 31, 4);
        let ctx = *r.ctx();
        let deg = 4 * m - 3;
        let (ga, gb) = (form(3, deg, &a), form(3, deg, &b));
        let sum = ga.add(&gb.scale(s).unwrap()).unwrap();
        let x = reduce(&r, &ga, m);
        let y = reduce(&r, &gb, m);
        let z = reduce(&r, &sum, m);
        let expect: Vec<u128> = x.iter().zip(&y).map(|(&u, &v)| ctx.add(u, ctx.mul(ctx.from_i128(s), v))).collect();
        prop_assert_eq!(z, expect);
    }
}

#[test]
fn unknown_monomial_degree_is_an_error() {
    let (_, _, r) = setup(QUARTIC, Mode::JacobianPlaneCurve, 31, 3);
    let bad = Term { exps: Monomial::new(vec![1, 0, 0]).exponents, pole: 2, coeff: 1 };
    assert!(r.reduce_terms(&[bad]).is_err());
}
