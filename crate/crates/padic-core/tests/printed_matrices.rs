use padic_core::{kernel_mod_pn, PadicContext, PadicMatrix};

const P: i128 = 31;

fn jacobian_h2() -> Vec<Vec<i128>> {
    let p = P;
    vec![
        vec![p * p * 19, p * 660, p * 776, p * 843, p * 506, 22499],
        vec![p * p * 18, p * 250, p * 459, p * 270, p * 683, 10699],
        vec![p * p * 3, p * 154, p * 636, p * 261, p * p * 24, 3010],
        vec![p * p * 22, p * 557, p * 664, p * 392, p * p * 23, 10438],
        vec![p * p * 30, p * 77, p * 516, p * p * 26, p * 449, 3650],
        vec![p * p * 7, p * 668, p * 509, p * 277, p * 513, 17591],
    ]
}

#[test]
fn tate_kernel_of_genus2_jacobian_h2() {
    let ctx = PadicContext::new(31, 3).unwrap();
    let f = PadicMatrix::from_i128_rows(ctx, &jacobian_h2());
    // p * Phi_1(F / p) = F - p I stays integral.
    let m = f.sub(&PadicMatrix::identity(ctx, 6).scale(31)).unwrap();
    let k = kernel_mod_pn(&m).unwrap();
    assert_eq!(k.cols(), 2);
    assert_eq!(k.trusted_prec(), 2);

    let low = PadicContext::new(31, 2).unwrap();
    let k = k.change_precision(2).unwrap();
    let v = PadicMatrix::from_i128_rows(
        low,
        &[vec![356, 4], vec![37, 957], vec![831, 3], vec![0, 1], vec![295, 0], vec![31, 0]],
    );
    // Rows 0 and 3 of v form an invertible block, so both spans are compared
    // through that block.
    let block = |m: &PadicMatrix| m.select(&[0, 3], &[0, 1]);
    let vb = block(&v);
    let (a, b, c, d) = (vb.get(0, 0), vb.get(0, 1), vb.get(1, 0), vb.get(1, 1));
    let det = low.sub(low.mul(a, d), low.mul(b, c));
    let di = low.inv(det).expect("block is invertible");
    let vb_inv = PadicMatrix::from_residues(
        low,
        2,
        2,
        vec![low.mul(d, di), low.mul(low.neg(b), di), low.mul(low.neg(c), di), low.mul(a, di)],
    )
    .unwrap();
    let coeffs = vb_inv.mul(&block(&k)).unwrap();
    assert_eq!(v.mul(&coeffs).unwrap(), k);
    let det_k = {
        let kb = block(&k);
        low.sub(low.mul(kb.get(0, 0), kb.get(1, 1)), low.mul(kb.get(0, 1), kb.get(1, 0)))
    };
    assert!(low.inv(det_k).is_some(), "kernel spans the printed vectors");
}
