use std::time::Instant;

use frobenius::{compute_frobenius, FrobeniusOptions};
use griffiths::{HypersurfaceInput, Mode};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let (poly, mode, p, n): (&str, Mode, u64, u32) = match args.get(1).map(String::as_str) {
        Some("k3") => (
            "y^4 - x^3*z + y*z^3 + z*w^3 + w^4",
            Mode::Hypersurface,
            89,
            args.get(2).map_or(3, |s| s.parse().unwrap()),
        ),
        _ => ("-y^4 + x^3*z + 2*x^2*z^2 - x*z^3", Mode::JacobianPlaneCurve, 43, 4),
    };
    let c = HypersurfaceInput::parse(poly, mode).unwrap();
    let t = Instant::now();
    let f = compute_frobenius(&c, p, n, FrobeniusOptions::default()).unwrap();
    eprintln!("{:?} K = {:?}", t.elapsed(), f.truncation);
    let chi = padic_core::charpoly_mod_pn(&f.matrix).unwrap().reversed().symmetric();
    println!("{chi:?}");
}
