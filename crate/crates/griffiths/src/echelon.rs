use polyring::{monomials_of_degree, GradedPoly, MonomialIndex};

/// Leading-monomial data of the degree-t piece of an ideal over F_p.
#[derive(Clone, Debug)]
pub struct LeadingEchelon {
    pub index: MonomialIndex,
    /// Monomials (indices into `index`) that are not leading monomials of
    /// the ideal, in increasing grevlex order.
    pub standard: Vec<usize>,
    /// Generator products (generator, source monomial index) that were
    /// independent when processed in order.
    pub selected: Vec<(usize, usize)>,
}

/// Row-reduces the products mu * g_i spanning the degree-t piece of
/// (g_0, ..., g_k) mod p, pivoting on the grevlex-largest monomial of each
/// row. Rows are processed generator-major, sources in increasing grevlex.
pub fn leading_echelon_mod_p(gens: &[GradedPoly], t: u32, p: u64) -> LeadingEchelon {
    assert!(p < 1 << 31, "word-sized elimination needs p < 2^31");
    let nvars = gens[0].nvars();
    let e = gens[0].degree();
    let index = MonomialIndex::new(nvars, t);
    let len = index.len();
    let sources = if t >= e { monomials_of_degree(nvars, t - e) } else { vec![] };
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; len];
    let mut selected = Vec::new();
    let mut found = 0;
    'outer: for (gi, g) in gens.iter().enumerate() {
        for (si, mu) in sources.iter().enumerate() {
            if found == len {
                break 'outer;
            }
            let mut row = vec![0u64; len];
            for (mon, c) in g.terms() {
                let k = index.index_of(&mu.mul(mon).exponents).expect("degree t monomial");
                row[k] = (row[k] + c.rem_euclid(p as i128) as u64) % p;
            }
            for c in (0..len).rev() {
                if row[c] == 0 {
                    continue;
                }
                match &pivots[c] {
                    Some(prow) => {
                        let f = row[c];
                        for j in 0..=c {
                            if prow[j] != 0 {
                                row[j] = (row[j] + (p - prow[j]) * f) % p;
                            }
                        }
                    }
                    None => {
                        let inv = inv_mod(row[c], p);
                        for x in row.iter_mut().take(c + 1) {
                            *x = *x * inv % p;
                        }
                        pivots[c] = Some(row);
                        selected.push((gi, si));
                        found += 1;
                        break;
                    }
                }
            }
        }
    }
    let standard = (0..len).filter(|&c| pivots[c].is_none()).collect();
    LeadingEchelon { index, standard, selected }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}
