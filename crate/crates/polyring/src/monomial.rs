use std::cmp::Ordering;
use std::collections::HashMap;

/// Exponent vector x_0^e_0 ... x_k^e_k.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exponents: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial { exponents: e }
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    /// other / self, if self divides other.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            exponents: other.exponents.iter().zip(&self.exponents).map(|(a, b)| a - b).collect(),
        })
    }
}

/// Graded reverse lexicographic order with x_0 < x_1 < ... by position:
/// degree first, then a > b iff the last nonzero entry of a - b is negative.
pub fn grevlex_compare(a: &Monomial, b: &Monomial) -> Ordering {
    assert_eq!(a.nvars(), b.nvars(), "monomials over different rings");
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exponents.iter().zip(&b.exponents).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_compare(self, other)
    }
}

/// Every exponent vector of the given degree, in no particular order.
fn compositions(nvars: usize, degree: u32, out: &mut Vec<Vec<u32>>) {
    fn go(prefix: &mut Vec<u32>, left: usize, rest: u32, out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=rest {
            prefix.push(e);
            go(prefix, left - 1, rest - e, out);
            prefix.pop();
        }
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(vec![]);
        }
        return;
    }
    go(&mut Vec::with_capacity(nvars), nvars, degree, out);
}

/// Monomials of one degree in increasing grevlex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut raw = Vec::new();
    compositions(nvars, degree, &mut raw);
    let mut mons: Vec<Monomial> = raw.into_iter().map(Monomial::new).collect();
    mons.sort();
    mons
}

/// Positions of the degree-t monomials in grevlex order.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    nvars: usize,
    degree: u32,
    list: Vec<Monomial>,
    map: HashMap<Vec<u32>, usize>,
}

impl MonomialIndex {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let list = monomials_of_degree(nvars, degree);
        let map = list.iter().enumerate().map(|(i, m)| (m.exponents.clone(), i)).collect();
        MonomialIndex { nvars, degree, list, map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.list
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.list[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.map.get(exps).copied()
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn textbook_cases() {
        assert_eq!(grevlex_compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(grevlex_compare(&m(&[1, 0]), &m(&[1, 0])), Ordering::Equal);
        // x0 x2 < x1^2 in grevlex with three variables.
        assert_eq!(grevlex_compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn degree_two_in_three_variables() {
        let list = monomials_of_degree(3, 2);
        let exps: Vec<Vec<u32>> = list.iter().map(|m| m.exponents.clone()).collect();
        assert_eq!(
            exps,
            vec![vec![0, 0, 2], vec![0, 1, 1], vec![1, 0, 1], vec![0, 2, 0], vec![1, 1, 0], vec![2, 0, 0],]
        );
    }

    #[test]
    fn counts_and_index() {
        let idx = MonomialIndex::new(4, 9);
        assert_eq!(idx.len() as u64, binomial(12, 3));
        for (i, mon) in idx.monomials().iter().enumerate() {
            assert_eq!(idx.index_of(&mon.exponents), Some(i));
        }
    }
}
