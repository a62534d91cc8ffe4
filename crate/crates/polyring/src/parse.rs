//! Text format for integer polynomials.
//!
//! ```text
//! expr  := ['+' | '-'] term (('+' | '-') term)*
//! term  := power (['*'] power)*
//! power := atom [('^' | '**') digits]
//! atom  := digits | identifier | '(' expr ')'
//! ```
//!
//! Identifiers start with a letter and may contain letters, digits and `_`.
//! Juxtaposition multiplies, so `4x^5` and `2 x y` are accepted. Whitespace
//! is ignored between tokens.

use crate::{PolyError, SparsePoly};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let mut v: i128 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i].to_digit(10).unwrap() as i128))
                        .ok_or(PolyError::Overflow)?;
                    i += 1;
                }
                out.push((start, Tok::Int(v)));
                continue;
            }
            _ if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    s.push(chars[i]);
                    i += 1;
                }
                out.push((start, Tok::Ident(s)));
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' if chars.get(i + 1) == Some(&'*') => {
                out.push((start, Tok::Caret));
                i += 1;
            }
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            _ => return Err(PolyError::Parse { pos: start, msg: format!("unexpected character {c:?}") }),
        }
        i += 1;
    }
    Ok(out)
}

/// Variables ordered as x0, x1, ... when all names have that form, as
/// x, y, z, w when drawn from those letters, and by first appearance otherwise.
pub fn default_variable_order(names: &[String]) -> Vec<String> {
    let indexed: Option<Vec<(u32, &String)>> = names
        .iter()
        .map(|n| {
            n.strip_prefix('x').filter(|s| !s.is_empty()).and_then(|s| s.parse::<u32>().ok()).map(|k| (k, n))
        })
        .collect();
    if let Some(mut v) = indexed {
        v.sort();
        return v.into_iter().map(|(_, n)| n.clone()).collect();
    }
    const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
    if names.iter().all(|n| LETTERS.contains(&n.as_str())) {
        return LETTERS.iter().filter(|l| names.iter().any(|n| n == *l)).map(|l| l.to_string()).collect();
    }
    names.to_vec()
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    vars: Vec<String>,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.offset(), msg: msg.to_string() }
    }

    fn expr(&mut self) -> Result<SparsePoly, PolyError> {
        let mut acc = SparsePoly::constant(self.vars.clone(), 0);
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&if negate { t.neg() } else { t })?;
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<SparsePoly, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?)?;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<SparsePoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek() {
                Some(&Tok::Int(e)) => {
                    self.pos += 1;
                    let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
                    return base.pow(e);
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(SparsePoly::constant(self.vars.clone(), v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self.vars.iter().position(|v| *v == name).ok_or(PolyError::UnknownVariable(name))?;
                Ok(SparsePoly::variable(self.vars.clone(), i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses with the default variable order.
pub fn parse_poly(text: &str) -> Result<SparsePoly, PolyError> {
    let toks = tokenize(text)?;
    let mut names: Vec<String> = Vec::new();
    for (_, t) in &toks {
        if let Tok::Ident(n) = t {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
    }
    run(text, &toks, default_variable_order(&names))
}

/// Parses with an explicit variable order; unknown names are an error.
pub fn parse_poly_with_vars(text: &str, vars: &[&str]) -> Result<SparsePoly, PolyError> {
    let toks = tokenize(text)?;
    run(text, &toks, vars.iter().map(|s| s.to_string()).collect())
}

fn run(text: &str, toks: &[(usize, Tok)], vars: Vec<String>) -> Result<SparsePoly, PolyError> {
    let mut p = Parser { toks, pos: 0, vars, end: text.chars().count() };
    if toks.is_empty() {
        return Err(p.err("empty polynomial"));
    }
    let out = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_curve() {
        let f = parse_poly("4x^5 - 36x^4 + 56x^3 - 76x^2 + 44x - 23").unwrap();
        assert_eq!(f.univariate_coeffs().unwrap(), vec![-23, 44, -76, 56, -36, 4]);
    }

    #[test]
    fn plane_quartic_uses_xyz_order() {
        let f = parse_poly("x*y^3 + x^3*z - x*y^2*z + x^2*z^2 + y^2*z^2 - y*z^3").unwrap();
        assert_eq!(f.vars, vec!["x", "y", "z"]);
        assert_eq!(f.terms.get(&vec![1, 3, 0]), Some(&1));
        assert_eq!(f.terms.get(&vec![0, 1, 3]), Some(&-1));
        assert!(f.is_homogeneous());
    }

    #[test]
    fn k3_orders_w_last() {
        let f = parse_poly("y^4 - x^3*z + y*z^3 + z*w^3 + w^4").unwrap();
        assert_eq!(f.vars, vec!["x", "y", "z", "w"]);
    }

    #[test]
    fn indexed_variables_and_parentheses() {
        let f = parse_poly("(x1 + x0)^2 - 2 x0 x1").unwrap();
        assert_eq!(f.vars, vec!["x0", "x1"]);
        assert_eq!(f.terms.len(), 2);
        assert_eq!(f.terms.get(&vec![2, 0]), Some(&1));
    }

    #[test]
    fn double_star_power_and_leading_minus() {
        let f = parse_poly("-y**4 + x^3 z").unwrap();
        assert_eq!(f.terms.get(&vec![0, 4, 0]), Some(&-1));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("x +"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly("x $ y"), Err(PolyError::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("(x"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly_with_vars("x + q", &["x"]), Err(PolyError::UnknownVariable(_))));
    }
}
