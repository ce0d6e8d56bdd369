//! Text grammar for polynomials and ideals.
//!
//! ```text
//! poly   := [sign] term { sign term }
//! term   := factor { ['*'] factor }
//! factor := integer ['/' integer] | var ['^' integer]
//! var    := x | y | z | w | x1 | x2 | x3 | x4
//! ```
//! Whitespace is ignored. Ideals are generator lists separated by `;`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::exactgeom::ExponentVector;
use crate::rational::Rational;

const MAX_VARS: usize = 4;

struct Term {
    coeff: Rational,
    exps: [u32; MAX_VARS],
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.base + self.pos
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Syntax { offset: self.offset(), message: message.to_string() }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn variable(&mut self) -> Result<usize> {
        let start = self.offset();
        let c = self.src[self.pos];
        self.pos += 1;
        let index = match c {
            b'x' => {
                if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    let d = self.src[self.pos];
                    self.pos += 1;
                    match d {
                        b'1'..=b'4' => usize::from(d - b'1'),
                        _ => {
                            return Err(Error::UnknownVariable {
                                offset: start,
                                name: format!("x{}", d as char),
                            })
                        }
                    }
                } else {
                    0
                }
            }
            b'y' => 1,
            b'z' => 2,
            b'w' => 3,
            other => {
                return Err(Error::UnknownVariable { offset: start, name: (other as char).to_string() })
            }
        };
        Ok(index)
    }

    fn factor(&mut self, term: &mut Term) -> Result<()> {
        let Some(c) = self.peek() else {
            return Err(self.syntax("expected factor"));
        };
        if c.is_ascii_digit() {
            let num = self.integer()?;
            let mut value = Rational::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(self.syntax("zero denominator"));
                }
                value /= Rational::from_integer(den);
            }
            term.coeff *= value;
            return Ok(());
        }
        if c.is_ascii_alphabetic() {
            let var = self.variable()?;
            let mut exp = 1u32;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                if self.peek() == Some(b'-') {
                    return Err(Error::NegativeExponent { offset: self.offset() });
                }
                let e = self.integer()?;
                exp = u32::try_from(e).map_err(|_| self.syntax("exponent too large"))?;
            }
            term.exps[var] += exp;
            return Ok(());
        }
        Err(self.syntax("expected factor"))
    }

    fn term(&mut self) -> Result<Term> {
        let mut term = Term { coeff: Rational::one(), exps: [0; MAX_VARS] };
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() => {}
            _ => return Err(self.syntax("expected term")),
        }
        self.factor(&mut term)?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.factor(&mut term)?;
                }
                Some(c) if c.is_ascii_alphanumeric() => self.factor(&mut term)?,
                _ => return Ok(term),
            }
        }
    }

    fn polynomial(&mut self) -> Result<Vec<(Term, usize)>> {
        let mut terms = Vec::new();
        let mut negative = false;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            negative = c == b'-';
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let at = self.offset();
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            terms.push((t, at));
            match self.peek() {
                None => return Ok(terms),
                Some(c @ (b'+' | b'-')) => {
                    negative = c == b'-';
                    self.pos += 1;
                }
                Some(_) => return Err(self.syntax("expected `+`, `-` or end of input")),
            }
        }
    }
}

fn raw_terms(text: &str, base: usize) -> Result<Vec<(Term, usize)>> {
    Parser { src: text.as_bytes(), pos: 0, base }.polynomial()
}

fn highest_variable(terms: &[(Term, usize)]) -> usize {
    terms
        .iter()
        .filter_map(|(t, _)| t.exps.iter().rposition(|&e| e > 0))
        .max()
        .map_or(1, |i| i + 1)
}

fn assemble(terms: Vec<(Term, usize)>, dim: usize) -> Result<Polynomial> {
    let mut out = Vec::with_capacity(terms.len());
    for (t, at) in terms {
        if let Some(i) = t.exps.iter().rposition(|&e| e > 0) {
            if i >= dim {
                return Err(Error::UnknownVariable { offset: at, name: super::polynomial::variable_name(MAX_VARS, i) });
            }
        }
        out.push((ExponentVector::new(t.exps[..dim].to_vec()), t.coeff));
    }
    Polynomial::from_terms(dim, out)
}

/// Parses a polynomial in `dim` variables.
pub fn parse_polynomial(text: &str, dim: usize) -> Result<Polynomial> {
    if dim == 0 || dim > MAX_VARS {
        return Err(Error::UnsupportedDimension(dim));
    }
    assemble(raw_terms(text, 0)?, dim)
}

/// Parses a polynomial, taking the dimension from the highest variable used.
pub fn parse_polynomial_auto(text: &str) -> Result<Polynomial> {
    let terms = raw_terms(text, 0)?;
    let dim = highest_variable(&terms);
    assemble(terms, dim)
}

/// Parses `;`-separated generators. Empty pieces (e.g. a trailing `;`) are skipped.
pub fn parse_generators(text: &str, dim: Option<usize>) -> Result<Vec<Polynomial>> {
    let mut pieces = Vec::new();
    let mut base = 0;
    for piece in text.split(';') {
        if !piece.trim().is_empty() {
            pieces.push(raw_terms(piece, base)?);
        }
        base += piece.len() + 1;
    }
    if pieces.is_empty() {
        return Err(Error::InvalidInput("no generators".into()));
    }
    let dim = match dim {
        Some(d) if d == 0 || d > MAX_VARS => return Err(Error::UnsupportedDimension(d)),
        Some(d) => d,
        None => pieces.iter().map(|p| highest_variable(p)).max().unwrap_or(1),
    };
    pieces.into_iter().map(|p| assemble(p, dim)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn simple_sum() {
        let p = parse_polynomial("x^3 + y^3", 2).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coefficient(&ev(&[3, 0])), int(1));
        assert_eq!(p.coefficient(&ev(&[0, 3])), int(1));
    }

    #[test]
    fn indexed_variables_and_fractions() {
        let p = parse_polynomial("x1^2*x2 - 1/2*x2^4", 2).unwrap();
        assert_eq!(p.coefficient(&ev(&[2, 1])), int(1));
        assert_eq!(p.coefficient(&ev(&[0, 4])), frac(-1, 2));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn trailing_operator_reports_offset() {
        assert_eq!(
            parse_polynomial("x + ", 2),
            Err(Error::Syntax { offset: 4, message: "expected term".into() })
        );
    }

    #[test]
    fn implicit_multiplication_and_whitespace() {
        let p = parse_polynomial(" 3 x y ^ 2 - 2xy^2 ", 2).unwrap();
        assert_eq!(p.to_string(), "x*y^2");
    }

    #[test]
    fn error_cases() {
        assert!(matches!(parse_polynomial("x^-2", 2), Err(Error::NegativeExponent { offset: 2 })));
        assert!(matches!(parse_polynomial("x + q", 2), Err(Error::UnknownVariable { offset: 4, .. })));
        assert!(matches!(parse_polynomial("x + z", 2), Err(Error::UnknownVariable { offset: 4, .. })));
        assert!(matches!(parse_polynomial("x7", 4), Err(Error::UnknownVariable { offset: 0, .. })));
        assert!(matches!(parse_polynomial("x ** y", 2), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_polynomial("1/0*x", 2), Err(Error::Syntax { .. })));
    }

    #[test]
    fn auto_dimension() {
        assert_eq!(parse_polynomial_auto("x^2 + z").unwrap().dim(), 3);
        assert_eq!(parse_polynomial_auto("x4").unwrap().dim(), 4);
    }

    #[test]
    fn generators_with_offsets() {
        let gens = parse_generators("x^2; xy; y^3;", None).unwrap();
        assert_eq!(gens.len(), 3);
        assert!(gens.iter().all(|g| g.dim() == 2));
        assert!(matches!(parse_generators("x^2; x +", None), Err(Error::Syntax { offset: 8, .. })));
    }
}
