//! Expression parser for differential polynomials.
//!
//! Grammar: sums of products of factors with `+ - * ^` at the usual
//! precedence. Factors are rational constants (`3`, `3/2`), powers of `x`
//! with integer exponents or parenthesized rational ones (`x^2`, `x^(1/2)`,
//! `x^(-3/2)`), derivative variables `y0`..`y9` (with `y`, `y'`, `y''`, ...
//! as sugar) raised to nonnegative integer powers, and parenthesized
//! subexpressions. Errors carry a line and column.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diffpoly::{DiffMonomial, DiffPoly};
use crate::error::{Error, Result};
use crate::numfield::{AlgNum, NumberField};
use crate::qpoly::QPoly;
use crate::rat::Rat;

/// Parse a differential polynomial over Q. The zero polynomial is rejected.
pub fn parse_diffpoly(text: &str) -> Result<DiffPoly> {
    let field = NumberField::rationals();
    let mut p = Parser::new(text);
    let poly = p.parse_expr(&field)?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    if poly.is_zero() {
        return Err(p.error("the polynomial is identically zero"));
    }
    Ok(poly)
}

/// Parse a univariate rational polynomial in the variable `Z` (case
/// insensitive), e.g. `Z^2 - 2`. Used for minimal polynomials of parameter
/// values.
pub fn parse_qpoly(text: &str) -> Result<QPoly> {
    let field = NumberField::rationals();
    // reuse the expression machinery with Z read as y0
    let rewritten: String = text
        .chars()
        .map(|ch| if ch == 'Z' || ch == 'z' { 'y' } else { ch })
        .collect();
    let mut p = Parser::new(&rewritten);
    let poly = p.parse_expr(&field)?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    let mut coeffs = vec![Rat::zero(); poly.ydeg() as usize + 1];
    for t in poly.terms() {
        if !t.xexp.is_zero() {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "x is not allowed in a minimal polynomial".into(),
            });
        }
        if t.alpha.iter().skip(1).any(|&a| a > 0) {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "derivatives are not allowed in a minimal polynomial".into(),
            });
        }
        coeffs[t.alpha[0] as usize] = t.coeff.as_rat().expect("rational field");
    }
    Ok(QPoly::from_coeffs(coeffs))
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.bytes[..self.pos.min(self.bytes.len())] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        let _ = self.src;
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn parse_expr(&mut self, field: &Arc<NumberField>) -> Result<DiffPoly> {
        self.skip_ws();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.bump();
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.bump();
        }
        let mut acc = self.parse_term(field)?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.parse_term(field)?;
                    acc = acc.add(&t)?;
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.parse_term(field)?;
                    acc = acc.sub(&t)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self, field: &Arc<NumberField>) -> Result<DiffPoly> {
        let mut acc = self.parse_factor(field)?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.bump();
                let f = self.parse_factor(field)?;
                acc = acc.mul(&f)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self, field: &Arc<NumberField>) -> Result<DiffPoly> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr(field)?;
                self.skip_ws();
                if self.bump() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.skip_ws();
                if self.peek() == Some(b'^') {
                    self.bump();
                    let e = self.parse_uint()?;
                    return power(&inner, e, field);
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.bump();
                self.skip_ws();
                let exp = if self.peek() == Some(b'^') {
                    self.bump();
                    self.parse_rational_exponent()?
                } else {
                    Rat::one()
                };
                Ok(DiffPoly::from_terms(
                    field.clone(),
                    vec![DiffMonomial {
                        coeff: AlgNum::one(field.clone()),
                        xexp: exp,
                        alpha: vec![0],
                    }],
                ))
            }
            Some(b'y') => {
                self.bump();
                let j = self.parse_yindex()?;
                self.skip_ws();
                let exp = if self.peek() == Some(b'^') {
                    self.bump();
                    self.parse_uint()?
                } else {
                    1
                };
                let mut alpha = vec![0u32; j + 1];
                alpha[j] = exp;
                if exp == 0 {
                    return Ok(DiffPoly::from_terms(
                        field.clone(),
                        vec![DiffMonomial {
                            coeff: AlgNum::one(field.clone()),
                            xexp: Rat::zero(),
                            alpha: vec![0],
                        }],
                    ));
                }
                Ok(DiffPoly::from_terms(
                    field.clone(),
                    vec![DiffMonomial {
                        coeff: AlgNum::one(field.clone()),
                        xexp: Rat::zero(),
                        alpha,
                    }],
                ))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.parse_rational()?;
                Ok(DiffPoly::from_terms(
                    field.clone(),
                    vec![DiffMonomial {
                        coeff: AlgNum::from_rat(field.clone(), r),
                        xexp: Rat::zero(),
                        alpha: vec![0],
                    }],
                ))
            }
            Some(_) => Err(self.error("expected a constant, 'x', 'y', or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// After 'y': digits give the index, primes count derivatives.
    fn parse_yindex(&mut self) -> Result<usize> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let mut n: usize = 0;
                while let Some(c) = self.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    n = n * 10 + (c - b'0') as usize;
                    if n > 9 {
                        return Err(self.error("derivative index must be between 0 and 9"));
                    }
                    self.bump();
                }
                Ok(n)
            }
            Some(b'\'') => {
                let mut n = 0;
                while self.peek() == Some(b'\'') {
                    self.bump();
                    n += 1;
                    if n > 9 {
                        return Err(self.error("derivative index must be between 0 and 9"));
                    }
                }
                Ok(n)
            }
            _ => Ok(0),
        }
    }

    fn parse_uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("exponent out of range"))
    }

    /// Integer, or a parenthesized signed rational: `2`, `(1/2)`, `(-3/2)`.
    fn parse_rational_exponent(&mut self) -> Result<Rat> {
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.bump();
            self.skip_ws();
            let mut negate = false;
            if self.peek() == Some(b'-') {
                self.bump();
                negate = true;
            }
            let mut r = self.parse_rational()?;
            if negate {
                r = -r;
            }
            self.skip_ws();
            if self.bump() != Some(b')') {
                return Err(self.error("expected ')' after exponent"));
            }
            Ok(r)
        } else {
            let n = self.parse_uint()?;
            Ok(Rat::from(BigInt::from(n)))
        }
    }

    fn parse_rational(&mut self) -> Result<Rat> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let num: BigInt = std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("malformed number"))?;
        if self.peek() == Some(b'/') {
            self.bump();
            let dstart = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.bump();
            }
            if dstart == self.pos {
                return Err(self.error("expected a denominator"));
            }
            let den: BigInt = std::str::from_utf8(&self.bytes[dstart..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.error("malformed denominator"))?;
            if den.is_zero() {
                return Err(self.error("denominator must be nonzero"));
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from(num))
    }
}

fn power(base: &DiffPoly, e: u32, field: &Arc<NumberField>) -> Result<DiffPoly> {
    let mut acc = DiffPoly::from_terms(
        field.clone(),
        vec![DiffMonomial {
            coeff: AlgNum::one(field.clone()),
            xexp: Rat::zero(),
            alpha: vec![0],
        }],
    );
    for _ in 0..e {
        acc = acc.mul(base)?;
    }
    Ok(acc)
}
