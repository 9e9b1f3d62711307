//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := nat ['/' nat] | 'x' nat | 't' | '(' expr ')'
//! ```
//!
//! `t` is the generator of an extension field and is only valid there;
//! `a/b` literals are only valid over `Q`. Positions in errors are byte
//! offsets into the input.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Coeff, Domain, MultiPoly, PolyError};

pub fn parse(text: &str, nvars: usize, domain: &Domain) -> Result<MultiPoly, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars, domain };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    domain: &'a Domain,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn syntax(&self, msg: &str) -> PolyError {
        PolyError::SyntaxError { pos: self.pos, msg: msg.to_string() }
    }

    fn nat(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn small_nat(&mut self) -> Result<u32, PolyError> {
        let start = self.pos;
        let n = self.nat()?;
        u32::try_from(n).map_err(|_| PolyError::SyntaxError { pos: start, msg: "exponent too large".into() })
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?).expect("same ring");
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?).expect("same ring");
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?).expect("same ring");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small_nat()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                let c = if self.eat(b'/') {
                    let den_pos = self.pos;
                    let d = self.nat()?;
                    if *self.domain != Domain::Rational {
                        return Err(PolyError::CoefficientNotInDomain {
                            pos: start,
                            msg: "fractions are only allowed over Q".into(),
                        });
                    }
                    if d.is_zero() {
                        return Err(PolyError::SyntaxError { pos: den_pos, msg: "zero denominator".into() });
                    }
                    Coeff::Q(BigRational::new(n, d))
                } else {
                    self.domain.from_bigint(&n)
                };
                Ok(MultiPoly::constant(self.nvars, self.domain.clone(), c))
            }
            Some(b'x') => {
                self.pos += 1;
                let idx_pos = self.pos;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.unknown_ident(start));
                }
                let i = self.nat()?;
                match usize::try_from(&i) {
                    Ok(i) if i < self.nvars => Ok(MultiPoly::var(self.nvars, self.domain.clone(), i)),
                    _ => Err(PolyError::UnknownVariable {
                        name: format!("x{}", std::str::from_utf8(&self.src[idx_pos..self.pos]).unwrap()),
                        pos: start,
                    }),
                }
            }
            Some(b't') if !self.ident_continues(start + 1) => {
                self.pos += 1;
                match self.domain {
                    Domain::Field(k) if k.degree() > 1 => {
                        let g = Coeff::Ff(k.index_of(&k.generator()));
                        Ok(MultiPoly::constant(self.nvars, self.domain.clone(), g))
                    }
                    _ => Err(PolyError::CoefficientNotInDomain {
                        pos: start,
                        msg: "`t` needs an extension field".into(),
                    }),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => Err(self.unknown_ident(start)),
            Some(_) => Err(self.syntax("expected a number, variable or `(`")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn ident_continues(&self, at: usize) -> bool {
        self.src.get(at).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
    }

    fn unknown_ident(&mut self, start: usize) -> PolyError {
        let mut end = start;
        while self.ident_continues(end) {
            end += 1;
        }
        PolyError::UnknownVariable {
            name: String::from_utf8_lossy(&self.src[start..end]).into_owned(),
            pos: start,
        }
    }
}
