//! Text form of polynomials.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Plain sums of terms such as `y^2*z^2 - 4*x*z^3 + 1/2*w^4` are the common
//! case; parenthesised factors allow products of linear forms to be entered
//! directly.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polycore::polynomial::Polynomial;
use crate::polycore::ring::Ring;

pub fn parse_polynomial<C: Field>(text: &str, ring: &Ring) -> Result<Polynomial<C>> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, ring, len: text.len() };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty input"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    ring: &'a Ring,
    len: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.offset(), msg: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<C: Field>(&mut self) -> Result<Polynomial<C>> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<C: Field>(&mut self) -> Result<Polynomial<C>> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor<C: Field>(&mut self) -> Result<Polynomial<C>> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            if e == 0 {
                return Err(self.error("exponent must be at least 1"));
            }
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("digits"))
    }

    fn atom<C: Field>(&mut self) -> Result<Polynomial<C>> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat('/') {
                    self.skip_ws();
                    self.integer()?
                } else {
                    BigInt::one()
                };
                let c = C::from_ratio(&num, &den).ok_or_else(|| self.error("denominator vanishes in the coefficient field"))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                match self.ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_rational::BigRational;

    type F = Fp<32003>;

    fn ring4() -> Ring {
        Ring::standard(4)
    }

    #[test]
    fn two_term_difference() {
        let p: Polynomial<F> = parse_polynomial("x^2-y^2", &ring4()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn discriminant_of_binary_cubic() {
        let text = "y^2*z^2 - 4*x*z^3 - 4*y^3*w + 18*x*y*z*w - 27*x^2*w^2";
        let p: Polynomial<BigRational> = parse_polynomial(text, &ring4()).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.homogeneous_degree(), Some(4));
        assert_eq!(p.to_string(), text);
    }

    #[test]
    fn rational_coefficients_merge() {
        let p: Polynomial<BigRational> = parse_polynomial("1/2*x + 1/2*x", &ring4()).unwrap();
        assert_eq!(p.to_string(), "x");
        let q: Polynomial<BigRational> = parse_polynomial("1/3*x - 2/6*y", &ring4()).unwrap();
        assert_eq!(q.to_string(), "1/3*x - 1/3*y");
    }

    #[test]
    fn products_of_linear_forms() {
        let p: Polynomial<F> = parse_polynomial("x*y*(x - y)*(2*x + y + z)", &ring4()).unwrap();
        assert_eq!(p.homogeneous_degree(), Some(4));
        let q: Polynomial<F> = parse_polynomial("(x+y)^2", &ring4()).unwrap();
        assert_eq!(q.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial::<F>("x + * y", &ring4()) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_polynomial::<F>("x + t", &ring4()), Err(Error::UnknownVariable("t".into())));
        assert!(matches!(parse_polynomial::<F>("x^0", &ring4()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial::<F>("x y", &ring4()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial::<F>("", &ring4()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn zero_polynomial_is_allowed() {
        let p: Polynomial<F> = parse_polynomial("x - x", &ring4()).unwrap();
        assert!(p.is_zero());
    }
}
