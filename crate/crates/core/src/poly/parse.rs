//! Text grammar for polynomials.
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//! coeff  := digits ['/' digits]
//! factor := 'z' index ['^' exponent]
//! ```
//!
//! Whitespace is allowed between tokens. Word polynomials keep their factors
//! in the written order; commutative ones collect exponents.

use crate::error::{Error, Result};
use crate::poly::monomial::MonomialKind;
use crate::poly::poly::Poly;
use crate::scalar::Field;

struct Cursor<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { input: self.src.to_string(), offset: self.pos, message: message.into() }
    }
}

pub(crate) fn parse_poly<F: Field, M: MonomialKind>(input: &str, nvars: usize) -> Result<Poly<F, M>> {
    let mut cur = Cursor::new(input);
    let mut out = Poly::zero(nvars);
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let mut first = true;
    loop {
        let negative = if cur.eat(b'-') {
            true
        } else if first || cur.eat(b'+') {
            false
        } else {
            return Err(cur.error("expected '+' or '-'"));
        };
        let (m, c) = parse_term::<F, M>(&mut cur, nvars)?;
        out.add_term(m, if negative { -c } else { c });
        first = false;
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(out)
}

fn parse_term<F: Field, M: MonomialKind>(cur: &mut Cursor<'_>, nvars: usize) -> Result<(M, F)> {
    let mut coeff = F::one();
    let mut factors: Vec<(usize, u32)> = Vec::new();
    match cur.peek() {
        Some(b) if b.is_ascii_digit() => {
            let num = cur.digits().unwrap();
            let text = if cur.eat(b'/') {
                let den = cur.digits().ok_or_else(|| cur.error("expected denominator"))?;
                format!("{num}/{den}")
            } else {
                num.to_string()
            };
            coeff = F::parse_exact(&text).ok_or_else(|| cur.error("invalid coefficient"))?;
            if !cur.eat(b'*') {
                return Ok((M::one(nvars), coeff));
            }
            factors.push(parse_factor(cur, nvars)?);
        }
        Some(b'z') => factors.push(parse_factor(cur, nvars)?),
        _ => return Err(cur.error("expected a coefficient or a variable")),
    }
    while cur.eat(b'*') {
        factors.push(parse_factor(cur, nvars)?);
    }
    Ok((M::from_factors(nvars, &factors), coeff))
}

fn parse_factor(cur: &mut Cursor<'_>, nvars: usize) -> Result<(usize, u32)> {
    if !cur.eat(b'z') {
        return Err(cur.error("expected variable 'z<i>'"));
    }
    // no whitespace inside a variable name
    if !cur.bytes.get(cur.pos).is_some_and(|b| b.is_ascii_digit()) {
        return Err(cur.error("expected variable index"));
    }
    let idx = cur.digits().unwrap();
    let idx: usize = idx.parse().map_err(|_| cur.error("variable index out of range"))?;
    if idx == 0 || idx > nvars {
        return Err(cur.error(format!("variable z{idx} outside z1..z{nvars}")));
    }
    let exp = if cur.eat(b'^') {
        let e = cur.digits().ok_or_else(|| cur.error("expected exponent"))?;
        e.parse::<u32>().map_err(|_| cur.error("exponent out of range"))?
    } else {
        1
    };
    Ok((idx - 1, exp))
}

#[cfg(test)]
mod tests {
    use crate::poly::{CommPoly, WordPoly};
    use crate::Rational;

    #[test]
    fn grammar_example_round_trips() {
        let s = "3/2*z1^2*z2 - z3";
        let p = CommPoly::<Rational>::parse(s, 3).unwrap();
        assert_eq!(p.to_string(), s);
    }

    #[test]
    fn word_factors_keep_order() {
        let w = WordPoly::<Rational>::parse("z2*z1*z1 + 2*z1^2*z2", 2).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.to_string(), "z2*z1^2 + 2*z1^2*z2");
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "z0", "z3", "z1 +", "3/", "z1 z2", "x1", "1/0*z1", "z1^"] {
            assert!(CommPoly::<Rational>::parse(bad, 2).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn constants_and_signs() {
        let p = CommPoly::<Rational>::parse("-1/2 + z1 - 4/2*z2", 2).unwrap();
        assert_eq!(p.to_string(), "z1 - 2*z2 - 1/2");
        let q = CommPoly::<Rational>::parse("z1 - z1", 2).unwrap();
        assert!(q.is_zero());
    }
}
