//! Knot and tangle specifications: `M(p1/q1, ..., pm/qm)` and `p/q`.

use charvar::tangle::{knot_classify, Fraction, MontesinosKnot, RationalTangle, TangleError};

/// Syntax error at a 0-based character offset.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at column {}", .position + 1)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, src }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected '{c}', found '{d}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| ParseError { position: start, message: "integer out of range".into() })
    }

    /// `p` or `p/q`; returns the fraction and its starting offset.
    fn fraction(&mut self) -> Result<(i64, i64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let p = self.integer()?;
        let q = if self.peek() == Some('/') {
            self.pos += 1;
            self.integer()?
        } else {
            1
        };
        Ok((p, q, start))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}' after end of {}", self.src.trim()))),
        }
    }
}

fn make_fraction(p: i64, q: i64, at: usize) -> Result<Fraction, ParseError> {
    Fraction::new(p, q).map_err(|e| ParseError { position: at, message: e.to_string() })
}

/// Parses `p/q` (or `p`) into a rational tangle.
pub fn parse_tangle(spec: &str) -> Result<RationalTangle, ParseError> {
    let mut c = Cursor::new(spec);
    let (p, q, at) = c.fraction()?;
    c.finish()?;
    Ok(RationalTangle::new(make_fraction(p, q, at)?))
}

/// Parses `M(p1/q1, ..., pm/qm)`. Denominators default to 1 and whitespace
/// is ignored. The result is classified, so links are rejected and even
/// knots come back rotated with the even tangle last.
pub fn parse_knot(spec: &str) -> Result<MontesinosKnot, SpecError> {
    let mut c = Cursor::new(spec);
    c.expect('M')?;
    c.expect('(')?;
    let mut fractions = Vec::new();
    loop {
        let (p, q, at) = c.fraction()?;
        fractions.push(make_fraction(p, q, at)?);
        match c.peek() {
            Some(',') => c.pos += 1,
            Some(')') => {
                c.pos += 1;
                break;
            }
            Some(d) => return Err(c.error(format!("expected ',' or ')', found '{d}'")).into()),
            None => return Err(c.error("expected ',' or ')', found end of input").into()),
        }
    }
    c.finish()?;
    Ok(knot_classify(&fractions)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use charvar::tangle::ParityClass;

    #[test]
    fn knots() {
        let k = parse_knot("M(-2,3,7)").unwrap();
        assert_eq!(k.parity_class(), ParityClass::EvenKnot);
        assert_eq!(k.tangle(2).fraction.p(), -2);
        let k = parse_knot(" M( 3/1 , 5/2,7/4 ) ").unwrap();
        assert_eq!(k.parity_class(), ParityClass::OddKnot);
        assert_eq!(k.to_string(), "M(3/1,5/2,7/4)");
        // two of the q_i are odd, so the closure has two components
        assert!(matches!(parse_knot("M(3/1,5/2,7/3)"), Err(SpecError::Tangle(TangleError::NotAKnot(_)))));
        assert!(matches!(parse_knot("M(3,4,4)"), Err(SpecError::Tangle(TangleError::NotAKnot(_)))));
    }

    #[test]
    fn positions() {
        let pos = |s: &str| match parse_knot(s) {
            Err(SpecError::Parse(e)) => e.position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("K(3,3,3)"), 0);
        assert_eq!(pos("M(3,,3)"), 4);
        assert_eq!(pos("M(3;3,3)"), 3);
        assert_eq!(pos("M(3,3,3"), 7);
        assert_eq!(pos("M(3,3,3) x"), 9);
        assert_eq!(pos("M(3,0/1,3)"), 4);
        assert_eq!(pos("M(3,5/a)"), 6);
    }

    #[test]
    fn tangles() {
        assert_eq!(parse_tangle("7/3").unwrap().fraction.q(), 3);
        assert_eq!(parse_tangle("-5").unwrap().fraction.p(), -5);
        assert_eq!(parse_tangle("5/").unwrap_err().position, 2);
        assert_eq!(parse_tangle("6/4").unwrap().fraction.to_string(), "3/2");
    }
}
