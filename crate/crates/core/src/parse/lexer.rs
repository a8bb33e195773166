//! Tokens shared by the set, sequence, method and box grammars.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rat::{ExtRat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    Plus,
    Backslash,
    Colon,
    Num(Rat),
    PosInf,
    NegInf,
    Word(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semi => f.write_str("';'"),
            Tok::Eq => f.write_str("'='"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Backslash => f.write_str("'\\'"),
            Tok::Colon => f.write_str("':'"),
            Tok::Num(r) => write!(f, "number {r}"),
            Tok::PosInf => f.write_str("'inf'"),
            Tok::NegInf => f.write_str("'-inf'"),
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub pos: usize,
}

fn parse_error(pos: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position: pos,
        message: message.into(),
    }
}

fn digits(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    i
}

fn big(text: &str) -> BigInt {
    text.parse().expect("ascii digits")
}

/// Reads `-? digits ( '/' digits | '.' digits )?`, or `-inf`.
fn number(src: &str, start: usize) -> Result<(Tok, usize)> {
    let bytes = src.as_bytes();
    let neg = bytes[start] == b'-';
    let i = start + usize::from(neg);
    if src[i..].starts_with("inf") && !src[i + 3..].starts_with(|c: char| c.is_ascii_alphanumeric()) {
        return Ok((if neg { Tok::NegInf } else { Tok::PosInf }, i + 3));
    }
    let int_end = digits(bytes, i);
    if int_end == i {
        return Err(parse_error(start, "malformed rational: expected digits"));
    }
    let whole = big(&src[i..int_end]);
    let (value, end) = match bytes.get(int_end) {
        Some(b'/') => {
            let d_end = digits(bytes, int_end + 1);
            if d_end == int_end + 1 {
                return Err(parse_error(int_end, "malformed rational: expected denominator digits after '/'"));
            }
            let den = big(&src[int_end + 1..d_end]);
            if den == BigInt::from(0) {
                return Err(parse_error(int_end + 1, "malformed rational: zero denominator"));
            }
            (Rat::from_big(whole, den), d_end)
        }
        Some(b'.') => {
            let f_end = digits(bytes, int_end + 1);
            if f_end == int_end + 1 {
                return Err(parse_error(int_end, "malformed rational: expected digits after '.'"));
            }
            let scale = BigInt::from(10).pow((f_end - int_end - 1) as u32);
            let frac = big(&src[int_end + 1..f_end]);
            (Rat::from_big(whole * &scale + frac, scale), f_end)
        }
        _ => (Rat::from_big(whole, BigInt::from(1)), int_end),
    };
    if bytes.get(end).is_some_and(|c| c.is_ascii_alphabetic() || *c == b'/' || *c == b'.') {
        return Err(parse_error(end, "malformed rational"));
    }
    Ok((Tok::Num(if neg { -value } else { value }), end))
}

pub fn tokenize(src: &str) -> Result<Vec<Spanned>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            b'=' => Some(Tok::Eq),
            b'+' => Some(Tok::Plus),
            b'\\' => Some(Tok::Backslash),
            b':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, pos: i });
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'-' {
            let (tok, end) = number(src, i)?;
            out.push(Spanned { tok, pos: i });
            i = end;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &src[start..i];
            let tok = if word == "inf" { Tok::PosInf } else { Tok::Word(word.to_string()) };
            out.push(Spanned { tok, pos: start });
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(parse_error(i, format!("unexpected character '{ch}'")));
        }
    }
    out.push(Spanned { tok: Tok::End, pos: src.len() });
    Ok(out)
}

/// Recursive-descent cursor over a token stream.
pub struct Cursor {
    toks: Vec<Spanned>,
    at: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Cursor> {
        Ok(Cursor {
            toks: tokenize(src)?,
            at: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub fn peek_at(&self, ahead: usize) -> &Tok {
        let j = (self.at + ahead).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    pub fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    pub fn next(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        parse_error(self.pos(), message)
    }

    pub fn expected(&self, what: &str) -> Error {
        self.error(format!("expected {what} but found {}", self.peek()))
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.expected(&tok.to_string()))
        }
    }

    pub fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(x) if x == w)
    }

    pub fn eat_word(&mut self, w: &str) -> bool {
        if self.is_word(w) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_word(&mut self, w: &str) -> Result<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.expected(&format!("'{w}'")))
        }
    }

    /// `key =`
    pub fn expect_key(&mut self, key: &str) -> Result<()> {
        self.expect_word(key)?;
        self.expect(&Tok::Eq)
    }

    pub fn rat(&mut self) -> Result<Rat> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.next();
                Ok(r)
            }
            _ => Err(self.expected("a rational")),
        }
    }

    pub fn ext_rat(&mut self) -> Result<ExtRat> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.next();
                Ok(ExtRat::Finite(r))
            }
            Tok::PosInf => {
                self.next();
                Ok(ExtRat::PosInf)
            }
            Tok::NegInf => {
                self.next();
                Ok(ExtRat::NegInf)
            }
            _ => Err(self.expected("a rational or 'inf'")),
        }
    }

    pub fn index(&mut self) -> Result<u64> {
        let pos = self.pos();
        let r = self.rat()?;
        if !r.is_integer() || r.is_negative() {
            return Err(parse_error(pos, format!("expected a nonnegative integer, found {r}")));
        }
        u64::try_from(r.numer().clone()).map_err(|_| parse_error(pos, "integer too large"))
    }

    /// `[a, b, ...]`
    pub fn rat_list(&mut self) -> Result<Vec<Rat>> {
        self.expect(&Tok::LBracket)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(out);
        }
        loop {
            out.push(self.rat()?);
            if self.eat(&Tok::RBracket) {
                return Ok(out);
            }
            if !self.eat(&Tok::Comma) {
                return Err(self.expected("',' or ']'"));
            }
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.expected("end of input"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn numbers() {
        assert_eq!(toks("-1/2"), vec![Tok::Num(Rat::new(-1, 2)), Tok::End]);
        assert_eq!(toks("0.25"), vec![Tok::Num(Rat::new(1, 4)), Tok::End]);
        assert_eq!(toks("6/4"), vec![Tok::Num(Rat::new(3, 2)), Tok::End]);
        assert_eq!(toks("-inf inf"), vec![Tok::NegInf, Tok::PosInf, Tok::End]);
        for bad in ["1/", "1/0", "1.", "-", "1/2/3", "2x"] {
            assert!(matches!(tokenize(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn positions() {
        let t = tokenize("[0, 1] u x").unwrap();
        let pos: Vec<usize> = t.iter().map(|s| s.pos).collect();
        assert_eq!(pos, vec![0, 1, 2, 4, 5, 7, 9, 10]);
        let Err(Error::Parse { position, .. }) = tokenize("[0,1] ? x") else { panic!() };
        assert_eq!(position, 6);
    }
}
