//! Set expressions.
//!
//! ```text
//! union  := inter (('u' | '\') inter)*
//! inter  := sum ('n' sum)*
//! sum    := unary ('+' unary)*
//! unary  := ('compl' | 'neg') unary | atom
//! atom   := interval | '{' rats '}' | 'R' | 'empty' | rational | '(' union ')'
//! ```
//! A bare rational is the singleton, so `g + A` is a translate.

use crate::error::Result;
use crate::rat::ExtRat;
use crate::realsets::RSet;

use super::lexer::{Cursor, Tok};

pub fn parse_set(src: &str) -> Result<RSet> {
    let mut c = Cursor::new(src)?;
    let set = union(&mut c)?;
    c.finish()?;
    Ok(set)
}

pub(crate) fn union(c: &mut Cursor) -> Result<RSet> {
    let mut acc = inter(c)?;
    loop {
        if c.eat_word("u") {
            acc = acc.union(&inter(c)?);
        } else if c.eat(&Tok::Backslash) {
            acc = acc.difference(&inter(c)?);
        } else {
            return Ok(acc);
        }
    }
}

fn inter(c: &mut Cursor) -> Result<RSet> {
    let mut acc = sum(c)?;
    while c.eat_word("n") {
        acc = acc.intersect(&sum(c)?);
    }
    Ok(acc)
}

fn sum(c: &mut Cursor) -> Result<RSet> {
    let mut acc = unary(c)?;
    while c.eat(&Tok::Plus) {
        acc = acc.sum(&unary(c)?);
    }
    Ok(acc)
}

fn unary(c: &mut Cursor) -> Result<RSet> {
    if c.eat_word("compl") {
        Ok(unary(c)?.complement())
    } else if c.eat_word("neg") {
        Ok(unary(c)?.negate())
    } else {
        atom(c)
    }
}

fn is_endpoint(t: &Tok) -> bool {
    matches!(t, Tok::Num(_) | Tok::PosInf | Tok::NegInf)
}

fn atom(c: &mut Cursor) -> Result<RSet> {
    match c.peek().clone() {
        Tok::LBracket => interval(c),
        Tok::LParen if is_endpoint(c.peek_at(1)) && *c.peek_at(2) == Tok::Comma => interval(c),
        Tok::LParen => {
            c.next();
            let inner = union(c)?;
            c.expect(&Tok::RParen)?;
            Ok(inner)
        }
        Tok::LBrace => {
            c.next();
            let mut pts = Vec::new();
            if !c.eat(&Tok::RBrace) {
                loop {
                    pts.push(c.rat()?);
                    if c.eat(&Tok::RBrace) {
                        break;
                    }
                    if !c.eat(&Tok::Comma) {
                        return Err(c.expected("',' or '}'"));
                    }
                }
            }
            Ok(RSet::points(pts))
        }
        Tok::Num(r) => {
            c.next();
            Ok(RSet::point(r))
        }
        Tok::Word(w) if w == "R" => {
            c.next();
            Ok(RSet::reals())
        }
        Tok::Word(w) if w == "empty" => {
            c.next();
            Ok(RSet::empty())
        }
        _ => Err(c.expected("a set")),
    }
}

fn interval(c: &mut Cursor) -> Result<RSet> {
    let lo_closed = c.next() == Tok::LBracket;
    let lo_pos = c.pos();
    let lo = c.ext_rat()?;
    c.expect(&Tok::Comma)?;
    let hi_pos = c.pos();
    let hi = c.ext_rat()?;
    let hi_closed = match c.peek() {
        Tok::RBracket => true,
        Tok::RParen => false,
        _ => return Err(c.expected("']' or ')'")),
    };
    if lo == ExtRat::PosInf || (lo_closed && !lo.is_finite()) {
        return Err(crate::Error::Parse {
            position: lo_pos,
            message: format!("lower endpoint {lo} must be finite or an open -inf"),
        });
    }
    if hi == ExtRat::NegInf || (hi_closed && !hi.is_finite()) {
        return Err(crate::Error::Parse {
            position: hi_pos,
            message: format!("upper endpoint {hi} must be finite or an open inf"),
        });
    }
    if lo > hi {
        return Err(crate::Error::Parse {
            position: lo_pos,
            message: format!("lower endpoint {lo} exceeds upper endpoint {hi}"),
        });
    }
    c.next();
    Ok(RSet::interval(lo, lo_closed, hi, hi_closed))
}
