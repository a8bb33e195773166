//! Sequence literals, as printed by `SeqSpec`'s `Display`.

use crate::error::{Error, Result};
use crate::sequence::{IndexFamily, SeqSpec};

use super::lexer::{Cursor, Tok};

pub fn parse_seq(src: &str) -> Result<SeqSpec> {
    let mut c = Cursor::new(src)?;
    let s = seq(&mut c)?;
    c.finish()?;
    s.validate()?;
    Ok(s)
}

pub fn parse_family(src: &str) -> Result<IndexFamily> {
    let mut c = Cursor::new(src)?;
    let f = family(&mut c)?;
    c.finish()?;
    Ok(f)
}

pub(crate) fn seq(c: &mut Cursor) -> Result<SeqSpec> {
    let Tok::Word(kind) = c.peek().clone() else {
        return Err(c.expected("a sequence literal (const, per, spike, tab)"));
    };
    c.next();
    c.expect(&Tok::LParen)?;
    let s = match kind.as_str() {
        "const" => {
            let mut prefix = Vec::new();
            if c.is_word("prefix") {
                c.expect_key("prefix")?;
                prefix = c.rat_list()?;
                c.expect(&Tok::Semi)?;
            }
            c.expect_key("tail")?;
            SeqSpec::eventually_constant(prefix, c.rat()?)
        }
        "per" => {
            let mut prefix = Vec::new();
            if c.is_word("prefix") {
                c.expect_key("prefix")?;
                prefix = c.rat_list()?;
                c.expect(&Tok::Semi)?;
            }
            c.expect_key("cycle")?;
            SeqSpec::periodic(prefix, c.rat_list()?)
        }
        "spike" => {
            c.expect_key("base")?;
            let base = c.rat()?;
            c.expect(&Tok::Semi)?;
            c.expect_key("spike")?;
            let spike = c.rat()?;
            c.expect(&Tok::Semi)?;
            c.expect_key("where")?;
            SeqSpec::spike(base, spike, family(c)?)
        }
        "tab" => {
            c.expect_key("values")?;
            let values = c.rat_list()?;
            c.expect(&Tok::Semi)?;
            c.expect_key("beyond")?;
            SeqSpec::tabulated(values, seq(c)?)
        }
        other => {
            return Err(Error::Parse {
                position: c.pos(),
                message: format!("unknown sequence kind '{other}'; expected const, per, spike or tab"),
            })
        }
    };
    c.expect(&Tok::RParen)?;
    Ok(s)
}

pub(crate) fn family(c: &mut Cursor) -> Result<IndexFamily> {
    let pos = c.pos();
    let f = if c.eat_word("squares") {
        IndexFamily::Squares
    } else if c.eat_word("pow2") {
        IndexFamily::PowersOfTwo
    } else if c.eat_word("ap") {
        c.expect(&Tok::LParen)?;
        let first = c.index()?;
        c.expect(&Tok::Comma)?;
        let step = c.index()?;
        c.expect(&Tok::RParen)?;
        IndexFamily::ap(first, step)
    } else if c.eat_word("finite") {
        c.expect(&Tok::LParen)?;
        let mut members = Vec::new();
        if !c.eat(&Tok::RParen) {
            loop {
                members.push(c.index()?);
                if c.eat(&Tok::RParen) {
                    break;
                }
                c.expect(&Tok::Comma)?;
            }
        }
        IndexFamily::finite(members)
    } else {
        return Err(c.expected("an index family (squares, pow2, ap(a,d), finite(..))"));
    };
    f.validate().map_err(|e| Error::Parse {
        position: pos,
        message: e.to_string(),
    })?;
    Ok(f)
}
