//! Box literals `box[d=3]{(0,1); (0,1); (0,1); tail=R}` and factor families
//! such as `shifted(r=1/4)` or `shifted(r=1/4; [])`.

use crate::error::Result;
use crate::product::{DepthBox, IndexedFamily};

use super::lexer::{Cursor, Tok};
use super::set::union;

pub fn parse_box(src: &str) -> Result<DepthBox> {
    let mut c = Cursor::new(src)?;
    let b = depth_box(&mut c)?;
    c.finish()?;
    Ok(b)
}

pub fn parse_indexed_family(src: &str) -> Result<IndexedFamily> {
    let mut c = Cursor::new(src)?;
    let f = indexed_family(&mut c)?;
    c.finish()?;
    Ok(f)
}

fn depth_box(c: &mut Cursor) -> Result<DepthBox> {
    c.expect_word("box")?;
    c.expect(&Tok::LBracket)?;
    c.expect_key("d")?;
    let pos = c.pos();
    let depth = c.index()?;
    c.expect(&Tok::RBracket)?;
    c.expect(&Tok::LBrace)?;
    let mut factors = Vec::new();
    while !c.is_word("tail") {
        factors.push(union(c)?);
        c.expect(&Tok::Semi)?;
    }
    c.expect_key("tail")?;
    let tail = indexed_family(c)?;
    c.expect(&Tok::RBrace)?;
    if factors.len() as u64 > depth {
        return Err(crate::Error::Parse {
            position: pos,
            message: format!("box lists {} factors but has depth {depth}", factors.len()),
        });
    }
    DepthBox::new(depth, IndexedFamily::explicit(factors, tail)).map_err(|e| crate::Error::Parse {
        position: pos,
        message: e.to_string(),
    })
}

fn indexed_family(c: &mut Cursor) -> Result<IndexedFamily> {
    if !c.eat_word("shifted") {
        return Ok(IndexedFamily::Constant(union(c)?));
    }
    c.expect(&Tok::LParen)?;
    c.expect_key("r")?;
    let radius = c.rat()?;
    let (mut lo_closed, mut hi_closed) = (false, false);
    if c.eat(&Tok::Semi) {
        lo_closed = match c.next() {
            Tok::LBracket => true,
            Tok::LParen => false,
            _ => return Err(c.expected("'[' or '('")),
        };
        hi_closed = match c.next() {
            Tok::RBracket => true,
            Tok::RParen => false,
            _ => return Err(c.expected("']' or ')'")),
        };
    }
    c.expect(&Tok::RParen)?;
    Ok(IndexedFamily::shifted(radius, lo_closed, hi_closed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use crate::realsets::RSet;

    #[test]
    fn literals() {
        let b = parse_box("box[d=3]{(0,1); (0,1); (0,1); tail=R}").unwrap();
        assert_eq!(b, DepthBox::finite(vec![RSet::open(Rat::zero(), Rat::one()); 3]).unwrap());
        assert_eq!(b.to_string(), "box[d=3]{(0,1); (0,1); (0,1); tail=R}");
        let f = parse_indexed_family("shifted(r=1/4)").unwrap();
        assert_eq!(f.factor(2), RSet::open(Rat::new(7, 4), Rat::new(9, 4)));
        let g = parse_indexed_family("shifted(r=1; [))").unwrap();
        assert_eq!(g.to_string(), "shifted(r=1; [))");
        let e = parse_box("box[d=4]{tail=shifted(r=1/4)}").unwrap();
        assert_eq!(parse_box(&e.to_string()).unwrap(), e);
        assert!(parse_box("box[d=1]{R; R; tail=R}").is_err());
        assert!(parse_box("box[d=0]{tail=R}").is_err());
        let partial = parse_box("box[d=3]{[0,1]; tail=[2,3]}").unwrap();
        assert_eq!(partial.factor(3), RSet::closed(Rat::int(2), Rat::int(3)));
        assert_eq!(parse_box(&partial.to_string()).unwrap().explicit_factors(), partial.explicit_factors());
    }
}
