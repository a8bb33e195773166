//! Text syntax for sets, sequences, methods and boxes. Errors carry the byte
//! position of the offending token and what was expected there.

mod boxes;
mod lexer;
mod method;
mod seq;
mod set;

pub use boxes::{parse_box, parse_indexed_family};
pub use method::{parse_method, parse_method_with};
pub use seq::{parse_family, parse_seq};
pub use set::parse_set;

/// A single rational: `p/q`, an integer or a decimal.
pub fn parse_rat(src: &str) -> crate::Result<crate::Rat> {
    let mut c = lexer::Cursor::new(src)?;
    let r = c.rat()?;
    c.finish()?;
    Ok(r)
}
