//! Method names: `lim`, `cesaro`, `stat`, `prod(<method>)`, and
//! `matrix:<rows>` where rows are `cesaro`, `banded(offset=k; coef=c)`,
//! `columns(k=c, ...)` or a path to a row file.

use crate::error::{Error, Result};
use crate::methods::{MatrixRows, MethodSpec, NumericParams};

use super::lexer::{Cursor, Tok};

/// Parses a method; `load` reads row files for `matrix:<path>`.
pub fn parse_method_with(src: &str, params: &NumericParams, load: &dyn Fn(&str) -> Result<String>) -> Result<MethodSpec> {
    let src = src.trim();
    if let Some(inner) = src.strip_prefix("prod(").and_then(|s| s.strip_suffix(')')) {
        let factor = parse_method_with(inner, params, load).map_err(|e| shift(e, 5))?;
        if factor.is_product() {
            return Err(Error::Parse {
                position: 5,
                message: "nested products are not supported".into(),
            });
        }
        return Ok(MethodSpec::product(factor));
    }
    if let Some(rows) = src.strip_prefix("matrix:") {
        let rows = matrix_rows(rows, load).map_err(|e| shift(e, 7))?;
        return Ok(MethodSpec::matrix(rows).with_params(params.clone()));
    }
    match src {
        "lim" => Ok(MethodSpec::Lim),
        "cesaro" => Ok(MethodSpec::Cesaro),
        "stat" => Ok(MethodSpec::Statistical),
        _ => Err(Error::Parse {
            position: 0,
            message: format!("unknown method '{src}'; expected lim, cesaro, stat, matrix:<rows> or prod(<method>)"),
        }),
    }
}

/// Parses a method without file access.
pub fn parse_method(src: &str) -> Result<MethodSpec> {
    parse_method_with(src, &NumericParams::default(), &|path| {
        Err(Error::unsupported(format!("matrix row files are not available here: {path}")))
    })
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}

fn matrix_rows(src: &str, load: &dyn Fn(&str) -> Result<String>) -> Result<MatrixRows> {
    let generator = ["cesaro", "banded(", "columns("].iter().any(|p| src.starts_with(p));
    if !generator {
        if src.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "expected matrix rows after 'matrix:'".into(),
            });
        }
        return MatrixRows::parse_table(src, &load(src)?);
    }
    let mut c = Cursor::new(src)?;
    let rows = if c.eat_word("cesaro") {
        MatrixRows::Cesaro
    } else if c.eat_word("banded") {
        c.expect(&Tok::LParen)?;
        c.expect_key("offset")?;
        let offset = c.index()?;
        c.expect(&Tok::Semi)?;
        c.expect_key("coef")?;
        let coef = c.rat()?;
        c.expect(&Tok::RParen)?;
        MatrixRows::Banded { offset, coef }
    } else {
        c.expect_word("columns")?;
        c.expect(&Tok::LParen)?;
        let mut entries = Vec::new();
        loop {
            let k = c.index()?;
            if k == 0 {
                return Err(c.error("column indices start at 1"));
            }
            c.expect(&Tok::Eq)?;
            entries.push((k, c.rat()?));
            if c.eat(&Tok::RParen) {
                break;
            }
            c.expect(&Tok::Comma)?;
        }
        MatrixRows::Columns { entries }
    };
    c.finish()?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    #[test]
    fn names() {
        assert_eq!(parse_method("lim").unwrap(), MethodSpec::Lim);
        assert_eq!(parse_method("prod(cesaro)").unwrap(), MethodSpec::product(MethodSpec::Cesaro));
        assert!(parse_method("prod(prod(lim))").is_err());
        let m = parse_method("matrix:banded(offset=0; coef=2)").unwrap();
        assert_eq!(m.to_string(), "matrix:banded(offset=0; coef=2)");
        let m = parse_method("matrix:columns(1=1)").unwrap();
        assert!(matches!(m, MethodSpec::Matrix { rows: MatrixRows::Columns { ref entries }, .. } if entries == &vec![(1, Rat::one())]));
        assert!(matches!(parse_method("matrix:rows.txt"), Err(Error::Unsupported(_))));
        let Err(Error::Parse { position, .. }) = parse_method("abel") else { panic!() };
        assert_eq!(position, 0);
    }

    #[test]
    fn row_files() {
        let load = |_: &str| Ok("1: 1=1\n2: 1=1/2, 2=1/2\n".to_string());
        let m = parse_method_with("matrix:two.txt", &NumericParams::default(), &load).unwrap();
        assert_eq!(m.to_string(), "matrix:two.txt");
    }
}
