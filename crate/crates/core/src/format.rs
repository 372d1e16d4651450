//! The open-book file grammar.
//!
//! Line-oriented; `#` starts a comment. A document is one header line
//! `page <genus> <boundary_count>` followed by zero or more lines
//! `twist <exponent> <curve>`, where `<curve>` is a strictly ascending
//! comma-separated hole list (`1,3`) or the keyword `outer` (the full set
//! `{1..r-1}`). The first twist line acts first. Every parse error carries
//! its 1-based line number.

use crate::book::{Curve, OpenBook, PlanarPage, Twist, TwistWord};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{token}`")))
}

fn parse_curve_spec(spec: &str, page: &PlanarPage, line: usize) -> Result<Curve> {
    let r = page.boundary_count();
    let holes: Vec<u32> = if spec == "outer" {
        (1..r).collect()
    } else {
        let mut holes = Vec::new();
        for token in spec.split(',') {
            let h: u32 = parse_num(token, line, "hole")?;
            if h == 0 || h >= r {
                return Err(Error::HoleOutOfRange {
                    hole: h,
                    boundary_count: r,
                }
                .at_line(line));
            }
            if holes.last().is_some_and(|&last| h <= last) {
                return Err(parse_err(line, "hole list must be strictly ascending"));
            }
            holes.push(h);
        }
        holes
    };
    let curve = Curve::new(holes).map_err(|e| e.at_line(line))?;
    curve.validate_on(page).map_err(|e| e.at_line(line))?;
    Ok(curve)
}

/// Parses a document in the open-book grammar.
pub fn parse_open_book(text: &str) -> Result<OpenBook> {
    let mut page: Option<PlanarPage> = None;
    let mut twists: Vec<Twist> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else {
            continue;
        };
        match directive {
            "page" => {
                if page.is_some() {
                    return Err(parse_err(line, "duplicate `page` header"));
                }
                let [genus, boundary] = args else {
                    return Err(parse_err(line, "expected `page <genus> <boundary_count>`"));
                };
                let genus: u32 = parse_num(genus, line, "genus")?;
                let boundary: u32 = parse_num(boundary, line, "boundary count")?;
                page = Some(PlanarPage::new(genus, boundary).map_err(|e| e.at_line(line))?);
            }
            "twist" => {
                let Some(page) = &page else {
                    return Err(parse_err(line, "`twist` before `page` header"));
                };
                let [exponent, curve] = args else {
                    return Err(parse_err(line, "expected `twist <exponent> <curve>`"));
                };
                let exponent: i64 = parse_num(exponent, line, "exponent")?;
                if exponent == 0 {
                    return Err(Error::ZeroExponent.at_line(line));
                }
                let curve = parse_curve_spec(curve, page, line)?;
                twists.push(Twist::new(curve, exponent).map_err(|e| e.at_line(line))?);
            }
            other => {
                return Err(parse_err(line, format!("unknown directive `{other}`")));
            }
        }
    }
    let page = page.ok_or_else(|| parse_err(1, "missing `page` header"))?;
    OpenBook::new(page, TwistWord::new(twists))
}

/// Serializes to the grammar: explicit ascending hole lists, single
/// spaces, one trailing newline. `parse(serialize(ob)) == ob` for every
/// valid book, and `serialize(parse(doc)) == doc` exactly on documents in
/// this shape.
pub fn serialize_open_book(ob: &OpenBook) -> String {
    let page = ob.page();
    let mut out = format!("page {} {}\n", page.genus(), page.boundary_count());
    for twist in ob.word().iter() {
        out.push_str("twist ");
        out.push_str(&twist.exponent().to_string());
        out.push(' ');
        let mut sep = "";
        for h in twist.curve().holes() {
            out.push_str(sep);
            out.push_str(&h.to_string());
            sep = ",";
        }
        out.push('\n');
    }
    out
}
