//! Text form of maps: `A2: (y^2, x)` for affine maps and
//! `P2: [Y^2, X*Z, Z^2]` for projective ones.

use super::map::{map_from_affine, RationalMap};
use crate::error::{Error, Result};
use crate::poly::text::{format_terms, parse_in, VarNames};
use crate::poly::HomPoly;

fn dsl_error(src: &str, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
        caret: format!("{}\n{}^", src, " ".repeat(column)),
    }
}

/// Splits the body between `open` and `close` on top-level commas,
/// returning each piece with its column in `src`.
fn split_body(src: &str, open: char, close: char) -> Result<Vec<(usize, &str)>> {
    let start = src
        .find(|c: char| !c.is_whitespace())
        .ok_or_else(|| dsl_error(src, src.len(), "empty map body"))?;
    if !src[start..].starts_with(open) {
        return Err(dsl_error(src, start, format!("expected '{open}'")));
    }
    let end = src.trim_end().len();
    if end == 0 || !src[..end].ends_with(close) {
        return Err(dsl_error(src, end, format!("expected '{close}' at the end")));
    }
    let body_start = start + open.len_utf8();
    let body_end = end - close.len_utf8();
    if body_end < body_start {
        return Err(dsl_error(src, body_start, "empty map body"));
    }
    let mut pieces = Vec::new();
    let mut depth = 0i32;
    let mut piece_start = body_start;
    for (i, c) in src[body_start..body_end].char_indices() {
        let i = body_start + i;
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(dsl_error(src, i, "unbalanced ')'"));
                }
            }
            ',' if depth == 0 => {
                pieces.push((piece_start, &src[piece_start..i]));
                piece_start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push((piece_start, &src[piece_start..body_end]));
    Ok(pieces)
}

/// Parses a map in either the affine or the projective form.
pub fn parse_map(src: &str) -> Result<RationalMap> {
    let lead = src.len() - src.trim_start().len();
    let colon = src
        .find(':')
        .ok_or_else(|| dsl_error(src, lead, "expected a header such as 'A2:' or 'P2:'"))?;
    let header = src[..colon].trim();
    let (kind, dim) = header.split_at(header.len().min(1));
    let n: usize = dim
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| dsl_error(src, lead, format!("bad dimension in header {header:?}")))?;
    let rest = &src[colon + 1..];
    let offset = colon + 1;
    match kind {
        "A" => {
            let names = VarNames::affine(n);
            let pieces = split_body(rest, '(', ')').map_err(shift_by(src, offset))?;
            if pieces.len() != n {
                return Err(dsl_error(
                    src,
                    offset,
                    format!("expected {n} components, found {}", pieces.len()),
                ));
            }
            let comps = pieces
                .iter()
                .map(|(col, text)| parse_in(src, offset + col, text, &names))
                .collect::<Result<Vec<_>>>()?;
            map_from_affine(&comps)
        }
        "P" => {
            let names = VarNames::projective(n + 1);
            let pieces = split_body(rest, '[', ']').map_err(shift_by(src, offset))?;
            if pieces.len() != n + 1 {
                return Err(dsl_error(
                    src,
                    offset,
                    format!("expected {} coordinates, found {}", n + 1, pieces.len()),
                ));
            }
            let mut coords = Vec::with_capacity(n + 1);
            for (col, text) in &pieces {
                let sp = parse_in(src, offset + col, text, &names)?;
                let h = HomPoly::from_sparse(&sp).map_err(|e| match e {
                    Error::NotHomogeneous(msg) => dsl_error(src, offset + col, msg),
                    other => other,
                })?;
                coords.push(h);
            }
            RationalMap::new(coords)
        }
        _ => Err(dsl_error(src, lead, "header must start with 'A' or 'P'")),
    }
}

fn shift_by(src: &str, offset: usize) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Parse { column, message, .. } => dsl_error(src, offset + column, message),
        other => other,
    }
}

/// `P<N>: [F_0, ..., F_N]`.
pub fn format_projective(f: &RationalMap) -> String {
    let names = VarNames::projective(f.nvars());
    let coords: Vec<String> = f
        .coords()
        .iter()
        .map(|c| format_terms(c.terms().iter(), &names))
        .collect();
    format!("P{}: [{}]", f.nvars() - 1, coords.join(", "))
}

/// `A<N>: (f_1, ..., f_N)` when the map extends a polynomial map.
pub fn format_affine(f: &RationalMap) -> Option<String> {
    let comps = f.affine_components()?;
    let names = VarNames::affine(f.nvars() - 1);
    let parts: Vec<String> = comps
        .iter()
        .map(|c| format_terms(c.terms.iter(), &names))
        .collect();
    Some(format!("A{}: ({})", f.nvars() - 1, parts.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "A2: (y^2, x)",
            "A2: (x*y, y+1)",
            "P2: [Y^2, X*Z, Z^2]",
            "A2: (2*x^2*y, x*y^2)",
            "A3: (y, z, x*y - 1/2)",
        ] {
            let f = parse_map(s).unwrap();
            let p = format_projective(&f);
            assert_eq!(parse_map(&p).unwrap(), f, "{s} -> {p}");
            if let Some(a) = format_affine(&f) {
                assert_eq!(parse_map(&a).unwrap(), f, "{s} -> {a}");
            }
        }
        assert_eq!(
            format_affine(&parse_map("A2: (x*y, y+1)").unwrap()).unwrap(),
            "A2: (x*y, y + 1)"
        );
        assert_eq!(
            format_projective(&parse_map("A2: (y^2, x)").unwrap()),
            "P2: [Y^2, X*Z, Z^2]"
        );
    }

    #[test]
    fn error_columns() {
        match parse_map("A2: (y^2, q)") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 10),
            other => panic!("{other:?}"),
        }
        match parse_map("P2: [Y^2, X*Z]") {
            Err(Error::Parse { message, .. }) => assert!(message.contains("3 coordinates")),
            other => panic!("{other:?}"),
        }
        match parse_map("P2: [Y^2, X, Z^2]") {
            Err(Error::DegreeMismatch(_)) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_map("Q2: [X]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_map("A2: y, x"), Err(Error::Parse { .. })));
    }
}
