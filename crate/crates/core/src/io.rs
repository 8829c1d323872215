//! The ideal file format.
//!
//! ```text
//! # comments run to the end of the line
//! field: 5^2
//! vars: x, y
//! x^2 - g*y
//! y^3
//! ```
//!
//! Headers may appear in any order before the first generator. `vars` defaults
//! to nothing, so it is required whenever a generator mentions a variable.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::FieldCtx;
use crate::gb::Ideal;
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring};

#[derive(Clone, Debug)]
pub struct IdealFile {
    pub field: Arc<FieldCtx>,
    pub ring: Arc<Ring>,
    pub ideal: Ideal,
}

/// Parses an ideal file; `seed` picks the modulus for extension fields.
pub fn parse_ideal_file(text: &str, seed: u64) -> Result<IdealFile> {
    let mut field: Option<Arc<FieldCtx>> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut ring: Option<Arc<Ring>> = None;
    let mut gens: Vec<Polynomial> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| Error::Format(format!("line {}: {e}", lineno + 1));
        if let Some((key, value)) = line.split_once(':') {
            let key = key.trim();
            if key == "field" || key == "vars" {
                if ring.is_some() {
                    return Err(at(Error::Format(format!("header `{key}` after the first generator"))));
                }
                match key {
                    "field" => field = Some(FieldCtx::parse_spec(value, seed).map_err(at)?),
                    _ => {
                        let names: Vec<String> = value
                            .split(',')
                            .map(|s| s.trim().to_string())
                            .filter(|s| !s.is_empty())
                            .collect();
                        vars = Some(names);
                    }
                }
                continue;
            }
        }
        let r = match &ring {
            Some(r) => r.clone(),
            None => {
                let r = build_ring(field.as_ref(), vars.as_ref()).map_err(at)?;
                ring = Some(r.clone());
                r
            }
        };
        let line = line.trim_end_matches(',');
        gens.push(parse_polynomial(line, &r).map_err(at)?);
    }
    let ring = match ring {
        Some(r) => r,
        None => build_ring(field.as_ref(), vars.as_ref())?,
    };
    let ideal = Ideal::new(&ring, gens)?;
    Ok(IdealFile {
        field: ring.field().clone(),
        ring,
        ideal,
    })
}

fn build_ring(field: Option<&Arc<FieldCtx>>, vars: Option<&Vec<String>>) -> Result<Arc<Ring>> {
    let field = field.ok_or_else(|| Error::Format("missing `field:` header".into()))?;
    let names = vars.cloned().unwrap_or_default();
    let n = names.len();
    Ring::new(field.clone(), names, MonomialOrder::grevlex(n))
}

/// Writes an ideal in the format read by [`parse_ideal_file`].
pub fn format_ideal_file(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut out = format!("field: {}\nvars: {}\n", ring.field().spec(), ring.names().join(", "));
    for g in ideal.generators() {
        out.push_str(&g.format());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_headers_comments_and_generators() {
        let text = "# the worked example\nfield: 5\nvars: x1, x2\n\nx1^2   # square\nx1*x2,\nx2^3\n";
        let f = parse_ideal_file(text, 0).unwrap();
        assert_eq!(f.field.size(), 5);
        assert_eq!(f.ring.names(), &["x1", "x2"]);
        let g: Vec<String> = f.ideal.generators().iter().map(|g| g.format()).collect();
        assert_eq!(g, vec!["x1^2", "x1*x2", "x2^3"]);
    }

    #[test]
    fn extension_fields_round_trip() {
        let text = "vars: x, y\nfield: 5^2\nx^2 - g*y\ny^3 + (g+1)\n";
        let f = parse_ideal_file(text, 0).unwrap();
        assert_eq!(f.field.size(), 25);
        let again = parse_ideal_file(&format_ideal_file(&f.ideal), 0).unwrap();
        let a: Vec<String> = f.ideal.generators().iter().map(|g| g.format()).collect();
        let b: Vec<String> = again.ideal.generators().iter().map(|g| g.format()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_ideal_file("field: 5\nvars: x\nx + z\n", 0).unwrap_err();
        assert!(matches!(&err, Error::Format(m) if m.starts_with("line 3:")), "{err}");
        let err = parse_ideal_file("vars: x\nx\n", 0).unwrap_err();
        assert!(matches!(&err, Error::Format(m) if m.contains("field")), "{err}");
        let err = parse_ideal_file("field: 6\n", 0).unwrap_err();
        assert!(matches!(&err, Error::Format(m) if m.starts_with("line 1:")), "{err}");
        let err = parse_ideal_file("field: 5\nvars: x\nx\nvars: y\n", 0).unwrap_err();
        assert!(matches!(&err, Error::Format(m) if m.starts_with("line 4:")), "{err}");
    }
}
