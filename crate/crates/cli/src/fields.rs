//! Text syntax for multivector fields, matching their printed form:
//! `(x1)*@x2 - xd1*@x1 + 3*@x1^@xd2`. Coefficients containing a top-level
//! `+` or `-` must be parenthesized.

use std::sync::Arc;

use realize_core::geom::MultivectorField;
use realize_core::{Chart, Error, Expr, Result};

/// Splits at top-level binary `+`/`-`, keeping the sign with each chunk.
fn split_terms(text: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let binary = matches!(prev, Some(p) if !"+-*/^(".contains(p));
        if depth == 0 && (ch == '+' || ch == '-') && (binary || cur.trim().is_empty()) {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
                cur.clear();
                neg = ch == '-';
            } else if ch == '-' {
                neg = !neg;
            }
            prev = Some(ch);
            continue;
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur.trim().to_string()));
    }
    out
}

pub fn parse_multivector(chart: &Arc<Chart>, text: &str) -> Result<MultivectorField> {
    let mut terms: Vec<(Vec<usize>, Expr)> = Vec::new();
    let mut degree = None;
    for (neg, chunk) in split_terms(text) {
        let at = chunk
            .find('@')
            .ok_or_else(|| Error::Degree(format!("term `{chunk}` has no `@coordinate` factor")))?;
        let coeff_text = chunk[..at].trim().trim_end_matches('*').trim();
        let mut coeff = if coeff_text.is_empty() { Expr::one() } else { chart.parse(coeff_text)? };
        if neg {
            coeff = -&coeff;
        }
        let idx = chunk[at..]
            .split('^')
            .map(|f| {
                let name = f.trim().strip_prefix('@').ok_or_else(|| {
                    Error::Degree(format!("expected `@coordinate` in `{chunk}`, found `{f}`"))
                })?;
                chart
                    .coord_index(name)
                    .ok_or_else(|| Error::UnknownIdentifier(name.to_string()))
            })
            .collect::<Result<Vec<usize>>>()?;
        match degree {
            None => degree = Some(idx.len()),
            Some(d) if d != idx.len() => {
                return Err(Error::Degree(format!("mixed degrees {d} and {} in `{text}`", idx.len())))
            }
            _ => {}
        }
        terms.push((idx, coeff));
    }
    let degree = degree.ok_or_else(|| Error::Degree(format!("empty field `{text}`")))?;
    MultivectorField::from_terms(chart, degree, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Arc<Chart> {
        Chart::builder("R3").coords(&["x", "y", "z"]).build().unwrap()
    }

    #[test]
    fn vector_field_terms() {
        let c = chart();
        let v = parse_multivector(&c, "-y*@x + x*@y").unwrap();
        assert_eq!(v.degree(), 1);
        assert_eq!(v.coeff(&[0]), c.parse("-y").unwrap());
        assert_eq!(v.coeff(&[1]), c.parse("x").unwrap());
    }

    #[test]
    fn parenthesized_coefficients_and_wedges() {
        let c = chart();
        let b = parse_multivector(&c, "(x - y^2)*@x^@z - @y^@z").unwrap();
        assert_eq!(b.degree(), 2);
        assert_eq!(b.coeff(&[0, 2]), c.parse("x - y^2").unwrap());
        assert_eq!(b.coeff(&[1, 2]), Expr::int(-1));
    }

    #[test]
    fn printed_form_round_trips() {
        let c = chart();
        let b = parse_multivector(&c, "x*@x^@y + (y*z - 1)*@y^@z").unwrap();
        assert_eq!(parse_multivector(&c, &b.to_string()).unwrap(), b);
    }

    #[test]
    fn errors() {
        let c = chart();
        assert!(parse_multivector(&c, "x").is_err());
        assert!(parse_multivector(&c, "@x + @x^@y").is_err());
        assert!(parse_multivector(&c, "@w").is_err());
        assert!(parse_multivector(&c, "").is_err());
    }
}
