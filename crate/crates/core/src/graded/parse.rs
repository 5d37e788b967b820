//! Poly-string parser: `c*g1^e1*g2^e2 + ...`, coefficient optional when 1.
//! A leading `-` on a term negates it.

use std::sync::Arc;

use super::{Element, FreeAlgebra};
use crate::error::{Error, Result};

pub(super) fn parse_element(ring: &Arc<FreeAlgebra>, input: &str) -> Result<Element> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse(input, "empty polynomial"));
    }
    let mut total = ring.zero();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('+') {
            if first {
                return Err(Error::parse(input, "leading '+'"));
            }
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        } else if !first {
            return Err(Error::parse(input, "expected '+' or '-' between terms"));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term_str, tail) = rest.split_at(end);
        if term_str.is_empty() {
            return Err(Error::parse(input, "empty term"));
        }
        let term = parse_term(ring, term_str, input)?;
        total = if negative { &total - &term } else { &total + &term };
        rest = tail;
    }
    Ok(total)
}

fn parse_term(ring: &Arc<FreeAlgebra>, term: &str, input: &str) -> Result<Element> {
    let f = ring.field();
    let mut acc = ring.one();
    for factor in term.split('*') {
        if factor.is_empty() {
            return Err(Error::parse(input, format!("empty factor in term {term:?}")));
        }
        if factor.chars().all(|c| c.is_ascii_digit()) {
            let c: u64 = factor
                .parse()
                .map_err(|_| Error::parse(input, format!("bad coefficient {factor:?}")))?;
            acc = acc.scale((c % f.p() as u64) as u32);
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u64 = e
                    .parse()
                    .map_err(|_| Error::parse(input, format!("bad exponent in {factor:?}")))?;
                (n, e)
            }
            None => (factor, 1),
        };
        let i = ring
            .generator_index(name)
            .ok_or_else(|| Error::parse(input, format!("unknown generator {name:?}")))?;
        acc = &acc * &ring.generator(i).pow(exp);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use crate::graded::FreeAlgebra;

    #[test]
    fn parses_the_grammar() {
        let r = FreeAlgebra::polynomial(3, &["x", "y"], 2).unwrap();
        let e = r.parse("2*x^2*y + x - 1").unwrap();
        assert_eq!(e.to_string(), "2*x^2*y+x+2");
        assert_eq!(r.parse("y*x").unwrap(), r.parse("x*y").unwrap());
        assert_eq!(r.parse("3*x").unwrap().to_string(), "0");
        assert_eq!(r.parse("-x").unwrap().to_string(), "2*x");
    }

    #[test]
    fn reports_errors() {
        let r = FreeAlgebra::polynomial(2, &["x"], 1).unwrap();
        for bad in ["", "x+", "+x", "z", "x^", "x**x", "x^a"] {
            assert!(r.parse(bad).is_err(), "{bad:?} should fail");
        }
    }
}
