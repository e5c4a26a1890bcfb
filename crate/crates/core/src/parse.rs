//! Text form of integer polynomials.
//!
//! The accepted grammar is sums of signed terms `c`, `c*x^k`, `cx^k`, `x^k`,
//! `x`, with arbitrary whitespace between tokens; repeated powers are summed.
//! A JSON-style array of integers (constant term first) is accepted as an
//! alternative input form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        })
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).ok()?;
        text.parse().ok()
    }
}

/// Parse polynomial text (or a JSON integer array) into an `IntPoly`.
pub fn parse_poly(s: &str) -> Result<IntPoly> {
    let mut sc = Scanner::new(s);
    sc.skip_ws();
    if sc.peek() == Some(b'[') {
        return parse_array(&mut sc);
    }
    parse_terms(&mut sc)
}

fn parse_terms(sc: &mut Scanner) -> Result<IntPoly> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        sc.skip_ws();
        if sc.peek().is_none() {
            if first {
                return sc.err("empty polynomial");
            }
            break;
        }
        let negative = match sc.peek() {
            Some(b'+') => {
                sc.bump();
                false
            }
            Some(b'-') => {
                sc.bump();
                true
            }
            Some(_) if first => false,
            _ => return sc.err("expected '+' or '-' between terms"),
        };
        sc.skip_ws();
        let (coeff, power) = parse_term(sc)?;
        let coeff = if negative { -coeff } else { coeff };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += coeff;
        first = false;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

fn parse_term(sc: &mut Scanner) -> Result<(BigInt, usize)> {
    let coeff = sc.integer();
    if let Some(b'.') = sc.peek() {
        return sc.err("non-integer coefficient");
    }
    sc.skip_ws();
    let mut saw_star = false;
    if coeff.is_some() && sc.peek() == Some(b'*') {
        sc.bump();
        saw_star = true;
        sc.skip_ws();
    }
    if sc.peek() == Some(b'x') || sc.peek() == Some(b'X') {
        sc.bump();
        sc.skip_ws();
        let power = if sc.peek() == Some(b'^') {
            sc.bump();
            sc.skip_ws();
            match sc.integer() {
                Some(k) => u64::try_from(&k).ok().filter(|&k| k <= 1 << 20),
                None => return sc.err("expected nonnegative exponent after '^'"),
            }
            .ok_or(Error::Parse {
                offset: sc.pos,
                message: "exponent too large".into(),
            })? as usize
        } else {
            1
        };
        Ok((coeff.unwrap_or_else(BigInt::one), power))
    } else if saw_star {
        sc.err("expected 'x' after '*'")
    } else {
        match coeff {
            Some(c) => Ok((c, 0)),
            None => sc.err("expected a term"),
        }
    }
}

fn parse_array(sc: &mut Scanner) -> Result<IntPoly> {
    sc.bump(); // consume '['
    let mut coeffs = Vec::new();
    loop {
        sc.skip_ws();
        if sc.peek() == Some(b']') {
            sc.bump();
            break;
        }
        let negative = if sc.peek() == Some(b'-') {
            sc.bump();
            true
        } else {
            false
        };
        let Some(v) = sc.integer() else {
            return sc.err("expected an integer");
        };
        if sc.peek() == Some(b'.') {
            return sc.err("non-integer coefficient");
        }
        coeffs.push(if negative { -v } else { v });
        sc.skip_ws();
        match sc.peek() {
            Some(b',') => {
                sc.bump();
            }
            Some(b']') => {}
            _ => return sc.err("expected ',' or ']'"),
        }
    }
    sc.skip_ws();
    if sc.peek().is_some() {
        return sc.err("trailing input after array");
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Canonical descending-power rendering; inverse of `parse_poly`.
pub fn render_poly(p: &IntPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let deg = p.degree().unwrap();
    for k in (0..=deg).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        match k {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push('x');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &str) -> Vec<i64> {
        parse_poly(s)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(coeffs("x^8-3"), vec![-3, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(coeffs("x"), vec![0, 1]);
        assert_eq!(coeffs("2x + x - 3"), vec![-3, 3]);
        assert_eq!(coeffs("2*x^2 - 1"), vec![-1, 0, 2]);
        assert_eq!(coeffs(" - 4 x ^ 2 + 7"), vec![7, 0, -4]);
        assert_eq!(coeffs("x^2 + 3x^2"), vec![0, 0, 4]);
        assert_eq!(coeffs("5"), vec![5]);
        assert_eq!(
            coeffs("x^7 - 3x^6 + 4x^5 - 5x^4 + 3x^3 - x^2 - 2x + 1"),
            vec![1, -2, -1, 3, -5, 4, -3, 1]
        );
    }

    #[test]
    fn array_form() {
        assert_eq!(coeffs("[-3, 0, 1]"), vec![-3, 0, 1]);
        assert_eq!(coeffs("[ ]"), Vec::<i64>::new());
        assert!(parse_poly("[1, 2') ").is_err());
        assert!(parse_poly("[1.5]").is_err());
        assert!(parse_poly("[1] junk").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_poly("x^2 + 1.5") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_poly("x^") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x + + 1").is_err());
        assert!(parse_poly("2y").is_err());
    }

    #[test]
    fn render_examples() {
        let f = IntPoly::from_i64(&[-3, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(render_poly(&f), "x^8 - 3");
        assert_eq!(render_poly(&IntPoly::from_i64(&[0, 1])), "x");
        assert_eq!(render_poly(&IntPoly::from_i64(&[5])), "5");
        assert_eq!(render_poly(&IntPoly::zero()), "0");
        assert_eq!(render_poly(&IntPoly::from_i64(&[-1, -1])), "-x - 1");
        assert_eq!(render_poly(&IntPoly::from_i64(&[0, 0, 3])), "3x^2");
    }

    #[test]
    fn round_trip_spot() {
        for s in ["x^8 - 3", "x", "5", "-x - 1", "12x^5 + 3x^2 - 9"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(render_poly(&p), s);
            assert_eq!(parse_poly(&render_poly(&p)).unwrap(), p);
        }
    }
}
