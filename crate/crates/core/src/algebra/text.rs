//! Text form "c*blade + c*blade - …" with blades named 1, g0..g3, g01, …, g0123.

use super::Multivector;
use crate::error::{arg, Error, Result};
use std::fmt;
use std::str::FromStr;

pub fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut s = String::from("g");
    for mu in 0..4 {
        if mask & (1 << mu) != 0 {
            s.push(char::from(b'0' + mu as u8));
        }
    }
    s
}

fn parse_blade(name: &str) -> Result<usize> {
    if name == "1" {
        return Ok(0);
    }
    let digits = name
        .strip_prefix('g')
        .ok_or_else(|| Error::Argument(format!("unknown blade `{name}`")))?;
    let mut mask = 0usize;
    let mut last: Option<u32> = None;
    for ch in digits.chars() {
        let d = ch
            .to_digit(10)
            .filter(|d| *d < 4)
            .ok_or_else(|| Error::Argument(format!("unknown blade `{name}`")))?;
        if last.is_some_and(|l| d <= l) {
            return arg(format!("blade `{name}` must list indices in ascending order"));
        }
        last = Some(d);
        mask |= 1 << d;
    }
    if mask == 0 {
        return arg(format!("unknown blade `{name}`"));
    }
    Ok(mask)
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, &c) in self.coeffs().iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let name = blade_name(m);
            if first {
                write!(f, "{c:?}*{name}")?;
                first = false;
            } else if c.is_sign_negative() {
                write!(f, " - {:?}*{name}", -c)?;
            } else {
                write!(f, " + {c:?}*{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for Multivector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return arg("empty multivector text");
        }
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let prev = bytes[i - 1];
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(prev, b'e' | b'E' | b'*') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut out = Multivector::ZERO;
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'+' => (1.0, &term[1..]),
                b'-' => (-1.0, &term[1..]),
                _ => (1.0, term),
            };
            let (coeff, mask) = match body.split_once('*') {
                Some((c, b)) => (parse_coeff(c)?, parse_blade(b)?),
                None => match parse_blade(body) {
                    Ok(mask) if body != "1" => (1.0, mask),
                    _ => (parse_coeff(body)?, 0),
                },
            };
            let m = mask;
            let v = out.coeff(m) + sign * coeff;
            out.set_coeff(m, v);
        }
        Ok(out)
    }
}

fn parse_coeff(s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Argument(format!("bad coefficient `{s}`")))
}

impl Multivector {
    /// The 16-column numeric row used for bulk export.
    pub fn to_row(&self) -> [f64; 16] {
        *self.coeffs()
    }
}
