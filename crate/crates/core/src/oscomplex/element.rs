use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::exactlin::{format_rational, parse_rational, Rational};

/// A wedge monomial `e_{i1} ^ ... ^ e_{ik}` with strictly increasing indices,
/// tagged with the poset position of the flat it cuts out.
///
/// The derived order compares the flat first, then the indices
/// lexicographically, which is the basis order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub flat: usize,
    pub indices: Vec<usize>,
}

impl Monomial {
    pub fn degree(&self) -> usize {
        self.indices.len()
    }
}

/// A homogeneous element of the Orlik-Solomon algebra in nbc coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OSElement {
    degree: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl OSElement {
    pub fn zero(degree: usize) -> Self {
        OSElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut x = Self::zero(m.degree());
        x.add_term(m, Rational::one());
        x
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.degree(), self.degree, "monomial degree differs from element degree");
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(&m) + c;
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &OSElement, c: &Rational) {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add(&self, other: &OSElement) -> OSElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &OSElement) -> OSElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> OSElement {
        let mut out = OSElement::zero(self.degree);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> OSElement {
        self.scale(&-Rational::one())
    }

    /// Text form `c * e[i1^i2] + ...` with 1-based indices; `"0"` for zero.
    pub fn to_text(&self) -> String {
        format_terms(self.terms.iter().map(|(m, c)| (c, m.indices.as_slice())))
    }
}

/// Formats `(coefficient, indices)` pairs as `c * e[i^j] - c' * e[k^l]`.
pub fn format_terms<'a>(terms: impl Iterator<Item = (&'a Rational, &'a [usize])>) -> String {
    let mut out = String::new();
    for (c, indices) in terms {
        let body: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
        let mag = format_rational(&c.abs());
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&format!("{mag} * e[{}]", body.join("^")));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse element text at byte {offset}: {message}")]
pub struct ElementParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses the text form into `(coefficient, 0-based indices)` pairs, in order.
///
/// Indices are returned exactly as written; normalizing them is up to the caller.
pub fn parse_terms(text: &str) -> Result<Vec<(Rational, Vec<usize>)>, ElementParseError> {
    let trimmed = text.trim();
    if trimmed == "0" {
        return Ok(Vec::new());
    }
    let err = |offset: usize, message: &str| ElementParseError {
        offset,
        message: message.to_string(),
    };
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut terms = Vec::new();
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            if terms.is_empty() {
                return Err(err(pos, "empty input"));
            }
            break;
        }
        let mut negative = false;
        if !terms.is_empty() {
            match bytes[pos] {
                b'+' => {}
                b'-' => negative = true,
                _ => return Err(err(pos, "expected '+' or '-' between terms")),
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if bytes[pos] == b'-' {
            negative = true;
            pos += 1;
            skip_ws(&mut pos);
        }
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let coeff = parse_rational(&text[start..pos]).map_err(|e| err(start, &e.to_string()))?;
        skip_ws(&mut pos);
        if bytes.get(pos) != Some(&b'*') {
            return Err(err(pos, "expected '*' after coefficient"));
        }
        pos += 1;
        skip_ws(&mut pos);
        if !text[pos..].starts_with("e[") {
            return Err(err(pos, "expected 'e['"));
        }
        pos += 2;
        let close = text[pos..]
            .find(']')
            .map(|k| pos + k)
            .ok_or_else(|| err(pos, "missing ']'"))?;
        let inner = text[pos..close].trim();
        let mut indices = Vec::new();
        if !inner.is_empty() {
            for part in inner.split('^') {
                let i: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| err(pos, "index is not a positive integer"))?;
                if i == 0 {
                    return Err(err(pos, "indices are 1-based"));
                }
                indices.push(i - 1);
            }
        }
        pos = close + 1;
        terms.push((if negative { -coeff } else { coeff }, indices));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn text_round_trip() {
        let terms = vec![
            (q(1), vec![0, 3]),
            (q(-1), vec![0, 4]),
            (Rational::new(3.into(), 2.into()), vec![3, 4]),
        ];
        let text = format_terms(terms.iter().map(|(c, i)| (c, i.as_slice())));
        assert_eq!(text, "1 * e[1^4] - 1 * e[1^5] + 3/2 * e[4^5]");
        assert_eq!(parse_terms(&text).unwrap(), terms);
        let neg_first = vec![(q(-2), vec![])];
        let text = format_terms(neg_first.iter().map(|(c, i)| (c, i.as_slice())));
        assert_eq!(text, "-2 * e[]");
        assert_eq!(parse_terms(&text).unwrap(), neg_first);
        assert_eq!(parse_terms("0").unwrap(), vec![]);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "1 e[1]", "1 * e[0]", "1 * e[1] 2 * e[2]", "x * e[1]", "1 * e[1"] {
            assert!(parse_terms(bad).is_err(), "{bad:?}");
        }
    }
}
