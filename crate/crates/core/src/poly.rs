//! Polynomial rings over `F_p` and sparse polynomials in them.
//!
//! A [`Polynomial`] is a bare sorted term list; the [`PolyRing`] it lives in
//! carries the field and the monomial order and performs all arithmetic.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Exponents, Monomial, MonomialOrder};

/// `F_p[x_1, ..., x_n]` with the standard grading and a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    pub field: PrimeField,
    pub names: Vec<String>,
    pub order: MonomialOrder,
}

/// Terms sorted strictly descending in the ring's order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(u32, Monomial)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(u32, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(u32, Monomial)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|(c, _)| *c)
    }

    /// The common degree of all terms, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.1.degree();
        self.terms.iter().all(|(_, m)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Top total degree (zero polynomial: `None`).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant term (coefficient of the unit monomial).
    pub fn constant_coefficient(&self) -> u32 {
        self.terms
            .last()
            .filter(|(_, m)| m.is_one())
            .map(|(c, _)| *c)
            .unwrap_or(0)
    }

    /// Builds from terms that are already strictly sorted and nonzero.
    pub(crate) fn from_sorted_terms(terms: Vec<(u32, Monomial)>) -> Self {
        Polynomial { terms }
    }
}

impl PolyRing {
    pub fn new(field: PrimeField, names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        for (i, a) in names.iter().enumerate() {
            if !is_identifier(a) {
                return Err(Error::InvalidInput(format!("bad variable name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidInput(format!("duplicate variable `{a}`")));
            }
        }
        Ok(PolyRing {
            field,
            names,
            order,
        })
    }

    /// Ring over the default field with the given names and degrevlex.
    pub fn with_vars(names: &[&str]) -> Self {
        PolyRing::new(
            PrimeField::default(),
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::DegRevLex,
        )
        .expect("valid variable names")
    }

    /// Ring with variables `x1..xn`.
    pub fn standard(field: PrimeField, n: usize, order: MonomialOrder) -> Self {
        PolyRing {
            field,
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            order,
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing {
            order,
            ..self.clone()
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.term(1, Monomial::var(self.nvars(), i))
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> Polynomial {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn term(&self, c: u32, m: Monomial) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(c, m)],
            }
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        self.term(1, m)
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (u32, Monomial)>) -> Polynomial {
        let mut v: Vec<(u32, Monomial)> = terms.into_iter().collect();
        v.sort_by(|a, b| self.order.cmp(&b.1, &a.1));
        let mut out: Vec<(u32, Monomial)> = Vec::with_capacity(v.len());
        for (c, m) in v {
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 = self.field.add(last.0, c),
                _ => out.push((c % self.field.characteristic(), m)),
            }
            if out.last().map(|t| t.0 == 0).unwrap_or(false) {
                out.pop();
            }
        }
        Polynomial { terms: out }
    }

    /// Re-sorts a polynomial created in a ring with the same variables but another order.
    pub fn import(&self, f: &Polynomial) -> Polynomial {
        self.from_terms(f.terms.iter().cloned())
    }

    pub fn check(&self, f: &Polynomial) -> Result<()> {
        if let Some((_, m)) = f.terms.iter().find(|(_, m)| m.nvars() != self.nvars()) {
            return Err(Error::RingMismatch(format!(
                "monomial with {} variables in a ring with {}",
                m.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.axpy(1, &Monomial::one(self.nvars()), g, f)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.axpy(self.field.neg(1), &Monomial::one(self.nvars()), g, f)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(f, self.field.neg(1))
    }

    pub fn scale(&self, f: &Polynomial, c: u32) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(a, m)| (self.field.mul(*a, c), m.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, f: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(a, n)| (self.field.mul(*a, c), n.mul(m)))
                .collect(),
        }
    }

    /// `acc + c * m * f`, merging sorted term lists.
    pub fn axpy(&self, c: u32, m: &Monomial, f: &Polynomial, acc: &Polynomial) -> Polynomial {
        if c == 0 || f.is_zero() {
            return acc.clone();
        }
        let fp = &self.field;
        let mut out = Vec::with_capacity(acc.terms.len() + f.terms.len());
        let mut i = 0;
        let mut shifted = f
            .terms
            .iter()
            .map(|(a, n)| (fp.mul(*a, c), n.mul(m)))
            .peekable();
        while i < acc.terms.len() || shifted.peek().is_some() {
            let ord = match (acc.terms.get(i), shifted.peek()) {
                (Some(a), Some(b)) => self.order.cmp(&a.1, &b.1),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(acc.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(shifted.next().unwrap()),
                Ordering::Equal => {
                    let (b, n) = shifted.next().unwrap();
                    let s = fp.add(acc.terms[i].0, b);
                    if s != 0 {
                        out.push((s, n));
                    }
                    i += 1;
                }
            }
        }
        Polynomial { terms: out }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut acc = Polynomial::zero();
        for (c, m) in &small.terms {
            acc = self.axpy(*c, m, big, &acc);
        }
        acc
    }

    pub fn pow(&self, f: &Polynomial, e: u32) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading_coefficient() {
            None | Some(1) => f.clone(),
            Some(c) => self.scale(f, self.field.inv(c)),
        }
    }

    /// Substitutes `images[i]` for the `i`-th variable of `source` (a ring with `images.len()` variables).
    pub fn substitute(&self, f: &Polynomial, images: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (c, m) in &f.terms {
            let mut t = self.constant(*c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = self.mul(&t, &self.pow(&images[i], e as u32));
                }
            }
            acc = self.add(&acc, &t);
        }
        acc
    }

    pub fn display<'a>(&'a self, f: &'a Polynomial) -> impl fmt::Display + 'a {
        PolyDisplay {
            ring: self,
            poly: f,
        }
    }

    pub fn to_string(&self, f: &Polynomial) -> String {
        self.display(f).to_string()
    }

    /// Parses `2*x^2*y - y^3 + (x+y)^2` style text.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let mut p = Parser {
            ring: self,
            src: text.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        let f = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(f)
    }

    pub fn parse_homogeneous(&self, text: &str) -> Result<Polynomial> {
        let f = self.parse(text)?;
        if !f.is_homogeneous() {
            return Err(Error::Inhomogeneous(text.trim().to_string()));
        }
        Ok(f)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct PolyDisplay<'a> {
    ring: &'a PolyRing,
    poly: &'a Polynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (c, m)) in self.poly.terms.iter().enumerate() {
            let s = self.ring.field.to_signed(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else if s < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", m.display(&self.ring.names))?;
            } else {
                write!(f, "{mag}*{}", m.display(&self.ring.names))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Polynomial> {
        let r = self.ring;
        let mut acc = Polynomial::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let negate = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = if negate {
                r.sub(&acc, &t)
            } else {
                r.add(&acc, &t)
            };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f);
                }
                // implicit product such as `3x` or `2(x+y)`
                Some(c) if c.is_ascii_alphabetic() || c == b'(' || c == b'_' => {
                    let f = self.power()?;
                    acc = self.ring.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self
                .integer()
                .ok_or_else(|| self.error("expected exponent after `^`"))?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.sum()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.ring.field.characteristic() as u64;
                let v = self.integer().ok_or_else(|| self.error("bad integer"))?;
                Ok(self.ring.constant((v % p) as u32))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.variable_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(_) => Err(self.error("expected a term")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Convenience: exponent vector to monomial.
pub fn mono(exps: &[u16]) -> Monomial {
    Monomial::new(Exponents::from_slice(exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let r = PolyRing::with_vars(&["x", "y", "z"]);
        let f = r.parse("x^2 - y*z + 3x*y").unwrap();
        assert_eq!(r.to_string(&f), "x^2 + 3*x*y - y*z");
        assert_eq!(r.parse(&r.to_string(&f)).unwrap(), f);
        let g = r.parse("(x+y)^2 - x^2 - 2*x*y").unwrap();
        assert_eq!(g, r.parse("y^2").unwrap());
    }

    #[test]
    fn parse_errors_carry_position() {
        let r = PolyRing::with_vars(&["x", "y"]);
        match r.parse("x^") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            r.parse("x + w"),
            Err(Error::Parse { column: 5, .. })
        ));
        assert!(matches!(
            r.parse_homogeneous("x + y^2"),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn arithmetic_basics() {
        let r = PolyRing::with_vars(&["x", "y"]);
        let f = r.parse("x + y").unwrap();
        let g = r.parse("x - y").unwrap();
        assert_eq!(r.mul(&f, &g), r.parse("x^2 - y^2").unwrap());
        assert!(r.sub(&f, &f).is_zero());
        assert_eq!(r.parse("2*y").unwrap().homogeneous_degree(), Some(1));
        assert_eq!(r.parse("5").unwrap().constant_coefficient(), 5);
    }
}
