//! Exponent vectors and the three supported monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial `x_1^{a_1} ... x_n^{a_n}` with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
    /// bit `i` set iff `exps[i] > 0` (first 64 variables); used to reject divisors quickly
    mask: u64,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>) -> Self {
        let exps = exps.into();
        let deg = exps.iter().map(|&e| e as u32).sum();
        let mask = support_mask(&exps);
        Monomial { exps, deg, mask }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
            mask: 0,
        }
    }

    /// The variable `x_i` in a ring with `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, nvars);
        exps[i] = 1;
        Monomial::new(exps)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
            mask: self.mask | other.mask,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg || self.mask & !other.mask != 0 {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::new(
            other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(b, a)| b - a)
                .collect::<Exponents>(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect::<Exponents>(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect::<Exponents>(),
        )
    }

    /// `self / gcd(self, other)`: the generator of the monomial colon `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect::<Exponents>(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
            && self
                .exps
                .iter()
                .zip(other.exps.iter())
                .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the only variable occurring, if this is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Renders with the given variable names, e.g. `x^2*y`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        MonomialDisplay { mono: self, names }
    }
}

fn support_mask(exps: &[u16]) -> u64 {
    exps.iter()
        .take(64)
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |m, (i, _)| m | (1 << i))
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Monomial orders with the variable precedence `x_1 > x_2 > ... > x_n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    DegLex,
    Lex,
}

impl MonomialOrder {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "degrevlex" | "grevlex" => Some(MonomialOrder::DegRevLex),
            "deglex" | "grlex" => Some(MonomialOrder::DegLex),
            "lex" | "plex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::DegLex => "deglex",
            MonomialOrder::Lex => "lex",
        }
    }

    /// `Greater` means `a` is the larger monomial.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::DegLex => a.deg.cmp(&b.deg).then_with(|| lex_cmp(a, b)),
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| {
                for (x, y) in a.exps.iter().zip(b.exps.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[inline]
fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps.iter().zip(b.exps.iter()) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

/// All monomials of degree `d` in `n` variables, in lex-descending order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut exps = vec![0u16; n];
    fill_lex(&mut exps, 0, d, &mut out);
    out
}

fn fill_lex(exps: &mut [u16], i: usize, rest: u32, out: &mut Vec<Monomial>) {
    let n = exps.len();
    if i == n - 1 {
        exps[i] = rest as u16;
        out.push(Monomial::new(Exponents::from_slice(exps)));
        return;
    }
    for e in (0..=rest).rev() {
        exps[i] = e as u16;
        fill_lex(exps, i + 1, rest - e, out);
    }
    exps[i] = 0;
}

/// `C(n + d - 1, d)`, the number of degree-`d` monomials in `n` variables.
pub fn count_monomials(n: usize, d: u32) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    binomial((n as u64) + d as u64 - 1, d as u64)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(Exponents::from_slice(e))
    }

    #[test]
    fn degrevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::DegRevLex;
        // y^2 z > x z^2 in degrevlex with x > y > z
        assert_eq!(o.cmp(&m(&[0, 2, 1]), &m(&[1, 0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 0])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::DegLex.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn enumerates_lex_descending() {
        let mons = monomials_of_degree(2, 3);
        assert_eq!(mons.len(), 4);
        assert_eq!(mons[0], m(&[3, 0]));
        assert_eq!(mons[3], m(&[0, 3]));
        assert_eq!(count_monomials(3, 2), 6);
        assert_eq!(
            monomials_of_degree(3, 4).len() as u64,
            count_monomials(3, 4)
        );
        for w in monomials_of_degree(3, 3).windows(2) {
            assert_eq!(MonomialOrder::Lex.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn divisibility_and_colon() {
        let a = m(&[2, 1, 0]);
        let b = m(&[3, 1, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Some(m(&[1, 0, 2])));
        assert_eq!(m(&[2, 0]).colon(&m(&[1, 3])), m(&[1, 0]));
        assert_eq!(m(&[0, 4]).pure_power_var(), Some(1));
        assert_eq!(m(&[1, 4]).pure_power_var(), None);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..5, 3).prop_map(|v| Monomial::new(Exponents::from_vec(v)))
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            for o in [MonomialOrder::DegRevLex, MonomialOrder::DegLex, MonomialOrder::Lex] {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
            }
        }

        #[test]
        fn graded_orders_refine_degree(a in arb_mono(), b in arb_mono()) {
            for o in [MonomialOrder::DegRevLex, MonomialOrder::DegLex] {
                if a.degree() > b.degree() {
                    prop_assert_eq!(o.cmp(&a, &b), Ordering::Greater);
                }
            }
        }

        #[test]
        fn lcm_gcd_identity(a in arb_mono(), b in arb_mono()) {
            prop_assert_eq!(a.lcm(&b).mul(&a.gcd(&b)), a.mul(&b));
        }
    }
}
