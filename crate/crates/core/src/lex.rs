//! Macaulay representations, lex-segment ideals and stretched algebras.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::artinian_rate_bound;
use crate::hilbert::hilbert_series;
use crate::ideal::QuotientRing;
use crate::invariants::{backelin_rate, linear_annihilator, maximal_ideal_shifted, RateReport};
use crate::module::Presentation;
use crate::monomial::{binomial, count_monomials, monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use crate::random::default_ring;
use crate::resolution::ResolveOptions;

/// `a = C(k_d, d) + C(k_{d-1}, d-1) + ... + C(k_j, j)` with `k_d > k_{d-1} > ... > k_j ≥ j ≥ 1`,
/// as `(k, i)` pairs from `i = d` down.
pub fn macaulay_rep(a: u64, d: u32) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut rest = a;
    let mut i = d;
    while rest > 0 && i >= 1 {
        let mut k = i as u64;
        while binomial(k + 1, i as u64) <= rest {
            k += 1;
        }
        out.push((k, i));
        rest -= binomial(k, i as u64);
        i -= 1;
    }
    out
}

/// Sum of a Macaulay representation.
pub fn macaulay_eval(rep: &[(u64, u32)]) -> u64 {
    rep.iter().map(|&(k, i)| binomial(k, i as u64)).sum()
}

/// `a^{<d>}`: the largest admissible value of `H(d+1)` when `H(d) = a`.
pub fn macaulay_bound(a: u64, d: u32) -> u64 {
    macaulay_rep(a, d)
        .iter()
        .map(|&(k, i)| binomial(k + 1, i as u64 + 1))
        .sum()
}

/// `H(0), ..., H(D)` in `n` variables; when `artinian`, `H(d) = 0` for `d > D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub values: Vec<u64>,
    pub n: usize,
    pub artinian: bool,
}

impl HilbertFunction {
    /// Trailing zeros are dropped and turn on the Artinian flag.
    pub fn new(mut values: Vec<u64>, n: usize, artinian: bool) -> Self {
        let mut artinian = artinian;
        while values.len() > 1 && *values.last().unwrap() == 0 {
            values.pop();
            artinian = true;
        }
        HilbertFunction {
            values,
            n,
            artinian,
        }
    }

    pub fn at(&self, d: usize) -> Option<u64> {
        match self.values.get(d) {
            Some(v) => Some(*v),
            None if self.artinian => Some(0),
            None => None,
        }
    }

    /// First degree violating `H(0) = 1`, `H(d) ≤ dim S_d` or Macaulay's bound.
    pub fn check_admissible(&self) -> Result<()> {
        if self.values.first() != Some(&1) {
            return Err(Error::InvalidInput("H(0) must be 1".into()));
        }
        for (d, &h) in self.values.iter().enumerate() {
            let full = count_monomials(self.n, d as u32);
            if h > full {
                return Err(Error::InvalidInput(format!(
                    "H({d}) = {h} exceeds dim S_{d} = {full}"
                )));
            }
            if d >= 1 && d + 1 < self.values.len() {
                let bound = macaulay_bound(h, d as u32);
                let next = self.values[d + 1];
                if next > bound {
                    return Err(Error::InvalidInput(format!(
                        "H({}) = {next} exceeds the Macaulay bound {bound} at degree {d}",
                        d + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A monomial ideal by its minimal generators, sorted by degree and then lex-descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    pub gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(gens: Vec<Monomial>) -> Self {
        let mut sorted = gens;
        sorted.sort_by(lex_key);
        sorted.dedup();
        let mut min: Vec<Monomial> = Vec::new();
        for g in sorted {
            if !min.iter().any(|h| h.divides(&g)) {
                min.push(g);
            }
        }
        min.sort_by(lex_key);
        MonomialIdeal { gens: min }
    }

    /// Leading monomials of a monomial ideal's generators in `R`'s ambient ring.
    pub fn from_polys(gens: &[Polynomial]) -> Option<Self> {
        let ms: Option<Vec<Monomial>> = gens
            .iter()
            .map(|g| {
                g.is_monomial()
                    .then(|| g.leading_monomial().unwrap().clone())
            })
            .collect();
        ms.map(MonomialIdeal::new)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn to_polys(&self, ring: &PolyRing) -> Vec<Polynomial> {
        self.gens.iter().map(|m| ring.monomial(m.clone())).collect()
    }

    pub fn to_strings(&self, names: &[String]) -> Vec<String> {
        self.gens
            .iter()
            .map(|m| m.display(names).to_string())
            .collect()
    }
}

fn lex_key(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| MonomialOrder::Lex.cmp(b, a))
}

/// Degree-`d` monomials in lex-descending order.
fn lex_monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut ms = monomials_of_degree(n, d);
    ms.sort_by(|a, b| MonomialOrder::Lex.cmp(b, a));
    ms
}

/// `Lex(H)`: in each degree the largest `dim S_d - H(d)` monomials in lex order.
pub fn lex_ideal(h: &HilbertFunction) -> Result<MonomialIdeal> {
    h.check_admissible()?;
    let top = if h.artinian {
        h.values.len()
    } else {
        h.values.len() - 1
    };
    let mut gens: Vec<Monomial> = Vec::new();
    for d in 0..=top {
        let ms = lex_monomials(h.n, d as u32);
        let keep = ms.len() - h.at(d).unwrap() as usize;
        let segment = &ms[..keep];
        for m in segment {
            if !gens.iter().any(|g| g.divides(m)) {
                gens.push(m.clone());
            }
        }
        // the ideal in degree d must be exactly the segment
        let inside = ms
            .iter()
            .filter(|m| gens.iter().any(|g| g.divides(m)))
            .count();
        if inside != keep {
            return Err(Error::InvalidInput(format!(
                "lower lex segments generate {inside} monomials in degree {d}, more than {keep}"
            )));
        }
    }
    Ok(MonomialIdeal::new(gens))
}

/// `H(S/J)(d)` for `d ≤ top` by counting monomials outside `J`.
pub fn monomial_quotient_hilbert(n: usize, j: &MonomialIdeal, top: usize) -> Vec<u64> {
    (0..=top)
        .map(|d| {
            monomials_of_degree(n, d as u32)
                .iter()
                .filter(|m| !j.contains(m))
                .count() as u64
        })
        .collect()
}

/// Each degree-`d` piece of `J` is an upper lex segment, for `d ≤ top`.
pub fn is_lex_segment_ideal(n: usize, j: &MonomialIdeal, top: usize) -> bool {
    (0..=top).all(|d| {
        let ms = lex_monomials(n, d as u32);
        let inside: Vec<bool> = ms.iter().map(|m| j.contains(m)).collect();
        inside.windows(2).all(|w| w[0] || !w[1])
    })
}

/// `F_p[X_1..X_h]/(X_i X_j, X_h^{s+2} : i ≤ h-1, j ≤ h)`.
pub fn stretched_algebra(h: usize, s: u32) -> Result<QuotientRing> {
    if h < 2 || s < 2 {
        return Err(Error::InvalidInput(format!(
            "stretched algebras need h, s ≥ 2 (got h = {h}, s = {s})"
        )));
    }
    let ring = default_ring(h);
    let mut gens = Vec::new();
    for i in 0..h - 1 {
        for j in i..h {
            gens.push(ring.mul(&ring.var(i), &ring.var(j)));
        }
    }
    gens.push(ring.pow(&ring.var(h - 1), s + 2));
    QuotientRing::new(ring, &gens)
}

/// Outcome of checking the four claims about a stretched algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StretchedReport {
    pub h: usize,
    pub s: u32,
    pub generators: Vec<String>,
    pub hilbert: Vec<u64>,
    pub expected_hilbert: Vec<u64>,
    pub tau: usize,
    pub m_of_i: u32,
    pub lex_matches: bool,
    pub rate: RateReport,
    pub hilbert_ok: bool,
    pub tau_ok: bool,
    pub m_ok: bool,
    pub rate_ok: bool,
}

impl StretchedReport {
    pub fn passed(&self) -> bool {
        self.hilbert_ok && self.tau_ok && self.m_ok && self.lex_matches && self.rate_ok
    }
}

/// Hilbert series `1 + hz + z^2 + ... + z^{s+1}`, `τ = h`, `m(I) = s + 2`, `I = Lex(H)`,
/// and `Rate = s + 1` certified by the Artinian bound on `m(1)` and `t_2(K) = s + 2`.
pub fn verify_stretched_theorem(
    h: usize,
    s: u32,
    opts: &ResolveOptions,
) -> Result<StretchedReport> {
    let r = Arc::new(stretched_algebra(h, s)?);
    let top = s as i32 + 3;
    let hs = hilbert_series(&Presentation::free(r.clone(), vec![0]), top)?;
    let mut expected = vec![1, h as u64];
    expected.extend(std::iter::repeat_n(1, s as usize));
    expected.resize(top as usize + 1, 0);
    let hilbert_ok = hs.coefficients == expected;

    let ann = linear_annihilator(&r, s + 4)?;
    let m_of_i = r.max_generator_degree();

    let hf = HilbertFunction::new(hs.coefficients.clone(), h, true);
    let lex = lex_ideal(&hf)?;
    let own = MonomialIdeal::from_polys(&r.min_gens);
    let lex_matches = own.as_ref() == Some(&lex);

    let m1 = maximal_ideal_shifted(&r, None)?;
    let bound = artinian_rate_bound(&r, &m1)?;
    let rate = backelin_rate(&r, opts, Some(bound.into_upper_bound()))?;
    let lower_witness = rate.ratios.iter().any(|e| e.i == 2 && e.t == s as i32 + 2);
    let rate_ok = rate.value == (s as i64 + 1).into() && rate.is_exact() && lower_witness;

    Ok(StretchedReport {
        h,
        s,
        generators: r.min_gens.iter().map(|g| r.ring().to_string(g)).collect(),
        hilbert: hs.coefficients,
        expected_hilbert: expected,
        tau: ann.tau,
        m_of_i,
        lex_matches,
        rate,
        hilbert_ok,
        tau_ok: ann.tau == h,
        m_ok: m_of_i == s + 2,
        rate_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn macaulay_representations() {
        assert_eq!(macaulay_rep(5, 2), vec![(3, 2), (2, 1)]);
        assert_eq!(macaulay_rep(1, 4), vec![(4, 4)]);
        assert_eq!(macaulay_rep(6, 2), vec![(4, 2)]);
        assert_eq!(macaulay_bound(5, 2), 7);
        assert_eq!(macaulay_bound(1, 3), 1);
        assert_eq!(macaulay_bound(3, 1), 6);
        for a in 1..=100 {
            for d in 1..=5 {
                let rep = macaulay_rep(a, d);
                assert_eq!(macaulay_eval(&rep), a);
                assert!(rep.windows(2).all(|w| w[0].0 > w[1].0));
                assert!(rep.iter().all(|&(k, i)| k >= i as u64 && i >= 1));
            }
        }
    }

    #[test]
    fn lex_ideal_of_stretched_function() {
        let ring = default_ring(2);
        let j = lex_ideal(&HilbertFunction::new(vec![1, 2, 1, 1], 2, true)).unwrap();
        let want: Vec<Polynomial> = ["x^2", "x*y", "y^4"]
            .iter()
            .map(|t| ring.parse(t).unwrap())
            .collect();
        assert_eq!(j, MonomialIdeal::from_polys(&want).unwrap());
    }

    #[test]
    fn lex_ideal_recount() {
        let h = HilbertFunction::new(vec![1, 3, 3, 1], 3, true);
        let j = lex_ideal(&h).unwrap();
        assert_eq!(monomial_quotient_hilbert(3, &j, 5), vec![1, 3, 3, 1, 0, 0]);
        assert!(is_lex_segment_ideal(3, &j, 5));
    }

    #[test]
    fn overflow_is_rejected() {
        let err = lex_ideal(&HilbertFunction::new(vec![1, 2, 4], 2, false)).unwrap_err();
        assert!(err.to_string().contains("H(2) = 4"), "{err}");
        assert!(lex_ideal(&HilbertFunction::new(vec![1, 2, 1, 2], 2, false)).is_err());
    }

    #[test]
    fn stretched_generators() {
        let r = stretched_algebra(3, 2).unwrap();
        let names: Vec<String> = r.min_gens.iter().map(|g| r.ring().to_string(g)).collect();
        assert_eq!(names, vec!["x^2", "x*y", "x*z", "y^2", "y*z", "z^4"]);
        let r = stretched_algebra(2, 3).unwrap();
        assert_eq!(r.max_generator_degree(), 5);
        assert!(stretched_algebra(1, 3).is_err());
        assert!(stretched_algebra(2, 1).is_err());
    }

    #[test]
    fn stretched_theorem_small_case() {
        let rep = verify_stretched_theorem(2, 2, &ResolveOptions::new(5, Some(20))).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.rate.value, 3.into());
    }
}
