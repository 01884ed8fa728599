//! Hilbert series of graded modules from leading-term modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{poly_to_terms, run_engine, EngineConfig, EngineInput, EngineOrder};
use crate::module::Presentation;
use crate::monomial::{binomial, Monomial};

/// Truncated Hilbert series, with the rational closed form when it is known exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// degree of `coefficients[0]`
    pub low: i32,
    /// `dim M_d` for `d = low, ..., low + len - 1`
    pub coefficients: Vec<u64>,
    pub closed_form: Option<ClosedForm>,
}

/// `H(z) = z^low · numerator(z) / (1 - z)^dim`, with `numerator(1) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub low: i32,
    pub numerator: Vec<i64>,
    /// Krull dimension; `None` for the zero module
    pub dim: Option<usize>,
    pub multiplicity: i64,
}

impl HilbertData {
    /// `dim M_d` (zero outside the stored range below `low`).
    pub fn at(&self, d: i32) -> u64 {
        if d < self.low {
            return 0;
        }
        self.coefficients
            .get((d - self.low) as usize)
            .copied()
            .unwrap_or(0)
    }

    /// Sum of all coefficients when the series is a polynomial.
    pub fn total_dimension(&self) -> Option<u64> {
        match &self.closed_form {
            Some(c) if c.dim == Some(0) || c.dim.is_none() => Some(self.coefficients.iter().sum()),
            _ => None,
        }
    }
}

/// Numerator `N` with `H_{S/J} = N / (1 - z)^n`, for a monomial ideal `J` in `n` variables.
pub fn monomial_numerator(n: usize, gens: &[Monomial]) -> Vec<i64> {
    let gens = minimal_monomials(gens.to_vec());
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    if let Some(pivot) = gens.iter().find(|g| g.pure_power_var().is_none()) {
        // 0 -> S/(J:x)(-1) -> S/J -> S/(J + (x)) -> 0
        let var = pivot.exps().iter().position(|&e| e > 0).unwrap();
        let x = Monomial::var(n, var);
        let mut plus = gens.clone();
        plus.push(x.clone());
        let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&x)).collect();
        let a = monomial_numerator(n, &plus);
        let b = monomial_numerator(n, &colon);
        let mut out = vec![0i64; a.len().max(b.len() + 1)];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i + 1] += c;
        }
        return trim_poly(out);
    }
    // pure powers of distinct variables: a regular sequence
    let mut out = vec![1i64];
    for g in &gens {
        let a = g.degree() as usize;
        let mut next = vec![0i64; out.len() + a];
        for (i, c) in out.iter().enumerate() {
            next[i] += c;
            next[i + a] -= c;
        }
        out = next;
    }
    trim_poly(out)
}

fn minimal_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn trim_poly(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Coefficient of `z^d` in `N(z) / (1 - z)^n`.
pub fn expand_coefficient(numerator: &[i64], n: usize, d: i64) -> i64 {
    let mut acc = 0i64;
    for (i, &c) in numerator.iter().enumerate() {
        let k = d - i as i64;
        if k < 0 || c == 0 {
            continue;
        }
        let term = if n == 0 {
            if k == 0 {
                1
            } else {
                0
            }
        } else {
            binomial((k + n as i64 - 1) as u64, (n - 1) as u64) as i64
        };
        acc += c * term;
    }
    acc
}

/// Leading monomials, per generator of `F_0`, of a Gröbner basis of
/// `image(p1) + I F_0`; the flag reports truncation at `dmax`.
pub fn leading_module(p: &Presentation, dmax: Option<i32>) -> Result<(Vec<Vec<Monomial>>, bool)> {
    let ring = p.ring();
    let s = ring.ring();
    let rel = &p.relations;
    let r = rel.nrows();
    let order = EngineOrder {
        mono: s.order,
        shifts: rel.codomain.shifts.clone(),
        block: r as u32,
    };
    let mut inputs = Vec::new();
    for col in &rel.columns {
        let mut terms = col.to_terms(0);
        order.sort(&mut terms, &s.field);
        inputs.push(EngineInput {
            terms,
            pure_ideal: false,
        });
    }
    for g in &ring.gb {
        for k in 0..r {
            inputs.push(EngineInput {
                terms: poly_to_terms(g, k as u32),
                pure_ideal: true,
            });
        }
    }
    let cfg = EngineConfig {
        order,
        dmax,
        product_criterion: r == 1,
        budget: None,
    };
    let out = run_engine(&s.field, &cfg, inputs)?;
    let mut leads = vec![Vec::new(); r];
    for e in &out.basis {
        let t = e.lead();
        leads[t.k as usize].push(t.m.clone());
    }
    Ok((leads, out.truncated))
}

/// `dim M_d` for `d ≤ top`, with the closed form (from an untruncated basis).
pub fn hilbert_series(p: &Presentation, top: i32) -> Result<HilbertData> {
    hilbert_impl(p, top, None)
}

/// Like [`hilbert_series`] but the Gröbner computation stops at degree `top`;
/// the coefficients are exact, no closed form is produced.
pub fn hilbert_series_truncated(p: &Presentation, top: i32) -> Result<HilbertData> {
    hilbert_impl(p, top, Some(top))
}

fn hilbert_impl(p: &Presentation, top: i32, dmax: Option<i32>) -> Result<HilbertData> {
    let n = p.ring().nvars();
    let shifts = &p.generators().shifts;
    let Some(low) = shifts.iter().copied().min() else {
        return Ok(HilbertData {
            low: 0,
            coefficients: vec![0; (top + 1).max(0) as usize],
            closed_form: Some(ClosedForm {
                low: 0,
                numerator: vec![0],
                dim: None,
                multiplicity: 0,
            }),
        });
    };
    let (leads, truncated) = leading_module(p, dmax)?;
    let mut numerator: Vec<i64> = Vec::new();
    for (k, ls) in leads.iter().enumerate() {
        let off = (shifts[k] - low) as usize;
        let nk = monomial_numerator(n, ls);
        if numerator.len() < off + nk.len() {
            numerator.resize(off + nk.len(), 0);
        }
        for (i, c) in nk.iter().enumerate() {
            numerator[off + i] += c;
        }
    }
    let numerator = trim_poly(numerator);
    let coefficients: Vec<u64> = (low..=top.max(low - 1))
        .map(|d| {
            let v = expand_coefficient(&numerator, n, (d - low) as i64);
            debug_assert!(v >= 0);
            v.max(0) as u64
        })
        .collect();
    let closed_form = if truncated || dmax.is_some() {
        None
    } else {
        Some(closed_form(low, numerator, n))
    };
    Ok(HilbertData {
        low,
        coefficients,
        closed_form,
    })
}

fn closed_form(low: i32, mut numerator: Vec<i64>, n: usize) -> ClosedForm {
    if numerator.iter().all(|&c| c == 0) {
        return ClosedForm {
            low,
            numerator: vec![0],
            dim: None,
            multiplicity: 0,
        };
    }
    let mut dim = n;
    // divide by (1 - z) while N(1) = 0
    while numerator.iter().sum::<i64>() == 0 {
        let mut q = vec![0i64; numerator.len() - 1];
        let mut carry = 0i64;
        for i in 0..q.len() {
            carry += numerator[i];
            q[i] = carry;
        }
        numerator = trim_poly(q);
        dim -= 1;
    }
    let multiplicity = numerator.iter().sum();
    ClosedForm {
        low,
        numerator,
        dim: Some(dim),
        multiplicity,
    }
}

/// Multiplicity `e(M)`; requires the exact closed form.
pub fn multiplicity(p: &Presentation) -> Result<i64> {
    let h = hilbert_series(p, 0)?;
    h.closed_form
        .map(|c| c.multiplicity)
        .ok_or_else(|| Error::InvalidInput("closed form unavailable".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientRing;
    use crate::poly::PolyRing;
    use std::sync::Arc;

    fn ring(vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
        Arc::new(QuotientRing::parse(PolyRing::with_vars(vars), gens).unwrap())
    }

    fn of_ring(r: Arc<QuotientRing>, top: i32) -> HilbertData {
        hilbert_series(&Presentation::free(r, vec![0]), top).unwrap()
    }

    #[test]
    fn polynomial_ring() {
        let h = of_ring(ring(&["x", "y"], &[]), 4);
        assert_eq!(h.coefficients, vec![1, 2, 3, 4, 5]);
        let c = h.closed_form.unwrap();
        assert_eq!((c.numerator, c.dim, c.multiplicity), (vec![1], Some(2), 1));
    }

    #[test]
    fn artinian_examples() {
        let h = of_ring(ring(&["x", "y"], &["x^2", "x*y", "y^4"]), 6);
        assert_eq!(h.coefficients, vec![1, 2, 1, 1, 0, 0, 0]);
        assert_eq!(h.total_dimension(), Some(5));
        let h = of_ring(ring(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]), 4);
        assert_eq!(h.coefficients, vec![1, 2, 3, 0, 0]);
        assert_eq!(h.closed_form.unwrap().multiplicity, 6);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(
            multiplicity(&Presentation::free(ring(&["x"], &["x^4"]), vec![0])).unwrap(),
            4
        );
        let r = ring(&["x", "y"], &["x^2"]);
        let h = of_ring(r, 3);
        let c = h.closed_form.unwrap();
        assert_eq!(
            (c.numerator, c.dim, c.multiplicity),
            (vec![1, 1], Some(1), 2)
        );
    }

    #[test]
    fn binomial_ideal_and_module() {
        let r = ring(&["x", "y", "z"], &["x^2 - y*z", "x*y - z^2"]);
        let h = of_ring(r.clone(), 5);
        // complete intersection of two quadrics: (1 + z)^2 / (1 - z)
        assert_eq!(h.coefficients, vec![1, 3, 4, 4, 4, 4]);
        let k = hilbert_series(&Presentation::residue_field(r), 3).unwrap();
        assert_eq!(k.coefficients, vec![1, 0, 0, 0]);
    }

    #[test]
    fn truncated_agrees_with_exact() {
        let r = ring(&["x", "y", "z"], &["x^2 - y*z", "x*y - z^2"]);
        let p = Presentation::free(r, vec![0, 2]);
        let a = hilbert_series(&p, 6).unwrap();
        let b = hilbert_series_truncated(&p, 6).unwrap();
        assert_eq!(a.coefficients, b.coefficients);
        assert!(b.closed_form.is_none());
    }
}
