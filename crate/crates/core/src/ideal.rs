//! Quotient rings `S/I`, minimal generators, membership and colon ideals.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, buchberger_truncated, normal_form_unchecked, poly_to_terms, run_engine,
    terms_to_poly, EngineConfig, EngineInput, EngineOrder,
};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};

/// A standard graded algebra `R = S/I` with `I` homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    pub ambient: Arc<PolyRing>,
    /// reduced Gröbner basis of `I`
    pub gb: Vec<Polynomial>,
    /// a minimal homogeneous generating set of `I`
    pub min_gens: Vec<Polynomial>,
    minimal_presentation: bool,
}

impl QuotientRing {
    /// `S` itself.
    pub fn polynomial(ambient: PolyRing) -> Self {
        QuotientRing {
            ambient: Arc::new(ambient),
            gb: Vec::new(),
            min_gens: Vec::new(),
            minimal_presentation: true,
        }
    }

    /// `S/I` for a defining ideal of initial degree at least two.
    pub fn new(ambient: PolyRing, gens: &[Polynomial]) -> Result<Self> {
        let min_gens = minimalize_generators(&ambient, gens)?;
        if let Some(g) = min_gens.iter().find(|g| g.homogeneous_degree() < Some(2)) {
            return Err(Error::LinearGenerator {
                degree: g.homogeneous_degree().unwrap_or(0),
                poly: ambient.to_string(g),
            });
        }
        let gb = buchberger(&ambient, &min_gens)?;
        Ok(QuotientRing {
            ambient: Arc::new(ambient),
            gb,
            min_gens,
            minimal_presentation: true,
        })
    }

    /// `S/I` where `I` may contain linear forms (e.g. `R/(l)` built inside the ambient of `R`).
    pub fn new_unrestricted(ambient: Arc<PolyRing>, gens: &[Polynomial]) -> Result<Self> {
        let min_gens = minimalize_generators(&ambient, gens)?;
        let gb = buchberger(&ambient, &min_gens)?;
        let minimal_presentation = min_gens.iter().all(|g| g.homogeneous_degree() >= Some(2));
        Ok(QuotientRing {
            ambient,
            gb,
            min_gens,
            minimal_presentation,
        })
    }

    pub fn parse(ambient: PolyRing, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|g| ambient.parse_homogeneous(g))
            .collect::<Result<Vec<_>>>()?;
        QuotientRing::new(ambient, &polys)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn has_minimal_presentation(&self) -> bool {
        self.minimal_presentation
    }

    /// `m(I)`: the largest degree of a minimal generator (0 for `I = 0`).
    pub fn max_generator_degree(&self) -> u32 {
        self.min_gens
            .iter()
            .filter_map(|g| g.homogeneous_degree())
            .max()
            .unwrap_or(0)
    }

    /// `indeg(I)` (0 for `I = 0`).
    pub fn initial_degree(&self) -> u32 {
        self.min_gens
            .iter()
            .filter_map(|g| g.homogeneous_degree())
            .min()
            .unwrap_or(0)
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.gb.is_empty() {
            return f.clone();
        }
        normal_form_unchecked(&self.ambient, f, &self.gb)
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.reduce(&self.ambient.mul(f, g))
    }

    /// Whether every defining generator is a monomial.
    pub fn is_monomial(&self) -> bool {
        self.gb.iter().all(|g| g.is_monomial())
    }

    pub fn is_standard_monomial(&self, m: &Monomial) -> bool {
        !self
            .gb
            .iter()
            .any(|g| g.leading_monomial().unwrap().divides(m))
    }

    /// The same quotient computed under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<QuotientRing> {
        let ambient = self.ambient.with_order(order);
        let gens: Vec<Polynomial> = self.min_gens.iter().map(|g| ambient.import(g)).collect();
        let gb = buchberger(&ambient, &gens)?;
        Ok(QuotientRing {
            ambient: Arc::new(ambient),
            gb,
            min_gens: gens,
            minimal_presentation: self.minimal_presentation,
        })
    }

    /// `R/(extra)` as a quotient of the same polynomial ring.
    pub fn quotient_by(&self, extra: &[Polynomial]) -> Result<QuotientRing> {
        let mut gens = self.min_gens.clone();
        gens.extend(extra.iter().cloned());
        QuotientRing::new_unrestricted(self.ambient.clone(), &gens)
    }

    pub fn ideal_of(&self, gens: &[Polynomial]) -> Ideal {
        Ideal::new(self, gens)
    }
}

/// An ideal of a quotient ring, stored as lifted homogeneous generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(r: &QuotientRing, gens: &[Polynomial]) -> Ideal {
        Ideal {
            gens: gens
                .iter()
                .map(|g| r.reduce(g))
                .filter(|g| !g.is_zero())
                .collect(),
        }
    }

    pub fn zero() -> Ideal {
        Ideal { gens: Vec::new() }
    }

    /// The irrelevant ideal generated by all variables.
    pub fn maximal(r: &QuotientRing) -> Ideal {
        Ideal::new(
            r,
            &(0..r.nvars()).map(|i| r.ambient.var(i)).collect::<Vec<_>>(),
        )
    }

    /// Reduced Gröbner basis of the preimage `I + J` in the ambient ring.
    pub fn preimage_basis(&self, r: &QuotientRing) -> Result<Vec<Polynomial>> {
        let mut all = r.gb.clone();
        all.extend(self.gens.iter().cloned());
        buchberger(&r.ambient, &all)
    }

    pub fn contains(&self, r: &QuotientRing, f: &Polynomial) -> Result<bool> {
        let gb = self.preimage_basis(r)?;
        Ok(normal_form_unchecked(&r.ambient, f, &gb).is_zero())
    }

    pub fn is_subset_of(&self, r: &QuotientRing, other: &Ideal) -> Result<bool> {
        let gb = other.preimage_basis(r)?;
        Ok(self
            .gens
            .iter()
            .all(|g| normal_form_unchecked(&r.ambient, g, &gb).is_zero()))
    }

    pub fn equals(&self, r: &QuotientRing, other: &Ideal) -> Result<bool> {
        Ok(self.is_subset_of(r, other)? && other.is_subset_of(r, self)?)
    }

    /// Minimal generators in `R`.
    pub fn minimal_generators(&self, r: &QuotientRing) -> Result<Vec<Polynomial>> {
        minimalize_in(r, &self.gens)
    }

    /// `m(J)` in `R` (0 for the zero ideal).
    pub fn max_generator_degree(&self, r: &QuotientRing) -> Result<u32> {
        Ok(self
            .minimal_generators(r)?
            .iter()
            .filter_map(|g| g.homogeneous_degree())
            .max()
            .unwrap_or(0))
    }
}

/// Minimal homogeneous generating set of the ideal of `S` generated by `gens`.
///
/// Degrees are processed increasingly; a generator is kept iff it is not in the
/// ideal generated by the generators already kept. Input order decides ties.
pub fn minimalize_generators(ring: &PolyRing, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    minimalize_modulo(ring, &[], gens)
}

/// Minimal generators of the ideal `(gens)` of `R`, as elements reduced modulo `I`.
pub fn minimalize_in(r: &QuotientRing, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let reduced: Vec<Polynomial> = gens.iter().map(|g| r.reduce(g)).collect();
    minimalize_modulo(&r.ambient, &r.gb, &reduced)
}

fn minimalize_modulo(
    ring: &PolyRing,
    base: &[Polynomial],
    gens: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let mut sorted: Vec<(u32, usize, &Polynomial)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        ring.check(g)?;
        if g.is_zero() {
            continue;
        }
        let d = g
            .homogeneous_degree()
            .ok_or_else(|| Error::Inhomogeneous(ring.to_string(g)))?;
        sorted.push((d, i, g));
    }
    sorted.sort_by_key(|(d, i, _)| (*d, *i));
    let all_monomial = base
        .iter()
        .chain(gens.iter())
        .all(|g| g.is_zero() || g.is_monomial());

    let mut kept: Vec<Polynomial> = Vec::new();
    for (d, _, g) in sorted {
        let member = if all_monomial {
            let m = g.leading_monomial().unwrap();
            base.iter()
                .chain(kept.iter())
                .any(|h| h.leading_monomial().unwrap().divides(m))
        } else {
            let mut all: Vec<Polynomial> = base.to_vec();
            all.extend(kept.iter().cloned());
            let gb = buchberger_truncated(ring, &all, Some(d as i32))?.gb;
            normal_form_unchecked(ring, g, &gb).is_zero()
        };
        if !member {
            kept.push(ring.monic(g));
        }
    }
    Ok(kept)
}

/// `(J : f)` in `R`, where `J` is given by generators.
///
/// Monomial data over a monomial quotient uses the generator-wise quotient rule;
/// otherwise the colon is read off the last coordinate of the syzygies of
/// `(gens, f)` over `R`.
pub fn colon(r: &QuotientRing, gens: &[Polynomial], f: &Polynomial) -> Result<Ideal> {
    let ring = &r.ambient;
    ring.check(f)?;
    let f = r.reduce(f);
    if f.is_zero() {
        return Err(Error::InvalidInput("colon by the zero element".into()));
    }
    let fd = f
        .homogeneous_degree()
        .ok_or_else(|| Error::Inhomogeneous(ring.to_string(&f)))?;
    let mut all: Vec<Polynomial> = Vec::new();
    for g in gens {
        ring.check(g)?;
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous(ring.to_string(g)));
        }
        let g = r.reduce(g);
        if !g.is_zero() {
            all.push(g);
        }
    }

    if r.is_monomial() && f.is_monomial() && all.iter().all(|g| g.is_monomial()) {
        let fm = f.leading_monomial().unwrap();
        let quotients: Vec<Polynomial> = all
            .iter()
            .chain(r.gb.iter())
            .map(|g| ring.monomial(g.leading_monomial().unwrap().colon(fm)))
            .collect();
        let gens = minimalize_in(r, &quotients)?;
        return Ok(Ideal { gens });
    }

    // syzygies of the row (g_1, ..., g_k, f) together with I, tracked in the
    // coordinate of f only
    let fp = &ring.field;
    let shifts = vec![0, fd as i32];
    let order = EngineOrder {
        mono: ring.order,
        shifts,
        block: 1,
    };
    let mut inputs: Vec<EngineInput> = Vec::new();
    let mut ft = poly_to_terms(&f, 0);
    ft.push(crate::groebner::VTerm {
        c: 1,
        m: Monomial::one(ring.nvars()),
        k: 1,
    });
    inputs.push(EngineInput {
        terms: ft,
        pure_ideal: false,
    });
    for g in all.iter().chain(r.gb.iter()) {
        inputs.push(EngineInput {
            terms: poly_to_terms(g, 0),
            pure_ideal: false,
        });
    }
    let cfg = EngineConfig {
        order,
        dmax: None,
        product_criterion: false,
        budget: None,
    };
    let out = run_engine(fp, &cfg, inputs)?;
    let quotients: Vec<Polynomial> = out.syzygies.iter().map(|(_, t)| terms_to_poly(t)).collect();
    let gens = minimalize_in(r, &quotients)?;
    Ok(Ideal { gens })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> PolyRing {
        PolyRing::with_vars(&["x", "y"])
    }

    fn ps(r: &PolyRing, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    #[test]
    fn minimal_generators_examples() {
        let r = s2();
        assert_eq!(
            minimalize_generators(&r, &ps(&r, &["x^2", "x*y", "x^2*y"])).unwrap(),
            ps(&r, &["x^2", "x*y"])
        );
        let q = QuotientRing::parse(s2(), &["x^2", "x*y", "y^4"]).unwrap();
        assert_eq!(q.min_gens.len(), 3);
        assert_eq!(q.max_generator_degree(), 4);
        assert_eq!(q.initial_degree(), 2);
        assert!(matches!(
            QuotientRing::parse(s2(), &["x + y", "y^2"]),
            Err(Error::LinearGenerator { .. })
        ));
    }

    #[test]
    fn non_monomial_redundancy_detected() {
        let r = PolyRing::with_vars(&["x", "y", "z"]);
        let g = ps(
            &r,
            &[
                "x^2 - y*z",
                "x*y - z^2",
                "x^2*y - y^2*z + x^2*z - y*z^2",
                "y^2*z - x*z^2",
            ],
        );
        let m = minimalize_generators(&r, &g).unwrap();
        // the third is (x^2 - yz)(y + z); the fourth is in (x^2 - yz, xy - z^2) as well
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn m_of_i_is_order_independent() {
        let q = QuotientRing::parse(
            PolyRing::with_vars(&["x", "y", "z"]),
            &["x^2 - y*z", "x*y - z^2", "y^3 - x*z^2"],
        )
        .unwrap();
        for o in [MonomialOrder::DegLex, MonomialOrder::Lex] {
            let q2 = q.with_order(o).unwrap();
            let again = minimalize_generators(&q2.ambient, &q2.gb).unwrap();
            let mut d1: Vec<u32> = q
                .min_gens
                .iter()
                .filter_map(|g| g.homogeneous_degree())
                .collect();
            let mut d2: Vec<u32> = again
                .iter()
                .filter_map(|g| g.homogeneous_degree())
                .collect();
            d1.sort();
            d2.sort();
            assert_eq!(d1, d2);
        }
    }

    #[test]
    fn colon_examples() {
        let r = s2();
        let s = QuotientRing::polynomial(s2());
        let c = colon(&s, &ps(&r, &["x^2", "x*y"]), &r.parse("x").unwrap()).unwrap();
        assert_eq!(c.gens, ps(&r, &["x", "y"]));

        let q = QuotientRing::parse(s2(), &["x^2", "x*y"]).unwrap();
        let c = colon(&q, &[], &r.parse("x").unwrap()).unwrap();
        assert!(c.equals(&q, &Ideal::maximal(&q)).unwrap());

        let c = colon(
            &s,
            &ps(&r, &["x^2", "x*y", "y^4"]),
            &r.parse("y^3").unwrap(),
        )
        .unwrap();
        assert_eq!(c.gens, ps(&r, &["x", "y"]));
        assert!(colon(&s, &[], &Polynomial::zero()).is_err());
    }

    #[test]
    fn general_colon_matches_hand_computation() {
        // in S = k[x,y,z]: (x*y - z^2) : (x) with I = 0 is (x*y - z^2) since it is prime
        let r = PolyRing::with_vars(&["x", "y", "z"]);
        let s = QuotientRing::polynomial(r.clone());
        let c = colon(&s, &ps(&r, &["x*y - z^2"]), &r.parse("x").unwrap()).unwrap();
        assert_eq!(c.gens, ps(&r, &["x*y - z^2"]));
        // (0 : x - y) in k[x,y]/(x^2 - y^2): x + y kills x - y
        let q = QuotientRing::parse(s2(), &["x^2 - y^2"]).unwrap();
        let c = colon(&q, &[], &q.ambient.parse("x - y").unwrap()).unwrap();
        assert!(c
            .equals(&q, &q.ideal_of(&ps(&q.ambient, &["x + y"])))
            .unwrap());
    }
}
