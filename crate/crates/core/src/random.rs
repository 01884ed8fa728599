//! Seeded generators of small random test objects.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ideal::{minimalize_generators, QuotientRing};
use crate::module::Presentation;
use crate::monomial::{monomials_of_degree, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};

/// The deterministic generator used by every randomized suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `x, y, z` for up to three variables, `x1, x2, ...` otherwise.
pub fn default_ring(n: usize) -> PolyRing {
    if n <= 3 {
        PolyRing::with_vars(&["x", "y", "z"][..n])
    } else {
        PolyRing::standard(Default::default(), n, MonomialOrder::DegRevLex)
    }
}

/// Between one and `max_gens` random monomials of degrees in `lo..=hi`, minimalized.
pub fn random_monomials<R: Rng>(
    rng: &mut R,
    ring: &PolyRing,
    max_gens: usize,
    lo: u32,
    hi: u32,
) -> Vec<Polynomial> {
    let k = rng.gen_range(1..=max_gens);
    let gens: Vec<Polynomial> = (0..k)
        .map(|_| {
            let d = rng.gen_range(lo..=hi);
            let ms = monomials_of_degree(ring.nvars(), d);
            ring.monomial(ms.choose(rng).unwrap().clone())
        })
        .collect();
    minimalize_generators(ring, &gens).expect("monomials are homogeneous")
}

/// A random homogeneous polynomial of degree `d` with up to `terms` terms.
pub fn random_form<R: Rng>(rng: &mut R, ring: &PolyRing, d: u32, terms: usize) -> Polynomial {
    let ms = monomials_of_degree(ring.nvars(), d);
    let p = ring.field.characteristic();
    let picked: Vec<_> = ms
        .choose_multiple(rng, terms.min(ms.len()))
        .cloned()
        .collect();
    ring.from_terms(picked.into_iter().map(|m| (rng.gen_range(1..p), m)))
}

/// `F_p[x_1..x_n]/I` with `I` generated by random monomials of degree 2..=`max_deg`.
pub fn random_monomial_quotient<R: Rng>(
    rng: &mut R,
    n: usize,
    max_gens: usize,
    max_deg: u32,
) -> QuotientRing {
    let ring = default_ring(n);
    let gens = random_monomials(rng, &ring, max_gens, 2, max_deg.max(2));
    QuotientRing::new(ring, &gens).expect("degree-two monomial generators")
}

/// `F_p[x_1..x_n]/I` with every variable to some power in `I`, plus random monomials.
pub fn random_artinian_quotient<R: Rng>(
    rng: &mut R,
    n: usize,
    max_extra: usize,
    max_deg: u32,
) -> QuotientRing {
    let ring = default_ring(n);
    let mut gens: Vec<Polynomial> = (0..n)
        .map(|i| {
            let e = rng.gen_range(2..=max_deg.max(2));
            ring.pow(&ring.var(i), e)
        })
        .collect();
    if max_extra > 0 {
        gens.extend(random_monomials(rng, &ring, max_extra, 2, max_deg.max(2)));
    }
    QuotientRing::new(ring, &gens).expect("degree-two monomial generators")
}

/// `R/J` for a random monomial ideal `J` with generators of degree 1..=`max_deg`.
pub fn random_cyclic_module<R: Rng>(
    rng: &mut R,
    ring: &Arc<QuotientRing>,
    max_gens: usize,
    max_deg: u32,
) -> Result<Presentation> {
    let gens = random_monomials(rng, ring.ring(), max_gens, 1, max_deg.max(1));
    Presentation::cyclic(ring.clone(), &gens)
}
