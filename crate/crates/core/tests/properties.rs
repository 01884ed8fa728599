use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use syzygia::filtration::{truncation_filtration, verify_filtration};
use syzygia::groebner::{buchberger, normal_form};
use syzygia::hilbert::hilbert_series;
use syzygia::invariants::backelin_rate_of;
use syzygia::lex::{
    is_lex_segment_ideal, lex_ideal, macaulay_bound, macaulay_eval, macaulay_rep,
    monomial_quotient_hilbert, HilbertFunction,
};
use syzygia::module::Presentation;
use syzygia::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use syzygia::oracle::{oracle_hilbert, oracle_member};
use syzygia::random::{
    default_ring, random_artinian_quotient, random_cyclic_module, random_form,
    random_monomial_quotient, rng,
};
use syzygia::resolution::{betti, ResolveOptions};
use syzygia::tensor::{tensor_modules, tensor_rings};
use syzygia::Polynomial;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

fn random_monomial<G: Rng>(g: &mut G, n: usize) -> Monomial {
    let d = g.gen_range(0..4);
    monomials_of_degree(n, d).choose(g).unwrap().clone()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn orders_are_multiplicative(seed in any::<u64>(), n in 1usize..4) {
        let mut g = rng(seed);
        for order in [MonomialOrder::DegRevLex, MonomialOrder::DegLex, MonomialOrder::Lex] {
            let a = random_monomial(&mut g, n);
            let b = random_monomial(&mut g, n);
            let c = random_monomial(&mut g, n);
            prop_assert_eq!(order.cmp(&a, &b), order.cmp(&a.mul(&c), &b.mul(&c)));
        }
    }

    #[test]
    fn membership_matches_the_oracle(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let s = default_ring(n);
        let gens: Vec<Polynomial> = (0..g.gen_range(1..=4))
            .map(|_| {
                let d = g.gen_range(2..=3);
                random_form(&mut g, &s, d, 3)
            })
            .filter(|f| !f.is_zero())
            .collect();
        let gb = buchberger(&s, &gens).unwrap();
        for _ in 0..4 {
            let d = g.gen_range(2..=6u32);
            // half the samples are built inside the ideal
            let f = if g.gen_bool(0.5) {
                let mut acc = Polynomial::zero();
                for h in &gens {
                    let e = h.homogeneous_degree().unwrap();
                    if e <= d {
                        acc = s.add(&acc, &s.mul(&random_form(&mut g, &s, d - e, 2), h));
                    }
                }
                acc
            } else {
                random_form(&mut g, &s, d, 3)
            };
            let nf = normal_form(&s, &f, &gb).unwrap();
            prop_assert_eq!(nf.is_zero(), oracle_member(&s, &gens, &f));
        }
    }

    #[test]
    fn reduced_basis_ignores_input_order(seed in any::<u64>()) {
        let mut g = rng(seed);
        let s = default_ring(3);
        let mut gens: Vec<Polynomial> = (0..3).map(|_| random_form(&mut g, &s, 2, 3)).collect();
        let a = buchberger(&s, &gens).unwrap();
        gens.shuffle(&mut g);
        prop_assert_eq!(a, buchberger(&s, &gens).unwrap());
    }

    #[test]
    fn second_betti_degree_is_max_generator_degree(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let r = Arc::new(random_monomial_quotient(&mut g, n, 4, 4));
        let k = betti(&Presentation::residue_field(r.clone()), &ResolveOptions::new(2, Some(10))).unwrap();
        prop_assert_eq!(k.t(2), r.max_generator_degree() as i32);
    }

    #[test]
    fn hilbert_function_matches_the_oracle(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let r = Arc::new(random_monomial_quotient(&mut g, n, 3, 3));
        let m = random_cyclic_module(&mut g, &r, 3, 3).unwrap();
        let h = hilbert_series(&m, 7).unwrap();
        let o = oracle_hilbert(&m, 0, 7);
        let from_gb: Vec<usize> = (0..=7).map(|d| h.at(d) as usize).collect();
        prop_assert_eq!(from_gb, o);
    }

    #[test]
    fn macaulay_representation_round_trips(a in 1u64..200, d in 1u32..6) {
        let rep = macaulay_rep(a, d);
        prop_assert_eq!(macaulay_eval(&rep), a);
        prop_assert!(macaulay_bound(a, d) >= a || d == 0);
    }

    #[test]
    fn lex_ideal_realizes_artinian_hilbert_functions(seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let r = Arc::new(random_artinian_quotient(&mut g, n, 2, 3));
        let h = hilbert_series(&Presentation::free(r, vec![0]), 10).unwrap();
        let hf = HilbertFunction::new(h.coefficients.clone(), n, true);
        let j = lex_ideal(&hf).unwrap();
        prop_assert_eq!(monomial_quotient_hilbert(n, &j, 10), h.coefficients);
        prop_assert!(is_lex_segment_ideal(n, &j, 10));
    }

    #[test]
    fn tensor_shifts_add(seed in any::<u64>(), a in 0i32..3, b in 0i32..3) {
        let mut g = rng(seed);
        let r = Arc::new(random_monomial_quotient(&mut g, 1, 2, 3));
        let s = Arc::new(random_monomial_quotient(&mut g, 2, 2, 3));
        let m = random_cyclic_module(&mut g, &r, 2, 2).unwrap();
        let n = random_cyclic_module(&mut g, &s, 2, 2).unwrap();
        let t = tensor_rings(&r, &s).unwrap();
        let opts = ResolveOptions::new(3, Some(12));
        let plain = betti(&tensor_modules(&t, &m, &n).unwrap(), &opts).unwrap();
        let moved = betti(&tensor_modules(&t, &m.shifted(a), &n.shifted(b)).unwrap(), &opts).unwrap();
        prop_assert_eq!(
            moved.restricted(3, Some(12 - a - b)).entries,
            plain.shifted(a + b).restricted(3, Some(12 - a - b)).entries
        );
    }
}

#[test]
fn filtration_bounds_dominate_the_window() {
    for (h, t) in [(1, 2), (1, 4), (2, 2), (2, 3), (3, 2)] {
        let cert = truncation_filtration(h, t).unwrap();
        let v = verify_filtration(&cert).unwrap();
        assert!(v.valid);
        let k = betti(
            &Presentation::residue_field(cert.ring.clone()),
            &ResolveOptions::new(4, Some(20)),
        )
        .unwrap();
        let rate = backelin_rate_of(&k, None).unwrap();
        assert!(rate.value <= (v.bound.max(1) as i64).into(), "({h},{t})");
    }
}
