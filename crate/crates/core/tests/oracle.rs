use std::sync::Arc;

use syzygia::module::Presentation;
use syzygia::oracle::{oracle_betti, oracle_hilbert};
use syzygia::random::{random_cyclic_module, random_monomial_quotient, rng};
use syzygia::resolution::{betti, resolve, ResolveOptions};
use syzygia::{MonomialOrder, PolyRing, QuotientRing};

fn quotient(vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
    Arc::new(QuotientRing::parse(PolyRing::with_vars(vars), gens).unwrap())
}

#[test]
fn polynomial_ring_koszul_complex() {
    let r = quotient(&["x", "y"], &[]);
    let k = Presentation::residue_field(r);
    let engine = betti(&k, &ResolveOptions::new(2, Some(4))).unwrap();
    let oracle = oracle_betti(&k, 2, Some(4)).unwrap();
    assert_eq!(engine.entries, oracle.entries);
}

#[test]
fn stretched_residue_field() {
    let r = quotient(&["x", "y"], &["x^2", "x*y", "y^4"]);
    let k = Presentation::residue_field(r);
    let engine = betti(&k, &ResolveOptions::new(4, Some(12))).unwrap();
    let oracle = oracle_betti(&k, 4, Some(12)).unwrap();
    assert_eq!(engine.restricted(4, Some(12)).entries, oracle.entries);
    assert_eq!(oracle.t(2), 4);
}

#[test]
fn binomial_quotient() {
    let r = quotient(&["x", "y", "z"], &["x^2 - y*z", "x*y - z^2"]);
    let k = Presentation::residue_field(r);
    let engine = betti(&k, &ResolveOptions::new(3, Some(8))).unwrap();
    let oracle = oracle_betti(&k, 3, Some(8)).unwrap();
    assert_eq!(engine.restricted(3, Some(8)).entries, oracle.entries);
}

#[test]
fn random_cyclic_modules_match() {
    let mut g = rng(20240501);
    for case in 0..20 {
        let n = 1 + case % 3;
        let r = Arc::new(random_monomial_quotient(&mut g, n, 4, 4));
        let m = random_cyclic_module(&mut g, &r, 4, 4).unwrap();
        let res = resolve(&m, &ResolveOptions::new(3, Some(10))).unwrap();
        assert!(res.is_complex(), "case {case}");
        let engine = res.betti().unwrap().restricted(3, Some(10));
        let oracle = oracle_betti(&m, 3, Some(10)).unwrap();
        assert_eq!(
            engine.entries, oracle.entries,
            "case {case}: {:?}",
            r.min_gens
        );
    }
}

#[test]
fn betti_numbers_do_not_depend_on_the_order() {
    let mut g = rng(99);
    for case in 0..6 {
        let r = Arc::new(random_monomial_quotient(&mut g, 3, 4, 3));
        let r2 = Arc::new(r.with_order(MonomialOrder::DegLex).unwrap());
        let a = betti(
            &Presentation::residue_field(r),
            &ResolveOptions::new(3, Some(10)),
        )
        .unwrap();
        let b = betti(
            &Presentation::residue_field(r2),
            &ResolveOptions::new(3, Some(10)),
        )
        .unwrap();
        assert_eq!(a.entries, b.entries, "case {case}");
    }
}

#[test]
fn hilbert_function_of_free_module() {
    let r = quotient(&["x", "y"], &["x^2"]);
    let h = oracle_hilbert(&Presentation::free(r, vec![0, 1]), 0, 4);
    assert_eq!(h, vec![1, 3, 4, 4, 4]);
}
