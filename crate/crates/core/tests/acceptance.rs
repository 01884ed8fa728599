//! End-to-end acceptance checks; each criterion prints one PASS/FAIL line.

use std::sync::Arc;
use std::time::Instant;

use num_rational::Rational64;
use rand::Rng;

use syzygia::filtration::{
    artinian_rate_bound, lift_filtration, monomial_filtration, rate_bound_from_filtration,
    truncation_filtration, truncation_ring, verify_filtration, AnnihilatorShape,
    FiltrationCertificate, Witness,
};
use syzygia::hilbert::multiplicity;
use syzygia::invariants::{
    backelin_rate, check_change_of_rings, exact_sequence_bound, rate, rate_of, regularity_of,
    Certification,
};
use syzygia::lex::verify_stretched_theorem;
use syzygia::module::{FreeModule, GradedMatrix, Presentation, Vector};
use syzygia::monomial::binomial;
use syzygia::oracle::oracle_betti;
use syzygia::random::{
    default_ring, random_artinian_quotient, random_cyclic_module, random_form,
    random_monomial_quotient, random_monomials, rng,
};
use syzygia::resolution::{betti, resolve, short_exact_sequence, BettiTable, ResolveOptions};
use syzygia::tensor::verify_tensor_bounds;
use syzygia::{Ideal, PolyRing, QuotientRing};

type Outcome = Result<String, String>;

fn quotient(vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
    Arc::new(QuotientRing::parse(PolyRing::with_vars(vars), gens).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn int(v: i64) -> Rational64 {
    Rational64::from_integer(v)
}

fn koszul_baseline() -> Outcome {
    for n in 1..=4 {
        let s = Arc::new(QuotientRing::polynomial(default_ring(n)));
        let k = Presentation::residue_field(s.clone());
        let opts = ResolveOptions::new(n + 1, Some(n as i32 + 2));
        let table = betti(&k, &opts).map_err(e)?;
        for i in 0..=n + 1 {
            for j in 0..=n as i32 + 2 {
                let want = if j == i as i32 {
                    binomial(n as u64, i as u64)
                } else {
                    0
                };
                ensure(table.get(i, j) == want, || {
                    format!(
                        "n = {n}: beta({i},{j}) = {} expected {want}",
                        table.get(i, j)
                    )
                })?;
            }
        }
        let reg = regularity_of(&table);
        ensure(
            reg.value == 0 && reg.certified == Certification::Exact,
            || format!("n = {n}: reg = {} ({:?})", reg.value, reg.certified),
        )?;
        let r = rate_of(&table, None).map_err(e)?;
        ensure(r.value == int(1) && r.is_exact(), || {
            format!("n = {n}: rate = {}", r.value)
        })?;
        let b = backelin_rate(&s, &opts, None).map_err(e)?;
        ensure(b.value == int(1) && b.is_exact(), || {
            format!("n = {n}: Rate = {}", b.value)
        })?;
    }
    Ok("n = 1..4: Koszul complex, reg 0 exact, rate 1, Rate 1".into())
}

fn second_deviation() -> Outcome {
    let algebras: [(&[&str], &[&str]); 10] = [
        (&["x"], &["x^3"]),
        (&["x", "y"], &["x^2", "x*y", "y^4"]),
        (&["x", "y"], &["x^2", "y^3"]),
        (&["x", "y"], &["x^2 - y^2", "x*y"]),
        (&["x", "y"], &["x^3", "x^2*y", "x*y^3"]),
        (&["x", "y", "z"], &["x*y", "y*z", "x*z"]),
        (&["x", "y", "z"], &["x^2 - y*z", "x*y - z^2"]),
        (&["x", "y", "z"], &["x^3", "y^3", "z^3"]),
        (&["x", "y", "z"], &["x*y*z", "x^2", "y^4"]),
        (&["x", "y", "z"], &["x*z - y^2", "x^3 - y*z^2"]),
    ];
    let opts = ResolveOptions::new(3, Some(20));
    let mut summary = Vec::new();
    for (vars, gens) in algebras {
        let r = quotient(vars, gens);
        let m = r.max_generator_degree() as i32;
        let k = betti(&Presentation::residue_field(r.clone()), &opts).map_err(e)?;
        ensure(k.t(2) == m, || {
            format!("{gens:?}: t_2(K) = {} but m(I) = {m}", k.t(2))
        })?;
        let b = backelin_rate(&r, &opts, None).map_err(e)?;
        ensure(b.value >= int(m as i64 - 1), || {
            format!("{gens:?}: Rate {} < m(I) - 1", b.value)
        })?;
        summary.push(m.to_string());
    }
    Ok(format!(
        "t_2(K) = m(I) on 10 algebras (m = {})",
        summary.join(",")
    ))
}

fn extremal_rings() -> Outcome {
    let opts = ResolveOptions::new(4, Some(20));
    for (h, t) in [(1usize, 3u32), (2, 2), (2, 3), (2, 4), (3, 3)] {
        let r = Arc::new(truncation_ring(h, t).map_err(e)?);
        let mult = multiplicity(&Presentation::free(r.clone(), vec![0])).map_err(e)?;
        let want = binomial((h as u64) + t as u64 - 1, h as u64) as i64;
        ensure(mult == want, || {
            format!("({h},{t}): e(R) = {mult}, expected {want}")
        })?;
        let cert = truncation_filtration(h, t).map_err(e)?;
        let bound = rate_bound_from_filtration(&cert).map_err(e)?;
        ensure(bound.value == int(t as i64 - 1), || {
            format!("({h},{t}): d = {}", bound.value)
        })?;
        let rep = backelin_rate(&r, &opts, Some(bound)).map_err(e)?;
        ensure(rep.value == int(t as i64 - 1) && rep.is_exact(), || {
            format!("({h},{t}): Rate = {} ({:?})", rep.value, rep.certified)
        })?;
        if t > 2 {
            let witness = rep.ratios.iter().any(|x| x.i == 2 && x.t == t as i32);
            ensure(witness, || format!("({h},{t}): no t_2(K) = t witness"))?;
        }
    }
    Ok("5 truncation rings: multiplicity and Rate = t - 1 certified".into())
}

fn extremal_modules() -> Outcome {
    let r = Arc::new(truncation_ring(2, 3).map_err(e)?);
    let opts = ResolveOptions::new(4, Some(20));
    let mut g = rng(4242);
    let mut equalities = 0;
    for case in 0..10 {
        let gens = random_monomials(&mut g, r.ring(), 3, 1, 2);
        let m = Presentation::cyclic(r.clone(), &gens).map_err(e)?;
        let bound = artinian_rate_bound(&r, &m).map_err(e)?.into_upper_bound();
        let rep = rate(&m, &opts, Some(bound)).map_err(|err| format!("case {case}: {err}"))?;
        ensure(rep.value <= int(2), || {
            format!("case {case}: rate {}", rep.value)
        })?;
        let t1 = rep
            .ratios
            .iter()
            .find(|x| x.i == 1)
            .map(|x| x.t)
            .unwrap_or(0);
        if t1 == 2 {
            ensure(rep.value == int(2), || {
                format!("case {case}: t_1 = 2 but rate {}", rep.value)
            })?;
            equalities += 1;
        }
    }
    ensure(equalities > 0, || {
        "no module with t_1 = 2 in the sample".into()
    })?;
    Ok(format!(
        "10 modules over (2,3): rate ≤ 2, {equalities} with t_1 = 2 reach 2"
    ))
}

fn stretched() -> Outcome {
    let opts = ResolveOptions::new(3, Some(20));
    for h in 2..=4 {
        for s in 2..=4u32 {
            let rep = verify_stretched_theorem(h, s, &opts).map_err(e)?;
            ensure(rep.passed(), || format!("(h,s) = ({h},{s}): {rep:?}"))?;
        }
    }
    Ok("9 stretched algebras: series, tau = h, m(I) = s+2, Lex, Rate = s+1 exact".into())
}

/// A random homogeneous matrix with `cols` columns into `F = ⊕ R(-shifts)`.
fn random_matrix<G: Rng>(
    g: &mut G,
    r: &Arc<QuotientRing>,
    shifts: &[i32],
    cols: usize,
) -> GradedMatrix {
    let s = r.ring();
    let top = *shifts.iter().max().unwrap();
    let mut domain = Vec::new();
    let mut columns = Vec::new();
    for _ in 0..cols {
        let d = top + g.gen_range(1..=2);
        let mut entries = Vec::new();
        for (k, &a) in shifts.iter().enumerate() {
            if g.gen_bool(0.7) {
                entries.push((k, random_form(g, s, (d - a) as u32, 2)));
            }
        }
        domain.push(d);
        columns.push(Vector::from_entries(entries));
    }
    GradedMatrix::new(
        r.clone(),
        FreeModule::new(domain),
        FreeModule::new(shifts.to_vec()),
        columns,
    )
    .unwrap()
}

fn exact_sequences() -> Outcome {
    let opts = ResolveOptions::new(4, None);
    let mut g = rng(6);
    for case in 0..50 {
        let n = g.gen_range(1..=2);
        let r = Arc::new(random_artinian_quotient(&mut g, n, 1, 3));
        let rank = g.gen_range(1..=2);
        let shifts: Vec<i32> = (0..rank).map(|_| g.gen_range(0..=1)).collect();
        let (nu, nx) = (g.gen_range(0..=2), g.gen_range(1..=2));
        let u = random_matrix(&mut g, &r, &shifts, nu);
        let x = random_matrix(&mut g, &r, &shifts, nx);
        let ses = short_exact_sequence(&u, &x).map_err(e)?;
        let ta = betti(&ses.a, &opts).map_err(e)?;
        let tb = betti(&ses.b, &opts).map_err(e)?;
        let tc = betti(&ses.c, &opts).map_err(e)?;
        for k in 1..=4 {
            let rhs = tb.t(k).max(ta.t(k - 1));
            ensure(tc.t(k) <= rhs, || {
                format!("case {case}: t_{k}(C) = {} > {rhs}", tc.t(k))
            })?;
        }
        // splice with 0 -> A' -> F_A -> A -> 0
        let fa = ses.a.generators().clone();
        let zero = GradedMatrix::zero(r.clone(), FreeModule::new(vec![]), fa.clone());
        let cover = short_exact_sequence(&zero, &ses.a.relations).map_err(e)?;
        let tfa = betti(&cover.b, &opts).map_err(e)?;
        let tsyz = betti(&cover.a, &opts).map_err(e)?;
        ensure(
            betti(&cover.c, &opts).map_err(e)?.entries == ta.entries,
            || format!("case {case}: cover does not present A"),
        )?;
        let terms: [BettiTable; 3] = [tb, tfa, tsyz];
        for k in 0..=4 {
            ensure(exact_sequence_bound(&tc, &terms, k), || {
                format!("case {case}: spliced bound fails at n = {k}")
            })?;
        }
    }
    Ok("50 short exact sequences and their 3-term splices".into())
}

fn change_of_rings() -> Outcome {
    let opts = ResolveOptions::new(3, Some(12));
    let mut g = rng(77);
    let mut equality_cases = 0;
    for case in 0..20 {
        let n = g.gen_range(2..=3);
        let r = if case % 4 == 0 {
            Arc::new(QuotientRing::polynomial(default_ring(n)))
        } else {
            Arc::new(random_monomial_quotient(&mut g, n, 2, 3))
        };
        let s_ring = r.ring();
        let extra = if case % 3 == 0 {
            vec![s_ring.var(g.gen_range(0..n))]
        } else {
            random_monomials(&mut g, s_ring, 2, 2, 3)
        };
        let s = Arc::new(r.quotient_by(&extra).map_err(e)?);
        let m = random_cyclic_module(&mut g, &s, 2, 2).map_err(e)?;
        let m = m.shifted(g.gen_range(-1..=1));
        let rep = check_change_of_rings(&r, &extra, &m, &opts)
            .map_err(|err| format!("case {case}: {err}"))?;
        ensure(rep.passed(), || format!("case {case}: {rep:?}"))?;
        if rep.equality_case.is_some() {
            equality_cases += 1;
        }
    }
    Ok(format!("20 triples, {equality_cases} equality cases"))
}

fn tensor_suite() -> Outcome {
    let opts = ResolveOptions::new(3, Some(10));
    let mut g = rng(31337);
    for case in 0..15 {
        let (na, nb) = (g.gen_range(1..=2), g.gen_range(1..=2));
        let r = Arc::new(random_monomial_quotient(&mut g, na, 2, 3));
        let s = Arc::new(random_monomial_quotient(&mut g, nb, 2, 3));
        let m = if g.gen_bool(0.5) {
            Presentation::residue_field(r.clone())
        } else {
            random_cyclic_module(&mut g, &r, 2, 2).map_err(e)?
        };
        let n = random_cyclic_module(&mut g, &s, 2, 2).map_err(e)?;
        let rep =
            verify_tensor_bounds(&m, &n, &opts).map_err(|err| format!("case {case}: {err}"))?;
        ensure(rep.kunneth_ok, || format!("case {case}: Künneth mismatch"))?;
        ensure(rep.passed(), || format!("case {case}: {rep:?}"))?;
    }

    let a = quotient(&["x"], &["x^2"]);
    let b = quotient(&["y"], &["y^2"]);
    let koszul = verify_tensor_bounds(
        &Presentation::residue_field(a),
        &Presentation::residue_field(b),
        &ResolveOptions::new(5, Some(10)),
    )
    .map_err(e)?;
    ensure(koszul.lemma.iter().all(|row| row.t == row.n as i32), || {
        format!("K over T: {:?}", koszul.lemma)
    })?;

    let pairs: [(&[&str], &[&str], &[&str], &[&str]); 5] = [
        (&["x"], &["x^2"], &["y"], &["y^3"]),
        (&["x", "y"], &["x^2", "y^2"], &["u"], &["u^2"]),
        (&["x", "y"], &["x*y"], &["u", "v"], &["u^3", "v^2"]),
        (&["x", "y"], &["x^2 + y^2"], &["u"], &["u^4"]),
        (&["x", "y"], &["x^3", "y^2"], &["u", "v"], &["u*v"]),
    ];
    let mut regs = Vec::new();
    for (va, ga, vb, gb) in pairs {
        let ra = quotient(va, &[]);
        let rb = quotient(vb, &[]);
        let parse = |r: &Arc<QuotientRing>, gs: &[&str]| {
            gs.iter()
                .map(|t| r.ring().parse(t).unwrap())
                .collect::<Vec<_>>()
        };
        let m = Presentation::cyclic(ra.clone(), &parse(&ra, ga)).map_err(e)?;
        let n = Presentation::cyclic(rb.clone(), &parse(&rb, gb)).map_err(e)?;
        let rep = verify_tensor_bounds(&m, &n, &ResolveOptions::new(5, Some(20))).map_err(e)?;
        let exact = [&rep.reg_m, &rep.reg_n, &rep.reg_tensor]
            .iter()
            .all(|x| x.certified == Certification::Exact);
        ensure(exact && rep.passed(), || {
            format!("{ga:?} ⊗ {gb:?}: {rep:?}")
        })?;
        regs.push(format!(
            "{}≤{}+{}",
            rep.reg_tensor.value, rep.reg_m.value, rep.reg_n.value
        ));
    }
    Ok(format!(
        "15 Künneth pairs, Koszul⊗Koszul to n = 5, reg {}",
        regs.join(" ")
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut g = rng(20240501);
    for case in 0..20 {
        let n = 1 + case % 3;
        let r = Arc::new(random_monomial_quotient(&mut g, n, 4, 4));
        let m = random_cyclic_module(&mut g, &r, 4, 4).map_err(e)?;
        let engine = resolve(&m, &ResolveOptions::new(3, Some(10)))
            .and_then(|res| res.betti())
            .map_err(e)?
            .restricted(3, Some(10));
        let oracle = oracle_betti(&m, 3, Some(10)).map_err(e)?;
        ensure(engine.entries == oracle.entries, || {
            format!("case {case} differs")
        })?;
    }
    Ok("20 random modules agree with the linear-algebra oracle".into())
}

fn lifting() -> Outcome {
    let cases: [(&[&str], &[&str], &str, u32, AnnihilatorShape); 5] = [
        (&["x", "y"], &["x^2"], "y", 1, AnnihilatorShape::Zero),
        (
            &["x", "y", "z"],
            &["x^3", "x^2*y", "x*y^2", "y^3"],
            "z",
            2,
            AnnihilatorShape::Zero,
        ),
        (
            &["x", "y"],
            &["x^2", "x*y", "y^2"],
            "x",
            1,
            AnnihilatorShape::Maximal,
        ),
        (
            &["x", "y"],
            &["x^2", "x*y", "y^4"],
            "x",
            3,
            AnnihilatorShape::Maximal,
        ),
        (&["x", "y"], &["x^2"], "x", 1, AnnihilatorShape::Principal),
    ];
    for (vars, gens, l, d, shape) in cases {
        let r = quotient(vars, gens);
        let l = r.ring().parse(l).unwrap();
        let q = Arc::new(r.quotient_by(std::slice::from_ref(&l)).map_err(e)?);
        let base = monomial_filtration(q, d, 10_000).map_err(e)?;
        let lifted =
            lift_filtration(r.clone(), &l, &base).map_err(|err| format!("{gens:?}: {err}"))?;
        ensure(lifted.shape == shape, || {
            format!("{gens:?}: shape {:?}", lifted.shape)
        })?;
        let again = verify_filtration(&lifted.certificate).map_err(e)?;
        ensure(again.valid && again.bound <= d.max(1), || {
            format!("{gens:?}: {again:?}")
        })?;
    }

    let r = quotient(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]);
    let s = r.ring().clone();
    let l = s.parse("x - y").unwrap();
    let q = Arc::new(r.quotient_by(std::slice::from_ref(&l)).map_err(e)?);
    let y = s.parse("y").unwrap();
    let base = FiltrationCertificate {
        ideals: vec![Ideal::zero(), q.ideal_of(std::slice::from_ref(&y))],
        witnesses: vec![
            None,
            Some(Witness {
                j: 0,
                generator: y,
                colon: 0,
            }),
        ],
        ring: q,
    };
    match lift_filtration(r, &l, &base) {
        Err(err) if err.to_string().contains("is not 0, m or (l)") => {}
        other => return Err(format!("planted x - y was not rejected: {other:?}")),
    }
    Ok("5 lifts re-verify (shapes 0, m, (l)); x - y rejected".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 koszul baseline", koszul_baseline),
        ("2 t_2(K) = m(I)", second_deviation),
        ("3 extremal rings", extremal_rings),
        ("4 extremal modules", extremal_modules),
        ("5 stretched algebras", stretched),
        ("6 exact sequences", exact_sequences),
        ("7 change of rings", change_of_rings),
        ("8 tensor products", tensor_suite),
        ("9 oracle equivalence", oracle_equivalence),
        ("10 lifted filtrations", lifting),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                println!("FAIL  {name}: {detail} ({secs:.2}s)");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
