//! Commands shared by the subcommands and the script runner.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use syzygia::filtration::{
    artinian_rate_bound, lift_filtration, monomial_filtration, rate_bound_from_filtration,
    verify_filtration, FiltrationCertificate, FILTRATION_BUDGET,
};
use syzygia::hilbert::hilbert_series;
use syzygia::invariants::{
    backelin_rate, check_change_of_rings, maximal_ideal_shifted, rate, ratio_str, regularity,
    socle_degree_bound, Certification, RateReport,
};
use syzygia::lex::{lex_ideal, verify_stretched_theorem, HilbertFunction, MonomialIdeal};
use syzygia::module::Presentation;
use syzygia::oracle::oracle_betti;
use syzygia::random::{random_cyclic_module, random_monomial_quotient, rng};
use syzygia::resolution::{betti, BettiTable, ResolveOptions};
use syzygia::tensor::verify_tensor_bounds;
use syzygia::{Error, Polynomial, QuotientRing, Result};

use crate::dsl::{atom, ints, poly, Args, Call, Session, Source, Value as Arg};

/// Versioned identifier of the JSON envelope.
pub const REPORT_SCHEMA: &str = "syzygia/report/v1";

/// Window and seed shared by all commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub hmax: usize,
    pub dmax: Option<i32>,
    pub seed: u64,
    /// cap on Gröbner basis size per syzygy step and on enumerated ideals
    pub budget: Option<usize>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            hmax: 5,
            dmax: Some(20),
            seed: 0,
            budget: None,
        }
    }
}

impl Flags {
    pub fn options(&self) -> ResolveOptions {
        ResolveOptions {
            budget: self.budget,
            ..ResolveOptions::new(self.hmax, self.dmax)
        }
    }

    pub fn filtration_budget(&self) -> usize {
        self.budget.unwrap_or(FILTRATION_BUDGET)
    }
}

/// A command's result in both renderings; `passed = false` maps to exit code 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub command: String,
    pub text: String,
    pub result: Value,
    pub passed: bool,
}

impl Outcome {
    fn new(command: &str, text: String, result: Value, passed: bool) -> Self {
        Outcome {
            command: command.to_string(),
            text,
            result,
            passed,
        }
    }

    pub fn envelope(&self) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "passed": self.passed,
            "result": self.result,
        })
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn window_text(f: &Flags) -> String {
    match f.dmax {
        Some(d) => format!("hmax = {}, dmax = {d}", f.hmax),
        None => format!("hmax = {}, dmax = none", f.hmax),
    }
}

fn betti_value(t: &BettiTable) -> Value {
    json!({
        "hmax": t.hmax,
        "dmax": t.dmax,
        "terminated": t.terminated,
        "entries": to_value(&t.to_entries()),
    })
}

pub fn betti_table(p: &Presentation, f: &Flags) -> Result<Outcome> {
    let t = betti(p, &f.options())?;
    let mut text = t.to_string();
    let _ = writeln!(
        text,
        "window: {}{}",
        window_text(f),
        if t.terminated {
            ", resolution complete"
        } else {
            ""
        }
    );
    Ok(Outcome::new("betti", text, betti_value(&t), true))
}

pub fn hilbert(p: &Presentation, top: i32) -> Result<Outcome> {
    let h = hilbert_series(p, top)?;
    let mut text = String::new();
    let coeffs: Vec<String> = h.coefficients.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(
        text,
        "H(d) for d = {}..{}: {}",
        h.low,
        top,
        coeffs.join(" ")
    );
    if let Some(c) = &h.closed_form {
        let num: Vec<String> = c.numerator.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            text,
            "numerator: [{}], dimension: {}, multiplicity: {}",
            num.join(", "),
            c.dim.map_or("-".into(), |d| d.to_string()),
            c.multiplicity
        );
    }
    Ok(Outcome::new("hilbert", text, to_value(&h), true))
}

pub fn reg(p: &Presentation, f: &Flags) -> Result<Outcome> {
    let r = regularity(p, &f.options())?;
    let how = match r.certified {
        Certification::Exact => "exact",
        Certification::LowerBound => "lower bound",
    };
    let text = format!("reg = {} ({how}; {})\n", r.value, window_text(f));
    Ok(Outcome::new("reg", text, to_value(&r), true))
}

fn rate_text(name: &str, r: &RateReport) -> String {
    let mut text = format!(
        "{name} = {} ({})\n",
        ratio_str::format(&r.value),
        if r.is_exact() { "exact" } else { "lower bound" }
    );
    for e in &r.ratios {
        let _ = writeln!(
            text,
            "  i = {}: t = {}, ratio = {}",
            e.i,
            e.t,
            ratio_str::format(&e.ratio)
        );
    }
    if let Some(b) = &r.upper_bound {
        let _ = writeln!(
            text,
            "upper bound {} from {}",
            ratio_str::format(&b.value),
            b.source
        );
    }
    text
}

pub fn module_rate(p: &Presentation, f: &Flags) -> Result<Outcome> {
    let bound = artinian_rate_bound(p.ring(), p)
        .ok()
        .map(|b| b.into_upper_bound());
    let r = rate(p, &f.options(), bound)?;
    Ok(Outcome::new(
        "rate",
        rate_text("rate", &r),
        to_value(&r),
        true,
    ))
}

pub fn ring_backelin_rate(r: &Arc<QuotientRing>, f: &Flags) -> Result<Outcome> {
    let m1 = maximal_ideal_shifted(r, None)?;
    let bound = artinian_rate_bound(r, &m1)
        .ok()
        .map(|b| b.into_upper_bound());
    let rep = backelin_rate(r, &f.options(), bound)?;
    Ok(Outcome::new(
        "backelin-rate",
        rate_text("Rate", &rep),
        to_value(&rep),
        true,
    ))
}

fn lex_outcome(hf: &HilbertFunction, names: &[String], own: Option<bool>) -> Result<Outcome> {
    let j = lex_ideal(hf)?;
    let gens = j.to_strings(names);
    let mut text = format!("Lex(H) = ({})\n", gens.join(", "));
    if let Some(eq) = own {
        let _ = writeln!(text, "defining ideal equals Lex(H): {eq}");
    }
    let result = json!({
        "hilbert": hf.values,
        "artinian": hf.artinian,
        "lex": gens,
        "equals_defining_ideal": own,
    });
    Ok(Outcome::new("lex", text, result, true))
}

/// `Lex` of an explicit Hilbert function in `n` variables named like the default ring.
pub fn lex_of_function(values: Vec<u64>, n: usize, artinian: bool) -> Result<Outcome> {
    let hf = HilbertFunction::new(values, n, artinian);
    let names = syzygia::random::default_ring(n).names;
    lex_outcome(&hf, &names, None)
}

/// `Lex(H(R))` for an Artinian `R`, compared with `R`'s own ideal when monomial.
pub fn lex_of_ring(r: &QuotientRing) -> Result<Outcome> {
    let t = socle_degree_bound(r, 256)?;
    let h = hilbert_series(&Presentation::free(Arc::new(r.clone()), vec![0]), t as i32)?;
    let hf = HilbertFunction::new(h.coefficients, r.nvars(), true);
    let own = MonomialIdeal::from_polys(&r.min_gens);
    let j = lex_ideal(&hf)?;
    lex_outcome(&hf, &r.ring().names, Some(own.as_ref() == Some(&j)))
}

pub fn stretched(h: usize, s: u32, f: &Flags) -> Result<Outcome> {
    let rep = verify_stretched_theorem(h, s, &f.options())?;
    let mut text = String::new();
    let _ = writeln!(text, "R = F_p[{h} vars]/({})", rep.generators.join(", "));
    let series: Vec<String> = rep.hilbert.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(
        text,
        "Hilbert function: {}  [{}]",
        series.join(" "),
        ok(rep.hilbert_ok)
    );
    let _ = writeln!(text, "tau = {}  [{}]", rep.tau, ok(rep.tau_ok));
    let _ = writeln!(text, "m(I) = {}  [{}]", rep.m_of_i, ok(rep.m_ok));
    let _ = writeln!(text, "I = Lex(H): {}", rep.lex_matches);
    let _ = writeln!(
        text,
        "Rate = {} ({})  [{}]",
        ratio_str::format(&rep.rate.value),
        if rep.rate.is_exact() {
            "exact"
        } else {
            "lower bound"
        },
        ok(rep.rate_ok)
    );
    let passed = rep.passed();
    Ok(Outcome::new("stretched", text, to_value(&rep), passed))
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn checkfilt(cert: &FiltrationCertificate) -> Result<Outcome> {
    let v = verify_filtration(cert)?;
    let mut text = String::new();
    if v.valid {
        let _ = writeln!(
            text,
            "PASS: {} ideals, bound d = {}",
            v.size,
            v.bound.max(1)
        );
    } else {
        let _ = writeln!(text, "FAIL: {} ideals", v.size);
        for p in &v.problems {
            let _ = writeln!(text, "  {p}");
        }
        for m in v.members.iter().filter(|m| !m.ok) {
            let _ = writeln!(text, "  member {}: {}", m.index, m.problems.join("; "));
        }
    }
    let bound = if v.valid {
        Some(rate_bound_from_filtration(cert)?)
    } else {
        None
    };
    let result = json!({
        "verdict": to_value(&v),
        "rate_bound": bound.map(|b| to_value(&b)),
    });
    Ok(Outcome::new("checkfilt", text, result, v.valid))
}

/// Lifts `base` (or, without one, the monomial filtration of `R/(l)` generated in degrees `≤ d`).
pub fn lift(
    r: &Arc<QuotientRing>,
    l: &Polynomial,
    base: Option<&FiltrationCertificate>,
    d: u32,
    f: &Flags,
) -> Result<(Outcome, FiltrationCertificate)> {
    let base = match base {
        Some(b) => b.clone(),
        None => {
            let q = Arc::new(r.quotient_by(std::slice::from_ref(l))?);
            monomial_filtration(q, d, f.filtration_budget())?
        }
    };
    let lifted = lift_filtration(r.clone(), l, &base)?;
    let text = format!(
        "(0 : {}) has shape {:?}; lifted family of {} ideals verifies, bound d = {}\n",
        r.ring().to_string(l),
        lifted.shape,
        lifted.verdict.size,
        lifted.verdict.bound.max(1)
    );
    let result = json!({
        "shape": to_value(&lifted.shape),
        "verdict": to_value(&lifted.verdict),
        "certificate": to_value(&lifted.certificate.to_json()),
    });
    Ok((
        Outcome::new("lift", text, result, lifted.verdict.valid),
        lifted.certificate,
    ))
}

pub fn tensor(m: &Presentation, n: &Presentation, f: &Flags) -> Result<Outcome> {
    let rep = verify_tensor_bounds(m, n, &f.options())?;
    let mut text = String::new();
    let _ = writeln!(text, "Künneth identity: {}", ok(rep.kunneth_ok));
    for row in &rep.lemma {
        let _ = writeln!(
            text,
            "  n = {}: t_n = {} ≤ {} (slack {})",
            row.n, row.t, row.bound, row.slack
        );
    }
    let _ = writeln!(
        text,
        "rate: {} vs max({}, {})  [{}]",
        ratio_str::format(&rep.rate_tensor),
        ratio_str::format(&rep.rate_m),
        ratio_str::format(&rep.rate_n),
        match rep.rate_ok {
            Some(b) => ok(b),
            None => "not applicable",
        }
    );
    let _ = writeln!(
        text,
        "reg: {} ≤ {} + {}  [{}]",
        rep.reg_tensor.value,
        rep.reg_m.value,
        rep.reg_n.value,
        ok(rep.reg_ok)
    );
    let passed = rep.passed();
    Ok(Outcome::new("tensor", text, to_value(&rep), passed))
}

pub fn change_of_rings(r: &Arc<QuotientRing>, m: &Presentation, f: &Flags) -> Result<Outcome> {
    let extra = m.ring().min_gens.clone();
    let rep = check_change_of_rings(r, &extra, m, &f.options())?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "rate_R(M) = {}, rate_S(M) = {}, rate_R(S) = {}, t_0(M) = {}",
        ratio_str::format(&rep.rate_r_m),
        ratio_str::format(&rep.rate_s_m),
        ratio_str::format(&rep.rate_r_s),
        rep.t0_s_m
    );
    let opt = |b: Option<bool>| b.map_or("not applicable", ok);
    let _ = writeln!(text, "main inequality: {}", ok(rep.main_inequality));
    let _ = writeln!(text, "reverse inequality: {}", opt(rep.reverse_inequality));
    let _ = writeln!(text, "equality case: {}", opt(rep.equality_case));
    let passed = rep.passed();
    Ok(Outcome::new(
        "change-of-rings",
        text,
        to_value(&rep),
        passed,
    ))
}

/// Engine against the linear-algebra oracle on one module.
pub fn oracle_diff(p: &Presentation, f: &Flags) -> Result<Outcome> {
    let dmax = f
        .dmax
        .ok_or_else(|| Error::InvalidInput("oracle-diff needs a finite dmax".into()))?;
    let engine = betti(p, &f.options())?.restricted(f.hmax, Some(dmax));
    let oracle = oracle_betti(p, f.hmax, Some(dmax))?;
    let same = engine.entries == oracle.entries;
    let mut text = format!(
        "engine and oracle {}\n",
        if same { "agree" } else { "DIFFER" }
    );
    if !same {
        let _ = write!(text, "engine:\n{engine}oracle:\n{oracle}");
    }
    let result =
        json!({"agree": same, "engine": betti_value(&engine), "oracle": betti_value(&oracle)});
    Ok(Outcome::new("oracle-diff", text, result, same))
}

/// Engine against the oracle on `cases` seeded random cyclic modules.
pub fn oracle_suite(cases: usize, f: &Flags) -> Result<Outcome> {
    let dmax = f
        .dmax
        .ok_or_else(|| Error::InvalidInput("oracle-diff needs a finite dmax".into()))?;
    let mut g = rng(f.seed);
    let mut mismatches = Vec::new();
    for case in 0..cases {
        let n = 1 + case % 3;
        let r = Arc::new(random_monomial_quotient(&mut g, n, 4, 4));
        let m = random_cyclic_module(&mut g, &r, 4, 4)?;
        let engine = betti(&m, &f.options())?.restricted(f.hmax, Some(dmax));
        let oracle = oracle_betti(&m, f.hmax, Some(dmax))?;
        if engine.entries != oracle.entries {
            mismatches.push(case);
        }
    }
    let text = format!(
        "{} of {cases} random modules agree (seed {}, {})\n",
        cases - mismatches.len(),
        f.seed,
        window_text(f)
    );
    let result = json!({"cases": cases, "seed": f.seed, "mismatches": mismatches});
    Ok(Outcome::new(
        "oracle-diff",
        text,
        result,
        mismatches.is_empty(),
    ))
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => 1,
        Error::BudgetExceeded(_) => 3,
        _ => 2,
    }
}

/// Runs every command of a script session in order.
pub fn run_session(session: &Session, flags: &Flags) -> Result<Vec<Outcome>> {
    let src = &session
        .source
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("session has no source".into()))?
        .0;
    session
        .commands
        .iter()
        .map(|c| run_call(session, src, c, flags).map_err(|e| src.wrap(c.pos, e)))
        .collect()
}

fn lookup<'s, T>(map: &'s BTreeMap<String, T>, src: &Source, v: &Arg, kind: &str) -> Result<&'s T> {
    let name = atom(src, v)?;
    map.get(name)
        .ok_or_else(|| src.error(v.pos(), format!("unknown {kind} '{name}'")))
}

fn run_call(session: &Session, src: &Source, c: &Call, flags: &Flags) -> Result<Outcome> {
    let args = Args::new(src, c);
    let module = |k: usize| lookup(&session.modules, src, &c.positional[k], "module");
    let ring = |k: usize| lookup(&session.rings, src, &c.positional[k], "ring");
    match c.name.as_str() {
        "betti" | "reg" | "rate" => {
            args.positional_count(1)?;
            args.only(&[])?;
            let m = module(0)?;
            match c.name.as_str() {
                "betti" => betti_table(m, flags),
                "reg" => reg(m, flags),
                _ => module_rate(m, flags),
            }
        }
        "hilbert" => {
            args.positional_count(1)?;
            args.only(&["top"])?;
            let top = args.optional_int("top")?.unwrap_or(10) as i32;
            hilbert(module(0)?, top)
        }
        "backelin-rate" => {
            args.positional_count(1)?;
            args.only(&[])?;
            ring_backelin_rate(ring(0)?, flags)
        }
        "lex" => {
            if c.positional.is_empty() {
                args.only(&["hilbert", "n", "artinian"])?;
                let values = match args.keyword("hilbert") {
                    Some(v) => ints(src, v)?,
                    None => return Err(src.error(c.pos, "lex needs a ring or hilbert=[...]")),
                };
                if values.iter().any(|&v| v < 0) {
                    return Err(src.error(c.pos, "Hilbert function values must be non-negative"));
                }
                let n = args.required_int("n")? as usize;
                let artinian = match args.keyword("artinian") {
                    None => true,
                    Some(v) => match atom(src, v)? {
                        "true" => true,
                        "false" => false,
                        other => {
                            return Err(src.error(
                                v.pos(),
                                format!("expected true or false, found '{other}'"),
                            ))
                        }
                    },
                };
                lex_of_function(values.into_iter().map(|v| v as u64).collect(), n, artinian)
            } else {
                args.positional_count(1)?;
                args.only(&[])?;
                lex_of_ring(ring(0)?)
            }
        }
        "stretched" => {
            args.positional_count(0)?;
            args.only(&["h", "s"])?;
            let h = args.required_int("h")?;
            let s = args.required_int("s")?;
            if h < 0 || s < 0 {
                return Err(src.error(c.pos, "h and s must be non-negative"));
            }
            stretched(h as usize, s as u32, flags)
        }
        "checkfilt" => {
            args.positional_count(1)?;
            args.only(&[])?;
            checkfilt(lookup(
                &session.filtrations,
                src,
                &c.positional[0],
                "filtration",
            )?)
        }
        "lift" => {
            args.only(&["l", "d"])?;
            if c.positional.is_empty() || c.positional.len() > 2 {
                return Err(src.error(c.pos, "lift takes a ring and optionally a filtration"));
            }
            let r = ring(0)?;
            let l = match args.keyword("l") {
                Some(v) => poly(src, r.ring(), v)?,
                None => return Err(src.error(c.pos, "lift needs l=...")),
            };
            let base = match c.positional.get(1) {
                Some(v) => Some(lookup(&session.filtrations, src, v, "filtration")?),
                None => None,
            };
            let d = args.optional_int("d")?.unwrap_or(2).max(1) as u32;
            lift(r, &l, base, d, flags).map(|(o, _)| o)
        }
        "tensor" => {
            args.positional_count(2)?;
            args.only(&[])?;
            tensor(module(0)?, module(1)?, flags)
        }
        "change-of-rings" => {
            args.positional_count(2)?;
            args.only(&[])?;
            change_of_rings(ring(0)?, module(1)?, flags)
        }
        "oracle-diff" => {
            args.only(&["cases"])?;
            match c.positional.len() {
                0 => oracle_suite(
                    args.optional_int("cases")?.unwrap_or(20).max(0) as usize,
                    flags,
                ),
                1 => oracle_diff(module(0)?, flags),
                _ => Err(src.error(c.pos, "oracle-diff takes at most one module")),
            }
        }
        other => Err(src.error(c.pos, format!("unknown command '{other}'"))),
    }
}
