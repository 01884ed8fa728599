//! Regularity, rate, Backelin rate, linear annihilators and change-of-rings checks.

use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{minimalize_in, QuotientRing};
use crate::linalg::DenseMatrix;
use crate::module::{FreeModule, GradedMatrix, Presentation, Vector};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::resolution::{resolve, syzygy_matrix, trim, BettiTable, ResolveOptions};

/// Serializes rationals as `"p/q"` (or `"p"`).
pub mod ratio_str {
    use num_rational::Rational64;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn format(r: &Rational64) -> String {
        if *r.denom() == 1 {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn parse(s: &str) -> Option<Rational64> {
        match s.split_once('/') {
            Some((a, b)) => {
                let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
                if b == 0 {
                    None
                } else {
                    Some(Rational64::new(a, b))
                }
            }
            None => s.trim().parse().ok().map(Rational64::from_integer),
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub hmax: usize,
    pub dmax: Option<i32>,
}

impl From<&ResolveOptions> for Window {
    fn from(o: &ResolveOptions) -> Self {
        Window {
            hmax: o.hmax,
            dmax: o.dmax,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateKind {
    ModuleRate,
    BackelinRate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioEntry {
    pub i: usize,
    pub t: i32,
    #[serde(with = "ratio_str")]
    pub ratio: Rational64,
}

/// An a-priori upper bound for a rate, with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    #[serde(with = "ratio_str")]
    pub value: Rational64,
    pub source: String,
}

impl UpperBound {
    pub fn new(value: i64, source: impl Into<String>) -> Self {
        UpperBound {
            value: Rational64::from_integer(value),
            source: source.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RateReport {
    pub kind: RateKind,
    /// supremum over the computed window
    #[serde(with = "ratio_str")]
    pub value: Rational64,
    pub ratios: Vec<RatioEntry>,
    pub certified: Certification,
    pub window: Window,
    pub upper_bound: Option<UpperBound>,
}

impl RateReport {
    pub fn is_exact(&self) -> bool {
        self.certified == Certification::Exact
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub value: i32,
    pub certified: Certification,
    pub window: Window,
}

/// `max { t_i - i }` over the window, with `t_i = 0` when `β_i = 0`.
///
/// When the resolution is known to stop at length `L`, the term `i = L + 1` is the
/// last one that can matter, so the value is then exact.
pub fn regularity_of(table: &BettiTable) -> RegularityReport {
    let top = if table.terminated {
        table.length().map_or(0, |l| l + 1)
    } else {
        table.hmax
    };
    let value = (0..=top).map(|i| table.t(i) - i as i32).max().unwrap_or(0);
    RegularityReport {
        value,
        certified: if table.terminated {
            Certification::Exact
        } else {
            Certification::LowerBound
        },
        window: Window {
            hmax: table.hmax,
            dmax: table.dmax,
        },
    }
}

pub fn regularity(p: &Presentation, opts: &ResolveOptions) -> Result<RegularityReport> {
    Ok(regularity_of(&resolve(p, opts)?.betti()?))
}

fn certify(
    value: Rational64,
    terminated: bool,
    bound: Option<UpperBound>,
) -> Result<(Certification, Option<UpperBound>)> {
    if let Some(b) = &bound {
        if value > b.value {
            return Err(Error::Verification(format!(
                "computed rate {} exceeds the certified bound {} ({})",
                ratio_str::format(&value),
                ratio_str::format(&b.value),
                b.source
            )));
        }
    }
    let exact = terminated || bound.as_ref().is_some_and(|b| b.value == value);
    Ok((
        if exact {
            Certification::Exact
        } else {
            Certification::LowerBound
        },
        bound,
    ))
}

/// `max_{1 ≤ i ≤ hmax} t_i / i` from a Betti table.
pub fn rate_of(table: &BettiTable, bound: Option<UpperBound>) -> Result<RateReport> {
    if table.hmax < 1 {
        return Err(Error::InvalidInput("rate needs hmax ≥ 1".into()));
    }
    let ratios: Vec<RatioEntry> = (1..=table.hmax)
        .map(|i| RatioEntry {
            i,
            t: table.t(i),
            ratio: Rational64::new(table.t(i) as i64, i as i64),
        })
        .collect();
    let mut value = ratios.iter().map(|r| r.ratio).max().unwrap();
    if table.terminated {
        // every later t_i is 0
        value = value.max(Rational64::from_integer(0));
    }
    let (certified, upper_bound) = certify(value, table.terminated, bound)?;
    Ok(RateReport {
        kind: RateKind::ModuleRate,
        value,
        ratios,
        certified,
        window: Window {
            hmax: table.hmax,
            dmax: table.dmax,
        },
        upper_bound,
    })
}

pub fn rate(
    p: &Presentation,
    opts: &ResolveOptions,
    bound: Option<UpperBound>,
) -> Result<RateReport> {
    rate_of(&resolve(p, opts)?.betti()?, bound)
}

/// `m(1)`: the irrelevant ideal with its generators moved to degree 0, presented
/// by the syzygies of `(x_1, ..., x_n)`.
pub fn maximal_ideal_shifted(ring: &Arc<QuotientRing>, dmax: Option<i32>) -> Result<Presentation> {
    let n = ring.nvars();
    let row = GradedMatrix::new(
        ring.clone(),
        FreeModule::new(vec![1; n]),
        FreeModule::new(vec![0]),
        (0..n)
            .map(|i| Vector::from_entries(vec![(0, ring.ring().var(i))]))
            .collect(),
    )?;
    let (syz, _) = syzygy_matrix(&row, dmax, None)?;
    Ok(Presentation::new(syz).shifted(-1))
}

/// Backelin rate from the resolution of `K`: `max_{2 ≤ i ≤ hmax} (t_i(K) - 1)/(i - 1)`,
/// floored at 1.
pub fn backelin_rate_of(table: &BettiTable, bound: Option<UpperBound>) -> Result<RateReport> {
    if table.hmax < 2 {
        return Err(Error::InvalidInput("Backelin rate needs hmax ≥ 2".into()));
    }
    let ratios: Vec<RatioEntry> = (2..=table.hmax)
        .map(|i| RatioEntry {
            i,
            t: table.t(i),
            ratio: Rational64::new(table.t(i) as i64 - 1, i as i64 - 1),
        })
        .collect();
    let value = ratios
        .iter()
        .map(|r| r.ratio)
        .max()
        .unwrap()
        .max(Rational64::from_integer(1));
    let (certified, upper_bound) = certify(value, table.terminated, bound)?;
    Ok(RateReport {
        kind: RateKind::BackelinRate,
        value,
        ratios,
        certified,
        window: Window {
            hmax: table.hmax,
            dmax: table.dmax,
        },
        upper_bound,
    })
}

/// Backelin rate of `R`, computed from the resolution of `K` and cross-checked
/// against `rate_R(m(1))` on the matching window.
pub fn backelin_rate(
    ring: &Arc<QuotientRing>,
    opts: &ResolveOptions,
    bound: Option<UpperBound>,
) -> Result<RateReport> {
    let k = resolve(&Presentation::residue_field(ring.clone()), opts)?.betti()?;
    let report = backelin_rate_of(&k, bound)?;
    let m1_opts = ResolveOptions {
        hmax: opts.hmax - 1,
        dmax: opts.dmax.map(|d| d - 1),
        budget: opts.budget,
    };
    let m1 = maximal_ideal_shifted(ring, None)?;
    let m1_table = resolve(&m1, &m1_opts)?.betti()?;
    let via_m1 = rate_of(&m1_table, None)?;
    let floored = via_m1.value.max(Rational64::from_integer(1));
    if floored != report.value {
        return Err(Error::Verification(format!(
            "Backelin rate {} from K disagrees with rate of m(1) = {}",
            ratio_str::format(&report.value),
            ratio_str::format(&floored)
        )));
    }
    Ok(report)
}

/// `t_i(K) = i` whenever `β_i(K) ≠ 0`, for `i ≤ hmax`.
pub fn is_koszul_up_to(ring: &Arc<QuotientRing>, opts: &ResolveOptions) -> Result<bool> {
    let k = resolve(&Presentation::residue_field(ring.clone()), opts)?.betti()?;
    Ok((1..=opts.hmax).all(|i| k.beta(i) == 0 || k.t(i) == i as i32))
}

/// `t_0(M)` of the trimmed presentation (0 for the zero module).
pub fn t0(p: &Presentation) -> Result<i32> {
    Ok(trim(p)?.generators().max_shift().unwrap_or(0))
}

/// Standard monomials of `R` in degree `d`.
pub fn standard_monomials(ring: &QuotientRing, d: u32) -> Vec<Monomial> {
    let mut ms: Vec<Monomial> = monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .filter(|m| ring.is_standard_monomial(m))
        .collect();
    ms.sort_by(|a, b| ring.ring().order.cmp(b, a));
    ms
}

/// Smallest `t` with `R_t = 0`, searched up to `limit`.
pub fn socle_degree_bound(ring: &QuotientRing, limit: u32) -> Result<u32> {
    (0..=limit)
        .find(|&d| standard_monomials(ring, d).is_empty())
        .ok_or(Error::NotArtinian(limit as i32))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilator {
    /// minimal generators of `(0 : R_1)`
    pub gens: Vec<Polynomial>,
    /// `dim_K (0 : R_1)_j` for `j = 0, 1, ...`
    pub per_degree: Vec<usize>,
    /// total dimension `τ(R)`
    pub tau: usize,
}

/// `(0 : R_1)` of an Artinian `R`, degree by degree.
pub fn linear_annihilator(ring: &QuotientRing, limit: u32) -> Result<Annihilator> {
    let top = socle_degree_bound(ring, limit)?;
    let s = ring.ring();
    let fp = &s.field;
    let n = ring.nvars();
    let mut gens = Vec::new();
    let mut per_degree = Vec::new();
    for j in 0..top {
        let src = standard_monomials(ring, j);
        let dst = standard_monomials(ring, j + 1);
        let mut m = DenseMatrix::zeros(n * dst.len(), src.len());
        for (c, u) in src.iter().enumerate() {
            for v in 0..n {
                let f = ring.reduce(&s.monomial(u.mul(&Monomial::var(n, v))));
                for (coef, mono) in f.terms() {
                    let r = dst
                        .iter()
                        .position(|x| x == mono)
                        .expect("standard monomial");
                    m.set(v * dst.len() + r, c, *coef);
                }
            }
        }
        let ker = m.kernel(fp);
        per_degree.push(ker.len());
        for k in ker {
            gens.push(
                s.from_terms(
                    k.iter()
                        .zip(src.iter())
                        .filter(|(c, _)| **c != 0)
                        .map(|(c, u)| (*c, u.clone())),
                ),
            );
        }
    }
    let tau = per_degree.iter().sum();
    Ok(Annihilator {
        gens: minimalize_in(ring, &gens)?,
        per_degree,
        tau,
    })
}

/// The data of a change-of-rings check for `R -> S = R/(extra)` and an `S`-module `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeOfRingsReport {
    pub window: Window,
    #[serde(with = "ratio_str")]
    pub rate_r_m: Rational64,
    #[serde(with = "ratio_str")]
    pub rate_s_m: Rational64,
    #[serde(with = "ratio_str")]
    pub rate_r_s: Rational64,
    pub t0_s_m: i32,
    /// `M` is generated in non-negative degrees
    pub nonnegative: bool,
    /// `rate_R(M) ≤ max{rate_S(M), rate_R(S)} + max{0, t_0^S(M)}`
    pub main_inequality: bool,
    /// `rate_S(M) ≤ max{rate_R(M), rate_R(S)}`, checked for non-negatively graded `M`
    pub reverse_inequality: Option<bool>,
    /// `rate_R(M) = rate_S(M)` when `t_0^S(M) = 0` and `rate_R(S) = 1`
    pub equality_case: Option<bool>,
}

impl ChangeOfRingsReport {
    pub fn passed(&self) -> bool {
        self.main_inequality
            && self.reverse_inequality != Some(false)
            && self.equality_case != Some(false)
    }
}

/// Computes `rate_R(M)`, `rate_S(M)`, `rate_R(S)` and `t_0^S(M)` on the window and
/// checks the change-of-rings inequalities.
pub fn check_change_of_rings(
    r: &Arc<QuotientRing>,
    extra: &[Polynomial],
    m: &Presentation,
    opts: &ResolveOptions,
) -> Result<ChangeOfRingsReport> {
    for e in extra {
        if e.homogeneous_degree() == Some(0) {
            return Err(Error::InvalidInput(
                "extra relations must lie in the irrelevant ideal".into(),
            ));
        }
    }
    let s = m.ring();
    if s.ambient != r.ambient {
        return Err(Error::RingMismatch(
            "S must be a quotient of the ring of R".into(),
        ));
    }
    for g in &r.gb {
        if !s.reduce(g).is_zero() {
            return Err(Error::InvalidInput("R -> S is not a quotient map".into()));
        }
    }
    let m_over_r = m.restrict_scalars(r.clone())?;
    let s_over_r = Presentation::cyclic(r.clone(), extra)?;
    let rate_r_m = rate(&m_over_r, opts, None)?.value;
    let rate_s_m = rate(m, opts, None)?.value;
    let rate_r_s = rate(&s_over_r, opts, None)?.value;
    let trimmed = trim(m)?;
    let t0_s_m = trimmed.generators().max_shift().unwrap_or(0);
    let nonnegative = trimmed.generators().shifts.iter().all(|&d| d >= 0);
    let zero = Rational64::from_integer(0);
    let one = Rational64::from_integer(1);
    let main_inequality =
        rate_r_m <= rate_s_m.max(rate_r_s) + Rational64::from_integer(t0_s_m as i64).max(zero);
    let reverse_inequality = nonnegative.then(|| rate_s_m <= rate_r_m.max(rate_r_s));
    let equality_case = (t0_s_m == 0 && rate_r_s == one).then(|| rate_r_m == rate_s_m);
    Ok(ChangeOfRingsReport {
        window: opts.into(),
        rate_r_m,
        rate_s_m,
        rate_r_s,
        t0_s_m,
        nonnegative,
        main_inequality,
        reverse_inequality,
        equality_case,
    })
}

/// `t_n(L) ≤ max_{0 ≤ i ≤ n} t_{n-i}(L_i)` for an exact sequence `... -> L_1 -> L_0 -> L -> 0`.
pub fn exact_sequence_bound(target: &BettiTable, terms: &[BettiTable], n: usize) -> bool {
    let rhs = (0..=n)
        .filter_map(|i| terms.get(i).map(|t| t.t(n - i)))
        .max()
        .unwrap_or(0);
    target.t(n) <= rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn ring(vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
        Arc::new(QuotientRing::parse(PolyRing::with_vars(vars), gens).unwrap())
    }

    fn int(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn polynomial_ring_invariants() {
        for n in 1..=3 {
            let vars = ["x", "y", "z"];
            let r = ring(&vars[..n], &[]);
            let opts = ResolveOptions::new(5, None);
            let k = Presentation::residue_field(r.clone());
            let reg = regularity(&k, &opts).unwrap();
            assert_eq!((reg.value, reg.certified), (0, Certification::Exact));
            assert_eq!(rate(&k, &opts, None).unwrap().value, int(1));
            let b = backelin_rate(&r, &opts, None).unwrap();
            assert_eq!(b.value, int(1));
            assert!(b.is_exact());
            assert!(is_koszul_up_to(&r, &opts).unwrap());
        }
    }

    #[test]
    fn regularity_examples() {
        let r = ring(&["x", "y"], &[]);
        let p = Presentation::cyclic(r.clone(), &[r.ring().parse("x^2").unwrap()]).unwrap();
        let reg = regularity(&p, &ResolveOptions::new(4, None)).unwrap();
        assert_eq!((reg.value, reg.certified), (1, Certification::Exact));
        let r = ring(&["x"], &["x^3"]);
        let reg = regularity(
            &Presentation::residue_field(r),
            &ResolveOptions::new(6, Some(30)),
        )
        .unwrap();
        // t_6 = 9 gives 9 - 6 = 3
        assert_eq!((reg.value, reg.certified), (3, Certification::LowerBound));
    }

    #[test]
    fn backelin_rates_of_examples() {
        let opts = ResolveOptions::new(5, Some(20));
        let r = ring(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]);
        assert_eq!(backelin_rate(&r, &opts, None).unwrap().value, int(2));
        let r = ring(&["x", "y"], &["x^2", "x*y", "y^4"]);
        let b = backelin_rate(&r, &opts, Some(UpperBound::new(3, "artinian bound"))).unwrap();
        assert_eq!(b.value, int(3));
        assert!(b.is_exact());
        let r = ring(&["x", "y"], &["x^2"]);
        assert!(is_koszul_up_to(&r, &opts).unwrap());
        let r = ring(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]);
        assert!(!is_koszul_up_to(&r, &opts).unwrap());
    }

    #[test]
    fn module_rate_with_certificate() {
        let r = ring(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]);
        let opts = ResolveOptions::new(5, Some(20));
        let k = Presentation::residue_field(r.clone());
        let rep = rate(&k, &opts, Some(UpperBound::new(2, "artinian bound"))).unwrap();
        // t_i(K) = 1, 3, 4, 6, 7: the module rate stays below the bound
        assert_eq!(rep.value, Rational64::new(3, 2));
        assert!(!rep.is_exact());
        // the twist moves every t_i up by one
        let shifted = rate(&k.shifted(1), &opts, None).unwrap();
        for (a, b) in rep.ratios.iter().zip(&shifted.ratios) {
            assert_eq!(b.ratio, Rational64::new(a.t as i64 + 1, a.i as i64));
        }
        assert!(rate(&k, &opts, Some(UpperBound::new(1, "wrong"))).is_err());
    }

    #[test]
    fn linear_annihilators() {
        let a = linear_annihilator(&ring(&["x", "y"], &["x^2", "x*y", "y^4"]), 20).unwrap();
        assert_eq!(a.tau, 2);
        assert_eq!(a.per_degree, vec![0, 1, 0, 1]);
        assert_eq!(
            linear_annihilator(&ring(&["x"], &["x^4"]), 20).unwrap().tau,
            1
        );
        let a =
            linear_annihilator(&ring(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]), 20).unwrap();
        assert_eq!(a.tau, 3);
        assert!(matches!(
            linear_annihilator(&ring(&["x", "y"], &["x^2"]), 10),
            Err(Error::NotArtinian(_))
        ));
    }

    #[test]
    fn change_of_rings_example() {
        let r = ring(&["x", "y"], &[]);
        let s = r.ring();
        let extra: Vec<Polynomial> = ["x^2", "x*y", "y^4"]
            .iter()
            .map(|t| s.parse(t).unwrap())
            .collect();
        let sq = Arc::new(r.quotient_by(&extra).unwrap());
        let k = Presentation::residue_field(sq);
        let rep = check_change_of_rings(&r, &extra, &k, &ResolveOptions::new(4, Some(20))).unwrap();
        assert_eq!(rep.rate_r_m, int(1));
        assert_eq!(rep.rate_s_m, int(2));
        assert_eq!(rep.rate_r_s, int(4));
        assert!(rep.passed());
    }

    #[test]
    fn m1_presentation_is_generated_in_degree_zero() {
        let r = ring(&["x", "y"], &["x^2"]);
        let m1 = maximal_ideal_shifted(&r, None).unwrap();
        assert_eq!(m1.generators().shifts, vec![0, 0]);
    }
}
