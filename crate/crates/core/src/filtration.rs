//! Generalized Koszul filtrations as checkable certificates, and the rate bounds they give.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::{colon, Ideal, QuotientRing};
use crate::invariants::{socle_degree_bound, standard_monomials, t0, UpperBound};
use crate::module::Presentation;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use crate::random::default_ring;

/// Identifier written into certificate files.
pub const CERTIFICATE_SCHEMA: &str = "syzygia/filtration-certificate/v1";

/// How a nonzero member `I` is obtained: `I = ideals[j] + (generator)` and
/// `(ideals[j] : I) = ideals[colon]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub j: usize,
    pub generator: Polynomial,
    pub colon: usize,
}

/// A finite family of ideals of `R` with one witness per nonzero member.
#[derive(Clone, Debug)]
pub struct FiltrationCertificate {
    pub ring: Arc<QuotientRing>,
    pub ideals: Vec<Ideal>,
    /// `None` exactly for the zero ideal at index 0
    pub witnesses: Vec<Option<Witness>>,
}

/// Result of checking one member of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberCheck {
    pub index: usize,
    pub ok: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationVerdict {
    pub valid: bool,
    pub size: usize,
    /// `max m(I)` over the family
    pub bound: u32,
    pub problems: Vec<String>,
    pub members: Vec<MemberCheck>,
}

/// Verifies the filtration axioms member by member.
///
/// `j` must point to an earlier member; `colon` may point anywhere in the family.
pub fn verify_filtration(cert: &FiltrationCertificate) -> Result<FiltrationVerdict> {
    let r = cert.ring.as_ref();
    let n = cert.ideals.len();
    if cert.witnesses.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} ideals but {} witness entries",
            n,
            cert.witnesses.len()
        )));
    }
    for ideal in &cert.ideals {
        for g in &ideal.gens {
            r.ring().check(g)?;
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(r.ring().to_string(g)));
            }
        }
    }
    for (i, w) in cert.witnesses.iter().enumerate() {
        if let Some(w) = w {
            if w.j >= n || w.colon >= n {
                return Err(Error::InvalidInput(format!(
                    "member {i}: witness index out of range"
                )));
            }
            if w.j >= i {
                return Err(Error::InvalidInput(format!(
                    "member {i}: witness J = #{} is not an earlier member",
                    w.j
                )));
            }
        }
    }

    let mut problems = Vec::new();
    if n == 0 || !cert.ideals[0].gens.is_empty() {
        problems.push("the first member must be the zero ideal".to_string());
    }
    let m = Ideal::maximal(r);
    let mut has_m = false;
    for ideal in &cert.ideals {
        if ideal.equals(r, &m)? {
            has_m = true;
            break;
        }
    }
    if !has_m {
        problems.push("the maximal ideal is not in the family".to_string());
    }

    let degrees: Vec<u32> = cert
        .ideals
        .iter()
        .map(|i| i.max_generator_degree(r))
        .collect::<Result<_>>()?;
    let mut members = Vec::with_capacity(n);
    for (i, ideal) in cert.ideals.iter().enumerate() {
        let mut bad = Vec::new();
        match &cert.witnesses[i] {
            None => {
                if !ideal.gens.is_empty() {
                    bad.push("nonzero member without a witness".to_string());
                }
            }
            Some(w) => {
                let j = &cert.ideals[w.j];
                let x = r.reduce(&w.generator);
                if !j.is_subset_of(r, ideal)? {
                    bad.push(format!("J = #{} is not contained in I", w.j));
                }
                let mut jx = j.gens.clone();
                jx.push(x.clone());
                let generated = r.ideal_of(&jx);
                if !generated.equals(r, ideal)? {
                    bad.push(format!("I != #{} + ({})", w.j, r.ring().to_string(&x)));
                }
                if x.is_zero() {
                    bad.push("cyclic generator is zero".to_string());
                } else {
                    let c = colon(r, &j.gens, &x)?;
                    if !c.equals(r, &cert.ideals[w.colon])? {
                        bad.push(format!("(#{} : I) != #{}", w.j, w.colon));
                    }
                }
                if degrees[w.j] > degrees[i] {
                    bad.push(format!(
                        "m(J) = {} exceeds m(I) = {} for J = #{}",
                        degrees[w.j], degrees[i], w.j
                    ));
                }
            }
        }
        members.push(MemberCheck {
            index: i,
            ok: bad.is_empty(),
            problems: bad,
        });
    }
    let valid = problems.is_empty() && members.iter().all(|m| m.ok);
    Ok(FiltrationVerdict {
        valid,
        size: n,
        bound: degrees.iter().copied().max().unwrap_or(0),
        problems,
        members,
    })
}

/// `Rate(R) ≤ max m(I)` over a verified family.
pub fn rate_bound_from_filtration(cert: &FiltrationCertificate) -> Result<UpperBound> {
    let verdict = verify_filtration(cert)?;
    if !verdict.valid {
        let first = verdict
            .problems
            .first()
            .cloned()
            .or_else(|| {
                verdict
                    .members
                    .iter()
                    .find(|m| !m.ok)
                    .map(|m| format!("member {}: {}", m.index, m.problems.join("; ")))
            })
            .unwrap_or_default();
        return Err(Error::Verification(format!(
            "filtration certificate rejected: {first}"
        )));
    }
    Ok(UpperBound::new(
        verdict.bound.max(1) as i64,
        format!("Koszul filtration with {} members", verdict.size),
    ))
}

/// All monomial ideals of a monomial quotient `R` generated in degrees `1..=d`,
/// with witnesses obtained by dropping one minimal generator.
///
/// Fails when a colon leaves the family or more than `budget` ideals arise.
pub fn monomial_filtration(
    ring: Arc<QuotientRing>,
    d: u32,
    budget: usize,
) -> Result<FiltrationCertificate> {
    if !ring.is_monomial() {
        return Err(Error::InvalidInput(
            "monomial filtrations need a monomial quotient".into(),
        ));
    }
    let atoms: Vec<Monomial> = (1..=d).flat_map(|e| standard_monomials(&ring, e)).collect();
    let divides = |a: usize, b: usize| atoms[a].divides(&atoms[b]);

    // antichains of atoms, breadth first
    let mut seen: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([Vec::new()]);
    seen.insert(Vec::new());
    while let Some(a) = queue.pop_front() {
        for u in 0..atoms.len() {
            if a.iter().any(|&g| divides(g, u)) {
                continue;
            }
            let mut b: Vec<usize> = a.iter().copied().filter(|&g| !divides(u, g)).collect();
            b.push(u);
            b.sort_unstable();
            if !seen.contains(&b) {
                if seen.len() >= budget {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {budget} monomial ideals"
                    )));
                }
                seen.insert(b.clone());
                queue.push_back(b);
            }
        }
    }
    let mut family: Vec<Vec<usize>> = seen.into_iter().collect();
    family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: BTreeMap<&Vec<usize>, usize> =
        family.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let atom_index: HashMap<&Monomial, usize> =
        atoms.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let s = ring.ring();
    let relations: Vec<Monomial> = ring
        .gb
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    let mut witnesses = Vec::with_capacity(family.len());
    for a in &family {
        let Some(&x) = a.last() else {
            witnesses.push(None);
            continue;
        };
        let j: Vec<usize> = a[..a.len() - 1].to_vec();
        let xm = &atoms[x];
        // (J : x) in R from the generators of J and of I
        let mut quotients: Vec<Monomial> = j
            .iter()
            .map(|&g| atoms[g].colon(xm))
            .chain(relations.iter().map(|g| g.colon(xm)))
            .collect();
        quotients.sort_by_key(|m| m.degree());
        let mut minimal: Vec<Monomial> = Vec::new();
        for q in quotients {
            if !minimal.iter().any(|g| g.divides(&q)) && !relations.iter().any(|g| g.divides(&q)) {
                minimal.push(q);
            }
        }
        let mut key = Vec::with_capacity(minimal.len());
        for q in &minimal {
            match atom_index.get(q) {
                Some(&i) => key.push(i),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "colon by {} has generator {} outside the family",
                        xm.display(&s.names),
                        q.display(&s.names)
                    )))
                }
            }
        }
        key.sort_unstable();
        let colon_idx = *index.get(&key).ok_or_else(|| {
            Error::InvalidInput("colon ideal is not a member of the family".into())
        })?;
        witnesses.push(Some(Witness {
            j: index[&j],
            generator: s.monomial(xm.clone()),
            colon: colon_idx,
        }));
    }
    let ideals = family
        .iter()
        .map(|a| Ideal {
            gens: a.iter().map(|&g| s.monomial(atoms[g].clone())).collect(),
        })
        .collect();
    Ok(FiltrationCertificate {
        ring,
        ideals,
        witnesses,
    })
}

/// Default cap on the number of ideals a monomial filtration may enumerate.
pub const FILTRATION_BUDGET: usize = 50_000;

/// `F_p[X_1..X_h]/(X_1..X_h)^t`.
pub fn truncation_ring(h: usize, t: u32) -> Result<QuotientRing> {
    if h < 1 || t < 2 {
        return Err(Error::InvalidInput(format!(
            "truncation rings need h ≥ 1 and t ≥ 2 (got h = {h}, t = {t})"
        )));
    }
    let ring = default_ring(h);
    let gens: Vec<Polynomial> = crate::monomial::monomials_of_degree(h, t)
        .into_iter()
        .map(|m| ring.monomial(m))
        .collect();
    QuotientRing::new(ring, &gens)
}

/// The family of all monomial ideals `U` of `F_p[X_1..X_h]/(X_1..X_h)^t` with `m(U) ≤ t - 1`.
pub fn truncation_filtration(h: usize, t: u32) -> Result<FiltrationCertificate> {
    let r = Arc::new(truncation_ring(h, t)?);
    monomial_filtration(r, t - 1, FILTRATION_BUDGET)
}

/// Which of the admissible shapes `(0 : l)` has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnnihilatorShape {
    Zero,
    Maximal,
    Principal,
}

#[derive(Clone, Debug)]
pub struct LiftedFiltration {
    pub shape: AnnihilatorShape,
    pub certificate: FiltrationCertificate,
    pub verdict: FiltrationVerdict,
}

/// Lifts a filtration of `R/(l)` to `R`, for a linear form `l` whose annihilator is
/// `0`, `m` or `(l)`.
///
/// The lifted family is `0` followed by `I + (l)` for each member `I` of the given one.
pub fn lift_filtration(
    r: Arc<QuotientRing>,
    l: &Polynomial,
    cert: &FiltrationCertificate,
) -> Result<LiftedFiltration> {
    let s = r.ring();
    s.check(l)?;
    let l = r.reduce(l);
    if l.homogeneous_degree() != Some(1) {
        return Err(Error::InvalidInput(format!(
            "{} is not a nonzero linear form of R",
            s.to_string(&l)
        )));
    }
    let quotient = r.quotient_by(std::slice::from_ref(&l))?;
    if cert.ring.ambient != r.ambient || cert.ring.gb != quotient.gb {
        return Err(Error::RingMismatch(
            "the certificate does not live on R/(l)".into(),
        ));
    }
    let ann = colon(&r, &[], &l)?;
    let shape = if ann.gens.is_empty() {
        AnnihilatorShape::Zero
    } else if ann.equals(&r, &Ideal::maximal(&r))? {
        AnnihilatorShape::Maximal
    } else if ann.equals(&r, &r.ideal_of(std::slice::from_ref(&l)))? {
        AnnihilatorShape::Principal
    } else {
        let gens: Vec<String> = ann.gens.iter().map(|g| s.to_string(g)).collect();
        return Err(Error::Verification(format!(
            "(0 : {}) = ({}) is not 0, m or (l)",
            s.to_string(&l),
            gens.join(", ")
        )));
    };

    let base = verify_filtration(cert)?;
    if !base.valid {
        return Err(Error::Verification(
            "the certificate over R/(l) does not verify".into(),
        ));
    }

    let mut ideals = vec![Ideal::zero()];
    for ideal in &cert.ideals {
        let mut gens = vec![l.clone()];
        gens.extend(ideal.gens.iter().cloned());
        ideals.push(Ideal {
            gens: crate::ideal::minimalize_in(&r, &gens)?,
        });
    }
    let mut m_index = None;
    let m = Ideal::maximal(&r);
    for (i, ideal) in ideals.iter().enumerate() {
        if ideal.equals(&r, &m)? {
            m_index = Some(i);
            break;
        }
    }
    let ann_index = match shape {
        AnnihilatorShape::Zero => 0,
        AnnihilatorShape::Principal => 1,
        AnnihilatorShape::Maximal => m_index.ok_or_else(|| {
            Error::Verification("the maximal ideal is missing after lifting".into())
        })?,
    };
    let mut witnesses = vec![
        None,
        Some(Witness {
            j: 0,
            generator: l.clone(),
            colon: ann_index,
        }),
    ];
    for w in cert.witnesses.iter().skip(1) {
        let w = w
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("nonzero member without a witness".into()))?;
        witnesses.push(Some(Witness {
            j: w.j + 1,
            generator: w.generator.clone(),
            colon: w.colon + 1,
        }));
    }
    let lifted = FiltrationCertificate {
        ring: r,
        ideals,
        witnesses,
    };
    let verdict = verify_filtration(&lifted)?;
    if !verdict.valid {
        return Err(Error::Verification(
            "the lifted family does not verify".into(),
        ));
    }
    Ok(LiftedFiltration {
        shape,
        certificate: lifted,
        verdict,
    })
}

/// `rate_R(M) ≤ t_0(M) + t - 1` for Artinian `R` with `R_t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinianBound {
    pub t0: i32,
    pub t: u32,
    pub value: i64,
}

impl ArtinianBound {
    pub fn into_upper_bound(self) -> UpperBound {
        UpperBound::new(
            self.value,
            format!(
                "Artinian bound t_0 + t - 1 with t_0 = {}, t = {}",
                self.t0, self.t
            ),
        )
    }
}

pub fn artinian_rate_bound(r: &QuotientRing, m: &Presentation) -> Result<ArtinianBound> {
    let n = r.nvars();
    let mut limit = 1u32;
    for v in 0..n {
        let power = r.gb.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            (lm.pure_power_var() == Some(v)).then(|| lm.degree())
        });
        match power {
            Some(e) => limit += e - 1,
            None => {
                return Err(Error::InvalidInput(format!(
                    "R is not Artinian: no power of {} lies in the defining ideal",
                    r.ring().names[v]
                )))
            }
        }
    }
    let t = socle_degree_bound(r, limit)?;
    let t0 = t0(m)?;
    Ok(ArtinianBound {
        t0,
        t,
        value: t0 as i64 + t as i64 - 1,
    })
}

/// Serialized ring: field, variables, order and defining relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub p: u32,
    pub vars: Vec<String>,
    pub order: String,
    pub relations: Vec<String>,
}

impl RingJson {
    pub fn from_ring(r: &QuotientRing) -> Self {
        let s = r.ring();
        RingJson {
            p: s.field.characteristic(),
            vars: s.names.clone(),
            order: s.order.name().to_string(),
            relations: r.min_gens.iter().map(|g| s.to_string(g)).collect(),
        }
    }

    pub fn to_ring(&self) -> Result<QuotientRing> {
        let order = MonomialOrder::parse(&self.order)
            .ok_or_else(|| Error::InvalidInput(format!("unknown order {:?}", self.order)))?;
        let s = PolyRing::new(PrimeField::new(self.p)?, self.vars.clone(), order)?;
        let gens = self
            .relations
            .iter()
            .map(|g| s.parse_homogeneous(g))
            .collect::<Result<Vec<_>>>()?;
        QuotientRing::new_unrestricted(Arc::new(s), &gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub j: usize,
    pub generator: String,
    pub colon: usize,
}

/// File format of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema: String,
    pub ring: RingJson,
    pub ideals: Vec<Vec<String>>,
    pub witnesses: Vec<Option<WitnessJson>>,
}

impl FiltrationCertificate {
    pub fn to_json(&self) -> CertificateJson {
        let s = self.ring.ring();
        CertificateJson {
            schema: CERTIFICATE_SCHEMA.to_string(),
            ring: RingJson::from_ring(&self.ring),
            ideals: self
                .ideals
                .iter()
                .map(|i| i.gens.iter().map(|g| s.to_string(g)).collect())
                .collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|w| {
                    w.as_ref().map(|w| WitnessJson {
                        j: w.j,
                        generator: s.to_string(&w.generator),
                        colon: w.colon,
                    })
                })
                .collect(),
        }
    }

    pub fn from_json(c: &CertificateJson) -> Result<Self> {
        if c.schema != CERTIFICATE_SCHEMA {
            return Err(Error::InvalidInput(format!(
                "unsupported schema {:?}",
                c.schema
            )));
        }
        let ring = Arc::new(c.ring.to_ring()?);
        let s = ring.ring();
        let ideals = c
            .ideals
            .iter()
            .map(|gens| {
                let polys = gens
                    .iter()
                    .map(|g| s.parse_homogeneous(g))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ring.ideal_of(&polys))
            })
            .collect::<Result<Vec<_>>>()?;
        let witnesses = c
            .witnesses
            .iter()
            .map(|w| {
                w.as_ref()
                    .map(|w| {
                        Ok(Witness {
                            j: w.j,
                            generator: s.parse_homogeneous(&w.generator)?,
                            colon: w.colon,
                        })
                    })
                    .transpose()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiltrationCertificate {
            ring,
            ideals,
            witnesses,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
        Arc::new(QuotientRing::parse(PolyRing::with_vars(vars), gens).unwrap())
    }

    fn trivial(r: Arc<QuotientRing>, x: &str, colon_idx: usize) -> FiltrationCertificate {
        let s = r.ring().clone();
        let x = s.parse(x).unwrap();
        FiltrationCertificate {
            ideals: vec![Ideal::zero(), r.ideal_of(std::slice::from_ref(&x))],
            witnesses: vec![
                None,
                Some(Witness {
                    j: 0,
                    generator: x,
                    colon: colon_idx,
                }),
            ],
            ring: r,
        }
    }

    #[test]
    fn trivial_certificate_on_a_line() {
        let cert = trivial(ring(&["x"], &[]), "x", 0);
        let v = verify_filtration(&cert).unwrap();
        assert!(v.valid, "{v:?}");
        assert_eq!(rate_bound_from_filtration(&cert).unwrap().value, 1.into());
    }

    #[test]
    fn wrong_colon_is_reported() {
        let cert = trivial(ring(&["x"], &["x^2"]), "x", 0);
        let v = verify_filtration(&cert).unwrap();
        assert!(!v.valid);
        assert!(v.members[1].problems[0].contains("(#0 : I) != #0"));
        assert!(
            verify_filtration(&trivial(ring(&["x"], &["x^2"]), "x", 1))
                .unwrap()
                .valid
        );
    }

    #[test]
    fn degree_condition_is_checked() {
        let r = ring(&["x"], &["x^3"]);
        let s = r.ring().clone();
        let p = |t: &str| s.parse(t).unwrap();
        let cert = FiltrationCertificate {
            ideals: vec![
                Ideal::zero(),
                r.ideal_of(&[p("x^2")]),
                r.ideal_of(&[p("x")]),
            ],
            witnesses: vec![
                None,
                Some(Witness {
                    j: 0,
                    generator: p("x^2"),
                    colon: 2,
                }),
                Some(Witness {
                    j: 1,
                    generator: p("x"),
                    colon: 2,
                }),
            ],
            ring: r,
        };
        let v = verify_filtration(&cert).unwrap();
        assert!(v.members[1].ok, "{v:?}");
        assert_eq!(
            v.members[2].problems,
            vec!["m(J) = 2 exceeds m(I) = 1 for J = #1".to_string()]
        );
        assert!(rate_bound_from_filtration(&cert).is_err());
    }

    #[test]
    fn forward_j_is_an_input_error() {
        let mut cert = trivial(ring(&["x"], &[]), "x", 0);
        cert.witnesses[1].as_mut().unwrap().j = 1;
        assert!(verify_filtration(&cert).is_err());
    }

    #[test]
    fn truncation_filtrations_verify() {
        for (h, t, size) in [(1, 3, 3), (2, 2, 4), (2, 3, 0)] {
            let cert = truncation_filtration(h, t).unwrap();
            if size > 0 {
                assert_eq!(cert.ideals.len(), size);
            }
            let v = verify_filtration(&cert).unwrap();
            assert!(v.valid, "({h},{t}): {:?}", v.members.iter().find(|m| !m.ok));
            assert_eq!(v.bound, t - 1);
        }
        assert!(truncation_ring(0, 3).is_err());
        assert!(truncation_ring(2, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let cert = truncation_filtration(2, 3).unwrap();
        let text = serde_json::to_string(&cert.to_json()).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert.to_json());
        let cert2 = FiltrationCertificate::from_json(&back).unwrap();
        assert!(verify_filtration(&cert2).unwrap().valid);
    }

    #[test]
    fn artinian_bounds() {
        let r = ring(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]);
        let k = Presentation::residue_field(r.clone());
        assert_eq!(artinian_rate_bound(&r, &k).unwrap().value, 2);
        assert_eq!(artinian_rate_bound(&r, &k.shifted(2)).unwrap().value, 4);
        let line = ring(&["x", "y"], &["x^2"]);
        assert!(matches!(
            artinian_rate_bound(&line, &Presentation::residue_field(line.clone())),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn lifting_through_a_regular_element() {
        let r = ring(&["x", "y"], &["x^2"]);
        let y = r.ring().parse("y").unwrap();
        let q = Arc::new(r.quotient_by(std::slice::from_ref(&y)).unwrap());
        let base = monomial_filtration(q, 1, 100).unwrap();
        let lifted = lift_filtration(r, &y, &base).unwrap();
        assert_eq!(lifted.shape, AnnihilatorShape::Zero);
        assert!(lifted.verdict.valid);
    }

    #[test]
    fn inadmissible_form_is_rejected() {
        let r = ring(&["x", "y"], &["x^3", "x^2*y", "x*y^2", "y^3"]);
        let l = r.ring().parse("x - y").unwrap();
        let q = Arc::new(r.quotient_by(std::slice::from_ref(&l)).unwrap());
        let base = trivial(q, "x", 1);
        let err = lift_filtration(r, &l, &base).unwrap_err();
        assert!(err.to_string().contains("is not 0, m or (l)"), "{err}");
    }
}
