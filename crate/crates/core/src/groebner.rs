//! Homogeneous Buchberger engine for submodules of graded free modules.
//!
//! One engine serves three callers:
//! * ideal Gröbner bases (rank one, no tracking),
//! * module Gröbner bases of `image + I*F_0` (leading-term modules, membership),
//! * syzygies, by tracking each element's coordinates in an extra block of
//!   components ranked below the ambient ones (block elimination, position over
//!   term between the two blocks and term over position inside each block).
//!
//! S-pairs are processed degree by degree, so stopping at a degree bound `D`
//! yields a basis that is exact in all degrees `<= D`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub c: u32,
    pub m: Monomial,
    pub k: u32,
}

/// Module term order. Components `< block` dominate everything in the tracking block.
#[derive(Clone, Debug)]
pub(crate) struct EngineOrder {
    pub mono: MonomialOrder,
    pub shifts: Vec<i32>,
    pub block: u32,
}

impl EngineOrder {
    #[inline]
    pub fn cmp(&self, a: &VTerm, b: &VTerm) -> Ordering {
        let (ba, bb) = (a.k < self.block, b.k < self.block);
        if ba != bb {
            return ba.cmp(&bb);
        }
        let da = a.m.degree() as i32 + self.shifts[a.k as usize];
        let db = b.m.degree() as i32 + self.shifts[b.k as usize];
        da.cmp(&db)
            .then_with(|| self.mono.cmp(&a.m, &b.m))
            .then_with(|| b.k.cmp(&a.k))
    }

    pub fn sort(&self, terms: &mut Vec<VTerm>, fp: &PrimeField) {
        terms.sort_by(|a, b| self.cmp(b, a));
        let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
        for t in terms.drain(..) {
            match out.last_mut() {
                Some(last) if last.k == t.k && last.m == t.m => {
                    last.c = fp.add(last.c, t.c);
                    if last.c == 0 {
                        out.pop();
                    }
                }
                _ if t.c == 0 => {}
                _ => out.push(t),
            }
        }
        *terms = out;
    }

    pub fn degree_of(&self, t: &VTerm) -> i32 {
        t.m.degree() as i32 + self.shifts[t.k as usize]
    }
}

/// `acc + c * m * f` on sorted term lists.
pub(crate) fn axpy(
    ord: &EngineOrder,
    fp: &PrimeField,
    acc: &[VTerm],
    c: u32,
    m: &Monomial,
    f: &[VTerm],
) -> Vec<VTerm> {
    let mut out = Vec::with_capacity(acc.len() + f.len());
    let mut i = 0;
    let mut j = 0;
    let mut pending: Option<VTerm> = None;
    loop {
        if pending.is_none() && j < f.len() {
            pending = Some(VTerm {
                c: fp.mul(f[j].c, c),
                m: f[j].m.mul(m),
                k: f[j].k,
            });
            j += 1;
        }
        match (acc.get(i), pending.as_ref()) {
            (None, None) => break,
            (Some(a), None) => {
                out.extend_from_slice(&acc[i..]);
                let _ = a;
                break;
            }
            (None, Some(_)) => out.push(pending.take().unwrap()),
            (Some(a), Some(b)) => match ord.cmp(a, b) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => out.push(pending.take().unwrap()),
                Ordering::Equal => {
                    let b = pending.take().unwrap();
                    let s = fp.add(a.c, b.c);
                    if s != 0 {
                        out.push(VTerm { c: s, ..b });
                    }
                    i += 1;
                }
            },
        }
    }
    out
}

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub terms: Vec<VTerm>,
    /// an unmodified `g * e_k` with `g` from the defining Gröbner basis
    pub pure_ideal: bool,
}

impl Elem {
    pub fn lead(&self) -> &VTerm {
        &self.terms[0]
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: i32,
}

pub(crate) struct EngineInput {
    pub terms: Vec<VTerm>,
    pub pure_ideal: bool,
}

pub(crate) struct EngineConfig {
    pub order: EngineOrder,
    pub dmax: Option<i32>,
    /// Buchberger's coprime-leads criterion; only sound for rank-one untracked runs.
    pub product_criterion: bool,
    /// Abort once the basis plus syzygy count exceeds this.
    pub budget: Option<usize>,
}

pub(crate) struct EngineOutput {
    /// Elements with leading term in the ambient block; a Gröbner basis up to `dmax`.
    pub basis: Vec<Elem>,
    /// Tracking-block parts of elements whose ambient part reduced to zero.
    pub syzygies: Vec<(i32, Vec<VTerm>)>,
    /// Something above `dmax` was discarded.
    pub truncated: bool,
}

pub(crate) fn run_engine(
    fp: &PrimeField,
    cfg: &EngineConfig,
    inputs: Vec<EngineInput>,
) -> Result<EngineOutput> {
    let ord = &cfg.order;
    let mut truncated = false;
    let mut by_degree: BTreeMap<i32, Vec<EngineInput>> = BTreeMap::new();
    for inp in inputs {
        if inp.terms.is_empty() {
            continue;
        }
        let d = ord.degree_of(&inp.terms[0]);
        by_degree.entry(d).or_default().push(inp);
    }

    let mut basis: Vec<Elem> = Vec::new();
    let mut by_comp: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut syzygies: Vec<(i32, Vec<VTerm>)> = Vec::new();

    loop {
        let next_input = by_degree.keys().next().copied();
        let next_pair = pairs.iter().map(|p| p.deg).min();
        let d = match (next_input, next_pair) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if cfg.dmax.is_some_and(|dm| d > dm) {
            truncated = true;
            break;
        }

        let mut work: Vec<(Vec<VTerm>, bool)> = Vec::new();
        if let Some(inps) = by_degree.remove(&d) {
            work.extend(inps.into_iter().map(|i| (i.terms, i.pure_ideal)));
        }
        let (now, later): (Vec<Pair>, Vec<Pair>) = pairs.into_iter().partition(|p| p.deg == d);
        pairs = later;
        let n_inputs = work.len();
        let mut now = now;
        now.sort_by_key(|a| (a.i, a.j));
        for p in &now {
            work.push((spoly(ord, fp, &basis[p.i], &basis[p.j], &p.lcm), false));
        }

        for (idx, (terms, pure)) in work.into_iter().enumerate() {
            let pure =
                pure && idx < n_inputs && find_reducer(&terms[0], &basis, &by_comp).is_none();
            let reduced = top_reduce(ord, fp, terms, &basis, &by_comp);
            if reduced.is_empty() {
                continue;
            }
            if reduced[0].k < ord.block {
                let lc = reduced[0].c;
                let terms = if lc == 1 {
                    reduced
                } else {
                    let inv = fp.inv(lc);
                    reduced
                        .into_iter()
                        .map(|t| VTerm {
                            c: fp.mul(t.c, inv),
                            ..t
                        })
                        .collect()
                };
                let elem = Elem {
                    terms,
                    pure_ideal: pure,
                };
                insert(ord, cfg, &mut basis, &mut by_comp, &mut pairs, elem);
            } else {
                syzygies.push((d, reduced));
            }
            if let Some(b) = cfg.budget {
                if basis.len() + syzygies.len() > b {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {b} basis elements and syzygies at degree {d}"
                    )));
                }
            }
        }
    }

    Ok(EngineOutput {
        basis,
        syzygies,
        truncated,
    })
}

fn spoly(ord: &EngineOrder, fp: &PrimeField, a: &Elem, b: &Elem, lcm: &Monomial) -> Vec<VTerm> {
    let ua = a.lead().m.quotient_of(lcm).expect("lcm divisible");
    let ub = b.lead().m.quotient_of(lcm).expect("lcm divisible");
    let left = axpy(ord, fp, &[], 1, &ua, &a.terms);
    axpy(ord, fp, &left, fp.neg(1), &ub, &b.terms)
}

fn find_reducer(t: &VTerm, basis: &[Elem], by_comp: &BTreeMap<u32, Vec<usize>>) -> Option<usize> {
    by_comp
        .get(&t.k)?
        .iter()
        .copied()
        .find(|&g| basis[g].lead().m.divides(&t.m))
}

/// Reduces the leading term until it is irreducible or leaves the ambient block.
fn top_reduce(
    ord: &EngineOrder,
    fp: &PrimeField,
    mut f: Vec<VTerm>,
    basis: &[Elem],
    by_comp: &BTreeMap<u32, Vec<usize>>,
) -> Vec<VTerm> {
    while let Some(t) = f.first() {
        if t.k >= ord.block {
            break;
        }
        let Some(g) = find_reducer(t, basis, by_comp) else {
            break;
        };
        let u = basis[g].lead().m.quotient_of(&t.m).unwrap();
        let c = fp.neg(t.c);
        f = axpy(ord, fp, &f, c, &u, &basis[g].terms);
    }
    f
}

/// Gebauer–Möller pair update.
fn insert(
    ord: &EngineOrder,
    cfg: &EngineConfig,
    basis: &mut Vec<Elem>,
    by_comp: &mut BTreeMap<u32, Vec<usize>>,
    pairs: &mut Vec<Pair>,
    elem: Elem,
) {
    let h = basis.len();
    let hk = elem.lead().k;
    let hm = elem.lead().m.clone();
    let shift = ord.shifts[hk as usize];
    let old: Vec<usize> = by_comp.get(&hk).cloned().unwrap_or_default();

    // candidate pairs (g, h)
    let cands: Vec<(usize, Monomial, bool)> = old
        .iter()
        .map(|&g| {
            let gm = &basis[g].lead().m;
            let coprime = cfg.product_criterion && gm.is_coprime(&hm);
            (g, gm.lcm(&hm), coprime)
        })
        .collect();

    // criterion M / F: drop (g, h) if another candidate lcm divides it (ties: keep the first)
    let mut kept: Vec<usize> = Vec::new();
    for (a, (_, la, _)) in cands.iter().enumerate() {
        let dominated = cands
            .iter()
            .enumerate()
            .any(|(b, (_, lb, _))| b != a && lb.divides(la) && (lb != la || b < a));
        if !dominated {
            kept.push(a);
        }
    }

    // criterion B on old pairs
    pairs.retain(|p| {
        if basis[p.i].lead().k != hk {
            return true;
        }
        if !hm.divides(&p.lcm) {
            return true;
        }
        let li = basis[p.i].lead().m.lcm(&hm);
        let lj = basis[p.j].lead().m.lcm(&hm);
        li == p.lcm || lj == p.lcm
    });

    for a in kept {
        let (g, lcm, coprime) = &cands[a];
        if *coprime {
            continue;
        }
        if elem.pure_ideal && basis[*g].pure_ideal {
            continue;
        }
        pairs.push(Pair {
            i: *g,
            j: h,
            deg: lcm.degree() as i32 + shift,
            lcm: lcm.clone(),
        });
    }

    by_comp.entry(hk).or_default().push(h);
    basis.push(elem);
}

/// Converts a polynomial to rank-one engine terms in component `k`.
pub(crate) fn poly_to_terms(f: &Polynomial, k: u32) -> Vec<VTerm> {
    f.terms()
        .iter()
        .map(|(c, m)| VTerm {
            c: *c,
            m: m.clone(),
            k,
        })
        .collect()
}

pub(crate) fn terms_to_poly(terms: &[VTerm]) -> Polynomial {
    Polynomial::from_sorted_terms(terms.iter().map(|t| (t.c, t.m.clone())).collect())
}

/// Result of an ideal Gröbner basis computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    /// Reduced, monic, sorted by degree and then by decreasing leading monomial.
    pub gb: Vec<Polynomial>,
    /// Exact only in degrees `<= dmax` when set.
    pub truncated: bool,
}

/// Reduced Gröbner basis of the ideal generated by homogeneous `gens`.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    Ok(buchberger_truncated(ring, gens, None)?.gb)
}

/// Degree-truncated variant: exact in every degree `<= dmax`.
pub fn buchberger_truncated(
    ring: &PolyRing,
    gens: &[Polynomial],
    dmax: Option<i32>,
) -> Result<IdealBasis> {
    for g in gens {
        ring.check(g)?;
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous(ring.to_string(g)));
        }
    }
    let cfg = EngineConfig {
        order: EngineOrder {
            mono: ring.order,
            shifts: vec![0],
            block: 1,
        },
        dmax,
        product_criterion: true,
        budget: None,
    };
    let inputs = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| EngineInput {
            terms: poly_to_terms(g, 0),
            pure_ideal: false,
        })
        .collect();
    let out = run_engine(&ring.field, &cfg, inputs)?;
    let polys: Vec<Polynomial> = out.basis.iter().map(|e| terms_to_poly(&e.terms)).collect();
    Ok(IdealBasis {
        gb: reduce_basis(ring, polys),
        truncated: out.truncated,
    })
}

/// Turns any Gröbner basis into the reduced one.
pub fn reduce_basis(ring: &PolyRing, polys: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading monomial is a multiple of another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, f) in polys.iter().enumerate() {
        let lf = f.leading_monomial().unwrap();
        let redundant = polys.iter().enumerate().any(|(j, g)| {
            let lg = g.leading_monomial().unwrap();
            j != i && lg.divides(lf) && (lg != lf || j < i)
        });
        if !redundant {
            minimal.push(ring.monic(f));
        }
    }
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for (i, f) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = Polynomial::from_sorted_terms(vec![f.terms()[0].clone()]);
        let tail = Polynomial::from_sorted_terms(f.terms()[1..].to_vec());
        let tail = normal_form_unchecked(ring, &tail, &others);
        reduced.push(ring.add(&lead, &tail));
    }
    sort_basis(ring, &mut reduced);
    reduced
}

pub(crate) fn sort_basis(ring: &PolyRing, gb: &mut [Polynomial]) {
    gb.sort_by(|a, b| {
        let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        la.degree()
            .cmp(&lb.degree())
            .then_with(|| ring.order.cmp(lb, la))
    });
}

/// Remainder of `f` on division by `divisors`.
///
/// Deterministic: the largest reducible term is always treated first and the
/// first divisor (in the given order) whose leading monomial divides it is used.
pub fn normal_form(ring: &PolyRing, f: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    ring.check(f)?;
    for g in divisors {
        ring.check(g)?;
        if g.is_zero() {
            return Err(Error::InvalidInput("zero divisor in normal form".into()));
        }
    }
    Ok(normal_form_unchecked(ring, f, divisors))
}

pub(crate) fn normal_form_unchecked(
    ring: &PolyRing,
    f: &Polynomial,
    divisors: &[Polynomial],
) -> Polynomial {
    let fp = &ring.field;
    let mut rest = f.clone();
    let mut rem: Vec<(u32, Monomial)> = Vec::new();
    while let Some((c, m)) = rest.terms().first().cloned() {
        match divisors
            .iter()
            .find(|g| g.leading_monomial().unwrap().divides(&m))
        {
            Some(g) => {
                let (lc, lm) = &g.terms()[0];
                let u = lm.quotient_of(&m).unwrap();
                let coef = fp.neg(fp.div(c, *lc));
                rest = ring.axpy(coef, &u, g, &rest);
            }
            None => {
                rem.push((c, m));
                rest = Polynomial::from_sorted_terms(rest.terms()[1..].to_vec());
            }
        }
    }
    Polynomial::from_sorted_terms(rem)
}
