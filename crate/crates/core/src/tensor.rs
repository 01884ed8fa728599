//! Tensor products over the base field of standard graded algebras and of their modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::buchberger;
use crate::ideal::QuotientRing;
use crate::invariants::{rate_of, ratio_str, regularity_of, t0, RegularityReport, Window};
use crate::module::{FreeModule, GradedMatrix, Presentation, Vector};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::resolution::{resolve, trim, BettiEntry, BettiTable, ResolveOptions};

/// `T = R ⊗_K S` on the disjoint union of the variables.
#[derive(Clone, Debug)]
pub struct TensorRing {
    pub ring: Arc<QuotientRing>,
    pub left: Arc<QuotientRing>,
    pub right: Arc<QuotientRing>,
    /// names given to the variables of `S` inside `T`
    pub right_names: Vec<String>,
}

impl TensorRing {
    fn left_vars(&self) -> usize {
        self.left.nvars()
    }

    /// Image of an element of `R` in `T`.
    pub fn embed_left(&self, f: &Polynomial) -> Polynomial {
        embed(self.ring.ring(), f, 0)
    }

    /// Image of an element of `S` in `T`.
    pub fn embed_right(&self, f: &Polynomial) -> Polynomial {
        embed(self.ring.ring(), f, self.left_vars())
    }
}

fn embed(t: &PolyRing, f: &Polynomial, offset: usize) -> Polynomial {
    let n = t.nvars();
    t.from_terms(f.terms().iter().map(|(c, m)| {
        let mut exps = vec![0u16; n];
        exps[offset..offset + m.nvars()].copy_from_slice(m.exps());
        (*c, Monomial::new(exps))
    }))
}

/// Colliding names of `S` get the first free suffix `_2`, `_3`, ...
fn disjoint_names(left: &[String], right: &[String]) -> Vec<String> {
    let mut taken: Vec<String> = left.to_vec();
    let mut out = Vec::with_capacity(right.len());
    for name in right {
        let mut candidate = name.clone();
        let mut k = 2;
        while taken.contains(&candidate) || right.iter().any(|r| r == &candidate && r != name) {
            candidate = format!("{name}_{k}");
            k += 1;
        }
        taken.push(candidate.clone());
        out.push(candidate);
    }
    out
}

pub fn tensor_rings(r: &Arc<QuotientRing>, s: &Arc<QuotientRing>) -> Result<TensorRing> {
    let (rr, sr) = (r.ring(), s.ring());
    if rr.field != sr.field {
        return Err(Error::RingMismatch(
            "tensor factors live over different fields".into(),
        ));
    }
    let right_names = disjoint_names(&rr.names, &sr.names);
    let mut names = rr.names.clone();
    names.extend(right_names.iter().cloned());
    let t = PolyRing::new(rr.field, names, rr.order)?;
    let mut gens: Vec<Polynomial> = r.min_gens.iter().map(|g| embed(&t, g, 0)).collect();
    gens.extend(s.min_gens.iter().map(|g| embed(&t, g, rr.nvars())));
    let ring = QuotientRing::new(t.clone(), &gens)?;

    // the union of the two reduced bases must already be the reduced basis of T
    let mut union: Vec<Polynomial> = r.gb.iter().map(|g| embed(&t, g, 0)).collect();
    union.extend(s.gb.iter().map(|g| embed(&t, g, rr.nvars())));
    let mut expected = buchberger(&t, &union)?;
    let mut got = ring.gb.clone();
    let key = |a: &Polynomial, b: &Polynomial| {
        t.order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    };
    expected.sort_by(key);
    got.sort_by(key);
    union.sort_by(key);
    if union != got || expected != got {
        return Err(Error::Verification(
            "the union of the factor Gröbner bases is not the Gröbner basis of the tensor product"
                .into(),
        ));
    }
    Ok(TensorRing {
        ring: Arc::new(ring),
        left: r.clone(),
        right: s.clone(),
        right_names,
    })
}

/// `M ⊗_K N` over `T`: generators are pairs, relations are `rel(M) ⊗ gens(N)` and
/// `gens(M) ⊗ rel(N)`.
pub fn tensor_modules(t: &TensorRing, m: &Presentation, n: &Presentation) -> Result<Presentation> {
    if m.ring() != &t.left || n.ring() != &t.right {
        return Err(Error::RingMismatch(
            "modules do not live on the tensor factors".into(),
        ));
    }
    let m = trim(m)?;
    let n = trim(n)?;
    let (gm, gn) = (&m.generators().shifts, &n.generators().shifts);
    let pair = |a: usize, b: usize| a * gn.len() + b;
    let mut codomain = Vec::with_capacity(gm.len() * gn.len());
    for &da in gm {
        for &db in gn {
            codomain.push(da + db);
        }
    }
    let mut domain = Vec::new();
    let mut columns = Vec::new();
    for (c, col) in m.relations.columns.iter().enumerate() {
        for (b, &db) in gn.iter().enumerate() {
            domain.push(m.relations.domain.shifts[c] + db);
            columns.push(Vector::from_entries(
                col.entries()
                    .iter()
                    .map(|(a, f)| (pair(*a, b), t.embed_left(f)))
                    .collect(),
            ));
        }
    }
    for (c, col) in n.relations.columns.iter().enumerate() {
        for (a, &da) in gm.iter().enumerate() {
            domain.push(n.relations.domain.shifts[c] + da);
            columns.push(Vector::from_entries(
                col.entries()
                    .iter()
                    .map(|(b, f)| (pair(a, *b), t.embed_right(f)))
                    .collect(),
            ));
        }
    }
    let rel = GradedMatrix::new(
        t.ring.clone(),
        FreeModule::new(domain),
        FreeModule::new(codomain),
        columns,
    )?;
    trim(&Presentation::new(rel))
}

/// `Σ_{i+i'=n, d+d'=j} β_{i,d}(A) β_{i',d'}(B)` for `n ≤ hmax`.
pub fn kunneth(a: &BettiTable, b: &BettiTable, hmax: usize, dmax: Option<i32>) -> BettiTable {
    let mut out = BettiTable::new(hmax, dmax);
    let mut acc: BTreeMap<(usize, i32), u64> = BTreeMap::new();
    for (&(i, d), &x) in &a.entries {
        for (&(i2, d2), &y) in &b.entries {
            if i + i2 <= hmax && dmax.is_none_or(|m| d + d2 <= m) {
                *acc.entry((i + i2, d + d2)).or_insert(0) += x * y;
            }
        }
    }
    for ((i, j), v) in acc {
        out.set(i, j, v);
    }
    out.terminated = a.terminated && b.terminated;
    out
}

/// Slack of `t_n^T(M ⊗ N) ≤ max_{i+j=n} t_i(M) + t_j(N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorLemmaRow {
    pub n: usize,
    pub t: i32,
    pub bound: i32,
    pub slack: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorReport {
    pub window: Window,
    pub betti_m: Vec<BettiEntry>,
    pub betti_n: Vec<BettiEntry>,
    pub betti_tensor: Vec<BettiEntry>,
    pub kunneth_ok: bool,
    pub lemma: Vec<TensorLemmaRow>,
    pub lemma_ok: bool,
    #[serde(with = "ratio_str")]
    pub rate_m: Rational64,
    #[serde(with = "ratio_str")]
    pub rate_n: Rational64,
    #[serde(with = "ratio_str")]
    pub rate_tensor: Rational64,
    /// the rate inequality is only asserted when both modules have `t_0 ≤ 0`
    pub rate_ok: Option<bool>,
    pub reg_m: RegularityReport,
    pub reg_n: RegularityReport,
    pub reg_tensor: RegularityReport,
    pub reg_ok: bool,
}

impl TensorReport {
    pub fn passed(&self) -> bool {
        self.kunneth_ok && self.lemma_ok && self.rate_ok != Some(false) && self.reg_ok
    }
}

/// Resolves `M`, `N` and `M ⊗_K N` on the window and checks the tensor inequalities
/// and the Künneth identity.
pub fn verify_tensor_bounds(
    m: &Presentation,
    n: &Presentation,
    opts: &ResolveOptions,
) -> Result<TensorReport> {
    if opts.hmax == 0 {
        return Err(Error::InvalidInput(
            "the window is too small: hmax must be at least 1".into(),
        ));
    }
    let t = tensor_rings(m.ring(), n.ring())?;
    let mn = tensor_modules(&t, m, n)?;
    let bm = resolve(m, opts)?.betti()?;
    let bn = resolve(n, opts)?.betti()?;
    let bt = resolve(&mn, opts)?.betti()?;
    let conv = kunneth(&bm, &bn, opts.hmax, opts.dmax);
    let kunneth_ok = bt.restricted(opts.hmax, opts.dmax).entries == conv.entries;

    let lemma: Vec<TensorLemmaRow> = (0..=opts.hmax)
        .map(|k| {
            let bound = (0..=k).map(|i| bm.t(i) + bn.t(k - i)).max().unwrap();
            TensorLemmaRow {
                n: k,
                t: bt.t(k),
                bound,
                slack: bound - bt.t(k),
            }
        })
        .collect();
    let lemma_ok = lemma.iter().all(|r| r.slack >= 0);

    let rate_m = rate_of(&bm, None)?.value;
    let rate_n = rate_of(&bn, None)?.value;
    let rate_tensor = rate_of(&bt, None)?.value;
    let rate_ok = (t0(m)? <= 0 && t0(n)? <= 0).then(|| rate_tensor <= rate_m.max(rate_n));

    let reg_m = regularity_of(&bm);
    let reg_n = regularity_of(&bn);
    let reg_tensor = regularity_of(&bt);
    let reg_ok = reg_tensor.value <= reg_m.value + reg_n.value;

    Ok(TensorReport {
        window: opts.into(),
        betti_m: bm.to_entries(),
        betti_n: bn.to_entries(),
        betti_tensor: bt.to_entries(),
        kunneth_ok,
        lemma,
        lemma_ok,
        rate_m,
        rate_n,
        rate_tensor,
        rate_ok,
        reg_m,
        reg_n,
        reg_tensor,
        reg_ok,
    })
}
