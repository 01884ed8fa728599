//! Syzygies, trimming and minimal graded free resolutions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{poly_to_terms, run_engine, EngineConfig, EngineInput, EngineOrder, VTerm};
use crate::ideal::QuotientRing;
use crate::module::{FreeModule, GradedMatrix, Presentation, Vector};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Window and resource limits for a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveOptions {
    /// homological degree bound `N`
    pub hmax: usize,
    /// internal degree bound `D`; `None` computes every syzygy completely
    pub dmax: Option<i32>,
    /// maximal number of basis elements plus syzygies per Gröbner run
    pub budget: Option<usize>,
}

impl ResolveOptions {
    pub fn new(hmax: usize, dmax: Option<i32>) -> Self {
        ResolveOptions {
            hmax,
            dmax,
            budget: None,
        }
    }
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions::new(5, Some(20))
    }
}

/// Generators of `ker(m)`, as the columns of a matrix into `domain(m)`.
///
/// The second component is `true` when something above `dmax` was dropped.
pub fn syzygy_matrix(
    m: &GradedMatrix,
    dmax: Option<i32>,
    budget: Option<usize>,
) -> Result<(GradedMatrix, bool)> {
    let ring = m.ring.clone();
    let s = ring.ring();
    let fp = &s.field;
    let r = m.nrows();
    let block = r as u32;
    let mut shifts = m.codomain.shifts.clone();
    shifts.extend(m.domain.shifts.iter().copied());
    let order = EngineOrder {
        mono: s.order,
        shifts,
        block,
    };
    let one = Monomial::one(s.nvars());
    let mut inputs = Vec::new();
    for (j, col) in m.columns.iter().enumerate() {
        let mut terms = col.to_terms(0);
        terms.push(VTerm {
            c: 1,
            m: one.clone(),
            k: block + j as u32,
        });
        order.sort(&mut terms, fp);
        inputs.push(EngineInput {
            terms,
            pure_ideal: false,
        });
    }
    for g in &ring.gb {
        for k in 0..r {
            inputs.push(EngineInput {
                terms: poly_to_terms(g, k as u32),
                pure_ideal: true,
            });
        }
    }
    let cfg = EngineConfig {
        order,
        dmax,
        product_criterion: false,
        budget,
    };
    let out = run_engine(fp, &cfg, inputs)?;

    let mut domain = Vec::new();
    let mut columns = Vec::new();
    for (d, terms) in out.syzygies {
        let mut rows: BTreeMap<usize, Vec<(u32, Monomial)>> = BTreeMap::new();
        for t in terms {
            rows.entry((t.k - block) as usize)
                .or_default()
                .push((t.c, t.m));
        }
        let col = Vector::from_entries(
            rows.into_iter()
                .map(|(k, ts)| (k, ring.reduce(&s.from_terms(ts))))
                .collect(),
        );
        if !col.is_zero() {
            domain.push(d);
            columns.push(col);
        }
    }
    let syz = GradedMatrix {
        ring,
        domain: FreeModule::new(domain),
        codomain: m.domain.clone(),
        columns,
    };
    Ok((syz, out.truncated))
}

/// Gaussian elimination on the unit (nonzero constant) entries of `m`.
///
/// Each pivot at `(r, c)` clears row `r` from the other columns and then drops row `r`
/// and column `c`; zero columns are dropped as well. Returns the surviving row indices
/// of the original codomain, in order.
pub fn eliminate_units(m: &mut GradedMatrix) -> Vec<usize> {
    let ring = m.ring.clone();
    let s = ring.ring();
    let fp = &s.field;
    let nrows = m.nrows();
    let ncols = m.ncols();
    let mut row_alive = vec![true; nrows];
    let mut col_alive = vec![true; ncols];
    loop {
        let mut pivot = None;
        'search: for c in 0..ncols {
            if !col_alive[c] {
                continue;
            }
            for (r, p) in m.columns[c].entries() {
                if row_alive[*r] && p.homogeneous_degree() == Some(0) {
                    pivot = Some((*r, c, p.constant_coefficient()));
                    break 'search;
                }
            }
        }
        let Some((r, c, u)) = pivot else { break };
        let uinv = fp.inv(u);
        let pivot_col = m.columns[c].clone();
        for c2 in 0..ncols {
            if c2 == c || !col_alive[c2] {
                continue;
            }
            if let Some(a) = m.columns[c2].get(r) {
                let f = s.neg(&s.scale(a, uinv));
                m.columns[c2] = m.columns[c2].add_multiple(&ring, &f, &pivot_col);
            }
        }
        row_alive[r] = false;
        col_alive[c] = false;
    }
    for c in 0..ncols {
        if col_alive[c] && m.columns[c].is_zero() {
            col_alive[c] = false;
        }
    }
    let mut map = vec![None; nrows];
    let mut kept = Vec::new();
    for r in 0..nrows {
        if row_alive[r] {
            map[r] = Some(kept.len());
            kept.push(r);
        }
    }
    m.retain_columns(&col_alive);
    for col in m.columns.iter_mut() {
        *col = col.remap_rows(&map);
    }
    m.codomain = FreeModule::new(kept.iter().map(|&r| m.codomain.shifts[r]).collect());
    kept
}

fn keep_columns(m: &mut GradedMatrix, kept: &[usize]) {
    let mut keep = vec![false; m.ncols()];
    for &k in kept {
        keep[k] = true;
    }
    m.retain_columns(&keep);
}

/// An isomorphic presentation with minimal generators and minimal relations.
pub fn trim(p: &Presentation) -> Result<Presentation> {
    trim_with(p, None, None).map(|(p, _)| p)
}

fn trim_with(
    p: &Presentation,
    dmax: Option<i32>,
    budget: Option<usize>,
) -> Result<(Presentation, bool)> {
    let mut rel = p.relations.clone();
    eliminate_units(&mut rel);
    let (mut syz, truncated) = syzygy_matrix(&rel, dmax, budget)?;
    let kept = eliminate_units(&mut syz);
    keep_columns(&mut rel, &kept);
    Ok((Presentation::new(rel), truncated))
}

/// Syzygies among the relations of `p`: minimal generators of `ker(p1)` as the columns
/// of a matrix into `F_1`, and a trimmed presentation of that kernel.
pub fn syzygy(p: &Presentation, dmax: Option<i32>) -> Result<(GradedMatrix, Presentation)> {
    let mut rel = p.relations.clone();
    eliminate_units(&mut rel);
    let (mut gens, _) = syzygy_matrix(&rel, dmax, None)?;
    let kept = eliminate_units(&mut gens);
    keep_columns(&mut rel, &kept);
    let (mut rels, _) = syzygy_matrix(&gens, dmax, None)?;
    let kept = eliminate_units(&mut rels);
    keep_columns(&mut gens, &kept);
    let (z, _) = trim_with(&Presentation::new(rels), dmax, None)?;
    Ok((gens, z))
}

/// A minimal graded free resolution `F_N -> ... -> F_1 -> F_0`, truncated to a window.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: Arc<QuotientRing>,
    /// `F_0` (minimal generators of the module)
    pub f0: FreeModule,
    /// `∂_1, ..., ∂_L` with `L ≤ hmax`; `∂_i : F_i -> F_{i-1}`, only nonzero `F_i` are kept
    pub differentials: Vec<GradedMatrix>,
    pub hmax: usize,
    pub dmax: Option<i32>,
    /// `F_{L+1} = 0` was established, so the resolution is complete and exact
    pub terminated: bool,
    /// some Gröbner computation was cut at `dmax`
    pub truncated: bool,
    pub minimal: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn free_module(&self, i: usize) -> FreeModule {
        if i == 0 {
            self.f0.clone()
        } else {
            self.differentials
                .get(i - 1)
                .map(|d| d.domain.clone())
                .unwrap_or_default()
        }
    }

    /// `∂_i ∘ ∂_{i+1} = 0` for every consecutive pair.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].compose(&w[1]).is_zero())
    }

    pub fn check_minimal(&self) -> bool {
        self.differentials
            .iter()
            .all(|d| d.entries_in_maximal_ideal())
    }

    /// Betti numbers are certified for `j ≤ dmax` (all `j` without a bound).
    pub fn betti(&self) -> Result<BettiTable> {
        if !self.minimal || !self.check_minimal() {
            return Err(Error::InvalidInput("resolution is not minimal".into()));
        }
        let mut t = BettiTable::new(self.hmax, self.dmax);
        for &j in &self.f0.shifts {
            t.add(0, j);
        }
        for (i, d) in self.differentials.iter().enumerate() {
            for &j in &d.domain.shifts {
                t.add(i + 1, j);
            }
        }
        t.terminated = self.terminated;
        Ok(t)
    }
}

/// Minimal free resolution of `coker(p)` up to homological degree `opts.hmax`.
pub fn resolve(p: &Presentation, opts: &ResolveOptions) -> Result<Resolution> {
    let ring = p.ring().clone();
    let mut current = p.relations.clone();
    eliminate_units(&mut current);
    let f0 = current.codomain.clone();
    let mut differentials = Vec::new();
    let mut truncated = false;
    let mut terminated = false;
    let mut i = 1;
    loop {
        if current.ncols() == 0 {
            terminated = !truncated;
            break;
        }
        if i > opts.hmax {
            break;
        }
        let (mut next, cut) = syzygy_matrix(&current, opts.dmax, opts.budget)?;
        truncated |= cut;
        let kept = eliminate_units(&mut next);
        keep_columns(&mut current, &kept);
        if current.ncols() == 0 {
            terminated = !truncated;
            break;
        }
        differentials.push(current);
        current = next;
        i += 1;
    }
    let res = Resolution {
        ring,
        f0,
        differentials,
        hmax: opts.hmax,
        dmax: opts.dmax,
        terminated,
        truncated,
        minimal: true,
    };
    debug_assert!(res.check_minimal());
    Ok(res)
}

/// Sparse graded Betti numbers `β_{i,j}` within a window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), u64>,
    pub hmax: usize,
    pub dmax: Option<i32>,
    /// the underlying resolution is known to stop at the last nonzero column
    pub terminated: bool,
}

/// One `β_{i,j}` entry in the JSON layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i32,
    pub beta: u64,
}

impl BettiTable {
    pub fn new(hmax: usize, dmax: Option<i32>) -> Self {
        BettiTable {
            entries: BTreeMap::new(),
            hmax,
            dmax,
            terminated: false,
        }
    }

    pub fn add(&mut self, i: usize, j: i32) {
        *self.entries.entry((i, j)).or_insert(0) += 1;
    }

    pub fn set(&mut self, i: usize, j: i32, beta: u64) {
        if beta == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), beta);
        }
    }

    pub fn get(&self, i: usize, j: i32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total Betti number `β_i`.
    pub fn beta(&self, i: usize) -> u64 {
        self.entries
            .range((i, i32::MIN)..=(i, i32::MAX))
            .map(|(_, b)| *b)
            .sum()
    }

    /// Largest shift in homological degree `i`, `None` when `β_i = 0`.
    pub fn max_shift(&self, i: usize) -> Option<i32> {
        self.entries
            .range((i, i32::MIN)..=(i, i32::MAX))
            .map(|((_, j), _)| *j)
            .next_back()
    }

    /// `t_i` with `t_i = 0` when `β_i = 0`.
    pub fn t(&self, i: usize) -> i32 {
        self.max_shift(i).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest `i` with `β_i ≠ 0`.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    /// Keeps the entries with `i ≤ hmax` and `j ≤ dmax`.
    pub fn restricted(&self, hmax: usize, dmax: Option<i32>) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|((i, j), _)| *i <= hmax && dmax.is_none_or(|d| *j <= d))
                .map(|(k, v)| (*k, *v))
                .collect(),
            hmax,
            dmax,
            terminated: false,
        }
    }

    /// `β_{i,j} ↦ β_{i,j+a}`.
    pub fn shifted(&self, a: i32) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .map(|((i, j), b)| ((*i, *j + a), *b))
                .collect(),
            ..self.clone()
        }
    }

    pub fn to_entries(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|((i, j), b)| BettiEntry {
                i: *i,
                j: *j,
                beta: *b,
            })
            .collect()
    }
}

impl fmt::Display for BettiTable {
    /// Rows are `j - i`, columns are `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "0");
        }
        let imax = self.length().unwrap_or(0);
        let rows: Vec<i32> = self.entries.keys().map(|(i, j)| j - *i as i32).collect();
        let (rmin, rmax) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
        let cell = |s: &str| format!("{s:>6}");
        let mut line = cell("");
        for i in 0..=imax {
            line.push_str(&cell(&i.to_string()));
        }
        writeln!(f, "{}", line.trim_end())?;
        let mut line = cell("total:");
        for i in 0..=imax {
            line.push_str(&cell(&self.beta(i).to_string()));
        }
        writeln!(f, "{}", line.trim_end())?;
        for r in rmin..=rmax {
            let mut line = cell(&format!("{r}:"));
            for i in 0..=imax {
                let b = self.get(i, r + i as i32);
                line.push_str(&cell(&if b == 0 {
                    "-".to_string()
                } else {
                    b.to_string()
                }));
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

/// Betti table of `coker(p)` within the window.
pub fn betti(p: &Presentation, opts: &ResolveOptions) -> Result<BettiTable> {
    resolve(p, opts)?.betti()
}

/// A short exact sequence `0 -> A -> B -> C -> 0` built from `B = F/U` and
/// `C = F/(U + E)`, with `A = (U + E)/U`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub a: Presentation,
    pub b: Presentation,
    pub c: Presentation,
}

/// Builds the sequence for `B = coker(u)` and extra relations `e` (same codomain).
pub fn short_exact_sequence(u: &GradedMatrix, e: &GradedMatrix) -> Result<ShortExactSequence> {
    if u.codomain != e.codomain {
        return Err(Error::InvalidInput(
            "relation matrices need a common codomain".into(),
        ));
    }
    let b = Presentation::new(u.clone());
    let mut both = u.clone();
    both.domain.shifts.extend(e.domain.shifts.iter().copied());
    both.columns.extend(e.columns.iter().cloned());
    let c = Presentation::new(both.clone());
    // A is generated by the images of the columns of e; its relations are the
    // e-coordinates of syzygies of [e | u]
    let mut eu = e.clone();
    eu.domain.shifts.extend(u.domain.shifts.iter().copied());
    eu.columns.extend(u.columns.iter().cloned());
    let (syz, _) = syzygy_matrix(&eu, None, None)?;
    let ne = e.ncols();
    let columns = syz
        .columns
        .iter()
        .map(|col| {
            Vector::from_entries(
                col.entries()
                    .iter()
                    .filter(|(k, _)| *k < ne)
                    .cloned()
                    .collect(),
            )
        })
        .collect();
    let arel = GradedMatrix::new(
        u.ring.clone(),
        syz.domain.clone(),
        e.domain.clone(),
        columns,
    )?;
    Ok(ShortExactSequence {
        a: Presentation::new(arel),
        b,
        c,
    })
}

/// Rebuilds `p` with entries given as dense rows of strings; a small test helper.
pub fn matrix_from_strings(
    ring: Arc<QuotientRing>,
    codomain: Vec<i32>,
    domain: Vec<i32>,
    rows: &[&[&str]],
) -> Result<GradedMatrix> {
    let s = ring.ring().clone();
    let ncols = domain.len();
    let mut cols: Vec<Vec<(usize, Polynomial)>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::InvalidInput(format!(
                "row {r} has {} entries",
                row.len()
            )));
        }
        for (c, e) in row.iter().enumerate() {
            cols[c].push((r, s.parse(e)?));
        }
    }
    GradedMatrix::new(
        ring,
        FreeModule::new(domain),
        FreeModule::new(codomain),
        cols.into_iter().map(Vector::from_entries).collect(),
    )
}
