//! Degreewise linear-algebra oracles.
//!
//! Everything here works with explicit finite-dimensional graded pieces over
//! `F_p` and never calls the Gröbner engine; it exists to cross-check it.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{DenseMatrix, EchelonSpace};
use crate::module::Presentation;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{PolyRing, Polynomial};
use crate::resolution::BettiTable;

/// The graded pieces `S_e` and `(gens)_e` for `e ≤ top`, with a chosen complement basis
/// of `R_e = S_e / (gens)_e`.
pub struct GradedPieces {
    fp: PrimeField,
    nvars: usize,
    /// monomials of `S_e`, in order descending for the ring's monomial order
    monos: Vec<Vec<Monomial>>,
    mono_index: Vec<HashMap<Monomial, usize>>,
    /// echelon basis of `(gens)_e` inside `S_e`
    ideal: Vec<EchelonSpace>,
    /// column indices of `S_e` forming the basis of `R_e`
    basis: Vec<Vec<usize>>,
}

impl GradedPieces {
    pub fn new(ring: &PolyRing, gens: &[Polynomial], top: usize) -> Self {
        let fp = ring.field;
        let n = ring.nvars();
        let mut monos = Vec::new();
        let mut mono_index = Vec::new();
        let mut ideal = Vec::new();
        let mut basis = Vec::new();
        for e in 0..=top {
            let mut ms = monomials_of_degree(n, e as u32);
            ms.sort_by(|a, b| ring.order.cmp(b, a));
            let idx: HashMap<Monomial, usize> = ms
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let mut space = EchelonSpace::new(ms.len());
            for g in gens {
                let Some(dg) = g.homogeneous_degree() else {
                    continue;
                };
                if dg as usize > e {
                    continue;
                }
                for m in monomials_of_degree(n, e as u32 - dg) {
                    let mut v = vec![0u32; ms.len()];
                    for (c, t) in g.terms() {
                        v[idx[&t.mul(&m)]] = *c;
                    }
                    space.insert(&fp, &v);
                }
            }
            let mut is_pivot = vec![false; ms.len()];
            for p in space.pivots() {
                is_pivot[p] = true;
            }
            let b: Vec<usize> = (0..ms.len()).filter(|&c| !is_pivot[c]).collect();
            monos.push(ms);
            mono_index.push(idx);
            ideal.push(space);
            basis.push(b);
        }
        GradedPieces {
            fp,
            nvars: n,
            monos,
            mono_index,
            ideal,
            basis,
        }
    }

    pub fn top(&self) -> usize {
        self.monos.len() - 1
    }

    /// `dim_K R_e` (zero for negative `e`).
    pub fn dim(&self, e: i64) -> usize {
        if e < 0 {
            0
        } else {
            self.basis[e as usize].len()
        }
    }

    /// Coordinates in `R_e` of a homogeneous polynomial of degree `e`.
    pub fn coords(&self, e: usize, f: &Polynomial) -> Vec<u32> {
        let mut v = vec![0u32; self.monos[e].len()];
        for (c, m) in f.terms() {
            let i = self.mono_index[e][m];
            v[i] = self.fp.add(v[i], *c);
        }
        self.project(e, v)
    }

    fn mono_coords(&self, e: usize, m: &Monomial) -> Vec<u32> {
        let mut v = vec![0u32; self.monos[e].len()];
        v[self.mono_index[e][m]] = 1;
        self.project(e, v)
    }

    fn project(&self, e: usize, mut v: Vec<u32>) -> Vec<u32> {
        self.ideal[e].reduce(&self.fp, &mut v);
        self.basis[e].iter().map(|&c| v[c]).collect()
    }

    /// `f ∈ (gens)`, decided in degree `deg f`.
    pub fn contains(&self, f: &Polynomial) -> bool {
        match f.homogeneous_degree() {
            None => f.is_zero(),
            Some(e) => {
                let e = e as usize;
                let mut v = vec![0u32; self.monos[e].len()];
                for (c, m) in f.terms() {
                    v[self.mono_index[e][m]] = *c;
                }
                self.ideal[e].contains(&self.fp, &v)
            }
        }
    }

    fn basis_monomial(&self, e: usize, i: usize) -> &Monomial {
        &self.monos[e][self.basis[e][i]]
    }
}

/// Layout of `(⊕ R(-a_k))_d` as a coordinate space.
struct FreePiece<'a> {
    pieces: &'a GradedPieces,
    shifts: Vec<i32>,
}

impl FreePiece<'_> {
    fn blocks(&self, d: i32) -> Vec<(usize, usize, usize)> {
        // (k, offset, size)
        let mut out = Vec::new();
        let mut off = 0;
        for (k, &a) in self.shifts.iter().enumerate() {
            let e = (d - a) as i64;
            let size = if e > self.pieces.top() as i64 {
                0
            } else {
                self.pieces.dim(e)
            };
            out.push((k, off, size));
            off += size;
        }
        out
    }

    fn dim(&self, d: i32) -> usize {
        self.blocks(d).iter().map(|b| b.2).sum()
    }

    /// Coordinates of `Σ_k f_k e_k` in degree `d`.
    fn vector(&self, d: i32, entries: &[(usize, Polynomial)]) -> Vec<u32> {
        let blocks = self.blocks(d);
        let mut v = vec![0u32; self.dim(d)];
        for (k, f) in entries {
            if f.is_zero() {
                continue;
            }
            let (_, off, size) = blocks[*k];
            if size == 0 {
                continue;
            }
            let e = (d - self.shifts[*k]) as usize;
            let c = self.pieces.coords(e, f);
            for (i, x) in c.into_iter().enumerate() {
                v[off + i] = self.pieces.fp.add(v[off + i], x);
            }
        }
        v
    }

    /// `x_var · v` for `v` in degree `d`.
    fn mul_var(&self, d: i32, var: usize, v: &[u32]) -> Vec<u32> {
        let fp = &self.pieces.fp;
        let src = self.blocks(d);
        let dst = self.blocks(d + 1);
        let mut out = vec![0u32; self.dim(d + 1)];
        let x = Monomial::var(self.pieces.nvars, var);
        for (k, off, size) in src {
            if size == 0 || dst[k].2 == 0 {
                continue;
            }
            let e = (d - self.shifts[k]) as usize;
            for i in 0..size {
                let c = v[off + i];
                if c == 0 {
                    continue;
                }
                let m = self.pieces.basis_monomial(e, i).mul(&x);
                let img = self.pieces.mono_coords(e + 1, &m);
                for (t, y) in img.into_iter().enumerate() {
                    if y != 0 {
                        let o = dst[k].1 + t;
                        out[o] = fp.add(out[o], fp.mul(c, y));
                    }
                }
            }
        }
        out
    }

    /// Every basis element of degree `d` as `(block, monomial)`.
    fn basis_elements(&self, d: i32) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (k, _, size) in self.blocks(d) {
            let e = (d - self.shifts[k]) as usize;
            for i in 0..size {
                out.push((k, self.pieces.basis_monomial(e, i).clone()));
            }
        }
        out
    }
}

/// A homogeneous element of a free module with its multiples by monomials, memoized.
struct Multiples {
    degree: i32,
    memo: HashMap<Monomial, Vec<u32>>,
}

impl Multiples {
    fn new(degree: i32, v: Vec<u32>, nvars: usize) -> Self {
        let mut memo = HashMap::new();
        memo.insert(Monomial::one(nvars), v);
        Multiples { degree, memo }
    }

    fn times(&mut self, f: &FreePiece<'_>, m: &Monomial) -> Vec<u32> {
        if let Some(v) = self.memo.get(m) {
            return v.clone();
        }
        let var = m
            .exps()
            .iter()
            .position(|&e| e > 0)
            .expect("non-unit monomial");
        let x = Monomial::var(m.nvars(), var);
        let rest = x.quotient_of(m).expect("variable divides");
        let base = self.times(f, &rest);
        let v = f.mul_var(self.degree + rest.degree() as i32, var, &base);
        self.memo.insert(m.clone(), v.clone());
        v
    }
}

/// Graded Betti numbers `β_{i,j}` of `coker(p)` for `i ≤ hmax`, `j ≤ dmax`.
///
/// Builds, degree by degree, the successive kernels `N_i ⊆ F_{i-1}` and picks minimal
/// generators of each as a complement of `(m N_i)_j` in `(N_i)_j`.
pub fn oracle_betti(p: &Presentation, hmax: usize, dmax: Option<i32>) -> Result<BettiTable> {
    let dmax = dmax.ok_or_else(|| Error::InvalidInput("the oracle needs a degree bound".into()))?;
    let ring = p.ring();
    let s = ring.ring();
    let fp = s.field;
    let n = s.nvars();
    let rel = &p.relations;
    let mut table = BettiTable::new(hmax, Some(dmax));
    let Some(dmin) = rel.codomain.shifts.iter().copied().min() else {
        return Ok(table);
    };
    if dmax < dmin {
        return Ok(table);
    }
    let top = (dmax - dmin) as usize;
    let pieces = GradedPieces::new(s, &ring.min_gens, top);

    // M = F'/U with F' the given generators and U the image of the relations
    let fprime = FreePiece {
        pieces: &pieces,
        shifts: rel.codomain.shifts.clone(),
    };
    let mut u_spaces: Vec<EchelonSpace> = Vec::new();
    for d in dmin..=dmax {
        let mut space = EchelonSpace::new(fprime.dim(d));
        for (c, col) in rel.columns.iter().enumerate() {
            let b = rel.domain.shifts[c];
            if b > d {
                continue;
            }
            for m in monomials_of_degree(n, (d - b) as u32) {
                let entries: Vec<(usize, Polynomial)> = col
                    .entries()
                    .iter()
                    .map(|(r, f)| (*r, s.mul_term(f, 1, &m)))
                    .collect();
                space.insert(&fp, &fprime.vector(d, &entries));
            }
        }
        u_spaces.push(space);
    }

    // minimal generators of M
    let mut gens: Vec<Multiples> = Vec::new();
    for d in dmin..=dmax {
        let di = (d - dmin) as usize;
        let mut w = u_spaces[di].clone();
        if d > dmin {
            let prev = fprime.dim(d - 1);
            for t in 0..prev {
                let mut e = vec![0u32; prev];
                e[t] = 1;
                for v in 0..n {
                    w.insert(&fp, &fprime.mul_var(d - 1, v, &e));
                }
            }
        }
        let dim = fprime.dim(d);
        for t in 0..dim {
            let mut e = vec![0u32; dim];
            e[t] = 1;
            if w.insert(&fp, &e) {
                table.add(0, d);
                gens.push(Multiples::new(d, e, n));
            }
        }
    }

    let mut target = fprime;
    let mut modulo = Some(u_spaces);
    for i in 1..=hmax {
        if gens.is_empty() {
            break;
        }
        let source = FreePiece {
            pieces: &pieces,
            shifts: gens.iter().map(|g| g.degree).collect(),
        };
        // kernel of source -> target (mod U for the first step), degree by degree
        let mut kernels: Vec<Vec<Vec<u32>>> = Vec::new();
        for d in dmin..=dmax {
            let elems = source.basis_elements(d);
            let rows = target.dim(d);
            let mut m = DenseMatrix::zeros(rows, elems.len());
            for (col, (k, mono)) in elems.iter().enumerate() {
                let mut img = gens[*k].times(&target, mono);
                if let Some(u) = &modulo {
                    u[(d - dmin) as usize].reduce(&fp, &mut img);
                }
                for (r, x) in img.into_iter().enumerate() {
                    m.set(r, col, x);
                }
            }
            kernels.push(m.kernel(&fp));
        }
        // minimal generators of the kernel
        let mut next: Vec<Multiples> = Vec::new();
        for d in dmin..=dmax {
            let di = (d - dmin) as usize;
            let dim = source.dim(d);
            let mut w = EchelonSpace::new(dim);
            if d > dmin {
                for k in &kernels[di - 1] {
                    for v in 0..n {
                        w.insert(&fp, &source.mul_var(d - 1, v, k));
                    }
                }
            }
            for k in &kernels[di] {
                if w.insert(&fp, k) {
                    table.add(i, d);
                    next.push(Multiples::new(d, k.clone(), n));
                }
            }
        }
        gens = next;
        target = source;
        modulo = None;
    }
    Ok(table)
}

/// `dim_K M_d` for `d ≤ dmax`, as `(d, dim)` pairs starting at the lowest generator degree.
pub fn oracle_hilbert(p: &Presentation, dmin: i32, dmax: i32) -> Vec<usize> {
    let ring = p.ring();
    let s = ring.ring();
    let fp = s.field;
    let n = s.nvars();
    let rel = &p.relations;
    let low = rel
        .codomain
        .shifts
        .iter()
        .copied()
        .min()
        .unwrap_or(dmin)
        .min(dmin);
    if dmax < low {
        return vec![0; (dmax - dmin + 1).max(0) as usize];
    }
    let pieces = GradedPieces::new(s, &ring.min_gens, (dmax - low) as usize);
    let f = FreePiece {
        pieces: &pieces,
        shifts: rel.codomain.shifts.clone(),
    };
    (dmin..=dmax)
        .map(|d| {
            if d < low {
                return 0;
            }
            let mut space = EchelonSpace::new(f.dim(d));
            for (c, col) in rel.columns.iter().enumerate() {
                let b = rel.domain.shifts[c];
                if b > d {
                    continue;
                }
                for m in monomials_of_degree(n, (d - b) as u32) {
                    let entries: Vec<(usize, Polynomial)> = col
                        .entries()
                        .iter()
                        .map(|(r, g)| (*r, s.mul_term(g, 1, &m)))
                        .collect();
                    space.insert(&fp, &f.vector(d, &entries));
                }
            }
            f.dim(d) - space.rank()
        })
        .collect()
}

/// `f ∈ (gens)` in the polynomial ring, by linear algebra in degree `deg f`.
pub fn oracle_member(ring: &PolyRing, gens: &[Polynomial], f: &Polynomial) -> bool {
    match f.homogeneous_degree() {
        None => f.is_zero(),
        Some(e) => GradedPieces::new(ring, gens, e as usize).contains(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientRing;
    use std::sync::Arc;

    #[test]
    fn koszul_numbers_from_linear_algebra() {
        let r = Arc::new(QuotientRing::polynomial(PolyRing::with_vars(&["x", "y"])));
        let b = oracle_betti(&Presentation::residue_field(r), 3, Some(4)).unwrap();
        assert_eq!(b.get(0, 0), 1);
        assert_eq!(b.get(1, 1), 2);
        assert_eq!(b.get(2, 2), 1);
        assert_eq!(b.beta(3), 0);
    }

    #[test]
    fn membership_and_dimensions() {
        let s = PolyRing::with_vars(&["x", "y", "z"]);
        let g: Vec<Polynomial> = ["x^2 - y*z", "x*y - z^2"]
            .iter()
            .map(|t| s.parse(t).unwrap())
            .collect();
        assert!(oracle_member(&s, &g, &s.parse("x*z^2 - y^2*z").unwrap()));
        assert!(!oracle_member(&s, &g, &s.parse("x*z^2").unwrap()));
        let q = Arc::new(
            QuotientRing::parse(PolyRing::with_vars(&["x", "y"]), &["x^2", "x*y", "y^4"]).unwrap(),
        );
        let h = oracle_hilbert(&Presentation::free(q, vec![0]), 0, 5);
        assert_eq!(h, vec![1, 2, 1, 1, 0, 0]);
    }

    #[test]
    fn missing_bound_is_an_error() {
        let r = Arc::new(QuotientRing::polynomial(PolyRing::with_vars(&["x"])));
        assert!(oracle_betti(&Presentation::residue_field(r), 2, None).is_err());
    }
}
