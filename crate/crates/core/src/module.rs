//! Graded free modules, homogeneous matrices between them, and presentations.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{poly_to_terms, VTerm};
use crate::ideal::QuotientRing;
use crate::poly::Polynomial;

/// `⊕_k R(-d_k)`: the `k`-th basis element sits in degree `d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeModule {
    pub shifts: Vec<i32>,
}

impl FreeModule {
    pub fn new(shifts: Vec<i32>) -> Self {
        FreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_zero(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn max_shift(&self) -> Option<i32> {
        self.shifts.iter().copied().max()
    }
}

/// Sparse vector of a free module: `(row, entry)` pairs sorted by row, entries nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    entries: Vec<(usize, Polynomial)>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector::default()
    }

    pub fn from_entries(mut entries: Vec<(usize, Polynomial)>) -> Self {
        entries.retain(|(_, p)| !p.is_zero());
        entries.sort_by_key(|(r, _)| *r);
        Vector { entries }
    }

    /// Dense constructor; zero entries are dropped.
    pub fn from_dense(entries: Vec<Polynomial>) -> Self {
        Vector::from_entries(entries.into_iter().enumerate().collect())
    }

    pub fn entries(&self) -> &[(usize, Polynomial)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize) -> Option<&Polynomial> {
        self.entries
            .binary_search_by_key(&row, |(r, _)| *r)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    /// Homogeneous degree of this vector inside a free module with the given shifts.
    pub fn degree_in(&self, shifts: &[i32]) -> Option<i32> {
        let (r, p) = self.entries.first()?;
        Some(p.homogeneous_degree()? as i32 + shifts[*r])
    }

    pub(crate) fn to_terms(&self, offset: u32) -> Vec<VTerm> {
        self.entries
            .iter()
            .flat_map(|(r, p)| poly_to_terms(p, *r as u32 + offset))
            .collect()
    }

    /// Renumbers rows through `map` (`None` drops the row; such entries must be zero).
    pub(crate) fn remap_rows(&self, map: &[Option<usize>]) -> Vector {
        Vector {
            entries: self
                .entries
                .iter()
                .filter_map(|(r, p)| map[*r].map(|nr| (nr, p.clone())))
                .collect(),
        }
    }

    /// `self + f * other` with every entry reduced in `ring`.
    pub fn add_multiple(&self, ring: &QuotientRing, f: &Polynomial, other: &Vector) -> Vector {
        let s = ring.ring();
        let mut out: Vec<(usize, Polynomial)> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let ra = self.entries.get(i).map(|e| e.0);
            let rb = other.entries.get(j).map(|e| e.0);
            match (ra, rb) {
                (Some(a), Some(b)) if a == b => {
                    let v = ring.reduce(&s.add(&self.entries[i].1, &s.mul(f, &other.entries[j].1)));
                    out.push((a, v));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push(self.entries[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(self.entries[i].clone());
                    i += 1;
                }
                (_, Some(b)) => {
                    out.push((b, ring.mul(f, &other.entries[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Vector::from_entries(out)
    }
}

/// A homogeneous map `domain -> codomain`, stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub ring: Arc<QuotientRing>,
    pub domain: FreeModule,
    pub codomain: FreeModule,
    pub columns: Vec<Vector>,
}

impl GradedMatrix {
    /// Validates shapes and the homogeneity condition `deg e_rc = domain_c - codomain_r`,
    /// and reduces entries modulo the defining ideal.
    pub fn new(
        ring: Arc<QuotientRing>,
        domain: FreeModule,
        codomain: FreeModule,
        columns: Vec<Vector>,
    ) -> Result<Self> {
        if columns.len() != domain.rank() {
            return Err(Error::InvalidInput(format!(
                "{} columns for a domain of rank {}",
                columns.len(),
                domain.rank()
            )));
        }
        let mut reduced = Vec::with_capacity(columns.len());
        for (c, col) in columns.iter().enumerate() {
            let mut entries = Vec::new();
            for (r, p) in col.entries() {
                if *r >= codomain.rank() {
                    return Err(Error::InvalidInput(format!(
                        "row {r} outside a codomain of rank {}",
                        codomain.rank()
                    )));
                }
                ring.ring().check(p)?;
                let p = ring.reduce(p);
                if p.is_zero() {
                    continue;
                }
                let want = domain.shifts[c] - codomain.shifts[*r];
                if p.homogeneous_degree().map(|d| d as i32) != Some(want) {
                    return Err(Error::Inhomogeneous(format!(
                        "entry ({r},{c}) = {} should have degree {want}",
                        ring.ring().to_string(&p)
                    )));
                }
                entries.push((*r, p));
            }
            reduced.push(Vector::from_entries(entries));
        }
        Ok(GradedMatrix {
            ring,
            domain,
            codomain,
            columns: reduced,
        })
    }

    pub fn zero(ring: Arc<QuotientRing>, domain: FreeModule, codomain: FreeModule) -> Self {
        let columns = vec![Vector::zero(); domain.rank()];
        GradedMatrix {
            ring,
            domain,
            codomain,
            columns,
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> Polynomial {
        self.columns[c].get(r).cloned().unwrap_or_default()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nrows(&self) -> usize {
        self.codomain.rank()
    }

    /// Every entry lies in the irrelevant ideal (no nonzero constants).
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.columns.iter().all(|c| {
            c.entries()
                .iter()
                .all(|(_, p)| p.homogeneous_degree() != Some(0))
        })
    }

    /// `self ∘ other` (other: A -> domain(self)).
    pub fn compose(&self, other: &GradedMatrix) -> GradedMatrix {
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = Vector::zero();
                for (k, p) in col.entries() {
                    acc = acc.add_multiple(&self.ring, p, &self.columns[*k]);
                }
                acc
            })
            .collect();
        GradedMatrix {
            ring: self.ring.clone(),
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Twist both modules by `a`: `R(-d) -> R(-d-a)`.
    pub fn shifted(&self, a: i32) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            domain: FreeModule::new(self.domain.shifts.iter().map(|s| s + a).collect()),
            codomain: FreeModule::new(self.codomain.shifts.iter().map(|s| s + a).collect()),
            columns: self.columns.clone(),
        }
    }

    pub(crate) fn retain_columns(&mut self, keep: &[bool]) {
        let mut cols = Vec::new();
        let mut shifts = Vec::new();
        for (c, col) in self.columns.drain(..).enumerate() {
            if keep[c] {
                cols.push(col);
                shifts.push(self.domain.shifts[c]);
            }
        }
        self.columns = cols;
        self.domain = FreeModule::new(shifts);
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.ring.ring();
        for r in 0..self.nrows() {
            let row: Vec<String> = (0..self.ncols())
                .map(|c| s.to_string(&self.entry(r, c)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `M = coker(relations: F_1 -> F_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub relations: GradedMatrix,
}

impl Presentation {
    pub fn new(relations: GradedMatrix) -> Self {
        Presentation { relations }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.relations.ring
    }

    pub fn generators(&self) -> &FreeModule {
        &self.relations.codomain
    }

    /// The free module `⊕ R(-d)`.
    pub fn free(ring: Arc<QuotientRing>, shifts: Vec<i32>) -> Self {
        Presentation {
            relations: GradedMatrix::zero(ring, FreeModule::default(), FreeModule::new(shifts)),
        }
    }

    /// `R/(gens)` with the generator in degree 0.
    pub fn cyclic(ring: Arc<QuotientRing>, gens: &[Polynomial]) -> Result<Self> {
        let mut shifts = Vec::new();
        let mut columns = Vec::new();
        for g in gens {
            let g = ring.reduce(g);
            if g.is_zero() {
                continue;
            }
            let d = g
                .homogeneous_degree()
                .ok_or_else(|| Error::Inhomogeneous(ring.ring().to_string(&g)))?;
            shifts.push(d as i32);
            columns.push(Vector::from_entries(vec![(0, g)]));
        }
        let m = GradedMatrix::new(
            ring,
            FreeModule::new(shifts),
            FreeModule::new(vec![0]),
            columns,
        )?;
        Ok(Presentation::new(m))
    }

    /// The residue field `K = R/m`.
    pub fn residue_field(ring: Arc<QuotientRing>) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.ring().var(i)).collect();
        Presentation::cyclic(ring, &vars).expect("variables are homogeneous")
    }

    /// `M(-a)`: all generators move up by `a`.
    pub fn shifted(&self, a: i32) -> Self {
        Presentation {
            relations: self.relations.shifted(a),
        }
    }

    /// The same module viewed over `R` through a surjection `R -> S = R/J`
    /// (`self` lives over `S`; both rings share the ambient polynomial ring).
    pub fn restrict_scalars(&self, r: Arc<QuotientRing>) -> Result<Self> {
        let s = self.ring();
        if s.ambient != r.ambient {
            return Err(Error::RingMismatch(
                "restriction needs a common ambient ring".into(),
            ));
        }
        let gens = self.generators().clone();
        let mut shifts = self.relations.domain.shifts.clone();
        let mut columns: Vec<Vector> = self
            .relations
            .columns
            .iter()
            .map(|c| {
                Vector::from_entries(c.entries().iter().map(|(k, p)| (*k, r.reduce(p))).collect())
            })
            .collect();
        for g in &s.min_gens {
            let g = r.reduce(g);
            if g.is_zero() {
                continue;
            }
            let d = g.homogeneous_degree().unwrap() as i32;
            for (k, &a) in gens.shifts.iter().enumerate() {
                shifts.push(a + d);
                columns.push(Vector::from_entries(vec![(k, g.clone())]));
            }
        }
        let m = GradedMatrix::new(r, FreeModule::new(shifts), gens, columns)?;
        Ok(Presentation::new(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn homogeneity_is_checked() {
        let r = Arc::new(QuotientRing::polynomial(PolyRing::with_vars(&["x", "y"])));
        let s = r.ring().clone();
        let ok = GradedMatrix::new(
            r.clone(),
            FreeModule::new(vec![1, 2]),
            FreeModule::new(vec![0]),
            vec![
                Vector::from_dense(vec![s.parse("x").unwrap()]),
                Vector::from_dense(vec![s.parse("y^2").unwrap()]),
            ],
        );
        assert!(ok.is_ok());
        let bad = GradedMatrix::new(
            r,
            FreeModule::new(vec![1]),
            FreeModule::new(vec![0]),
            vec![Vector::from_dense(vec![s.parse("y^2").unwrap()])],
        );
        assert!(matches!(bad, Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn entries_reduced_modulo_ideal() {
        let q = QuotientRing::parse(PolyRing::with_vars(&["x", "y"]), &["x^2"]).unwrap();
        let r = Arc::new(q);
        let s = r.ring().clone();
        let m = GradedMatrix::new(
            r,
            FreeModule::new(vec![2]),
            FreeModule::new(vec![0]),
            vec![Vector::from_dense(vec![s.parse("x^2 + x*y").unwrap()])],
        )
        .unwrap();
        assert_eq!(m.entry(0, 0), s.parse("x*y").unwrap());
    }
}
