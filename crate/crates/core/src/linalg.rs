//! Dense linear algebra over `F_p`: row echelon forms, rank and kernels.

use crate::field::PrimeField;

/// Row-major dense matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        DenseMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, fp: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(r) = (prow..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(r, prow);
            let inv = fp.inv(self.get(prow, c));
            for k in c..self.cols {
                let v = fp.mul(self.get(prow, k), inv);
                self.set(prow, k, v);
            }
            for r2 in 0..self.rows {
                if r2 == prow {
                    continue;
                }
                let f = self.get(r2, c);
                if f == 0 {
                    continue;
                }
                let nf = fp.neg(f);
                for k in c..self.cols {
                    let v = self.get(prow, k);
                    if v != 0 {
                        let cur = self.get(r2, k);
                        self.set(r2, k, fp.add(cur, fp.mul(nf, v)));
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    pub fn rank(&self, fp: &PrimeField) -> usize {
        self.clone().rref(fp).len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn kernel(&self, fp: &PrimeField) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(fp);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = fp.neg(m.get(i, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// Incrementally maintained echelon basis of a subspace of `F_p^n`.
///
/// Rows are kept fully reduced against each other, so membership and
/// reduction are single passes.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    dim: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonSpace {
    pub fn new(dim: usize) -> Self {
        EchelonSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// Reduces `v` against the basis; the result has zeros in every pivot column.
    pub fn reduce(&self, fp: &PrimeField, v: &mut [u32]) {
        for (p, row) in &self.rows {
            let f = v[*p];
            if f != 0 {
                let nf = fp.neg(f);
                for (k, &x) in row.iter().enumerate() {
                    if x != 0 {
                        v[k] = fp.add(v[k], fp.mul(nf, x));
                    }
                }
            }
        }
    }

    pub fn contains(&self, fp: &PrimeField, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(fp, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns `true` if the rank grew.
    pub fn insert(&mut self, fp: &PrimeField, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(fp, &mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = fp.inv(w[p]);
        for x in w.iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[p];
            if f != 0 {
                let nf = fp.neg(f);
                for (k, &x) in w.iter().enumerate() {
                    if x != 0 {
                        row[k] = fp.add(row[k], fp.mul(nf, x));
                    }
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}
