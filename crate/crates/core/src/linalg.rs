//! Dense exact linear algebra over F_p.
//!
//! Matrices at the scale this crate needs (a few thousand rows) are handled
//! by straightforward Gaussian elimination. Everything is deterministic:
//! pivot choice is always the first usable column, so kernels, solutions and
//! projections are canonical for a given input.

use crate::fpoly::PrimeField;

/// Row-major dense matrix over F_p.
#[derive(Debug, Clone)]
pub struct MatFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatFp {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatFp { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        MatFp { field, rows: nrows, cols: ncols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    fn row_scale(&mut self, r: usize, s: u64) {
        let f = self.field;
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, f.mul(v, s));
        }
    }

    /// row[dst] -= s * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, s: u64) {
        if s == 0 {
            return;
        }
        let f = self.field;
        for c in 0..self.cols {
            let v = f.sub(self.get(dst, c), f.mul(self.get(src, c), s));
            self.set(dst, c, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let (va, vb) = (self.get(a, c), self.get(b, c));
            self.set(a, c, vb);
            self.set(b, c, va);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = f.inv(self.get(row, col));
            self.row_scale(row, inv);
            for r in 0..self.rows {
                if r != row {
                    let s = self.get(r, col);
                    self.row_axpy(r, row, s);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {v : A v = 0}. Vectors come from the rref
    /// free columns, so each has a single 1 in its free coordinate; the
    /// basis is echelon-sparse.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[free] = 1;
            for (&pc, r) in pivots.iter().zip(0..) {
                vec[pc] = f.neg(m.get(r, free));
            }
            basis.push(vec);
        }
        basis
    }
}

/// Outcome of feeding one row into an [`IncrementalSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOutcome {
    /// Linear combination of earlier rows with a consistent right-hand side.
    Redundant,
    /// Added a pivot: rank grew by one.
    NewPivot,
    /// Contradicts earlier rows: 0 = nonzero.
    Inconsistent,
}

/// Online Gaussian elimination for affine systems A x = b over F_p, fed one
/// equation at a time. Tracks rank growth and consistency as rows arrive,
/// and can produce the canonical particular solution (free variables 0).
#[derive(Debug, Clone)]
pub struct IncrementalSystem {
    field: PrimeField,
    ncols: usize,
    /// reduced rows, each paired with its rhs; row i has leading 1 in
    /// `pivots[i]` and zeros in all other pivot columns
    rows: Vec<(Vec<u64>, u64)>,
    pivots: Vec<usize>,
    inconsistent: bool,
}

impl IncrementalSystem {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        IncrementalSystem { field, ncols, rows: Vec::new(), pivots: Vec::new(), inconsistent: false }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn add_row(&mut self, mut row: Vec<u64>, mut rhs: u64) -> RowOutcome {
        assert_eq!(row.len(), self.ncols, "row has wrong arity");
        let f = self.field;
        for v in row.iter_mut() {
            *v = f.reduce(*v);
        }
        rhs = f.reduce(rhs);
        // eliminate against existing pivots
        for (i, &pc) in self.pivots.iter().enumerate() {
            let s = row[pc];
            if s != 0 {
                let (prow, prhs) = &self.rows[i];
                for c in 0..self.ncols {
                    row[c] = f.sub(row[c], f.mul(prow[c], s));
                }
                rhs = f.sub(rhs, f.mul(*prhs, s));
            }
        }
        let Some(lead) = row.iter().position(|&v| v != 0) else {
            return if rhs == 0 {
                RowOutcome::Redundant
            } else {
                self.inconsistent = true;
                RowOutcome::Inconsistent
            };
        };
        // normalize and back-substitute into earlier rows
        let inv = f.inv(row[lead]);
        for c in 0..self.ncols {
            row[c] = f.mul(row[c], inv);
        }
        rhs = f.mul(rhs, inv);
        for i in 0..self.rows.len() {
            let s = self.rows[i].0[lead];
            if s != 0 {
                for c in 0..self.ncols {
                    let v = f.sub(self.rows[i].0[c], f.mul(row[c], s));
                    self.rows[i].0[c] = v;
                }
                self.rows[i].1 = f.sub(self.rows[i].1, f.mul(rhs, s));
            }
        }
        self.rows.push((row, rhs));
        self.pivots.push(lead);
        RowOutcome::NewPivot
    }

    /// Canonical particular solution with all free variables set to zero.
    /// `None` if the accumulated system is inconsistent.
    pub fn particular_solution(&self) -> Option<Vec<u64>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![0u64; self.ncols];
        for ((row, rhs), &pc) in self.rows.iter().zip(self.pivots.iter()) {
            // rows are fully reduced against each other, so the pivot value
            // is the rhs minus free-variable contributions; frees are zero
            debug_assert_eq!(row[pc], 1);
            x[pc] = *rhs;
        }
        Some(x)
    }

    /// Evaluates one equation against a candidate solution.
    pub fn check_row(&self, row: &[u64], rhs: u64, x: &[u64]) -> bool {
        let f = self.field;
        let mut acc = 0;
        for (a, b) in row.iter().zip(x.iter()) {
            acc = f.add(acc, f.mul(f.reduce(*a), f.reduce(*b)));
        }
        acc == f.reduce(rhs)
    }
}

/// Basis for {c : sum_j c_j col_j lies in span(aux)} given the columns of
/// interest and auxiliary spanning columns. Returns echelon-reduced vectors
/// in the c-coordinates only.
pub fn kernel_modulo_span(
    field: PrimeField,
    cols: &[Vec<u64>],
    aux: &[Vec<u64>],
    dim: usize,
) -> Vec<Vec<u64>> {
    let n = cols.len();
    let k = aux.len();
    let mut mat = MatFp::zero(field, dim, n + k);
    for (j, col) in cols.iter().enumerate() {
        assert_eq!(col.len(), dim, "column has wrong dimension");
        for (i, &v) in col.iter().enumerate() {
            mat.set(i, j, v);
        }
    }
    for (j, col) in aux.iter().enumerate() {
        assert_eq!(col.len(), dim, "auxiliary column has wrong dimension");
        for (i, &v) in col.iter().enumerate() {
            mat.set(i, n + j, v);
        }
    }
    let raw = mat.kernel_basis();
    // project to the first n coordinates and re-echelonize to drop
    // duplicates coming from aux-only kernel vectors
    let mut sys = IncrementalSystem::new(field, n);
    let mut out = Vec::new();
    for v in raw {
        let head: Vec<u64> = v[..n].to_vec();
        if head.iter().all(|&x| x == 0) {
            continue;
        }
        if sys.add_row(head.clone(), 0) == RowOutcome::NewPivot {
            out.push(head);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let f = fp(7);
        let mut m = MatFp::from_rows(
            f,
            vec![vec![1, 2, 3], vec![2, 4, 1], vec![3, 6, 4]],
        );
        // row3 = row1 + row2 and row2 is not proportional to row1 mod 7
        assert_eq!(m.rank(), 2);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 2]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = fp(7);
        let m = MatFp::from_rows(
            f,
            vec![vec![1, 2, 3, 4], vec![0, 1, 1, 1]],
        );
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in 0..m.rows() {
                let mut acc = 0;
                for c in 0..m.cols() {
                    acc = f.add(acc, f.mul(m.get(r, c), v[c]));
                }
                assert_eq!(acc, 0);
            }
        }
    }

    #[test]
    fn incremental_solving_matches_direct() {
        let f = fp(3);
        let mut sys = IncrementalSystem::new(f, 3);
        assert_eq!(sys.add_row(vec![1, 1, 0], 2), RowOutcome::NewPivot);
        assert_eq!(sys.add_row(vec![0, 1, 1], 1), RowOutcome::NewPivot);
        assert_eq!(sys.add_row(vec![1, 2, 1], 0), RowOutcome::Redundant);
        let x = sys.particular_solution().unwrap();
        assert!(sys.check_row(&[1, 1, 0], 2, &x));
        assert!(sys.check_row(&[0, 1, 1], 1, &x));
        // now contradict
        assert_eq!(sys.add_row(vec![1, 2, 1], 1), RowOutcome::Inconsistent);
        assert!(sys.particular_solution().is_none());
    }

    #[test]
    fn kernel_modulo_span_filters_aux_directions() {
        let f = fp(2);
        // cols: e1, e2, e1+e2 in F_2^2; aux: e2
        let cols = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let aux = vec![vec![0, 1]];
        let ker = kernel_modulo_span(f, &cols, &aux, 2);
        // combinations landing in span(e2): c2 arbitrary via aux, relations:
        // c1 + c3 = 0 forced, c2 + c3 free via aux -> rank 2 solution space
        assert_eq!(ker.len(), 2);
        for c in &ker {
            let first = (c[0] + c[2]) % 2;
            assert_eq!(first, 0);
        }
    }
}
