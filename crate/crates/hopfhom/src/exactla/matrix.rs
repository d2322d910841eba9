use std::fmt;

use super::scalar::{Field, Q};
use super::LinAlgError;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<F: Field = Q> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, F::one())] }
    }

    pub fn single(i: usize, v: F) -> Self {
        if v.is_zero() {
            Self::new()
        } else {
            SparseVec { entries: vec![(i, v)] }
        }
    }

    /// Sums duplicates and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, F)>) -> Self {
        let mut v: Vec<(usize, F)> = pairs.into_iter().collect();
        v.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, F)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match out.last_mut() {
                Some((j, y)) if *j == i => *y = y.fadd(&x),
                _ => out.push((i, x)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        SparseVec { entries: out }
    }

    /// Caller guarantees sorted distinct indices and nonzero values.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, F)>) -> Self {
        SparseVec { entries }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v.iter().cloned().enumerate().filter(|e| !e.1.is_zero()).collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<F> {
        let mut out = vec![F::zero(); n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.fmul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.fneg())).collect(),
        }
    }

    /// self + c * other
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, b[j].1.fmul(c)));
                j += 1;
            } else {
                let v = a[i].1.fadd(&b[j].1.fmul(c));
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&F::one().fneg(), other)
    }

    pub fn dot(&self, other: &Self) -> F {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = F::zero();
        while i < a.len() && j < b.len() {
            if a[i].0 < b[j].0 {
                i += 1;
            } else if b[j].0 < a[i].0 {
                j += 1;
            } else {
                acc = acc.fadd(&a[i].1.fmul(&b[j].1));
                i += 1;
                j += 1;
            }
        }
        acc
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }
}

/// Accumulates a sparse vector with a dense scratch buffer.
pub struct Accumulator<F: Field = Q> {
    vals: Vec<F>,
    touched: Vec<usize>,
    flag: Vec<bool>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(n: usize) -> Self {
        Accumulator { vals: vec![F::zero(); n], touched: Vec::new(), flag: vec![false; n] }
    }

    pub fn add(&mut self, i: usize, v: &F) {
        if !self.flag[i] {
            self.flag[i] = true;
            self.touched.push(i);
            self.vals[i] = v.clone();
        } else {
            self.vals[i] = self.vals[i].fadd(v);
        }
    }

    pub fn add_scaled_vec(&mut self, c: &F, v: &SparseVec<F>) {
        for (i, x) in v.iter() {
            self.add(i, &x.fmul(c));
        }
    }

    pub fn take(&mut self) -> SparseVec<F> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.flag[i] = false;
            let v = std::mem::replace(&mut self.vals[i], F::zero());
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted_unchecked(out)
    }
}

/// Column-compressed sparse matrix.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix<F: Field = Q> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F>>,
}

/// First differing entry between two matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryWitness<F: Field = Q> {
    pub row: usize,
    pub col: usize,
    pub left: F,
    pub right: F,
}

impl<F: Field> fmt::Display for EntryWitness<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry ({}, {}): {} vs {}", self.row, self.col, self.left.render(), self.right.render())
    }
}

impl<F: Field> fmt::Debug for SparseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} nnz={}", self.rows, self.cols, self.nnz())?;
        if self.rows <= 8 && self.cols <= 8 {
            for r in self.to_dense() {
                write!(f, "\n  {:?}", r)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec<F>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().map_or(true, |m| m < rows)));
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    /// Builds from triplets; rejects duplicates and out-of-range indices, drops zeros.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Result<Self, LinAlgError> {
        let mut per_col: Vec<Vec<(usize, F)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinAlgError::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            per_col[c].push((r, v));
        }
        let mut columns = Vec::with_capacity(cols);
        for (c, mut col) in per_col.into_iter().enumerate() {
            col.sort_by_key(|e| e.0);
            if col.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(LinAlgError::DimensionMismatch(format!("duplicate entry in column {c}")));
            }
            col.retain(|e| !e.1.is_zero());
            columns.push(SparseVec::from_sorted_unchecked(col));
        }
        Ok(SparseMatrix { rows, cols, columns })
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let columns = (0..nc)
            .map(|c| SparseVec::from_dense(&rows.iter().map(|r| r[c].clone()).collect::<Vec<_>>()))
            .collect();
        SparseMatrix { rows: nr, cols: nc, columns }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize) -> SparseVec<F>) -> Self {
        Self::from_columns(rows, (0..cols).map(f).collect())
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.iter() {
                out[r][c] = v.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, c: usize) -> &SparseVec<F> {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<SparseVec<F>> {
        self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    /// (row, col, value) triplets in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.columns[c].get(r)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.columns.iter().enumerate().all(|(c, col)| {
                col.nnz() == 1 && col.entries()[0].0 == c && col.entries()[0].1.is_one()
            })
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.rows);
        for (c, x) in v.iter() {
            acc.add_scaled_vec(x, &self.columns[c]);
        }
        acc.take()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul: {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut acc = Accumulator::new(self.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                for (k, x) in col.iter() {
                    acc.add_scaled_vec(x, &self.columns[k]);
                }
                acc.take()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape mismatch");
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.add_scaled(c, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&F::one().fneg(), other)
    }

    pub fn scale(&self, c: &F) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|col| col.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().fneg())
    }

    pub fn transpose(&self) -> Self {
        let mut per_row: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col.iter() {
                per_row[r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: per_row.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = self.mul(&out);
        }
        out
    }

    /// Horizontal concatenation [A | B | ...].
    pub fn hcat(parts: &[&Self]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows);
        assert!(parts.iter().all(|p| p.rows == rows), "hcat: row mismatch");
        let columns = parts.iter().flat_map(|p| p.columns.iter().cloned()).collect();
        SparseMatrix::from_columns(rows, columns)
    }

    /// Copies `block` into a larger zero matrix at the given offsets.
    pub fn embed(&self, rows: usize, cols: usize, row_off: usize, col_off: usize) -> Self {
        let mut columns = vec![SparseVec::new(); cols];
        for (c, col) in self.columns.iter().enumerate() {
            columns[col_off + c] = SparseVec::from_sorted_unchecked(
                col.entries().iter().map(|(r, v)| (r + row_off, v.clone())).collect(),
            );
        }
        SparseMatrix { rows, cols, columns }
    }

    pub fn first_mismatch(&self, other: &Self) -> Option<EntryWitness<F>> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some(EntryWitness { row: usize::MAX, col: usize::MAX, left: F::zero(), right: F::zero() });
        }
        for c in 0..self.cols {
            let (a, b) = (&self.columns[c], &other.columns[c]);
            if a != b {
                let d = a.sub(b);
                let (r, _) = d.leading().unwrap();
                return Some(EntryWitness { row: r, col: c, left: a.get(r), right: b.get(r) });
            }
        }
        None
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| SparseVec::from_pairs(c.iter().map(|(i, v)| (i, f(v)))))
                .collect(),
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[&Self]) -> Self {
        let rows: usize = parts.iter().map(|p| p.rows).sum();
        let mut columns = Vec::new();
        let mut off = 0;
        for p in parts {
            for col in &p.columns {
                columns.push(SparseVec::from_sorted_unchecked(
                    col.entries().iter().map(|(r, v)| (r + off, v.clone())).collect(),
                ));
            }
            off += p.rows;
        }
        SparseMatrix::from_columns(rows, columns)
    }

    /// Kronecker product with row index (i, j) ↦ i * other.rows + j.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut e = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (j, y) in b.iter() {
                        e.push((i * other.rows + j, x.fmul(y)));
                    }
                }
                columns.push(SparseVec::from_sorted_unchecked(e));
            }
        }
        SparseMatrix { rows, cols: self.cols * other.cols, columns }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::q;
    use proptest::prelude::*;

    fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = SparseMatrix> {
        proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            let rows: Vec<Vec<Q>> = (0..r).map(|i| (0..c).map(|j| q(v[i * c + j])).collect()).collect();
            SparseMatrix::from_dense(&rows)
        })
    }

    #[test]
    fn triplets_reject_duplicates_and_range() {
        assert!(SparseMatrix::from_triplets(2, 2, vec![(0, 0, q(1)), (0, 0, q(2))]).is_err());
        assert!(SparseMatrix::from_triplets(2, 2, vec![(2, 0, q(1))]).is_err());
        let m = SparseMatrix::from_triplets(2, 2, vec![(0, 1, q(0)), (1, 1, q(3))]).unwrap();
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(0), q(1)]]);
        let b = SparseMatrix::from_dense(&[vec![q(0), q(1)], vec![q(1), q(0)]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0 * 2 + 1, 1 * 2 + 0), q(2));
        assert_eq!(k.get(1 * 2 + 0, 1 * 2 + 1), q(1));
    }

    proptest! {
        #[test]
        fn mul_is_associative(a in small_matrix(3, 4), b in small_matrix(4, 2), c in small_matrix(2, 3)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn no_stored_zeros(a in small_matrix(4, 4), b in small_matrix(4, 4)) {
            let s = a.sub(&b).add(&b).sub(&a);
            prop_assert!(s.is_zero());
            prop_assert!(a.mul(&b).entries().all(|(r, c, v)| r < 4 && c < 4 && !Field::is_zero(v)));
        }

        #[test]
        fn transpose_reverses_products(a in small_matrix(3, 4), b in small_matrix(4, 2)) {
            prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        }
    }
}
