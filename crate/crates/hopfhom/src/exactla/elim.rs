use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::matrix::{SparseMatrix, SparseVec};
use super::scalar::{Field, Q};
use super::LinAlgError;

/// Basis of a subspace of F^ambient in reduced echelon form: each vector has leading
/// coefficient 1 at its pivot, pivots strictly increase, and every vector vanishes at the
/// other vectors' pivots.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis<F: Field = Q> {
    ambient: usize,
    vectors: Vec<SparseVec<F>>,
}

fn normalize_leading<F: Field>(v: SparseVec<F>) -> SparseVec<F> {
    let inv = v.leading().unwrap().1.finv().unwrap();
    v.scale(&inv)
}

impl<F: Field> SubspaceBasis<F> {
    pub fn empty(ambient: usize) -> Self {
        SubspaceBasis { ambient, vectors: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis { ambient, vectors: (0..ambient).map(SparseVec::unit).collect() }
    }

    /// Echelon basis of the span of `vectors`.
    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        let mut piv: HashMap<usize, SparseVec<F>> = HashMap::new();
        for v in vectors {
            let v = reduce_leading(&piv, v);
            if let Some((lead, _)) = v.leading() {
                piv.insert(lead, normalize_leading(v));
            }
        }
        let mut vecs: Vec<(usize, SparseVec<F>)> = piv.into_iter().collect();
        vecs.sort_by_key(|e| e.0);
        let pivots: Vec<usize> = vecs.iter().map(|e| e.0).collect();
        let mut vectors: Vec<SparseVec<F>> = vecs.into_iter().map(|e| e.1).collect();
        for i in (0..vectors.len()).rev() {
            let mut v = vectors[i].clone();
            for j in i + 1..vectors.len() {
                let c = v.get(pivots[j]);
                if !c.is_zero() {
                    v = v.add_scaled(&c.fneg(), &vectors[j]);
                }
            }
            vectors[i] = v;
        }
        SubspaceBasis { ambient, vectors }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec<F>] {
        &self.vectors
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.vectors.iter().map(|v| v.leading().unwrap().0).collect()
    }

    /// v minus its projection along the pivots; zero iff v lies in the span.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = v.clone();
        for b in &self.vectors {
            let p = b.leading().unwrap().0;
            let c = v.get(p);
            if !c.is_zero() {
                out = out.add_scaled(&c.fneg(), b);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of v in this basis, or `None` when v is outside the span.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(SparseVec::from_pairs(
            self.vectors.iter().enumerate().map(|(i, b)| (i, v.get(b.leading().unwrap().0))),
        ))
    }

    /// Indices of standard basis vectors spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let piv = self.pivots();
        let mut out = Vec::with_capacity(self.ambient - piv.len());
        let mut k = 0;
        for i in 0..self.ambient {
            if k < piv.len() && piv[k] == i {
                k += 1;
            } else {
                out.push(i);
            }
        }
        out
    }

    /// Matrix whose columns are the basis vectors.
    pub fn to_matrix(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns(self.ambient, self.vectors.clone())
    }
}

fn reduce_leading<F: Field>(piv: &HashMap<usize, SparseVec<F>>, mut v: SparseVec<F>) -> SparseVec<F> {
    while let Some((lead, c)) = v.leading() {
        match piv.get(&lead) {
            Some(p) => {
                let c = c.fneg();
                v = v.add_scaled(&c, p);
            }
            None => break,
        }
    }
    v
}

pub fn generic_rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    let mut piv: HashMap<usize, SparseVec<F>> = HashMap::new();
    for col in m.columns() {
        let v = reduce_leading(&piv, col.clone());
        if let Some((lead, _)) = v.leading() {
            piv.insert(lead, normalize_leading(v));
        }
    }
    piv.len()
}

/// Exact rank.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    F::rank_of(m)
}

pub fn column_space<F: Field>(m: &SparseMatrix<F>) -> SubspaceBasis<F> {
    SubspaceBasis::from_vectors(m.rows(), m.columns().iter().cloned())
}

/// Basis of {v : m v = 0}.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> SubspaceBasis<F> {
    let rref = SubspaceBasis::from_vectors(m.cols(), m.transpose().into_columns());
    let pivots = rref.pivots();
    let kernel: Vec<SparseVec<F>> = rref
        .complement_indices()
        .into_iter()
        .map(|f| {
            let mut pairs = vec![(f, F::one())];
            for (row, p) in rref.vectors().iter().zip(&pivots) {
                let c = row.get(f);
                if !c.is_zero() {
                    pairs.push((*p, c.fneg()));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    SubspaceBasis::from_vectors(m.cols(), kernel)
}

/// dim(within) − dim(sub), after checking sub ⊆ within.
pub fn quotient_dim<F: Field>(sub: &SubspaceBasis<F>, within: &SubspaceBasis<F>) -> Result<usize, LinAlgError> {
    if sub.ambient() != within.ambient() {
        return Err(LinAlgError::DimensionMismatch("ambient dimensions differ".into()));
    }
    for (i, v) in sub.vectors().iter().enumerate() {
        if !within.contains(v) {
            return Err(LinAlgError::NotContained { index: i });
        }
    }
    Ok(within.dim() - sub.dim())
}

/// One solution of a x = rhs (free variables set to zero).
pub fn solve_linear<F: Field>(a: &SparseMatrix<F>, rhs: &SparseVec<F>) -> Result<SparseVec<F>, LinAlgError> {
    if rhs.max_index().map_or(false, |i| i >= a.rows()) {
        return Err(LinAlgError::DimensionMismatch("rhs longer than row count".into()));
    }
    let n = a.cols();
    let aug = SparseMatrix::hcat(&[a, &SparseMatrix::from_columns(a.rows(), vec![rhs.clone()])]);
    let rref = SubspaceBasis::from_vectors(n + 1, aug.transpose().into_columns());
    let mut sol = Vec::new();
    for row in rref.vectors() {
        let (p, _) = row.leading().unwrap();
        if p == n {
            return Err(LinAlgError::Inconsistent);
        }
        sol.push((p, row.get(n)));
    }
    Ok(SparseVec::from_pairs(sol))
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse<F: Field>(m: &SparseMatrix<F>) -> Option<SparseMatrix<F>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let aug = SparseMatrix::hcat(&[m, &SparseMatrix::identity(n)]);
    let rref = SubspaceBasis::from_vectors(2 * n, aug.transpose().into_columns());
    if rref.dim() != n || rref.pivots().iter().enumerate().any(|(i, p)| *p != i) {
        return None;
    }
    // row i of the right block is row i of the inverse
    let rows: Vec<SparseVec<F>> = rref
        .vectors()
        .iter()
        .map(|r| SparseVec::from_pairs(r.iter().filter(|(j, _)| *j >= n).map(|(j, v)| (j - n, v.clone()))))
        .collect();
    Some(SparseMatrix::from_columns(n, rows).transpose())
}

// Fraction-free elimination over the integers for rational matrices.

trait EInt: Clone + PartialEq + Send + Sync + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// p*x − a*y, or None on overflow.
    fn comb(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn from_big(b: &BigInt) -> Option<Self>;
}

impl EInt for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn comb(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self> {
        p.checked_mul(*x)?.checked_sub(a.checked_mul(*y)?)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        // headroom so that one combination step cannot overflow silently
        b.to_i128().filter(|v| v.abs() < (1i128 << 100))
    }
}

impl EInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn comb(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self> {
        Some(p * x - a * y)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
}

type IntCol<T> = Vec<(usize, T)>;

fn make_primitive<T: EInt>(col: &mut IntCol<T>) {
    if col.is_empty() {
        return;
    }
    let mut g = col[0].1.clone();
    for (_, v) in col.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(v);
    }
    if !g.is_unit() {
        for e in col.iter_mut() {
            e.1 = e.1.div_exact(&g);
        }
    }
}

fn combine<T: EInt>(p: &T, x: &IntCol<T>, a: &T, y: &IntCol<T>) -> Option<IntCol<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let z = T::zero();
    while i < x.len() || j < y.len() {
        let v = if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let r = (x[i].0, T::comb(p, &x[i].1, a, &z)?);
            i += 1;
            r
        } else if i == x.len() || y[j].0 < x[i].0 {
            let r = (y[j].0, T::comb(&z, &z, a, &y[j].1)?);
            j += 1;
            r
        } else {
            let r = (x[i].0, T::comb(p, &x[i].1, a, &y[j].1)?);
            i += 1;
            j += 1;
            r
        };
        if !v.1.is_zero() {
            out.push(v);
        }
    }
    make_primitive(&mut out);
    Some(out)
}

/// Rank of one connected block. Pivot choice: sparsest live column, then its smallest row.
fn eliminate<T: EInt>(nrows: usize, mut cols: Vec<IntCol<T>>) -> Option<usize> {
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); nrows];
    let mut heap = BinaryHeap::new();
    for (c, col) in cols.iter().enumerate() {
        for (r, _) in col {
            row_cols[*r].push(c);
        }
        heap.push(Reverse((col.len(), c)));
    }
    let mut alive = vec![true; cols.len()];
    let mut stamp = vec![usize::MAX; cols.len()];
    let mut rank = 0;
    while let Some(Reverse((nnz, c))) = heap.pop() {
        if !alive[c] || cols[c].len() != nnz {
            continue;
        }
        alive[c] = false;
        if nnz == 0 {
            continue;
        }
        rank += 1;
        let pivot = std::mem::take(&mut cols[c]);
        let (r, p) = pivot[0].clone();
        for j in std::mem::take(&mut row_cols[r]) {
            if !alive[j] || stamp[j] == c {
                continue;
            }
            stamp[j] = c;
            if let Ok(pos) = cols[j].binary_search_by_key(&r, |e| e.0) {
                let a = cols[j][pos].1.clone();
                let new = combine(&p, &cols[j], &a, &pivot)?;
                for (row, _) in &pivot {
                    if *row != r {
                        row_cols[*row].push(j);
                    }
                }
                cols[j] = new;
                heap.push(Reverse((cols[j].len(), j)));
            }
        }
    }
    Some(rank)
}

fn to_int_column(col: &SparseVec<Q>) -> IntCol<BigInt> {
    let mut l = BigInt::one();
    for (_, v) in col.iter() {
        l = l.lcm(v.denom());
    }
    let mut out: IntCol<BigInt> =
        col.iter().map(|(i, v)| (i, v.numer() * (&l / v.denom()))).collect();
    make_primitive(&mut out);
    out
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Rank over ℚ: split into connected blocks of the row/column incidence graph, then run
/// content-normalized fraction-free elimination per block (machine integers first,
/// big integers on overflow).
pub fn rational_rank(m: &SparseMatrix<Q>) -> usize {
    let n = m.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    for col in m.columns() {
        let mut it = col.iter();
        if let Some((r0, _)) = it.next() {
            let a = find(&mut parent, r0);
            for (r, _) in it {
                let b = find(&mut parent, r);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut block_of_root: HashMap<usize, usize> = HashMap::new();
    let mut local_row = vec![0usize; n];
    let mut block_rows: Vec<usize> = Vec::new();
    for r in 0..n {
        let root = find(&mut parent, r);
        let b = *block_of_root.entry(root).or_insert_with(|| {
            block_rows.push(0);
            block_rows.len() - 1
        });
        local_row[r] = block_rows[b];
        block_rows[b] += 1;
    }
    let mut blocks: Vec<Vec<IntCol<BigInt>>> = vec![Vec::new(); block_rows.len()];
    for col in m.columns() {
        if let Some((r0, _)) = col.leading() {
            let b = block_of_root[&find(&mut parent, r0)];
            let ic = to_int_column(col).into_iter().map(|(r, v)| (local_row[r], v)).collect();
            blocks[b].push(ic);
        }
    }
    blocks
        .into_par_iter()
        .zip(block_rows.into_par_iter())
        .map(|(cols, nrows)| {
            let small: Option<Vec<IntCol<i128>>> = cols
                .iter()
                .map(|c| c.iter().map(|(r, v)| i128::from_big(v).map(|x| (*r, x))).collect())
                .collect();
            small
                .and_then(|s| eliminate(nrows, s))
                .unwrap_or_else(|| eliminate(nrows, cols).expect("big integer elimination cannot overflow"))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::{q, qf};
    use proptest::prelude::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>())
    }

    /// Textbook rational Gaussian elimination on a dense copy.
    fn naive_rank(m: &SparseMatrix) -> usize {
        let mut a = m.to_dense();
        let (nr, nc) = (m.rows(), m.cols());
        let mut r = 0;
        for c in 0..nc {
            let Some(p) = (r..nr).find(|&i| !Field::is_zero(&a[i][c])) else { continue };
            a.swap(r, p);
            for i in 0..nr {
                if i != r && !Field::is_zero(&a[i][c]) {
                    let f = &a[i][c] / &a[r][c];
                    for k in 0..nc {
                        let t = &f * &a[r][k];
                        a[i][k] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::<Q>::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::<Q>::zeros(3, 4)), 0);
        assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&SparseMatrix::<Q>::identity(3)).dim(), 0);
        assert_eq!(kernel_basis(&SparseMatrix::<Q>::zeros(2, 3)).dim(), 3);
        let k = kernel_basis(&dense(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        let v = &k.vectors()[0];
        assert_eq!(v.get(0), -v.get(1));
        assert_eq!(v.to_dense(2), vec![q(1), q(-1)]);
    }

    #[test]
    fn solve_examples() {
        let e1 = SparseVec::unit(0);
        assert_eq!(solve_linear(&SparseMatrix::<Q>::identity(3), &e1).unwrap(), e1);
        let a = dense(&[&[1, 1]]);
        let rhs = SparseVec::single(0, q(2));
        let x = solve_linear(&a, &rhs).unwrap();
        assert_eq!(a.apply(&x), rhs);
        let b = dense(&[&[1, 1], &[2, 2]]);
        let bad = SparseVec::from_dense(&[q(1), q(3)]);
        assert_eq!(solve_linear(&b, &bad), Err(LinAlgError::Inconsistent));
    }

    #[test]
    fn quotient_examples() {
        let w = SubspaceBasis::<Q>::full(5);
        assert_eq!(quotient_dim(&w, &w), Ok(0));
        assert_eq!(quotient_dim(&SubspaceBasis::empty(5), &w), Ok(5));
        let line = SubspaceBasis::<Q>::from_vectors(2, vec![SparseVec::unit(0)]);
        let other = SubspaceBasis::from_vectors(2, vec![SparseVec::unit(1)]);
        assert_eq!(quotient_dim(&line, &other), Err(LinAlgError::NotContained { index: 0 }));
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = dense(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&dense(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn big_entries_fall_back_to_bigint() {
        let big = qf(1, 1) * Q::from_integer(BigInt::from(10).pow(40));
        let m = SparseMatrix::from_dense(&[
            vec![big.clone(), q(1), q(0)],
            vec![q(1), big.clone(), q(1)],
            vec![q(0), q(1), big],
        ]);
        assert_eq!(rank(&m), 3);
        assert_eq!(rank(&m), naive_rank(&m));
    }

    fn matrix(r: usize, c: usize, lo: i64, hi: i64) -> impl Strategy<Value = SparseMatrix> {
        proptest::collection::vec((lo..hi, 1i64..4), r * c).prop_map(move |v| {
            let rows: Vec<Vec<Q>> =
                (0..r).map(|i| (0..c).map(|j| qf(v[i * c + j].0, v[i * c + j].1)).collect()).collect();
            SparseMatrix::from_dense(&rows)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix(5, 7, -2, 3)) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.dim(), m.cols());
            for v in k.vectors() {
                prop_assert!(m.apply(v).is_zero());
            }
        }

        #[test]
        fn fraction_free_matches_naive(m in matrix(6, 6, -1, 2)) {
            prop_assert_eq!(rank(&m), naive_rank(&m));
            prop_assert_eq!(generic_rank(&m), naive_rank(&m));
        }

        #[test]
        fn echelon_pivots_increase(m in matrix(4, 6, -2, 3)) {
            let b = column_space(&m.transpose());
            let p = b.pivots();
            prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
            for (i, v) in b.vectors().iter().enumerate() {
                for (j, pj) in p.iter().enumerate() {
                    prop_assert_eq!(Field::is_zero(&v.get(*pj)), i != j);
                }
            }
        }

        #[test]
        fn solve_verifies_by_substitution(m in matrix(4, 5, -2, 3), x in proptest::collection::vec(-3i64..4, 5)) {
            let xv = SparseVec::from_dense(&x.iter().map(|&v| q(v)).collect::<Vec<_>>());
            let rhs = m.apply(&xv);
            let sol = solve_linear(&m, &rhs).unwrap();
            prop_assert_eq!(m.apply(&sol), rhs);
        }
    }
}
