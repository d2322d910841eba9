use rayon::prelude::*;

use crate::exactla::{Mat, SparseVec, Vector, Q};

/// Mixed-radix index of a tuple; leg 0 is the most significant digit.
pub fn encode(tuple: &[usize], dims: &[usize]) -> usize {
    let mut idx = 0;
    for (t, d) in tuple.iter().zip(dims) {
        idx = idx * d + t;
    }
    idx
}

pub fn decode(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

pub fn size(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// Collects linear combinations of basis tensors for one column of an operator.
pub struct Sink<'a> {
    dims: &'a [usize],
    pairs: Vec<(usize, Q)>,
}

impl<'a> Sink<'a> {
    pub fn new(dims: &'a [usize]) -> Self {
        Sink { dims, pairs: Vec::new() }
    }

    pub fn add(&mut self, tuple: &[usize], c: Q) {
        debug_assert_eq!(tuple.len(), self.dims.len());
        self.pairs.push((encode(tuple, self.dims), c));
    }

    pub fn add_index(&mut self, idx: usize, c: Q) {
        self.pairs.push((idx, c));
    }

    /// Adds c · (v_0 ⊗ v_1 ⊗ …) where each leg is a vector in that leg's space.
    pub fn add_pure(&mut self, c: &Q, legs: &[&Vector]) {
        debug_assert_eq!(legs.len(), self.dims.len());
        fn rec(sink: &mut Sink<'_>, legs: &[&Vector], k: usize, idx: usize, c: Q) {
            if k == legs.len() {
                sink.pairs.push((idx, c));
                return;
            }
            let d = sink.dims[k];
            for (i, v) in legs[k].iter() {
                rec(sink, legs, k + 1, idx * d + i, &c * v);
            }
        }
        rec(self, legs, 0, 0, c.clone());
    }

    pub fn finish(self) -> Vector {
        SparseVec::from_pairs(self.pairs)
    }
}

/// Builds the matrix of a multilinear map given its value on each source basis tensor.
pub fn operator<F>(src: &[usize], tgt: &[usize], f: F) -> Mat
where
    F: Fn(&[usize], &mut Sink<'_>) + Sync,
{
    let n = size(src);
    let rows = size(tgt);
    let columns: Vec<Vector> = (0..n)
        .into_par_iter()
        .map(|c| {
            let t = decode(c, src);
            let mut sink = Sink::new(tgt);
            f(&t, &mut sink);
            sink.finish()
        })
        .collect();
    Mat::from_columns(rows, columns)
}

/// Splits a vector on dims (a, b) into terms (i, j, c).
pub fn split2(v: &Vector, b: usize) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
    v.iter().map(move |(k, c)| (k / b, k % b, c))
}
