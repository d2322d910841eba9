//! Hochschild, cyclic and periodic cyclic homology of (para)cyclic modules.
//!
//! Cocyclic inputs are read through their transposed cyclic view, so every routine here
//! returns cohomology dimensions for them; reports carry the `cohomological` tag.

mod mixed;

pub use mixed::{
    cyclic_homology_mixed, group_homology_bar, group_homology_complex, mixed_of_cyclic, tot_of_cylindrical,
    MixedComplex, ParachainComplex,
};

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::cyclicfw::{CyclicError, ParaCyclicModule, Variance};
use crate::exactla::{q, rank, Mat, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error("mixed complex identity fails: {0}")]
    NotMixed(String),
    #[error("parachain identity fails: {0}")]
    NotParachain(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    HH,
    HC,
    HP,
    /// Group homology from the bar complex.
    Group,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theory::HH => "HH",
            Theory::HC => "HC",
            Theory::HP => "HP",
            Theory::Group => "H",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityEntry {
    /// Present only when stabilized.
    pub dim: Option<usize>,
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub theory: Theory,
    pub cohomological: bool,
    /// dims[n] for n = 0..=max_degree.
    pub dims: Vec<usize>,
    /// [even, odd]; filled by `periodic_estimate`.
    pub periodic: Option<[ParityEntry; 2]>,
}

impl HomologyReport {
    pub fn max_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sub, sup) = if self.cohomological { ("^", "") } else { ("_", "") };
        for (n, d) in self.dims.iter().enumerate() {
            write!(f, "{}{sub}{n}{sup} = {d}", self.theory)?;
            if n + 1 < self.dims.len() {
                f.write_str(", ")?;
            }
        }
        if let Some(p) = &self.periodic {
            for (parity, e) in p.iter().enumerate() {
                match e.dim {
                    Some(d) => write!(f, "; HP{parity} = {d}")?,
                    None => write!(f, "; HP{parity} unstable")?,
                }
            }
        }
        Ok(())
    }
}

fn sign(k: usize) -> Q {
    if k % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// The operators of the cyclic view in degree n.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicOperators {
    /// X_n → X_{n−1} (zero rows when n = 0).
    pub b: Mat,
    pub b_prime: Mat,
    /// X_n → X_n.
    pub norm: Mat,
    /// 1 − (−1)^n τ on X_n.
    pub one_minus_t: Mat,
    /// σ_{−1} = τσ_n: X_n → X_{n+1}.
    pub extra_degeneracy: Mat,
    /// X_n → X_{n+1}.
    pub big_b: Mat,
}

/// b on X_n.
pub fn boundary_b(x: &ParaCyclicModule, n: usize) -> Mat {
    if n == 0 {
        return Mat::zeros(0, x.dim(0));
    }
    (0..=n).fold(Mat::zeros(x.dim(n - 1), x.dim(n)), |acc, i| acc.add_scaled(&sign(i), &x.face(n, i)))
}

/// b′ on X_n (faces 0..n−1).
pub fn boundary_b_prime(x: &ParaCyclicModule, n: usize) -> Mat {
    if n == 0 {
        return Mat::zeros(0, x.dim(0));
    }
    (0..n).fold(Mat::zeros(x.dim(n - 1), x.dim(n)), |acc, i| acc.add_scaled(&sign(i), &x.face(n, i)))
}

/// 1 − (−1)^n τ on X_n.
pub fn one_minus_t(x: &ParaCyclicModule, n: usize) -> Mat {
    Mat::identity(x.dim(n)).add_scaled(&(-sign(n)), &x.cyclic(n))
}

/// N = Σ_{i=0}^{n} ((−1)^n τ)^i on X_n.
pub fn norm_operator(x: &ParaCyclicModule, n: usize) -> Mat {
    let t = x.cyclic(n).scale(&sign(n));
    let mut acc = Mat::identity(x.dim(n));
    let mut p = Mat::identity(x.dim(n));
    for _ in 0..n {
        p = t.mul(&p);
        acc = acc.add(&p);
    }
    acc
}

/// B = (1 − (−1)^{n+1}τ)σ_{−1}N: X_n → X_{n+1}.
pub fn connes_b(x: &ParaCyclicModule, n: usize) -> Mat {
    let s = x.cyclic(n + 1).mul(&x.degeneracy(n, n));
    one_minus_t(x, n + 1).mul(&s).mul(&norm_operator(x, n))
}

pub fn operators_bnb(x: &ParaCyclicModule, n: usize) -> CyclicOperators {
    CyclicOperators {
        b: boundary_b(x, n),
        b_prime: boundary_b_prime(x, n),
        norm: norm_operator(x, n),
        one_minus_t: one_minus_t(x, n),
        extra_degeneracy: x.cyclic(n + 1).mul(&x.degeneracy(n, n)),
        big_b: connes_b(x, n),
    }
}

fn par_ranks(ms: Vec<Mat>) -> Vec<usize> {
    ms.par_iter().map(rank).collect()
}

fn cohomological(x: &ParaCyclicModule) -> bool {
    x.variance() == Variance::Cocyclic
}

/// HH_n for n ≤ max_n, from the ranks of b_1 … b_{max_n+1}.
pub fn hochschild_homology(x: &ParaCyclicModule, max_n: usize) -> HomologyReport {
    let bs: Vec<Mat> = (1..=max_n + 1).map(|n| boundary_b(x, n)).collect();
    let r = par_ranks(bs);
    let dims = (0..=max_n)
        .map(|n| x.dim(n) - if n == 0 { 0 } else { r[n - 1] } - r[n])
        .collect();
    HomologyReport { theory: Theory::HH, cohomological: cohomological(x), dims, periodic: None }
}

/// HC_n from Connes' quotient complex X_n / im(1 − (−1)^nτ), computed by ranks:
/// dim C^λ_n = dim X_n − rank P_n and rank b̄_n = rank [b_n | P_{n−1}] − rank P_{n−1}.
pub fn cyclic_homology_lambda(x: &ParaCyclicModule, max_n: usize) -> HomologyReport {
    let ps: Vec<Mat> = (0..=max_n + 1).map(|n| one_minus_t(x, n)).collect();
    let stacked: Vec<Mat> = (1..=max_n + 1).map(|n| Mat::hcat(&[&boundary_b(x, n), &ps[n - 1]])).collect();
    let rp = par_ranks(ps);
    let rs = par_ranks(stacked);
    let rb = |n: usize| if n == 0 { 0 } else { rs[n - 1] - rp[n - 1] };
    let dims = (0..=max_n).map(|n| x.dim(n) - rp[n] - rb(n) - rb(n + 1)).collect();
    HomologyReport { theory: Theory::HC, cohomological: cohomological(x), dims, periodic: None }
}

/// Total differential of CC⁺ from Tot_n to Tot_{n−1}. Column p holds X_{n−p}; even
/// columns carry b, odd columns −b′, and the horizontal maps are 1 − (−1)^qτ out of odd
/// columns and N out of even columns p ≥ 2.
pub fn bicomplex_differential(x: &ParaCyclicModule, n: usize) -> Mat {
    let src: Vec<usize> = (0..=n).map(|p| x.dim(n - p)).collect();
    let tgt: Vec<usize> = (0..n).map(|p| x.dim(n - 1 - p)).collect();
    let src_off: Vec<usize> = offsets(&src);
    let tgt_off: Vec<usize> = offsets(&tgt);
    let (rows, cols) = (tgt.iter().sum(), src.iter().sum());
    let mut d = Mat::zeros(rows, cols);
    for p in 0..=n {
        let qd = n - p;
        if qd >= 1 {
            let v = if p % 2 == 0 { boundary_b(x, qd) } else { boundary_b_prime(x, qd).neg() };
            d = d.add(&v.embed(rows, cols, tgt_off[p], src_off[p]));
        }
        if p >= 1 {
            let h = if p % 2 == 1 { one_minus_t(x, qd) } else { norm_operator(x, qd) };
            d = d.add(&h.embed(rows, cols, tgt_off[p - 1], src_off[p]));
        }
    }
    d
}

pub(crate) fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in dims {
        out.push(acc);
        acc += d;
    }
    out
}

/// HC_n as the homology of Tot CC⁺ in degrees ≤ max_n.
pub fn cyclic_homology_bicomplex(x: &ParaCyclicModule, max_n: usize) -> HomologyReport {
    let ds: Vec<Mat> = (1..=max_n + 1).map(|n| bicomplex_differential(x, n)).collect();
    let tot = |n: usize| (0..=n).map(|k| x.dim(k)).sum::<usize>();
    let r = par_ranks(ds);
    let dims = (0..=max_n)
        .map(|n| tot(n) - if n == 0 { 0 } else { r[n - 1] } - r[n])
        .collect();
    HomologyReport { theory: Theory::HC, cohomological: cohomological(x), dims, periodic: None }
}

/// HP by parity: a parity is stabilized when HC agrees at its top two computed degrees.
pub fn periodic_estimate(hc: &HomologyReport) -> [ParityEntry; 2] {
    let top = hc.max_degree();
    let entry = |parity: usize| {
        let mut degs = (0..=top).rev().filter(|n| n % 2 == parity);
        match (degs.next(), degs.next()) {
            (Some(a), Some(b)) if hc.dims[a] == hc.dims[b] => ParityEntry { dim: Some(hc.dims[a]), stabilized: true },
            _ => ParityEntry { dim: None, stabilized: false },
        }
    };
    [entry(0), entry(1)]
}

/// HC through `max_n` (λ-complex) with the periodic estimate attached.
pub fn periodic_cyclic_homology(x: &ParaCyclicModule, max_n: usize) -> HomologyReport {
    let mut hc = cyclic_homology_lambda(x, max_n);
    hc.periodic = Some(periodic_estimate(&hc));
    hc.theory = Theory::HP;
    hc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclicfw::{algebra_cyclic_module, coalgebra_cocyclic_module, with_cyclic_operator};
    use crate::hopfcore::{group_algebra, sweedler_h4, FiniteAlgebra, FiniteGroup};
    use std::sync::Arc;

    fn point() -> ParaCyclicModule {
        algebra_cyclic_module(&FiniteAlgebra::scalars())
    }

    #[test]
    fn point_module() {
        let x = point();
        assert_eq!(hochschild_homology(&x, 4).dims, vec![1, 0, 0, 0, 0]);
        assert_eq!(cyclic_homology_lambda(&x, 4).dims, vec![1, 0, 1, 0, 1]);
        assert_eq!(cyclic_homology_bicomplex(&x, 4).dims, vec![1, 0, 1, 0, 1]);
        let hp = periodic_estimate(&cyclic_homology_lambda(&x, 4));
        assert_eq!(hp[0], ParityEntry { dim: Some(1), stabilized: true });
        assert_eq!(hp[1], ParityEntry { dim: Some(0), stabilized: true });
    }

    #[test]
    fn operator_identities() {
        let alg = [group_algebra(&FiniteGroup::cyclic(2)).algebra, sweedler_h4().algebra];
        for a in &alg {
            let x = algebra_cyclic_module(a);
            for n in 1..=3 {
                let o = operators_bnb(&x, n);
                let lower = operators_bnb(&x, n - 1);
                let bb = boundary_b(&x, n + 1);
                assert!(o.b.mul(&bb).is_zero());
                assert!(o.b_prime.mul(&boundary_b_prime(&x, n + 1)).is_zero());
                // b(1 − (−1)^nτ) = (1 − (−1)^{n−1}τ)b′
                assert_eq!(o.b.mul(&o.one_minus_t), lower.one_minus_t.mul(&o.b_prime));
                // b′N = Nb
                assert_eq!(o.b_prime.mul(&o.norm), lower.norm.mul(&o.b));
                // σ_{−1} contracts b′
                let h = boundary_b_prime(&x, n + 1).mul(&o.extra_degeneracy).add(&lower.extra_degeneracy.mul(&o.b_prime));
                assert!(h.is_identity());
                // mixed complex
                assert!(o.big_b.mul(&lower.big_b).is_zero());
                let anti = bb.mul(&o.big_b).add(&lower.big_b.mul(&o.b));
                assert!(anti.is_zero(), "bB + Bb ≠ 0 in degree {n}");
            }
        }
    }

    #[test]
    fn lambda_and_bicomplex_agree() {
        let alg = [
            group_algebra(&FiniteGroup::cyclic(3)).algebra,
            sweedler_h4().algebra,
            FiniteAlgebra::truncated_polynomial(2),
        ];
        for a in &alg {
            let x = algebra_cyclic_module(a);
            assert_eq!(cyclic_homology_lambda(&x, 3).dims, cyclic_homology_bicomplex(&x, 3).dims);
        }
        let c = coalgebra_cocyclic_module(&sweedler_h4().coalgebra);
        let l = cyclic_homology_lambda(&c, 3);
        assert!(l.cohomological);
        assert_eq!(l.dims, cyclic_homology_bicomplex(&c, 3).dims);
    }

    #[test]
    fn group_algebra_hochschild_counts_conjugacy_classes() {
        let x = algebra_cyclic_module(&group_algebra(&FiniteGroup::symmetric3()).algebra);
        assert_eq!(hochschild_homology(&x, 2).dims, vec![3, 0, 0]);
        // HC_n(kG) = ⊕ over classes of H_*(centralizer), char 0: class count in even degrees
        assert_eq!(cyclic_homology_lambda(&x, 2).dims, vec![3, 0, 3]);
    }

    #[test]
    fn corrupted_cyclic_operator_breaks_agreement() {
        let a = group_algebra(&FiniteGroup::cyclic(2)).algebra;
        let x = Arc::new(algebra_cyclic_module(&a));
        let y = with_cyclic_operator(x.clone(), "corrupt", move |n| {
            if n == 1 {
                Mat::identity(x.dim(1))
            } else {
                (*x.raw_cyclic(n)).clone()
            }
        });
        assert_ne!(cyclic_homology_lambda(&y, 2).dims, cyclic_homology_bicomplex(&y, 2).dims);
    }

    #[test]
    fn unstable_flag() {
        let hc = HomologyReport { theory: Theory::HC, cohomological: false, dims: vec![1, 0, 2, 1, 3], periodic: None };
        let p = periodic_estimate(&hc);
        assert!(!p[0].stabilized && p[0].dim.is_none());
        assert!(!p[1].stabilized);
    }
}
