use std::sync::Arc;

use rayon::prelude::*;

use super::{boundary_b, connes_b, offsets, sign, HomError, HomologyReport, Theory};
use crate::cyclicfw::{ChainComplex, CylindricalModule, ParaCyclicModule};
use crate::exactla::{rank, Mat, SparseVec, SubspaceBasis, Q};
use crate::hopfcore::tensor::operator;
use crate::hopfcore::FiniteGroup;

/// Graded spaces with b of degree −1 and B of degree +1, truncated at `top()`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParachainComplex {
    dims: Vec<usize>,
    b: Vec<Mat>,
    big_b: Vec<Mat>,
    pub cohomological: bool,
}

/// A parachain complex with bB + Bb = 0; `verify_mixed` checks the extra identity.
pub type MixedComplex = ParachainComplex;

impl ParachainComplex {
    /// `b[n]`: M_n → M_{n−1} for n = 1..=top (index n − 1), `big_b[n]`: M_n → M_{n+1}
    /// for n = 0..top.
    pub fn new(dims: Vec<usize>, b: Vec<Mat>, big_b: Vec<Mat>) -> Self {
        let top = dims.len() - 1;
        assert_eq!(b.len(), top);
        assert_eq!(big_b.len(), top);
        for n in 1..=top {
            assert_eq!((b[n - 1].rows(), b[n - 1].cols()), (dims[n - 1], dims[n]));
            assert_eq!((big_b[n - 1].rows(), big_b[n - 1].cols()), (dims[n], dims[n - 1]));
        }
        ParachainComplex { dims, b, big_b, cohomological: false }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn b(&self, n: usize) -> Mat {
        if n == 0 {
            Mat::zeros(0, self.dims[0])
        } else {
            self.b[n - 1].clone()
        }
    }

    pub fn big_b(&self, n: usize) -> &Mat {
        &self.big_b[n]
    }

    /// bB + Bb on M_n, for n < top.
    pub fn anticommutator(&self, n: usize) -> Mat {
        let up = self.b[n].mul(&self.big_b[n]);
        if n == 0 {
            up
        } else {
            up.add(&self.big_b[n - 1].mul(&self.b[n - 1]))
        }
    }

    fn verify_squares(&self) -> Result<(), String> {
        for n in 2..=self.top() {
            if let Some(w) = self.b[n - 2].mul(&self.b[n - 1]).first_mismatch(&Mat::zeros(self.dims[n - 2], self.dims[n])) {
                return Err(format!("b² ≠ 0 in degree {n}: {w}"));
            }
        }
        for n in 0..self.top().saturating_sub(1) {
            if !self.big_b[n + 1].mul(&self.big_b[n]).is_zero() {
                return Err(format!("B² ≠ 0 in degree {n}"));
            }
        }
        Ok(())
    }

    pub fn verify_mixed(&self) -> Result<(), HomError> {
        self.verify_squares().map_err(HomError::NotMixed)?;
        for n in 0..self.top() {
            let a = self.anticommutator(n);
            if let Some(w) = a.first_mismatch(&Mat::zeros(self.dims[n], self.dims[n])) {
                return Err(HomError::NotMixed(format!("bB + Bb ≠ 0 in degree {n}: {w}")));
            }
        }
        Ok(())
    }

    /// b² = 0, B² = 0 and T = 1 − (bB + Bb) invertible below the top degree.
    pub fn verify_parachain(&self) -> Result<(), HomError> {
        self.verify_squares().map_err(HomError::NotParachain)?;
        for n in 0..self.top() {
            let t = Mat::identity(self.dims[n]).sub(&self.anticommutator(n));
            if rank(&t) != self.dims[n] {
                return Err(HomError::NotParachain(format!("T not invertible in degree {n}")));
            }
        }
        Ok(())
    }
}

/// (M, b, B) of a cyclic module through degree `top`.
pub fn mixed_of_cyclic(x: &ParaCyclicModule, top: usize) -> MixedComplex {
    let dims = (0..=top).map(|n| x.dim(n)).collect();
    let b = (1..=top).into_par_iter().map(|n| boundary_b(x, n)).collect();
    let big_b = (0..top).into_par_iter().map(|n| connes_b(x, n)).collect();
    let mut m = ParachainComplex::new(dims, b, big_b);
    m.cohomological = x.variance() == crate::cyclicfw::Variance::Cocyclic;
    m
}

/// Differential of the (b, B)-bicomplex from Tot_n = ⊕_k M_{n−2k} to Tot_{n−1}.
fn bb_differential(m: &MixedComplex, n: usize) -> Mat {
    let src: Vec<usize> = (0..=n / 2).map(|k| m.dim(n - 2 * k)).collect();
    let tgt: Vec<usize> = if n == 0 { Vec::new() } else { (0..=(n - 1) / 2).map(|k| m.dim(n - 1 - 2 * k)).collect() };
    let (so, to) = (offsets(&src), offsets(&tgt));
    let (rows, cols) = (tgt.iter().sum(), src.iter().sum());
    let mut d = Mat::zeros(rows, cols);
    for k in 0..=n / 2 {
        let deg = n - 2 * k;
        if deg >= 1 {
            d = d.add(&m.b(deg).embed(rows, cols, to[k], so[k]));
        }
        if k >= 1 {
            d = d.add(&m.big_b(deg).embed(rows, cols, to[k - 1], so[k]));
        }
    }
    d
}

/// HC_n of a mixed complex for n ≤ max_n; requires top ≥ max_n + 1.
pub fn cyclic_homology_mixed(m: &MixedComplex, max_n: usize) -> HomologyReport {
    assert!(m.top() > max_n, "mixed complex truncated below degree {}", max_n + 1);
    let ds: Vec<Mat> = (1..=max_n + 1).map(|n| bb_differential(m, n)).collect();
    let r: Vec<usize> = ds.par_iter().map(rank).collect();
    let tot = |n: usize| (0..=n / 2).map(|k| m.dim(n - 2 * k)).sum::<usize>();
    let dims = (0..=max_n).map(|n| tot(n) - if n == 0 { 0 } else { r[n - 1] } - r[n]).collect();
    HomologyReport { theory: Theory::HC, cohomological: m.cohomological, dims, periodic: None }
}

/// Normalized Tot of a cylindrical module through total degree `top`: on X_{p,q},
/// b = b_p + (−1)^p b_q and B = B_p + (−1)^p T_p B_q with T_p = t^{p+1}, taken modulo the
/// images of all degeneracies. Unnormalized, B² fails to vanish once the rows or columns
/// are only paracyclic. The cylindrical identities are verified through `check_through`.
pub fn tot_of_cylindrical(x: &Arc<CylindricalModule>, top: usize, check_through: usize) -> Result<MixedComplex, HomError> {
    x.verify(check_through)?;
    let rows: Vec<ParaCyclicModule> = (0..=top + 1).map(|q| x.p_row(q)).collect();
    let cols: Vec<ParaCyclicModule> = (0..=top + 1).map(|p| x.q_column(p)).collect();
    let block_dims = |n: usize| -> Vec<usize> { (0..=n).map(|p| x.dim(p, n - p)).collect() };
    let dims: Vec<usize> = (0..=top).map(|n| block_dims(n).iter().sum()).collect();
    let b: Vec<Mat> = (1..=top)
        .into_par_iter()
        .map(|n| {
            let (s, t) = (block_dims(n), block_dims(n - 1));
            let (so, to) = (offsets(&s), offsets(&t));
            let (r, c) = (dims[n - 1], dims[n]);
            let mut m = Mat::zeros(r, c);
            for p in 0..=n {
                let qd = n - p;
                if p >= 1 {
                    m = m.add(&boundary_b(&rows[qd], p).embed(r, c, to[p - 1], so[p]));
                }
                if qd >= 1 {
                    m = m.add(&boundary_b(&cols[p], qd).scale(&sign(p)).embed(r, c, to[p], so[p]));
                }
            }
            m
        })
        .collect();
    let big_b: Vec<Mat> = (0..top)
        .into_par_iter()
        .map(|n| {
            let (s, t) = (block_dims(n), block_dims(n + 1));
            let (so, to) = (offsets(&s), offsets(&t));
            let (r, c) = (dims[n + 1], dims[n]);
            let mut m = Mat::zeros(r, c);
            for p in 0..=n {
                let qd = n - p;
                m = m.add(&connes_b(&rows[qd], p).embed(r, c, to[p + 1], so[p]));
                let tb = x.p_power(p, qd + 1).mul(&connes_b(&cols[p], qd)).scale(&sign(p));
                m = m.add(&tb.embed(r, c, to[p], so[p]));
            }
            m
        })
        .collect();
    let degenerate: Vec<SubspaceBasis> = (0..=top)
        .into_par_iter()
        .map(|n| {
            let so = offsets(&block_dims(n));
            let mut gens = Vec::new();
            for p in 0..=n {
                let qd = n - p;
                let mut push = |m: &Mat| gens.extend(m.clone().into_columns().into_iter().map(|v| SparseVec::from_pairs(v.iter().map(|(i, c)| (i + so[p], c.clone())))));
                if p >= 1 {
                    (0..p).for_each(|i| push(&x.p_degeneracy(p - 1, qd, i)));
                }
                if qd >= 1 {
                    (0..qd).for_each(|j| push(&x.q_degeneracy(p, qd - 1, j)));
                }
            }
            SubspaceBasis::from_vectors(dims[n], gens)
        })
        .collect();
    let comps: Vec<Vec<usize>> = degenerate.iter().map(|d| d.complement_indices()).collect();
    let descend = |op: &Mat, src: usize, tgt: usize| -> Mat {
        let pos: std::collections::HashMap<usize, usize> = comps[tgt].iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let cols = comps[src]
            .iter()
            .map(|&j| {
                let r = degenerate[tgt].reduce(op.col(j));
                SparseVec::from_pairs(r.iter().map(|(i, c)| (pos[&i], c.clone())))
            })
            .collect();
        Mat::from_columns(comps[tgt].len(), cols)
    };
    let nb = (1..=top).map(|n| descend(&b[n - 1], n, n - 1)).collect();
    let nbig = (0..top).map(|n| descend(&big_b[n], n, n + 1)).collect();
    Ok(ParachainComplex::new(comps.iter().map(Vec::len).collect(), nb, nbig))
}

/// Bar complex of G with coefficients k_χ (right action m·g = χ(g)m) through degree `top`.
pub fn group_homology_complex(g: &FiniteGroup, chi: &[Q], top: usize) -> ChainComplex {
    let d = g.order();
    let dims: Vec<usize> = (0..=top).map(|n| d.pow(n as u32)).collect();
    let boundary = (1..=top)
        .map(|n| {
            operator(&vec![d; n], &vec![d; n - 1], |t, s| {
                s.add(&t[1..], chi[t[0]].clone());
                let mut out = vec![0; n - 1];
                for i in 1..n {
                    out[..i - 1].copy_from_slice(&t[..i - 1]);
                    out[i - 1] = g.mul(t[i - 1], t[i]);
                    out[i..].copy_from_slice(&t[i + 1..]);
                    s.add(&out, sign(i));
                }
                s.add(&t[..n - 1], sign(n));
            })
        })
        .collect();
    ChainComplex::new(dims, boundary)
}

/// H_n(G; k_χ) for n ≤ max_n via the bar complex.
pub fn group_homology_bar(g: &FiniteGroup, chi: &[Q], max_n: usize) -> HomologyReport {
    let c = group_homology_complex(g, chi, max_n + 1);
    HomologyReport { theory: Theory::Group, cohomological: false, dims: c.homology_dims(), periodic: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclicfw::{algebra_cyclic_module, diagonal, BiOperators};
    use crate::exactla::q;
    use crate::homengine::{cyclic_homology_bicomplex, cyclic_homology_lambda};
    use crate::hopfcore::{group_algebra, sweedler_h4, FiniteAlgebra};

    #[test]
    fn mixed_of_cyclic_gives_same_hc() {
        for a in [group_algebra(&FiniteGroup::cyclic(2)).algebra, sweedler_h4().algebra] {
            let x = algebra_cyclic_module(&a);
            let m = mixed_of_cyclic(&x, 4);
            m.verify_mixed().unwrap();
            assert_eq!(cyclic_homology_mixed(&m, 3).dims, cyclic_homology_lambda(&x, 3).dims);
        }
    }

    #[test]
    fn bar_complex_group_homology() {
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let chi = vec![q(1); g.order()];
            let max = if g.order() == 6 { 2 } else { 3 };
            let mut expect = vec![0; max + 1];
            expect[0] = 1;
            assert_eq!(group_homology_bar(&g, &chi, max).dims, expect);
        }
        let g = FiniteGroup::cyclic(2);
        assert_eq!(group_homology_bar(&g, &[q(1), q(-1)], 3).dims, vec![0, 0, 0, 0]);
    }

    struct Product {
        a: ParaCyclicModule,
        b: ParaCyclicModule,
    }

    impl BiOperators for Product {
        fn dim(&self, p: usize, q: usize) -> usize {
            self.a.dim(p) * self.b.dim(q)
        }
        fn p_face(&self, p: usize, q: usize, i: usize) -> Mat {
            self.a.face(p, i).kron(&Mat::identity(self.b.dim(q)))
        }
        fn p_degeneracy(&self, p: usize, q: usize, i: usize) -> Mat {
            self.a.degeneracy(p, i).kron(&Mat::identity(self.b.dim(q)))
        }
        fn p_cyclic(&self, p: usize, q: usize) -> Mat {
            self.a.cyclic(p).kron(&Mat::identity(self.b.dim(q)))
        }
        fn q_face(&self, p: usize, q: usize, i: usize) -> Mat {
            Mat::identity(self.a.dim(p)).kron(&self.b.face(q, i))
        }
        fn q_degeneracy(&self, p: usize, q: usize, i: usize) -> Mat {
            Mat::identity(self.a.dim(p)).kron(&self.b.degeneracy(q, i))
        }
        fn q_cyclic(&self, p: usize, q: usize) -> Mat {
            Mat::identity(self.a.dim(p)).kron(&self.b.cyclic(q))
        }
    }

    #[test]
    fn tot_of_product_matches_diagonal() {
        let a = algebra_cyclic_module(&group_algebra(&FiniteGroup::cyclic(2)).algebra);
        let b = algebra_cyclic_module(&FiniteAlgebra::truncated_polynomial(2));
        let x = Arc::new(CylindricalModule::new("product", Box::new(Product { a, b })));
        let tot = tot_of_cylindrical(&x, 3, 2).unwrap();
        tot.verify_mixed().unwrap();
        let d = diagonal(x, 2).unwrap();
        assert_eq!(cyclic_homology_mixed(&tot, 2).dims, cyclic_homology_bicomplex(&d, 2).dims);
    }

    #[test]
    fn trivial_product_is_one_dimensional() {
        let a = algebra_cyclic_module(&FiniteAlgebra::scalars());
        let b = algebra_cyclic_module(&FiniteAlgebra::scalars());
        let x = Arc::new(CylindricalModule::new("pt×pt", Box::new(Product { a, b })));
        let tot = tot_of_cylindrical(&x, 1, 1).unwrap();
        assert_eq!(tot.dim(0), 1);
        tot.verify_mixed().unwrap();
    }
}
