use super::{Family, FiniteAlgebra, FiniteCoalgebra, FiniteGroup, HopfAlgebraData};
use crate::exactla::{q, Mat, SparseVec, Vector, Q};

/// kG: Δg = g ⊗ g, ε(g) = 1, S(g) = g⁻¹.
pub fn group_algebra(g: &FiniteGroup) -> HopfAlgebraData {
    let n = g.order();
    let labels = g.labels().to_vec();
    let mult = (0..n * n).map(|t| SparseVec::unit(g.mul(t / n, t % n))).collect();
    let algebra = FiniteAlgebra::new(labels.clone(), mult, SparseVec::unit(g.identity())).unwrap();
    let comult = (0..n).map(|i| SparseVec::unit(i * n + i)).collect();
    let coalgebra = FiniteCoalgebra::new(labels, comult, vec![q(1); n]).unwrap();
    let antipode = Mat::from_fn(n, n, |i| SparseVec::unit(g.inv(i)));
    HopfAlgebraData::new(format!("kG(order {n})"), Family::Group(g.clone()), algebra, coalgebra, antipode).unwrap()
}

/// k^G on indicator functions: e_g e_h = [g = h] e_g, Δ(e_g) = Σ_{ab = g} e_a ⊗ e_b.
pub fn function_algebra(g: &FiniteGroup) -> HopfAlgebraData {
    let n = g.order();
    let labels: Vec<String> = g.labels().iter().map(|l| format!("δ_{l}")).collect();
    let mult = (0..n * n)
        .map(|t| if t / n == t % n { SparseVec::unit(t / n) } else { SparseVec::new() })
        .collect();
    let unit = SparseVec::from_pairs((0..n).map(|i| (i, q(1))));
    let algebra = FiniteAlgebra::new(labels.clone(), mult, unit).unwrap();
    let comult = (0..n)
        .map(|x| {
            SparseVec::from_pairs((0..n).map(|a| {
                let b = g.mul(g.inv(a), x);
                (a * n + b, q(1))
            }))
        })
        .collect();
    let counit = (0..n).map(|i| if i == g.identity() { q(1) } else { q(0) }).collect();
    let coalgebra = FiniteCoalgebra::new(labels, comult, counit).unwrap();
    let antipode = Mat::from_fn(n, n, |i| SparseVec::unit(g.inv(i)));
    HopfAlgebraData::new(format!("k^G(order {n})"), Family::Function(g.clone()), algebra, coalgebra, antipode)
        .unwrap()
}

/// Sweedler's four-dimensional Hopf algebra on the basis 1, g, x, gx.
pub fn sweedler_h4() -> HopfAlgebraData {
    let labels: Vec<String> = ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect();
    let e = |i: usize| SparseVec::unit(i);
    let neg = |i: usize| SparseVec::single(i, q(-1));
    let z = SparseVec::new;
    // rows: left factor 1, g, x, gx; columns: right factor
    let mult: Vec<Vector> = vec![
        e(0), e(1), e(2), e(3),
        e(1), e(0), e(3), e(2),
        e(2), neg(3), z(), z(),
        e(3), neg(2), z(), z(),
    ];
    let algebra = FiniteAlgebra::new(labels.clone(), mult, e(0)).unwrap();
    let t = |pairs: &[(usize, usize, i64)]| SparseVec::from_pairs(pairs.iter().map(|&(a, b, c)| (a * 4 + b, q(c))));
    let comult = vec![
        t(&[(0, 0, 1)]),
        t(&[(1, 1, 1)]),
        t(&[(2, 0, 1), (1, 2, 1)]),
        t(&[(3, 1, 1), (0, 3, 1)]),
    ];
    let coalgebra = FiniteCoalgebra::new(labels, comult, vec![q(1), q(1), q(0), q(0)]).unwrap();
    let antipode = Mat::from_columns(4, vec![e(0), e(1), neg(3), e(2)]);
    HopfAlgebraData::new("H4", Family::SweedlerH4, algebra, coalgebra, antipode).unwrap()
}

/// Linear dual H* on the dual basis: every structure tensor transposed.
pub fn dual_hopf(h: &HopfAlgebraData) -> HopfAlgebraData {
    let d = h.dim();
    let labels: Vec<String> = h.labels().iter().map(|l| format!("{l}*")).collect();
    // e^j e^k = Σ_i Δ_i^{jk} e^i
    let mut mult_pairs: Vec<Vec<(usize, Q)>> = vec![Vec::new(); d * d];
    for i in 0..d {
        for (jk, c) in h.coalgebra.comult_basis(i).iter() {
            mult_pairs[jk].push((i, c.clone()));
        }
    }
    let mult = mult_pairs.into_iter().map(SparseVec::from_pairs).collect();
    let unit = SparseVec::from_dense(h.coalgebra.counit());
    let algebra = FiniteAlgebra::new(labels.clone(), mult, unit).unwrap();
    // Δ(e^k) = Σ_{ij} m^k_{ij} e^i ⊗ e^j
    let mut comult_pairs: Vec<Vec<(usize, Q)>> = vec![Vec::new(); d];
    for ij in 0..d * d {
        for (k, c) in h.algebra.mul_basis(ij / d, ij % d).iter() {
            comult_pairs[k].push((ij, c.clone()));
        }
    }
    let comult = comult_pairs.into_iter().map(SparseVec::from_pairs).collect();
    let counit = h.unit().to_dense(d);
    let coalgebra = FiniteCoalgebra::new(labels, comult, counit).unwrap();
    let family = match &h.family {
        super::Family::Dual(inner) => (**inner).clone(),
        f => Family::Dual(Box::new(f.clone())),
    };
    HopfAlgebraData::new(format!("{}*", h.name), family, algebra, coalgebra, h.antipode().transpose()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtins() -> Vec<HopfAlgebraData> {
        let groups = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()];
        let mut out: Vec<HopfAlgebraData> = groups.iter().map(group_algebra).collect();
        out.extend(groups.iter().map(function_algebra));
        out.push(sweedler_h4());
        out
    }

    #[test]
    fn all_builtins_validate() {
        for h in builtins() {
            h.validate().unwrap_or_else(|e| panic!("{}: {e}", h.name));
            dual_hopf(&h).validate().unwrap_or_else(|e| panic!("dual {}: {e}", h.name));
        }
    }

    #[test]
    fn group_algebra_antipode_squares_to_identity() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(h.dim(), 2);
        assert!(h.antipode().is_identity());
        let s3 = group_algebra(&FiniteGroup::symmetric3());
        assert!(s3.antipode().mul(s3.antipode()).is_identity());
        assert!(s3.is_cocommutative() && !s3.is_commutative());
    }

    #[test]
    fn h4_antipode_has_order_four() {
        let h = sweedler_h4();
        let s2 = h.antipode().mul(h.antipode());
        assert_eq!(s2.col(2), &SparseVec::single(2, q(-1)));
        assert!(!s2.is_identity());
        assert!(s2.mul(&s2).is_identity());
    }

    #[test]
    fn dual_of_group_algebra_is_function_algebra() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric3()] {
            let d = dual_hopf(&group_algebra(&g));
            let f = function_algebra(&g);
            assert_eq!(d.algebra.dim(), f.algebra.dim());
            for i in 0..d.dim() {
                for j in 0..d.dim() {
                    assert_eq!(d.algebra.mul_basis(i, j), f.algebra.mul_basis(i, j));
                }
                assert_eq!(d.coalgebra.comult_basis(i), f.coalgebra.comult_basis(i));
            }
            assert_eq!(d.unit(), f.unit());
            assert_eq!(d.coalgebra.counit(), f.coalgebra.counit());
            assert_eq!(d.antipode(), f.antipode());
        }
    }

    #[test]
    fn double_dual_is_original() {
        for h in builtins() {
            let dd = dual_hopf(&dual_hopf(&h));
            assert_eq!(dd.algebra.dim(), h.dim());
            for i in 0..h.dim() {
                for j in 0..h.dim() {
                    assert_eq!(dd.algebra.mul_basis(i, j), h.algebra.mul_basis(i, j));
                }
                assert_eq!(dd.coalgebra.comult_basis(i), h.coalgebra.comult_basis(i));
            }
            assert_eq!(dd.antipode(), h.antipode());
            assert_eq!(dd.family, h.family);
        }
    }

    #[test]
    fn function_algebra_of_s3_is_not_cocommutative() {
        let f = function_algebra(&FiniteGroup::symmetric3());
        assert!(f.is_commutative());
        assert!(!f.is_cocommutative());
        assert!(function_algebra(&FiniteGroup::cyclic(2)).is_cocommutative());
    }
}
