use super::HopfCycError;
use crate::cyclicfw::{algebra_cyclic_module, ParaCyclicModule};
use crate::exactla::{q, Field, Mat, SparseVec, Vector, Q};
use crate::hopfcore::tensor::{decode, encode, size};
use crate::hopfcore::{group_algebra, FiniteAlgebra, FiniteGroup};
use crate::homengine::boundary_b;

/// A cochain on A^{⊗(n+1)} with its cyclic-cocycle verdict.
#[derive(Clone, Debug)]
pub struct CocycleReport {
    pub degree: usize,
    pub cochain: Vector,
    /// First basis tensor of degree n+1 where φ∘b does not vanish.
    pub coboundary_witness: Option<(Vec<usize>, Q)>,
    /// First basis tensor where φ∘τ ≠ (−1)^n φ.
    pub cyclic_witness: Option<(Vec<usize>, Q)>,
}

impl CocycleReport {
    pub fn holds(&self) -> bool {
        self.coboundary_witness.is_none() && self.cyclic_witness.is_none()
    }

    fn evaluate(x: &ParaCyclicModule, basis_dim: usize, n: usize, cochain: Vector) -> Self {
        let b = boundary_b(x, n + 1);
        let dims = vec![basis_dim; n + 2];
        let coboundary_witness = (0..b.cols()).find_map(|j| {
            let v = cochain.dot(b.col(j));
            (!Field::is_zero(&v)).then(|| (decode(j, &dims), v))
        });
        let t = x.cyclic(n);
        let sign = if n % 2 == 0 { q(1) } else { q(-1) };
        let dims = vec![basis_dim; n + 1];
        let cyclic_witness = (0..t.cols()).find_map(|j| {
            let v = cochain.dot(t.col(j)) - &sign * cochain.get(j);
            (!Field::is_zero(&v)).then(|| (decode(j, &dims), v))
        });
        CocycleReport { degree: n, cochain, coboundary_witness, cyclic_witness }
    }
}

fn check_derivation(a: &FiniteAlgebra, d: &Mat, name: &str) -> Result<(), HopfCycError> {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return Err(HopfCycError::Shape(format!("{name} is not dim(A) × dim(A)")));
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = d.apply(a.mul_basis(x, y));
            let rhs = a.mul(d.col(x), &SparseVec::unit(y)).add(&a.mul(&SparseVec::unit(x), d.col(y)));
            if lhs != rhs {
                return Err(HopfCycError::NotDerivation(format!("{name}(e_{x}e_{y}) ≠ {name}(e_{x})e_{y} + e_{x}{name}(e_{y})")));
            }
        }
    }
    Ok(())
}

/// φ(a₀,a₁,a₂) = tr(a₀(d₁(a₁)d₂(a₂) − d₂(a₁)d₁(a₂))) for commuting derivations and a
/// d-invariant trace.
pub fn connes_2cocycle(a: &FiniteAlgebra, d1: &Mat, d2: &Mat, tr: &[Q]) -> Result<CocycleReport, HopfCycError> {
    let n = a.dim();
    if tr.len() != n {
        return Err(HopfCycError::Shape("trace length ≠ dim A".into()));
    }
    check_derivation(a, d1, "d1")?;
    check_derivation(a, d2, "d2")?;
    if d1.mul(d2) != d2.mul(d1) {
        return Err(HopfCycError::DerivationsDoNotCommute);
    }
    let trv = SparseVec::from_dense(tr);
    for x in 0..n {
        for y in 0..n {
            if trv.dot(a.mul_basis(x, y)) != trv.dot(a.mul_basis(y, x)) {
                return Err(HopfCycError::NotInvariantTrace(format!("tr(e_{x}e_{y}) ≠ tr(e_{y}e_{x})")));
            }
        }
        for (d, name) in [(d1, "d1"), (d2, "d2")] {
            if !Field::is_zero(&trv.dot(d.col(x))) {
                return Err(HopfCycError::NotInvariantTrace(format!("tr({name}(e_{x})) ≠ 0")));
            }
        }
    }
    let dims = [n, n, n];
    let mut pairs = Vec::new();
    for idx in 0..size(&dims) {
        let t = decode(idx, &dims);
        let a0 = SparseVec::unit(t[0]);
        let m = a.mul(d1.col(t[1]), d2.col(t[2])).sub(&a.mul(d2.col(t[1]), d1.col(t[2])));
        let v = trv.dot(&a.mul(&a0, &m));
        if !Field::is_zero(&v) {
            pairs.push((idx, v));
        }
    }
    let x = algebra_cyclic_module(a);
    Ok(CocycleReport::evaluate(&x, n, 2, SparseVec::from_pairs(pairs)))
}

/// Validates that `c` (indexed by G^n tuples) is a normalized group n-cocycle with trivial
/// coefficients.
pub fn validate_group_cocycle(g: &FiniteGroup, n: usize, c: &[Q]) -> Result<(), HopfCycError> {
    let k = g.order();
    let dims = vec![k; n];
    if c.len() != size(&dims) {
        return Err(HopfCycError::Shape(format!("expected {} values, got {}", size(&dims), c.len())));
    }
    let e = g.identity();
    for idx in 0..c.len() {
        let t = decode(idx, &dims);
        if t.contains(&e) && !Field::is_zero(&c[idx]) {
            return Err(HopfCycError::NotACocycle(format!("not normalized at {t:?}")));
        }
    }
    let dims1 = vec![k; n + 1];
    for idx in 0..size(&dims1) {
        let t = decode(idx, &dims1);
        let mut s = c[encode(&t[1..], &dims)].clone();
        for i in 0..n {
            let mut u: Vec<usize> = t[..i].to_vec();
            u.push(g.mul(t[i], t[i + 1]));
            u.extend_from_slice(&t[i + 2..]);
            let v = &c[encode(&u, &dims)];
            if i % 2 == 0 {
                s -= v;
            } else {
                s += v;
            }
        }
        let last = &c[encode(&t[..n], &dims)];
        if n % 2 == 0 {
            s -= last;
        } else {
            s += last;
        }
        if !Field::is_zero(&s) {
            return Err(HopfCycError::NotACocycle(format!("δc ≠ 0 at {t:?}")));
        }
    }
    Ok(())
}

/// φ(g₀,…,g_n) = c(g₁,…,g_n) when g₀g₁⋯g_n = e, else 0, as a cochain on kG.
pub fn group_cocycle_to_cyclic(g: &FiniteGroup, n: usize, c: &[Q]) -> Result<CocycleReport, HopfCycError> {
    validate_group_cocycle(g, n, c)?;
    let k = g.order();
    let dims = vec![k; n];
    let dims1 = vec![k; n + 1];
    let e = g.identity();
    let pairs = (0..size(&dims1)).filter_map(|idx| {
        let t = decode(idx, &dims1);
        let prod = t.iter().fold(e, |acc, &x| g.mul(acc, x));
        let v = &c[encode(&t[1..], &dims)];
        (prod == e && !Field::is_zero(v)).then(|| (idx, v.clone()))
    });
    let cochain = SparseVec::from_pairs(pairs);
    let x = algebra_cyclic_module(&group_algebra(g).algebra);
    Ok(CocycleReport::evaluate(&x, k, n, cochain))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(a: &FiniteAlgebra, d: &[i64]) -> Vector {
        let k = d.len();
        let v = SparseVec::from_pairs(d.iter().enumerate().map(|(i, &x)| (i * k + i, q(x))));
        assert_eq!(a.dim(), k * k);
        v
    }

    fn ad(a: &FiniteAlgebra, u: &Vector) -> Mat {
        a.left_mul_matrix(u).sub(&a.right_mul_matrix(u))
    }

    #[test]
    fn matrix_algebra_cocycle() {
        let a = FiniteAlgebra::matrix_algebra(3);
        let (u, v) = (diag(&a, &[1, 2, 0]), diag(&a, &[0, 1, 5]));
        let tr: Vec<Q> = (0..9).map(|i| if i % 4 == 0 { q(1) } else { q(0) }).collect();
        let r = connes_2cocycle(&a, &ad(&a, &u), &ad(&a, &v), &tr).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(!r.cochain.is_zero());
        let same = connes_2cocycle(&a, &ad(&a, &u), &ad(&a, &u), &tr).unwrap();
        assert!(same.cochain.is_zero());
    }

    #[test]
    fn noncommuting_derivations_rejected() {
        let a = FiniteAlgebra::matrix_algebra(2);
        let u = diag(&a, &[1, 0]);
        let v = SparseVec::unit(1);
        let tr = vec![q(1), q(0), q(0), q(1)];
        let r = connes_2cocycle(&a, &ad(&a, &u), &ad(&a, &v), &tr);
        assert!(matches!(r, Err(HopfCycError::DerivationsDoNotCommute)));
    }

    #[test]
    fn non_trace_rejected() {
        let a = FiniteAlgebra::matrix_algebra(2);
        let u = diag(&a, &[1, 0]);
        let tr = vec![q(1), q(1), q(0), q(0)];
        let r = connes_2cocycle(&a, &ad(&a, &u), &ad(&a, &u), &tr);
        assert!(matches!(r, Err(HopfCycError::NotInvariantTrace(_))));
    }

    #[test]
    fn degree_zero_group_cocycle_is_trace() {
        let g = FiniteGroup::cyclic(2);
        let r = group_cocycle_to_cyclic(&g, 0, &[q(1)]).unwrap();
        assert!(r.holds());
        assert_eq!(r.cochain, SparseVec::unit(g.identity()));
    }

    fn coboundary(g: &FiniteGroup, f: &[Q]) -> Vec<Q> {
        let k = g.order();
        (0..k * k).map(|i| {
            let (x, y) = (i / k, i % k);
            &f[y] - &f[g.mul(x, y)] + &f[x]
        }).collect()
    }

    #[test]
    fn klein_coboundary_is_hochschild_but_not_cyclic() {
        let g = FiniteGroup::klein();
        let f = [q(0), q(3), q(-2), q(7)];
        assert!(Field::is_zero(&f[g.identity()]));
        let c = coboundary(&g, &f);
        let r = group_cocycle_to_cyclic(&g, 2, &c).unwrap();
        assert!(r.coboundary_witness.is_none());
        let (t, v) = r.cyclic_witness.clone().unwrap();
        assert_eq!((t, v), (vec![0, 1, 1], q(-6)));
        let mut bad = c.clone();
        bad[5] += q(1);
        assert!(matches!(group_cocycle_to_cyclic(&g, 2, &bad), Err(HopfCycError::NotACocycle(_))));
    }

    #[test]
    fn odd_coboundary_on_z3_is_cyclic() {
        let g = FiniteGroup::cyclic(3);
        let mut f = vec![q(0); 3];
        f[1] = q(2);
        f[g.inv(1)] = q(-2);
        let r = group_cocycle_to_cyclic(&g, 2, &coboundary(&g, &f)).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(!r.cochain.is_zero());
    }
}
