use super::{CyclicError, Operators, Order, ParaCyclicModule, Variance};
use crate::exactla::{q, rank, Mat, SparseVec, Vector, Q};
use crate::hopfcore::tensor::operator;
use crate::hopfcore::{FiniteAlgebra, FiniteCoalgebra};

struct AlgebraOps {
    a: FiniteAlgebra,
    twist: Option<Mat>,
    basis: Vec<Vector>,
}

impl AlgebraOps {
    fn dims(&self, n: usize) -> Vec<usize> {
        vec![self.a.dim(); n + 1]
    }

    fn twisted(&self, i: usize) -> &Vector {
        match &self.twist {
            Some(g) => g.col(i),
            None => &self.basis[i],
        }
    }
}

impl Operators for AlgebraOps {
    fn dim(&self, n: usize) -> usize {
        self.a.dim().pow(n as u32 + 1)
    }

    fn face(&self, n: usize, i: usize) -> Mat {
        operator(&self.dims(n), &self.dims(n - 1), |t, s| {
            let mut legs: Vec<&Vector> = Vec::with_capacity(n);
            if i < n {
                let p = self.a.mul_basis(t[i], t[i + 1]);
                legs.extend(t[..i].iter().map(|&k| &self.basis[k]));
                legs.push(p);
                legs.extend(t[i + 2..].iter().map(|&k| &self.basis[k]));
                s.add_pure(&q(1), &legs);
            } else {
                let p = self.a.mul(self.twisted(t[n]), &self.basis[t[0]]);
                legs.push(&p);
                legs.extend(t[1..n].iter().map(|&k| &self.basis[k]));
                s.add_pure(&q(1), &legs);
            }
        })
    }

    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        operator(&self.dims(n), &self.dims(n + 1), |t, s| {
            let mut legs: Vec<&Vector> = t[..=i].iter().map(|&k| &self.basis[k]).collect();
            legs.push(self.a.unit());
            legs.extend(t[i + 1..].iter().map(|&k| &self.basis[k]));
            s.add_pure(&q(1), &legs);
        })
    }

    fn cyclic(&self, n: usize) -> Mat {
        operator(&self.dims(n), &self.dims(n), |t, s| {
            let mut legs: Vec<&Vector> = vec![self.twisted(t[n])];
            legs.extend(t[..n].iter().map(|&k| &self.basis[k]));
            s.add_pure(&q(1), &legs);
        })
    }
}

/// A♮: X_n = A^{⊗(n+1)} with the usual Hochschild faces and cyclic permutation.
pub fn algebra_cyclic_module(a: &FiniteAlgebra) -> ParaCyclicModule {
    let basis = (0..a.dim()).map(SparseVec::unit).collect();
    let ops = AlgebraOps { a: a.clone(), twist: None, basis };
    ParaCyclicModule::new("A♮", Variance::Cyclic, Order::Finite(1), Box::new(ops))
}

const ORDER_SEARCH_LIMIT: usize = 64;

/// A♮_g for an automorphism g: δ_n and τ apply g to the last factor before moving it to
/// the front. The order is the order of g when it is at most 64, otherwise ∞.
pub fn twisted_cyclic_module(a: &FiniteAlgebra, g: &Mat) -> Result<ParaCyclicModule, CyclicError> {
    if !a.is_automorphism(g) {
        return Err(CyclicError::NotAutomorphism);
    }
    let mut p = g.clone();
    let mut order = Order::Infinite;
    for r in 1..=ORDER_SEARCH_LIMIT {
        if p.is_identity() {
            order = Order::Finite(r);
            break;
        }
        p = p.mul(g);
    }
    let basis = (0..a.dim()).map(SparseVec::unit).collect();
    let ops = AlgebraOps { a: a.clone(), twist: Some(g.clone()), basis };
    Ok(ParaCyclicModule::new("A♮_g", Variance::Cyclic, order, Box::new(ops)))
}

struct CoalgebraOps {
    c: FiniteCoalgebra,
}

impl Operators for CoalgebraOps {
    fn dim(&self, n: usize) -> usize {
        self.c.dim().pow(n as u32 + 1)
    }

    /// δ_i: C^{⊗n} → C^{⊗(n+1)} (source degree n − 1).
    fn face(&self, n: usize, i: usize) -> Mat {
        let d = self.c.dim();
        let m = n - 1;
        operator(&vec![d; n], &vec![d; n + 1], |t, s| {
            let mut out = vec![0; n + 1];
            let k = if i <= m { i } else { 0 };
            for (jk, c) in self.c.comult_basis(t[k]).iter() {
                let (a, b) = (jk / d, jk % d);
                if i <= m {
                    out[..i].copy_from_slice(&t[..i]);
                    out[i] = a;
                    out[i + 1] = b;
                    out[i + 2..].copy_from_slice(&t[i + 1..]);
                } else {
                    out[0] = b;
                    out[1..=m].copy_from_slice(&t[1..]);
                    out[m + 1] = a;
                }
                s.add(&out, c.clone());
            }
        })
    }

    /// σ_i: C^{⊗(n+2)} → C^{⊗(n+1)}, ε on factor i + 1.
    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        let d = self.c.dim();
        operator(&vec![d; n + 2], &vec![d; n + 1], |t, s| {
            let e = &self.c.counit()[t[i + 1]];
            if !crate::exactla::Field::is_zero(e) {
                let out: Vec<usize> = t[..=i].iter().chain(&t[i + 2..]).copied().collect();
                s.add(&out, e.clone());
            }
        })
    }

    fn cyclic(&self, n: usize) -> Mat {
        let d = self.c.dim();
        operator(&vec![d; n + 1], &vec![d; n + 1], |t, s| {
            let out: Vec<usize> = t[1..].iter().chain(&t[..1]).copied().collect();
            s.add(&out, q(1));
        })
    }
}

/// C♮: X^n = C^{⊗(n+1)}, cofaces from Δ, codegeneracies from ε, τ moves c_0 to the end.
pub fn coalgebra_cocyclic_module(c: &FiniteCoalgebra) -> ParaCyclicModule {
    ParaCyclicModule::new("C♮", Variance::Cocyclic, Order::Finite(1), Box::new(CoalgebraOps { c: c.clone() }))
}

/// Chain complex truncated at `top()`; `boundary(n)`: C_n → C_{n−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundary: Vec<Mat>,
}

impl ChainComplex {
    /// `boundary[k]` is the map C_{k+1} → C_k.
    pub fn new(dims: Vec<usize>, boundary: Vec<Mat>) -> Self {
        assert_eq!(boundary.len() + 1, dims.len());
        for (k, b) in boundary.iter().enumerate() {
            assert_eq!((b.rows(), b.cols()), (dims[k], dims[k + 1]), "boundary {} shape", k + 1);
        }
        ChainComplex { dims, boundary }
    }

    /// Dualizes a cochain complex (`coboundary[k]`: C^k → C^{k+1}); homology of the
    /// result is the cohomology of the input.
    pub fn from_cochain(dims: Vec<usize>, coboundary: Vec<Mat>) -> Self {
        let boundary = coboundary.iter().map(|d| d.transpose()).collect();
        Self::new(dims, boundary)
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn boundary(&self, n: usize) -> Mat {
        if n == 0 {
            Mat::zeros(0, self.dims[0])
        } else {
            self.boundary[n - 1].clone()
        }
    }

    pub fn squares_to_zero(&self) -> bool {
        self.boundary.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// dim H_n for n < top (degree `top` lacks its incoming boundary).
    pub fn homology_dim(&self, n: usize) -> usize {
        assert!(n < self.top(), "degree {n} needs boundary {}", n + 1);
        let out = if n == 0 { 0 } else { rank(&self.boundary[n - 1]) };
        self.dims[n] - out - rank(&self.boundary[n])
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..self.top()).map(|n| self.homology_dim(n)).collect()
    }
}

/// A-bimodule on k^m: `left[i]`, `right[i]` are the actions of basis element i.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    pub dim: usize,
    pub left: Vec<Mat>,
    pub right: Vec<Mat>,
}

impl Bimodule {
    /// A acting on itself.
    pub fn regular(a: &FiniteAlgebra) -> Self {
        let d = a.dim();
        let left = (0..d).map(|i| a.left_mul_matrix(&SparseVec::unit(i))).collect();
        let right = (0..d).map(|i| a.right_mul_matrix(&SparseVec::unit(i))).collect();
        Bimodule { dim: d, left, right }
    }

    /// A with the right action twisted by an automorphism: m · a = m g(a).
    pub fn twisted_right(a: &FiniteAlgebra, g: &Mat) -> Self {
        let d = a.dim();
        let left = (0..d).map(|i| a.left_mul_matrix(&SparseVec::unit(i))).collect();
        let right = (0..d).map(|i| a.right_mul_matrix(g.col(i))).collect();
        Bimodule { dim: d, left, right }
    }

    fn action(ms: &[Mat], v: &Vector, dim: usize) -> Mat {
        v.iter().fold(Mat::zeros(dim, dim), |acc, (i, c)| acc.add_scaled(c, &ms[i]))
    }

    pub fn validate(&self, a: &FiniteAlgebra) -> Result<(), CyclicError> {
        let d = a.dim();
        let bad = |s: String| Err(CyclicError::InvalidBimodule(s));
        if self.left.len() != d || self.right.len() != d {
            return bad("one action matrix per basis element expected".into());
        }
        if self.left.iter().chain(&self.right).any(|m| m.rows() != self.dim || m.cols() != self.dim) {
            return bad("action matrix has wrong shape".into());
        }
        if !Self::action(&self.left, a.unit(), self.dim).is_identity()
            || !Self::action(&self.right, a.unit(), self.dim).is_identity()
        {
            return bad("unit does not act as the identity".into());
        }
        for i in 0..d {
            for j in 0..d {
                let p = a.mul_basis(i, j);
                if self.left[i].mul(&self.left[j]) != Self::action(&self.left, p, self.dim) {
                    return bad(format!("left action not multiplicative at ({i}, {j})"));
                }
                if self.right[j].mul(&self.right[i]) != Self::action(&self.right, p, self.dim) {
                    return bad(format!("right action not multiplicative at ({i}, {j})"));
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return bad(format!("actions do not commute at ({i}, {j})"));
                }
            }
        }
        Ok(())
    }
}

/// Hochschild complex C_n(A, M) = M ⊗ A^{⊗n}, n ≤ top, with b = Σ(−1)^i δ_i.
pub fn hochschild_coeff_complex(a: &FiniteAlgebra, m: &Bimodule, top: usize) -> Result<ChainComplex, CyclicError> {
    m.validate(a)?;
    let d = a.dim();
    let basis: Vec<Vector> = (0..d).map(SparseVec::unit).collect();
    let dims_of = |n: usize| -> Vec<usize> { std::iter::once(m.dim).chain(std::iter::repeat(d).take(n)).collect() };
    let dims: Vec<usize> = (0..=top).map(|n| m.dim * d.pow(n as u32)).collect();
    let boundary = (1..=top)
        .map(|n| {
            operator(&dims_of(n), &dims_of(n - 1), |t, s| {
                for i in 0..=n {
                    let sign = if i % 2 == 0 { q(1) } else { q(-1) };
                    let mut legs: Vec<&Vector> = Vec::with_capacity(n);
                    let owned;
                    if i == 0 {
                        owned = m.right[t[1]].col(t[0]).clone();
                        legs.push(&owned);
                        legs.extend(t[2..].iter().map(|&k| &basis[k]));
                    } else if i < n {
                        legs.extend(t[..i].iter().map(|&k| &basis[k]));
                        legs.push(a.mul_basis(t[i], t[i + 1]));
                        legs.extend(t[i + 2..].iter().map(|&k| &basis[k]));
                    } else {
                        owned = m.left[t[n]].col(t[0]).clone();
                        legs.push(&owned);
                        legs.extend(t[1..n].iter().map(|&k| &basis[k]));
                    }
                    s.add_pure(&sign, &legs);
                }
            })
        })
        .collect();
    Ok(ChainComplex::new(dims, boundary))
}

/// C-bicomodule on k^m. `left` is m ↦ m₍₋₁₎ ⊗ m₍₀₎ (index c·m + j), `right` is
/// m ↦ m₍₀₎ ⊗ m₍₁₎ (index j·d + c).
#[derive(Clone, Debug, PartialEq)]
pub struct Bicomodule {
    pub dim: usize,
    pub left: Mat,
    pub right: Mat,
}

impl Bicomodule {
    /// k with right coaction 1 ↦ 1 ⊗ g and left coaction 1 ↦ h ⊗ 1.
    pub fn grouplike_pair(c: &FiniteCoalgebra, g: &Vector, h: &Vector) -> Self {
        let d = c.dim();
        Bicomodule {
            dim: 1,
            left: Mat::from_columns(d, vec![h.clone()]),
            right: Mat::from_columns(d, vec![g.clone()]),
        }
    }

    pub fn validate(&self, c: &FiniteCoalgebra) -> Result<(), CyclicError> {
        let (d, m) = (c.dim(), self.dim);
        let bad = |s: &str| Err(CyclicError::InvalidBicomodule(s.to_string()));
        if self.left.rows() != d * m || self.right.rows() != m * d || self.left.cols() != m || self.right.cols() != m {
            return bad("coaction has wrong shape");
        }
        let delta = c.comult_matrix();
        let id_m = Mat::identity(m);
        let id_c = Mat::identity(d);
        let eps = Mat::from_columns(1, c.counit().iter().map(|e| SparseVec::from_dense(&[e.clone()])).collect());
        // right: (ρ ⊗ id)ρ = (id ⊗ Δ)ρ, (id ⊗ ε)ρ = id
        if self.right.kron(&id_c).mul(&self.right) != id_m.kron(&delta).mul(&self.right) {
            return bad("right coaction not coassociative");
        }
        if id_m.kron(&eps).mul(&self.right) != id_m {
            return bad("right coaction not counital");
        }
        if id_c.kron(&self.left).mul(&self.left) != delta.kron(&id_m).mul(&self.left) {
            return bad("left coaction not coassociative");
        }
        if eps.kron(&id_m).mul(&self.left) != id_m {
            return bad("left coaction not counital");
        }
        if id_c.kron(&self.right).mul(&self.left) != self.left.kron(&id_c).mul(&self.right) {
            return bad("coactions do not commute");
        }
        Ok(())
    }
}

/// Cochain complex C^n(C, M) = M ⊗ C^{⊗n}, n ≤ top, returned dualized (homology of the
/// result is the Hochschild cohomology of C with coefficients in M).
pub fn coalgebra_coeff_complex(c: &FiniteCoalgebra, m: &Bicomodule, top: usize) -> Result<ChainComplex, CyclicError> {
    m.validate(c)?;
    let (d, md) = (c.dim(), m.dim);
    let dims_of = |n: usize| -> Vec<usize> { std::iter::once(md).chain(std::iter::repeat(d).take(n)).collect() };
    let dims: Vec<usize> = (0..=top).map(|n| md * d.pow(n as u32)).collect();
    let cob = (0..top)
        .map(|n| {
            operator(&dims_of(n), &dims_of(n + 1), |t, s| {
                let mut out = vec![0; n + 2];
                for (k, v) in m.right.col(t[0]).iter() {
                    out[0] = k / d;
                    out[1] = k % d;
                    out[2..].copy_from_slice(&t[1..]);
                    s.add(&out, v.clone());
                }
                for i in 1..=n {
                    let sign: Q = if i % 2 == 0 { q(1) } else { q(-1) };
                    for (jk, v) in c.comult_basis(t[i]).iter() {
                        out[..i].copy_from_slice(&t[..i]);
                        out[i] = jk / d;
                        out[i + 1] = jk % d;
                        out[i + 2..].copy_from_slice(&t[i + 1..]);
                        s.add(&out, &sign * v);
                    }
                }
                let sign: Q = if (n + 1) % 2 == 0 { q(1) } else { q(-1) };
                for (k, v) in m.left.col(t[0]).iter() {
                    out[0] = k % md;
                    out[1..=n].copy_from_slice(&t[1..]);
                    out[n + 1] = k / md;
                    s.add(&out, &sign * v);
                }
            })
        })
        .collect();
    Ok(ChainComplex::from_cochain(dims, cob))
}

#[cfg(test)]
mod tests {
    use super::super::check_cyclic_axioms;
    use super::*;
    use crate::hopfcore::{function_algebra, group_algebra, sweedler_h4, FiniteGroup};

    #[test]
    fn algebra_cyclic_axioms_hold() {
        for a in [
            group_algebra(&FiniteGroup::cyclic(2)).algebra,
            sweedler_h4().algebra,
            FiniteAlgebra::matrix_algebra(2),
            function_algebra(&FiniteGroup::cyclic(3)).algebra,
        ] {
            let x = algebra_cyclic_module(&a);
            let rep = check_cyclic_axioms(&x, 3);
            assert!(rep.all_pass(), "{rep}");
        }
    }

    #[test]
    fn coalgebra_cocyclic_axioms_hold() {
        for h in [sweedler_h4(), function_algebra(&FiniteGroup::symmetric3())] {
            let x = coalgebra_cocyclic_module(&h.coalgebra);
            let rep = check_cyclic_axioms(&x, 3);
            assert!(rep.all_pass(), "{rep}");
        }
    }

    #[test]
    fn twisted_module_of_h4_conjugation() {
        let h = sweedler_h4();
        // conjugation by g: x ↦ −x, gx ↦ −gx
        let g = Mat::from_columns(
            4,
            vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::single(2, q(-1)), SparseVec::single(3, q(-1))],
        );
        let x = twisted_cyclic_module(&h.algebra, &g).unwrap();
        assert_eq!(x.order(), Order::Finite(2));
        assert!(check_cyclic_axioms(&x, 3).all_pass());
        // the cyclic power is g^{⊗(n+1)}, not the identity
        assert!(!x.cyclic(1).pow(2).is_identity());
    }

    #[test]
    fn non_automorphism_rejected() {
        let a = FiniteAlgebra::truncated_polynomial(2);
        let g = Mat::from_columns(2, vec![SparseVec::unit(0), SparseVec::single(1, q(2))]);
        assert!(twisted_cyclic_module(&a, &g).is_ok());
        let bad = Mat::from_columns(2, vec![SparseVec::unit(1), SparseVec::unit(0)]);
        assert_eq!(twisted_cyclic_module(&a, &bad).unwrap_err(), CyclicError::NotAutomorphism);
        // k[x]/x² with x ↦ 2x has infinite order
        assert_eq!(twisted_cyclic_module(&a, &g).unwrap().order(), Order::Infinite);
    }

    #[test]
    fn broken_cyclic_operator_is_detected() {
        let a = group_algebra(&FiniteGroup::symmetric3()).algebra;
        let x = std::sync::Arc::new(algebra_cyclic_module(&a));
        let y = super::super::with_cyclic_operator(x.clone(), "broken", move |n| {
            let t = x.raw_cyclic(n);
            if n == 2 {
                t.scale(&q(-1))
            } else {
                (*t).clone()
            }
        });
        let rep = check_cyclic_axioms(&y, 3);
        assert!(!rep.all_pass());
        let (_, deg, _) = rep.first_failure().unwrap();
        assert!(deg >= 2);
    }

    #[test]
    fn hochschild_of_truncated_polynomial() {
        // k[x]/x², char 0: HH_n is 2 in degree 0 and 1 in every positive degree
        let a = FiniteAlgebra::truncated_polynomial(2);
        let c = hochschild_coeff_complex(&a, &Bimodule::regular(&a), 5).unwrap();
        assert!(c.squares_to_zero());
        assert_eq!(c.homology_dims(), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn hochschild_of_matrix_algebra_is_k() {
        let a = FiniteAlgebra::matrix_algebra(2);
        let c = hochschild_coeff_complex(&a, &Bimodule::regular(&a), 3).unwrap();
        assert_eq!(c.homology_dims(), vec![1, 0, 0]);
    }

    #[test]
    fn bimodule_validation_catches_noncommuting_actions() {
        let a = FiniteAlgebra::truncated_polynomial(2);
        let mut m = Bimodule::regular(&a);
        m.right[1] = Mat::identity(2);
        assert!(matches!(m.validate(&a), Err(CyclicError::InvalidBimodule(_))));
    }

    #[test]
    fn coalgebra_complex_with_trivial_grouplikes() {
        // kG coalgebra with coefficients k (g = h = 1): C^n ≅ k^{|G|^n}
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let one = SparseVec::unit(0);
        let m = Bicomodule::grouplike_pair(&h.coalgebra, &one, &one);
        let c = coalgebra_coeff_complex(&h.coalgebra, &m, 4).unwrap();
        assert!(c.squares_to_zero());
        // kG is cosemisimple: cohomology is k in degree 0 only
        assert_eq!(c.homology_dims(), vec![1, 0, 0, 0]);
    }
}
