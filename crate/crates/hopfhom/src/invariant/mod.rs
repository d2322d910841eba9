//! Invariant cyclic homology of Hopf triples (A, H, M) and invariant cyclic cohomology of
//! Hopf cotriples (C, H, V).

mod cotriple;

pub use cotriple::{cm_cotriple_compare, cotriple_cocyclic, cotriple_paracocyclic, trivial_cotriple_matches, HopfCotriple};

use std::sync::Arc;

use thiserror::Error;

use crate::cyclicfw::{
    algebra_cyclic_module, check_morphism, sub_module, AxiomReport, BasisFamily, CyclicError, Operators, Order,
    ParaCyclicModule, Variance,
};
use crate::exactla::{kernel_basis, q, rank, Field, Mat, SparseVec, SubspaceBasis, Vector, Q};
use crate::homengine::cyclic_homology_lambda;
use crate::hopfcore::tensor::{decode, encode, operator, size, Sink};
use crate::hopfcore::{
    find_haar_integral, group_algebra, Character, FiniteAlgebra, FiniteGroup, Grouplike, HopfAlgebraData,
};
use crate::hopfcyc::{kr_cyclic, ComoduleAlgebraCoaction, DimComparison, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("invalid Hopf triple: {0}")]
    InvalidTriple(String),
    #[error("invalid Hopf cotriple: {0}")]
    InvalidCotriple(String),
    #[error("not a matched pair in involution: {0}")]
    NotMatchedInInvolution(String),
    #[error("not a comatched pair in involution: {0}")]
    NotComatchedInInvolution(String),
    #[error(transparent)]
    Cyclic(#[from] CyclicError),
    #[error("{0}")]
    Hopf(String),
}

/// Left H-module structure on M: `action[i]` is the matrix of m ↦ h_i m.
pub fn validate_module(h: &HopfAlgebraData, action: &[Mat], dim: usize) -> Result<(), String> {
    if action.len() != h.dim() || action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        return Err("one dim(M) × dim(M) matrix per basis element of H expected".into());
    }
    let act = |v: &Vector| v.iter().fold(Mat::zeros(dim, dim), |acc, (i, c)| acc.add_scaled(c, &action[i]));
    if !act(h.unit()).is_identity() {
        return Err("1 does not act as the identity".into());
    }
    for i in 0..h.dim() {
        for j in 0..h.dim() {
            if act(h.algebra.mul_basis(i, j)) != action[i].mul(&action[j]) {
                return Err(format!("(h_{i}h_{j})m ≠ h_{i}(h_{j}m)"));
            }
        }
    }
    Ok(())
}

/// k_δ: h·1 = δ(h).
pub fn character_module(delta: &Character) -> Vec<Mat> {
    delta.values.iter().map(|v| Mat::from_columns(1, vec![SparseVec::from_pairs([(0, v.clone())])])).collect()
}

/// (A, H, M) with a left H-comodule algebra A, a left H-module M and a grouplike σ.
#[derive(Clone, Debug)]
pub struct HopfTriple {
    pub coaction: ComoduleAlgebraCoaction,
    pub module_dim: usize,
    module: Vec<Mat>,
    pub sigma: Grouplike,
}

impl HopfTriple {
    pub fn new(
        coaction: ComoduleAlgebraCoaction,
        module_dim: usize,
        module: Vec<Mat>,
        sigma: Grouplike,
    ) -> Result<Self, InvariantError> {
        if coaction.side != Side::Left {
            return Err(InvariantError::InvalidTriple("A must be a left comodule algebra".into()));
        }
        validate_module(&coaction.hopf, &module, module_dim).map_err(InvariantError::InvalidTriple)?;
        if sigma.vector.max_index().map_or(false, |i| i >= coaction.hopf.dim()) {
            return Err(InvariantError::InvalidTriple("σ is not an element of H".into()));
        }
        Ok(HopfTriple { coaction, module_dim, module, sigma })
    }

    /// (A, k, k).
    pub fn trivial(a: FiniteAlgebra) -> Self {
        let k = group_algebra(&FiniteGroup::trivial());
        let d = a.dim();
        let co = ComoduleAlgebraCoaction::new(k.clone(), a, Side::Left, Mat::identity(d)).expect("trivial coaction");
        HopfTriple { coaction: co, module_dim: 1, module: vec![Mat::identity(1)], sigma: Grouplike::one(&k) }
    }

    /// (H, H, k_δ) with H coacting on itself by Δ.
    pub fn hopf(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> Self {
        HopfTriple {
            coaction: ComoduleAlgebraCoaction::regular(h, Side::Left),
            module_dim: 1,
            module: character_module(delta),
            sigma: sigma.clone(),
        }
    }

    pub fn hopf_algebra(&self) -> &HopfAlgebraData {
        &self.coaction.hopf
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.coaction.algebra
    }

    pub fn act(&self, h: usize, m: usize) -> &Vector {
        self.module[h].col(m)
    }

    pub fn module(&self) -> &[Mat] {
        &self.module
    }

    fn dims(&self, n: usize) -> Vec<usize> {
        std::iter::once(self.module_dim).chain(std::iter::repeat(self.algebra().dim()).take(n + 1)).collect()
    }

    /// σm = m for every m, and Ŝ² = id on M ⊗ H where Ŝ(m⊗h) = h⁽²⁾m ⊗ σS(h⁽¹⁾).
    pub fn matched_in_involution(&self) -> Result<(), String> {
        let h = self.hopf_algebra();
        let sm = self.sigma.vector.iter().fold(Mat::zeros(self.module_dim, self.module_dim), |acc, (i, c)| {
            acc.add_scaled(c, &self.module[i])
        });
        if !sm.is_identity() {
            return Err("σ does not act trivially on M".into());
        }
        let s_hat = self.twisted_antipode();
        let sq = s_hat.mul(&s_hat);
        if let Some(w) = sq.first_mismatch(&Mat::identity(sq.rows())) {
            let dims = [self.module_dim, h.dim()];
            return Err(format!("Ŝ² ≠ id on basis tensor {:?}", decode(w.col, &dims)));
        }
        Ok(())
    }

    /// Ŝ on M ⊗ H.
    pub fn twisted_antipode(&self) -> Mat {
        let h = self.hopf_algebra();
        let d = h.dim();
        let dims = [self.module_dim, d];
        operator(&dims, &dims, |t, s| {
            for (jk, c) in h.coalgebra.comult_basis(t[1]).iter() {
                let first = h.mul(&self.sigma.vector, &h.s(&SparseVec::unit(jk / d)));
                s.add_pure(c, &[self.act(jk % d, t[0]), &first]);
            }
        })
    }

    /// ρ: C_n(A, M) → H ⊗ C_n(A, M), m⊗a_0⊗…⊗a_n ↦ a_0⁽⁻¹⁾⋯a_n⁽⁻¹⁾ ⊗ m⊗a_0⁽⁰⁾⊗…⊗a_n⁽⁰⁾.
    pub fn chain_coaction(&self, n: usize) -> Mat {
        let h = self.hopf_algebra();
        let src = self.dims(n);
        let tgt: Vec<usize> = std::iter::once(h.dim()).chain(src.iter().copied()).collect();
        operator(&src, &tgt, |t, s| {
            let mut out = vec![0; n + 3];
            out[1] = t[0];
            self.expand(t, 1, h.unit().clone(), q(1), &mut out, s);
        })
    }

    fn expand(&self, t: &[usize], k: usize, prod: Vector, coef: Q, out: &mut Vec<usize>, s: &mut Sink<'_>) {
        if k == t.len() {
            for (i, c) in prod.iter() {
                out[0] = i;
                s.add(out, &coef * c);
            }
            return;
        }
        for (hh, a0, c) in self.coaction.terms(t[k]) {
            let p = self.hopf_algebra().mul(&prod, &SparseVec::unit(hh));
            if p.is_zero() {
                continue;
            }
            out[k + 1] = a0;
            self.expand(t, k + 1, p, &coef * c, out, s);
        }
    }

    /// Basis of the σ-coinvariants {x | ρ(x) = σ ⊗ x} in degree n.
    pub fn coinvariants(&self, n: usize) -> SubspaceBasis {
        let d = size(&self.dims(n));
        let rho = self.chain_coaction(n);
        let sig = Mat::from_columns(self.hopf_algebra().dim(), vec![self.sigma.vector.clone()]);
        kernel_basis(&rho.sub(&sig.kron(&Mat::identity(d))))
    }

    /// dim of the coinvariants via the averaging idempotent x ↦ ∫(σ⁻¹x⁽⁻¹⁾)x⁽⁰⁾, when H
    /// has a normalized Haar integral.
    pub fn coinvariant_dim_by_averaging(&self, n: usize) -> Option<usize> {
        let h = self.hopf_algebra();
        let integral = find_haar_integral(h)?;
        let sinv = self.sigma.inverse(h);
        let row: Vec<Q> = (0..h.dim())
            .map(|i| h.mul(&sinv, &SparseVec::unit(i)).iter().fold(q(0), |acc, (j, c)| acc + c * &integral[j]))
            .collect();
        let functional = Mat::from_fn(1, h.dim(), |i| SparseVec::from_pairs([(0, row[i].clone())]));
        let d = size(&self.dims(n));
        let e = functional.kron(&Mat::identity(d)).mul(&self.chain_coaction(n));
        Some(rank(&e))
    }
}

struct TripleOps {
    t: HopfTriple,
}

impl Operators for TripleOps {
    fn dim(&self, n: usize) -> usize {
        size(&self.t.dims(n))
    }

    fn face(&self, n: usize, i: usize) -> Mat {
        let a = self.t.algebra();
        operator(&self.t.dims(n), &self.t.dims(n - 1), |t, s| {
            let m = SparseVec::unit(t[0]);
            let basis: Vec<Vector> = t[1..].iter().map(|&k| SparseVec::unit(k)).collect();
            if i < n {
                let mut legs: Vec<&Vector> = vec![&m];
                legs.extend(&basis[..i]);
                legs.push(a.mul_basis(t[i + 1], t[i + 2]));
                legs.extend(&basis[i + 2..]);
                s.add_pure(&q(1), &legs);
            } else {
                for (hh, an, c) in self.t.coaction.terms(t[n + 1]) {
                    let mut legs: Vec<&Vector> = vec![self.t.act(hh, t[0]), a.mul_basis(an, t[1])];
                    legs.extend(&basis[1..n]);
                    s.add_pure(c, &legs);
                }
            }
        })
    }

    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        let a = self.t.algebra();
        operator(&self.t.dims(n), &self.t.dims(n + 1), |t, s| {
            let mut legs: Vec<&Vector> = Vec::with_capacity(n + 3);
            let basis: Vec<Vector> = t.iter().map(|&k| SparseVec::unit(k)).collect();
            legs.extend(&basis[..i + 2]);
            legs.push(a.unit());
            legs.extend(&basis[i + 2..]);
            s.add_pure(&q(1), &legs);
        })
    }

    fn cyclic(&self, n: usize) -> Mat {
        operator(&self.t.dims(n), &self.t.dims(n), |t, s| {
            for (hh, an, c) in self.t.coaction.terms(t[n + 1]) {
                let mut out = Vec::with_capacity(n + 2);
                for (j, cm) in self.t.act(hh, t[0]).iter() {
                    out.clear();
                    out.push(j);
                    out.push(an);
                    out.extend_from_slice(&t[1..n + 1]);
                    s.add(&out, c * cm);
                }
            }
        })
    }
}

/// The paracyclic module C_•(A, M) = M ⊗ A^{⊗(•+1)}.
pub fn triple_paracyclic(t: &HopfTriple) -> ParaCyclicModule {
    ParaCyclicModule::new("C(A,M)", Variance::Cyclic, Order::Infinite, Box::new(TripleOps { t: t.clone() }))
}

fn coinvariant_family(t: &HopfTriple) -> BasisFamily {
    let t = t.clone();
    Arc::new(move |n| t.coinvariants(n))
}

/// The cyclic module of σ-coinvariants C^H_•(A, M). Operators are checked to preserve the
/// coinvariants through `check_through`.
pub fn coinvariant_subcomplex(t: &HopfTriple, check_through: usize) -> Result<ParaCyclicModule, InvariantError> {
    t.matched_in_involution().map_err(InvariantError::NotMatchedInInvolution)?;
    let parent = Arc::new(triple_paracyclic(t));
    let m = sub_module(parent, "C^H(A,M)", coinvariant_family(t), check_through)?;
    Ok(m.with_order(Order::Finite(1)))
}

/// a⁽⁻¹⁾σS(a⁽⁻³⁾) ⊗ a⁽⁻²⁾m ⊗ a⁽⁰⁾ = σ ⊗ a⁽⁻¹⁾m ⊗ a⁽⁰⁾ on every basis a, m.
pub fn triple_lemma_check(t: &HopfTriple) -> Result<(), String> {
    let h = t.hopf_algebra();
    let (dh, dm, da) = (h.dim(), t.module_dim, t.algebra().dim());
    let dims = [dh, dm, da];
    for a in 0..da {
        for m in 0..dm {
            let mut lhs = Sink::new(&dims);
            let mut rhs = Sink::new(&dims);
            for (hh, a0, c) in t.coaction.terms(a) {
                let a0v = SparseVec::unit(a0);
                rhs.add_pure(c, &[&t.sigma.vector, t.act(hh, m), &a0v]);
                let w = h.coalgebra.comul_iter(&SparseVec::unit(hh), 3);
                for (idx, c2) in w.iter() {
                    let l = decode(idx, &[dh, dh, dh]);
                    let first = h.mul(&SparseVec::unit(l[2]), &h.mul(&t.sigma.vector, &h.s(&SparseVec::unit(l[0]))));
                    lhs.add_pure(&(c * c2), &[&first, t.act(l[1], m), &a0v]);
                }
            }
            if lhs.finish() != rhs.finish() {
                return Err(format!("identity fails at a = e_{a}, m = e_{m}"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct IdentificationReport {
    pub morphism: AxiomReport,
    /// First degree where the identification is not bijective.
    pub not_bijective: Option<usize>,
}

impl IdentificationReport {
    pub fn holds(&self) -> bool {
        self.morphism.all_pass() && self.not_bijective.is_none()
    }
}

/// Compares C^H_•(H, k_δ) with the KR cyclic module through m⊗a_0⊗…⊗a_n ↦ ε(a_0)m a_1⊗…⊗a_n.
pub fn kr_triple_compare(
    h: &HopfAlgebraData,
    delta: &Character,
    sigma: &Grouplike,
    max_n: usize,
) -> Result<IdentificationReport, InvariantError> {
    let t = HopfTriple::hopf(h, delta, sigma);
    let x = coinvariant_subcomplex(&t, max_n)?;
    let y = kr_cyclic(h, delta, sigma).map_err(|e| InvariantError::Hopf(e.to_string()))?;
    let d = h.dim();
    let eps = h.coalgebra.counit();
    let maps: Vec<Mat> = (0..=max_n)
        .map(|n| {
            let basis = t.coinvariants(n);
            let dims = vec![d; n + 1];
            let tdims = vec![d; n];
            let cols = basis
                .vectors()
                .iter()
                .map(|v| {
                    SparseVec::from_pairs(v.iter().filter_map(|(i, c)| {
                        let tup = decode(i, &dims);
                        let e = &eps[tup[0]];
                        (!Field::is_zero(e)).then(|| (encode(&tup[1..], &tdims), c * e))
                    }))
                })
                .collect();
            Mat::from_columns(size(&tdims), cols)
        })
        .collect();
    let not_bijective = maps.iter().position(|m| m.rows() != m.cols() || rank(m) != m.rows());
    let morphism = check_morphism(&x, &y, &|n| maps[n].clone(), max_n);
    Ok(IdentificationReport { morphism, not_bijective })
}

/// (M_k(A), H, M) with ρ(a ⊗ u) = a⁽⁻¹⁾ ⊗ a⁽⁰⁾ ⊗ u.
pub fn matrix_amplification(t: &HopfTriple, k: usize) -> HopfTriple {
    let mk = FiniteAlgebra::matrix_algebra(k);
    let a = t.algebra();
    let big = a.tensor(&mk);
    let (dk, db) = (k * k, a.dim() * k * k);
    let cols = (0..db)
        .map(|i| {
            let (ai, u) = (i / dk, i % dk);
            SparseVec::from_pairs(t.coaction.terms(ai).map(|(hh, a0, c)| (hh * db + a0 * dk + u, c.clone())))
        })
        .collect();
    let rho = Mat::from_columns(t.hopf_algebra().dim() * db, cols);
    let co = ComoduleAlgebraCoaction::new(t.hopf_algebra().clone(), big, Side::Left, rho)
        .expect("amplified coaction is a comodule algebra");
    HopfTriple { coaction: co, module_dim: t.module_dim, module: t.module.clone(), sigma: t.sigma.clone() }
}

/// HC^H_n(A, M) against HC^H_n(M_k(A), M), n ≤ max_n.
pub fn morita_compare(t: &HopfTriple, k: usize, max_n: usize) -> Result<DimComparison, InvariantError> {
    let left = cyclic_homology_lambda(&coinvariant_subcomplex(t, 1)?, max_n).dims;
    let right = cyclic_homology_lambda(&coinvariant_subcomplex(&matrix_amplification(t, k), 1)?, max_n).dims;
    Ok(DimComparison { left, right })
}

/// A♮ read as the paracyclic module of the trivial triple.
pub fn trivial_triple_matches(a: &FiniteAlgebra, max_n: usize) -> bool {
    let x = triple_paracyclic(&HopfTriple::trivial(a.clone()));
    let y = algebra_cyclic_module(a);
    (0..=max_n).all(|n| {
        let faces = n == 0 || (0..=n).all(|i| x.face(n, i) == y.face(n, i));
        faces && x.cyclic(n) == y.cyclic(n) && (0..=n).all(|i| x.degeneracy(n, i) == y.degeneracy(n, i))
    })
}
