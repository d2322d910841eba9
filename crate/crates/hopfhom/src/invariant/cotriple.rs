use std::sync::Arc;

use super::{validate_module, IdentificationReport, InvariantError};
use crate::cyclicfw::{
    check_morphism, coalgebra_cocyclic_module, quotient_module, BasisFamily, Operators, Order, ParaCyclicModule,
    Variance,
};
use crate::exactla::{rank, Field, Mat, SparseVec, SubspaceBasis, Vector};
use crate::hopfcore::tensor::{decode, encode, operator, size};
use crate::hopfcore::{
    group_algebra, twisted_antipode_cm, Character, FiniteCoalgebra, FiniteGroup, Grouplike, HopfAlgebraData,
};
use crate::hopfcyc::cm_cocyclic;

/// (C, H, V): a left H-module coalgebra C, a left H-comodule V and a character δ.
#[derive(Clone, Debug)]
pub struct HopfCotriple {
    pub hopf: HopfAlgebraData,
    pub coalgebra: FiniteCoalgebra,
    action: Vec<Mat>,
    pub v_dim: usize,
    /// v ↦ v⁽⁻¹⁾ ⊗ v⁽⁰⁾, index h·dim(V) + v.
    v_coaction: Mat,
    pub delta: Character,
}

impl HopfCotriple {
    pub fn new(
        hopf: HopfAlgebraData,
        coalgebra: FiniteCoalgebra,
        action: Vec<Mat>,
        v_dim: usize,
        v_coaction: Mat,
        delta: Character,
    ) -> Result<Self, InvariantError> {
        let bad = |s: String| Err(InvariantError::InvalidCotriple(s));
        let (dh, dc) = (hopf.dim(), coalgebra.dim());
        if let Err(e) = validate_module(&hopf, &action, dc) {
            return bad(e);
        }
        for i in 0..dh {
            for c in 0..dc {
                let lhs = coalgebra.comul(action[i].col(c));
                let mut rhs = SparseVec::new();
                for (hk, x) in hopf.coalgebra.comult_basis(i).iter() {
                    for (cl, y) in coalgebra.comult_basis(c).iter() {
                        let l = action[hk / dh].col(cl / dc);
                        let r = action[hk % dh].col(cl % dc);
                        for (a, u) in l.iter() {
                            for (b, w) in r.iter() {
                                rhs = rhs.add(&SparseVec::single(a * dc + b, x * y * u * w));
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return bad(format!("Δ(h_{i}c_{c}) ≠ h⁽¹⁾c⁽¹⁾ ⊗ h⁽²⁾c⁽²⁾"));
                }
                let e = coalgebra.eps(action[i].col(c));
                if e != &hopf.coalgebra.counit()[i] * &coalgebra.counit()[c] {
                    return bad(format!("ε(h_{i}c_{c}) ≠ ε(h_{i})ε(c_{c})"));
                }
            }
        }
        if v_coaction.rows() != dh * v_dim || v_coaction.cols() != v_dim {
            return bad("V coaction has wrong shape".into());
        }
        let iv = Mat::identity(v_dim);
        let eps = Mat::from_fn(1, dh, |i| SparseVec::from_pairs([(0, hopf.coalgebra.counit()[i].clone())]));
        let delta_m = hopf.coalgebra.comult_matrix();
        if Mat::identity(dh).kron(&v_coaction).mul(&v_coaction) != delta_m.kron(&iv).mul(&v_coaction) {
            return bad("V coaction is not coassociative".into());
        }
        if eps.kron(&iv).mul(&v_coaction) != iv {
            return bad("V coaction is not counital".into());
        }
        Ok(HopfCotriple { hopf, coalgebra, action, v_dim, v_coaction, delta })
    }

    /// (C, k, k).
    pub fn trivial(c: FiniteCoalgebra) -> Self {
        let k = group_algebra(&FiniteGroup::trivial());
        let d = c.dim();
        let delta = Character::counit(&k);
        HopfCotriple { hopf: k, coalgebra: c, action: vec![Mat::identity(d)], v_dim: 1, v_coaction: Mat::identity(1), delta }
    }

    /// (H, H, k_σ): H acting on itself by left multiplication, V = k with 1 ↦ σ ⊗ 1.
    pub fn hopf(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> Self {
        let action = (0..h.dim()).map(|i| h.algebra.left_mul_matrix(&SparseVec::unit(i))).collect();
        HopfCotriple {
            hopf: h.clone(),
            coalgebra: h.coalgebra.clone(),
            action,
            v_dim: 1,
            v_coaction: Mat::from_columns(h.dim(), vec![sigma.vector.clone()]),
            delta: delta.clone(),
        }
    }

    fn v_terms(&self, v: usize) -> impl Iterator<Item = (usize, usize, &crate::exactla::Q)> + '_ {
        let dv = self.v_dim;
        self.v_coaction.col(v).iter().map(move |(k, c)| (k / dv, k % dv, c))
    }

    fn dims(&self, n: usize) -> Vec<usize> {
        std::iter::once(self.v_dim).chain(std::iter::repeat(self.coalgebra.dim()).take(n + 1)).collect()
    }

    /// S̃_V(v ⊗ h) = v⁽⁰⁾ ⊗ S⁻¹(v⁽⁻¹⁾)S̃(h).
    pub fn twisted_antipode(&self) -> Result<Mat, String> {
        let h = &self.hopf;
        let s_inv = h.antipode_inverse().ok_or("antipode is not invertible")?;
        let st = twisted_antipode_cm(h, &self.delta);
        let dims = [self.v_dim, h.dim()];
        Ok(operator(&dims, &dims, |t, s| {
            for (hh, v0, c) in self.v_terms(t[0]) {
                let second = h.mul(s_inv.col(hh), st.col(t[1]));
                s.add_pure(c, &[&SparseVec::unit(v0), &second]);
            }
        }))
    }

    /// v⁽⁰⁾δ(v⁽⁻¹⁾) = v and S̃_V² = id.
    pub fn comatched_in_involution(&self) -> Result<(), String> {
        for v in 0..self.v_dim {
            let img = SparseVec::from_pairs(self.v_terms(v).map(|(hh, v0, c)| (v0, c * &self.delta.values[hh])));
            if img != SparseVec::unit(v) {
                return Err(format!("v⁽⁰⁾δ(v⁽⁻¹⁾) ≠ v at v = e_{v}"));
            }
        }
        let st = self.twisted_antipode()?;
        let sq = st.mul(&st);
        if let Some(w) = sq.first_mismatch(&Mat::identity(sq.rows())) {
            return Err(format!("S̃_V² ≠ id on basis tensor {:?}", decode(w.col, &[self.v_dim, self.hopf.dim()])));
        }
        Ok(())
    }

    /// Diagonal action of h_i on V ⊗ C^{⊗(n+1)}.
    pub fn diagonal_action(&self, n: usize, i: usize) -> Mat {
        let dims = self.dims(n);
        let dh = self.hopf.dim();
        let split = self.hopf.coalgebra.comul_iter(&SparseVec::unit(i), n + 1);
        operator(&dims, &dims, |t, s| {
            let v = SparseVec::unit(t[0]);
            for (idx, c) in split.iter() {
                let hs = decode(idx, &vec![dh; n + 1]);
                let mut legs: Vec<&Vector> = vec![&v];
                legs.extend(hs.iter().zip(&t[1..]).map(|(&h, &x)| self.action[h].col(x)));
                s.add_pure(c, &legs);
            }
        })
    }

    /// span{h·x − δ(h)x} in degree n.
    pub fn relations(&self, n: usize) -> SubspaceBasis {
        let d = size(&self.dims(n));
        let mut gens = Vec::new();
        for i in 0..self.hopf.dim() {
            let m = self.diagonal_action(n, i).sub(&Mat::identity(d).scale(&self.delta.values[i]));
            gens.extend(m.into_columns().into_iter().filter(|v| !v.is_zero()));
        }
        SubspaceBasis::from_vectors(d, gens)
    }
}

struct CotripleOps {
    t: HopfCotriple,
}

impl Operators for CotripleOps {
    fn dim(&self, n: usize) -> usize {
        size(&self.t.dims(n))
    }

    /// Coface X^{n−1} → X^n.
    fn face(&self, n: usize, i: usize) -> Mat {
        let c = &self.t.coalgebra;
        let dc = c.dim();
        operator(&self.t.dims(n - 1), &self.t.dims(n), |t, s| {
            let mut out = vec![0; n + 2];
            if i < n {
                for (jk, x) in c.comult_basis(t[i + 1]).iter() {
                    out[..i + 1].copy_from_slice(&t[..i + 1]);
                    out[i + 1] = jk / dc;
                    out[i + 2] = jk % dc;
                    out[i + 3..].copy_from_slice(&t[i + 2..]);
                    s.add(&out, x.clone());
                }
            } else {
                for (hh, v0, cv) in self.t.v_terms(t[0]) {
                    for (jk, x) in c.comult_basis(t[1]).iter() {
                        out[0] = v0;
                        out[1] = jk % dc;
                        out[2..n + 1].copy_from_slice(&t[2..]);
                        for (last, y) in self.t.action[hh].col(jk / dc).iter() {
                            out[n + 1] = last;
                            s.add(&out, cv * x * y);
                        }
                    }
                }
            }
        })
    }

    /// Codegeneracy X^{n+1} → X^n: ε on c_{i+1}.
    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        let c = &self.t.coalgebra;
        operator(&self.t.dims(n + 1), &self.t.dims(n), |t, s| {
            let e = &c.counit()[t[i + 2]];
            if !Field::is_zero(e) {
                let out: Vec<usize> = t[..i + 2].iter().chain(&t[i + 3..]).copied().collect();
                s.add(&out, e.clone());
            }
        })
    }

    fn cyclic(&self, n: usize) -> Mat {
        operator(&self.t.dims(n), &self.t.dims(n), |t, s| {
            let mut out = vec![0; n + 2];
            for (hh, v0, cv) in self.t.v_terms(t[0]) {
                out[0] = v0;
                out[1..n + 1].copy_from_slice(&t[2..]);
                for (last, y) in self.t.action[hh].col(t[1]).iter() {
                    out[n + 1] = last;
                    s.add(&out, cv * y);
                }
            }
        })
    }
}

/// The paracocyclic module V ⊗ C^{⊗(•+1)}.
pub fn cotriple_paracocyclic(ct: &HopfCotriple) -> ParaCyclicModule {
    ParaCyclicModule::new("C(C,V)", Variance::Cocyclic, Order::Infinite, Box::new(CotripleOps { t: ct.clone() }))
}

/// The cocyclic module of δ-coinvariants C^•_H(C, V), a quotient of V ⊗ C^{⊗(•+1)}.
pub fn cotriple_cocyclic(ct: &HopfCotriple, check_through: usize) -> Result<ParaCyclicModule, InvariantError> {
    ct.comatched_in_involution().map_err(InvariantError::NotComatchedInInvolution)?;
    let parent = Arc::new(cotriple_paracocyclic(ct));
    let c = ct.clone();
    let family: BasisFamily = Arc::new(move |n| c.relations(n));
    let m = quotient_module(parent, "C_H(C,V)", family, check_through)?;
    Ok(m.with_order(Order::Finite(1)))
}

/// Compares C^•_H(H, k_σ) with the CM cocyclic module through h ↦ [1 ⊗ 1 ⊗ h].
pub fn cm_cotriple_compare(
    h: &HopfAlgebraData,
    delta: &Character,
    sigma: &Grouplike,
    max_n: usize,
) -> Result<IdentificationReport, InvariantError> {
    let ct = HopfCotriple::hopf(h, delta, sigma);
    let x = cotriple_cocyclic(&ct, max_n)?;
    let y = cm_cocyclic(h, delta, sigma).map_err(|e| InvariantError::Hopf(e.to_string()))?;
    let d = h.dim();
    let one = h.unit();
    // g_n: H^{⊗n} → quotient coordinates; the check runs on transposes (cyclic views).
    let maps: Vec<Mat> = (0..=max_n)
        .map(|n| {
            let w = ct.relations(n);
            let comp = w.complement_indices();
            let pos: std::collections::HashMap<usize, usize> = comp.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let dims = vec![1usize].into_iter().chain(std::iter::repeat(d).take(n + 1)).collect::<Vec<_>>();
            let tdims = vec![d; n];
            let cols = (0..size(&tdims))
                .map(|j| {
                    let tail = decode(j, &tdims);
                    let v = SparseVec::from_pairs(one.iter().map(|(u, c)| {
                        let tup: Vec<usize> = [0, u].into_iter().chain(tail.iter().copied()).collect();
                        (encode(&tup, &dims), c.clone())
                    }));
                    let r = w.reduce(&v);
                    SparseVec::from_pairs(r.iter().map(|(i, c)| (pos[&i], c.clone())))
                })
                .collect();
            Mat::from_columns(comp.len(), cols)
        })
        .collect();
    let not_bijective = maps.iter().position(|m| m.rows() != m.cols() || rank(m) != m.rows());
    let morphism = check_morphism(&x, &y, &|n| maps[n].transpose(), max_n);
    Ok(IdentificationReport { morphism, not_bijective })
}

/// C♮ read as the cocyclic module of the trivial cotriple.
pub fn trivial_cotriple_matches(c: &FiniteCoalgebra, max_n: usize) -> bool {
    let x = cotriple_paracocyclic(&HopfCotriple::trivial(c.clone()));
    let y = coalgebra_cocyclic_module(c);
    (0..=max_n).all(|n| {
        let faces = n == 0 || (0..=n).all(|i| x.raw_face(n, i) == y.raw_face(n, i));
        faces && x.raw_cyclic(n) == y.raw_cyclic(n) && (0..=n).all(|i| x.raw_degeneracy(n, i) == y.raw_degeneracy(n, i))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclicfw::check_cyclic_axioms;
    use crate::hopfcore::{find_grouplikes, sweedler_h4};

    #[test]
    fn trivial_cotriple_is_coalgebra_module() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        assert!(trivial_cotriple_matches(&h.coalgebra, 3));
        let q = cotriple_cocyclic(&HopfCotriple::trivial(h.coalgebra.clone()), 2).unwrap();
        assert_eq!(q.dim(2), 8);
    }

    #[test]
    fn hopf_cotriple_is_cm() {
        let h = group_algebra(&FiniteGroup::cyclic(3));
        let r = cm_cotriple_compare(&h, &Character::counit(&h), &Grouplike::one(&h), 3).unwrap();
        assert!(r.holds(), "{}", r.morphism);
    }

    #[test]
    fn h4_cotriple() {
        let h = sweedler_h4();
        let g = find_grouplikes(&h).items[1].clone();
        let e = Character::counit(&h);
        let ct = HopfCotriple::hopf(&h, &e, &g);
        let q = cotriple_cocyclic(&ct, 3).unwrap();
        assert!(check_cyclic_axioms(&q, 3).all_pass());
        let r = cm_cotriple_compare(&h, &e, &g, 3).unwrap();
        assert!(r.holds(), "{}", r.morphism);
        let bad = HopfCotriple::hopf(&h, &e, &Grouplike::one(&h));
        assert!(matches!(cotriple_cocyclic(&bad, 2), Err(InvariantError::NotComatchedInInvolution(_))));
    }

    #[test]
    fn invalid_comodule_rejected() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let action = (0..2).map(|i| h.algebra.left_mul_matrix(&SparseVec::unit(i))).collect();
        let r = HopfCotriple::new(h.clone(), h.coalgebra.clone(), action, 1, Mat::zeros(2, 1), Character::counit(&h));
        assert!(matches!(r, Err(InvariantError::InvalidCotriple(_))));
    }
}
