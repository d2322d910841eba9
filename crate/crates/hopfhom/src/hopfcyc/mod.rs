//! The Connes–Moscovici cocyclic module, its dual cyclic module, characteristic maps and
//! the classical cyclic cocycles.

mod charmap;
mod cocycles;

pub use charmap::{
    characteristic_map_cm, characteristic_map_kr, CharMapReport, ComoduleAlgebraCoaction, InvariantTrace,
    ModuleAlgebraAction, Side, TraceMode,
};
pub use cocycles::{connes_2cocycle, group_cocycle_to_cyclic, validate_group_cocycle, CocycleReport};

use thiserror::Error;

use crate::cyclicfw::{hochschild_coeff_complex, Bimodule, Operators, Order, ParaCyclicModule, Variance};
use crate::exactla::{q, Field, Mat, SparseVec, Vector, Q};
use crate::homengine::{cyclic_homology_lambda, periodic_estimate, ParityEntry};
use crate::hopfcore::tensor::{decode, operator, Sink};
use crate::hopfcore::{
    cm_involution, group_algebra, kr_involution, twisted_antipode_cm, Character, FiniteGroup, Grouplike,
    HopfAlgebraData,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfCycError {
    #[error("modular pair is not in involution: {0}")]
    NotInvolutive(String),
    #[error("Hopf algebra is not commutative")]
    NotCommutative,
    #[error("Hopf algebra is not cocommutative")]
    NotCocommutative,
    #[error("trace is not invariant: {0}")]
    TraceNotInvariant(String),
    #[error("invalid module algebra action: {0}")]
    InvalidAction(String),
    #[error("invalid comodule algebra coaction: {0}")]
    InvalidCoaction(String),
    #[error("not a derivation: {0}")]
    NotDerivation(String),
    #[error("derivations do not commute")]
    DerivationsDoNotCommute,
    #[error("not an invariant trace: {0}")]
    NotInvariantTrace(String),
    #[error("not a normalized group cocycle: {0}")]
    NotACocycle(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

struct CmOps {
    h: HopfAlgebraData,
    sigma: Vector,
    s_tilde: Mat,
    basis: Vec<Vector>,
}

impl Operators for CmOps {
    fn dim(&self, n: usize) -> usize {
        self.h.dim().pow(n as u32)
    }

    /// Coface X^{n−1} → X^n.
    fn face(&self, n: usize, i: usize) -> Mat {
        let d = self.h.dim();
        let m = n - 1;
        operator(&vec![d; m], &vec![d; n], |t, s| {
            if i == 0 {
                let mut legs: Vec<&Vector> = vec![self.h.unit()];
                legs.extend(t.iter().map(|&k| &self.basis[k]));
                s.add_pure(&q(1), &legs);
            } else if i <= m {
                let mut out = vec![0; n];
                for (jk, c) in self.h.coalgebra.comult_basis(t[i - 1]).iter() {
                    out[..i - 1].copy_from_slice(&t[..i - 1]);
                    out[i - 1] = jk / d;
                    out[i] = jk % d;
                    out[i + 1..].copy_from_slice(&t[i..]);
                    s.add(&out, c.clone());
                }
            } else {
                let mut legs: Vec<&Vector> = t.iter().map(|&k| &self.basis[k]).collect();
                legs.push(&self.sigma);
                s.add_pure(&q(1), &legs);
            }
        })
    }

    /// Codegeneracy X^{n+1} → X^n: ε on h_{i+1}.
    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        let d = self.h.dim();
        operator(&vec![d; n + 1], &vec![d; n], |t, s| {
            let e = &self.h.coalgebra.counit()[t[i]];
            if !Field::is_zero(e) {
                let out: Vec<usize> = t[..i].iter().chain(&t[i + 1..]).copied().collect();
                s.add(&out, e.clone());
            }
        })
    }

    /// Δ^{n−1}S̃(h_1) · (h_2 ⊗ … ⊗ h_n ⊗ σ).
    fn cyclic(&self, n: usize) -> Mat {
        let d = self.h.dim();
        if n == 0 {
            return Mat::identity(1);
        }
        operator(&vec![d; n], &vec![d; n], |t, s| {
            let w = self.h.coalgebra.comul_iter(self.s_tilde.col(t[0]), n);
            let dims = vec![d; n];
            for (idx, c) in w.iter() {
                let l = decode(idx, &dims);
                let prods: Vec<Vector> = (0..n)
                    .map(|k| {
                        let right = if k + 1 < n { &self.basis[t[k + 1]] } else { &self.sigma };
                        self.h.mul(&self.basis[l[k]], right)
                    })
                    .collect();
                let legs: Vec<&Vector> = prods.iter().collect();
                s.add_pure(c, &legs);
            }
        })
    }
}

/// H♮_{(δ,σ)} without the involution check.
pub fn cm_cocyclic_unchecked(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> ParaCyclicModule {
    let basis = (0..h.dim()).map(SparseVec::unit).collect();
    let ops = CmOps { h: h.clone(), sigma: sigma.vector.clone(), s_tilde: twisted_antipode_cm(h, delta), basis };
    ParaCyclicModule::new(format!("{}♮(δ,σ)", h.name), Variance::Cocyclic, Order::Finite(1), Box::new(ops))
}

/// The Connes–Moscovici cocyclic module: X^0 = k, X^n = H^{⊗n}.
pub fn cm_cocyclic(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> Result<ParaCyclicModule, HopfCycError> {
    cm_involution(h, delta, sigma).map_err(HopfCycError::NotInvolutive)?;
    Ok(cm_cocyclic_unchecked(h, delta, sigma))
}

struct KrOps {
    h: HopfAlgebraData,
    delta: Vec<Q>,
    sigma: Vector,
    basis: Vec<Vector>,
}

impl KrOps {
    fn expand_tau(&self, t: &[usize], s: &mut Sink<'_>) {
        let n = t.len();
        let d = self.h.dim();
        let mut seconds: Vec<usize> = Vec::with_capacity(n);
        #[allow(clippy::too_many_arguments)]
        fn rec(
            ops: &KrOps,
            t: &[usize],
            k: usize,
            prod: Vector,
            coef: Q,
            seconds: &mut Vec<usize>,
            s: &mut Sink<'_>,
            d: usize,
        ) {
            let n = t.len();
            if k == n {
                let first = ops.h.mul(&ops.sigma, &ops.h.s(&prod));
                let mut legs: Vec<&Vector> = vec![&first];
                legs.extend(seconds.iter().map(|&b| &ops.basis[b]));
                s.add_pure(&coef, &legs);
                return;
            }
            for (jk, c) in ops.h.coalgebra.comult_basis(t[k]).iter() {
                let (a, b) = (jk / d, jk % d);
                let p = ops.h.mul(&prod, &ops.basis[a]);
                if p.is_zero() {
                    continue;
                }
                if k + 1 == n {
                    let w = &ops.delta[b];
                    if Field::is_zero(w) {
                        continue;
                    }
                    rec(ops, t, k + 1, p, &coef * c * w, seconds, s, d);
                } else {
                    seconds.push(b);
                    rec(ops, t, k + 1, p, &coef * c, seconds, s, d);
                    seconds.pop();
                }
            }
        }
        rec(self, t, 0, self.h.unit().clone(), q(1), &mut seconds, s, d);
    }
}

impl Operators for KrOps {
    fn dim(&self, n: usize) -> usize {
        self.h.dim().pow(n as u32)
    }

    fn face(&self, n: usize, i: usize) -> Mat {
        let d = self.h.dim();
        operator(&vec![d; n], &vec![d; n - 1], |t, s| {
            if i == 0 {
                let e = &self.h.coalgebra.counit()[t[0]];
                if !Field::is_zero(e) {
                    s.add(&t[1..], e.clone());
                }
            } else if i < n {
                let mut legs: Vec<&Vector> = t[..i - 1].iter().map(|&k| &self.basis[k]).collect();
                legs.push(self.h.algebra.mul_basis(t[i - 1], t[i]));
                legs.extend(t[i + 1..].iter().map(|&k| &self.basis[k]));
                s.add_pure(&q(1), &legs);
            } else {
                let w = &self.delta[t[n - 1]];
                if !Field::is_zero(w) {
                    s.add(&t[..n - 1], w.clone());
                }
            }
        })
    }

    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        let d = self.h.dim();
        operator(&vec![d; n], &vec![d; n + 1], |t, s| {
            let mut legs: Vec<&Vector> = t[..i].iter().map(|&k| &self.basis[k]).collect();
            legs.push(self.h.unit());
            legs.extend(t[i..].iter().map(|&k| &self.basis[k]));
            s.add_pure(&q(1), &legs);
        })
    }

    fn cyclic(&self, n: usize) -> Mat {
        if n == 0 {
            return Mat::identity(1);
        }
        let d = self.h.dim();
        operator(&vec![d; n], &vec![d; n], |t, s| self.expand_tau(t, s))
    }
}

/// H̃♮^{(δ,σ)} without the involution check.
pub fn kr_cyclic_unchecked(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> ParaCyclicModule {
    let basis = (0..h.dim()).map(SparseVec::unit).collect();
    let ops = KrOps { h: h.clone(), delta: delta.values.clone(), sigma: sigma.vector.clone(), basis };
    ParaCyclicModule::new(format!("{}~♮(δ,σ)", h.name), Variance::Cyclic, Order::Finite(1), Box::new(ops))
}

/// The dual cyclic module: X_0 = k, X_n = H^{⊗n}; as a simplicial module it is the
/// Hochschild complex of H with coefficients in k (left action δ, right action ε).
pub fn kr_cyclic(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> Result<ParaCyclicModule, HopfCycError> {
    kr_involution(h, delta, sigma).map_err(HopfCycError::NotInvolutive)?;
    Ok(kr_cyclic_unchecked(h, delta, sigma))
}

/// k as an H-bimodule: h·1 = δ(h), 1·h = ε(h).
pub fn character_bimodule(h: &HopfAlgebraData, delta: &Character) -> Bimodule {
    let one = |v: &Q| Mat::from_columns(1, vec![SparseVec::from_dense(&[v.clone()])]);
    Bimodule {
        dim: 1,
        left: delta.values.iter().map(one).collect(),
        right: h.coalgebra.counit().iter().map(one).collect(),
    }
}

/// Per-degree comparison of two dimension sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimComparison {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl DimComparison {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }

    pub fn first_mismatch(&self) -> Option<usize> {
        self.left.iter().zip(&self.right).position(|(a, b)| a != b)
    }
}

/// HC̃_n^{(δ,1)}(kG) against ⊕_{i≥0} H_{n−2i}(kG, k_δ), degrees ≤ max_n.
pub fn cocommutative_decomposition_check(
    g: &FiniteGroup,
    delta: &Character,
    max_n: usize,
) -> Result<DimComparison, HopfCycError> {
    let h = group_algebra(g);
    let one = Grouplike::one(&h);
    let x = kr_cyclic(&h, delta, &one)?;
    let left = cyclic_homology_lambda(&x, max_n).dims;
    let c = hochschild_coeff_complex(&h.algebra, &character_bimodule(&h, delta), max_n + 1)
        .map_err(|e| HopfCycError::Shape(e.to_string()))?;
    let hh = c.homology_dims();
    let right = (0..=max_n).map(|n| (0..=n / 2).map(|i| hh[n - 2 * i]).sum()).collect();
    Ok(DimComparison { left, right })
}

/// HP^n_{(ε,1)}(H) from the CM module against the parity sums of H^i(H, k)
/// (coalgebra cohomology, trivial coefficients), i ≤ max_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicComparison {
    pub hp: [ParityEntry; 2],
    pub hc: Vec<usize>,
    pub coalgebra_cohomology: Vec<usize>,
    pub parity_sums: [usize; 2],
}

impl PeriodicComparison {
    pub fn holds(&self) -> bool {
        self.hp.iter().zip(self.parity_sums).all(|(e, s)| e.stabilized && e.dim == Some(s))
    }
}

pub fn commutative_decomposition_check(h: &HopfAlgebraData, max_n: usize) -> Result<PeriodicComparison, HopfCycError> {
    if !h.is_commutative() {
        return Err(HopfCycError::NotCommutative);
    }
    let x = cm_cocyclic(h, &Character::counit(h), &Grouplike::one(h))?;
    let hc = cyclic_homology_lambda(&x, max_n);
    let hp = periodic_estimate(&hc);
    let one = h.unit().clone();
    let m = crate::cyclicfw::Bicomodule::grouplike_pair(&h.coalgebra, &one, &one);
    let c = crate::cyclicfw::coalgebra_coeff_complex(&h.coalgebra, &m, max_n + 1)
        .map_err(|e| HopfCycError::Shape(e.to_string()))?;
    let coh = c.homology_dims();
    let mut sums = [0, 0];
    for (i, d) in coh.iter().enumerate() {
        sums[i % 2] += d;
    }
    Ok(PeriodicComparison { hp, hc: hc.dims, coalgebra_cohomology: coh, parity_sums: sums })
}

/// HP of the CM module for a Hopf algebra with a normalized Haar integral.
pub fn haar_periodic(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike, max_n: usize) -> Result<[ParityEntry; 2], HopfCycError> {
    let x = cm_cocyclic(h, delta, sigma)?;
    Ok(periodic_estimate(&cyclic_homology_lambda(&x, max_n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclicfw::check_cyclic_axioms;
    use crate::homengine::{boundary_b, cyclic_homology_bicomplex};
    use crate::hopfcore::{find_characters, find_grouplikes, function_algebra, sweedler_h4};

    fn sign_char(h: &HopfAlgebraData) -> Character {
        find_characters(h).items.into_iter().find(|c| c.values.contains(&q(-1))).unwrap()
    }

    #[test]
    fn cm_module_axioms() {
        for h in [group_algebra(&FiniteGroup::cyclic(2)), function_algebra(&FiniteGroup::symmetric3())] {
            let x = cm_cocyclic(&h, &Character::counit(&h), &Grouplike::one(&h)).unwrap();
            assert_eq!(x.dim(0), 1);
            let rep = check_cyclic_axioms(&x, 3);
            assert!(rep.all_pass(), "{}: {rep}", h.name);
        }
        let h = sweedler_h4();
        let g = find_grouplikes(&h).items[1].clone();
        let x = cm_cocyclic(&h, &Character::counit(&h), &g).unwrap();
        assert!(check_cyclic_axioms(&x, 3).all_pass());
    }

    #[test]
    fn cm_rejects_h4_trivial_pair() {
        let h = sweedler_h4();
        let r = cm_cocyclic(&h, &Character::counit(&h), &Grouplike::one(&h));
        assert!(matches!(r, Err(HopfCycError::NotInvolutive(_))));
    }

    #[test]
    fn kr_module_axioms_and_converse() {
        let h = group_algebra(&FiniteGroup::cyclic(3));
        let x = kr_cyclic(&h, &Character::counit(&h), &Grouplike::one(&h)).unwrap();
        assert!(check_cyclic_axioms(&x, 3).all_pass());
        let h4 = sweedler_h4();
        let g = find_grouplikes(&h4).items[1].clone();
        let y = kr_cyclic(&h4, &Character::counit(&h4), &g).unwrap();
        assert!(check_cyclic_axioms(&y, 3).all_pass());
        let bad = kr_cyclic_unchecked(&h4, &Character::counit(&h4), &Grouplike::one(&h4));
        let rep = check_cyclic_axioms(&bad, 3);
        assert!(!rep.all_pass());
    }

    #[test]
    fn kr_is_hochschild_complex_with_character_coefficients() {
        let h = sweedler_h4();
        let d = sign_char(&h);
        let g = find_grouplikes(&h).items[0].clone();
        let x = kr_cyclic_unchecked(&h, &d, &g);
        let c = hochschild_coeff_complex(&h.algebra, &character_bimodule(&h, &d), 3).unwrap();
        for n in 1..=3 {
            assert_eq!(boundary_b(&x, n), c.boundary(n));
        }
    }

    #[test]
    fn cocommutative_decomposition() {
        let g = FiniteGroup::cyclic(2);
        let h = group_algebra(&g);
        let eps = Character::counit(&h);
        let c = cocommutative_decomposition_check(&g, &eps, 4).unwrap();
        assert_eq!(c.left, vec![1, 0, 1, 0, 1]);
        assert!(c.holds());
        let c = cocommutative_decomposition_check(&g, &sign_char(&h), 3).unwrap();
        assert_eq!(c.left, vec![0, 0, 0, 0]);
        assert!(c.holds());
    }

    #[test]
    fn commutative_decomposition() {
        let h = function_algebra(&FiniteGroup::cyclic(2));
        let c = commutative_decomposition_check(&h, 4).unwrap();
        assert!(c.holds(), "{c:?}");
        assert_eq!(c.parity_sums, [1, 0]);
        let kg = group_algebra(&FiniteGroup::symmetric3());
        assert_eq!(commutative_decomposition_check(&kg, 2).unwrap_err(), HopfCycError::NotCommutative);
    }

    #[test]
    fn haar_case_has_trivial_hp() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let hp = haar_periodic(&h, &Character::counit(&h), &Grouplike::one(&h), 4).unwrap();
        assert_eq!(hp[0].dim, Some(1));
        assert_eq!(hp[1].dim, Some(0));
    }

    #[test]
    fn kr_lambda_matches_bicomplex() {
        let h = group_algebra(&FiniteGroup::cyclic(3));
        let x = kr_cyclic(&h, &Character::counit(&h), &Grouplike::one(&h)).unwrap();
        assert_eq!(cyclic_homology_lambda(&x, 3).dims, cyclic_homology_bicomplex(&x, 3).dims);
    }
}
