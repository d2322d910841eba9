//! Finite-dimensional algebras, coalgebras and Hopf algebras given by structure constants.
//!
//! Tensor indices follow [`tensor::encode`]: the first leg is the most significant digit,
//! so `e_i ⊗ e_j` in `H ⊗ H` has index `i * dim + j`.

mod builtins;
mod group;
mod search;
pub mod tensor;

pub use builtins::{dual_hopf, function_algebra, group_algebra, sweedler_h4};
pub use group::FiniteGroup;
pub use search::{
    cm_involution, find_characters, find_grouplikes, find_haar_integral, is_modular_pair_in_involution_cm,
    is_modular_pair_in_involution_kr, kr_involution, twisted_antipode_cm, twisted_antipode_kr, SearchResult,
};

use std::fmt;

use thiserror::Error;

use crate::exactla::{inverse, q, rank, Field, Mat, SparseVec, Vector, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: String,
    pub witness: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails: {}", self.axiom, self.witness)
    }
}

fn fail<T>(axiom: &str, witness: String) -> Result<T, AxiomFailure> {
    Err(AxiomFailure { axiom: axiom.to_string(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Axiom(AxiomFailure),
    #[error("not a character: {0}")]
    InvalidCharacter(String),
    #[error("not a grouplike element: {0}")]
    InvalidGrouplike(String),
}

impl From<AxiomFailure> for HopfError {
    fn from(a: AxiomFailure) -> Self {
        HopfError::Axiom(a)
    }
}

/// Associative unital algebra with basis `labels` and products `e_i e_j = mult[i * dim + j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    labels: Vec<String>,
    mult: Vec<Vector>,
    unit: Vector,
}

impl FiniteAlgebra {
    pub fn new(labels: Vec<String>, mult: Vec<Vector>, unit: Vector) -> Result<Self, HopfError> {
        let d = labels.len();
        if mult.len() != d * d {
            return Err(HopfError::Shape(format!("expected {} products, got {}", d * d, mult.len())));
        }
        if mult.iter().chain(std::iter::once(&unit)).any(|v| v.max_index().map_or(false, |m| m >= d)) {
            return Err(HopfError::Shape("product or unit index out of range".into()));
        }
        Ok(FiniteAlgebra { labels, mult, unit })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn scalars() -> Self {
        Self::new(vec!["1".into()], vec![SparseVec::unit(0)], SparseVec::unit(0)).unwrap()
    }

    /// k[x]/(x^n) on the basis 1, x, …, x^{n−1}.
    pub fn truncated_polynomial(n: usize) -> Self {
        let labels = (0..n).map(|i| if i == 0 { "1".into() } else { format!("x^{i}") }).collect();
        let mult = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                if i + j < n {
                    SparseVec::unit(i + j)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        Self::new(labels, mult, SparseVec::unit(0)).unwrap()
    }

    /// M_k(ℚ) on matrix units E_ij with index i * k + j.
    pub fn matrix_algebra(k: usize) -> Self {
        let labels = (0..k * k).map(|i| format!("E{}{}", i / k, i % k)).collect();
        let mult = (0..k.pow(4))
            .map(|t| {
                let (a, b) = (t / (k * k), t % (k * k));
                if a % k == b / k {
                    SparseVec::unit((a / k) * k + b % k)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let unit = SparseVec::from_pairs((0..k).map(|i| (i * k + i, q(1))));
        Self::new(labels, mult, unit).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i * self.dim() + j]
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut pairs = Vec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let c = x * y;
                for (k, z) in self.mul_basis(i, j).iter() {
                    pairs.push((k, &c * z));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Product of a list of elements, left to right; the unit for an empty list.
    pub fn mul_all<'a>(&self, items: impl IntoIterator<Item = &'a Vector>) -> Vector {
        items.into_iter().fold(self.unit.clone(), |acc, v| self.mul(&acc, v))
    }

    /// Matrix of x ↦ a x.
    pub fn left_mul_matrix(&self, a: &Vector) -> Mat {
        Mat::from_fn(self.dim(), self.dim(), |j| self.mul(a, &SparseVec::unit(j)))
    }

    /// Matrix of x ↦ x a.
    pub fn right_mul_matrix(&self, a: &Vector) -> Mat {
        Mat::from_fn(self.dim(), self.dim(), |j| self.mul(&SparseVec::unit(j), a))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// A ⊗ B with componentwise product; basis index a * dim(B) + b.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim(), other.dim());
        let labels = (0..da * db).map(|t| format!("{}⊗{}", self.labels[t / db], other.labels[t % db])).collect();
        let mult = (0..(da * db) * (da * db))
            .map(|t| {
                let (x, y) = (t / (da * db), t % (da * db));
                let p = self.mul_basis(x / db, y / db);
                let r = other.mul_basis(x % db, y % db);
                SparseVec::from_pairs(p.iter().flat_map(|(i, a)| r.iter().map(move |(j, b)| (i * db + j, a * b))))
            })
            .collect();
        let unit = SparseVec::from_pairs(
            self.unit.iter().flat_map(|(i, a)| other.unit.iter().map(move |(j, b)| (i * db + j, a * b))),
        );
        Self::new(labels, mult, unit).unwrap()
    }

    pub fn validate(&self) -> Result<(), AxiomFailure> {
        let d = self.dim();
        for i in 0..d {
            let e = SparseVec::unit(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return fail("unit law", format!("basis element {}", self.labels[i]));
            }
            for j in 0..d {
                let ij = self.mul_basis(i, j).clone();
                for k in 0..d {
                    let ek = SparseVec::unit(k);
                    let l = self.mul(&ij, &ek);
                    let r = self.mul(&e, &self.mul(&SparseVec::unit(j), &ek));
                    if l != r {
                        return fail(
                            "associativity",
                            format!("triple ({}, {}, {}) = indices ({i}, {j}, {k})", self.labels[i], self.labels[j], self.labels[k]),
                        );
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that `g` is an invertible algebra map.
    pub fn is_automorphism(&self, g: &Mat) -> bool {
        let d = self.dim();
        if g.rows() != d || g.cols() != d || rank(g) != d || g.apply(&self.unit) != self.unit {
            return false;
        }
        (0..d).all(|i| {
            (0..d).all(|j| g.apply(self.mul_basis(i, j)) == self.mul(g.col(i), g.col(j)))
        })
    }
}

/// Coassociative counital coalgebra; `comult[i]` lives in C ⊗ C.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteCoalgebra {
    labels: Vec<String>,
    comult: Vec<Vector>,
    counit: Vec<Q>,
}

impl FiniteCoalgebra {
    pub fn new(labels: Vec<String>, comult: Vec<Vector>, counit: Vec<Q>) -> Result<Self, HopfError> {
        let d = labels.len();
        if comult.len() != d || counit.len() != d {
            return Err(HopfError::Shape("comultiplication or counit has wrong length".into()));
        }
        if comult.iter().any(|v| v.max_index().map_or(false, |m| m >= d * d)) {
            return Err(HopfError::Shape("comultiplication index out of range".into()));
        }
        Ok(FiniteCoalgebra { labels, comult, counit })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn comult_basis(&self, i: usize) -> &Vector {
        &self.comult[i]
    }

    pub fn counit(&self) -> &[Q] {
        &self.counit
    }

    pub fn comul(&self, v: &Vector) -> Vector {
        let mut pairs = Vec::new();
        for (i, x) in v.iter() {
            for (k, y) in self.comult[i].iter() {
                pairs.push((k, x * y));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn eps(&self, v: &Vector) -> Q {
        v.iter().fold(Q::zero(), |acc, (i, x)| acc + x * &self.counit[i])
    }

    /// Iterated coproduct into `legs` tensor factors (legs ≥ 1).
    pub fn comul_iter(&self, v: &Vector, legs: usize) -> Vector {
        assert!(legs >= 1);
        let d = self.dim();
        let mut cur = v.clone();
        for _ in 1..legs {
            let mut pairs = Vec::new();
            for (idx, x) in cur.iter() {
                let (head, last) = (idx / d, idx % d);
                for (k, y) in self.comult[last].iter() {
                    pairs.push((head * d * d + k, x * y));
                }
            }
            cur = SparseVec::from_pairs(pairs);
        }
        cur
    }

    /// Δ as a d² × d matrix.
    pub fn comult_matrix(&self) -> Mat {
        Mat::from_columns(self.dim() * self.dim(), self.comult.clone())
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        self.comult.iter().all(|v| *v == v.map_indices(|k| (k % d) * d + k / d))
    }

    pub fn validate(&self) -> Result<(), AxiomFailure> {
        let d = self.dim();
        for i in 0..d {
            let e = SparseVec::unit(i);
            let delta = &self.comult[i];
            // (Δ ⊗ id)Δ vs (id ⊗ Δ)Δ, both in C^{⊗3}
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (k, c) in delta.iter() {
                let (a, b) = (k / d, k % d);
                for (t, x) in self.comult[a].iter() {
                    left.push((t * d + b, c * x));
                }
                for (t, x) in self.comult[b].iter() {
                    right.push((a * d * d + t, c * x));
                }
            }
            if SparseVec::from_pairs(left) != SparseVec::from_pairs(right) {
                return fail("coassociativity", format!("basis element {}", self.labels[i]));
            }
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (k, c) in delta.iter() {
                let (a, b) = (k / d, k % d);
                l.push((b, c * &self.counit[a]));
                r.push((a, c * &self.counit[b]));
            }
            if SparseVec::from_pairs(l) != e || SparseVec::from_pairs(r) != e {
                return fail("counit law", format!("basis element {}", self.labels[i]));
            }
        }
        Ok(())
    }
}

/// Which family a Hopf algebra came from; decides whether character searches are exhaustive.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Group(FiniteGroup),
    Function(FiniteGroup),
    SweedlerH4,
    Dual(Box<Family>),
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopfAlgebraData {
    pub name: String,
    pub family: Family,
    pub algebra: FiniteAlgebra,
    pub coalgebra: FiniteCoalgebra,
    antipode: Mat,
}

impl HopfAlgebraData {
    pub fn new(
        name: impl Into<String>,
        family: Family,
        algebra: FiniteAlgebra,
        coalgebra: FiniteCoalgebra,
        antipode: Mat,
    ) -> Result<Self, HopfError> {
        let d = algebra.dim();
        if coalgebra.dim() != d || antipode.rows() != d || antipode.cols() != d {
            return Err(HopfError::Shape("algebra, coalgebra and antipode dimensions differ".into()));
        }
        Ok(HopfAlgebraData { name: name.into(), family, algebra, coalgebra, antipode })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn antipode(&self) -> &Mat {
        &self.antipode
    }

    pub fn antipode_inverse(&self) -> Option<Mat> {
        inverse(&self.antipode)
    }

    pub fn unit(&self) -> &Vector {
        self.algebra.unit()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.algebra.mul(a, b)
    }

    pub fn comul(&self, v: &Vector) -> Vector {
        self.coalgebra.comul(v)
    }

    pub fn eps(&self, v: &Vector) -> Q {
        self.coalgebra.eps(v)
    }

    pub fn s(&self, v: &Vector) -> Vector {
        self.antipode.apply(v)
    }

    /// Multiplication on H ⊗ H.
    pub fn mul2(&self, a: &Vector, b: &Vector) -> Vector {
        let d = self.dim();
        let mut pairs = Vec::new();
        for (x, c) in a.iter() {
            for (y, e) in b.iter() {
                let p = self.algebra.mul_basis(x / d, y / d);
                let r = self.algebra.mul_basis(x % d, y % d);
                let ce = c * e;
                for (i, u) in p.iter() {
                    for (j, v) in r.iter() {
                        pairs.push((i * d + j, &ce * u * v));
                    }
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn validate_bialgebra(&self) -> Result<(), AxiomFailure> {
        let d = self.dim();
        let unit = self.unit();
        let unit2 = SparseVec::from_pairs(unit.iter().flat_map(|(i, a)| unit.iter().map(move |(j, b)| (i * d + j, a * b))));
        if self.comul(unit) != unit2 {
            return fail("bialgebra", "Δ(1) ≠ 1 ⊗ 1".into());
        }
        if !Field::is_one(&self.eps(unit)) {
            return fail("bialgebra", "ε(1) ≠ 1".into());
        }
        for i in 0..d {
            for j in 0..d {
                let p = self.algebra.mul_basis(i, j);
                let l = self.comul(p);
                let r = self.mul2(self.coalgebra.comult_basis(i), self.coalgebra.comult_basis(j));
                if l != r {
                    return fail("bialgebra", format!("Δ(ab) ≠ Δ(a)Δ(b) for ({}, {})", self.labels()[i], self.labels()[j]));
                }
                if self.eps(p) != &self.coalgebra.counit()[i] * &self.coalgebra.counit()[j] {
                    return fail("bialgebra", format!("ε(ab) ≠ ε(a)ε(b) for ({}, {})", self.labels()[i], self.labels()[j]));
                }
            }
        }
        Ok(())
    }

    pub fn validate_antipode(&self) -> Result<(), AxiomFailure> {
        let d = self.dim();
        for i in 0..d {
            let target = self.unit().scale(&self.coalgebra.counit()[i]);
            let mut l = SparseVec::new();
            let mut r = SparseVec::new();
            for (k, c) in self.coalgebra.comult_basis(i).iter() {
                let (a, b) = (k / d, k % d);
                l = l.add_scaled(c, &self.algebra.mul(self.antipode.col(a), &SparseVec::unit(b)));
                r = r.add_scaled(c, &self.algebra.mul(&SparseVec::unit(a), self.antipode.col(b)));
            }
            if l != target || r != target {
                return fail("antipode", format!("m(S⊗id)Δ or m(id⊗S)Δ ≠ ηε on {}", self.labels()[i]));
            }
        }
        if rank(&self.antipode) != d {
            return fail("antipode", "S is not invertible".into());
        }
        Ok(())
    }

    /// All structural axioms, in order: algebra, coalgebra, bialgebra, antipode.
    pub fn validate(&self) -> Result<(), AxiomFailure> {
        self.algebra.validate()?;
        self.coalgebra.validate()?;
        self.validate_bialgebra()?;
        self.validate_antipode()
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        self.coalgebra.is_cocommutative()
    }
}

/// Algebra map δ: H → k, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub values: Vec<Q>,
}

impl Character {
    pub fn new(h: &HopfAlgebraData, values: Vec<Q>) -> Result<Self, HopfError> {
        let d = h.dim();
        if values.len() != d {
            return Err(HopfError::InvalidCharacter("wrong length".into()));
        }
        let c = Character { values };
        if !Field::is_one(&c.eval(h.unit())) {
            return Err(HopfError::InvalidCharacter("δ(1) ≠ 1".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if c.eval(h.algebra.mul_basis(i, j)) != &c.values[i] * &c.values[j] {
                    return Err(HopfError::InvalidCharacter(format!(
                        "δ(ab) ≠ δ(a)δ(b) on ({}, {})",
                        h.labels()[i],
                        h.labels()[j]
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn counit(h: &HopfAlgebraData) -> Self {
        Character { values: h.coalgebra.counit().to_vec() }
    }

    pub fn eval(&self, v: &Vector) -> Q {
        v.iter().fold(Q::zero(), |acc, (i, x)| acc + x * &self.values[i])
    }
}

/// σ with Δσ = σ ⊗ σ and ε(σ) = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Grouplike {
    pub vector: Vector,
}

impl Grouplike {
    pub fn new(h: &HopfAlgebraData, vector: Vector) -> Result<Self, HopfError> {
        let d = h.dim();
        if vector.max_index().map_or(false, |m| m >= d) {
            return Err(HopfError::InvalidGrouplike("index out of range".into()));
        }
        if !Field::is_one(&h.eps(&vector)) {
            return Err(HopfError::InvalidGrouplike("ε(σ) ≠ 1".into()));
        }
        let sq = SparseVec::from_pairs(
            vector.iter().flat_map(|(i, a)| vector.iter().map(move |(j, b)| (i * d + j, a * b))),
        );
        if h.comul(&vector) != sq {
            return Err(HopfError::InvalidGrouplike("Δσ ≠ σ ⊗ σ".into()));
        }
        Ok(Grouplike { vector })
    }

    pub fn one(h: &HopfAlgebraData) -> Self {
        Grouplike { vector: h.unit().clone() }
    }

    /// σ⁻¹ = S(σ).
    pub fn inverse(&self, h: &HopfAlgebraData) -> Vector {
        h.s(&self.vector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_is_commutative_algebra() {
        let a = FiniteAlgebra::truncated_polynomial(2);
        a.validate().unwrap();
        assert!(a.is_commutative());
        assert!(a.mul_basis(1, 1).is_zero());
    }

    #[test]
    fn matrix_algebra_units() {
        let m = FiniteAlgebra::matrix_algebra(3);
        m.validate().unwrap();
        assert!(!m.is_commutative());
        assert_eq!(m.mul_basis(0 * 3 + 1, 1 * 3 + 2), &SparseVec::unit(2));
        assert!(m.mul_basis(1, 0).is_zero());
    }

    #[test]
    fn tensor_algebra_validates() {
        let t = FiniteAlgebra::truncated_polynomial(2).tensor(&FiniteAlgebra::matrix_algebra(2));
        assert_eq!(t.dim(), 8);
        t.validate().unwrap();
    }

    #[test]
    fn broken_associativity_is_witnessed() {
        let mut mult: Vec<Vector> = FiniteAlgebra::truncated_polynomial(3).mult.clone();
        mult[1 * 3 + 1] = SparseVec::new();
        mult[1 * 3 + 2] = SparseVec::unit(2);
        let a = FiniteAlgebra::new(vec!["1".into(), "x".into(), "y".into()], mult, SparseVec::unit(0)).unwrap();
        let err = a.validate().unwrap_err();
        assert_eq!(err.axiom, "associativity");
    }
}
