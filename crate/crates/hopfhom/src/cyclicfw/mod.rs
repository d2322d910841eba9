//! Paracyclic, cocyclic and cylindrical modules as families of exact operator matrices.
//!
//! A module stores its operators in their native direction. Cocyclic modules are read
//! through the transposed *cyclic view* (`face`, `degeneracy`, `cyclic`), which turns
//! every cocyclic identity into the corresponding cyclic one, so one checker and one
//! homology engine serve both variances.

mod cylindrical;
mod standard;
mod sub;

pub use cylindrical::{diagonal, BiOperators, CylindricalModule};
pub use standard::{
    algebra_cyclic_module, coalgebra_coeff_complex, coalgebra_cocyclic_module, hochschild_coeff_complex,
    twisted_cyclic_module, Bicomodule, Bimodule, ChainComplex,
};
pub use sub::{quotient_module, sub_module, BasisFamily};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::exactla::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// δ_i: X_n → X_{n−1}, σ_i: X_n → X_{n+1}.
    Cyclic,
    /// δ_i: X^{n−1} → X^n, σ_i: X^{n+1} → X^n.
    Cocyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclicError {
    #[error("not an algebra automorphism")]
    NotAutomorphism,
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("invalid bicomodule: {0}")]
    InvalidBicomodule(String),
    #[error("not cylindrical: {0}")]
    NotCylindrical(String),
    #[error("operator escapes subspace: {0}")]
    OperatorEscapesSubspace(String),
}

/// Native-direction operators of a (co)cyclic family.
///
/// For `Variance::Cyclic`: `face(n, i)`: X_n → X_{n−1} (0 ≤ i ≤ n), `degeneracy(n, i)`:
/// X_n → X_{n+1} (0 ≤ i ≤ n). For `Variance::Cocyclic`: `face(n, i)`: X^{n−1} → X^n
/// (0 ≤ i ≤ n), `degeneracy(n, i)`: X^{n+1} → X^n (0 ≤ i ≤ n). `cyclic(n)` acts on degree n.
pub trait Operators: Send + Sync {
    fn dim(&self, n: usize) -> usize;
    fn face(&self, n: usize, i: usize) -> Mat;
    fn degeneracy(&self, n: usize, i: usize) -> Mat;
    fn cyclic(&self, n: usize) -> Mat;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Face(usize, usize),
    Degeneracy(usize, usize),
    Cyclic(usize),
}

/// A paracyclic (order r or ∞) or cocyclic module with memoized operators.
pub struct ParaCyclicModule {
    pub name: String,
    variance: Variance,
    order: Order,
    ops: Box<dyn Operators>,
    raw: Mutex<HashMap<Key, Arc<Mat>>>,
    view: Mutex<HashMap<Key, Arc<Mat>>>,
}

pub type CocyclicModule = ParaCyclicModule;

impl fmt::Debug for ParaCyclicModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParaCyclicModule({}, {:?}, {:?})", self.name, self.variance, self.order)
    }
}

impl ParaCyclicModule {
    pub fn new(name: impl Into<String>, variance: Variance, order: Order, ops: Box<dyn Operators>) -> Self {
        ParaCyclicModule {
            name: name.into(),
            variance,
            order,
            ops,
            raw: Mutex::new(HashMap::new()),
            view: Mutex::new(HashMap::new()),
        }
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn order(&self) -> Order {
        self.order
    }

    /// Declares the order of τ, e.g. for a cyclic submodule of a paracyclic module.
    pub fn with_order(mut self, order: Order) -> Self {
        self.order = order;
        self
    }

    pub fn dim(&self, n: usize) -> usize {
        self.ops.dim(n)
    }

    fn memo(&self, cache: &Mutex<HashMap<Key, Arc<Mat>>>, key: Key, f: impl FnOnce() -> Mat) -> Arc<Mat> {
        if let Some(m) = cache.lock().unwrap().get(&key) {
            return m.clone();
        }
        let m = Arc::new(f());
        cache.lock().unwrap().entry(key).or_insert(m).clone()
    }

    pub fn raw_face(&self, n: usize, i: usize) -> Arc<Mat> {
        self.memo(&self.raw, Key::Face(n, i), || self.ops.face(n, i))
    }

    pub fn raw_degeneracy(&self, n: usize, i: usize) -> Arc<Mat> {
        self.memo(&self.raw, Key::Degeneracy(n, i), || self.ops.degeneracy(n, i))
    }

    pub fn raw_cyclic(&self, n: usize) -> Arc<Mat> {
        self.memo(&self.raw, Key::Cyclic(n), || self.ops.cyclic(n))
    }

    /// δ_i: X_n → X_{n−1} in the cyclic view.
    pub fn face(&self, n: usize, i: usize) -> Arc<Mat> {
        match self.variance {
            Variance::Cyclic => self.raw_face(n, i),
            Variance::Cocyclic => self.memo(&self.view, Key::Face(n, i), || self.raw_face(n, i).transpose()),
        }
    }

    /// σ_i: X_n → X_{n+1} in the cyclic view.
    pub fn degeneracy(&self, n: usize, i: usize) -> Arc<Mat> {
        match self.variance {
            Variance::Cyclic => self.raw_degeneracy(n, i),
            Variance::Cocyclic => {
                self.memo(&self.view, Key::Degeneracy(n, i), || self.raw_degeneracy(n, i).transpose())
            }
        }
    }

    /// τ: X_n → X_n in the cyclic view.
    pub fn cyclic(&self, n: usize) -> Arc<Mat> {
        match self.variance {
            Variance::Cyclic => self.raw_cyclic(n),
            Variance::Cocyclic => self.memo(&self.view, Key::Cyclic(n), || self.raw_cyclic(n).transpose()),
        }
    }
}

/// Outcome of one family of identities.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub name: String,
    pub checked: usize,
    /// (degree, description) of the first failure.
    pub failure: Option<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<(&str, usize, &str)> {
        self.checks
            .iter()
            .find_map(|c| c.failure.as_ref().map(|(n, w)| (c.name.as_str(), *n, w.as_str())))
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub(crate) fn record(&mut self, name: &str, degree: usize, lhs: &Mat, rhs: &Mat, what: impl FnOnce() -> String) {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(AxiomCheck { name: name.to_string(), checked: 0, failure: None });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[idx];
        c.checked += 1;
        if c.failure.is_none() {
            if let Some(w) = lhs.first_mismatch(rhs) {
                c.failure = Some((degree, format!("{}: {}", what(), w)));
            }
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "{}: pass ({} identities)", c.name, c.checked)?,
                Some((n, w)) => writeln!(f, "{}: FAIL in degree {}: {}", c.name, n, w)?,
            }
        }
        Ok(())
    }
}

/// Checks the simplicial and cyclic identities in the cyclic view, using only spaces of
/// degree ≤ `max_degree`.
pub fn check_cyclic_axioms(x: &ParaCyclicModule, max_degree: usize) -> AxiomReport {
    let mut rep = AxiomReport::default();
    check_simplicial(x, max_degree, &mut rep);
    check_cyclic_relations(x, max_degree, &mut rep);
    if let Order::Finite(r) = x.order() {
        for n in 0..=max_degree {
            let t = x.cyclic(n);
            let p = t.pow(r * (n + 1));
            rep.record("τ^{r(n+1)} = id", n, &p, &Mat::identity(x.dim(n)), || format!("n = {n}"));
        }
    }
    rep
}

/// Simplicial identities (cyclic view).
pub fn check_simplicial(x: &ParaCyclicModule, max_degree: usize, rep: &mut AxiomReport) {
    for n in 2..=max_degree {
        for j in 1..=n {
            for i in 0..j {
                let l = x.face(n - 1, i).mul(&x.face(n, j));
                let r = x.face(n - 1, j - 1).mul(&x.face(n, i));
                rep.record("δ_iδ_j = δ_{j−1}δ_i", n, &l, &r, || format!("i = {i}, j = {j}"));
            }
        }
    }
    for n in 0..max_degree.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                let l = x.degeneracy(n + 1, i).mul(&x.degeneracy(n, j));
                let r = x.degeneracy(n + 1, j + 1).mul(&x.degeneracy(n, i));
                rep.record("σ_iσ_j = σ_{j+1}σ_i", n, &l, &r, || format!("i = {i}, j = {j}"));
            }
        }
    }
    for n in 0..max_degree {
        let id = Mat::identity(x.dim(n));
        for j in 0..=n {
            let s = x.degeneracy(n, j);
            for i in 0..=n + 1 {
                let l = x.face(n + 1, i).mul(&s);
                let (name, r) = if i < j {
                    ("δ_iσ_j = σ_{j−1}δ_i", x.degeneracy(n - 1, j - 1).mul(&x.face(n, i)))
                } else if i == j || i == j + 1 {
                    ("δ_iσ_j = id", id.clone())
                } else {
                    ("δ_iσ_j = σ_jδ_{i−1}", x.degeneracy(n - 1, j).mul(&x.face(n, i - 1)))
                };
                rep.record(name, n, &l, &r, || format!("i = {i}, j = {j}"));
            }
        }
    }
}

/// The four τ-compatibility relations (cyclic view).
pub fn check_cyclic_relations(x: &ParaCyclicModule, max_degree: usize, rep: &mut AxiomReport) {
    for n in 1..=max_degree {
        let t = x.cyclic(n);
        let tm = x.cyclic(n - 1);
        for i in 1..=n {
            let l = x.face(n, i).mul(&t);
            let r = tm.mul(&x.face(n, i - 1));
            rep.record("δ_iτ = τδ_{i−1}", n, &l, &r, || format!("i = {i}"));
        }
        let l = x.face(n, 0).mul(&t);
        rep.record("δ_0τ = δ_n", n, &l, &x.face(n, n), String::new);
    }
    for n in 0..max_degree {
        let t = x.cyclic(n);
        let tp = x.cyclic(n + 1);
        for i in 1..=n {
            let l = x.degeneracy(n, i).mul(&t);
            let r = tp.mul(&x.degeneracy(n, i - 1));
            rep.record("σ_iτ = τσ_{i−1}", n, &l, &r, || format!("i = {i}"));
        }
        let l = x.degeneracy(n, 0).mul(&t);
        let r = tp.mul(&tp).mul(&x.degeneracy(n, n));
        rep.record("σ_0τ = τ²σ_n", n, &l, &r, String::new);
    }
}

/// Checks that a family of maps `f(n)`: X_n → Y_n (cyclic view) commutes with every face,
/// degeneracy and cyclic operator, using spaces of degree ≤ `max_degree`.
pub fn check_morphism(
    x: &ParaCyclicModule,
    y: &ParaCyclicModule,
    f: &dyn Fn(usize) -> Mat,
    max_degree: usize,
) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let maps: Vec<Mat> = (0..=max_degree).map(f).collect();
    for n in 0..=max_degree {
        rep.record("fτ = τf", n, &maps[n].mul(&x.cyclic(n)), &y.cyclic(n).mul(&maps[n]), || format!("n = {n}"));
        if n >= 1 {
            for i in 0..=n {
                let l = maps[n - 1].mul(&x.face(n, i));
                let r = y.face(n, i).mul(&maps[n]);
                rep.record("fδ_i = δ_if", n, &l, &r, || format!("i = {i}"));
            }
        }
        if n < max_degree {
            for i in 0..=n {
                let l = maps[n + 1].mul(&x.degeneracy(n, i));
                let r = y.degeneracy(n, i).mul(&maps[n]);
                rep.record("fσ_i = σ_if", n, &l, &r, || format!("i = {i}"));
            }
        }
    }
    rep
}

/// Wraps another module's operators, replacing the cyclic operator in every degree.
/// Used for negative controls.
pub fn with_cyclic_operator(
    x: Arc<ParaCyclicModule>,
    name: impl Into<String>,
    tau: impl Fn(usize) -> Mat + Send + Sync + 'static,
) -> ParaCyclicModule {
    struct Replaced<F> {
        x: Arc<ParaCyclicModule>,
        tau: F,
    }
    impl<F: Fn(usize) -> Mat + Send + Sync> Operators for Replaced<F> {
        fn dim(&self, n: usize) -> usize {
            self.x.dim(n)
        }
        fn face(&self, n: usize, i: usize) -> Mat {
            (*self.x.raw_face(n, i)).clone()
        }
        fn degeneracy(&self, n: usize, i: usize) -> Mat {
            (*self.x.raw_degeneracy(n, i)).clone()
        }
        fn cyclic(&self, n: usize) -> Mat {
            (self.tau)(n)
        }
    }
    let (variance, order) = (x.variance(), x.order());
    ParaCyclicModule::new(name, variance, order, Box::new(Replaced { x, tau }))
}
