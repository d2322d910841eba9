use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{AxiomReport, CyclicError, Operators, Order, ParaCyclicModule, Variance};
use crate::exactla::Mat;

/// Operators of a bi-paracyclic module X_{p,q}. The `p_*` operators change p and fix q;
/// the `q_*` operators change q and fix p. Faces lower the index, degeneracies raise it.
pub trait BiOperators: Send + Sync {
    fn dim(&self, p: usize, q: usize) -> usize;
    fn p_face(&self, p: usize, q: usize, i: usize) -> Mat;
    fn p_degeneracy(&self, p: usize, q: usize, i: usize) -> Mat;
    fn p_cyclic(&self, p: usize, q: usize) -> Mat;
    fn q_face(&self, p: usize, q: usize, i: usize) -> Mat;
    fn q_degeneracy(&self, p: usize, q: usize, i: usize) -> Mat;
    fn q_cyclic(&self, p: usize, q: usize) -> Mat;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    PFace(usize, usize, usize),
    PDeg(usize, usize, usize),
    PCyc(usize, usize),
    QFace(usize, usize, usize),
    QDeg(usize, usize, usize),
    QCyc(usize, usize),
}

/// A bi-paracyclic module with memoized operators.
pub struct CylindricalModule {
    pub name: String,
    ops: Box<dyn BiOperators>,
    cache: Mutex<HashMap<Key, Arc<Mat>>>,
}

impl fmt::Debug for CylindricalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CylindricalModule({})", self.name)
    }
}

impl CylindricalModule {
    pub fn new(name: impl Into<String>, ops: Box<dyn BiOperators>) -> Self {
        CylindricalModule { name: name.into(), ops, cache: Mutex::new(HashMap::new()) }
    }

    fn memo(&self, key: Key, f: impl FnOnce() -> Mat) -> Arc<Mat> {
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return m.clone();
        }
        let m = Arc::new(f());
        self.cache.lock().unwrap().entry(key).or_insert(m).clone()
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.ops.dim(p, q)
    }

    pub fn p_face(&self, p: usize, q: usize, i: usize) -> Arc<Mat> {
        self.memo(Key::PFace(p, q, i), || self.ops.p_face(p, q, i))
    }
    pub fn p_degeneracy(&self, p: usize, q: usize, i: usize) -> Arc<Mat> {
        self.memo(Key::PDeg(p, q, i), || self.ops.p_degeneracy(p, q, i))
    }
    pub fn p_cyclic(&self, p: usize, q: usize) -> Arc<Mat> {
        self.memo(Key::PCyc(p, q), || self.ops.p_cyclic(p, q))
    }
    pub fn q_face(&self, p: usize, q: usize, i: usize) -> Arc<Mat> {
        self.memo(Key::QFace(p, q, i), || self.ops.q_face(p, q, i))
    }
    pub fn q_degeneracy(&self, p: usize, q: usize, i: usize) -> Arc<Mat> {
        self.memo(Key::QDeg(p, q, i), || self.ops.q_degeneracy(p, q, i))
    }
    pub fn q_cyclic(&self, p: usize, q: usize) -> Arc<Mat> {
        self.memo(Key::QCyc(p, q), || self.ops.q_cyclic(p, q))
    }

    /// T_p = t^{p+1} on X_{p,q}.
    pub fn p_power(&self, p: usize, q: usize) -> Mat {
        self.p_cyclic(p, q).pow(p + 1)
    }

    /// T_q = τ^{q+1} on X_{p,q}.
    pub fn q_power(&self, p: usize, q: usize) -> Mat {
        self.q_cyclic(p, q).pow(q + 1)
    }

    /// Row q fixed as a paracyclic module in p, and column p fixed as one in q.
    pub fn p_row(self: &Arc<Self>, q: usize) -> ParaCyclicModule {
        ParaCyclicModule::new(format!("{} row q={q}", self.name), Variance::Cyclic, Order::Infinite, Box::new(Line { x: self.clone(), fixed: q, along_p: true }))
    }

    pub fn q_column(self: &Arc<Self>, p: usize) -> ParaCyclicModule {
        ParaCyclicModule::new(format!("{} column p={p}", self.name), Variance::Cyclic, Order::Infinite, Box::new(Line { x: self.clone(), fixed: p, along_p: false }))
    }

    /// Paracyclic identities in each direction, commutation of the two families, and
    /// T_p T_q = id, on all X_{p,q} with p, q ≤ `max_degree`.
    pub fn check(self: &Arc<Self>, max_degree: usize) -> AxiomReport {
        let mut rep = AxiomReport::default();
        for k in 0..=max_degree {
            for (label, x) in [("p", self.p_row(k)), ("q", self.q_column(k))] {
                let mut sub = AxiomReport::default();
                super::check_simplicial(&x, max_degree, &mut sub);
                super::check_cyclic_relations(&x, max_degree, &mut sub);
                for c in sub.checks {
                    let name = format!("{label}-direction {}", c.name);
                    let tagged = super::AxiomCheck { name, checked: c.checked, failure: c.failure.map(|(n, w)| (n, format!("fixed index {k}, {w}"))) };
                    merge(&mut rep, tagged);
                }
            }
        }
        for p in 0..=max_degree {
            for q in 0..=max_degree {
                self.check_commutation(p, q, max_degree, &mut rep);
                let l = self.p_power(p, q).mul(&self.q_power(p, q));
                rep.record("T_p T_q = id", p.max(q), &l, &Mat::identity(self.dim(p, q)), || format!("(p, q) = ({p}, {q})"));
            }
        }
        rep
    }

    fn check_commutation(&self, p: usize, q: usize, max: usize, rep: &mut AxiomReport) {
        // p-operators out of X_{p,q} against q-operators out of X_{p,q}
        let mut ps: Vec<(String, Arc<Mat>, isize)> = vec![("t".into(), self.p_cyclic(p, q), 0)];
        if p >= 1 {
            ps.extend((0..=p).map(|i| (format!("d_{i}"), self.p_face(p, q, i), -1)));
        }
        if p < max {
            ps.extend((0..=p).map(|i| (format!("s_{i}"), self.p_degeneracy(p, q, i), 1)));
        }
        let mut qs: Vec<(String, Arc<Mat>, isize)> = vec![("τ".into(), self.q_cyclic(p, q), 0)];
        if q >= 1 {
            qs.extend((0..=q).map(|i| (format!("δ_{i}"), self.q_face(p, q, i), -1)));
        }
        if q < max {
            qs.extend((0..=q).map(|i| (format!("σ_{i}"), self.q_degeneracy(p, q, i), 1)));
        }
        let shift = |x: usize, s: isize| (x as isize + s) as usize;
        for (pn, pm, ds) in &ps {
            for (qn, qm, dq) in &qs {
                let (p2, q2) = (shift(p, *ds), shift(q, *dq));
                // apply q-operator first, then the same p-operator at the new q
                let pop_after = self.p_op(pn, p, q2);
                let qop_after = self.q_op(qn, p2, q);
                let l = pop_after.mul(qm);
                let r = qop_after.mul(pm);
                rep.record("p- and q-operators commute", p.max(q), &l, &r, || format!("{pn} vs {qn} at ({p}, {q})"));
            }
        }
    }

    fn p_op(&self, name: &str, p: usize, q: usize) -> Arc<Mat> {
        let idx = |s: &str| s[s.find('_').unwrap() + 1..].parse::<usize>().unwrap();
        match name.chars().next().unwrap() {
            't' => self.p_cyclic(p, q),
            'd' => self.p_face(p, q, idx(name)),
            _ => self.p_degeneracy(p, q, idx(name)),
        }
    }

    fn q_op(&self, name: &str, p: usize, q: usize) -> Arc<Mat> {
        let idx = |s: &str| s[s.find('_').unwrap() + 1..].parse::<usize>().unwrap();
        match name.chars().next().unwrap() {
            'τ' => self.q_cyclic(p, q),
            'δ' => self.q_face(p, q, idx(name)),
            _ => self.q_degeneracy(p, q, idx(name)),
        }
    }

    /// Err(NotCylindrical) with the first failing identity.
    pub fn verify(self: &Arc<Self>, max_degree: usize) -> Result<(), CyclicError> {
        let rep = self.check(max_degree);
        match rep.first_failure() {
            None => Ok(()),
            Some((name, n, w)) => Err(CyclicError::NotCylindrical(format!("{name} (degree {n}): {w}"))),
        }
    }
}

fn merge(rep: &mut AxiomReport, c: super::AxiomCheck) {
    match rep.checks.iter_mut().find(|x| x.name == c.name) {
        Some(x) => {
            x.checked += c.checked;
            if x.failure.is_none() {
                x.failure = c.failure;
            }
        }
        None => rep.checks.push(c),
    }
}

struct Line {
    x: Arc<CylindricalModule>,
    fixed: usize,
    along_p: bool,
}

impl Operators for Line {
    fn dim(&self, n: usize) -> usize {
        if self.along_p {
            self.x.dim(n, self.fixed)
        } else {
            self.x.dim(self.fixed, n)
        }
    }
    fn face(&self, n: usize, i: usize) -> Mat {
        if self.along_p {
            (*self.x.p_face(n, self.fixed, i)).clone()
        } else {
            (*self.x.q_face(self.fixed, n, i)).clone()
        }
    }
    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        if self.along_p {
            (*self.x.p_degeneracy(n, self.fixed, i)).clone()
        } else {
            (*self.x.q_degeneracy(self.fixed, n, i)).clone()
        }
    }
    fn cyclic(&self, n: usize) -> Mat {
        if self.along_p {
            (*self.x.p_cyclic(n, self.fixed)).clone()
        } else {
            (*self.x.q_cyclic(self.fixed, n)).clone()
        }
    }
}

struct Diagonal {
    x: Arc<CylindricalModule>,
}

impl Operators for Diagonal {
    fn dim(&self, n: usize) -> usize {
        self.x.dim(n, n)
    }
    fn face(&self, n: usize, i: usize) -> Mat {
        self.x.q_face(n - 1, n, i).mul(&self.x.p_face(n, n, i))
    }
    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        self.x.q_degeneracy(n + 1, n, i).mul(&self.x.p_degeneracy(n, n, i))
    }
    fn cyclic(&self, n: usize) -> Mat {
        self.x.q_cyclic(n, n).mul(&self.x.p_cyclic(n, n))
    }
}

/// Diagonal d(X)_n = X_{n,n} with faces d_iδ_i, degeneracies s_iσ_i and cyclic operator
/// tτ. The cylindrical condition is verified through `check_through` first.
pub fn diagonal(x: Arc<CylindricalModule>, check_through: usize) -> Result<ParaCyclicModule, CyclicError> {
    x.verify(check_through)?;
    let name = format!("diag {}", x.name);
    Ok(ParaCyclicModule::new(name, Variance::Cyclic, Order::Finite(1), Box::new(Diagonal { x })))
}

#[cfg(test)]
mod tests {
    use super::super::{algebra_cyclic_module, check_cyclic_axioms};
    use super::*;
    use crate::hopfcore::{group_algebra, FiniteGroup};

    /// X_{p,q} = A♮_p ⊗ B♮_q for A = kℤ/2 and B = k[x]/x²: operators act factorwise,
    /// so both powers are the identity.
    struct Product {
        a: ParaCyclicModule,
        b: ParaCyclicModule,
        flip_sign: bool,
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
            let t = self.a.cyclic(p).kron(&Mat::identity(self.b.dim(q)));
            if self.flip_sign && p == 1 {
                t.neg()
            } else {
                t
            }
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

    fn product(flip_sign: bool) -> Arc<CylindricalModule> {
        let a = algebra_cyclic_module(&group_algebra(&FiniteGroup::cyclic(2)).algebra);
        let b = algebra_cyclic_module(&crate::hopfcore::FiniteAlgebra::truncated_polynomial(2));
        Arc::new(CylindricalModule::new("product", Box::new(Product { a, b, flip_sign })))
    }

    #[test]
    fn product_is_cylindrical_and_diagonal_is_cyclic() {
        let x = product(false);
        assert!(x.check(2).all_pass());
        let d = diagonal(x, 2).unwrap();
        assert!(check_cyclic_axioms(&d, 3).all_pass());
        assert_eq!(d.dim(1), 16);
    }

    #[test]
    fn sign_flip_breaks_cylindrical_condition() {
        let x = product(true);
        let err = diagonal(x, 2).unwrap_err();
        assert!(matches!(err, CyclicError::NotCylindrical(_)));
    }
}
