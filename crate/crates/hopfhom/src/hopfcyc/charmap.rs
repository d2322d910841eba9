use super::{cm_cocyclic, kr_cyclic, HopfCycError};
use crate::cyclicfw::{algebra_cyclic_module, check_morphism, AxiomReport};
use crate::exactla::{q, Field, Mat, SparseVec, Vector, Q};
use crate::hopfcore::tensor::{decode, encode, operator, size};
use crate::hopfcore::{twisted_antipode_cm, Character, FiniteAlgebra, Grouplike, HopfAlgebraData};

fn combine(ms: &[Mat], v: &Vector, dim: usize) -> Mat {
    v.iter().fold(Mat::zeros(dim, dim), |acc, (i, c)| acc.add_scaled(c, &ms[i]))
}

/// Left H-module algebra: `action[i]` is the matrix of a ↦ h_i(a).
#[derive(Clone, Debug)]
pub struct ModuleAlgebraAction {
    pub hopf: HopfAlgebraData,
    pub algebra: FiniteAlgebra,
    action: Vec<Mat>,
}

impl ModuleAlgebraAction {
    pub fn new(hopf: HopfAlgebraData, algebra: FiniteAlgebra, action: Vec<Mat>) -> Result<Self, HopfCycError> {
        let (dh, da) = (hopf.dim(), algebra.dim());
        let bad = |s: String| Err(HopfCycError::InvalidAction(s));
        if action.len() != dh || action.iter().any(|m| m.rows() != da || m.cols() != da) {
            return bad("one dim(A) × dim(A) matrix per basis element of H expected".into());
        }
        if !combine(&action, hopf.unit(), da).is_identity() {
            return bad("1 does not act as the identity".into());
        }
        for i in 0..dh {
            for j in 0..dh {
                if combine(&action, hopf.algebra.mul_basis(i, j), da) != action[i].mul(&action[j]) {
                    return bad(format!("(h_{i}h_{j})(a) ≠ h_{i}(h_{j}(a))"));
                }
            }
            let eps = &hopf.coalgebra.counit()[i];
            if action[i].apply(algebra.unit()) != algebra.unit().scale(eps) {
                return bad(format!("h_{i}(1) ≠ ε(h_{i})1"));
            }
            for a in 0..da {
                for b in 0..da {
                    let lhs = action[i].apply(algebra.mul_basis(a, b));
                    let mut rhs = SparseVec::new();
                    for (jk, c) in hopf.coalgebra.comult_basis(i).iter() {
                        let p = algebra.mul(action[jk / dh].col(a), action[jk % dh].col(b));
                        rhs = rhs.add_scaled(c, &p);
                    }
                    if lhs != rhs {
                        return bad(format!("h_{i}(e_{a}e_{b}) ≠ h⁽¹⁾(e_{a})h⁽²⁾(e_{b})"));
                    }
                }
            }
        }
        Ok(ModuleAlgebraAction { hopf, algebra, action })
    }

    /// H acting on itself by conjugation-free trivial action h(a) = ε(h)a.
    pub fn trivial(hopf: HopfAlgebraData, algebra: FiniteAlgebra) -> Self {
        let da = algebra.dim();
        let action = hopf.coalgebra.counit().iter().map(|e| Mat::identity(da).scale(e)).collect();
        ModuleAlgebraAction { hopf, algebra, action }
    }

    pub fn matrix(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.action
    }

    pub fn act(&self, h: &Vector) -> Mat {
        combine(&self.action, h, self.algebra.dim())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// a ↦ a⁽⁻¹⁾ ⊗ a⁽⁰⁾, index h·dim(A) + a.
    Left,
    /// a ↦ a⁽⁰⁾ ⊗ a⁽¹⁾, index a·dim(H) + h.
    Right,
}

/// H-comodule algebra with coaction matrix ρ.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebraCoaction {
    pub hopf: HopfAlgebraData,
    pub algebra: FiniteAlgebra,
    pub side: Side,
    coaction: Mat,
}

impl ComoduleAlgebraCoaction {
    pub fn new(hopf: HopfAlgebraData, algebra: FiniteAlgebra, side: Side, coaction: Mat) -> Result<Self, HopfCycError> {
        let (dh, da) = (hopf.dim(), algebra.dim());
        let bad = |s: &str| Err(HopfCycError::InvalidCoaction(s.to_string()));
        if coaction.rows() != dh * da || coaction.cols() != da {
            return bad("coaction has wrong shape");
        }
        let (ih, ia) = (Mat::identity(dh), Mat::identity(da));
        let delta = hopf.coalgebra.comult_matrix();
        let eps = Mat::from_columns(1, hopf.coalgebra.counit().iter().map(|e| SparseVec::from_dense(&[e.clone()])).collect());
        let prod_alg = match side {
            Side::Left => hopf.algebra.tensor(&algebra),
            Side::Right => algebra.tensor(&hopf.algebra),
        };
        let (coassoc, counit) = match side {
            Side::Left => (
                ih.kron(&coaction).mul(&coaction) == delta.kron(&ia).mul(&coaction),
                eps.kron(&ia).mul(&coaction) == ia,
            ),
            Side::Right => (
                coaction.kron(&ih).mul(&coaction) == ia.kron(&delta).mul(&coaction),
                ia.kron(&eps).mul(&coaction) == ia,
            ),
        };
        if !coassoc {
            return bad("coaction is not coassociative");
        }
        if !counit {
            return bad("coaction is not counital");
        }
        let unit_image = match side {
            Side::Left => tensor_vec(hopf.unit(), algebra.unit(), da),
            Side::Right => tensor_vec(algebra.unit(), hopf.unit(), dh),
        };
        if coaction.apply(algebra.unit()) != unit_image {
            return bad("ρ(1) ≠ 1 ⊗ 1");
        }
        for a in 0..da {
            for b in 0..da {
                let lhs = coaction.apply(algebra.mul_basis(a, b));
                let rhs = prod_alg.mul(coaction.col(a), coaction.col(b));
                if lhs != rhs {
                    return bad("coaction is not multiplicative");
                }
            }
        }
        Ok(ComoduleAlgebraCoaction { hopf, algebra, side, coaction })
    }

    /// A = H with ρ = Δ.
    pub fn regular(hopf: &HopfAlgebraData, side: Side) -> Self {
        ComoduleAlgebraCoaction {
            hopf: hopf.clone(),
            algebra: hopf.algebra.clone(),
            side,
            coaction: hopf.coalgebra.comult_matrix(),
        }
    }

    pub fn matrix(&self) -> &Mat {
        &self.coaction
    }

    /// Terms (h, a, c) of ρ(e_i) regardless of side.
    pub fn terms(&self, i: usize) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        let (dh, da) = (self.hopf.dim(), self.algebra.dim());
        let side = self.side;
        self.coaction.col(i).iter().map(move |(k, c)| match side {
            Side::Left => (k / da, k % da, c),
            Side::Right => (k % dh, k / dh, c),
        })
    }
}

fn tensor_vec(a: &Vector, b: &Vector, db: usize) -> Vector {
    SparseVec::from_pairs(a.iter().flat_map(|(i, x)| b.iter().map(move |(j, y)| (i * db + j, x * y))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceMode {
    /// Tr(h(a)b) = Tr(a S̃(h)(b)) and Tr(ab) = Tr(b σ(a)).
    CmDeltaInvariant,
    /// Tr(ab) = Tr(b⁽⁰⁾a)δ(b⁽¹⁾) and Tr(a⁽⁰⁾)a⁽¹⁾ = Tr(a)σ.
    KrDeltaTraceSigmaInvariant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantTrace {
    pub values: Vec<Q>,
    pub mode: TraceMode,
}

impl InvariantTrace {
    pub fn eval(&self, v: &Vector) -> Q {
        v.iter().fold(q(0), |acc, (i, c)| acc + c * &self.values[i])
    }

    pub fn check_cm(&self, act: &ModuleAlgebraAction, delta: &Character, sigma: &Grouplike) -> Result<(), String> {
        let a = &act.algebra;
        let d = a.dim();
        let st = twisted_antipode_cm(&act.hopf, delta);
        let s_act = act.act(&sigma.vector);
        for i in 0..act.hopf.dim() {
            let sti = act.act(st.col(i));
            for x in 0..d {
                for y in 0..d {
                    let l = self.eval(&a.mul(act.matrix(i).col(x), &SparseVec::unit(y)));
                    let r = self.eval(&a.mul(&SparseVec::unit(x), sti.col(y)));
                    if l != r {
                        return Err(format!("Tr(h(a)b) ≠ Tr(aS̃(h)(b)) at h = {i}, a = {x}, b = {y}"));
                    }
                }
            }
        }
        for x in 0..d {
            for y in 0..d {
                if self.eval(a.mul_basis(x, y)) != self.eval(&a.mul(&SparseVec::unit(y), s_act.col(x))) {
                    return Err(format!("Tr(ab) ≠ Tr(bσ(a)) at a = {x}, b = {y}"));
                }
            }
        }
        Ok(())
    }

    pub fn check_kr(&self, co: &ComoduleAlgebraCoaction, delta: &Character, sigma: &Grouplike) -> Result<(), String> {
        if co.side != Side::Right {
            return Err("δ-trace needs a right coaction".into());
        }
        let a = &co.algebra;
        let d = a.dim();
        for x in 0..d {
            for y in 0..d {
                let l = self.eval(a.mul_basis(x, y));
                let r = co.terms(y).fold(q(0), |acc, (h, b0, c)| {
                    acc + c * &delta.values[h] * self.eval(a.mul_basis(b0, x))
                });
                if l != r {
                    return Err(format!("Tr(ab) ≠ Tr(b⁽⁰⁾a)δ(b⁽¹⁾) at a = {x}, b = {y}"));
                }
            }
        }
        for x in 0..d {
            let lhs = SparseVec::from_pairs(co.terms(x).map(|(h, a0, c)| (h, c * &self.values[a0])));
            if lhs != sigma.vector.scale(&self.values[x]) {
                return Err(format!("Tr(a⁽⁰⁾)a⁽¹⁾ ≠ Tr(a)σ at a = {x}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CharMapReport {
    /// Degree n map as a matrix, in the direction checked (A♮_n → target cyclic view).
    pub maps: Vec<Mat>,
    pub trace_failure: Option<String>,
    pub morphism: AxiomReport,
}

impl CharMapReport {
    pub fn holds(&self) -> bool {
        self.trace_failure.is_none() && self.morphism.all_pass()
    }

    pub fn first_failing_degree(&self) -> Option<usize> {
        self.morphism.first_failure().map(|(_, n, _)| n)
    }

    pub fn require_invariant(&self) -> Result<(), HopfCycError> {
        match &self.trace_failure {
            Some(w) => Err(HopfCycError::TraceNotInvariant(w.clone())),
            None => Ok(()),
        }
    }
}

/// γ(h_1 ⊗ … ⊗ h_n)(a_0, …, a_n) = Tr(a_0 h_1(a_1) ⋯ h_n(a_n)), checked against every
/// operator through degree `max_n` (as the transposed map A♮ → view of H♮_{(δ,σ)}).
pub fn characteristic_map_cm(
    act: &ModuleAlgebraAction,
    tr: &InvariantTrace,
    delta: &Character,
    sigma: &Grouplike,
    max_n: usize,
) -> Result<CharMapReport, HopfCycError> {
    if tr.values.len() != act.algebra.dim() {
        return Err(HopfCycError::Shape("trace length ≠ dim A".into()));
    }
    let trace_failure = tr.check_cm(act, delta, sigma).err();
    let y = cm_cocyclic(&act.hopf, delta, sigma)?;
    let x = algebra_cyclic_module(&act.algebra);
    let (dh, da) = (act.hopf.dim(), act.algebra.dim());
    let a = &act.algebra;
    let maps: Vec<Mat> = (0..=max_n)
        .map(|n| {
            // rows: H^{⊗n}, columns: A^{⊗(n+1)}
            operator(&vec![da; n + 1], &vec![dh; n], |t, s| {
                for col in 0..size(&vec![dh; n]) {
                    let hs = decode(col, &vec![dh; n]);
                    let mut p = SparseVec::unit(t[0]);
                    for k in 0..n {
                        p = a.mul(&p, act.matrix(hs[k]).col(t[k + 1]));
                        if p.is_zero() {
                            break;
                        }
                    }
                    let v = tr.eval(&p);
                    if !Field::is_zero(&v) {
                        s.add_index(col, v);
                    }
                }
            })
        })
        .collect();
    let morphism = check_morphism(&x, &y, &|n| maps[n].clone(), max_n);
    Ok(CharMapReport { maps, trace_failure, morphism })
}

/// γ(a_0 ⊗ … ⊗ a_n) = Tr(a_0 a_1⁽⁰⁾ ⋯ a_n⁽⁰⁾) a_1⁽¹⁾ ⊗ … ⊗ a_n⁽¹⁾ for a right coaction,
/// checked against every operator through degree `max_n`.
pub fn characteristic_map_kr(
    co: &ComoduleAlgebraCoaction,
    tr: &InvariantTrace,
    delta: &Character,
    sigma: &Grouplike,
    max_n: usize,
) -> Result<CharMapReport, HopfCycError> {
    if co.side != Side::Right {
        return Err(HopfCycError::InvalidCoaction("the characteristic map uses a right coaction".into()));
    }
    if tr.values.len() != co.algebra.dim() {
        return Err(HopfCycError::Shape("trace length ≠ dim A".into()));
    }
    let trace_failure = tr.check_kr(co, delta, sigma).err();
    let y = kr_cyclic(&co.hopf, delta, sigma)?;
    let x = algebra_cyclic_module(&co.algebra);
    let (dh, da) = (co.hopf.dim(), co.algebra.dim());
    let a = &co.algebra;
    let maps: Vec<Mat> = (0..=max_n)
        .map(|n| {
            let hd = vec![dh; n];
            operator(&vec![da; n + 1], &hd, |t, s| {
                fn rec(
                    co: &ComoduleAlgebraCoaction,
                    a: &FiniteAlgebra,
                    tr: &InvariantTrace,
                    t: &[usize],
                    k: usize,
                    p: Vector,
                    coef: Q,
                    hs: &mut Vec<usize>,
                    hd: &[usize],
                    s: &mut crate::hopfcore::tensor::Sink<'_>,
                ) {
                    if k == t.len() {
                        let v = tr.eval(&p);
                        if !Field::is_zero(&v) {
                            s.add_index(encode(hs, hd), coef * v);
                        }
                        return;
                    }
                    for (h, a0, c) in co.terms(t[k]) {
                        let np = a.mul(&p, &SparseVec::unit(a0));
                        if np.is_zero() {
                            continue;
                        }
                        hs.push(h);
                        rec(co, a, tr, t, k + 1, np, &coef * c, hs, hd, s);
                        hs.pop();
                    }
                }
                let mut hs = Vec::with_capacity(n);
                rec(co, a, tr, t, 1, SparseVec::unit(t[0]), q(1), &mut hs, &hd, s);
            })
        })
        .collect();
    let morphism = check_morphism(&x, &y, &|n| maps[n].clone(), max_n);
    Ok(CharMapReport { maps, trace_failure, morphism })
}
