use std::collections::BTreeMap;
use std::fmt;

use super::QpbwError;
use crate::exactla::{q, Field, Q};

/// σ^l x^m y^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    pub l: i64,
    pub m: u32,
    pub n: u32,
}

impl PbwMonomial {
    pub const ONE: PbwMonomial = PbwMonomial { l: 0, m: 0, n: 0 };

    pub fn new(l: i64, m: u32, n: u32) -> Self {
        PbwMonomial { l, m, n }
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Self::ONE {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if self.l != 0 {
            parts.push(format!("σ^{}", self.l));
        }
        if self.m != 0 {
            parts.push(format!("x^{}", self.m));
        }
        if self.n != 0 {
            parts.push(format!("y^{}", self.n));
        }
        write!(f, "{}", parts.join(""))
    }
}

/// Finite linear combination of PBW monomials, zero coefficients dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PbwElement {
    terms: BTreeMap<PbwMonomial, Q>,
}

impl PbwElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn mono(m: PbwMonomial) -> Self {
        Self::term(m, q(1))
    }

    pub fn term(m: PbwMonomial, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn scalar(c: Q) -> Self {
        Self::term(PbwMonomial::ONE, c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Q) {
        let e = self.terms.entry(m).or_insert_with(|| q(0));
        *e += c;
        if Field::is_zero(e) {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if Field::is_zero(c) {
            return Self::zero();
        }
        PbwElement { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}){m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Sigma,
    SigmaInv,
    X,
    Y,
}

/// Element of H ⊗ H on PBW pairs. Read as H ⊗ H for Δ, or as H^e = H ⊗ H^op.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PbwTensor {
    terms: BTreeMap<(PbwMonomial, PbwMonomial), Q>,
}

impl PbwTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(a: &PbwElement, b: &PbwElement) -> Self {
        let mut t = Self::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(*ma, *mb, ca * cb);
            }
        }
        t
    }

    pub fn basis(a: PbwMonomial, b: PbwMonomial) -> Self {
        let mut t = Self::zero();
        t.add_term(a, b, q(1));
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PbwMonomial, PbwMonomial), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: PbwMonomial, b: PbwMonomial, c: Q) {
        let e = self.terms.entry((a, b)).or_insert_with(|| q(0));
        *e += c;
        if Field::is_zero(e) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if Field::is_zero(c) {
            return Self::zero();
        }
        PbwTensor { terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }
}

/// U_q(sl2) at an exact rational q ∉ {0, 1, −1}.
#[derive(Clone, Debug)]
pub struct Uq {
    q: Q,
    /// 1/(q − q⁻¹).
    c: Q,
}

impl Uq {
    pub fn new(qv: Q) -> Result<Self, QpbwError> {
        if Field::is_zero(&qv) || qv == q(1) || qv == q(-1) {
            return Err(QpbwError::InvalidParameter(qv.to_string()));
        }
        let c = q(1) / (&qv - q(1) / &qv);
        Ok(Uq { q: qv, c })
    }

    pub fn q(&self) -> &Q {
        &self.q
    }

    /// 1/(q − q⁻¹).
    pub fn c(&self) -> &Q {
        &self.c
    }

    pub fn qpow(&self, e: i64) -> Q {
        let b = if e >= 0 { self.q.clone() } else { q(1) / &self.q };
        (0..e.unsigned_abs()).fold(q(1), |acc, _| acc * &b)
    }

    pub fn one(&self) -> PbwElement {
        PbwElement::mono(PbwMonomial::ONE)
    }

    pub fn gen(&self, g: Generator) -> PbwElement {
        PbwElement::mono(match g {
            Generator::Sigma => PbwMonomial::new(1, 0, 0),
            Generator::SigmaInv => PbwMonomial::new(-1, 0, 0),
            Generator::X => PbwMonomial::new(0, 1, 0),
            Generator::Y => PbwMonomial::new(0, 0, 1),
        })
    }

    /// σ^l x^m y^n · g in normal form.
    fn mono_times_gen(&self, a: PbwMonomial, g: Generator, out: &mut PbwElement, coef: &Q) {
        let PbwMonomial { l, m, n } = a;
        match g {
            Generator::Sigma | Generator::SigmaInv => {
                // x σ = q⁻²σ x and y σ = q²σ y.
                let e = if g == Generator::Sigma { 1 } else { -1 };
                let f = self.qpow(2 * e * (n as i64 - m as i64));
                out.add_term(PbwMonomial::new(l + e, m, n), coef * f);
            }
            Generator::Y => out.add_term(PbwMonomial::new(l, m, n + 1), coef.clone()),
            Generator::X => {
                // y^n x = x y^n − c Σ_j (q^{2j}σ − q^{−2j}σ⁻¹) y^{n−1}, then σ^{±1} moves left past x^m.
                out.add_term(PbwMonomial::new(l, m + 1, n), coef.clone());
                if n > 0 {
                    let (mut plus, mut minus) = (q(0), q(0));
                    for j in 0..n as i64 {
                        plus += self.qpow(2 * j);
                        minus += self.qpow(-2 * j);
                    }
                    let mm = m as i64;
                    let cp = -(coef * &self.c) * plus * self.qpow(-2 * mm);
                    let cm = coef * &self.c * minus * self.qpow(2 * mm);
                    out.add_term(PbwMonomial::new(l + 1, m, n - 1), cp);
                    out.add_term(PbwMonomial::new(l - 1, m, n - 1), cm);
                }
            }
        }
    }

    pub fn mul_gen(&self, a: &PbwElement, g: Generator) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in a.terms() {
            self.mono_times_gen(*m, g, &mut out, c);
        }
        out
    }

    /// The word σ^l x^m y^n as generators.
    pub fn word(m: PbwMonomial) -> Vec<Generator> {
        let s = if m.l >= 0 { Generator::Sigma } else { Generator::SigmaInv };
        let mut w = vec![s; m.l.unsigned_abs() as usize];
        w.extend(std::iter::repeat(Generator::X).take(m.m as usize));
        w.extend(std::iter::repeat(Generator::Y).take(m.n as usize));
        w
    }

    pub fn normal_form(&self, word: &[Generator]) -> PbwElement {
        word.iter().fold(self.one(), |acc, &g| self.mul_gen(&acc, g))
    }

    pub fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (mb, cb) in b.terms() {
            let prod = Self::word(*mb).into_iter().fold(a.clone(), |acc, g| self.mul_gen(&acc, g));
            out = out.add(&prod.scale(cb));
        }
        out
    }

    pub fn pow(&self, a: &PbwElement, k: u32) -> PbwElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn eps(&self, a: &PbwElement) -> Q {
        a.terms().filter(|(m, _)| m.m == 0 && m.n == 0).fold(q(0), |acc, (_, c)| acc + c)
    }

    /// (a ⊗ b)(c ⊗ d) = ac ⊗ bd.
    pub fn tensor_mul(&self, u: &PbwTensor, v: &PbwTensor) -> PbwTensor {
        let mut out = PbwTensor::zero();
        for ((a, b), x) in u.terms() {
            for ((c, d), y) in v.terms() {
                let left = self.mul(&PbwElement::mono(*a), &PbwElement::mono(*c));
                let right = self.mul(&PbwElement::mono(*b), &PbwElement::mono(*d));
                out = out.add(&PbwTensor::pure(&left, &right).scale(&(x * y)));
            }
        }
        out
    }

    /// In H^e = H ⊗ H^op: (a ⊗ b)(c ⊗ d) = ac ⊗ db.
    pub fn env_mul(&self, u: &PbwTensor, v: &PbwTensor) -> PbwTensor {
        let mut out = PbwTensor::zero();
        for ((a, b), x) in u.terms() {
            for ((c, d), y) in v.terms() {
                let left = self.mul(&PbwElement::mono(*a), &PbwElement::mono(*c));
                let right = self.mul(&PbwElement::mono(*d), &PbwElement::mono(*b));
                out = out.add(&PbwTensor::pure(&left, &right).scale(&(x * y)));
            }
        }
        out
    }

    fn gen_coproduct(&self, g: Generator) -> PbwTensor {
        let (s, si, x, y, one) = (
            self.gen(Generator::Sigma),
            self.gen(Generator::SigmaInv),
            self.gen(Generator::X),
            self.gen(Generator::Y),
            self.one(),
        );
        match g {
            Generator::Sigma => PbwTensor::pure(&s, &s),
            Generator::SigmaInv => PbwTensor::pure(&si, &si),
            Generator::X => PbwTensor::pure(&x, &s).add(&PbwTensor::pure(&one, &x)),
            Generator::Y => PbwTensor::pure(&y, &one).add(&PbwTensor::pure(&si, &y)),
        }
    }

    /// Δ(x) = x⊗σ + 1⊗x, Δ(y) = y⊗1 + σ⁻¹⊗y, Δ(σ) = σ⊗σ, extended multiplicatively.
    pub fn coproduct(&self, a: &PbwElement) -> PbwTensor {
        let mut out = PbwTensor::zero();
        for (m, c) in a.terms() {
            let t = Self::word(*m)
                .into_iter()
                .fold(PbwTensor::pure(&self.one(), &self.one()), |acc, g| self.tensor_mul(&acc, &self.gen_coproduct(g)));
            out = out.add(&t.scale(c));
        }
        out
    }

    /// S(σ) = σ⁻¹, S(x) = −xσ⁻¹, S(y) = −σy, extended anti-multiplicatively.
    pub fn antipode(&self, a: &PbwElement) -> PbwElement {
        let sg = |g: Generator| -> PbwElement {
            match g {
                Generator::Sigma => self.gen(Generator::SigmaInv),
                Generator::SigmaInv => self.gen(Generator::Sigma),
                Generator::X => self.mul(&self.gen(Generator::X), &self.gen(Generator::SigmaInv)).scale(&q(-1)),
                Generator::Y => self.mul(&self.gen(Generator::Sigma), &self.gen(Generator::Y)).scale(&q(-1)),
            }
        };
        let mut out = PbwElement::zero();
        for (m, c) in a.terms() {
            let t = Self::word(*m).into_iter().fold(self.one(), |acc, g| self.mul(&sg(g), &acc));
            out = out.add(&t.scale(c));
        }
        out
    }

    /// m ∘ (f ⊗ g) on a tensor.
    pub fn contract(&self, t: &PbwTensor, f: impl Fn(&PbwElement) -> PbwElement, g: impl Fn(&PbwElement) -> PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for ((a, b), c) in t.terms() {
            let x = self.mul(&f(&PbwElement::mono(*a)), &g(&PbwElement::mono(*b)));
            out = out.add(&x.scale(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uq() -> Uq {
        Uq::new(q(2)).unwrap()
    }

    fn mono(l: i64, m: u32, n: u32) -> PbwElement {
        PbwElement::mono(PbwMonomial::new(l, m, n))
    }

    #[test]
    fn relations() {
        let u = uq();
        use Generator::*;
        assert_eq!(u.normal_form(&[X, Sigma]), mono(1, 1, 0).scale(&(q(1) / q(4))));
        let c = u.c().clone();
        let expect = mono(0, 1, 1).sub(&mono(1, 0, 0).scale(&c)).add(&mono(-1, 0, 0).scale(&c));
        assert_eq!(u.normal_form(&[Y, X]), expect);
        assert_eq!(u.normal_form(&[Sigma, SigmaInv]), u.one());
        assert_eq!(u.normal_form(&[Sigma, X]), u.normal_form(&[X, Sigma]).scale(&q(4)));
        assert_eq!(u.normal_form(&[Sigma, Y]), u.normal_form(&[Y, Sigma]).scale(&(q(1) / q(4))));
    }

    #[test]
    fn invalid_q() {
        for v in [0, 1, -1] {
            assert!(Uq::new(q(v)).is_err());
        }
    }

    #[test]
    fn hopf_structure() {
        let u = uq();
        let id = |a: &PbwElement| a.clone();
        for l in -2..=2 {
            for m in 0..=2 {
                for n in 0..=2 {
                    let a = mono(l, m, n);
                    let d = u.coproduct(&a);
                    let left = u.contract(&d, |x| PbwElement::scalar(u.eps(x)), id);
                    let right = u.contract(&d, id, |x| PbwElement::scalar(u.eps(x)));
                    assert_eq!(left, a);
                    assert_eq!(right, a);
                    let s = u.contract(&d, |x| u.antipode(x), id);
                    assert_eq!(s, PbwElement::scalar(u.eps(&a)), "at {a}");
                }
            }
        }
        for g in [Generator::Sigma, Generator::X, Generator::Y] {
            let a = u.gen(g);
            let s2 = u.antipode(&u.antipode(&a));
            let conj = u.mul(&u.mul(&u.gen(Generator::Sigma), &a), &u.gen(Generator::SigmaInv));
            assert_eq!(s2, conj);
        }
    }

    fn arb_word() -> impl Strategy<Value = Vec<Generator>> {
        prop::collection::vec(
            prop_oneof![Just(Generator::Sigma), Just(Generator::SigmaInv), Just(Generator::X), Just(Generator::Y)],
            0..5,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn associative(a in arb_word(), b in arb_word(), c in arb_word()) {
            let u = uq();
            let (x, y, z) = (u.normal_form(&a), u.normal_form(&b), u.normal_form(&c));
            prop_assert_eq!(u.mul(&u.mul(&x, &y), &z), u.mul(&x, &u.mul(&y, &z)));
            let mut w = a.clone();
            w.extend(&b);
            prop_assert_eq!(u.normal_form(&w), u.mul(&x, &y));
        }

        #[test]
        fn counit_multiplicative(a in arb_word(), b in arb_word()) {
            let u = uq();
            let (x, y) = (u.normal_form(&a), u.normal_form(&b));
            prop_assert_eq!(u.eps(&u.mul(&x, &y)), u.eps(&x) * u.eps(&y));
        }
    }
}
