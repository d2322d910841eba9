//! U_q(sl2) in PBW normal form, its length-three free H^e-resolution with an explicit
//! contracting homotopy, and the Hochschild homology with trivial coefficients read off
//! from the collapsed resolution.

mod algebra;

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

pub use algebra::{Generator, PbwElement, PbwMonomial, PbwTensor, Uq};

use crate::exactla::{q, rank, Mat, SparseVec, Q};
use crate::homengine::{HomologyReport, Theory};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QpbwError {
    #[error("q = {0} is not allowed; need q ∉ {{0, 1, -1}}")]
    InvalidParameter(String),
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
}

/// Free generator names per level M_0..M_3.
pub const GENERATORS: [&[&str]; 4] =
    [&["1"], &["e_σ", "e_x", "e_y"], &["e_x∧e_σ", "e_y∧e_σ", "e_x∧e_y"], &["e_x∧e_y∧e_σ"]];

const SIG: usize = 0;
const EX: usize = 1;
const EY: usize = 2;
const XS: usize = 0;
const YS: usize = 1;
const XY: usize = 2;

/// Element of the free H^e-module M_k: one H⊗H^op coefficient per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvModuleElement {
    pub level: usize,
    pub coeffs: Vec<PbwTensor>,
}

impl EnvModuleElement {
    pub fn zero(level: usize) -> Self {
        EnvModuleElement { level, coeffs: vec![PbwTensor::zero(); GENERATORS[level].len()] }
    }

    /// a ⊗ b ⊗ generator.
    pub fn basis(level: usize, gen: usize, a: PbwMonomial, b: PbwMonomial) -> Self {
        let mut e = Self::zero(level);
        e.coeffs[gen] = PbwTensor::basis(a, b);
        e
    }

    pub fn on(level: usize, gen: usize, t: PbwTensor) -> Self {
        let mut e = Self::zero(level);
        e.coeffs[gen] = t;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PbwTensor::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.level, o.level);
        EnvModuleElement { level: self.level, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        EnvModuleElement { level: self.level, coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// Basis terms (generator, a, b, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, PbwMonomial, PbwMonomial, Q)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(g, t)| t.terms().map(move |((a, b), c)| (g, *a, *b, c.clone())))
    }
}

impl fmt::Display for EnvModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms().map(|(g, a, b, c)| format!("({c}) {a}⊗{b}⊗{}", GENERATORS[self.level][g])).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Which version of the resolution and homotopy formulas to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    /// Coefficients and homotopy terms exactly as printed.
    Verbatim,
    /// d₁(e_x∧e_σ), d₁(e_y∧e_σ) with the σ-type coefficient on e_x (resp. e_y) and the
    /// x-type (resp. y-type) coefficient on e_σ; homotopy terms re-derived to match.
    Corrected,
}

/// The boundary maps on free generators. `d[k][g]` is d_k(1⊗g) for generator g of M_{k+1}.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub uq: Uq,
    pub reading: Reading,
    d: Vec<Vec<EnvModuleElement>>,
}

impl Resolution {
    pub fn new(uq: Uq, reading: Reading) -> Self {
        let one = uq.one();
        let (s, si, x, y) =
            (uq.gen(Generator::Sigma), uq.gen(Generator::SigmaInv), uq.gen(Generator::X), uq.gen(Generator::Y));
        let t = PbwTensor::pure;
        let q2 = uq.qpow(2);
        let qm2 = uq.qpow(-2);
        let diff = |a: &PbwElement| t(a, &one).sub(&t(&one, a));

        let d0 = vec![
            EnvModuleElement::on(0, 0, diff(&s)),
            EnvModuleElement::on(0, 0, diff(&x)),
            EnvModuleElement::on(0, 0, diff(&y)),
        ];

        let sx = t(&s, &one).sub(&t(&one, &s.scale(&q2)));
        let xx = t(&x.scale(&q2), &one).sub(&t(&one, &x));
        let sy = t(&s, &one).sub(&t(&one, &s.scale(&qm2)));
        let yy = t(&y.scale(&qm2), &one).sub(&t(&one, &y));
        let (xs, ys) = match reading {
            Reading::Verbatim => (
                EnvModuleElement::on(1, SIG, sx).sub(&EnvModuleElement::on(1, EX, xx)),
                EnvModuleElement::on(1, SIG, sy).sub(&EnvModuleElement::on(1, EY, yy)),
            ),
            Reading::Corrected => (
                EnvModuleElement::on(1, EX, sx).sub(&EnvModuleElement::on(1, SIG, xx)),
                EnvModuleElement::on(1, EY, sy).sub(&EnvModuleElement::on(1, SIG, yy)),
            ),
        };
        let xy = EnvModuleElement::on(1, EX, diff(&y))
            .sub(&EnvModuleElement::on(1, EY, diff(&x)))
            .add(&EnvModuleElement::on(1, SIG, t(&si, &si).add(&t(&one, &one)).scale(uq.c())));
        let d1 = vec![xs, ys, xy];

        // e_y∧e_x = −e_x∧e_y.
        let d2 = vec![EnvModuleElement::on(2, XS, t(&y, &one).sub(&t(&one, &y.scale(&q2))))
            .sub(&EnvModuleElement::on(2, YS, t(&x.scale(&q2), &one).sub(&t(&one, &x)).scale(&q2)))
            .sub(&EnvModuleElement::on(2, XY, diff(&s).scale(&q2)))];

        Resolution { uq, reading, d: vec![d0, d1, d2] }
    }

    /// Image of generator g of M_{k+1} under d_k.
    pub fn boundary_of_generator(&self, k: usize, g: usize) -> &EnvModuleElement {
        &self.d[k][g]
    }

    /// d_k : M_{k+1} → M_k, extended H^e-linearly.
    pub fn apply_d(&self, k: usize, v: &EnvModuleElement) -> EnvModuleElement {
        debug_assert_eq!(v.level, k + 1);
        let mut out = EnvModuleElement::zero(k);
        for (g, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, img) in self.d[k][g].coeffs.iter().enumerate() {
                out.coeffs[t] = out.coeffs[t].add(&self.uq.env_mul(c, img));
            }
        }
        out
    }

    /// μ : M_0 → H.
    pub fn augmentation(&self, v: &EnvModuleElement) -> PbwElement {
        self.uq.contract(&v.coeffs[0], |a| a.clone(), |b| b.clone())
    }

    /// First generator (k, g) with d_{k−1} d_k (1⊗g) ≠ 0, or μ d_0 ≠ 0 reported as k = 0.
    pub fn square_zero_failure(&self) -> Option<(usize, usize, EnvModuleElement)> {
        for (g, img) in self.d[0].iter().enumerate() {
            let m = self.augmentation(img);
            if !m.is_zero() {
                return Some((0, g, img.clone()));
            }
        }
        for k in 1..3 {
            for (g, img) in self.d[k].iter().enumerate() {
                let dd = self.apply_d(k - 1, img);
                if !dd.is_zero() {
                    return Some((k, g, dd));
                }
            }
        }
        None
    }

    /// k ⊗_{H^e} d_k: each coefficient a⊗b collapses to ε(a)ε(b).
    pub fn collapsed(&self, k: usize) -> Mat {
        let rows = GENERATORS[k].len();
        let columns = self.d[k]
            .iter()
            .map(|img| {
                SparseVec::from_pairs(img.coeffs.iter().enumerate().map(|(t, c)| {
                    let eps = |a: &PbwElement| PbwElement::scalar(self.uq.eps(a));
                    (t, self.uq.eps(&self.uq.contract(c, eps, eps)))
                }))
            })
            .collect();
        Mat::from_columns(rows, columns)
    }
}

/// Σ_{i+j=n−1} a^i ⊗ b^j, zero for n ≤ 0.
fn phi(uq: &Uq, a: &PbwElement, b: &PbwElement, n: i64) -> PbwTensor {
    let mut out = PbwTensor::zero();
    for i in 0..n.max(0) {
        out = out.add(&PbwTensor::pure(&uq.pow(a, (n - 1 - i) as u32), &uq.pow(b, i as u32)));
    }
    out
}

/// Σ_{r<k} q^{2·sign·r}.
fn q_integer(uq: &Uq, sign: i64, k: i64) -> Q {
    (0..k).fold(q(0), |acc, r| acc + uq.qpow(2 * sign * r))
}

fn omega(p: i64) -> Q {
    if p >= 0 {
        q(1)
    } else {
        q(0)
    }
}

/// The contracting homotopy S_{−1}, S_0, S_1, S_2 evaluated on basis elements.
pub struct Homotopy<'a> {
    res: &'a Resolution,
}

impl<'a> Homotopy<'a> {
    pub fn new(res: &'a Resolution) -> Self {
        Homotopy { res }
    }

    fn uq(&self) -> &Uq {
        &self.res.uq
    }

    fn pm(&self, l: i64, m: u32, n: u32) -> PbwElement {
        PbwElement::mono(PbwMonomial::new(l, m, n))
    }

    fn env(&self, u: &PbwTensor, v: &PbwTensor) -> PbwTensor {
        self.uq().env_mul(u, v)
    }

    /// S_{−1}(a) = 1 ⊗ a.
    pub fn s_minus(&self, a: &PbwElement) -> EnvModuleElement {
        EnvModuleElement::on(0, 0, PbwTensor::pure(&self.uq().one(), a))
    }

    /// S_k on σ^l x^m y^n ⊗ 1 ⊗ gen, before the (1⊗b) prefix.
    fn core(&self, k: usize, gen: usize, a: PbwMonomial) -> EnvModuleElement {
        let uq = self.uq();
        let (l, m, n) = (a.l, a.m, a.n);
        let verbatim = self.res.reading == Reading::Verbatim;
        let one = uq.one();
        let (s, si, x, y) =
            (uq.gen(Generator::Sigma), uq.gen(Generator::SigmaInv), uq.gen(Generator::X), uq.gen(Generator::Y));
        let t = PbwTensor::pure;
        match k {
            0 => {
                let ey = self.env(&t(&self.pm(l, m, 0), &one), &phi(uq, &y, &y, n as i64));
                let ex = self.env(&t(&self.pm(l, 0, 0), &self.pm(0, 0, n)), &phi(uq, &x, &x, m as i64));
                let xy = t(&one, &self.pm(0, m, n));
                let es_pos = self.env(&xy, &phi(uq, &s, &s, l)).scale(&omega(l));
                let es_neg = self
                    .env(&self.env(&xy, &phi(uq, &si, &si, -l)), &t(&si, &si))
                    .scale(&(omega(l) - q(1)));
                let mut e = EnvModuleElement::zero(1);
                e.coeffs[EY] = ey;
                e.coeffs[EX] = ex;
                e.coeffs[SIG] = es_pos.add(&es_neg);
                e
            }
            1 => {
                let mut e = EnvModuleElement::zero(2);
                match gen {
                    EY => {}
                    EX => {
                        e.coeffs[XY] = self.env(&t(&self.pm(l, m, 0), &one), &phi(uq, &y, &y, n as i64));
                        if n >= 1 {
                            let k1 = (q(1) - uq.qpow(2 * n as i64)) * uq.c() / (q(1) - uq.qpow(2));
                            let left = t(&self.pm(l, 0, 0), &self.pm(0, 0, n - 1));
                            let v = if verbatim {
                                let tail = t(&si, &si).add(&t(&one.scale(&uq.qpow(-2)), &one));
                                self.env(&self.env(&left, &phi(uq, &x, &x, m as i64)), &tail)
                            } else {
                                let lo = phi(uq, &x, &x.scale(&uq.qpow(-2)), m as i64).scale(&uq.qpow(-2));
                                let hi = self
                                    .env(&phi(uq, &x, &x.scale(&uq.qpow(2)), m as i64), &t(&si, &si))
                                    .scale(&uq.qpow(-2 * (n as i64 - 1)));
                                self.env(&left, &lo.add(&hi))
                            };
                            e.coeffs[XS] = v.scale(&k1);
                        }
                        let left = t(&self.pm(l, m, 0), &one);
                        let v = if verbatim {
                            let tail = t(&si, &si).add(&t(&one.scale(&uq.qpow(2)), &one));
                            self.env(&self.env(&left, &phi(uq, &y, &y, n as i64 - 1)), &tail)
                        } else {
                            let mut acc = PbwTensor::zero();
                            for j in 0..(n as i64 - 1).max(0) {
                                let i = n as i64 - 2 - j;
                                let yy = t(&uq.pow(&y, i as u32), &uq.pow(&y, j as u32));
                                let tail = t(&si, &si)
                                    .scale(&q_integer(uq, -1, j + 1))
                                    .add(&t(&one, &one).scale(&(uq.qpow(2) * q_integer(uq, 1, j + 1))));
                                acc = acc.add(&self.env(&yy, &tail));
                            }
                            self.env(&left, &acc)
                        };
                        e.coeffs[YS] = v.scale(uq.c());
                    }
                    SIG => {
                        let ys = self.env(&t(&self.pm(l, m, 0), &one), &phi(uq, &y, &y.scale(&uq.qpow(2)), n as i64));
                        e.coeffs[YS] = ys.scale(&uq.qpow(2));
                        let xs = self.env(
                            &t(&self.pm(l, 0, 0), &self.pm(0, 0, n)),
                            &phi(uq, &x, &x.scale(&uq.qpow(-2)), m as i64),
                        );
                        e.coeffs[XS] = xs.scale(&uq.qpow(2 * (n as i64 - 1)));
                        if !verbatim {
                            e = e.scale(&q(-1));
                        }
                    }
                    _ => unreachable!(),
                }
                e
            }
            2 => {
                let mut e = EnvModuleElement::zero(3);
                if gen == XS {
                    e.coeffs[0] = self.env(&t(&self.pm(l, m, 0), &one), &phi(uq, &y, &y.scale(&uq.qpow(2)), n as i64));
                }
                e
            }
            _ => EnvModuleElement::zero(k + 1),
        }
    }

    /// S_k : M_k → M_{k+1} on a basis element, k = 0, 1, 2; zero for k = 3.
    pub fn s_basis(&self, k: usize, gen: usize, a: PbwMonomial, b: PbwMonomial) -> EnvModuleElement {
        let c = self.core(k, gen, a);
        let pre = PbwTensor::basis(PbwMonomial::ONE, b);
        EnvModuleElement { level: c.level, coeffs: c.coeffs.iter().map(|t| self.env(&pre, t)).collect() }
    }

    /// S_k extended k-linearly.
    pub fn s(&self, k: usize, v: &EnvModuleElement) -> EnvModuleElement {
        let mut out = EnvModuleElement::zero(k + 1);
        for (g, a, b, c) in v.terms() {
            out = out.add(&self.s_basis(k, g, a, b).scale(&c));
        }
        out
    }

    /// (sd + ds)(v) − v for a basis element v at level k.
    pub fn defect(&self, k: usize, gen: usize, a: PbwMonomial, b: PbwMonomial) -> EnvModuleElement {
        let v = EnvModuleElement::basis(k, gen, a, b);
        let ds = if k < 3 { self.res.apply_d(k, &self.s_basis(k, gen, a, b)) } else { EnvModuleElement::zero(k) };
        let sd = if k == 0 {
            self.s_minus(&self.res.augmentation(&v))
        } else {
            self.s(k - 1, &self.res.apply_d(k - 1, &v))
        };
        ds.add(&sd).sub(&v)
    }
}

/// Degree limits for the homotopy sweep.
#[derive(Clone, Debug)]
pub struct SweepBounds {
    pub max_abs_l: i64,
    pub max_m: u32,
    pub max_n: u32,
    /// Right-leg monomials b; 1 is always included.
    pub right: Vec<PbwMonomial>,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_abs_l: 2,
            max_m: 3,
            max_n: 3,
            right: vec![PbwMonomial::ONE, PbwMonomial::new(1, 0, 0), PbwMonomial::new(0, 1, 0)],
        }
    }
}

/// A basis element where sd + ds ≠ id.
#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub level: usize,
    pub generator: &'static str,
    pub a: PbwMonomial,
    pub b: PbwMonomial,
    pub defect: String,
}

#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub checked: usize,
    pub failures: Vec<HomotopyWitness>,
}

impl HomotopyReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn homotopy_check(res: &Resolution, bounds: &SweepBounds) -> HomotopyReport {
    let mut cases = Vec::new();
    let mut right = bounds.right.clone();
    if !right.contains(&PbwMonomial::ONE) {
        right.insert(0, PbwMonomial::ONE);
    }
    for (k, gens) in GENERATORS.iter().enumerate() {
        for g in 0..gens.len() {
            for l in -bounds.max_abs_l..=bounds.max_abs_l {
                for m in 0..=bounds.max_m {
                    for n in 0..=bounds.max_n {
                        for &b in &right {
                            cases.push((k, g, PbwMonomial::new(l, m, n), b));
                        }
                    }
                }
            }
        }
    }
    let h = Homotopy::new(res);
    let mut failures: Vec<HomotopyWitness> = cases
        .par_iter()
        .filter_map(|&(k, g, a, b)| {
            let d = h.defect(k, g, a, b);
            (!d.is_zero()).then(|| HomotopyWitness { level: k, generator: GENERATORS[k][g], a, b, defect: d.to_string() })
        })
        .collect();
    failures.sort_by_key(|w| (w.level, w.generator, w.a, w.b));
    HomotopyReport { checked: cases.len(), failures }
}

/// H_n(H, k) for n ≤ max_n from k ⊗_{H^e} M_•.
pub fn collapsed_tor(res: &Resolution, max_n: usize) -> HomologyReport {
    let ranks: Vec<usize> = (0..3).map(|k| rank(&res.collapsed(k))).collect();
    let r = |k: usize| if k < 3 { ranks[k] } else { 0 };
    let dims = (0..=max_n)
        .map(|n| if n > 3 { 0 } else { GENERATORS[n].len() - r(n) - if n == 0 { 0 } else { r(n - 1) } })
        .collect();
    HomologyReport { theory: Theory::HH, cohomological: false, dims, periodic: None }
}

/// Reduced cyclic homology inferred from Hochschild homology concentrated in degree 0.
#[derive(Clone, Debug)]
pub struct InferenceReport {
    pub hc: Vec<usize>,
    pub chain: Vec<String>,
}

pub fn hc_inference(hh: &[usize], max_n: usize) -> Result<InferenceReport, QpbwError> {
    let concentrated = hh.first() == Some(&1) && hh.iter().skip(1).all(|&d| d == 0);
    if !concentrated {
        return Err(QpbwError::PreconditionNotMet(format!("Hochschild homology {hh:?} is not (1, 0, 0, ...)")));
    }
    let hc = (0..=max_n).map(|n| if n % 2 == 0 { 1 } else { 0 }).collect();
    let chain = vec![
        format!("HH_n(H, k) = {hh:?}"),
        "SBI sequence: HC_n = HC_{n-2} whenever HH_n = HH_{n-1} = 0".into(),
        "HC_0 = HH_0 = k and HC_1 = HH_1 = 0".into(),
        "hence HC_n = k for even n and 0 for odd n".into(),
    ];
    Ok(InferenceReport { hc, chain })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(v: i64, r: Reading) -> Resolution {
        Resolution::new(Uq::new(q(v)).unwrap(), r)
    }

    #[test]
    fn d0_display() {
        let r = res(2, Reading::Corrected);
        let u = &r.uq;
        let expect = PbwTensor::pure(&u.gen(Generator::X), &u.one()).sub(&PbwTensor::pure(&u.one(), &u.gen(Generator::X)));
        assert_eq!(r.boundary_of_generator(0, EX).coeffs[0], expect);
    }

    #[test]
    fn verbatim_d1_is_not_a_complex() {
        let (k, g, _) = res(2, Reading::Verbatim).square_zero_failure().unwrap();
        assert_eq!((k, GENERATORS[2][g]), (1, "e_x∧e_σ"));
    }

    #[test]
    fn corrected_square_zero() {
        for v in [2, 3, 5] {
            assert!(res(v, Reading::Corrected).square_zero_failure().is_none());
        }
    }

    #[test]
    fn single_case_on_m0() {
        let r = res(2, Reading::Verbatim);
        let h = Homotopy::new(&r);
        assert!(h.defect(0, 0, PbwMonomial::new(1, 1, 0), PbwMonomial::ONE).is_zero());
        assert_eq!(h.s_minus(&r.uq.one()), EnvModuleElement::basis(0, 0, PbwMonomial::ONE, PbwMonomial::ONE));
    }

    #[test]
    fn verbatim_homotopy_negative_sigma_branch_is_fine() {
        let r = res(2, Reading::Verbatim);
        let h = Homotopy::new(&r);
        for l in -2..=2 {
            for (m, n) in [(0, 0), (1, 2), (2, 1)] {
                assert!(h.defect(0, 0, PbwMonomial::new(l, m, n), PbwMonomial::ONE).is_zero());
            }
        }
        let rep = homotopy_check(&r, &SweepBounds { max_abs_l: 1, max_m: 1, max_n: 1, right: vec![] });
        assert!(!rep.holds());
        assert!(rep.failures.iter().all(|w| w.level >= 1));
    }

    #[test]
    fn corrected_homotopy_small_sweep() {
        let r = res(3, Reading::Corrected);
        let rep = homotopy_check(&r, &SweepBounds { max_abs_l: 1, max_m: 2, max_n: 2, ..Default::default() });
        assert!(rep.holds(), "{:?}", rep.failures.first());
    }

    #[test]
    fn collapsed_tor_dims() {
        for v in [2, 3, 5] {
            assert_eq!(collapsed_tor(&res(v, Reading::Corrected), 5).dims, vec![1, 0, 0, 1, 0, 0]);
        }
        assert_eq!(collapsed_tor(&res(2, Reading::Verbatim), 3).dims, vec![1, 2, 2, 1]);
        let r = res(2, Reading::Corrected);
        assert!(r.collapsed(0).is_zero());
        assert!(r.collapsed(2).is_zero());
    }

    #[test]
    fn inference() {
        let ok = hc_inference(&[1, 0, 0, 0], 5).unwrap();
        assert_eq!(ok.hc, vec![1, 0, 1, 0, 1, 0]);
        assert!(matches!(hc_inference(&[0, 1, 0, 0], 3), Err(QpbwError::PreconditionNotMet(_))));
        assert!(hc_inference(&[1, 0, 0, 1], 3).is_err());
    }
}
