use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::SparseMatrix;

/// Exact rationals, the default scalar everywhere.
pub type Q = BigRational;

fn qzero() -> Q {
    <Q as Zero>::zero()
}

fn qone() -> Q {
    <Q as One>::one()
}

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p". The input must already be in lowest terms with positive denominator.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if !d.is_positive() {
        return None;
    }
    let v = Q::new(n.clone(), d.clone());
    if v.numer() != &n || v.denom() != &d {
        return None;
    }
    Some(v)
}

pub fn fmt_q(v: &Q) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Operations the linear algebra layer needs from a scalar type.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn finv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }

    /// Rank hook; rationals override this with the fraction-free integer path.
    fn rank_of(m: &SparseMatrix<Self>) -> usize {
        super::elim::generic_rank(m)
    }
}

impl Field for Q {
    fn render(&self) -> String {
        fmt_q(self)
    }

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        q(v)
    }
    fn rank_of(m: &SparseMatrix<Self>) -> usize {
        super::elim::rational_rank(m)
    }
}

/// A monic polynomial over ℚ defining ℚ[x]/(f). Coefficients are stored low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    pub id: String,
    coeffs: Vec<Q>,
}

impl Modulus {
    pub fn new(id: impl Into<String>, coeffs: Vec<Q>) -> Option<Arc<Modulus>> {
        if coeffs.len() < 2 || !One::is_one(coeffs.last().unwrap()) {
            return None;
        }
        Some(Arc::new(Modulus { id: id.into(), coeffs }))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }
}

/// Exact element of ℚ or of a finite extension ℚ[x]/(f).
///
/// Extension elements whose reduced representative is constant collapse to `Rational`,
/// so structural equality is value equality.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldScalar {
    Rational(Q),
    Extension { coeffs: Vec<Q>, modulus: Arc<Modulus> },
}

fn trim(mut v: Vec<Q>) -> Vec<Q> {
    while v.last().map_or(false, |c| Zero::is_zero(c)) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![qzero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = vec![qzero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Returns (quotient, remainder).
fn poly_divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![qzero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        quot[shift] = c;
        r = trim(r);
    }
    (trim(quot), r)
}

impl FieldScalar {
    pub fn rational(v: Q) -> Self {
        FieldScalar::Rational(v)
    }

    /// Reduces an arbitrary polynomial modulo f.
    pub fn from_poly(coeffs: Vec<Q>, modulus: &Arc<Modulus>) -> Self {
        let (_, r) = poly_divmod(&coeffs, modulus.coeffs());
        Self::normalize(r, modulus)
    }

    /// The class of x in ℚ[x]/(f).
    pub fn generator(modulus: &Arc<Modulus>) -> Self {
        Self::from_poly(vec![qzero(), qone()], modulus)
    }

    fn normalize(coeffs: Vec<Q>, modulus: &Arc<Modulus>) -> Self {
        let coeffs = trim(coeffs);
        match coeffs.len() {
            0 => FieldScalar::Rational(qzero()),
            1 => FieldScalar::Rational(coeffs[0].clone()),
            _ => FieldScalar::Extension { coeffs, modulus: modulus.clone() },
        }
    }

    pub fn coeffs(&self) -> Vec<Q> {
        match self {
            FieldScalar::Rational(v) => trim(vec![v.clone()]),
            FieldScalar::Extension { coeffs, .. } => coeffs.clone(),
        }
    }

    pub fn modulus(&self) -> Option<&Arc<Modulus>> {
        match self {
            FieldScalar::Rational(_) => None,
            FieldScalar::Extension { modulus, .. } => Some(modulus),
        }
    }

    fn common_modulus(&self, o: &Self) -> Option<Arc<Modulus>> {
        match (self.modulus(), o.modulus()) {
            (None, None) => None,
            (Some(m), None) | (None, Some(m)) => Some(m.clone()),
            (Some(a), Some(b)) => {
                assert!(a == b, "arithmetic across different moduli {} and {}", a.id, b.id);
                Some(a.clone())
            }
        }
    }

    fn binop(&self, o: &Self, f: impl Fn(&[Q], &[Q]) -> Vec<Q>) -> Self {
        let a = self.coeffs();
        let b = o.coeffs();
        match self.common_modulus(o) {
            None => {
                let r = f(&a, &b);
                FieldScalar::Rational(r.into_iter().next().unwrap_or_else(qzero))
            }
            Some(m) => Self::from_poly(f(&a, &b), &m),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(v) => write!(f, "{}", fmt_q(v)),
            FieldScalar::Extension { coeffs, modulus } => {
                let terms: Vec<String> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !Zero::is_zero(*c))
                    .map(|(i, c)| match i {
                        0 => fmt_q(c),
                        1 => format!("({})x", fmt_q(c)),
                        _ => format!("({})x^{}", fmt_q(c), i),
                    })
                    .collect();
                write!(f, "{} mod {}", terms.join(" + "), modulus.id)
            }
        }
    }
}

impl Field for FieldScalar {
    fn render(&self) -> String {
        self.to_string()
    }

    fn zero() -> Self {
        FieldScalar::Rational(qzero())
    }
    fn one() -> Self {
        FieldScalar::Rational(qone())
    }
    fn is_zero(&self) -> bool {
        matches!(self, FieldScalar::Rational(v) if Zero::is_zero(v))
    }
    fn fadd(&self, o: &Self) -> Self {
        self.binop(o, |a, b| {
            let nb: Vec<Q> = b.iter().map(|c| -c).collect();
            poly_sub(a, &nb)
        })
    }
    fn fsub(&self, o: &Self) -> Self {
        self.binop(o, poly_sub)
    }
    fn fmul(&self, o: &Self) -> Self {
        self.binop(o, poly_mul)
    }
    fn fneg(&self) -> Self {
        match self {
            FieldScalar::Rational(v) => FieldScalar::Rational(-v),
            FieldScalar::Extension { coeffs, modulus } => FieldScalar::Extension {
                coeffs: coeffs.iter().map(|c| -c).collect(),
                modulus: modulus.clone(),
            },
        }
    }
    /// Inverse via the extended Euclidean algorithm; `None` for zero divisors when f is reducible.
    fn finv(&self) -> Option<Self> {
        match self {
            FieldScalar::Rational(v) => v.finv().map(FieldScalar::Rational),
            FieldScalar::Extension { coeffs, modulus } => {
                // invariant: s*a ≡ r (mod f)
                let (mut r0, mut r1) = (modulus.coeffs().to_vec(), coeffs.clone());
                let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![qone()]);
                while !r1.is_empty() {
                    let (quot, rem) = poly_divmod(&r0, &r1);
                    let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
                    r0 = std::mem::replace(&mut r1, rem);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                if r0.len() != 1 {
                    return None;
                }
                let c = r0[0].recip();
                let s: Vec<Q> = s0.iter().map(|x| x * &c).collect();
                Some(Self::from_poly(s, modulus))
            }
        }
    }
    fn from_i64(v: i64) -> Self {
        FieldScalar::Rational(q(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt2() -> Arc<Modulus> {
        Modulus::new("x^2-2", vec![q(-2), q(0), q(1)]).unwrap()
    }

    fn cubic() -> Arc<Modulus> {
        Modulus::new("x^3-x-1", vec![q(-1), q(-1), q(0), q(1)]).unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_q("3/4"), Some(qf(3, 4)));
        assert_eq!(parse_q("-7"), Some(q(-7)));
        assert_eq!(parse_q("2/4"), None);
        assert_eq!(parse_q("1/-2"), None);
        assert_eq!(fmt_q(&qf(-3, 6)), "-1/2");
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let m = sqrt2();
        let x = FieldScalar::generator(&m);
        assert_eq!(x.fmul(&x), FieldScalar::from_i64(2));
        let inv = x.finv().unwrap();
        assert_eq!(inv.fmul(&x), FieldScalar::one());
    }

    #[test]
    fn modulus_reduces_to_zero() {
        let m = cubic();
        let f = FieldScalar::from_poly(m.coeffs().to_vec(), &m);
        assert!(f.is_zero());
        let x = FieldScalar::generator(&m);
        // x * (x^2 - 1) = x^3 - x = 1
        let t = FieldScalar::from_poly(vec![q(-1), q(0), q(1)], &m);
        assert_eq!(x.fmul(&t), FieldScalar::one());
    }

    #[test]
    fn reducible_modulus_has_zero_divisors() {
        let m = Modulus::new("x^2-1", vec![q(-1), q(0), q(1)]).unwrap();
        let a = FieldScalar::from_poly(vec![q(1), q(1)], &m);
        assert!(a.finv().is_none());
    }

    fn ext_elem() -> impl Strategy<Value = FieldScalar> {
        proptest::collection::vec((-9i64..10, 1i64..5), 3).prop_map(|cs| {
            let m = cubic();
            FieldScalar::from_poly(cs.into_iter().map(|(n, d)| qf(n, d)).collect(), &m)
        })
    }

    proptest! {
        #[test]
        fn extension_field_axioms(a in ext_elem(), b in ext_elem(), c in ext_elem()) {
            prop_assert_eq!(a.fmul(&b).fmul(&c), a.fmul(&b.fmul(&c)));
            prop_assert_eq!(a.fadd(&b).fadd(&c), a.fadd(&b.fadd(&c)));
            prop_assert_eq!(a.fmul(&b), b.fmul(&a));
            prop_assert_eq!(a.fadd(&b), b.fadd(&a));
            prop_assert_eq!(a.fmul(&b.fadd(&c)), a.fmul(&b).fadd(&a.fmul(&c)));
            prop_assert!(a.coeffs().len() <= cubic().degree());
            if !a.is_zero() {
                prop_assert_eq!(a.finv().unwrap().fmul(&a), FieldScalar::one());
            }
        }

        #[test]
        fn rationals_stay_reduced(n in -1000i64..1000, d in 1i64..1000) {
            let v = qf(n, d);
            prop_assert!(v.denom() > &BigInt::zero());
            prop_assert!(num_integer::Integer::gcd(v.numer(), v.denom()).is_one());
            prop_assert_eq!(parse_q(&fmt_q(&v)), Some(v));
        }
    }
}
