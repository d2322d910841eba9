use super::{dual_hopf, Character, Family, Grouplike, HopfAlgebraData};
use crate::exactla::{q, solve_linear, Field, Mat, SparseVec, Vector, Q};

/// Search output; `complete` is false when the enumeration is not known to be exhaustive.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult<T> {
    pub items: Vec<T>,
    pub complete: bool,
}

fn exhaustive(f: &Family) -> bool {
    match f {
        Family::Group(_) | Family::Function(_) | Family::SweedlerH4 => true,
        Family::Dual(inner) => exhaustive(inner),
        Family::Custom => false,
    }
}

const CUSTOM_SEARCH_LIMIT: usize = 14;

/// Characters with values in {−1, 0, 1}. This is every character for the built-in families:
/// group characters over ℚ take values ±1, characters of k^G are point evaluations, and on
/// H4 a character kills the nilpotent x.
pub fn find_characters(h: &HopfAlgebraData) -> SearchResult<Character> {
    let d = h.dim();
    let complete = exhaustive(&h.family);
    if !complete && d > CUSTOM_SEARCH_LIMIT {
        return SearchResult { items: Vec::new(), complete: false };
    }
    // constraints become checkable once every index they mention is assigned
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            let top = h.algebra.mul_basis(i, j).max_index().unwrap_or(0).max(i).max(j);
            checks[top].push((i, j));
        }
    }
    let unit_top = h.unit().max_index().unwrap_or(0);
    let mut vals: Vec<Q> = vec![q(0); d];
    let mut out = Vec::new();
    fn rec(
        h: &HopfAlgebraData,
        k: usize,
        vals: &mut Vec<Q>,
        checks: &[Vec<(usize, usize)>],
        unit_top: usize,
        out: &mut Vec<Character>,
    ) {
        let d = vals.len();
        if k == d {
            out.push(Character { values: vals.clone() });
            return;
        }
        for v in [1, -1, 0] {
            vals[k] = q(v);
            let eval = |w: &Vector| w.iter().fold(Q::zero(), |acc, (i, x)| acc + x * &vals[i]);
            if k == unit_top && !Field::is_one(&eval(h.unit())) {
                continue;
            }
            let ok = checks[k].iter().all(|&(i, j)| eval(h.algebra.mul_basis(i, j)) == &vals[i] * &vals[j]);
            if ok {
                rec(h, k + 1, vals, checks, unit_top, out);
            }
        }
    }
    rec(h, 0, &mut vals, &checks, unit_top, &mut out);
    SearchResult { items: out, complete }
}

/// Grouplikes of H are the characters of H*.
pub fn find_grouplikes(h: &HopfAlgebraData) -> SearchResult<Grouplike> {
    let chars = find_characters(&dual_hopf(h));
    let items = chars
        .items
        .into_iter()
        .map(|c| Grouplike::new(h, SparseVec::from_dense(&c.values)).expect("dual character is grouplike"))
        .collect();
    SearchResult { items, complete: chars.complete }
}

/// Normalized left Haar integral: ∫(h⁽¹⁾)h⁽²⁾ = ∫(h)1 and ∫(1) = 1.
pub fn find_haar_integral(h: &HopfAlgebraData) -> Option<Vec<Q>> {
    let d = h.dim();
    let unit = h.unit();
    let mut triplets: Vec<(usize, usize, Q)> = Vec::new();
    for i in 0..d {
        for (jk, c) in h.coalgebra.comult_basis(i).iter() {
            triplets.push((i * d + jk % d, jk / d, c.clone()));
        }
        for (k, u) in unit.iter() {
            triplets.push((i * d + k, i, -u));
        }
    }
    for (j, u) in unit.iter() {
        triplets.push((d * d, j, u.clone()));
    }
    let mut merged: std::collections::BTreeMap<(usize, usize), Q> = Default::default();
    for (r, c, v) in triplets {
        *merged.entry((r, c)).or_insert_with(Q::zero) += v;
    }
    let a = Mat::from_triplets(d * d + 1, d, merged.into_iter().map(|((r, c), v)| (r, c, v))).unwrap();
    let rhs = SparseVec::unit(d * d);
    solve_linear(&a, &rhs).ok().map(|v| v.to_dense(d))
}

/// S̃(h) = δ(h⁽¹⁾) S(h⁽²⁾).
pub fn twisted_antipode_cm(h: &HopfAlgebraData, delta: &Character) -> Mat {
    let d = h.dim();
    Mat::from_fn(d, d, |i| {
        let mut acc = SparseVec::new();
        for (jk, c) in h.coalgebra.comult_basis(i).iter() {
            let w = c * &delta.values[jk / d];
            acc = acc.add_scaled(&w, h.antipode().col(jk % d));
        }
        acc
    })
}

/// Ŝ(h) = δ(h⁽²⁾) σ S(h⁽¹⁾).
pub fn twisted_antipode_kr(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> Mat {
    let d = h.dim();
    Mat::from_fn(d, d, |i| {
        let mut acc = SparseVec::new();
        for (jk, c) in h.coalgebra.comult_basis(i).iter() {
            let w = c * &delta.values[jk % d];
            acc = acc.add_scaled(&w, &h.mul(&sigma.vector, h.antipode().col(jk / d)));
        }
        acc
    })
}

/// δ(σ) = 1 and (σ⁻¹S̃)² = id; `Err` carries the reason.
pub fn cm_involution(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> Result<(), String> {
    if !Field::is_one(&delta.eval(&sigma.vector)) {
        return Err("δ(σ) ≠ 1".into());
    }
    let st = twisted_antipode_cm(h, delta);
    let left = h.algebra.left_mul_matrix(&sigma.inverse(h));
    let m = left.mul(&st);
    match m.mul(&m).first_mismatch(&Mat::identity(h.dim())) {
        None => Ok(()),
        Some(w) => Err(format!("(σ⁻¹S̃)² ≠ id at {w}")),
    }
}

/// δ(σ) = 1 and Ŝ² = id.
pub fn kr_involution(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> Result<(), String> {
    if !Field::is_one(&delta.eval(&sigma.vector)) {
        return Err("δ(σ) ≠ 1".into());
    }
    let sh = twisted_antipode_kr(h, delta, sigma);
    match sh.mul(&sh).first_mismatch(&Mat::identity(h.dim())) {
        None => Ok(()),
        Some(w) => Err(format!("Ŝ² ≠ id at {w}")),
    }
}

pub fn is_modular_pair_in_involution_cm(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> bool {
    cm_involution(h, delta, sigma).is_ok()
}

pub fn is_modular_pair_in_involution_kr(h: &HopfAlgebraData, delta: &Character, sigma: &Grouplike) -> bool {
    kr_involution(h, delta, sigma).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfcore::{function_algebra, group_algebra, sweedler_h4, FiniteGroup};

    #[test]
    fn z2_characters_and_grouplikes() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let c = find_characters(&h);
        assert!(c.complete);
        let vals: Vec<Vec<Q>> = c.items.iter().map(|c| c.values.clone()).collect();
        assert_eq!(vals, vec![vec![q(1), q(1)], vec![q(1), q(-1)]]);
        let g = find_grouplikes(&h);
        let vecs: Vec<Vector> = g.items.iter().map(|g| g.vector.clone()).collect();
        assert_eq!(vecs.len(), 2);
        assert!(vecs.contains(&SparseVec::unit(0)) && vecs.contains(&SparseVec::unit(1)));
    }

    #[test]
    fn z3_has_three_grouplikes_and_one_rational_character() {
        let h = group_algebra(&FiniteGroup::cyclic(3));
        assert_eq!(find_grouplikes(&h).items.len(), 3);
        assert_eq!(find_characters(&h).items.len(), 1);
    }

    #[test]
    fn function_algebra_characters_are_points() {
        let g = FiniteGroup::symmetric3();
        let f = function_algebra(&g);
        let c = find_characters(&f);
        assert_eq!(c.items.len(), 6);
        for ch in &c.items {
            assert_eq!(ch.values.iter().filter(|v| Field::is_one(*v)).count(), 1);
        }
        // grouplikes of k^G are the homomorphisms G → k^×
        assert_eq!(find_grouplikes(&f).items.len(), g.sign_homomorphisms().len());
    }

    #[test]
    fn h4_characters_and_grouplikes() {
        let h = sweedler_h4();
        let c = find_characters(&h);
        let vals: Vec<Vec<Q>> = c.items.iter().map(|c| c.values.clone()).collect();
        assert_eq!(vals, vec![vec![q(1), q(1), q(0), q(0)], vec![q(1), q(-1), q(0), q(0)]]);
        let g: Vec<Vector> = find_grouplikes(&h).items.into_iter().map(|g| g.vector).collect();
        assert_eq!(g, vec![SparseVec::unit(0), SparseVec::unit(1)]);
    }

    #[test]
    fn twisted_antipode_cm_examples() {
        let h = sweedler_h4();
        let eps = Character::counit(&h);
        assert_eq!(&twisted_antipode_cm(&h, &eps), h.antipode());
        let g = group_algebra(&FiniteGroup::symmetric3());
        let sign = find_characters(&g).items.into_iter().find(|c| c.values.contains(&q(-1))).unwrap();
        let st = twisted_antipode_cm(&g, &sign);
        let grp = FiniteGroup::symmetric3();
        for i in 0..6 {
            assert_eq!(st.col(i), &SparseVec::single(grp.inv(i), sign.values[i].clone()));
        }
    }

    #[test]
    fn involution_checks() {
        let kg = group_algebra(&FiniteGroup::symmetric3());
        let (e, one) = (Character::counit(&kg), Grouplike::one(&kg));
        assert!(is_modular_pair_in_involution_cm(&kg, &e, &one));
        assert!(is_modular_pair_in_involution_kr(&kg, &e, &one));
        let h = sweedler_h4();
        let (e, one) = (Character::counit(&h), Grouplike::one(&h));
        assert!(!is_modular_pair_in_involution_cm(&h, &e, &one));
        assert!(!is_modular_pair_in_involution_kr(&h, &e, &one));
    }

    /// Brute force over every character × grouplike pair of H4.
    #[test]
    fn h4_has_involutive_pairs() {
        let h = sweedler_h4();
        let chars = find_characters(&h).items;
        let gls = find_grouplikes(&h).items;
        let mut cm = Vec::new();
        let mut kr = Vec::new();
        for (a, c) in chars.iter().enumerate() {
            for (b, g) in gls.iter().enumerate() {
                if is_modular_pair_in_involution_cm(&h, c, g) {
                    cm.push((a, b));
                }
                if is_modular_pair_in_involution_kr(&h, c, g) {
                    kr.push((a, b));
                }
            }
        }
        // (ε, g) and (δ, 1) with δ(g) = −1; (δ, g) has δ(σ) = −1
        assert_eq!(cm, vec![(0, 1), (1, 0)]);
        assert_eq!(kr, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn haar_integrals() {
        let g = FiniteGroup::cyclic(3);
        let kg = group_algebra(&g);
        assert_eq!(find_haar_integral(&kg), Some(vec![q(1), q(0), q(0)]));
        let kfun = function_algebra(&FiniteGroup::symmetric3());
        let i = find_haar_integral(&kfun).unwrap();
        assert!(i.iter().all(|v| *v == crate::exactla::qf(1, 6)));
        // H4 is not cosemisimple: its integrals vanish on 1
        assert_eq!(find_haar_integral(&sweedler_h4()), None);
    }
}
