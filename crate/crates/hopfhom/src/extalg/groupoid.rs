use std::collections::HashMap;

use super::ExtAlgError;
use crate::hopfcore::FiniteGroup;

/// A groupoid with finitely many objects and morphisms. Composition `compose(g, f)` is
/// g∘f, defined when source(g) = target(f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    labels: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    table: HashMap<(usize, usize), usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroupoid {
    /// `morphisms[k] = (label, source, target)`; `composition` lists (g, f, g∘f) for every
    /// composable pair.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        composition: Vec<(usize, usize, usize)>,
    ) -> Result<Self, ExtAlgError> {
        let bad = |m: String| Err(ExtAlgError::NotAGroupoid(m));
        let n = morphisms.len();
        let no = objects.len();
        if morphisms.iter().any(|&(_, s, t)| s >= no || t >= no) {
            return bad("morphism endpoint out of range".into());
        }
        let labels: Vec<String> = morphisms.iter().map(|m| m.0.clone()).collect();
        let source: Vec<usize> = morphisms.iter().map(|m| m.1).collect();
        let target: Vec<usize> = morphisms.iter().map(|m| m.2).collect();
        let mut table = HashMap::new();
        for &(g, f, h) in &composition {
            if g >= n || f >= n || h >= n {
                return bad(format!("composition ({g}, {f}, {h}) out of range"));
            }
            if source[g] != target[f] {
                return bad(format!("{} ∘ {} is not composable", labels[g], labels[f]));
            }
            if source[h] != source[f] || target[h] != target[g] {
                return bad(format!("{} ∘ {} has the wrong endpoints", labels[g], labels[f]));
            }
            if table.insert((g, f), h).is_some() {
                return bad(format!("{} ∘ {} listed twice", labels[g], labels[f]));
            }
        }
        for g in 0..n {
            for f in 0..n {
                if source[g] == target[f] && !table.contains_key(&(g, f)) {
                    return bad(format!("{} ∘ {} missing", labels[g], labels[f]));
                }
            }
        }
        let mut identity = Vec::with_capacity(no);
        for x in 0..no {
            let id = (0..n).find(|&e| {
                source[e] == x
                    && target[e] == x
                    && (0..n).all(|f| target[f] != x || table[&(e, f)] == f)
                    && (0..n).all(|g| source[g] != x || table[&(g, e)] == g)
            });
            match id {
                Some(e) => identity.push(e),
                None => return bad(format!("object {} has no identity", objects[x])),
            }
        }
        for (&(g, f), &gf) in &table {
            for e in (0..n).filter(|&e| source[e] == target[g]) {
                if table[&(e, gf)] != table[&(table[&(e, g)], f)] {
                    return bad(format!("associativity fails at ({}, {}, {})", labels[e], labels[g], labels[f]));
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n).find(|&h| {
                source[h] == target[g]
                    && target[h] == source[g]
                    && table[&(h, g)] == identity[source[g]]
                    && table[&(g, h)] == identity[target[g]]
            });
            match inv {
                Some(h) => inverse.push(h),
                None => return bad(format!("{} is not invertible", labels[g])),
            }
        }
        Ok(FiniteGroupoid { objects, labels, source, target, table, identity, inverse })
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        let k = g.order();
        let morphisms = (0..k).map(|i| (g.labels()[i].clone(), 0, 0)).collect();
        let comp = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).map(|(a, b)| (a, b, g.mul(a, b))).collect();
        Self::new(vec!["*".into()], morphisms, comp).expect("a group is a groupoid")
    }

    /// One morphism (y, x): x → y for every ordered pair of objects.
    pub fn pair(n: usize) -> Self {
        let idx = |x: usize, y: usize| y * n + x;
        let morphisms = (0..n * n).map(|k| (format!("{}<-{}", k / n, k % n), k % n, k / n)).collect();
        let mut comp = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comp.push((idx(y, z), idx(x, y), idx(x, z)));
                }
            }
        }
        Self::new((0..n).map(|i| i.to_string()).collect(), morphisms, comp).expect("pair groupoid")
    }

    /// Objects only, no non-identity morphisms.
    pub fn discrete(n: usize) -> Self {
        Self::disjoint(&vec![FiniteGroup::trivial(); n].iter().map(Self::from_group).collect::<Vec<_>>())
    }

    /// A bundle of groups: one object per group.
    pub fn bundle(groups: &[FiniteGroup]) -> Self {
        Self::disjoint(&groups.iter().map(Self::from_group).collect::<Vec<_>>())
    }

    pub fn disjoint(parts: &[FiniteGroupoid]) -> Self {
        let (mut objects, mut morphisms, mut comp) = (Vec::new(), Vec::new(), Vec::new());
        for (pi, p) in parts.iter().enumerate() {
            let (o0, m0) = (objects.len(), morphisms.len());
            objects.extend(p.objects.iter().map(|o| format!("{pi}.{o}")));
            for g in 0..p.len() {
                morphisms.push((format!("{pi}.{}", p.labels[g]), o0 + p.source[g], o0 + p.target[g]));
            }
            comp.extend(p.table.iter().map(|(&(g, f), &h)| (m0 + g, m0 + f, m0 + h)));
        }
        Self::new(objects, morphisms, comp).expect("disjoint union of groupoids")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    pub fn target(&self, g: usize) -> usize {
        self.target[g]
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table.get(&(g, f)).copied()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// Every automorphism group abelian and no morphisms between distinct objects.
    pub fn is_abelian_bundle(&self) -> bool {
        (0..self.len()).all(|g| self.source[g] == self.target[g])
            && self.table.iter().all(|(&(g, f), &h)| self.table[&(f, g)] == h)
    }

    /// Composable chains g₁∘g₂∘⋯∘g_n, counted directly.
    pub fn composable_chains(&self, n: usize) -> usize {
        if n == 0 {
            return self.object_count();
        }
        let mut ending: Vec<usize> = vec![0; self.object_count()];
        for g in 0..self.len() {
            ending[self.source[g]] += 1;
        }
        for _ in 1..n {
            let mut next = vec![0; self.object_count()];
            for g in 0..self.len() {
                next[self.source[g]] += ending[self.target[g]];
            }
            ending = next;
        }
        ending.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions() {
        let p = FiniteGroupoid::pair(2);
        assert_eq!((p.len(), p.object_count()), (4, 2));
        assert_eq!(p.composable_chains(3), 16);
        assert!(!p.is_abelian_bundle());
        let b = FiniteGroupoid::bundle(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
        assert!(b.is_abelian_bundle());
        assert_eq!(b.composable_chains(2), 8);
        let g = FiniteGroupoid::from_group(&FiniteGroup::symmetric3());
        assert!(!g.is_abelian_bundle());
        assert_eq!(g.inverse(g.identity(0)), g.identity(0));
    }

    #[test]
    fn rejects_bad_tables() {
        let m = vec![("e".to_string(), 0, 0), ("a".to_string(), 0, 0)];
        let missing = FiniteGroupoid::new(vec!["x".into()], m.clone(), vec![(0, 0, 0), (0, 1, 1), (1, 0, 1)]);
        assert!(matches!(missing, Err(ExtAlgError::NotAGroupoid(_))));
        let not_inv = FiniteGroupoid::new(vec!["x".into()], m, vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
        assert!(matches!(not_inv, Err(ExtAlgError::NotAGroupoid(_))));
    }
}
