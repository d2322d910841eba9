use super::HopfError;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, HopfError> {
        let n = table.len();
        let bad = |m: String| Err(HopfError::NotAGroup(m));
        if n == 0 || labels.len() != n {
            return bad("empty table or label count mismatch".into());
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("table is not square or has out-of-range entries".into());
        }
        let Some(e) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)) else {
            return bad("no two-sided identity".into());
        };
        let mut inverse = vec![0; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == e && table[h][g] == e) {
                Some(h) => inverse[g] = h,
                None => return bad(format!("element {} has no inverse", labels[g])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("associativity fails on ({}, {}, {})", labels[a], labels[b], labels[c]));
                    }
                }
            }
        }
        Ok(FiniteGroup { labels, table, identity: e, inverse })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(labels, table).expect("cyclic group table")
    }

    /// Permutations of {0,1,2} in lexicographic order, composed as (pq)(i) = p(q(i)).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let labels = vec!["e", "(23)", "(12)", "(123)", "(132)", "(13)"].into_iter().map(String::from).collect();
        let idx = |p: [usize; 3]| perms.iter().position(|x| *x == p).unwrap();
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|r| idx([p[r[0]], p[r[1]], p[r[2]]])).collect())
            .collect();
        Self::from_table(labels, table).expect("S3 table")
    }

    pub fn klein() -> Self {
        Self::product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// Direct product with index (a, b) ↦ a * |B| + b.
    pub fn product(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.order(), b.order());
        let labels = (0..na * nb).map(|i| format!("({},{})", a.labels[i / nb], b.labels[i % nb])).collect();
        let table = (0..na * nb)
            .map(|x| (0..na * nb).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        Self::from_table(labels, table).expect("product table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// All homomorphisms G → {±1}, as value vectors.
    pub fn sign_homomorphisms(&self) -> Vec<Vec<i64>> {
        let n = self.order();
        let mut out = Vec::new();
        let mut vals = vec![0i64; n];
        fn rec(g: &FiniteGroup, k: usize, vals: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if k == vals.len() {
                let n = vals.len();
                if (0..n).all(|a| (0..n).all(|b| vals[g.mul(a, b)] == vals[a] * vals[b])) {
                    out.push(vals.clone());
                }
                return;
            }
            for s in [1, -1] {
                vals[k] = s;
                rec(g, k + 1, vals, out);
            }
        }
        rec(self, 0, &mut vals, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_with_sign() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.sign_homomorphisms().len(), 2);
        assert_eq!(g.identity(), 0);
        let t = g.labels().iter().position(|l| l == "(123)").unwrap();
        assert_eq!(g.mul(t, g.mul(t, t)), 0);
    }

    #[test]
    fn rejects_non_groups() {
        let labels: Vec<String> = vec!["a".into(), "b".into()];
        assert!(FiniteGroup::from_table(labels.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroup::from_table(labels, vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn klein_and_cyclic_characters() {
        assert_eq!(FiniteGroup::klein().sign_homomorphisms().len(), 4);
        assert_eq!(FiniteGroup::cyclic(3).sign_homomorphisms().len(), 1);
        assert_eq!(FiniteGroup::cyclic(2).sign_homomorphisms().len(), 2);
    }
}
