use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{CyclicError, Operators, ParaCyclicModule, Variance};
use crate::exactla::{Mat, SparseVec, SubspaceBasis};

/// Degreewise subspaces W_n ⊆ X_n, given lazily.
pub type BasisFamily = Arc<dyn Fn(usize) -> SubspaceBasis + Send + Sync>;

struct Restricted {
    parent: Arc<ParaCyclicModule>,
    family: BasisFamily,
    quotient: bool,
    bases: Mutex<HashMap<usize, Arc<(SubspaceBasis, Vec<usize>)>>>,
}

impl Restricted {
    fn basis(&self, n: usize) -> Arc<(SubspaceBasis, Vec<usize>)> {
        if let Some(b) = self.bases.lock().unwrap().get(&n) {
            return b.clone();
        }
        let w = (self.family)(n);
        let comp = if self.quotient { w.complement_indices() } else { Vec::new() };
        let b = Arc::new((w, comp));
        self.bases.lock().unwrap().entry(n).or_insert(b).clone()
    }

    /// Transports a parent operator from degree `src` to degree `tgt`.
    fn transport(&self, op: &Mat, src: usize, tgt: usize) -> Result<Mat, String> {
        let (s, t) = (self.basis(src), self.basis(tgt));
        if self.quotient {
            let pos: HashMap<usize, usize> = t.1.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let cols = s
                .1
                .iter()
                .map(|&j| {
                    let r = t.0.reduce(op.col(j));
                    SparseVec::from_pairs(r.iter().map(|(i, c)| (pos[&i], c.clone())))
                })
                .collect();
            Ok(Mat::from_columns(t.1.len(), cols))
        } else {
            let mut cols = Vec::with_capacity(s.0.dim());
            for (k, v) in s.0.vectors().iter().enumerate() {
                match t.0.coordinates(&op.apply(v)) {
                    Some(c) => cols.push(c),
                    None => return Err(format!("basis vector {k} of degree {src} leaves the subspace in degree {tgt}")),
                }
            }
            Ok(Mat::from_columns(t.0.dim(), cols))
        }
    }

    /// (source, target) degrees of native face, degeneracy.
    fn face_degrees(&self, n: usize) -> (usize, usize) {
        match self.parent.variance() {
            Variance::Cyclic => (n, n - 1),
            Variance::Cocyclic => (n - 1, n),
        }
    }

    fn degeneracy_degrees(&self, n: usize) -> (usize, usize) {
        match self.parent.variance() {
            Variance::Cyclic => (n, n + 1),
            Variance::Cocyclic => (n + 1, n),
        }
    }

    /// For quotients: the parent operator must carry W_src into W_tgt.
    fn preserves(&self, op: &Mat, src: usize, tgt: usize) -> Result<(), String> {
        let (s, t) = (self.basis(src), self.basis(tgt));
        for (k, v) in s.0.vectors().iter().enumerate() {
            if !t.0.contains(&op.apply(v)) {
                return Err(format!("relation {k} of degree {src} maps outside the relations in degree {tgt}"));
            }
        }
        Ok(())
    }

    fn verify(&self, max_degree: usize) -> Result<(), CyclicError> {
        let check = |op: &Mat, src: usize, tgt: usize, what: String| -> Result<(), CyclicError> {
            let r = if self.quotient { self.preserves(op, src, tgt) } else { self.transport(op, src, tgt).map(|_| ()) };
            r.map_err(|e| CyclicError::OperatorEscapesSubspace(format!("{what}: {e}")))
        };
        for n in 0..=max_degree {
            check(&self.parent.raw_cyclic(n), n, n, format!("τ in degree {n}"))?;
            if n >= 1 {
                let (s, t) = self.face_degrees(n);
                for i in 0..=n {
                    check(&self.parent.raw_face(n, i), s, t, format!("δ_{i} in degree {n}"))?;
                }
            }
            if n < max_degree {
                let (s, t) = self.degeneracy_degrees(n);
                for i in 0..=n {
                    check(&self.parent.raw_degeneracy(n, i), s, t, format!("σ_{i} in degree {n}"))?;
                }
            }
        }
        Ok(())
    }
}

impl Operators for Restricted {
    fn dim(&self, n: usize) -> usize {
        let b = self.basis(n);
        if self.quotient {
            b.1.len()
        } else {
            b.0.dim()
        }
    }

    fn face(&self, n: usize, i: usize) -> Mat {
        let (s, t) = self.face_degrees(n);
        self.transport(&self.parent.raw_face(n, i), s, t).expect("face escapes subspace")
    }

    fn degeneracy(&self, n: usize, i: usize) -> Mat {
        let (s, t) = self.degeneracy_degrees(n);
        self.transport(&self.parent.raw_degeneracy(n, i), s, t).expect("degeneracy escapes subspace")
    }

    fn cyclic(&self, n: usize) -> Mat {
        self.transport(&self.parent.raw_cyclic(n), n, n).expect("cyclic operator escapes subspace")
    }
}

fn build(
    parent: Arc<ParaCyclicModule>,
    name: String,
    family: BasisFamily,
    quotient: bool,
    check_through: usize,
) -> Result<ParaCyclicModule, CyclicError> {
    let r = Restricted { parent: parent.clone(), family, quotient, bases: Mutex::new(HashMap::new()) };
    r.verify(check_through)?;
    Ok(ParaCyclicModule::new(name, parent.variance(), parent.order(), Box::new(r)))
}

/// Submodule on the subspaces `family(n)`, in the coordinates of their echelon bases.
/// Invariance under every operator is verified through `check_through`.
pub fn sub_module(
    parent: Arc<ParaCyclicModule>,
    name: impl Into<String>,
    family: BasisFamily,
    check_through: usize,
) -> Result<ParaCyclicModule, CyclicError> {
    build(parent, name.into(), family, false, check_through)
}

/// Quotient X_n / family(n), with basis the standard vectors off the echelon pivots.
pub fn quotient_module(
    parent: Arc<ParaCyclicModule>,
    name: impl Into<String>,
    family: BasisFamily,
    check_through: usize,
) -> Result<ParaCyclicModule, CyclicError> {
    build(parent, name.into(), family, true, check_through)
}

#[cfg(test)]
mod tests {
    use super::super::{algebra_cyclic_module, check_cyclic_axioms};
    use super::*;
    use crate::exactla::q;
    use crate::hopfcore::{group_algebra, FiniteGroup};
    use crate::hopfcore::tensor::{decode, encode};

    /// In kG♮, tensors g_0 ⊗ … ⊗ g_n with product in a fixed conjugacy class span a
    /// cyclic submodule.
    fn class_family(g: FiniteGroup, class_of_identity: bool) -> BasisFamily {
        Arc::new(move |n: usize| {
            let d = g.order();
            let dims = vec![d; n + 1];
            let vecs = (0..d.pow(n as u32 + 1)).filter_map(|i| {
                let t = decode(i, &dims);
                let p = t.iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
                ((p == g.identity()) == class_of_identity).then(|| SparseVec::unit(encode(&t, &dims)))
            });
            SubspaceBasis::from_vectors(d.pow(n as u32 + 1), vecs)
        })
    }

    #[test]
    fn conjugacy_class_submodule() {
        let g = FiniteGroup::cyclic(3);
        let x = Arc::new(algebra_cyclic_module(&group_algebra(&g).algebra));
        let s = sub_module(x.clone(), "identity class", class_family(g.clone(), true), 3).unwrap();
        assert_eq!(s.dim(2), 9);
        assert!(check_cyclic_axioms(&s, 3).all_pass());
        let quo = quotient_module(x, "rest", class_family(g, false), 3).unwrap();
        assert_eq!(quo.dim(1), 3);
        assert!(check_cyclic_axioms(&quo, 3).all_pass());
    }

    #[test]
    fn escaping_family_is_rejected() {
        let g = FiniteGroup::cyclic(2);
        let x = Arc::new(algebra_cyclic_module(&group_algebra(&g).algebra));
        // span of e⊗…⊗e ⊗ g is not closed under τ
        let fam: BasisFamily = Arc::new(|n: usize| {
            SubspaceBasis::from_vectors(1 << (n + 1), [SparseVec::single(1, q(1))])
        });
        let err = sub_module(x, "bad", fam, 2).unwrap_err();
        assert!(matches!(err, CyclicError::OperatorEscapesSubspace(_)));
    }
}
