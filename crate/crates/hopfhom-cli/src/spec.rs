//! JSON input files: a Hopf algebra or a groupoid, optionally with a module algebra action.

use std::collections::BTreeSet;

use hopfhom::exactla::{parse_q, q, Mat, SparseVec, Vector, Q};
use hopfhom::extalg::FiniteGroupoid;
use hopfhom::hopfcore::{
    find_characters, find_grouplikes, function_algebra, group_algebra, sweedler_h4, Character, Family,
    FiniteAlgebra, FiniteCoalgebra, FiniteGroup, Grouplike, HopfAlgebraData,
};
use hopfhom::hopfcyc::ModuleAlgebraAction;
use hopfhom::smash::adjoint_action;
use serde_json::{Map, Value};

use crate::error::CliError;
use crate::report::sha256_hex;

pub enum Object {
    Hopf(HopfAlgebraData),
    Groupoid(FiniteGroupoid),
}

pub enum ActionSpec {
    Adjoint,
    Trivial(FiniteAlgebra),
    Explicit(FiniteAlgebra, Vec<Mat>),
}

pub struct Input {
    /// sha256 of the canonical re-serialization, so whitespace and key order do not matter.
    pub hash: String,
    pub kind: String,
    pub object: Object,
    pub action: Option<ActionSpec>,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn invalid(what: &str, witness: impl ToString) -> CliError {
    CliError::Invalid { what: what.to_string(), witness: witness.to_string() }
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), CliError> {
    let allowed: BTreeSet<&str> = allowed.iter().copied().collect();
    match obj.keys().find(|k| !allowed.contains(k.as_str())) {
        Some(k) => Err(schema(format!("unknown field \"{k}\""))),
        None => Ok(()),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| schema(format!("missing field \"{key}\"")))
}

fn as_index(v: &Value, ctx: &str) -> Result<usize, CliError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| schema(format!("{ctx}: expected a non-negative integer")))
}

fn as_rational(v: &Value, ctx: &str) -> Result<Q, CliError> {
    let s = v.as_str().ok_or_else(|| schema(format!("{ctx}: rationals are strings \"p/q\"")))?;
    parse_q(s).ok_or_else(|| schema(format!("{ctx}: \"{s}\" is not a reduced rational")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| schema(format!("{ctx}: expected an array")))
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| schema(format!("{ctx}: expected an object")))
}

/// Sparse entries `[i_1, …, i_k, "c"]`, every index below `bounds[j]`.
fn triples(v: &Value, bounds: &[usize], ctx: &str) -> Result<Vec<(Vec<usize>, Q)>, CliError> {
    as_array(v, ctx)?
        .iter()
        .map(|e| {
            let e = as_array(e, ctx)?;
            if e.len() != bounds.len() + 1 {
                return Err(schema(format!("{ctx}: entries have {} indices and a coefficient", bounds.len())));
            }
            let idx = e[..bounds.len()]
                .iter()
                .zip(bounds)
                .map(|(x, &b)| {
                    let i = as_index(x, ctx)?;
                    if i >= b {
                        return Err(schema(format!("{ctx}: index {i} out of range (< {b})")));
                    }
                    Ok(i)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((idx, as_rational(&e[bounds.len()], ctx)?))
        })
        .collect()
}

fn labels(obj: &Map<String, Value>, dim: usize) -> Result<Vec<String>, CliError> {
    match obj.get("labels") {
        None => Ok((0..dim).map(|i| format!("e{i}")).collect()),
        Some(v) => {
            let l: Vec<String> = as_array(v, "labels")?
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or_else(|| schema("labels: expected strings")))
                .collect::<Result<_, _>>()?;
            if l.len() != dim {
                return Err(schema(format!("labels: {} labels for dimension {dim}", l.len())));
            }
            Ok(l)
        }
    }
}

fn group(v: &Value) -> Result<FiniteGroup, CliError> {
    if let Some(s) = v.as_str() {
        return match s {
            "trivial" => Ok(FiniteGroup::trivial()),
            "S3" => Ok(FiniteGroup::symmetric3()),
            "klein" => Ok(FiniteGroup::klein()),
            _ => Err(schema(format!("unknown group \"{s}\""))),
        };
    }
    let obj = as_object(v, "group")?;
    if let Some(n) = obj.get("cyclic") {
        check_keys(obj, &["cyclic"])?;
        let n = as_index(n, "group.cyclic")?;
        if n == 0 {
            return Err(schema("group.cyclic must be positive"));
        }
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(parts) = obj.get("product") {
        check_keys(obj, &["product"])?;
        let parts = as_array(parts, "group.product")?;
        let mut g = FiniteGroup::trivial();
        for p in parts {
            g = FiniteGroup::product(&g, &group(p)?);
        }
        return Ok(g);
    }
    check_keys(obj, &["labels", "table"])?;
    let table: Vec<Vec<usize>> = as_array(field(obj, "table")?, "group.table")?
        .iter()
        .map(|r| as_array(r, "group.table")?.iter().map(|x| as_index(x, "group.table")).collect())
        .collect::<Result<_, _>>()?;
    let l = labels(obj, table.len())?;
    FiniteGroup::from_table(l, table).map_err(|e| invalid("group", e))
}

fn algebra_from_constants(obj: &Map<String, Value>, dim: usize) -> Result<FiniteAlgebra, CliError> {
    let mut mult: Vec<Vec<(usize, Q)>> = vec![Vec::new(); dim * dim];
    for (i, c) in triples(field(obj, "mult")?, &[dim, dim, dim], "mult")? {
        mult[i[0] * dim + i[1]].push((i[2], c));
    }
    let unit = SparseVec::from_pairs(triples(field(obj, "unit")?, &[dim], "unit")?.into_iter().map(|(i, c)| (i[0], c)));
    FiniteAlgebra::new(labels(obj, dim)?, mult.into_iter().map(SparseVec::from_pairs).collect(), unit)
        .map_err(|e| schema(e.to_string()))
}

fn dim_of(obj: &Map<String, Value>) -> Result<usize, CliError> {
    let d = as_index(field(obj, "dim")?, "dim")?;
    if d == 0 {
        return Err(schema("dim must be positive"));
    }
    Ok(d)
}

fn structure_constants(obj: &Map<String, Value>) -> Result<HopfAlgebraData, CliError> {
    let d = dim_of(obj)?;
    let name = obj.get("name").and_then(Value::as_str).unwrap_or("custom").to_string();
    let algebra = algebra_from_constants(obj, d)?;
    let mut comult: Vec<Vec<(usize, Q)>> = vec![Vec::new(); d];
    for (i, c) in triples(field(obj, "comult")?, &[d, d, d], "comult")? {
        comult[i[0]].push((i[1] * d + i[2], c));
    }
    let mut counit = vec![q(0); d];
    for (i, c) in triples(field(obj, "counit")?, &[d], "counit")? {
        counit[i[0]] += c;
    }
    let coalgebra = FiniteCoalgebra::new(algebra.labels().to_vec(), comult.into_iter().map(SparseVec::from_pairs).collect(), counit)
        .map_err(|e| schema(e.to_string()))?;
    let mut s: Vec<Vec<(usize, Q)>> = vec![Vec::new(); d];
    for (i, c) in triples(field(obj, "antipode")?, &[d, d], "antipode")? {
        s[i[0]].push((i[1], c));
    }
    let antipode = Mat::from_columns(d, s.into_iter().map(SparseVec::from_pairs).collect());
    HopfAlgebraData::new(name, Family::Custom, algebra, coalgebra, antipode).map_err(|e| schema(e.to_string()))
}

fn groupoid(obj: &Map<String, Value>) -> Result<FiniteGroupoid, CliError> {
    if let Some(n) = obj.get("pair") {
        let n = as_index(n, "pair")?;
        if n == 0 {
            return Err(schema("pair must be positive"));
        }
        return Ok(FiniteGroupoid::pair(n));
    }
    let objects: Vec<String> = as_array(field(obj, "objects")?, "objects")?
        .iter()
        .map(|x| x.as_str().map(String::from).ok_or_else(|| schema("objects: expected strings")))
        .collect::<Result<_, _>>()?;
    let morphisms = as_array(field(obj, "morphisms")?, "morphisms")?
        .iter()
        .map(|m| {
            let m = as_object(m, "morphisms")?;
            check_keys(m, &["label", "src", "tgt"])?;
            let label = field(m, "label")?.as_str().ok_or_else(|| schema("morphisms.label: expected a string"))?;
            Ok((label.to_string(), as_index(field(m, "src")?, "morphisms.src")?, as_index(field(m, "tgt")?, "morphisms.tgt")?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let n = morphisms.len();
    let composition = as_array(field(obj, "composition")?, "composition")?
        .iter()
        .map(|e| {
            let e = as_array(e, "composition")?;
            if e.len() != 3 {
                return Err(schema("composition: entries are [g, f, g∘f]"));
            }
            let v = e.iter().map(|x| as_index(x, "composition")).collect::<Result<Vec<_>, _>>()?;
            if v.iter().any(|&i| i >= n) {
                return Err(schema("composition: morphism index out of range"));
            }
            Ok((v[0], v[1], v[2]))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    FiniteGroupoid::new(objects, morphisms, composition).map_err(|e| invalid("groupoid", e))
}

fn action_algebra(v: &Value) -> Result<FiniteAlgebra, CliError> {
    let obj = as_object(v, "action.algebra")?;
    match field(obj, "kind")?.as_str() {
        Some("truncated_polynomial") => {
            check_keys(obj, &["kind", "n"])?;
            let n = as_index(field(obj, "n")?, "action.algebra.n")?;
            if n == 0 {
                return Err(schema("action.algebra.n must be positive"));
            }
            Ok(FiniteAlgebra::truncated_polynomial(n))
        }
        Some("matrix") => {
            check_keys(obj, &["kind", "k"])?;
            let k = as_index(field(obj, "k")?, "action.algebra.k")?;
            if k == 0 {
                return Err(schema("action.algebra.k must be positive"));
            }
            Ok(FiniteAlgebra::matrix_algebra(k))
        }
        Some("structure_constants") => {
            check_keys(obj, &["kind", "dim", "labels", "mult", "unit"])?;
            algebra_from_constants(obj, dim_of(obj)?)
        }
        _ => Err(schema("action.algebra.kind must be truncated_polynomial, matrix or structure_constants")),
    }
}

fn action(v: &Value) -> Result<ActionSpec, CliError> {
    if v.as_str() == Some("adjoint") {
        return Ok(ActionSpec::Adjoint);
    }
    let obj = as_object(v, "action")?;
    match field(obj, "type")?.as_str() {
        Some("adjoint") => {
            check_keys(obj, &["type"])?;
            Ok(ActionSpec::Adjoint)
        }
        Some("trivial") => {
            check_keys(obj, &["type", "algebra"])?;
            Ok(ActionSpec::Trivial(action_algebra(field(obj, "algebra")?)?))
        }
        Some("explicit") => {
            check_keys(obj, &["type", "algebra", "matrices"])?;
            let a = action_algebra(field(obj, "algebra")?)?;
            let d = a.dim();
            let mats = as_array(field(obj, "matrices")?, "action.matrices")?
                .iter()
                .map(|m| {
                    // entries [row, col, "c"]
                    let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); d];
                    for (i, c) in triples(m, &[d, d], "action.matrices")? {
                        cols[i[1]].push((i[0], c));
                    }
                    Ok(Mat::from_columns(d, cols.into_iter().map(SparseVec::from_pairs).collect()))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(ActionSpec::Explicit(a, mats))
        }
        _ => Err(schema("action.type must be adjoint, trivial or explicit")),
    }
}

/// Re-serializes with sorted keys and no whitespace.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

pub fn parse(text: &str) -> Result<Input, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema(format!("not JSON: {e}")))?;
    let obj = as_object(&v, "spec")?;
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| schema("kind must be a string"))?.to_string();
    let object = match kind.as_str() {
        "group_algebra" | "function_algebra" => {
            check_keys(obj, &["kind", "name", "group", "action"])?;
            let g = group(field(obj, "group")?)?;
            Object::Hopf(if kind == "group_algebra" { group_algebra(&g) } else { function_algebra(&g) })
        }
        "sweedler_h4" => {
            check_keys(obj, &["kind", "name", "action"])?;
            Object::Hopf(sweedler_h4())
        }
        "structure_constants" => {
            check_keys(obj, &["kind", "name", "dim", "labels", "mult", "unit", "comult", "counit", "antipode", "action"])?;
            Object::Hopf(structure_constants(obj)?)
        }
        "groupoid" => {
            check_keys(obj, &["kind", "name", "pair", "objects", "morphisms", "composition"])?;
            Object::Groupoid(groupoid(obj)?)
        }
        other => return Err(schema(format!("unknown kind \"{other}\""))),
    };
    let action = obj.get("action").map(action).transpose()?;
    Ok(Input { hash: sha256_hex(canonical(&v).as_bytes()), kind, object, action })
}

impl Input {
    pub fn hopf(&self) -> Result<&HopfAlgebraData, CliError> {
        match &self.object {
            Object::Hopf(h) => Ok(h),
            Object::Groupoid(_) => Err(CliError::Inapplicable(format!("needs a Hopf algebra, input kind is {}", self.kind))),
        }
    }

    pub fn groupoid(&self) -> Result<&FiniteGroupoid, CliError> {
        match &self.object {
            Object::Groupoid(g) => Ok(g),
            Object::Hopf(_) => Err(CliError::Inapplicable(format!("needs a groupoid, input kind is {}", self.kind))),
        }
    }

    /// The group G when the input is kG.
    pub fn group(&self) -> Result<FiniteGroup, CliError> {
        match &self.hopf()?.family {
            Family::Group(g) => Ok(g.clone()),
            _ => Err(CliError::Inapplicable("needs a group algebra".into())),
        }
    }

    /// The declared action, or the adjoint action when none is given.
    pub fn action(&self) -> Result<ModuleAlgebraAction, CliError> {
        let h = self.hopf()?;
        match &self.action {
            None | Some(ActionSpec::Adjoint) => Ok(adjoint_action(h)),
            Some(ActionSpec::Trivial(a)) => Ok(ModuleAlgebraAction::trivial(h.clone(), a.clone())),
            Some(ActionSpec::Explicit(a, m)) => {
                if m.len() != h.dim() {
                    return Err(schema(format!("action.matrices: {} matrices for dim H = {}", m.len(), h.dim())));
                }
                ModuleAlgebraAction::new(h.clone(), a.clone(), m.clone()).map_err(|e| invalid("action", e))
            }
        }
    }
}

fn explicit_values(s: &str) -> Option<Vec<Q>> {
    s.contains(',').then(|| s.split(',').map(parse_q).collect::<Option<Vec<_>>>()).flatten()
}

fn index_suffix(s: &str) -> Option<usize> {
    s.strip_prefix('#').and_then(|k| k.parse().ok())
}

/// `eps`/`counit`, `sign` (first character with a −1 value), `#k` (k-th found character), or
/// comma-separated values on the basis.
pub fn resolve_delta(h: &HopfAlgebraData, name: &str) -> Result<Character, CliError> {
    let unknown = || CliError::UnknownCharacter(name.to_string());
    if matches!(name, "eps" | "counit" | "ε") {
        return Ok(Character::counit(h));
    }
    if let Some(v) = explicit_values(name) {
        return Character::new(h, v).map_err(|e| CliError::UnknownCharacter(format!("{name}: {e}")));
    }
    let found = find_characters(h).items;
    if name == "sign" {
        let minus = parse_q("-1").expect("literal");
        return found.into_iter().find(|c| c.values.contains(&minus)).ok_or_else(unknown);
    }
    index_suffix(name).and_then(|k| found.into_iter().nth(k)).ok_or_else(unknown)
}

/// `1`, a basis label, `#k` (k-th found grouplike), or comma-separated coordinates.
pub fn resolve_sigma(h: &HopfAlgebraData, name: &str) -> Result<Grouplike, CliError> {
    let unknown = || CliError::UnknownCharacter(format!("grouplike {name}"));
    if name == "1" {
        return Ok(Grouplike::one(h));
    }
    if let Some(v) = explicit_values(name) {
        if v.len() != h.dim() {
            return Err(unknown());
        }
        return Grouplike::new(h, SparseVec::from_dense(&v)).map_err(|e| CliError::UnknownCharacter(format!("{name}: {e}")));
    }
    if let Some(i) = h.labels().iter().position(|l| l == name) {
        let v: Vector = SparseVec::unit(i);
        return Grouplike::new(h, v).map_err(|e| CliError::UnknownCharacter(format!("{name}: {e}")));
    }
    index_suffix(name).and_then(|k| find_grouplikes(h).items.into_iter().nth(k)).ok_or_else(unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtins() {
        let i = parse(r#"{"kind":"group_algebra","group":{"cyclic":3}}"#).unwrap();
        assert_eq!(i.hopf().unwrap().dim(), 3);
        let j = parse(r#"{ "group" : {"cyclic":3}, "kind":"group_algebra" }"#).unwrap();
        assert_eq!(i.hash, j.hash);
        assert!(parse(r#"{"kind":"groupoid","pair":2}"#).unwrap().groupoid().is_ok());
    }

    #[test]
    fn schema_errors() {
        for bad in [
            "[1]",
            r#"{"kind":"nope"}"#,
            r#"{"kind":"sweedler_h4","extra":1}"#,
            r#"{"kind":"structure_constants","dim":1,"mult":[[0,0,0,"2/4"]],"unit":[[0,"1"]],"comult":[],"counit":[],"antipode":[]}"#,
            r#"{"kind":"structure_constants","dim":1,"mult":[[0,0,1,"1"]],"unit":[[0,"1"]],"comult":[],"counit":[],"antipode":[]}"#,
        ] {
            assert!(matches!(parse(bad), Err(CliError::Schema(_))), "{bad}");
        }
    }

    #[test]
    fn resolves_names() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(resolve_delta(&h, "sign").unwrap().values[1], parse_q("-1").unwrap());
        assert_eq!(resolve_delta(&h, "1,-1").unwrap().values[1], parse_q("-1").unwrap());
        assert!(resolve_delta(&h, "2,0").is_err());
        assert_eq!(resolve_sigma(&h, "g1").unwrap().vector, SparseVec::unit(1));
        assert!(resolve_sigma(&h, "nope").is_err());
        assert!(resolve_delta(&group_algebra(&FiniteGroup::cyclic(3)), "sign").is_err());
    }
}
