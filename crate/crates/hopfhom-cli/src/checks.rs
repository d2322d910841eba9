//! The named check catalog.

use hopfhom::cyclicfw::{check_cyclic_axioms, diagonal, AxiomReport};
use hopfhom::exactla::{fmt_q, q, Mat, SparseVec, Q};
use hopfhom::extalg::{
    check_haar_system, conjecture_probe, extended_cocyclic, find_haar_system, groupoid_extended_hopf, hc_parity_check,
};
use hopfhom::hopfcore::{find_haar_integral, Character, FiniteAlgebra, FiniteGroup, Grouplike, HopfAlgebraData};
use hopfhom::hopfcyc::{
    characteristic_map_cm, characteristic_map_kr, cm_cocyclic, cocommutative_decomposition_check,
    commutative_decomposition_check, connes_2cocycle, group_cocycle_to_cyclic, haar_periodic, ComoduleAlgebraCoaction,
    InvariantTrace, Side, TraceMode,
};
use hopfhom::invariant::{
    cm_cotriple_compare, coinvariant_subcomplex, cotriple_cocyclic, kr_triple_compare, morita_compare, HopfCotriple,
    HopfTriple,
};
use hopfhom::homengine::ParityEntry;
use hopfhom::qpbw::{collapsed_tor, GENERATORS, hc_inference, homotopy_check, Reading, Resolution, SweepBounds, Uq};
use hopfhom::smash::{
    coinvariant_row, coinvariant_row_dim_by_averaging, cylindrical_smash, ez_dimension_compare, phi_psi_isomorphism,
    spectral_sequence,
};

use crate::error::CliError;
use crate::report::{CheckEntry, Report};
use crate::spec::{resolve_delta, resolve_sigma, Input};

pub struct Params {
    pub delta: String,
    pub sigma: String,
    pub max_degree: Option<usize>,
    pub q: Q,
    pub k: usize,
    pub cochain: Option<Vec<Q>>,
    pub reading: Reading,
}

pub struct CheckSpec {
    pub id: &'static str,
    pub input: &'static str,
    pub cutoff: usize,
    pub summary: &'static str,
}

const fn spec(id: &'static str, input: &'static str, cutoff: usize, summary: &'static str) -> CheckSpec {
    CheckSpec { id, input, cutoff, summary }
}

pub const CATALOG: [CheckSpec; 26] = [
    spec("thm-4.1", "hopf", 4, "CM module H♮(δ,σ) is cocyclic for a modular pair in involution"),
    spec("thm-4.2", "group", 4, "HC of kG with (δ,1) equals ⊕ H_{n−2i}(G, k_δ)"),
    spec("prop-4.1", "hopf", 4, "commutative H: HP parity sums equal coalgebra cohomology parity sums"),
    spec("haar-hp", "hopf", 4, "normalized Haar integral: HP⁰ = k, HP¹ = 0"),
    spec("char-map-cm", "hopf", 3, "CM characteristic map is a cyclic morphism"),
    spec("char-map-kr", "hopf", 3, "KR characteristic map is a cyclic morphism"),
    spec("cocycle-2", "none", 2, "trace 2-cocycle of two commuting inner derivations of M₃"),
    spec("cocycle-group", "group", 2, "group 2-cocycle gives a cyclic cocycle on kG"),
    spec("thm-5.1", "groupoid", 3, "extended Hopf algebra H♮ is cocyclic"),
    spec("haar-system", "groupoid", 0, "a normal left Haar system exists and satisfies the axioms"),
    spec("hc-parity", "groupoid", 3, "HC odd = 0, HC even = dim ker(α − β)"),
    spec("conjecture-5.1", "groupoid", 3, "HC equals ⊕ H^{n−2i}(H, R) (numeric probe)"),
    spec("thm-6.1", "hopf", 3, "A♮H is cylindrical and its diagonal is cyclic"),
    spec("thm-6.2", "hopf", 3, "φ and ψ are inverse cyclic isomorphisms Δ(A♮H) ≅ (A#H)♮"),
    spec("thm-6.3", "hopf", 3, "HC of Tot(A♮H) equals HC of (A#H)♮"),
    spec("prop-6.1", "hopf", 3, "coinvariant row C^H(A) is cyclic with dims matching averaging"),
    spec("ss-6.4", "hopf", 2, "column spectral sequence E² bounds HC(A#H)"),
    spec("thm-7.1", "hopf", 3, "coinvariants of a Hopf triple form a cyclic module"),
    spec("prop-7.2", "hopf", 3, "C^H(H, k_δ) identifies with the KR cyclic module"),
    spec("morita", "hopf", 2, "HC^H(A, M) equals HC^H(M_k(A), M)"),
    spec("thm-7.3", "hopf", 3, "a Hopf cotriple gives a cocyclic module"),
    spec("cm-cotriple-iso", "hopf", 3, "C_H(H, k_σ) identifies with the CM cocyclic module"),
    spec("uq-resolution", "none", 0, "U_q(sl2) resolution satisfies d∘d = 0"),
    spec("uq-homotopy", "none", 0, "sd + ds = id on the basis sweep |l| ≤ 2, m, n ≤ 3"),
    spec("thm-4.4", "none", 3, "collapsed Tor of U_q(sl2) is (k, 0, 0, 0)"),
    spec("cor-4.2", "none", 4, "HC of U_q(sl2) is k in even and 0 in odd degrees"),
];

pub fn lookup(id: &str) -> Result<&'static CheckSpec, CliError> {
    CATALOG.iter().find(|c| c.id == id).ok_or_else(|| CliError::UnknownCheck(id.to_string()))
}

fn axioms(r: &AxiomReport) -> Result<(), String> {
    match r.first_failure() {
        None => Ok(()),
        Some((name, n, w)) => Err(format!("{name} fails in degree {n}: {w}")),
    }
}

fn dims_equal(left: &[usize], right: &[usize], what: (&str, &str)) -> Result<(), String> {
    if left == right {
        Ok(())
    } else {
        Err(format!("{} {left:?} ≠ {} {right:?}", what.0, what.1))
    }
}

fn inapplicable(e: impl ToString) -> CliError {
    CliError::Inapplicable(e.to_string())
}

struct Ctx<'a> {
    input: Option<&'a Input>,
    p: &'a Params,
    n: usize,
}

impl Ctx<'_> {
    fn input(&self) -> Result<&Input, CliError> {
        self.input.ok_or_else(|| CliError::Usage("this check needs an input file".into()))
    }

    fn hopf(&self) -> Result<&HopfAlgebraData, CliError> {
        self.input()?.hopf()
    }

    fn pair(&self) -> Result<(&HopfAlgebraData, Character, Grouplike), CliError> {
        let h = self.hopf()?;
        Ok((h, resolve_delta(h, &self.p.delta)?, resolve_sigma(h, &self.p.sigma)?))
    }

    fn resolution(&self) -> Result<Resolution, CliError> {
        let uq = Uq::new(self.p.q.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Resolution::new(uq, self.p.reading))
    }
}

fn unit_indicator(h: &HopfAlgebraData) -> Vec<Q> {
    let mut v = vec![q(0); h.dim()];
    for (i, c) in h.unit().iter() {
        v[i] = c.clone();
    }
    v
}

/// Coboundary of f(g) = (index of g) on G × G.
fn default_group_cochain(g: &FiniteGroup) -> Vec<Q> {
    let k = g.order();
    let f: Vec<Q> = (0..k).map(|i| if i == g.identity() { q(0) } else { q(i as i64) }).collect();
    (0..k * k).map(|i| &(&f[i % k] - &f[g.mul(i / k, i % k)]) + &f[i / k]).collect()
}

fn diag_matrix(a: &FiniteAlgebra, d: &[i64]) -> Mat {
    let k = d.len();
    let u = SparseVec::from_pairs(d.iter().enumerate().map(|(i, &x)| (i * k + i, q(x))));
    a.left_mul_matrix(&u).sub(&a.right_mul_matrix(&u))
}

fn run_one(id: &str, c: &Ctx) -> Result<Result<(), String>, CliError> {
    let n = c.n;
    Ok(match id {
        "thm-4.1" => {
            let (h, d, s) = c.pair()?;
            match cm_cocyclic(h, &d, &s) {
                Err(e) => Err(e.to_string()),
                Ok(x) => axioms(&check_cyclic_axioms(&x, n)),
            }
        }
        "thm-4.2" => {
            let g = c.input()?.group()?;
            let d = resolve_delta(c.hopf()?, &c.p.delta)?;
            let r = cocommutative_decomposition_check(&g, &d, n).map_err(inapplicable)?;
            dims_equal(&r.left, &r.right, ("HC", "⊕H"))
        }
        "prop-4.1" => {
            let r = commutative_decomposition_check(c.hopf()?, n).map_err(inapplicable)?;
            if r.holds() {
                Ok(())
            } else {
                Err(format!("HP (even, odd) = ({}, {}) vs parity sums {:?}; HC {:?}", parity(&r.hp[0]), parity(&r.hp[1]), r.parity_sums, r.hc))
            }
        }
        "haar-hp" => {
            let (h, d, s) = c.pair()?;
            find_haar_integral(h).ok_or_else(|| inapplicable("no normalized Haar integral"))?;
            let p = haar_periodic(h, &d, &s, n).map_err(inapplicable)?;
            let ok = p[0].stabilized && p[0].dim == Some(1) && p[1].stabilized && p[1].dim == Some(0);
            if ok {
                Ok(())
            } else {
                Err(format!("HP even {}, odd {}", parity(&p[0]), parity(&p[1])))
            }
        }
        "char-map-cm" => {
            let (_, d, s) = c.pair()?;
            let act = c.input()?.action()?;
            let mut values = vec![q(0); act.algebra.dim()];
            for (i, v) in act.algebra.unit().iter() {
                values[i] = v.clone();
            }
            let tr = InvariantTrace { values, mode: TraceMode::CmDeltaInvariant };
            let r = characteristic_map_cm(&act, &tr, &d, &s, n).map_err(inapplicable)?;
            match (&r.trace_failure, r.holds()) {
                (Some(w), _) => Err(format!("trace not invariant: {w}")),
                (None, true) => Ok(()),
                (None, false) => axioms(&r.morphism),
            }
        }
        "char-map-kr" => {
            let (h, d, s) = c.pair()?;
            let co = ComoduleAlgebraCoaction::regular(h, Side::Right);
            let tr = InvariantTrace { values: unit_indicator(h), mode: TraceMode::KrDeltaTraceSigmaInvariant };
            let r = characteristic_map_kr(&co, &tr, &d, &s, n).map_err(inapplicable)?;
            match (&r.trace_failure, r.holds()) {
                (Some(w), _) => Err(format!("trace not invariant: {w}")),
                (None, true) => Ok(()),
                (None, false) => axioms(&r.morphism),
            }
        }
        "cocycle-2" => {
            let a = FiniteAlgebra::matrix_algebra(3);
            let tr: Vec<Q> = (0..9).map(|i| if i % 4 == 0 { q(1) } else { q(0) }).collect();
            let r = connes_2cocycle(&a, &diag_matrix(&a, &[1, 2, 0]), &diag_matrix(&a, &[0, 1, 5]), &tr).map_err(inapplicable)?;
            cocycle_verdict(r.coboundary_witness, r.cyclic_witness)
        }
        "cocycle-group" => {
            let g = c.input()?.group()?;
            let cochain = c.p.cochain.clone().unwrap_or_else(|| default_group_cochain(&g));
            match group_cocycle_to_cyclic(&g, 2, &cochain) {
                Err(e) => Err(e.to_string()),
                Ok(r) => cocycle_verdict(r.coboundary_witness, r.cyclic_witness),
            }
        }
        "thm-5.1" => {
            let e = groupoid_extended_hopf(c.input()?.groupoid()?).map_err(inapplicable)?;
            match e.validate().and_then(|_| extended_cocyclic(&e, n.min(2))) {
                Err(err) => Err(err.to_string()),
                Ok(x) => axioms(&check_cyclic_axioms(&x, n)),
            }
        }
        "haar-system" => {
            let e = groupoid_extended_hopf(c.input()?.groupoid()?).map_err(inapplicable)?;
            match find_haar_system(&e) {
                None => Err("no normal left Haar system".into()),
                Some(tau) => check_haar_system(&e, &tau),
            }
        }
        "hc-parity" => {
            let e = groupoid_extended_hopf(c.input()?.groupoid()?).map_err(inapplicable)?;
            match hc_parity_check(&e, n) {
                Err(err) => Err(err.to_string()),
                Ok(r) if r.holds() => Ok(()),
                Ok(r) => Err(format!("HC {:?}, expected even dim {}", r.hc, r.expected_even)),
            }
        }
        "conjecture-5.1" => {
            let e = groupoid_extended_hopf(c.input()?.groupoid()?).map_err(inapplicable)?;
            let r = conjecture_probe(&e, n).map_err(inapplicable)?;
            dims_equal(&r.hc, &r.predicted, ("HC", "⊕H"))
        }
        "thm-6.1" => {
            let act = c.input()?.action()?;
            let cyl = cylindrical_smash(&act).map_err(inapplicable)?;
            axioms(&cyl.check(n)).and_then(|_| match diagonal(cyl, n) {
                Err(e) => Err(e.to_string()),
                Ok(x) => axioms(&check_cyclic_axioms(&x, n)),
            })
        }
        "thm-6.2" => {
            let r = phi_psi_isomorphism(&c.input()?.action()?, n).map_err(inapplicable)?;
            match r.inverse_failure {
                Some(k) => Err(format!("φψ or ψφ is not the identity in degree {k}")),
                None => axioms(&r.morphism),
            }
        }
        "thm-6.3" => {
            let r = ez_dimension_compare(&c.input()?.action()?, n).map_err(inapplicable)?;
            dims_equal(&r.left, &r.right, ("HC(Tot)", "HC(A#H)"))
        }
        "prop-6.1" => {
            let act = c.input()?.action()?;
            let row = coinvariant_row(&act, n).map_err(inapplicable)?;
            axioms(&check_cyclic_axioms(&row, n)).and_then(|_| {
                for k in 0..=n {
                    if let Some(avg) = coinvariant_row_dim_by_averaging(&act, k) {
                        if avg != row.dim(k) {
                            return Err(format!("degree {k}: quotient dim {} ≠ averaging rank {avg}", row.dim(k)));
                        }
                    }
                }
                Ok(())
            })
        }
        "ss-6.4" => {
            let r = spectral_sequence(&c.input()?.action()?, n).map_err(inapplicable)?;
            if r.bound_holds() {
                Ok(())
            } else {
                Err(format!("E² {:?}, HC(A#H) {:?}", r.e2, r.target))
            }
        }
        "thm-7.1" => {
            let (h, d, s) = c.pair()?;
            let t = HopfTriple::hopf(h, &d, &s);
            match t.matched_in_involution() {
                Err(w) => Err(format!("not matched in involution: {w}")),
                Ok(()) => match coinvariant_subcomplex(&t, n) {
                    Err(e) => Err(e.to_string()),
                    Ok(x) => axioms(&check_cyclic_axioms(&x, n)),
                },
            }
        }
        "prop-7.2" => {
            let (h, d, s) = c.pair()?;
            match kr_triple_compare(h, &d, &s, n) {
                Err(e) => Err(e.to_string()),
                Ok(r) => match r.not_bijective {
                    Some(k) => Err(format!("not bijective in degree {k}")),
                    None => axioms(&r.morphism),
                },
            }
        }
        "morita" => {
            let (h, d, s) = c.pair()?;
            let r = morita_compare(&HopfTriple::hopf(h, &d, &s), c.p.k, n).map_err(inapplicable)?;
            dims_equal(&r.left, &r.right, ("HC(A)", "HC(M_k(A))"))
        }
        "thm-7.3" => {
            let (h, d, s) = c.pair()?;
            let ct = HopfCotriple::hopf(h, &d, &s);
            match ct.comatched_in_involution() {
                Err(w) => Err(format!("not comatched in involution: {w}")),
                Ok(()) => match cotriple_cocyclic(&ct, n) {
                    Err(e) => Err(e.to_string()),
                    Ok(x) => axioms(&check_cyclic_axioms(&x, n)),
                },
            }
        }
        "cm-cotriple-iso" => {
            let (h, d, s) = c.pair()?;
            match cm_cotriple_compare(h, &d, &s, n) {
                Err(e) => Err(e.to_string()),
                Ok(r) => match r.not_bijective {
                    Some(k) => Err(format!("not bijective in degree {k}")),
                    None => axioms(&r.morphism),
                },
            }
        }
        "uq-resolution" => match c.resolution()?.square_zero_failure() {
            None => Ok(()),
            Some((0, g, v)) => Err(format!("μd_0 ≠ 0 on {}: d_0 = {v}", GENERATORS[1][g])),
            Some((k, g, v)) => Err(format!("d_{}d_{k} ≠ 0 on {}: {v}", k - 1, GENERATORS[k + 1][g])),
        },
        "uq-homotopy" => {
            let r = homotopy_check(&c.resolution()?, &SweepBounds::default());
            match r.failures.first() {
                None => Ok(()),
                Some(w) => Err(format!(
                    "{} of {} basis elements fail; first at level {}, {} with a = {}, b = {}: {}",
                    r.failures.len(),
                    r.checked,
                    w.level,
                    w.generator,
                    w.a,
                    w.b,
                    w.defect
                )),
            }
        }
        "thm-4.4" => {
            let tor = collapsed_tor(&c.resolution()?, n).dims;
            let expected: Vec<usize> = (0..=n).map(|k| usize::from(k == 0)).collect();
            dims_equal(&tor, &expected, ("Tor", "expected"))
        }
        "cor-4.2" => {
            let tor = collapsed_tor(&c.resolution()?, n).dims;
            hc_inference(&tor, n).map(|_| ()).map_err(|e| e.to_string())
        }
        other => return Err(CliError::UnknownCheck(other.into())),
    })
}

fn parity(e: &ParityEntry) -> String {
    match (e.stabilized, e.dim) {
        (true, Some(d)) => d.to_string(),
        _ => "not stabilized".into(),
    }
}

fn cocycle_verdict(coboundary: Option<(Vec<usize>, Q)>, cyclic: Option<(Vec<usize>, Q)>) -> Result<(), String> {
    match (coboundary, cyclic) {
        (Some((t, v)), _) => Err(format!("bφ ≠ 0 at {t:?}: {}", fmt_q(&v))),
        (None, Some((t, v))) => Err(format!("φτ ≠ ±φ at {t:?}: {}", fmt_q(&v))),
        (None, None) => Ok(()),
    }
}

pub fn run(id: &str, input: Option<&Input>, p: &Params) -> Result<Report, CliError> {
    let spec = lookup(id)?;
    let n = p.max_degree.unwrap_or(spec.cutoff);
    let ctx = Ctx { input, p, n };
    let verdict = run_one(id, &ctx)?;
    let mut report = Report { command: "check".into(), ..Default::default() };
    report.object_id = match input {
        Some(i) => i.hash.clone(),
        None if id.starts_with("uq") || id.starts_with("thm-4.4") || id.starts_with("cor") => "builtin:U_q(sl2)".into(),
        None => "builtin:M_3".into(),
    };
    report.parameters.insert("cutoff".into(), n.to_string());
    if spec.input == "hopf" || spec.input == "group" {
        report.parameters.insert("delta".into(), p.delta.clone());
        report.parameters.insert("sigma".into(), p.sigma.clone());
    }
    if spec.input == "none" && id != "cocycle-2" {
        report.parameters.insert("q".into(), fmt_q(&p.q));
        let reading = match p.reading {
            Reading::Verbatim => "verbatim",
            Reading::Corrected => "corrected",
        };
        report.parameters.insert("reading".into(), reading.into());
    }
    if id == "morita" {
        report.parameters.insert("k".into(), p.k.to_string());
    }
    report.checks.push(CheckEntry::from_result(id, verdict));
    Ok(report)
}
