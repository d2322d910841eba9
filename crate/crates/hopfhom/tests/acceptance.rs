//! Acceptance suite: one line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The process exits
//! non-zero when a criterion that is expected to pass fails, or when a criterion that is
//! known to fail (5 and 9, see README) stops producing the recorded values.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hopfhom::cyclicfw::{algebra_cyclic_module, check_cyclic_axioms, AxiomReport, ParaCyclicModule};
use hopfhom::exactla::{fmt_q, q, Mat, SparseVec, Q};
use hopfhom::extalg::{groupoid_extended_hopf, hc_parity_check, FiniteGroupoid};
use hopfhom::homengine::{cyclic_homology_bicomplex, cyclic_homology_lambda};
use hopfhom::hopfcore::{
    find_characters, function_algebra, group_algebra, is_modular_pair_in_involution_cm, is_modular_pair_in_involution_kr,
    sweedler_h4, Character, FiniteAlgebra, FiniteGroup, Grouplike, HopfAlgebraData,
};
use hopfhom::hopfcyc::{
    cm_cocyclic, cocommutative_decomposition_check, commutative_decomposition_check, connes_2cocycle,
    group_cocycle_to_cyclic, haar_periodic, kr_cyclic, HopfCycError, ModuleAlgebraAction,
};
use hopfhom::invariant::{
    cm_cotriple_compare, coinvariant_subcomplex, cotriple_cocyclic, kr_triple_compare, morita_compare, HopfCotriple,
    HopfTriple,
};
use hopfhom::qpbw::{collapsed_tor, hc_inference, homotopy_check, Reading, Resolution, SweepBounds, Uq};
use hopfhom::smash::{ez_dimension_compare, phi_psi_isomorphism};

struct Outcome {
    pass: bool,
    detail: String,
    /// For a criterion expected to fail: whether the recorded failure values were reproduced.
    as_recorded: Option<bool>,
}

impl Outcome {
    fn verdict(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, as_recorded: None }
    }
}

struct Builtin {
    name: &'static str,
    h: HopfAlgebraData,
}

fn builtins() -> Vec<Builtin> {
    let (z2, z3, s3) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3());
    vec![
        Builtin { name: "kZ/2", h: group_algebra(&z2) },
        Builtin { name: "kZ/3", h: group_algebra(&z3) },
        Builtin { name: "kS3", h: group_algebra(&s3) },
        Builtin { name: "k^Z/2", h: function_algebra(&z2) },
        Builtin { name: "k^S3", h: function_algebra(&s3) },
        Builtin { name: "H4", h: sweedler_h4() },
    ]
}

/// (ε, 1) when it is in involution for the given test, otherwise (ε, g) with g the first
/// non-trivial grouplike basis element (H4).
fn pair(h: &HopfAlgebraData, involutive: fn(&HopfAlgebraData, &Character, &Grouplike) -> bool) -> (Character, Grouplike) {
    let eps = Character::counit(h);
    let one = Grouplike::one(h);
    if involutive(h, &eps, &one) {
        return (eps, one);
    }
    let g = Grouplike::new(h, SparseVec::unit(1)).expect("second basis element is grouplike");
    assert!(involutive(h, &eps, &g));
    (eps, g)
}

fn cm_pair(h: &HopfAlgebraData) -> (Character, Grouplike) {
    pair(h, is_modular_pair_in_involution_cm)
}

fn kr_pair(h: &HopfAlgebraData) -> (Character, Grouplike) {
    pair(h, is_modular_pair_in_involution_kr)
}

fn first_failure(r: &AxiomReport) -> Option<String> {
    r.first_failure().map(|(name, n, w)| format!("{name} in degree {n}: {w}"))
}

fn sign_character(h: &HopfAlgebraData) -> Option<Character> {
    find_characters(h).items.into_iter().find(|c| c.values.contains(&q(-1)))
}

fn c1_axiom_suites() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for b in builtins() {
        let h = &b.h;
        let (cd, cs) = cm_pair(h);
        let (kd, ks) = kr_pair(h);
        let mut modules: Vec<(&str, Result<ParaCyclicModule, String>)> = vec![
            ("A♮", Ok(algebra_cyclic_module(&h.algebra))),
            ("CM", cm_cocyclic(h, &cd, &cs).map_err(|e| e.to_string())),
            ("KR", kr_cyclic(h, &kd, &ks).map_err(|e| e.to_string())),
        ];
        let t = HopfTriple::hopf(h, &kd, &ks);
        modules.push(("triple", t.matched_in_involution().and_then(|_| coinvariant_subcomplex(&t, 4).map_err(|e| e.to_string()))));
        let ct = HopfCotriple::hopf(h, &cd, &cs);
        modules.push(("cotriple", ct.comatched_in_involution().and_then(|_| cotriple_cocyclic(&ct, 4).map_err(|e| e.to_string()))));
        for (name, x) in modules {
            checked += 1;
            match x {
                Err(e) => failures.push(format!("{} {name}: {e}", b.name)),
                Ok(x) => {
                    if let Some(f) = first_failure(&check_cyclic_axioms(&x, 4)) {
                        failures.push(format!("{} {name}: {f}", b.name));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(300);
    let detail = if failures.is_empty() {
        format!("{checked} modules, all identities exact through degree 4, {:.1}s (limit 300s)", elapsed.as_secs_f64())
    } else {
        format!("{}; {:.1}s", failures.join("; "), elapsed.as_secs_f64())
    };
    Outcome::verdict(failures.is_empty() && in_time, detail)
}

fn c2_haar_triviality() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for b in builtins().into_iter().take(3) {
        let h = &b.h;
        let p = haar_periodic(h, &Character::counit(h), &Grouplike::one(h), 4).expect("(ε, 1) is in involution");
        let good = p[0].stabilized && p[0].dim == Some(1) && p[1].stabilized && p[1].dim == Some(0);
        ok &= good;
        parts.push(format!("{} even={:?} odd={:?}", b.name, p[0].dim, p[1].dim));
    }
    Outcome::verdict(ok, parts.join(", "))
}

fn c3_group_decomposition() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
        let h = group_algebra(&g);
        let mut chars = vec![("ε", Character::counit(&h))];
        if let Some(s) = sign_character(&h) {
            chars.push(("sign", s));
        }
        for (name, d) in chars {
            let r = cocommutative_decomposition_check(&g, &d, 4).expect("applicable");
            ok &= r.holds();
            parts.push(format!("|G|={} {name}: HC {:?} vs ⊕H {:?}", g.order(), r.left, r.right));
        }
    }
    Outcome::verdict(ok, parts.join("; "))
}

fn c4_commutative_periodic() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    // HP is read off the top two degrees of each parity; for k^S3 degrees 0..3 already
    // show both parities stabilized.
    for (name, h, n) in [
        ("k^Z/2", function_algebra(&FiniteGroup::cyclic(2)), 4),
        ("k^S3", function_algebra(&FiniteGroup::symmetric3()), 3),
    ] {
        let r = commutative_decomposition_check(&h, n).expect("commutative");
        ok &= r.holds();
        parts.push(format!("{name} (N={n}): HP ({:?}, {:?}) vs parity sums {:?}", r.hp[0].dim, r.hp[1].dim, r.parity_sums));
    }
    Outcome::verdict(ok, parts.join("; "))
}

fn c5_quantum_sl2() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut structural = true;
    let mut recorded = true;
    let mut expected_tor = true;
    for v in [2, 3] {
        let res = Resolution::new(Uq::new(q(v)).expect("q is not a root of unity"), Reading::Corrected);
        let dd = res.square_zero_failure().is_none();
        let hom = homotopy_check(&res, &SweepBounds::default());
        let tor = collapsed_tor(&res, 3).dims;
        let inference = hc_inference(&tor, 4);
        structural &= dd && hom.holds();
        recorded &= tor == [1, 0, 0, 1] && inference.is_err();
        expected_tor &= tor == [1, 0, 0, 0] && inference.is_ok();
        parts.push(format!(
            "q={v}: d∘d=0 {dd}, homotopy {}/{} ok, Tor {tor:?} (expected [1, 0, 0, 0]), inference {}",
            hom.checked - hom.failures.len(),
            hom.checked,
            match &inference {
                Ok(r) => format!("{:?}", r.hc),
                Err(e) => format!("refused: {e}"),
            }
        ));
    }
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(600);
    parts.push(format!("{:.1}s (limit 600s)", elapsed.as_secs_f64()));
    // Tor = (k, 0, 0, 0) is unattainable: ranks 1, 3, 3, 1 force Euler characteristic 0.
    Outcome { pass: structural && in_time && expected_tor, detail: parts.join("; "), as_recorded: Some(structural && in_time && recorded) }
}

fn sign_action() -> ModuleAlgebraAction {
    let h = group_algebra(&FiniteGroup::cyclic(2));
    let a = FiniteAlgebra::truncated_polynomial(2);
    let flip = Mat::from_columns(2, vec![SparseVec::unit(0), SparseVec::single(1, q(-1))]);
    ModuleAlgebraAction::new(h, a, vec![Mat::identity(2), flip]).expect("valid module algebra")
}

fn c6_smash() -> Outcome {
    let act = sign_action();
    let iso = phi_psi_isomorphism(&act, 3).expect("S invertible");
    let ez = ez_dimension_compare(&act, 3).expect("cylindrical");
    let detail = format!(
        "φψ=ψφ=id {}, φ cyclic {}; HC(Tot) {:?} vs HC(A#H) {:?}",
        iso.inverse_failure.is_none(),
        first_failure(&iso.morphism).unwrap_or_else(|| "true".into()),
        ez.left,
        ez.right
    );
    Outcome::verdict(iso.holds() && ez.holds(), detail)
}

fn c7_extended() -> Outcome {
    let e = groupoid_extended_hopf(&FiniteGroupoid::pair(2)).expect("groupoid algebra");
    let r = hc_parity_check(&e, 3).expect("Haar system exists");
    let ok = r.hc == [2, 0, 2, 0] && r.expected_even == 2 && e.alpha_beta_kernel_dim() == 2;
    Outcome::verdict(ok, format!("HC {:?}, dim ker(α−β) = {}", r.hc, r.expected_even))
}

fn c8_invariant() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for b in builtins() {
        if !matches!(b.name, "kZ/2" | "kZ/3" | "H4") {
            continue;
        }
        let (kd, ks) = kr_pair(&b.h);
        let r = kr_triple_compare(&b.h, &kd, &ks, 3).expect("involutive pair");
        let (cd, cs) = cm_pair(&b.h);
        let c = cm_cotriple_compare(&b.h, &cd, &cs, 3).expect("involutive pair");
        ok &= r.holds() && c.holds();
        parts.push(format!("{}: triple≅KR {}, cotriple≅CM {}", b.name, r.holds(), c.holds()));
    }
    let h = group_algebra(&FiniteGroup::cyclic(2));
    let m = morita_compare(&HopfTriple::hopf(&h, &Character::counit(&h), &Grouplike::one(&h)), 2, 2).expect("applicable");
    ok &= m.holds();
    parts.push(format!("Morita k=2: {:?} vs {:?}", m.left, m.right));
    Outcome::verdict(ok, parts.join("; "))
}

fn diag_derivation(a: &FiniteAlgebra, d: &[i64]) -> Mat {
    let k = d.len();
    let u = SparseVec::from_pairs(d.iter().enumerate().map(|(i, &x)| (i * k + i, q(x))));
    a.left_mul_matrix(&u).sub(&a.right_mul_matrix(&u))
}

fn coboundary(g: &FiniteGroup, f: &[Q]) -> Vec<Q> {
    let k = g.order();
    (0..k * k).map(|i| &(&f[i % k] - &f[g.mul(i / k, i % k)]) + &f[i / k]).collect()
}

fn c9_cocycles() -> Outcome {
    let m3 = FiniteAlgebra::matrix_algebra(3);
    let tr: Vec<Q> = (0..9).map(|i| if i % 4 == 0 { q(1) } else { q(0) }).collect();
    let (d1, d2) = (diag_derivation(&m3, &[1, 2, 0]), diag_derivation(&m3, &[0, 1, 5]));
    let connes = connes_2cocycle(&m3, &d1, &d2, &tr).expect("commuting derivations, trace");
    let connes_ok = connes.holds() && !connes.cochain.is_zero();
    let m2 = FiniteAlgebra::matrix_algebra(2);
    let noncommuting = connes_2cocycle(&m2, &diag_derivation(&m2, &[1, 0]), &{
        let u = SparseVec::unit(1);
        m2.left_mul_matrix(&u).sub(&m2.right_mul_matrix(&u))
    }, &[q(1), q(0), q(0), q(1)]);
    let neg_connes = matches!(noncommuting, Err(HopfCycError::DerivationsDoNotCommute));

    let klein = FiniteGroup::klein();
    let c = coboundary(&klein, &[q(0), q(3), q(-2), q(7)]);
    let r = group_cocycle_to_cyclic(&klein, 2, &c).expect("a coboundary is a cocycle");
    let mut broken = c.clone();
    broken[5] += q(1);
    let neg_group = matches!(group_cocycle_to_cyclic(&klein, 2, &broken), Err(HopfCycError::NotACocycle(_)));

    let group_ok = r.holds();
    let recorded = r.coboundary_witness.is_none() && r.cyclic_witness == Some((vec![0, 1, 1], q(-6)));
    let structural = connes_ok && neg_connes && neg_group;
    let detail = format!(
        "M3 cocycle bφ=0 and cyclic {connes_ok}; non-commuting control rejected {neg_connes}; \
         Klein coboundary of f=(0,3,-2,7): bφ=0 {}, cyclicity {}; broken cochain rejected {neg_group}",
        r.coboundary_witness.is_none(),
        match &r.cyclic_witness {
            None => "holds".to_string(),
            Some((t, v)) => format!("fails at {t:?} by {}", fmt_q(v)),
        }
    );
    Outcome { pass: structural && group_ok, detail, as_recorded: Some(structural && recorded) }
}

fn c10_lambda_vs_bicomplex() -> Outcome {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for b in builtins() {
        let h = &b.h;
        let (cd, cs) = cm_pair(h);
        let (kd, ks) = kr_pair(h);
        let modules = [
            ("A♮", algebra_cyclic_module(&h.algebra)),
            ("CM", cm_cocyclic(h, &cd, &cs).expect("involutive")),
            ("KR", kr_cyclic(h, &kd, &ks).expect("involutive")),
        ];
        for (name, x) in modules {
            checked += 1;
            let (l, bi) = (cyclic_homology_lambda(&x, 3).dims, cyclic_homology_bicomplex(&x, 3).dims);
            if l != bi {
                mismatches.push(format!("{} {name}: λ {l:?} vs bicomplex {bi:?}", b.name));
            }
        }
    }
    let detail = if mismatches.is_empty() { format!("{checked} modules agree through degree 3") } else { mismatches.join("; ") };
    Outcome::verdict(mismatches.is_empty(), detail)
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored; `--list` must print nothing.
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suites", c1_axiom_suites),
        ("Haar triviality", c2_haar_triviality),
        ("group algebra decomposition", c3_group_decomposition),
        ("commutative HP parity sums", c4_commutative_periodic),
        ("U_q(sl2) resolution", c5_quantum_sl2),
        ("smash product", c6_smash),
        ("extended Hopf pair groupoid", c7_extended),
        ("invariant cyclic homology", c8_invariant),
        ("classical cocycles", c9_cocycles),
        ("λ vs bicomplex", c10_lambda_vs_bicomplex),
    ];
    let mut regressions = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {:>2} {name}: {} | {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        let expected = match o.as_recorded {
            None => o.pass,
            Some(recorded) => o.pass || recorded,
        };
        if !expected {
            regressions += 1;
            println!("    ^ unexpected: result differs from the recorded outcome");
        }
    }
    if regressions == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
