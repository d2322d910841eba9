use hopfhom::cyclicfw::{algebra_cyclic_module, coalgebra_cocyclic_module, diagonal, ParaCyclicModule};
use hopfhom::extalg::{extended_cocyclic, groupoid_extended_hopf};
use hopfhom::homengine::{cyclic_homology_lambda, hochschild_homology, periodic_estimate, ParityEntry};
use hopfhom::hopfcyc::{cm_cocyclic, kr_cyclic};
use hopfhom::invariant::{coinvariant_subcomplex, cotriple_cocyclic, HopfCotriple, HopfTriple};
use hopfhom::smash::cylindrical_smash;

use crate::cache::{Cache, Lookup, Payload};
use crate::error::CliError;
use crate::report::{periodic_entries, Degree, Report};
use crate::spec::{resolve_delta, resolve_sigma, Input};

pub const CONSTRUCTIONS: [&str; 8] = ["cm", "kr", "algebra", "coalgebra", "extended", "triple", "cotriple", "smash-diagonal"];

pub struct Request {
    pub theory: String,
    pub construction: String,
    pub delta: String,
    pub sigma: String,
    pub max_degree: Option<usize>,
}

pub fn default_cutoff(construction: &str) -> usize {
    match construction {
        "cm" | "kr" | "algebra" | "coalgebra" => 4,
        _ => 3,
    }
}

fn uses_pair(construction: &str) -> bool {
    matches!(construction, "cm" | "kr" | "triple" | "cotriple")
}

fn inapplicable(e: impl ToString) -> CliError {
    CliError::Inapplicable(e.to_string())
}

fn build(input: &Input, req: &Request, n: usize) -> Result<ParaCyclicModule, CliError> {
    let check = n.min(3);
    let incompatible =
        || CliError::IncompatibleConstruction { construction: req.construction.clone(), kind: input.kind.clone() };
    if req.construction == "extended" {
        let g = input.groupoid().map_err(|_| incompatible())?;
        let e = groupoid_extended_hopf(g).map_err(inapplicable)?;
        return extended_cocyclic(&e, n.min(2)).map_err(inapplicable);
    }
    let h = input.hopf().map_err(|_| incompatible())?;
    let pair = || -> Result<_, CliError> { Ok((resolve_delta(h, &req.delta)?, resolve_sigma(h, &req.sigma)?)) };
    match req.construction.as_str() {
        "cm" => {
            let (d, s) = pair()?;
            cm_cocyclic(h, &d, &s).map_err(inapplicable)
        }
        "kr" => {
            let (d, s) = pair()?;
            kr_cyclic(h, &d, &s).map_err(inapplicable)
        }
        "algebra" => Ok(algebra_cyclic_module(&h.algebra)),
        "coalgebra" => Ok(coalgebra_cocyclic_module(&h.coalgebra)),
        "triple" => {
            let (d, s) = pair()?;
            let t = HopfTriple::hopf(h, &d, &s);
            t.matched_in_involution().map_err(inapplicable)?;
            coinvariant_subcomplex(&t, check).map_err(inapplicable)
        }
        "cotriple" => {
            let (d, s) = pair()?;
            let ct = HopfCotriple::hopf(h, &d, &s);
            ct.comatched_in_involution().map_err(inapplicable)?;
            cotriple_cocyclic(&ct, check).map_err(inapplicable)
        }
        "smash-diagonal" => {
            let act = input.action()?;
            let cyl = cylindrical_smash(&act).map_err(inapplicable)?;
            diagonal(cyl, n.min(2)).map_err(inapplicable)
        }
        other => Err(CliError::Usage(format!("unknown construction {other}; expected one of {}", CONSTRUCTIONS.join(", ")))),
    }
}

fn compute(input: &Input, req: &Request, n: usize) -> Result<Payload, CliError> {
    let x = build(input, req, n)?;
    Ok(match req.theory.as_str() {
        "hh" => Payload { dims: hochschild_homology(&x, n).dims, periodic: None },
        "hc" => Payload { dims: cyclic_homology_lambda(&x, n).dims, periodic: None },
        "hp" => {
            let hc = cyclic_homology_lambda(&x, n);
            let p = periodic_estimate(&hc);
            Payload { dims: hc.dims, periodic: Some(p.iter().map(|e| (e.dim, e.stabilized)).collect()) }
        }
        other => return Err(CliError::Usage(format!("unknown theory {other}; expected hh, hc or hp"))),
    })
}

pub fn cache_key(input: &Input, req: &Request, n: usize) -> String {
    let (d, s) = if uses_pair(&req.construction) { (req.delta.as_str(), req.sigma.as_str()) } else { ("-", "-") };
    format!("v1|{}|{}|{}|delta={d}|sigma={s}|n={n}", input.hash, req.construction, req.theory)
}

pub fn run(input: &Input, req: &Request, cache: Option<&Cache>) -> Result<Report, CliError> {
    if !["hh", "hc", "hp"].contains(&req.theory.as_str()) {
        return Err(CliError::Usage(format!("unknown theory {}; expected hh, hc or hp", req.theory)));
    }
    if !CONSTRUCTIONS.contains(&req.construction.as_str()) {
        return Err(CliError::Usage(format!("unknown construction {}", req.construction)));
    }
    let n = req.max_degree.unwrap_or_else(|| default_cutoff(&req.construction));
    let key = cache_key(input, req, n);
    let payload = match cache.map(|c| (c, c.get(&key))) {
        Some((_, Lookup::Hit(p))) => p,
        lookup => {
            if let Some((_, Lookup::Corrupt(why))) = &lookup {
                eprintln!("warning: corrupt cache entry ({why}); recomputing");
            }
            let p = compute(input, req, n)?;
            if let Some((c, _)) = lookup {
                if let Err(e) = c.put(&key, &p) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
            p
        }
    };
    let mut report = Report {
        object_id: input.hash.clone(),
        command: "homology".into(),
        theory: Some(req.theory.clone()),
        ..Default::default()
    };
    report.parameters.insert("construction".into(), req.construction.clone());
    report.parameters.insert("cutoff".into(), n.to_string());
    if uses_pair(&req.construction) {
        report.parameters.insert("delta".into(), req.delta.clone());
        report.parameters.insert("sigma".into(), req.sigma.clone());
    }
    report.degrees = payload.dims.iter().enumerate().map(|(n, &dim)| Degree { n, dim }).collect();
    if let Some(p) = &payload.periodic {
        let entries: Vec<ParityEntry> = p.iter().map(|&(dim, stabilized)| ParityEntry { dim, stabilized }).collect();
        report.periodic = periodic_entries(&[entries[0].clone(), entries[1].clone()]);
    }
    Ok(report)
}
