mod cache;
mod checks;
mod error;
mod homology;
mod report;
mod spec;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopfhom::exactla::parse_q;
use hopfhom::extalg::groupoid_extended_hopf;
use hopfhom::qpbw::Reading;

use cache::Cache;
use error::CliError;
use report::{CheckEntry, Report};
use spec::{Input, Object};

#[derive(Parser)]
#[command(name = "hopfhom", version, about = "Exact Hopf-cyclic homology workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Corrected,
    Verbatim,
}

#[derive(Subcommand)]
enum Command {
    /// Run every structural validator for the input.
    Validate {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute HH, HC or HP of a construction.
    Homology {
        path: PathBuf,
        #[arg(long, default_value = "hc")]
        theory: String,
        #[arg(long)]
        construction: String,
        #[arg(long, default_value = "eps")]
        delta: String,
        #[arg(long, default_value = "1")]
        sigma: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the on-disk cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Run one named check; see list-checks.
    Check {
        id: String,
        path: Option<PathBuf>,
        #[arg(long, default_value = "eps")]
        delta: String,
        #[arg(long, default_value = "1")]
        sigma: String,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Deformation parameter for the U_q(sl2) checks.
        #[arg(long, default_value = "2")]
        q: String,
        /// Matrix size for the Morita check.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Comma-separated values of a normalized 2-cochain on G × G (index a·|G| + b).
        #[arg(long)]
        cochain: Option<String>,
        #[arg(long, value_enum, default_value = "corrected")]
        reading: ReadingArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the check catalog.
    ListChecks,
}

fn load(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    spec::parse(&text)
}

fn validate(path: &Path) -> Result<Report, CliError> {
    let mut report = Report { command: "validate".into(), ..Default::default() };
    let input = match load(path) {
        Err(CliError::Invalid { what, witness }) => {
            report.object_id = "invalid".into();
            report.checks.push(CheckEntry::fail(&what, witness));
            return Ok(report);
        }
        other => other?,
    };
    report.object_id = input.hash.clone();
    match &input.object {
        Object::Hopf(h) => {
            report.checks.push(CheckEntry::from_result("hopf-axioms", h.validate().map_err(|f| f.to_string())));
        }
        Object::Groupoid(g) => {
            report.checks.push(CheckEntry::pass("groupoid-axioms"));
            let e = groupoid_extended_hopf(g).and_then(|e| e.validate().map(|_| e));
            report.checks.push(CheckEntry::from_result("extended-hopf-axioms", e.map(|_| ()).map_err(|e| e.to_string())));
        }
    }
    if input.action.is_some() && !report.passed() {
        report.checks.push(CheckEntry::skipped("module-algebra-action", "Hopf algebra failed validation"));
    } else if input.action.is_some() {
        let r = input.action().map(|_| ()).map_err(|e| e.to_string());
        report.checks.push(CheckEntry::from_result("module-algebra-action", r));
    }
    Ok(report)
}

fn emit(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    let text = report.to_canonical_json();
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Validate { path, out } => {
            let r = validate(&path)?;
            emit(&r, out.as_deref())?;
            Ok(r.passed())
        }
        Command::Homology { path, theory, construction, delta, sigma, max_degree, out, no_cache } => {
            let input = load(&path)?;
            let req = homology::Request { theory, construction, delta, sigma, max_degree };
            let cache = (!no_cache).then(Cache::from_env);
            let r = homology::run(&input, &req, cache.as_ref())?;
            emit(&r, out.as_deref())?;
            Ok(true)
        }
        Command::Check { id, path, delta, sigma, max_degree, q, k, cochain, reading, out } => {
            let spec = checks::lookup(&id)?;
            let input = match (&path, spec.input) {
                (Some(p), _) => Some(load(p)?),
                (None, "none") => None,
                (None, _) => return Err(CliError::Usage(format!("{id} needs an input file"))),
            };
            let q = parse_q(&q).ok_or_else(|| CliError::Usage(format!("--q {q} is not a reduced rational")))?;
            let cochain = cochain
                .map(|s| s.split(',').map(parse_q).collect::<Option<Vec<_>>>())
                .map(|c| c.ok_or_else(|| CliError::Usage("--cochain: expected comma-separated rationals".into())))
                .transpose()?;
            let reading = match reading {
                ReadingArg::Corrected => Reading::Corrected,
                ReadingArg::Verbatim => Reading::Verbatim,
            };
            let params = checks::Params { delta, sigma, max_degree, q, k, cochain, reading };
            let r = checks::run(&id, input.as_ref(), &params)?;
            emit(&r, out.as_deref())?;
            Ok(r.passed())
        }
        Command::ListChecks => {
            for c in &checks::CATALOG {
                println!("{:<16} input={:<9} cutoff={}  {}", c.id, c.input, c.cutoff, c.summary);
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
