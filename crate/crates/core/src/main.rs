use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;

use chardeg::chartab::CharacterTable;
use chardeg::corpus::{parse_group_file, Catalogue, Entry};
use chardeg::export::{render_text, TableExport};
use chardeg::invariants::{acd, characters_mod, DegreeFilter, NormalMode, RationalAverage};
use chardeg::verify::{paper_check_suite, theorem_scan, Report, ScanMode};
use chardeg::{Error, Group, Perm};

#[derive(Parser)]
#[command(name = "chardeg", version, about = "Exact character tables and average character degrees")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table of a group file or catalogue entry.
    Table { group: String },
    /// Average character degree, optionally filtered and relative to a normal subgroup.
    #[command(group(ArgGroup::new("filter").args(["even", "div", "coprime"])))]
    #[command(group(ArgGroup::new("normal").args(["modulo", "rel"])))]
    Acd {
        group: String,
        #[arg(long)]
        even: bool,
        /// Degrees divisible by the prime P.
        #[arg(long, value_name = "P")]
        div: Option<u64>,
        /// Degrees coprime to the prime P.
        #[arg(long, value_name = "P")]
        coprime: Option<u64>,
        /// Characters of G/N; N given by generators separated by `;`.
        #[arg(long = "mod", value_name = "GENS")]
        modulo: Option<String>,
        /// Characters of G whose kernel does not contain N.
        #[arg(long, value_name = "GENS")]
        rel: Option<String>,
    },
    /// Run a named check suite.
    Verify {
        #[arg(value_parser = ["paper"])]
        suite: String,
    },
    /// Scan a corpus for violations: thmA, thmB, conj3p, question:P or cs.
    Scan {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long = "check", required = true)]
        checks: Vec<String>,
    },
}

enum Failure {
    Input(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn resolve(arg: &str) -> Result<Entry, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(e.to_string()))?;
        let spec = parse_group_file(&text)?;
        if spec.source.dependencies().is_empty() {
            let built = chardeg::corpus::build(&spec, &|n| Err(Error::UnknownGroup(n.into())))?;
            return Ok(Entry::new(spec, built));
        }
        return Ok(Catalogue::load_default()?.build_external(spec)?);
    }
    let cat = Catalogue::load_default()?;
    let e = cat.require(arg)?;
    Ok(Entry::new(
        e.spec.clone(),
        chardeg::corpus::Built {
            group: e.group.as_ref().clone(),
            central: e.central.clone(),
        },
    ))
}

fn parse_gens(text: &str, degree: usize) -> Result<Vec<Perm>, Failure> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Perm::parse_cycles(s, degree).map_err(Failure::Input))
        .collect()
}

#[derive(Serialize)]
struct AcdOutput {
    group: String,
    filter: String,
    normal: Option<String>,
    value: String,
    count: usize,
}

fn run_acd(
    entry: &Entry,
    filter: DegreeFilter,
    normal: Option<(NormalMode, &str)>,
    json: bool,
) -> Result<(), Failure> {
    let filter = filter.validated()?;
    let t: Arc<CharacterTable> = entry.table()?;
    let (avg, normal_desc) = match normal {
        None => (acd(&t, filter), None),
        Some((mode, gens)) => {
            let g = entry.group.as_ref();
            let n = Group::new(g.degree(), parse_gens(gens, g.degree())?)?;
            if !n.is_subgroup_of(g) {
                return Err(Error::NotMember.into());
            }
            if !n.is_normal_in(g) {
                return Err(Error::NotNormal.into());
            }
            if mode == NormalMode::Relative && n.is_trivial() {
                log::warn!("Irr(G|N) is empty for trivial N");
            }
            let chars = characters_mod(&t, &n, mode)?;
            let avg = RationalAverage::of(
                chars.iter().map(|c| c.degree()).filter(|&d| filter.accepts(d)),
            );
            let tag = match mode {
                NormalMode::Quotient => "mod",
                NormalMode::Relative => "rel",
            };
            (avg, Some(format!("{tag} order {}", n.order())))
        }
    };
    if json {
        let out = AcdOutput {
            group: entry.name().to_string(),
            filter: format!("{filter:?}"),
            normal: normal_desc,
            value: avg.to_string(),
            count: avg.count,
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("{avg}");
    }
    Ok(())
}

fn emit(report: &Report, json: bool) -> Result<(), Failure> {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Table { group } => {
            let e = resolve(&group)?;
            let t = e.table()?;
            if cli.json {
                println!("{}", TableExport::from_table(e.name(), &t).to_json());
            } else {
                print!("{}", render_text(e.name(), &t));
            }
            Ok(())
        }
        Command::Acd {
            group,
            even,
            div,
            coprime,
            modulo,
            rel,
        } => {
            let filter = match (even, div, coprime) {
                (true, _, _) => DegreeFilter::Even,
                (_, Some(p), _) => DegreeFilter::DivisibleBy(p),
                (_, _, Some(p)) => DegreeFilter::CoprimeTo(p),
                _ => DegreeFilter::All,
            };
            let normal = match (&modulo, &rel) {
                (Some(g), _) => Some((NormalMode::Quotient, g.as_str())),
                (_, Some(g)) => Some((NormalMode::Relative, g.as_str())),
                _ => None,
            };
            let e = resolve(&group)?;
            run_acd(&e, filter, normal, cli.json)
        }
        Command::Verify { .. } => {
            let cat = Catalogue::load_default()?;
            emit(&paper_check_suite(&cat)?, cli.json)
        }
        Command::Scan { corpus, checks } => {
            let dir = corpus.unwrap_or_else(Catalogue::default_dir);
            let cat = Catalogue::load(&dir)?;
            let modes = checks
                .iter()
                .map(|c| ScanMode::parse(c))
                .collect::<Result<Vec<_>, _>>()?;
            let mut failed = false;
            for m in modes {
                failed |= matches!(emit(&theorem_scan(&cat, m)?, cli.json), Err(Failure::Checks));
            }
            if failed {
                Err(Failure::Checks)
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
