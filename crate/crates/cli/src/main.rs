//! `netgram`: validate networks and homomorphisms, run the definiteness
//! checkers, transform homomorphisms and run the law suite.
//!
//! Exit status is 0 when every check passes, 1 when a report or law has
//! failures, and 2 on usage, parse, resolution or enumeration-cap errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use netgram::format::{resolve_hom, serialize_bundle, Document};
use netgram::laws::{run_law_suite_with, CheckerMutation, GenConfig, Sizes};
use netgram::relation::Relation;
use netgram::{
    check_definite, check_semidefinite, check_thm23_certificate, compose_homs, extract_subnetwork, induce_gluing,
    invert_hom, parse_document, restrict_hom, serialize_network, validate_homomorphism, validate_network, CheckOptions,
    DefinitenessReport, Element, Error, Homomorphism, Network, ViolationReport,
};

#[derive(Parser)]
#[command(name = "netgram", version, about = "Networks, homomorphisms and definiteness checks")]
struct Cli {
    /// Report rendering.
    #[arg(long, value_enum, default_value = "tabular", global = true)]
    format: Format,
    /// Cap for the brute-force enumerations (sub-relation oracle and (8a)).
    #[arg(long, env = "NETGRAM_MAX_ENUM", global = true)]
    max_enum: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tabular,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Axioms,
    SemiDefinite,
    Definite,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every network in a file, then run the requested checker.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "axioms")]
        level: Level,
        /// Also run the brute-force oracles and report disagreements.
        #[arg(long)]
        oracle: bool,
    },
    /// Homomorphism operations.
    Hom {
        #[command(subcommand)]
        op: HomOp,
    },
    /// Print the subnetwork generated by the named elements.
    Subnet {
        file: PathBuf,
        #[arg(required = false)]
        seed: Vec<String>,
    },
    /// Install the gluing induced by facet pairs `SUPER:SUB` and print the network.
    Induce {
        file: PathBuf,
        #[arg(required = false)]
        pairs: Vec<String>,
    },
    /// Run the law suite on generated instances.
    Laws {
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper bound on each sort (hooks get twice this).
        #[arg(long)]
        max_size: Option<usize>,
        /// Largest number of source copies of a target component.
        #[arg(long, default_value_t = 2)]
        fanout: usize,
        /// Weaken a checker on purpose; the suite should then fail.
        #[arg(long, value_enum, default_value = "none")]
        mutate: Mutate,
    },
    /// Check the hypotheses that guarantee a definite source.
    Certificate { file: PathBuf },
}

#[derive(Subcommand)]
enum HomOp {
    /// Validate every homomorphism in the files.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print `p ∘ q` (apply `q` first).
    Compose { p: PathBuf, q: PathBuf },
    /// Print the inverse of a bijective homomorphism.
    Invert { file: PathBuf },
    /// Print the restriction of a homomorphism to a subnetwork of its source.
    Restrict { file: PathBuf, sub: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mutate {
    None,
    #[value(name = "definite-without-4b")]
    DefiniteWithout4b,
    #[value(name = "certificate-without-b")]
    CertificateWithoutB,
}

/// A failure that maps to exit status 2.
struct Fatal(String);

impl From<Error> for Fatal {
    fn from(e: Error) -> Self {
        Fatal(e.to_string())
    }
}

type Outcome = Result<bool, Fatal>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = CheckOptions::default();
    if let Some(cap) = cli.max_enum {
        opts.oracle_cap = cap;
        opts.enum_cap = cap;
    }
    let result = match &cli.command {
        Command::Check { file, level, oracle } => {
            opts.with_oracle = *oracle;
            cmd_check(file, *level, &opts, cli.format)
        }
        Command::Hom { op } => cmd_hom(op, cli.format),
        Command::Subnet { file, seed } => cmd_subnet(file, seed),
        Command::Induce { file, pairs } => cmd_induce(file, pairs, cli.format),
        Command::Laws {
            cases,
            seed,
            max_size,
            fanout,
            mutate,
        } => cmd_laws(*cases, *seed, *max_size, *fanout, *mutate, &opts, cli.format),
        Command::Certificate { file } => cmd_certificate(file, &opts, cli.format),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fatal(msg)) => {
            eprintln!("netgram: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Fatal> {
    parse_document(&read(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn single_network(path: &Path) -> Result<Network, Fatal> {
    let doc = load(path)?;
    match doc.networks.len() {
        1 => Ok(doc.networks.into_iter().next().unwrap()),
        n => Err(Fatal(format!("{}: expected one network, found {n}", path.display()))),
    }
}

/// Loads hom documents; endpoint names not defined in any of the files are
/// looked up as `NAME.net` next to the file that mentions them.
fn load_homs(paths: &[&Path]) -> Result<Vec<Homomorphism>, Fatal> {
    let mut doc = Document::default();
    let mut dirs = Vec::new();
    for path in paths {
        let d = load(path)?;
        dirs.extend(
            d.homs
                .iter()
                .map(|_| path.parent().unwrap_or(Path::new(".")).to_path_buf()),
        );
        doc.merge(d).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    }
    let mut homs = Vec::new();
    for (spec, dir) in doc.homs.iter().zip(dirs) {
        for name in [&spec.source, &spec.target] {
            if doc.network(name).is_none() {
                let candidate = dir.join(format!("{name}.net"));
                if candidate.exists() {
                    let net = single_network(&candidate)?;
                    if net.name() != name {
                        return Err(Fatal(format!(
                            "{} defines {}, not {name}",
                            candidate.display(),
                            net.name()
                        )));
                    }
                    doc.networks.push(net);
                }
            }
        }
        let nets: Vec<Arc<Network>> = doc.networks.iter().cloned().map(Arc::new).collect();
        let resolver = |name: &str| nets.iter().find(|n| n.name() == name).cloned();
        homs.push(resolve_hom(spec, &resolver)?);
    }
    if homs.is_empty() {
        return Err(Fatal("no hom block found".into()));
    }
    Ok(homs)
}

fn single_hom(path: &Path) -> Result<Homomorphism, Fatal> {
    let mut homs = load_homs(&[path])?;
    match homs.len() {
        1 => Ok(homs.pop().unwrap()),
        n => Err(Fatal(format!("{}: expected one hom block, found {n}", path.display()))),
    }
}

fn render(report: &ViolationReport, format: Format) -> String {
    match format {
        Format::Tabular => report.to_tabular(),
        Format::Structured => report.to_json() + "\n",
    }
}

fn cmd_check(path: &Path, level: Level, opts: &CheckOptions, format: Format) -> Outcome {
    let doc = load(path)?;
    if doc.networks.is_empty() {
        return Err(Fatal(format!("{}: no network block found", path.display())));
    }
    let mut ok = true;
    let mut infeasible = Vec::new();
    let mut entries = Vec::new();
    for net in &doc.networks {
        let mut report = validate_network(net);
        let mut undecided = Vec::new();
        if report.is_empty() {
            let checked: Option<DefinitenessReport> = match level {
                Level::Axioms => None,
                Level::SemiDefinite => Some(check_semidefinite(net, opts)?),
                Level::Definite => Some(check_definite(net, opts)?),
            };
            if let Some(d) = checked {
                report = d.violations;
                undecided = d.infeasible;
            }
        }
        ok &= report.is_empty();
        for i in &undecided {
            infeasible.push(format!(
                "{}: {} undecided, {} relevant elements exceed the cap of {}",
                net.name(),
                i.code,
                i.size,
                i.cap
            ));
        }
        match format {
            Format::Tabular => {
                if doc.networks.len() > 1 {
                    println!("# network {}", net.name());
                }
                print!("{}", report.to_tabular());
            }
            Format::Structured => entries.push(json!({
                "network": net.name(),
                "violations": report,
                "infeasible": undecided,
            })),
        }
    }
    if let Format::Structured = format {
        println!("{}", serde_json::to_string_pretty(&entries).expect("serializable"));
    }
    if !infeasible.is_empty() {
        return Err(Fatal(infeasible.join("\n")));
    }
    Ok(ok)
}

fn print_homs(homs: &[&Homomorphism]) {
    let mut nets: Vec<&Network> = Vec::new();
    for h in homs {
        nets.push(h.source());
        nets.push(h.target());
    }
    print!("{}", serialize_bundle(&nets, homs));
}

fn require_valid(h: &Homomorphism, format: Format) -> Result<(), Fatal> {
    let r = validate_homomorphism(h);
    if r.is_empty() {
        Ok(())
    } else {
        eprint!("{}", render(&r, format));
        Err(Fatal(format!("{} is not a valid homomorphism", h.name())))
    }
}

fn cmd_hom(op: &HomOp, format: Format) -> Outcome {
    match op {
        HomOp::Check { files } => {
            let paths: Vec<&Path> = files.iter().map(PathBuf::as_path).collect();
            let homs = load_homs(&paths)?;
            let mut ok = true;
            let mut entries = Vec::new();
            for h in &homs {
                let r = validate_homomorphism(h);
                ok &= r.is_empty();
                match format {
                    Format::Tabular => {
                        if homs.len() > 1 {
                            println!("# hom {}", h.name());
                        }
                        print!("{}", r.to_tabular());
                    }
                    Format::Structured => entries.push(json!({ "hom": h.name(), "violations": r })),
                }
            }
            if let Format::Structured = format {
                println!("{}", serde_json::to_string_pretty(&entries).expect("serializable"));
            }
            Ok(ok)
        }
        HomOp::Compose { p, q } => {
            let homs = load_homs(&[p.as_path(), q.as_path()])?;
            let (hp, hq) = match homs.as_slice() {
                [hp, hq] => (hp, hq),
                _ => return Err(Fatal("compose expects one hom block in each file".into())),
            };
            require_valid(hp, format)?;
            require_valid(hq, format)?;
            let pq = compose_homs(hp, hq)?;
            print_homs(&[&pq]);
            Ok(true)
        }
        HomOp::Invert { file } => {
            let f = single_hom(file)?;
            require_valid(&f, format)?;
            let g = invert_hom(&f)?;
            print_homs(&[&g]);
            Ok(true)
        }
        HomOp::Restrict { file, sub } => {
            let p = single_hom(file)?;
            require_valid(&p, format)?;
            let sub = single_network(sub)?;
            let r = restrict_hom(&p, &sub)?;
            print_homs(&[&r]);
            Ok(true)
        }
    }
}

fn lookup(net: &Network, name: &str) -> Result<Element, Fatal> {
    net.parts()
        .lookup(name)
        .ok_or_else(|| Fatal(format!("unknown element {name} in {}", net.name())))
}

fn cmd_subnet(path: &Path, seed: &[String]) -> Outcome {
    let net = single_network(path)?;
    let seed = seed.iter().map(|s| lookup(&net, s)).collect::<Result<Vec<_>, _>>()?;
    let sub = extract_subnetwork(&net, seed)?;
    print!("{}", serialize_network(&sub));
    Ok(true)
}

fn cmd_induce(path: &Path, pairs: &[String], format: Format) -> Outcome {
    let net = single_network(path)?;
    let mut seed = Vec::new();
    for p in pairs {
        let (x, y) = p
            .split_once(':')
            .ok_or_else(|| Fatal(format!("expected SUPER:SUB, found {p}")))?;
        seed.push((lookup(&net, x)?, lookup(&net, y)?));
    }
    let skeleton = net.with_glue(&Relation::empty(net.universe()));
    let seed = Relation::from_pairs(skeleton.universe(), seed).map_err(Error::from)?;
    let induced = skeleton.with_glue(&induce_gluing(&skeleton, &seed)?);
    print!("{}", serialize_network(&induced));
    let r = validate_network(&induced);
    if !r.is_empty() {
        eprint!("{}", render(&r, format));
    }
    Ok(r.is_empty())
}

fn cmd_laws(
    cases: usize,
    seed: u64,
    max_size: Option<usize>,
    fanout: usize,
    mutate: Mutate,
    opts: &CheckOptions,
    format: Format,
) -> Outcome {
    let mut cfg = GenConfig {
        fanout,
        ..GenConfig::default().with_cases(cases).with_seed(seed)
    };
    if let Some(n) = max_size {
        cfg.sizes = Sizes {
            hooks: 2 * n,
            ..Sizes::uniform(n)
        };
    }
    let mutation = match mutate {
        Mutate::None => CheckerMutation::None,
        Mutate::DefiniteWithout4b => CheckerMutation::DefiniteWithout4b,
        Mutate::CertificateWithoutB => CheckerMutation::CertificateWithoutB,
    };
    let results = run_law_suite_with(&cfg, opts, mutation);
    let ok = results.iter().all(|r| r.passed());
    match format {
        Format::Tabular => {
            println!("law\tcases\tqualifying\tglued\trate\tresult");
            for r in &results {
                let verdict = if r.passed() { "pass" } else { "FAIL" };
                println!(
                    "{}\t{}\t{}\t{}\t{:.2}\t{verdict}",
                    r.id,
                    r.cases,
                    r.qualifying,
                    r.glued,
                    r.rate()
                );
            }
            for r in &results {
                if r.gen_failures > 0 {
                    println!("\n# {}: generator gave up on {} cases", r.id, r.gen_failures);
                }
                if let Some(cx) = &r.counterexample {
                    println!(
                        "\n# {} counterexample, case {}: {}",
                        r.id,
                        cx.case,
                        cx.message.replace('\n', "\n# ")
                    );
                    print!("{}", cx.document);
                }
            }
        }
        Format::Structured => println!("{}", serde_json::to_string_pretty(&results).expect("serializable")),
    }
    Ok(ok)
}

fn cmd_certificate(path: &Path, opts: &CheckOptions, format: Format) -> Outcome {
    let p = single_hom(path)?;
    let report = match check_thm23_certificate(&p, opts) {
        Ok(r) => r,
        Err(Error::InvalidHomomorphism { report, .. }) => report,
        Err(e) => return Err(e.into()),
    };
    print!("{}", render(&report, format));
    if !report.is_empty() {
        return Ok(false);
    }
    let d = check_definite(p.source(), opts)?;
    match d.holds() {
        Some(true) => {
            println!("definite: confirmed");
            Ok(true)
        }
        Some(false) => {
            print!("{}", render(&d.violations, format));
            println!("definite: refuted");
            Ok(false)
        }
        None => Err(Fatal("definiteness of the source is undecided within the caps".into())),
    }
}
