//! qnorm: analyse quadratic normalisations given by their length-two table.
//!
//! Exit codes: 0 = analysis completed, 1 = an expected property was
//! violated (or a word could not be normalised), 2 = input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qnorm_core::analysis::{class_report, minimal_class};
use qnorm_core::catalog::{self, BuildParams, ClassSideExpect};
use qnorm_core::garside::{
    check_garside_characterisation, triangular_presentation, GarsideFragment,
};
use qnorm_core::normaliser::{normalize_with_budget, Strategy};
use qnorm_core::report::{self, Report, VerifySection};
use qnorm_core::rewriting::{
    classify, explore, extract_rules, verify_termination_bound,
};
use qnorm_core::analysis::SideClass;
use qnorm_core::{Error, QuadMap, Word};

#[derive(Parser)]
#[command(name = "qnorm", version, about = "quadratic normalisation analyser")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Path to a system-spec JSON file.
    file: Option<PathBuf>,
    /// Name of a built-in system (see `qnorm catalog list`).
    #[arg(long, conflicts_with = "file")]
    catalog: Option<String>,
    /// Family-size parameter for the parameterised catalog entries.
    #[arg(long)]
    n: Option<usize>,
    /// Maximum row length for the truncated plactic-row entry.
    #[arg(long)]
    row_len: Option<usize>,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Axioms, domino rule, neutrality, and left-weightedness.
    Check {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Exit with status 1 unless the class-(4,3) axioms hold.
        #[arg(long)]
        expect_axioms_43: bool,
    },
    /// Minimal class and requested p-classes.
    Class {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Additional p-class values to compute (repeatable).
        #[arg(long = "p")]
        ps: Vec<usize>,
        /// Alternation cap distinguishing slow from never.
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Normalise one word.
    Normalize {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Dot-separated word, e.g. a.b.c.
        #[arg(long)]
        word: String,
        #[arg(long, value_parser = parse_strategy, default_value = "delta")]
        strategy: Strategy,
        /// Step budget override for leftmost/exhaustive.
        #[arg(long)]
        budget: Option<usize>,
        /// Project the neutral letter out of the result.
        #[arg(long)]
        mod_e: bool,
    },
    /// Explore the rewrite graph of one word.
    Rewrite {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        word: String,
        /// Include the leftmost rewriting trace in the report.
        #[arg(long)]
        trace: bool,
        /// Write the explored graph as a tab-separated edge list.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Bound on breadth-first expansion rounds.
        #[arg(long, default_value_t = 4096)]
        max_steps: usize,
        /// Use the e-projected rule set.
        #[arg(long)]
        mod_e: bool,
    },
    /// Sweep all words up to a length bound for termination and bounds.
    Termination {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        /// Exit with status 1 if a cycle is found.
        #[arg(long)]
        expect_terminating: bool,
        /// Use the e-projected rule set.
        #[arg(long)]
        mod_e: bool,
    },
    /// Garside characterisation checks and triangular presentations.
    Garside {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Fragment product table (JSON) to cross-validate against.
        #[arg(long)]
        fragment: Option<PathBuf>,
        /// Also emit the triangular presentation.
        #[arg(long)]
        triangular: bool,
        /// Degree bound for the cancellativity falsification search.
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Re-check a catalog entry's expected facts; exit 1 on any violation.
    Verify {
        /// Entry name, or --all for the whole catalog.
        #[arg(long, conflicts_with = "all")]
        catalog: Option<String>,
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the built-in system names.
    List,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    match s {
        "delta" => Ok(Strategy::Delta),
        "leftmost" => Ok(Strategy::Leftmost),
        "exhaustive" => Ok(Strategy::Exhaustive),
        _ => Err(format!("unknown strategy `{s}`")),
    }
}

struct LoadedSystem {
    source: String,
    map: QuadMap,
    fragment: Option<GarsideFragment>,
}

impl SystemArgs {
    fn load(&self) -> Result<LoadedSystem, Error> {
        match (&self.file, &self.catalog) {
            (Some(path), None) => {
                let bytes = std::fs::read(path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let map = qnorm_core::spec_file::parse_spec(&bytes)?;
                Ok(LoadedSystem {
                    source: path.display().to_string(),
                    map,
                    fragment: None,
                })
            }
            (None, Some(name)) => {
                let built = catalog::build(
                    name,
                    &BuildParams {
                        n: self.n,
                        row_len: self.row_len,
                    },
                )?;
                Ok(LoadedSystem {
                    source: built.name,
                    map: built.map,
                    fragment: built.fragment,
                })
            }
            _ => Err(Error::Parse(
                "provide either a spec file or --catalog NAME".into(),
            )),
        }
    }
}

fn parse_word(map: &QuadMap, dotted: &str) -> Result<Word, Error> {
    map.alphabet().parse_word(dotted)
}

/// Input-shaped errors exit 2; property/diagnostic failures exit 1.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::EmptyAlphabet
        | Error::DuplicateLetter(_)
        | Error::UnknownLetter(_)
        | Error::NoNeutral
        | Error::NeutralNotVerified(_)
        | Error::OutOfRange { .. }
        | Error::FactorOutOfRange { .. }
        | Error::InvalidParameter(_)
        | Error::UnknownCatalogEntry(_)
        | Error::NotEFree(_)
        | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            system,
            output,
            expect_axioms_43,
        } => {
            let sys = system.load()?;
            let analysis = class_report(&sys.map, &[], 64, 1);
            let mut rep = Report::new(&sys.source, &sys.map);
            rep.check = Some(report::check_section(&sys.map, &analysis));
            emit(&rep, output.json);
            if expect_axioms_43 && !analysis.axioms_43 {
                return Ok(1);
            }
            Ok(0)
        }
        Command::Class {
            system,
            output,
            ps,
            cap,
        } => {
            let sys = system.load()?;
            let analysis = class_report(&sys.map, &ps, cap, 1);
            let mut rep = Report::new(&sys.source, &sys.map);
            rep.check = Some(report::check_section(&sys.map, &analysis));
            rep.class = Some(report::class_section(&sys.map, &analysis));
            emit(&rep, output.json);
            Ok(0)
        }
        Command::Normalize {
            system,
            output,
            word,
            strategy,
            budget,
            mod_e,
        } => {
            let sys = system.load()?;
            let w = parse_word(&sys.map, &word)?;
            let result = if mod_e {
                let nf = normalize_with_budget(&sys.map, &w, strategy, budget)?;
                qnorm_core::words::pad_projection(&nf, sys.map.alphabet())?
            } else {
                normalize_with_budget(&sys.map, &w, strategy, budget)?
            };
            let mut rep = Report::new(&sys.source, &sys.map);
            rep.normalize = Some(report::NormalizeSection {
                input: sys.map.alphabet().render(&w),
                strategy: format!("{strategy:?}").to_lowercase(),
                output: sys.map.alphabet().render(&result),
            });
            emit(&rep, output.json);
            Ok(0)
        }
        Command::Rewrite {
            system,
            output,
            word,
            trace,
            graph,
            max_steps,
            mod_e,
        } => {
            let sys = system.load()?;
            let w = parse_word(&sys.map, &word)?;
            let rules = extract_rules(&sys.map, mod_e)?;
            let g = explore(&rules, &w, max_steps);
            if let Some(path) = graph {
                std::fs::write(&path, g.export_edge_list(sys.map.alphabet()))
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            let trace_words = trace.then(|| leftmost_trace(&rules, &w, max_steps));
            let mut rep = Report::new(&sys.source, &sys.map);
            rep.rewrite = Some(report::rewrite_section(&sys.map, &g, trace_words));
            emit(&rep, output.json);
            Ok(0)
        }
        Command::Termination {
            system,
            output,
            max_length,
            expect_terminating,
            mod_e,
        } => {
            let sys = system.load()?;
            let rules = extract_rules(&sys.map, mod_e)?;
            let class = minimal_class(&sys.map, 64)
                .ok()
                .and_then(|v| v.as_finite());
            let verdicts: Vec<_> = (2..=max_length)
                .map(|p| {
                    report::termination_verdict(&verify_termination_bound(
                        &rules, class, p,
                    ))
                })
                .collect();
            let summary = classify(&rules, max_length);
            let terminating = summary.terminating;
            let mut rep = Report::new(&sys.source, &sys.map);
            rep.termination = Some(report::TerminationSection {
                max_length,
                verdicts,
                classification: report::classification_info(&summary),
            });
            emit(&rep, output.json);
            if expect_terminating && !terminating {
                return Ok(1);
            }
            Ok(0)
        }
        Command::Garside {
            system,
            output,
            fragment,
            triangular,
            bound,
        } => {
            let sys = system.load()?;
            let external = match &fragment {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    Some(GarsideFragment::from_json(&text)?)
                }
                None => None,
            };
            let frag = external.as_ref().or(sys.fragment.as_ref());
            let verdict = check_garside_characterisation(&sys.map, frag, bound)?;
            let tri = if triangular {
                Some(triangular_presentation(&sys.map)?)
            } else {
                None
            };
            let mut rep = Report::new(&sys.source, &sys.map);
            rep.garside = Some(report::garside_section(&sys.map, &verdict, tri.as_ref()));
            emit(&rep, output.json);
            Ok(0)
        }
        Command::Catalog { command } => match command {
            CatalogCommand::List => {
                for name in catalog::NAMES {
                    println!("{name}");
                }
                Ok(0)
            }
        },
        Command::Verify {
            catalog: name,
            all,
            output,
        } => {
            let names: Vec<&str> = if all {
                catalog::NAMES.to_vec()
            } else {
                match &name {
                    Some(n) => vec![n.as_str()],
                    None => {
                        return Err(Error::Parse(
                            "provide --catalog NAME or --all".into(),
                        ))
                    }
                }
            };
            let mut checked = Vec::new();
            let mut violations = Vec::new();
            for n in names {
                let built = catalog::build(n, &BuildParams::default())?;
                verify_entry(&built, &mut checked, &mut violations);
            }
            let mut rep = Report {
                system: report::SystemInfo {
                    source: "catalog verification".into(),
                    generators: Vec::new(),
                    neutral: None,
                },
                check: None,
                class: None,
                normalize: None,
                rewrite: None,
                termination: None,
                garside: None,
                verify: None,
            };
            rep.verify = Some(VerifySection {
                checked,
                violations: violations.clone(),
            });
            emit(&rep, output.json);
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
    }
}

fn leftmost_trace(
    rules: &qnorm_core::rewriting::RuleSet,
    start: &Word,
    max_steps: usize,
) -> Vec<Word> {
    let mut out = vec![start.clone()];
    let mut cur = start.clone();
    for _ in 0..max_steps {
        let next = (0..cur.len().saturating_sub(1))
            .find_map(|i0| rules.rewrite_at(&cur, i0));
        match next {
            Some(w) if !out.contains(&w) => {
                out.push(w.clone());
                cur = w;
            }
            _ => break,
        }
    }
    out
}

fn verify_entry(built: &catalog::Built, checked: &mut Vec<String>, violations: &mut Vec<String>) {
    use qnorm_core::analysis::{check_axioms_43, check_domino};
    let map = &built.map;
    let e = &built.expected;
    let mut fact = |label: String, ok: bool, witness: String| {
        checked.push(format!("{}: {label}", built.name));
        if !ok {
            violations.push(format!("{}: {label}: {witness}", built.name));
        }
    };
    if let Some(ax) = e.axioms_43 {
        let got = check_axioms_43(map);
        fact(format!("axioms_43 = {ax}"), got == ax, format!("got {got}"));
    }
    if let Some(dom) = e.domino {
        let got = check_domino(map);
        fact(format!("domino = {dom}"), got == dom, format!("got {got}"));
    }
    if let Some((l, r)) = e.minimal_class {
        match minimal_class(map, 64) {
            Ok(v) => {
                let side_ok = |expect: ClassSideExpect, got: &SideClass| match (expect, got) {
                    (ClassSideExpect::Finite(c), SideClass::Finite(g)) => c == *g,
                    (ClassSideExpect::NonNormalising, SideClass::NonNormalising) => true,
                    _ => false,
                };
                let witness = v
                    .left
                    .witness
                    .as_ref()
                    .map(|w| map.alphabet().render(w))
                    .unwrap_or_default();
                fact(
                    "minimal class".into(),
                    side_ok(l, &v.left.class) && side_ok(r, &v.right.class),
                    format!("got {:?}/{:?}, witness {witness}", v.left.class, v.right.class),
                );
            }
            Err(err) => fact("minimal class".into(), false, err.to_string()),
        }
    }
    if let Some(count) = e.rule_count {
        let mod_e = map.alphabet().neutral().is_some();
        match extract_rules(map, mod_e) {
            Ok(rules) => fact(
                format!("rule count = {count}"),
                rules.rules().len() == count,
                format!("got {}", rules.rules().len()),
            ),
            Err(err) => fact(format!("rule count = {count}"), false, err.to_string()),
        }
    }
    if let Some(simples) = e.fragment_simples {
        let got = built.fragment.as_ref().map(|f| f.simple_count());
        fact(
            format!("fragment simples = {simples}"),
            got == Some(simples),
            format!("got {got:?}"),
        );
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
