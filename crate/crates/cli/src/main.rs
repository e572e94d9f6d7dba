use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use zgsep::analysis::{analyze, analyze_presentation, render_text, AnalysisOptions, PEEL_THRESHOLD};
use zgsep::catalog::catalog;
use zgsep::claims::verify_paper;
use zgsep::classify::{ClassifyConfig, DivisionCriterion};
use zgsep::presentation::{parse_spec, resolve_with, ResolveOptions};

#[derive(Parser)]
#[command(name = "zgsep", version, about = "Wedderburn decompositions and subgroup separability of integral unit groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose QG, classify its components and decide the verdict.
    Analyze {
        /// Group spec such as `Q8 x C7`, `sdp(3,8,2)` or `<a,b | a^4, b^2, b a b^-1 = a^-1>`.
        spec: Option<String>,
        /// Read a presentation file instead of a spec.
        #[arg(long, conflicts_with = "spec")]
        presentation: Option<PathBuf>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Check every reproduced claim and print a table.
    VerifyPaper {
        #[command(flatten)]
        flags: Flags,
    },
    /// List the bundled groups.
    Catalog {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 256)]
        max_order: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum Criterion {
    Paper,
    Local,
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 256)]
    max_order: usize,
    #[arg(long, value_enum, default_value = "off")]
    bianchi_extension: Switch,
    #[arg(long, value_enum, default_value = "local")]
    division_criterion: Criterion,
    #[arg(long, value_enum, default_value = "on")]
    oracle: Switch,
}

impl Flags {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            max_order: self.max_order,
            classify: ClassifyConfig {
                criterion: match self.division_criterion {
                    Criterion::Paper => DivisionCriterion::Paper,
                    Criterion::Local => DivisionCriterion::Local,
                },
                bianchi_extension: matches!(self.bianchi_extension, Switch::On),
                ..ClassifyConfig::default()
            },
            oracle: matches!(self.oracle, Switch::On),
        }
    }
}

fn fail(json_out: bool, message: String, remediation: &str) -> ExitCode {
    if json_out {
        println!("{}", json!({ "error": message, "remediation": remediation }));
    } else {
        eprintln!("error: {message}");
        eprintln!("hint: {remediation}");
    }
    ExitCode::from(2)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            spec,
            presentation,
            flags,
        } => {
            let opts = flags.options();
            let result = match (spec, presentation) {
                (Some(s), None) => analyze(&s, &opts),
                (None, Some(path)) => match std::fs::read_to_string(&path) {
                    Ok(text) => analyze_presentation(&text, &opts),
                    Err(e) => {
                        return fail(flags.json, format!("cannot read {}: {e}", path.display()), "check the file path")
                    }
                },
                _ => return fail(flags.json, "give a group spec or --presentation <file>".into(), "see `zgsep analyze --help`"),
            };
            match result {
                Ok(r) => {
                    if flags.json {
                        println!("{}", to_json(&r));
                    } else {
                        print!("{}", render_text(&r));
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(flags.json, e.to_string(), e.remediation()),
            }
        }
        Command::VerifyPaper { flags } => {
            let report = verify_paper(&flags.options());
            if flags.json {
                println!("{}", to_json(&report));
            } else {
                print!("{}", report.render_table());
            }
            if report.mismatches() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Catalog { json, max_order } => {
            let ropts = ResolveOptions {
                max_order,
                ..ResolveOptions::default()
            };
            let mut rows = Vec::new();
            for e in catalog() {
                let order = match parse_spec(&e.spec) {
                    Ok(s) => match s.order_hint() {
                        Some(n) if n > PEEL_THRESHOLD => Ok(n as usize),
                        _ => resolve_with(&s, &ropts).map(|g| g.order()),
                    },
                    Err(err) => Err(err.into()),
                };
                match order {
                    Ok(n) => rows.push((e, n)),
                    Err(err) => return fail(json, format!("{}: {err}", e.spec), err.remediation()),
                }
            }
            if json {
                let v: Vec<_> = rows
                    .iter()
                    .map(|(e, n)| {
                        json!({
                            "name": e.name,
                            "spec": e.spec,
                            "order": n,
                            "family": e.family,
                            "expected_decomposition": e.expected_decomposition,
                            "expected_verdict": e.expected_verdict,
                        })
                    })
                    .collect();
                println!("{}", to_json(&v));
            } else {
                println!("{:<14} {:<48} {:>6}  {:<22} expected QG", "name", "spec", "order", "expected verdict");
                for (e, n) in &rows {
                    let verdict = e.expected_verdict.as_ref().map(|v| v.value.to_string()).unwrap_or_default();
                    let dec = e.expected_decomposition.as_ref().map(|d| d.value.as_str()).unwrap_or("");
                    println!("{:<14} {:<48} {:>6}  {:<22} {dec}", e.name, e.spec, n, verdict);
                }
                println!("{} entries", rows.len());
            }
            ExitCode::SUCCESS
        }
    }
}
