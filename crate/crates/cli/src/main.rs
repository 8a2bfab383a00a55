//! Command-line front door for the hypergraph decision machinery.
//!
//! Every command is a thin adapter over the library: it reads a hypergraph
//! document from `--in` (or stdin for `-`), calls the corresponding library
//! function, writes canonical artifacts to the requested files, and prints
//! a single JSON object on stdout. Exit codes: 0 success, 1 domain
//! rejection with a machine-readable diagnostic on stderr, 2 usage error.

use clap::{Parser, Subcommand};
use hyperminor as hm;
use serde_json::json;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hyperminor", version, about = "Hypergraph minor reduction and forbidden-minor certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of a hypergraph document.
    Validate {
        #[arg(long = "in")]
        input: String,
    },
    /// Normalize a hypergraph; optionally write the result and its trace.
    Normalize {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Reduce a hypergraph; optionally write the result and its trace.
    Reduce {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Decide which forbidden minor, if any, sits below the reduction.
    Classify {
        #[arg(long = "in")]
        input: String,
        #[arg(long = "emit-certificate")]
        emit_certificate: Option<PathBuf>,
        #[arg(long = "emit-reduced")]
        emit_reduced: Option<PathBuf>,
    },
    /// Budgeted search for a target minor below the input.
    MinorCheck {
        #[arg(long = "in")]
        input: String,
        /// g1, g2, g3, g4, or a path to a hypergraph document.
        #[arg(long)]
        target: String,
        /// Comma-separated caps: steps=10,sep=2,dec=2,frontier=200000.
        #[arg(long)]
        budget: Option<String>,
        #[arg(long = "emit-certificate")]
        emit_certificate: Option<PathBuf>,
    },
    /// Write every isomorphism class up to the given size into a directory.
    Enumerate {
        #[arg(long = "max-v")]
        max_v: usize,
        #[arg(long = "max-e")]
        max_e: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay a trace log against a start hypergraph.
    Replay {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a hypergraph, or the states along a trace, as Graphviz dot.
    ExportDot {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(input: &str) -> Result<String, String> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("reading {input}: {e}"))
    }
}

fn load(input: &str) -> Result<hm::Hypergraph, String> {
    hm::parse(&read_input(input)?).map_err(|e| e.to_string())
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Validate { input } => {
            let h = load(&input)?;
            let report = h.validate();
            let violations: Vec<_> = report
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "code": format!("{:?}", v.code),
                        "message": v.message,
                        "offending": v.offending,
                    })
                })
                .collect();
            println!("{}", json!({ "ok": report.ok, "violations": violations }));
            if report.ok {
                Ok(())
            } else {
                Err("validation failed".into())
            }
        }
        Command::Normalize { input, out, trace } => {
            let h = load(&input)?;
            let outcome = hm::normalize(&h);
            if let Some(t) = &trace {
                write_file(t, &hm::steps_to_log(&outcome.trace.steps))?;
            }
            emit(&out, &hm::serialize(&outcome.result))?;
            if out.is_some() {
                println!(
                    "{}",
                    json!({
                        "normal": true,
                        "steps": outcome.trace.len(),
                        "vertices": outcome.result.vertex_count(),
                        "edges": outcome.result.edge_count(),
                    })
                );
            }
            Ok(())
        }
        Command::Reduce { input, out, trace } => {
            let h = load(&input)?;
            let outcome = hm::reduce(&h);
            if let Some(t) = &trace {
                write_file(t, &hm::steps_to_log(&outcome.trace.steps))?;
            }
            emit(&out, &hm::serialize(&outcome.result))?;
            if out.is_some() {
                println!(
                    "{}",
                    json!({
                        "reduced": true,
                        "steps": outcome.trace.len(),
                        "vertices": outcome.result.vertex_count(),
                        "edges": outcome.result.edge_count(),
                    })
                );
            }
            Ok(())
        }
        Command::Classify {
            input,
            emit_certificate,
            emit_reduced,
        } => {
            let h = load(&input)?;
            let verdict = hm::classify(&h);
            let mut object = serde_json::Map::new();
            match &verdict.kind {
                hm::VerdictKind::NotExact { certificate } => {
                    object.insert("verdict".into(), "NotExact".into());
                    object.insert("index".into(), certificate.target_index.into());
                }
                hm::VerdictKind::NotNuclear {
                    certificate,
                    restricted,
                } => {
                    object.insert("verdict".into(), "NotNuclear".into());
                    object.insert("index".into(), certificate.target_index.into());
                    object.insert("restricted".into(), (*restricted).into());
                }
                hm::VerdictKind::UndirectedReduced { remark_ok } => {
                    object.insert("verdict".into(), "UndirectedReduced".into());
                    object.insert("remark_ok".into(), (*remark_ok).into());
                }
            }
            if let Some(path) = &emit_reduced {
                write_file(path, &hm::serialize(&verdict.reduced))?;
                object.insert("reduced_file".into(), path.display().to_string().into());
            }
            if let Some(path) = &emit_certificate {
                if let Some(cert) = verdict.certificate() {
                    write_file(path, &cert.to_log())?;
                    object.insert(
                        "certificate_file".into(),
                        path.display().to_string().into(),
                    );
                }
            }
            if !verdict.diagnostics.is_empty() {
                object.insert("diagnostics".into(), verdict.diagnostics.clone().into());
            }
            println!("{}", serde_json::Value::Object(object));
            Ok(())
        }
        Command::MinorCheck {
            input,
            target,
            budget,
            emit_certificate,
        } => {
            let h = load(&input)?;
            let budget = match budget {
                Some(text) => hm::parse_budget(&text).map_err(|e| e.to_string())?,
                None => hm::SearchBudget::default(),
            };
            let (target_name, target_h) = match target.as_str() {
                "g1" => ("g1".to_string(), hm::catalog_entry(1)),
                "g2" => ("g2".to_string(), hm::catalog_entry(2)),
                "g3" => ("g3".to_string(), hm::catalog_entry(3)),
                "g4" => ("g4".to_string(), hm::catalog_entry(4)),
                path => (path.to_string(), load(path)?),
            };
            match hm::minor_search(&h, &target_h, &budget) {
                Some(found) => {
                    if let Some(path) = &emit_certificate {
                        write_file(path, &hm::steps_to_log(&found.steps))?;
                    }
                    println!(
                        "{}",
                        json!({
                            "found": true,
                            "target": target_name,
                            "steps": found.steps.len(),
                        })
                    );
                }
                None => {
                    println!("{}", json!({ "found": false, "target": target_name }));
                }
            }
            Ok(())
        }
        Command::Enumerate { max_v, max_e, out } => {
            std::fs::create_dir_all(&out)
                .map_err(|e| format!("creating {}: {e}", out.display()))?;
            let mut count = 0usize;
            for h in hm::enumerate_hypergraphs(max_v, max_e, true) {
                count += 1;
                let path = out.join(format!("h{count:06}.hg"));
                write_file(&path, &hm::serialize(&h))?;
            }
            println!(
                "{}",
                json!({ "count": count, "dir": out.display().to_string() })
            );
            Ok(())
        }
        Command::Replay { input, trace, out } => {
            let h = load(&input)?;
            let log = std::fs::read_to_string(&trace)
                .map_err(|e| format!("reading {}: {e}", trace.display()))?;
            let steps = hm::steps_from_log(&log).map_err(|e| e.to_string())?;
            let result = hm::replay(&h, &steps).map_err(|e| e.to_string())?;
            emit(&out, &hm::serialize(&result))?;
            Ok(())
        }
        Command::ExportDot { input, trace, out } => {
            let h = load(&input)?;
            let dot = match trace {
                Some(path) => {
                    let log = std::fs::read_to_string(&path)
                        .map_err(|e| format!("reading {}: {e}", path.display()))?;
                    let steps = hm::steps_from_log(&log).map_err(|e| e.to_string())?;
                    hm::dot::trace_to_dot(&hm::Trace { start: h, steps })
                        .map_err(|e| e.to_string())?
                }
                None => hm::dot::hypergraph_to_dot(&h),
            };
            emit(&out, &dot)?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("{}", json!({ "error": message }));
            ExitCode::FAILURE
        }
    }
}
