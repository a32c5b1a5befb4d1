//! Command-line surface over the library: every subcommand parses its
//! inputs, calls into `quiverfan`, prints deterministic JSON (or CSV for
//! matrices) on stdout and reports timings on stderr.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource cap.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quiverfan::census;
use quiverfan::clusters::{ClusterContext, DEFAULT_SEED};
use quiverfan::decorated::{sigma, tau, Sign};
use quiverfan::graph::{
    alternating_orientation, dynkin_graph, parse_dynkin_label, DynkinGraph, Quiver, RootVector,
};
use quiverfan::groupoid::{check_lemmas, classify_loops};
use quiverfan::rep::IndecTable;
use quiverfan::verify::{run_verify_suite, CheckGroup, VerifyConfig};
use quiverfan::Error;

#[derive(Parser)]
#[command(
    name = "quiverfan",
    version,
    about = "Cluster fans from Dynkin quiver representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct QuiverArgs {
    /// Dynkin label such as A3, D4 or E6 (uses the alternating
    /// orientation), or a path to a quiver JSON file.
    #[arg(long)]
    graph: Option<String>,
    /// Path to a quiver JSON file; takes precedence over --graph.
    #[arg(long)]
    quiver: Option<String>,
}

fn load_quiver_file(path: &str) -> Result<Quiver, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    Quiver::from_json_str(&text)
}

impl QuiverArgs {
    fn resolve(&self) -> Result<Quiver, Error> {
        if let Some(path) = &self.quiver {
            return load_quiver_file(path);
        }
        if let Some(label) = &self.graph {
            if let Ok((ty, rank)) = parse_dynkin_label(label) {
                let graph = dynkin_graph(ty, rank)?;
                return Ok(alternating_orientation(graph.graph()).0);
            }
            if std::path::Path::new(label).exists() {
                return load_quiver_file(label);
            }
            return Err(Error::Parse(format!(
                "{label:?} is neither a Dynkin label nor an existing quiver file"
            )));
        }
        Err(Error::Parse(
            "either --graph or --quiver is required".into(),
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// List positive and almost positive roots.
    Roots {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also dump the indecomposable representation of each positive root.
        #[arg(long)]
        dump_reps: bool,
    },
    /// Compatibility-degree matrix over the almost positive roots.
    Compat {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Enumerate clusters.
    Clusters {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Restrict to positive clusters.
        #[arg(long)]
        positive: bool,
        /// Allow enumeration beyond rank 6.
        #[arg(long)]
        large: bool,
    },
    /// Export the fan (roots and clusters) as JSON.
    Fan {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
        #[arg(long)]
        large: bool,
    },
    /// Expand a lattice vector over the cluster fan.
    Expand {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Comma-separated integer coordinates in ascending vertex order.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        large: bool,
    },
    /// Apply a word of piecewise-linear reflections to a vector.
    Sigma {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Comma-separated letters: vertex numbers for single reflections,
        /// `+` or `-` for the alternating products.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Loop classification or word-lemma sweep on the reflection groupoid.
    Groupoid {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Letter bound; defaults to 2·n·(n+1).
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, value_parser = ["loops", "lemmas"])]
        check: String,
    },
    /// Ext-free census: f-vectors per orientation and the count formula.
    Census {
        /// Dynkin label such as A3.
        #[arg(long)]
        graph: String,
        /// Enumerate every orientation (always on; kept for compatibility).
        #[arg(long)]
        all_orientations: bool,
        #[arg(long)]
        large: bool,
    },
    /// Run the verification suite.
    Verify {
        /// Comma-separated Dynkin labels.
        #[arg(long, default_value = "A1,A2,A3,A4,D4")]
        graphs: String,
        /// Random lattice vectors per orientation.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Random decorated sums per orientation.
        #[arg(long, default_value_t = 200)]
        sums: usize,
        /// Seed; the QUIVERFAN_SEED environment variable overrides the
        /// default when the flag is absent.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 12)]
        loop_len: usize,
        #[arg(long, default_value_t = 10)]
        lemma_len: usize,
        /// Comma-separated subset of rep,decorated,clusters,groupoid,census.
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        large: bool,
    },
}

fn parse_gamma(quiver: &Quiver, text: &str) -> Result<RootVector, Error> {
    let values: Vec<i64> = text
        .split(',')
        .map(|part| part.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::Parse(format!("bad coordinate list {text:?}: {e}")))?;
    RootVector::from_values(quiver.vertices(), &values)
}

fn check_rank_cap(quiver: &Quiver, large: bool) -> Result<(), Error> {
    if quiver.vertices().len() > 6 && !large {
        return Err(Error::Resource(format!(
            "rank {} exceeds the default cap 6; pass --large to enumerate anyway",
            quiver.vertices().len()
        )));
    }
    Ok(())
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Roots {
            quiver,
            format,
            dump_reps,
        } => {
            let q = quiver.resolve()?;
            let positives = quiverfan::graph::positive_roots(q.graph())?;
            let almost = quiverfan::graph::almost_positive_roots(q.graph())?;
            match format {
                Format::Csv => {
                    let mut out = String::new();
                    for root in &almost {
                        let row: Vec<String> =
                            root.values().iter().map(|v| v.to_string()).collect();
                        out.push_str(&row.join(","));
                        out.push('\n');
                    }
                    print!("{out}");
                }
                Format::Json => {
                    let mut value = serde_json::json!({
                        "quiver": q.to_string(),
                        "vertices": q.vertices(),
                        "positive": positives.iter().map(|r| r.values()).collect::<Vec<_>>(),
                        "almost_positive": almost.iter().map(|r| r.values()).collect::<Vec<_>>(),
                        "labels": almost.iter().map(|r| r.label()).collect::<Vec<_>>(),
                    });
                    if dump_reps {
                        let table = IndecTable::new(&q)?;
                        let reps: Vec<serde_json::Value> = table
                            .roots()
                            .iter()
                            .zip(table.reps())
                            .map(|(root, rep)| {
                                let matrices: Vec<serde_json::Value> = q
                                    .arrows()
                                    .iter()
                                    .enumerate()
                                    .map(|(k, &(s, t))| {
                                        let m = rep.matrix(k);
                                        let rows: Vec<Vec<String>> = (0..m.rows())
                                            .map(|r| {
                                                (0..m.cols())
                                                    .map(|c| m.get(r, c).to_string())
                                                    .collect()
                                            })
                                            .collect();
                                        serde_json::json!({
                                            "arrow": format!("{s}->{t}"),
                                            "rows": rows,
                                        })
                                    })
                                    .collect();
                                serde_json::json!({
                                    "root": root.values(),
                                    "label": root.label(),
                                    "dims": rep.dims().values(),
                                    "matrices": matrices,
                                })
                            })
                            .collect();
                        value["representations"] = serde_json::Value::Array(reps);
                    }
                    print_json(&value);
                }
            }
            Ok(true)
        }
        Command::Compat { quiver, format } => {
            let q = quiver.resolve()?;
            let ctx = ClusterContext::new(&q)?;
            let roots = ctx.roots();
            match format {
                Format::Csv => {
                    let header: Vec<String> = std::iter::once(String::new())
                        .chain(roots.iter().map(|r| r.label()))
                        .collect();
                    println!("{}", header.join(","));
                    for (a, root) in roots.iter().enumerate() {
                        let row: Vec<String> = std::iter::once(root.label())
                            .chain((0..roots.len()).map(|b| ctx.degree_by_index(a, b).to_string()))
                            .collect();
                        println!("{}", row.join(","));
                    }
                }
                Format::Json => {
                    let matrix: Vec<Vec<usize>> = (0..roots.len())
                        .map(|a| {
                            (0..roots.len())
                                .map(|b| ctx.degree_by_index(a, b))
                                .collect()
                        })
                        .collect();
                    print_json(&serde_json::json!({
                        "quiver": q.to_string(),
                        "roots": roots.iter().map(|r| r.label()).collect::<Vec<_>>(),
                        "matrix": matrix,
                    }));
                }
            }
            Ok(true)
        }
        Command::Clusters {
            quiver,
            positive,
            large,
        } => {
            let q = quiver.resolve()?;
            check_rank_cap(&q, large)?;
            let ctx = ClusterContext::new(&q)?;
            let clusters: Vec<Vec<usize>> = if positive {
                ctx.positive_clusters()?
            } else {
                ctx.clusters().to_vec()
            };
            print_json(&serde_json::json!({
                "quiver": q.to_string(),
                "rank": ctx.rank(),
                "roots": ctx.roots().iter().map(|r| r.label()).collect::<Vec<_>>(),
                "count": clusters.len(),
                "clusters": clusters,
            }));
            Ok(true)
        }
        Command::Fan { quiver, out, large } => {
            let q = quiver.resolve()?;
            check_rank_cap(&q, large)?;
            let ctx = ClusterContext::new(&q)?;
            let json = ctx.fan_json();
            let text = serde_json::to_string_pretty(&json).expect("serializable");
            match out {
                Some(path) => {
                    std::fs::write(&path, format!("{text}\n"))
                        .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                    eprintln!("fan written to {path}");
                }
                None => println!("{text}"),
            }
            Ok(true)
        }
        Command::Expand {
            quiver,
            gamma,
            large,
        } => {
            let q = quiver.resolve()?;
            check_rank_cap(&q, large)?;
            let ctx = ClusterContext::new(&q)?;
            let target = parse_gamma(&q, &gamma)?;
            let expansion = ctx.expand(&target)?;
            print_json(&expansion.to_json());
            Ok(true)
        }
        Command::Sigma {
            quiver,
            word,
            gamma,
        } => {
            let q = quiver.resolve()?;
            let graph = q.graph();
            let mut value = parse_gamma(&q, &gamma)?;
            let mut applied = Vec::new();
            for token in word.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                value = match token {
                    "+" => tau(graph, Sign::Plus, &value)?,
                    "-" => tau(graph, Sign::Minus, &value)?,
                    _ => {
                        let v: usize = token
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad sigma letter {token:?}")))?;
                        sigma(graph, v, &value)?
                    }
                };
                applied.push(token.to_string());
            }
            print_json(&serde_json::json!({
                "word": applied,
                "gamma": parse_gamma(&q, &gamma)?.values(),
                "result": value.values(),
                "label": value.label(),
            }));
            Ok(true)
        }
        Command::Groupoid {
            quiver,
            max_len,
            check,
        } => {
            let q = quiver.resolve()?;
            let graph = q.graph();
            let n = graph.vertices().len();
            let bound = max_len.unwrap_or(2 * n * (n + 1));
            match check.as_str() {
                "loops" => {
                    let report = classify_loops(graph, bound)?;
                    let passed = report.passed();
                    print_json(&serde_json::to_value(&report).expect("serializable"));
                    Ok(passed)
                }
                _ => {
                    let report = check_lemmas(graph, bound.min(12), bound.min(8));
                    let passed = report.passed();
                    print_json(&serde_json::to_value(&report).expect("serializable"));
                    Ok(passed)
                }
            }
        }
        Command::Census {
            graph,
            all_orientations: _,
            large,
        } => {
            let (ty, rank) = parse_dynkin_label(&graph)?;
            let diagram: DynkinGraph = dynkin_graph(ty, rank)?;
            let report = census::orientation_invariance(&diagram, large)?;
            let formula = census::positive_cluster_count(&diagram)?;
            let orientations: Vec<serde_json::Value> =
                quiverfan::graph::enumerate_orientations(diagram.graph())
                    .iter()
                    .map(|q| {
                        let f = census::f_plus_vector(q, large).expect("within cap");
                        serde_json::json!({
                            "quiver": q.to_string(),
                            "f_plus": f.counts,
                        })
                    })
                    .collect();
            let passed = report.passed() && report.f_plus.top() == formula;
            print_json(&serde_json::json!({
                "graph": diagram.label(),
                "orientations": orientations,
                "invariant": report.passed(),
                "formula_value": formula,
            }));
            Ok(passed)
        }
        Command::Verify {
            graphs,
            samples,
            sums,
            seed,
            loop_len,
            lemma_len,
            checks,
            jobs,
            large,
        } => {
            let graph_list: Vec<(quiverfan::graph::DynkinType, usize)> = graphs
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(parse_dynkin_label)
                .collect::<Result<_, _>>()?;
            let seed = match seed {
                Some(s) => s,
                None => match std::env::var("QUIVERFAN_SEED") {
                    Ok(text) => text
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad QUIVERFAN_SEED {text:?}")))?,
                    Err(_) => DEFAULT_SEED,
                },
            };
            let check_set: Option<BTreeSet<CheckGroup>> = match checks {
                None => None,
                Some(text) => Some(
                    text.split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(CheckGroup::parse)
                        .collect::<Result<_, _>>()?,
                ),
            };
            let cfg = VerifyConfig {
                graphs: graph_list,
                seed,
                fan_samples: samples,
                random_sums: sums,
                loop_len,
                lemma_len,
                checks: check_set,
                jobs,
                large,
            };
            let report = run_verify_suite(&cfg)?;
            let mut err = std::io::stderr().lock();
            for check in &report.checks {
                let status = if check.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    err,
                    "{status} {:<28} {} [{} ms]",
                    check.name, check.details, check.wall_ms
                );
            }
            println!("{}", report.to_json_string());
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Error::Resource(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}
