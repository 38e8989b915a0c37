use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kforce_core::bounds::format_rational;
use kforce_core::exact::DEFAULT_BUDGET;
use kforce_core::forcing::state_from;
use kforce_core::harness::{expand_spec, verify_corpus, CorpusSpec};
use kforce_core::io::{format_edge_list, read_graph, Format};
use kforce_core::{
    all_bounds, closure, exact_all_minimum_sets, exact_f_k, greedy_per_component, serialize_graph6,
    Error, FamilySpec, Graph, GreedyCase, Strategy,
};

/// k-forcing sets, numbers and bounds.
///
/// Exit codes: 0 success, 1 semantic negative (not forcing, budget
/// exhausted, verification failures), 2 usage or input error.
/// The worker count for parallel searches defaults to the available
/// parallelism and can be set with KFORCE_WORKERS or --workers.
#[derive(Parser)]
#[command(name = "kforce", version)]
struct Cli {
    /// Worker threads for exact search and corpus verification.
    #[arg(long, global = true, env = "KFORCE_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (graph6 or edge list), or `-` for stdin.
    graph: PathBuf,
    /// Input format; sniffed from the first line when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    #[arg(long, short, default_value_t = 1)]
    k: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run the forcing process from an initial set.
    Force {
        #[command(flatten)]
        input: GraphInput,
        /// Initially colored vertices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Greedy k-forcing set with its case and bound check.
    Greedy {
        #[command(flatten)]
        input: GraphInput,
        /// Stall selection: min-augmentation (default) or max-degree.
        #[arg(long, default_value = "min-augmentation", value_parser = parse_strategy)]
        strategy: Strategy,
        #[arg(long)]
        json: bool,
    },
    /// Exact k-forcing number by exhaustive search.
    Exact {
        #[command(flatten)]
        input: GraphInput,
        /// Maximum number of closure evaluations.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also list every minimum k-forcing set.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every bound, with exact and greedy values.
    Bounds {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Skip the exact search.
        #[arg(long)]
        no_exact: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verify the claims over a corpus (built-in default when no file given).
    Verify {
        corpus: Option<PathBuf>,
        /// Write the per-row CSV here (`-` for stdout).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the full JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the equality-case log (CSV) here.
        #[arg(long)]
        equality_log: Option<PathBuf>,
        /// Override the corpus budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generate a graph, e.g. `gen cycle 7` or `gen random_regular 12 3 --seed 7`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output format: edgelist (default) or graph6.
        #[arg(long, value_parser = parse_format)]
        format: Option<Format>,
    },
    /// Time the exact solver over a family spec with ranges, e.g. `complete 4..9`.
    Bench {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long, short, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn load(input: &GraphInput) -> Result<Graph> {
    let text = if input.graph == Path::new("-") {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(&input.graph)
            .with_context(|| format!("reading {}", input.graph.display()))?
    };
    read_graph(&text, input.format).with_context(|| format!("parsing {}", input.graph.display()))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.unwrap_or_else(kforce_core::default_workers);
    match kforce_core::with_workers(workers, || run(cli.command, workers)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns `Ok(false)` for a semantic negative.
fn run(command: Command, workers: usize) -> Result<bool> {
    match command {
        Command::Force { input, set, json } => {
            let g = load(&input)?;
            let initial = state_from(&g, &set)?;
            let trace = closure(&g, &initial, input.k)?;
            let forcing = trace.is_complete();
            if json {
                let out = serde_json::json!({ "k": input.k, "forcing": forcing, "trace": trace });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                print!("{}", trace.to_text());
                println!("rounds: {}", trace.rounds);
                println!("colored: {}/{}", trace.final_state.len(), g.n());
                println!("forcing: {forcing}");
            }
            Ok(forcing)
        }
        Command::Greedy {
            input,
            strategy,
            json,
        } => {
            let g = load(&input)?;
            let k = input.k;
            let results = kforce_core::greedy::greedy_per_component_with(&g, k, strategy)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&results)?);
            }
            let mut ok = true;
            let components = g.components();
            for (r, comp) in results.iter().zip(&components) {
                let sub = g.induced_subgraph(comp)?;
                let (line, within) = compliance(&sub, k, r.case_taken, r.size());
                ok &= within;
                if json {
                    continue;
                }
                if components.len() > 1 {
                    println!("component: {:?}", comp);
                }
                println!("case: {}", r.case_taken);
                println!("size: {}", r.size());
                println!("set: {}", r.forcing_set);
                println!("augmentations: {}", r.augmentations.len());
                for a in &r.augmentations {
                    println!(
                        "  u={} a(u)={} colored={:?}",
                        a.u, a.a_u, a.colored_neighbors
                    );
                }
                println!("{line}");
            }
            Ok(ok)
        }
        Command::Exact {
            input,
            budget,
            all,
            json,
        } => {
            let g = load(&input)?;
            match exact_f_k(&g, input.k, Some(budget)) {
                Ok(r) => {
                    let all_sets = if all {
                        Some(exact_all_minimum_sets(&g, input.k, Some(budget))?)
                    } else {
                        None
                    };
                    if json {
                        let mut v = serde_json::to_value(&r)?;
                        v["k"] = input.k.into();
                        if let Some(sets) = &all_sets {
                            v["all_minimum_sets"] = serde_json::to_value(sets)?;
                        }
                        println!("{}", serde_json::to_string_pretty(&v)?);
                    } else {
                        println!("F_{}: {}", input.k, r.f_k);
                        println!("witness: {}", r.witness);
                        println!("subsets_tested: {}", r.subsets_tested);
                        println!("elapsed_ms: {:.3}", r.elapsed.as_secs_f64() * 1e3);
                        println!("certification: {}", r.certification);
                        for s in all_sets.iter().flatten() {
                            println!("minimum set: {s}");
                        }
                    }
                    Ok(true)
                }
                Err(Error::BudgetExceeded {
                    proven_none_up_to,
                    tested,
                }) => {
                    if json {
                        let v = serde_json::json!({
                            "k": input.k,
                            "certification": "budget-truncated",
                            "lower_bound": proven_none_up_to + 1,
                            "subsets_tested": tested,
                        });
                        println!("{}", serde_json::to_string_pretty(&v)?);
                    } else {
                        println!("certification: budget-truncated");
                        println!("F_{} >= {}", input.k, proven_none_up_to + 1);
                        println!("subsets_tested: {tested}");
                    }
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Bounds {
            input,
            budget,
            no_exact,
            json,
        } => {
            let g = load(&input)?;
            let k = input.k;
            let mut report = all_bounds(&g, k);
            if !no_exact {
                report.exact = exact_f_k(&g, k, Some(budget)).ok().map(|r| r.f_k);
            }
            report.greedy = Some(greedy_per_component(&g, k)?.iter().map(|r| r.size()).sum());
            let components = g.components().len();
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                let s = &report.graph;
                println!(
                    "n={} m={} δ={} Δ={} connected={} k={k}",
                    s.n, s.m, s.delta, s.big_delta, s.connected
                );
                if components > 1 {
                    println!(
                        "note: {components} components; greedy is the sum over components, \
                         connected-only bounds are not applicable"
                    );
                }
                println!(
                    "{:<12} {:>10} {:>6}  hypotheses / reason",
                    "bound", "value", "floor"
                );
                for b in &report.bounds {
                    let value = b
                        .value
                        .as_ref()
                        .map(format_rational)
                        .unwrap_or_else(|| "-".into());
                    let floor = b.floor.map(|f| f.to_string()).unwrap_or_else(|| "-".into());
                    let tag = if b.exact { " (exact)" } else { "" };
                    let detail = b.reason().unwrap_or_else(|| b.hypotheses.clone());
                    println!(
                        "{:<12} {:>10} {:>6}  {detail}{tag}",
                        b.name.as_str(),
                        value,
                        floor
                    );
                }
                match report.exact {
                    Some(e) => println!("exact: {e}"),
                    None if !no_exact => println!("exact: budget exhausted"),
                    None => {}
                }
                if let Some(gr) = report.greedy {
                    println!("greedy: {gr}");
                }
            }
            let violations = report.violations();
            for v in &violations {
                eprintln!("violation: exact value exceeds {v}");
            }
            Ok(violations.is_empty())
        }
        Command::Verify {
            corpus,
            csv,
            json,
            equality_log,
            budget,
        } => {
            let mut spec = match &corpus {
                Some(path) => CorpusSpec::parse(
                    &fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?,
                )?,
                None => CorpusSpec::default_corpus(),
            };
            if let Some(b) = budget {
                spec.budget = b;
            }
            let report = verify_corpus(&spec, workers)?;
            if let Some(path) = &csv {
                write_out(path, &report.to_csv()?)?;
            }
            if let Some(path) = &json {
                write_out(path, &report.to_json()?)?;
            }
            if let Some(path) = &equality_log {
                let mut out = String::from("graph_id,k,bound,attained_by,value,regular,Delta\n");
                for e in &report.equality_log {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        e.graph_id, e.k, e.bound, e.attained_by, e.value, e.regular, e.big_delta
                    ));
                }
                write_out(path, &out)?;
            }
            let stdout_taken = [&csv, &json]
                .iter()
                .any(|p| p.as_deref() == Some(Path::new("-")));
            let s = &report.summary;
            let summary = format!(
                "graphs: {}\nrows: {}\nfailing rows: {}\nbudget exhausted: {}\nequality cases: {}\n",
                s.graphs,
                s.rows,
                s.failures,
                s.budget_exhausted,
                report.equality_log.len()
            );
            let mut flags = String::new();
            for (flag, count) in &s.flag_counts {
                flags.push_str(&format!("flag {flag}: {count}\n"));
            }
            if stdout_taken {
                eprint!("{summary}{flags}");
            } else {
                print!("{summary}{flags}");
            }
            Ok(report.passed())
        }
        Command::Gen { spec, seed, format } => {
            let mut text = spec.join(" ");
            if let Some(seed) = seed {
                text.push_str(&format!(" seed={seed}"));
            }
            let family: FamilySpec = text.parse()?;
            let g = family.generate()?;
            match format.unwrap_or(Format::EdgeList) {
                Format::EdgeList => print!("{}", format_edge_list(&g)),
                Format::Graph6 => println!("{}", serialize_graph6(&g)?),
            }
            Ok(true)
        }
        Command::Bench { spec, k, budget } => {
            let specs = expand_spec(&spec.join(" "))?;
            if specs.is_empty() {
                bail!("empty spec");
            }
            println!(
                "{:<28} {:>4} {:>5} {:>4} {:>14} {:>12}",
                "graph", "n", "m", "F_k", "subsets", "ms"
            );
            let mut all_done = true;
            for family in specs {
                let g = family.generate()?;
                match exact_f_k(&g, k, Some(budget)) {
                    Ok(r) => println!(
                        "{:<28} {:>4} {:>5} {:>4} {:>14} {:>12.3}",
                        family.id(),
                        g.n(),
                        g.m(),
                        r.f_k,
                        r.subsets_tested,
                        r.elapsed.as_secs_f64() * 1e3
                    ),
                    Err(Error::BudgetExceeded {
                        proven_none_up_to,
                        tested,
                    }) => {
                        all_done = false;
                        println!(
                            "{:<28} {:>4} {:>5} {:>4} {:>14} {:>12}",
                            family.id(),
                            g.n(),
                            g.m(),
                            format!(">{proven_none_up_to}"),
                            tested,
                            "budget"
                        );
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(all_done)
        }
    }
}

/// The size guarantee for the case taken, as a printable line.
fn compliance(g: &Graph, k: usize, case: GreedyCase, size: usize) -> (String, bool) {
    match case {
        GreedyCase::Prop1 | GreedyCase::ThmI => (
            format!("bound: |T| = {size} == 1 ({})", verdict(size == 1)),
            size == 1,
        ),
        GreedyCase::ThmII => (
            format!("bound: |T| = {size} == 2 ({})", verdict(size == 2)),
            size == 2,
        ),
        GreedyCase::ThmIII => {
            let b = kforce_core::bounds::bound_thm2_iii(g, k);
            let value = b.value.expect("THM_III implies the bound applies");
            let floor = b.floor.unwrap();
            let ok = size as i64 <= floor;
            (
                format!(
                    "bound: |T| = {size} <= floor({}) = {floor} ({})",
                    format_rational(&value),
                    verdict(ok)
                ),
                ok,
            )
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "VIOLATED"
    }
}
