//! `inn` turns recipe corpora into ingredient networks and their communities.
//!
//! Stages chain through an output directory: `extract` normalizes the
//! corpus into `recipes.jsonl`, and the later stages (`graph`, `stats`,
//! `communities`, `overlap`) read that artifact instead of recomputing the
//! extraction. `all` runs the whole pipeline. Every stage writes its
//! artifacts deterministically (sorted keys, fixed seeds), so identical
//! inputs and flags give byte-identical outputs.

mod artifacts;

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use inn_core::community::{compare_partitions, louvain_weighted, render_matrix, wabcd, Partition};
use inn_core::corpus::{parse_recipe_file, summarize_corpus, CorpusFormat};
use inn_core::extraction::{extract_corpus, load_stopwords};
use inn_core::graph::{
    build_network, category_ingredients, category_labels, degree_distribution,
    log_log_tail_slope, overlap_regions, stats_report, to_dot, to_edge_tsv, to_graphml,
    DegreeHistogram, InGraph, StatsReport,
};

use artifacts::{
    check_staleness, provenance_json, read_recipes, write_artifact, CORPUS_SUMMARY,
    EXTRACTION_LOG, PROVENANCE, RECIPES,
};

#[derive(Parser)]
#[command(name = "inn", version, about = "Ingredient co-occurrence network toolkit")]
struct Cli {
    /// Worker threads for the parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a recipe corpus and normalize ingredient lines into names.
    Extract(ExtractArgs),
    /// Export the co-occurrence network (edge list, DOT, GraphML).
    Graph(GraphArgs),
    /// Compute network statistics and degree histograms.
    Stats(ChainedArgs),
    /// Detect communities and compare the detectors.
    Communities(CommunitiesArgs),
    /// Count ingredient overlaps across recipe categories.
    Overlap(OverlapArgs),
    /// Run extract, graph, stats, communities, and (with --categories) overlap.
    All(AllArgs),
}

#[derive(Args)]
struct ExtractArgs {
    /// Recipe corpus file.
    #[arg(long)]
    input: PathBuf,
    /// Corpus format.
    #[arg(long, value_enum, default_value_t = InputFormat::Jsonl)]
    format: InputFormat,
    /// Stop-word file, one token per line.
    #[arg(long)]
    stopwords: PathBuf,
    /// Output directory for artifacts.
    #[arg(long)]
    out: PathBuf,
    /// Overwrite existing artifacts.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct ChainedArgs {
    /// Output directory holding the extract artifacts.
    #[arg(long)]
    out: PathBuf,
    /// Original corpus file; only used to warn about stale artifacts.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Original stop-word file; only used to warn about stale artifacts.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Overwrite existing artifacts.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    chained: ChainedArgs,
    /// Export formats to write.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "edges,dot,graphml")]
    format: Vec<GraphFormat>,
}

#[derive(Args)]
struct CommunitiesArgs {
    #[command(flatten)]
    chained: ChainedArgs,
    /// Detectors to run.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "wabcd,louvain")]
    algos: Vec<Algo>,
    /// Louvain node-visit shuffle seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Louvain resolution (1.0 is classic modularity).
    #[arg(long, default_value_t = 1.0)]
    resolution: f64,
}

#[derive(Args)]
struct OverlapArgs {
    #[command(flatten)]
    chained: ChainedArgs,
    /// Category labels to intersect (2 to 6).
    #[arg(long, value_delimiter = ',', required = true)]
    categories: Vec<String>,
}

#[derive(Args)]
struct AllArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Jsonl)]
    format: InputFormat,
    #[arg(long)]
    stopwords: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "wabcd,louvain")]
    algos: Vec<Algo>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    resolution: f64,
    /// Optional category labels for the overlap stage.
    #[arg(long, value_delimiter = ',')]
    categories: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy)]
enum InputFormat {
    Jsonl,
    Csv,
}

impl From<InputFormat> for CorpusFormat {
    fn from(f: InputFormat) -> CorpusFormat {
        match f {
            InputFormat::Jsonl => CorpusFormat::Jsonl,
            InputFormat::Csv => CorpusFormat::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum GraphFormat {
    Edges,
    Dot,
    Graphml,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Algo {
    Wabcd,
    Louvain,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Wabcd => "wabcd",
            Algo::Louvain => "louvain",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        // Ignore the error if a pool already exists (tests, repeat calls).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(threads: Option<usize>) {
    if threads.is_some() {
        eprintln!("note: built without the parallel feature; --threads has no effect");
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Extract(args) => cmd_extract(&args),
        Command::Graph(args) => cmd_graph(&args),
        Command::Stats(args) => cmd_stats(&args),
        Command::Communities(args) => cmd_communities(&args),
        Command::Overlap(args) => cmd_overlap(&args),
        Command::All(args) => cmd_all(args),
    }
}

fn cmd_extract(args: &ExtractArgs) -> Result<()> {
    let input_bytes = fs::read(&args.input)
        .with_context(|| format!("reading corpus {}", args.input.display()))?;
    let stopword_bytes = fs::read(&args.stopwords)
        .with_context(|| format!("reading stop words {}", args.stopwords.display()))?;
    let recipes = parse_recipe_file(input_bytes.as_slice(), args.format.into())
        .with_context(|| format!("parsing {}", args.input.display()))?;
    let stopwords = load_stopwords(stopword_bytes.as_slice())
        .with_context(|| format!("loading {}", args.stopwords.display()))?;

    let (extracted, log) = extract_corpus(&recipes, &stopwords);
    let summary = summarize_corpus(&recipes);

    let mut recipes_jsonl = String::new();
    for recipe in &extracted {
        recipes_jsonl.push_str(&serde_json::to_string(recipe)?);
        recipes_jsonl.push('\n');
    }
    let mut log_jsonl = String::new();
    for entry in &log.entries {
        log_jsonl.push_str(&serde_json::to_string(entry)?);
        log_jsonl.push('\n');
    }
    let mut summary_json = serde_json::to_string_pretty(&summary)?;
    summary_json.push('\n');

    write_artifact(&args.out, RECIPES, &recipes_jsonl, args.force)?;
    write_artifact(&args.out, EXTRACTION_LOG, &log_jsonl, args.force)?;
    write_artifact(&args.out, CORPUS_SUMMARY, &summary_json, args.force)?;
    write_artifact(
        &args.out,
        PROVENANCE,
        &provenance_json(&input_bytes, &stopword_bytes),
        args.force,
    )?;
    println!(
        "extract: {} recipes ({} flagged) -> {}",
        extracted.len(),
        log.flagged_recipes().len(),
        args.out.display()
    );
    Ok(())
}

fn load_graph(chained: &ChainedArgs) -> Result<(Vec<inn_core::Recipe>, InGraph)> {
    check_staleness(
        &chained.out,
        chained.input.as_deref(),
        chained.stopwords.as_deref(),
    )?;
    let recipes = read_recipes(&chained.out)?;
    let graph = build_network(&recipes);
    Ok((recipes, graph))
}

fn cmd_graph(args: &GraphArgs) -> Result<()> {
    let (_, graph) = load_graph(&args.chained)?;
    let force = args.chained.force;
    for format in dedup(&args.format) {
        match format {
            GraphFormat::Edges => {
                write_artifact(&args.chained.out, "edges.tsv", &to_edge_tsv(&graph), force)?;
            }
            GraphFormat::Dot => {
                write_artifact(&args.chained.out, "graph.dot", &to_dot(&graph), force)?;
            }
            GraphFormat::Graphml => {
                write_artifact(&args.chained.out, "graph.graphml", &to_graphml(&graph), force)?;
            }
        }
    }
    println!(
        "graph: {} nodes, {} edges -> {}",
        graph.node_count(),
        graph.edge_count(),
        args.chained.out.display()
    );
    Ok(())
}

fn histogram_csv(hist: &DegreeHistogram) -> String {
    let mut out = String::from("degree,count\n");
    for (degree, count) in &hist.entries {
        out.push_str(&format!("{degree},{count}\n"));
    }
    out
}

fn cmd_stats(args: &ChainedArgs) -> Result<()> {
    let (_, graph) = load_graph(args)?;
    let report = if graph.is_empty() {
        eprintln!("warning: graph is empty; statistics are all zero");
        StatsReport {
            node_count: 0,
            edge_count: 0,
            avg_clustering_coefficient: 0.0,
            triangle_count: 0,
            fraction_closed_triangles: 0.0,
            diameter: 0,
            avg_edge_weight: None,
            strongest_edge: None,
        }
    } else {
        stats_report(&graph)?
    };
    if !graph.is_empty() && report.avg_edge_weight.is_none() {
        eprintln!("warning: graph has no edges; avg_edge_weight omitted from stats");
    }
    let mut stats_json = serde_json::to_string_pretty(&report)?;
    stats_json.push('\n');
    write_artifact(&args.out, "stats.json", &stats_json, args.force)?;

    let plain = degree_distribution(&graph, false);
    let cumulative = degree_distribution(&graph, true);
    for (hist, stem) in [(&plain, "degree_hist"), (&cumulative, "degree_hist_cumulative")] {
        let mut json = serde_json::to_string_pretty(hist)?;
        json.push('\n');
        write_artifact(&args.out, &format!("{stem}.json"), &json, args.force)?;
        write_artifact(&args.out, &format!("{stem}.csv"), &histogram_csv(hist), args.force)?;
    }
    match log_log_tail_slope(&plain, 1) {
        Some(slope) => println!("stats: log-log degree tail slope {slope:.4}"),
        None => println!("stats: degree histogram too small for a tail slope"),
    }
    println!(
        "stats: {} nodes, {} edges, diameter {} -> {}",
        report.node_count,
        report.edge_count,
        report.diameter,
        args.out.display()
    );
    Ok(())
}

fn dedup<T: Copy + PartialEq>(values: &[T]) -> Vec<T> {
    let mut seen = Vec::new();
    for &v in values {
        if !seen.contains(&v) {
            seen.push(v);
        }
    }
    seen
}

fn cmd_communities(args: &CommunitiesArgs) -> Result<()> {
    let (recipes, graph) = load_graph(&args.chained)?;
    if graph.is_empty() {
        bail!("graph is empty; nothing to detect communities in");
    }
    let force = args.chained.force;
    let mut results: Vec<(String, Partition)> = Vec::new();
    for algo in dedup(&args.algos) {
        let partition = match algo {
            Algo::Wabcd => {
                let (partition, trace) = wabcd(&graph)?;
                write_artifact(&args.chained.out, "wabcd_trace.jsonl", &trace.to_jsonl(), force)?;
                partition
            }
            Algo::Louvain => louvain_weighted(&graph, args.resolution, args.seed)?,
        };
        write_artifact(
            &args.chained.out,
            &format!("partition_{}.json", algo.name()),
            &partition.to_json(&graph),
            force,
        )?;
        write_artifact(
            &args.chained.out,
            &format!("partition_{}.tsv", algo.name()),
            &partition.to_tsv(&graph),
            force,
        )?;
        results.push((algo.name().to_string(), partition));
    }

    let labels = category_labels(&recipes);
    let category_sets: Vec<(String, BTreeSet<String>)> = labels
        .iter()
        .map(|l| (l.clone(), category_ingredients(&recipes, l)))
        .collect();
    if category_sets.is_empty() {
        eprintln!("warning: corpus has no category labels; skipping the comparison report");
    } else {
        let report = compare_partitions(&results, &category_sets, &graph)?;
        let mut report_json = serde_json::to_string_pretty(&report)?;
        report_json.push('\n');
        write_artifact(&args.chained.out, "compare_report.json", &report_json, force)?;
        write_artifact(&args.chained.out, "compare_matrix.txt", &render_matrix(&report), force)?;
    }
    for (name, partition) in &results {
        println!("communities: {name} found {}", partition.community_count());
    }
    Ok(())
}

fn cmd_overlap(args: &OverlapArgs) -> Result<()> {
    if !(2..=6).contains(&args.categories.len()) {
        bail!(
            "--categories needs between 2 and 6 labels, got {}",
            args.categories.len()
        );
    }
    check_staleness(
        &args.chained.out,
        args.chained.input.as_deref(),
        args.chained.stopwords.as_deref(),
    )?;
    let recipes = read_recipes(&args.chained.out)?;
    let sets: Vec<(String, BTreeSet<String>)> = args
        .categories
        .iter()
        .map(|label| (label.clone(), category_ingredients(&recipes, label)))
        .collect();
    let regions = overlap_regions(&sets)?;
    let mut json = serde_json::to_string_pretty(&regions)?;
    json.push('\n');
    write_artifact(&args.chained.out, "overlap.json", &json, args.chained.force)?;
    println!(
        "overlap: {} regions over {} categories -> {}",
        regions.len(),
        args.categories.len(),
        args.chained.out.display()
    );
    Ok(())
}

fn cmd_all(args: AllArgs) -> Result<()> {
    cmd_extract(&ExtractArgs {
        input: args.input.clone(),
        format: args.format,
        stopwords: args.stopwords.clone(),
        out: args.out.clone(),
        force: args.force,
    })?;
    let chained = || ChainedArgs {
        out: args.out.clone(),
        input: Some(args.input.clone()),
        stopwords: Some(args.stopwords.clone()),
        force: args.force,
    };
    cmd_graph(&GraphArgs {
        chained: chained(),
        format: vec![GraphFormat::Edges, GraphFormat::Dot, GraphFormat::Graphml],
    })?;
    cmd_stats(&chained())?;
    cmd_communities(&CommunitiesArgs {
        chained: chained(),
        algos: args.algos.clone(),
        seed: args.seed,
        resolution: args.resolution,
    })?;
    if !args.categories.is_empty() {
        cmd_overlap(&OverlapArgs {
            chained: chained(),
            categories: args.categories.clone(),
        })?;
    }
    Ok(())
}
