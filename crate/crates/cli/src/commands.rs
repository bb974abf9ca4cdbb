//! Command-line interface. Exit codes: 0 success, 1 algorithm failure,
//! 2 usage or I/O error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use patrec::classify::LabeledDataset;
use patrec::formats::{read_graphs, read_sequences, write_graphs, write_sequences};
use patrec::graphs::{LabeledGraph, Matcher};
use patrec::optimize::GaConfig;
use patrec::synthgen::{gen_graph_instance, gen_sequences, GraphProblemSpec, SequenceProblemSpec};
use patrec::Sequence;

use crate::experiments::{classify_graphs, cluster_sequences, CacheSweep, ClassifySettings, GraphInstance};
use crate::results::{read_results, summarize, write_results, ResultRow};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed files.
    Usage(String),
    Algorithm(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Algorithm(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Algorithm(m) => f.write_str(m),
        }
    }
}

impl From<patrec::Error> for CliError {
    fn from(e: patrec::Error) -> Self {
        match e {
            patrec::Error::Parse { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Algorithm(e.to_string()),
        }
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "patrec", version, about = "Pattern recognition benchmarks on sequences and labeled graphs")]
pub struct Cli {
    /// Default directory for dataset files.
    #[arg(long, global = true, env = "PATREC_DATA_DIR", default_value = "data")]
    pub data_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a two-class Gaussian sequence dataset.
    GenSeq(GenSeqArgs),
    /// Generate graph classification instances (train, validation, test).
    GenGraphs(GenGraphsArgs),
    /// Sweep the MinSOD cache size on 2-means sequence clustering.
    ClusterSeq(ClusterSeqArgs),
    /// k-NN graph classification over difficulty instances.
    ClassifyGraphs(ClassifyGraphsArgs),
    /// Summarize a results file.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Easy,
    Hard,
}

impl Preset {
    fn name(self) -> &'static str {
        match self {
            Preset::Easy => "easy",
            Preset::Hard => "hard",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatcherName {
    Twec,
    Pd6w,
    Sbmf,
    Hged,
}

#[derive(Debug, Args)]
pub struct SequenceSpecArgs {
    #[arg(long, value_enum, default_value = "easy")]
    pub preset: Preset,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sequences per class.
    #[arg(long)]
    pub per_class: Option<usize>,
    #[arg(long)]
    pub min_len: Option<usize>,
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub separation: Option<f64>,
    #[arg(long)]
    pub variance: Option<f64>,
}

impl SequenceSpecArgs {
    fn spec(&self) -> SequenceProblemSpec {
        let base = SequenceProblemSpec::preset(self.preset.name(), self.seed).expect("known preset");
        SequenceProblemSpec {
            per_class_count: self.per_class.unwrap_or(base.per_class_count),
            length_range: self.min_len.unwrap_or(*base.length_range.start())
                ..=self.max_len.unwrap_or(*base.length_range.end()),
            mean_separation: self.separation.unwrap_or(base.mean_separation),
            variance: self.variance.unwrap_or(base.variance),
            ..base
        }
    }
}

#[derive(Debug, Args)]
pub struct GenSeqArgs {
    #[command(flatten)]
    pub spec: SequenceSpecArgs,
    /// Output file; defaults to `sequences-<preset>.txt` in the data directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphSpecArgs {
    /// Instance indices: `a..b` (inclusive) or a comma-separated list.
    #[arg(long, default_value = "1..15", value_parser = parse_indices)]
    pub instances: Indices,
    /// Graphs per set.
    #[arg(long, default_value_t = 300)]
    pub per_set: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GenGraphsArgs {
    #[command(flatten)]
    pub spec: GraphSpecArgs,
    /// Output directory; defaults to the data directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterSeqArgs {
    #[command(flatten)]
    pub spec: SequenceSpecArgs,
    #[arg(long, default_value_t = 50)]
    pub cache_from: usize,
    #[arg(long, default_value_t = 1)]
    pub cache_to: usize,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    /// Dataset file; defaults to `sequences-<preset>.txt` in the data directory.
    #[arg(long, conflicts_with = "generate")]
    pub data: Option<PathBuf>,
    /// Generate datasets in memory instead of reading one, a fresh one per
    /// repeat.
    #[arg(long)]
    pub generate: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Results file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock seconds in the results.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyGraphsArgs {
    #[command(flatten)]
    pub spec: GraphSpecArgs,
    #[arg(long, value_delimiter = ',', default_value = "1,3,5")]
    pub k: Vec<usize>,
    #[arg(long, value_enum, default_value = "twec")]
    pub matcher: MatcherName,
    /// Vertex-order shuffles for sbmf.
    #[arg(long, default_value_t = 10)]
    pub shuffles: usize,
    /// Tune edit weights with the genetic algorithm on the validation set.
    #[arg(long)]
    pub tune: bool,
    #[arg(long, default_value_t = 30)]
    pub population: usize,
    #[arg(long, default_value_t = 50)]
    pub generations: usize,
    /// Generate instances in memory instead of reading them.
    #[arg(long)]
    pub generate: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub results: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indices(pub Vec<usize>);

fn parse_indices(s: &str) -> Result<Indices, String> {
    let bad = || format!("expected `a..b` or a comma-separated list, found `{s}`");
    let values: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(bad());
    }
    Ok(Indices(values))
}

fn write_file(path: &Path, content: &str) -> CliResult {
    fs::write(path, content).map_err(|e| io_error(path, e))
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn emit(rows: &[ResultRow], out: Option<&Path>) -> CliResult {
    let mut buf = Vec::new();
    write_results(rows, &mut buf).map_err(|e| CliError::Usage(e.to_string()))?;
    match out {
        Some(path) => fs::write(path, buf).map_err(|e| io_error(path, e)),
        None => io::stdout()
            .write_all(&buf)
            .map_err(|e| CliError::Usage(format!("stdout: {e}"))),
    }
}

fn sequence_file(data_dir: &Path, preset: Preset) -> PathBuf {
    data_dir.join(format!("sequences-{}.txt", preset.name()))
}

const SET_NAMES: [&str; 3] = ["train", "validation", "test"];

fn graph_file(dir: &Path, index: usize, set: &str) -> PathBuf {
    dir.join(format!("graphs-{index:02}-{set}.txt"))
}

fn graph_spec(args: &GraphSpecArgs, index: usize) -> GraphProblemSpec {
    GraphProblemSpec {
        per_set_count: args.per_set,
        ..GraphProblemSpec::instance(index, args.seed)
    }
}

fn describe_sequences(spec: &SequenceProblemSpec) -> Vec<String> {
    vec![format!(
        "sequences per_class={} dim={} length={}..={} separation={} variance={} seed={}",
        spec.per_class_count,
        spec.dim,
        spec.length_range.start(),
        spec.length_range.end(),
        spec.mean_separation,
        spec.variance,
        spec.seed
    )]
}

fn cmd_gen_seq(data_dir: &Path, args: &GenSeqArgs) -> CliResult {
    let spec = args.spec.spec();
    let data = gen_sequences(&spec)?;
    let path = args.out.clone().unwrap_or_else(|| sequence_file(data_dir, args.spec.preset));
    write_file(&path, &write_sequences(&data, &describe_sequences(&spec)))?;
    eprintln!("wrote {} sequences to {}", data.len(), path.display());
    Ok(())
}

fn cmd_gen_graphs(data_dir: &Path, args: &GenGraphsArgs) -> CliResult {
    let dir = args.out_dir.as_deref().unwrap_or(data_dir);
    for &index in &args.spec.instances.0 {
        let spec = graph_spec(&args.spec, index);
        let (train, validation, test) = gen_graph_instance(&spec)?;
        for (set, data) in SET_NAMES.iter().zip([&train, &validation, &test]) {
            let header = vec![format!(
                "graphs instance={index} set={set} separation={} seed={}",
                spec.separation(),
                spec.seed
            )];
            write_file(&graph_file(dir, index, set), &write_graphs(data, &header))?;
        }
    }
    eprintln!("wrote {} instances to {}", args.spec.instances.0.len(), dir.display());
    Ok(())
}

fn cmd_cluster_seq(data_dir: &Path, args: &ClusterSeqArgs) -> CliResult {
    // Generated runs draw a fresh dataset per repeat from seed + r; a dataset
    // file is shared by all repeats.
    let datasets: Vec<LabeledDataset<Sequence>> = if args.generate {
        let base = args.spec.spec();
        (0..args.repeats as u64)
            .map(|r| {
                gen_sequences(&SequenceProblemSpec {
                    seed: base.seed.wrapping_add(r),
                    ..base.clone()
                })
            })
            .collect::<patrec::Result<_>>()?
    } else {
        let path = args.data.clone().unwrap_or_else(|| sequence_file(data_dir, args.spec.preset));
        vec![read_sequences(&read_file(&path)?)?]
    };
    let sweep = CacheSweep {
        cache_from: args.cache_from,
        cache_to: args.cache_to,
        repeats: args.repeats,
        seed: args.spec.seed,
    };
    let start = Instant::now();
    let rows = cluster_sequences(&datasets, args.spec.preset.name(), &sweep, args.output.timing)?;
    eprintln!("{} cache sizes in {:.1}s", rows.len(), start.elapsed().as_secs_f64());
    emit(&rows, args.output.out.as_deref())
}

fn load_instance(data_dir: &Path, args: &GraphSpecArgs, index: usize, generate: bool) -> CliResult<GraphInstance> {
    let (train, validation, test) = if generate {
        gen_graph_instance(&graph_spec(args, index))?
    } else {
        let mut sets: Vec<LabeledDataset<LabeledGraph>> = Vec::with_capacity(3);
        for set in SET_NAMES {
            sets.push(read_graphs(&read_file(&graph_file(data_dir, index, set))?)?);
        }
        let test = sets.pop().expect("three sets");
        let validation = sets.pop().expect("three sets");
        let train = sets.pop().expect("three sets");
        (train, validation, test)
    };
    Ok(GraphInstance {
        index,
        train,
        validation,
        test,
    })
}

fn cmd_classify_graphs(data_dir: &Path, args: &ClassifyGraphsArgs) -> CliResult {
    let name = format!("{:?}", args.matcher).to_lowercase();
    let matcher = Matcher::parse(&name, args.shuffles, args.spec.seed).expect("value enum matches matcher names");
    let settings = ClassifySettings {
        ks: args.k.clone(),
        matcher,
        tuning: args.tune.then(|| GaConfig {
            population_size: args.population,
            generations: args.generations,
            ..GaConfig::default()
        }),
        seed: args.spec.seed,
    };
    let mut rows = Vec::new();
    for &index in &args.spec.instances.0 {
        let start = Instant::now();
        let instance = load_instance(data_dir, &args.spec, index, args.generate)?;
        let cells = classify_graphs(&instance, &settings, args.output.timing)?;
        let accs: Vec<String> = cells.iter().map(|r| format!("k={} {:.3}", r.k, r.metric)).collect();
        eprintln!("instance {index}: {} ({:.1}s)", accs.join(", "), start.elapsed().as_secs_f64());
        rows.extend(cells);
    }
    emit(&rows, args.output.out.as_deref())
}

fn cmd_eval(args: &EvalArgs) -> CliResult {
    let file = fs::File::open(&args.results).map_err(|e| io_error(&args.results, e))?;
    let rows = read_results(file).map_err(|e| CliError::Usage(format!("{}: {e}", args.results.display())))?;
    if rows.is_empty() {
        return Err(CliError::Usage(format!("{}: no result rows", args.results.display())));
    }
    for group in summarize(&rows) {
        println!("{} {} k={}", group.experiment, group.variant, group.k);
        println!("  param      mean       min       max");
        for (param, mean, min, max) in &group.per_param {
            println!("  {param:>5}  {mean:>8.4}  {min:>8.4}  {max:>8.4}");
        }
        match group.spearman {
            Some(rho) => println!("  spearman(param, metric) = {rho:.4}"),
            None => println!("  spearman(param, metric) = undefined"),
        }
    }
    Ok(())
}

pub fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::GenSeq(args) => cmd_gen_seq(&cli.data_dir, args),
        Command::GenGraphs(args) => cmd_gen_graphs(&cli.data_dir, args),
        Command::ClusterSeq(args) => cmd_cluster_seq(&cli.data_dir, args),
        Command::ClassifyGraphs(args) => cmd_classify_graphs(&cli.data_dir, args),
        Command::Eval(args) => cmd_eval(args),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_lists() {
        assert_eq!(parse_indices("1..15").unwrap().0, (1..=15).collect::<Vec<_>>());
        assert_eq!(parse_indices("1..=3").unwrap().0, vec![1, 2, 3]);
        assert_eq!(parse_indices("4,2, 9").unwrap().0, vec![4, 2, 9]);
        assert!(parse_indices("5..2").is_err());
        assert!(parse_indices("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
