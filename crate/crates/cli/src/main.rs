use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use seqgauntlet::gate::{
    self, AcceptanceRanges, ConformityReport, ValidityReport, DEFAULT_CONFORMITY_THRESHOLD, DEFAULT_NEIGHBOURS,
    DEFAULT_QUANTILE_MASS,
};
use seqgauntlet::io::{format_real, parse_fasta, parse_scored_csv, parse_sequence_csv, write_scored_csv};
use seqgauntlet::lab::{self, Landscape, Oracle, OracleKind, OracleModel, SplitSpec};
use seqgauntlet::measures::measure_sequence;
use seqgauntlet::rank::{self, BatchScores, ConsistencyReport, MethodBatch, RankTable, SeedAggregation, StatisticKind};
use seqgauntlet::{filter_by_length, tables, Alphabet, MeasureTable, Sequence};

const TABLES_ENV: &str = "SEQGAUNTLET_TABLES";

/// Evaluation toolkit for biological sequence design.
#[derive(Debug, Parser)]
#[command(name = "seqgauntlet", version, arg_required_else_help = true)]
struct Cli {
    /// Dump the embedded constant tables as JSON (to $SEQGAUNTLET_TABLES if set, else stdout) and exit
    #[arg(long, exclusive = true)]
    tables: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the measure vector of every sequence (CSV)
    Measures(MeasuresArgs),
    /// Compute per-measure acceptance ranges from a reference set (JSON)
    Ranges(RangesArgs),
    /// Validate a batch against acceptance ranges, optionally with conformity scores
    Validate(ValidateArgs),
    /// Rank design methods by oracle-scored batches and measure ranking consistency
    Rank(RankArgs),
    /// Synthetic landscape and learned-oracle laboratory
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Summarize validate reports as CSV (method, n, percent_valid, top failing measure)
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlphabetArg {
    Dna,
    Protein,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Self {
        match a {
            AlphabetArg::Dna => Alphabet::Dna,
            AlphabetArg::Protein => Alphabet::Protein,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StatisticArg {
    Max,
    Mean,
    Median,
}

impl From<StatisticArg> for StatisticKind {
    fn from(s: StatisticArg) -> Self {
        match s {
            StatisticArg::Max => StatisticKind::Max,
            StatisticArg::Mean => StatisticKind::Mean,
            StatisticArg::Median => StatisticKind::Median,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AggregationArg {
    /// Statistic per design seed, averaged over seeds
    MeanOfSeeds,
    /// Statistic over all design seeds' scores pooled
    Pooled,
}

impl From<AggregationArg> for SeedAggregation {
    fn from(a: AggregationArg) -> Self {
        match a {
            AggregationArg::MeanOfSeeds => SeedAggregation::MeanOfSeeds,
            AggregationArg::Pooled => SeedAggregation::Pooled,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Lookup,
    Ridge,
    Mlp,
}

impl From<KindArg> for OracleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Lookup => OracleKind::Lookup,
            KindArg::Ridge => OracleKind::Ridge,
            KindArg::Mlp => OracleKind::Mlp,
        }
    }
}

/// How sequence files are read: FASTA, or CSV with a `sequence` column.
#[derive(Debug, Args)]
struct SequenceInput {
    /// Residue alphabet of sequence inputs (not needed for measure-table CSVs)
    #[arg(long, value_enum)]
    alphabet: Option<AlphabetArg>,

    /// Drop sequences shorter than this
    #[arg(long, default_value_t = 0)]
    min_len: usize,

    /// Drop sequences longer than this
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Debug, Args)]
struct MeasuresArgs {
    /// FASTA or sequence CSV
    input: PathBuf,

    #[command(flatten)]
    seqs: SequenceInput,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RangesArgs {
    /// Reference set: FASTA, sequence CSV, or measure-table CSV
    reference: PathBuf,

    #[command(flatten)]
    seqs: SequenceInput,

    /// Probability mass of the middle quantile interval
    #[arg(long, default_value_t = DEFAULT_QUANTILE_MASS, value_parser = parse_quantile_mass)]
    quantile_mass: f64,

    /// Reference name recorded in the output (defaults to the file stem)
    #[arg(long)]
    name: Option<String>,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Batch: FASTA, sequence CSV, or measure-table CSV
    batch: PathBuf,

    /// Acceptance ranges JSON produced by `ranges`
    #[arg(long)]
    ranges: PathBuf,

    #[command(flatten)]
    seqs: SequenceInput,

    /// Also compute conformity scores against this reference set
    #[arg(long)]
    dcs: Option<PathBuf>,

    /// Neighbours used by the conformity score
    #[arg(long, default_value_t = DEFAULT_NEIGHBOURS, value_parser = parse_neighbours)]
    k: usize,

    /// Minimum conformity score for a sequence to count as valid
    #[arg(long, default_value_t = DEFAULT_CONFORMITY_THRESHOLD, value_parser = parse_unit_interval)]
    threshold: f64,

    /// Batch name recorded in the output (defaults to the file stem)
    #[arg(long)]
    name: Option<String>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RankArgs {
    /// Directory of batch CSVs named <method>.<seed>.csv
    #[arg(long)]
    batches: PathBuf,

    /// Oracle model JSON; repeat for several evaluators
    #[arg(long = "oracle", required = true)]
    oracles: Vec<PathBuf>,

    /// Comma-separated methods that must all be present (default: every method found)
    #[arg(long, value_delimiter = ',')]
    methods: Vec<String>,

    /// Per-batch statistic used for ranking
    #[arg(long, value_enum, default_value_t = StatisticArg::Max)]
    statistic: StatisticArg,

    /// How batches from several design seeds are combined
    #[arg(long, value_enum, default_value_t = AggregationArg::MeanOfSeeds)]
    seed_aggregation: AggregationArg,

    /// Write every score as CSV (sequence, score, evaluator)
    #[arg(long)]
    scores_out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Enumerate a synthetic NK landscape over all DNA sequences of a length (CSV)
    Synth(SynthArgs),
    /// Fit an oracle on a training split of a landscape (JSON)
    Train(TrainArgs),
    /// Absolute-error histograms on the train and held-out partitions (JSON)
    Eval(EvalArgs),
    /// Score the four homopolymers and flag out-of-range predictions
    Probe(ProbeArgs),
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Seed of the contribution tables
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Neighbours interacting with each position
    #[arg(long, default_value_t = 2)]
    k: usize,

    /// Sequence length; the landscape has 4^length entries
    #[arg(long, default_value_t = 8, value_parser = parse_length)]
    length: usize,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SplitArgs {
    /// Fraction of the landscape used for training, in (0, 1)
    #[arg(long, value_parser = parse_fraction)]
    fraction: Option<f64>,

    /// Seed of the train/held-out shuffle
    #[arg(long)]
    split_seed: Option<u64>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Landscape CSV (sequence,score)
    #[arg(long)]
    landscape: PathBuf,

    /// Oracle family
    #[arg(long, value_enum, default_value_t = KindArg::Mlp)]
    kind: KindArg,

    /// Fraction of the landscape used for training, in (0, 1)
    #[arg(long, default_value_t = 0.01, value_parser = parse_fraction)]
    fraction: f64,

    /// Seed of the train/held-out shuffle
    #[arg(long, default_value_t = 0)]
    split_seed: u64,

    /// Training seed (network initialization)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Landscape CSV (sequence,score)
    #[arg(long)]
    landscape: PathBuf,

    /// Oracle model JSON
    #[arg(long)]
    model: PathBuf,

    /// Override the split recorded in the model (required for lookup oracles)
    #[command(flatten)]
    split: SplitArgs,

    /// Also write every error as CSV (error, partition)
    #[arg(long)]
    errors_out: Option<PathBuf>,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProbeArgs {
    /// Landscape CSV (sequence,score)
    #[arg(long)]
    landscape: PathBuf,

    /// Oracle model JSON
    #[arg(long)]
    model: PathBuf,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// JSON outputs of `validate`
    #[arg(required = true)]
    reports: Vec<PathBuf>,

    /// Output path (stdout if omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_real(s: &str) -> Result<f64, String> {
    s.parse::<f64>().map_err(|_| format!("'{s}' is not a number"))
}

fn parse_neighbours(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("'{s}' is not a positive integer")),
    }
}

fn parse_length(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if (1..=lab::MAX_LANDSCAPE_LENGTH).contains(&n) => Ok(n),
        _ => Err(format!("'{s}' is not in 1..={}", lab::MAX_LANDSCAPE_LENGTH)),
    }
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is not in (0, 1)"))
    }
}

fn parse_quantile_mass(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    if x > 0.0 && x <= 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is not in (0, 1]"))
    }
}

fn parse_unit_interval(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is not in [0, 1]"))
    }
}

/// Output of `validate --format json`, and input of `report`.
#[derive(Debug, Serialize, Deserialize)]
struct ValidateOutput {
    validity: ValidityReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    conformity: Option<ConformityReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    agreement: Option<f64>,
}

#[derive(Debug, Serialize)]
struct RankOutput {
    statistic: StatisticKind,
    seed_aggregation: SeedAggregation,
    tables: Vec<RankTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    consistency: Option<ConsistencyReport>,
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn json_bytes(text: String) -> Vec<u8> {
    let mut bytes = text.into_bytes();
    bytes.push(b'\n');
    bytes
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn is_measure_table(path: &Path, text: &str) -> bool {
    is_csv(path) && text.lines().next().is_some_and(|h| h.split(',').next() == Some("id"))
}

fn load_sequences(path: &Path, text: &str, opts: &SequenceInput) -> Result<Vec<Sequence>> {
    let alphabet: Alphabet = opts
        .alphabet
        .ok_or_else(|| anyhow!("{}: --alphabet is required for sequence inputs", path.display()))?
        .into();
    let seqs = if is_csv(path) {
        parse_sequence_csv(text.as_bytes(), alphabet)
    } else {
        parse_fasta(text.as_bytes(), alphabet)
    }
    .with_context(|| format!("parsing {}", path.display()))?;
    let kept = filter_by_length(&seqs, opts.min_len, opts.max_len.unwrap_or(usize::MAX));
    if kept.is_empty() {
        bail!("{}: no sequences left after the length filter", path.display());
    }
    if kept.len() < seqs.len() {
        log::info!(
            "{}: length filter kept {} of {} sequences",
            path.display(),
            kept.len(),
            seqs.len()
        );
    }
    Ok(kept)
}

fn measure_table(path: &Path, seqs: &[Sequence]) -> Result<MeasureTable> {
    let mut table: Option<MeasureTable> = None;
    for (i, seq) in seqs.iter().enumerate() {
        let id = seq.id().map_or_else(|| (i + 1).to_string(), str::to_string);
        let v = measure_sequence(seq).with_context(|| format!("{}: sequence '{id}'", path.display()))?;
        let t = table.get_or_insert_with(|| MeasureTable::new(v.names.clone()));
        t.push(id, v.values)?;
    }
    table.ok_or_else(|| anyhow!("{}: no sequences", path.display()))
}

/// Reads a measure-table CSV as is, or measures a FASTA / sequence CSV.
fn load_measures(path: &Path, opts: &SequenceInput) -> Result<MeasureTable> {
    let text = read(path)?;
    if is_measure_table(path, &text) {
        return MeasureTable::read_csv(text.as_bytes()).with_context(|| format!("parsing {}", path.display()));
    }
    let seqs = load_sequences(path, &text, opts)?;
    measure_table(path, &seqs)
}

fn load_landscape(path: &Path) -> Result<Landscape> {
    let text = read(path)?;
    let dataset = parse_scored_csv(text.as_bytes(), Alphabet::Dna, true, &stem(path))
        .with_context(|| format!("parsing {}", path.display()))?;
    lab::load_landscape(&dataset).with_context(|| format!("loading landscape {}", path.display()))
}

fn load_model(path: &Path) -> Result<OracleModel> {
    OracleModel::from_json(&read(path)?).with_context(|| format!("loading oracle {}", path.display()))
}

fn cmd_measures(args: &MeasuresArgs) -> Result<()> {
    let text = read(&args.input)?;
    let seqs = load_sequences(&args.input, &text, &args.seqs)?;
    let table = measure_table(&args.input, &seqs)?;
    let mut buf = Vec::new();
    table.write_csv(&mut buf)?;
    emit(args.out.as_deref(), &buf)
}

fn cmd_ranges(args: &RangesArgs) -> Result<()> {
    let table = load_measures(&args.reference, &args.seqs)?;
    let name = args.name.clone().unwrap_or_else(|| stem(&args.reference));
    let ranges = gate::compute_ranges(&table, args.quantile_mass, &name)
        .with_context(|| format!("computing ranges from {}", args.reference.display()))?;
    emit(args.out.as_deref(), &json_bytes(ranges.to_json()?))
}

fn cmd_validate(args: &ValidateArgs) -> Result<()> {
    let ranges = AcceptanceRanges::from_json(&read(&args.ranges)?)
        .with_context(|| format!("parsing {}", args.ranges.display()))?;
    let batch = load_measures(&args.batch, &args.seqs)?;
    let name = args.name.clone().unwrap_or_else(|| stem(&args.batch));
    let validity = gate::validate_batch(&batch, &ranges, &name)
        .with_context(|| format!("validating {} against {}", args.batch.display(), args.ranges.display()))?;

    let (conformity, agreement) = match &args.dcs {
        Some(reference_path) => {
            let reference = load_measures(reference_path, &args.seqs)?;
            let report = gate::conformity_scores(&batch, &reference, args.k, args.threshold)
                .with_context(|| format!("conformity scores against {}", reference_path.display()))?;
            let agree = gate::agreement(&validity, &report)?;
            (Some(report), Some(agree))
        }
        None => (None, None),
    };

    let bytes = match args.format {
        Format::Json => json_bytes(serde_json::to_string_pretty(&ValidateOutput {
            validity,
            conformity,
            agreement,
        })?),
        Format::Csv => {
            let mut buf = Vec::new();
            gate::write_summary_csv(&mut buf, std::slice::from_ref(&validity))?;
            buf
        }
    };
    emit(args.out.as_deref(), &bytes)
}

/// Splits `<method>.<seed>.csv`.
fn parse_batch_name(path: &Path) -> Result<(String, u64)> {
    let stem = stem(path);
    let (method, seed) = stem
        .rsplit_once('.')
        .ok_or_else(|| anyhow!("{}: batch files must be named <method>.<seed>.csv", path.display()))?;
    let seed = seed
        .parse()
        .map_err(|_| anyhow!("{}: design seed '{seed}' is not a non-negative integer", path.display()))?;
    if method.is_empty() {
        bail!("{}: empty method name", path.display());
    }
    Ok((method.to_string(), seed))
}

fn load_batches(dir: &Path, alphabet: Alphabet, methods: &[String]) -> Result<Vec<MethodBatch>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading batch directory {}", dir.display()))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| is_csv(p));
    let mut batches = Vec::new();
    for path in paths {
        let (method_name, design_seed) = parse_batch_name(&path)?;
        if !methods.is_empty() && !methods.contains(&method_name) {
            continue;
        }
        let sequences = parse_sequence_csv(read(&path)?.as_bytes(), alphabet)
            .with_context(|| format!("parsing {}", path.display()))?;
        batches.push(MethodBatch {
            method_name,
            sequences,
            design_seed,
        });
    }
    batches.sort_by(|a, b| (&a.method_name, a.design_seed).cmp(&(&b.method_name, b.design_seed)));
    for m in methods {
        if !batches.iter().any(|b| &b.method_name == m) {
            bail!("no batch file for method '{m}' in {}", dir.display());
        }
    }
    if batches.is_empty() {
        bail!("no batch files (<method>.<seed>.csv) in {}", dir.display());
    }
    Ok(batches)
}

fn cmd_rank(args: &RankArgs) -> Result<()> {
    let oracles = args.oracles.iter().map(|p| load_model(p)).collect::<Result<Vec<_>>>()?;
    let mut ids = BTreeMap::new();
    for (model, path) in oracles.iter().zip(&args.oracles) {
        if let Some(previous) = ids.insert(model.evaluator_id(), path) {
            bail!(
                "{} and {} share evaluator id '{}'",
                previous.display(),
                path.display(),
                model.evaluator_id()
            );
        }
    }
    let alphabet = oracles[0].alphabet();
    let batches = load_batches(&args.batches, alphabet, &args.methods)?;

    let statistic: StatisticKind = args.statistic.into();
    let aggregation: SeedAggregation = args.seed_aggregation.into();
    let mut tables = Vec::with_capacity(oracles.len());
    let mut all_scores: Vec<(String, Vec<BatchScores>)> = Vec::new();
    for oracle in &oracles {
        let id = oracle.evaluator_id();
        let scores = rank::score_batches(&batches, oracle).with_context(|| format!("scoring with oracle '{id}'"))?;
        tables.push(rank::rank_seeded(&scores, statistic, aggregation, &id)?);
        all_scores.push((id, scores));
    }

    if let Some(path) = &args.scores_out {
        let mut buf = b"sequence,score,evaluator\n".to_vec();
        for (id, scores) in &all_scores {
            for (batch, scored) in batches.iter().zip(scores) {
                for (seq, score) in batch.sequences.iter().zip(&scored.scores) {
                    writeln!(buf, "{},{},{id}", seq.residues(), format_real(*score))?;
                }
            }
        }
        emit(Some(path), &buf)?;
    }

    let consistency = if tables.len() >= 2 {
        Some(rank::consistency_report(&tables)?)
    } else {
        None
    };
    let bytes = match args.format {
        Format::Json => json_bytes(serde_json::to_string_pretty(&RankOutput {
            statistic,
            seed_aggregation: aggregation,
            tables,
            consistency,
        })?),
        Format::Csv => {
            let mut buf = Vec::new();
            match &consistency {
                Some(report) => report.write_rank_matrix_csv(&mut buf)?,
                None => {
                    let table = &tables[0];
                    writeln!(buf, "method,{}", table.evaluator_id)?;
                    for (i, row) in table.rows.iter().enumerate() {
                        writeln!(buf, "{},{}", row.method, i + 1)?;
                    }
                }
            }
            buf
        }
    };
    emit(args.out.as_deref(), &bytes)
}

fn cmd_synth(args: &SynthArgs) -> Result<()> {
    let landscape = lab::synth_landscape(args.seed, args.k, args.length)?;
    let mut buf = Vec::new();
    write_scored_csv(&mut buf, &landscape.entries())?;
    emit(args.out.as_deref(), &buf)
}

fn cmd_train(args: &TrainArgs) -> Result<()> {
    let split = SplitSpec::new(args.fraction, args.split_seed)?;
    let landscape = load_landscape(&args.landscape)?;
    let model = lab::train_oracle(&landscape, &split, args.kind.into(), args.seed)?;
    emit(args.out.as_deref(), &json_bytes(model.to_json()?))
}

fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let model = load_model(&args.model)?;
    let recorded = model.training.split;
    let fraction = args.split.fraction.or(recorded.map(|s| s.train_fraction));
    let split_seed = args.split.split_seed.or(recorded.map(|s| s.split_seed));
    let split = match (fraction, split_seed) {
        (Some(f), Some(seed)) => SplitSpec::new(f, seed)?,
        _ => bail!(
            "{} records no training split; pass --fraction and --split-seed",
            args.model.display()
        ),
    };
    let landscape = load_landscape(&args.landscape)?;
    let histogram = lab::evaluate_oracle(&model, &landscape, &split)?;
    if let Some(path) = &args.errors_out {
        let mut buf = Vec::new();
        histogram.write_errors_csv(&mut buf)?;
        emit(Some(path), &buf)?;
    }
    emit(args.out.as_deref(), &json_bytes(histogram.to_json()?))
}

fn cmd_probe(args: &ProbeArgs) -> Result<()> {
    let model = load_model(&args.model)?;
    let landscape = load_landscape(&args.landscape)?;
    let report = lab::ood_probe(&model, &landscape)?;
    let bytes = match args.format {
        Format::Json => json_bytes(serde_json::to_string_pretty(&report)?),
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            buf
        }
    };
    emit(args.out.as_deref(), &bytes)
}

fn cmd_report(args: &ReportArgs) -> Result<()> {
    let reports = args
        .reports
        .iter()
        .map(|path| {
            let output: ValidateOutput = serde_json::from_str(&read(path)?)
                .with_context(|| format!("parsing validate report {}", path.display()))?;
            Ok(output.validity)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut buf = Vec::new();
    gate::write_summary_csv(&mut buf, &reports)?;
    emit(args.out.as_deref(), &buf)
}

fn cmd_tables() -> Result<()> {
    let dump = json_bytes(tables::tables_json());
    match std::env::var_os(TABLES_ENV) {
        Some(path) => emit(Some(Path::new(&path)), &dump),
        None => emit(None, &dump),
    }
}

fn run(cli: Cli) -> Result<()> {
    if cli.tables {
        return cmd_tables();
    }
    match cli.command.ok_or_else(|| anyhow!("no subcommand given"))? {
        Command::Measures(args) => cmd_measures(&args),
        Command::Ranges(args) => cmd_ranges(&args),
        Command::Validate(args) => cmd_validate(&args),
        Command::Rank(args) => cmd_rank(&args),
        Command::Oracle(OracleCommand::Synth(args)) => cmd_synth(&args),
        Command::Oracle(OracleCommand::Train(args)) => cmd_train(&args),
        Command::Oracle(OracleCommand::Eval(args)) => cmd_eval(&args),
        Command::Oracle(OracleCommand::Probe(args)) => cmd_probe(&args),
        Command::Report(args) => cmd_report(&args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::FAILURE;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
