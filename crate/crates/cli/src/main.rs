use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use neolex_core::candidates::{extract_candidates, NoiseLists, ReferenceLists};
use neolex_core::classify::Classifier;
use neolex_core::corpus::{corpus_stats, ingest_corpus, CorpusDocument, LanguageConfig, OnError};
use neolex_core::derivation::{AffixInventory, ModifierThresholds, StemInventory};
use neolex_core::freqcount::{collect_contexts, count_sharded, parse_freq_tsv, threshold_filter, write_freq_tsv};
use neolex_core::lexicon::{self, AggregateReport, ExportFormat, ExportOrder};
use neolex_core::loan::{LoanLexicons, LoanOverrides};
use neolex_core::morphodict::{MorphoDict, PosOverrides};
use neolex_core::resources;
use neolex_core::review::{self, ReviewService};

#[derive(Parser)]
#[command(name = "neolex", version, about = "Mine, classify and review neologisms in a social-media corpus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus size statistics.
    Stats(StatsArgs),
    /// Lemma frequency dictionary.
    Freq(FreqArgs),
    /// OOV frequency list to review candidates.
    Candidates(CandidatesArgs),
    /// Attach derivation and loan-type suggestions to candidates.
    Classify(ClassifyArgs),
    /// Review service.
    Review {
        #[command(subcommand)]
        command: ReviewCommand,
    },
    /// Write the accepted lexicon.
    Export(ExportArgs),
    /// Aggregate counts of a lexicon file.
    Report(ReportArgs),
}

#[derive(Args)]
struct CorpusInput {
    /// Malformed corpus lines abort the run instead of being skipped.
    #[arg(long)]
    strict: bool,
}

impl CorpusInput {
    fn read(&self, path: &Path) -> Result<Vec<CorpusDocument>> {
        let mode = if self.strict { OnError::Abort } else { OnError::Skip };
        Ok(ingest_corpus(path, mode)?)
    }
}

#[derive(Args)]
struct StatsArgs {
    corpus: PathBuf,
    /// Count every document, not only those detected as Russian.
    #[arg(long)]
    no_lang_filter: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    input: CorpusInput,
}

#[derive(Args)]
struct FreqArgs {
    corpus: PathBuf,
    #[arg(long)]
    dict: PathBuf,
    #[arg(long, default_value_t = 1)]
    shards: usize,
    #[arg(long, default_value_t = 1)]
    min_freq: u64,
    /// Keep only lemmas missing from the dictionary.
    #[arg(long)]
    oov_only: bool,
    #[arg(long)]
    no_lang_filter: bool,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    input: CorpusInput,
}

#[derive(Args)]
struct CandidatesArgs {
    freq: PathBuf,
    /// Directory of reference wordlists (`*.txt`).
    #[arg(long)]
    refs: PathBuf,
    /// Directory with abbreviations.txt, fragments.txt, proper_nouns.txt and
    /// ukrainian.txt. Defaults to the bundled lists.
    #[arg(long)]
    noise: Option<PathBuf>,
    #[arg(long)]
    pos_overrides: Option<PathBuf>,
    /// Start flagged and referenced candidates as rejected.
    #[arg(long)]
    auto_reject: bool,
    /// Corpus to draw KWIC contexts from (needs --dict).
    #[arg(long, requires = "dict")]
    corpus: Option<PathBuf>,
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    contexts: usize,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct ClassifyArgs {
    candidates: PathBuf,
    #[arg(long)]
    stems: Option<PathBuf>,
    #[arg(long)]
    affixes: Option<PathBuf>,
    /// Directory with en.txt and fr.txt.
    #[arg(long)]
    loans: Option<PathBuf>,
    #[arg(long)]
    overrides: Option<PathBuf>,
    /// Add dictionary lemmas to the stem inventory as native stems.
    #[arg(long)]
    dict: Option<PathBuf>,
    /// Corpus for noun-modifier ratios.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 0.7)]
    nmod_threshold: f64,
    #[arg(long, default_value_t = 0.3)]
    mixed_threshold: f64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand)]
enum ReviewCommand {
    /// Serve the review HTTP API.
    Serve {
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long)]
        log: PathBuf,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Topic,
    Freq,
}

impl From<Order> for ExportOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Topic => ExportOrder::TopicWord,
            Order::Freq => ExportOrder::FreqDesc,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Tsv => ExportFormat::Tsv,
            Format::Json => ExportFormat::Json,
        }
    }
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    candidates: PathBuf,
    #[arg(long)]
    log: PathBuf,
    /// Defaults to the output file extension, else TSV.
    #[arg(long)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value_t = Order::Topic)]
    order: Order,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    lexicon: PathBuf,
    #[arg(long)]
    json: bool,
    /// Compare against the published counts and print mismatches.
    #[arg(long)]
    check_published: bool,
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match Cli::parse().command {
        Command::Stats(args) => stats(args),
        Command::Freq(args) => freq(args),
        Command::Candidates(args) => candidates(args),
        Command::Classify(args) => classify(args),
        Command::Review { command: ReviewCommand::Serve { candidates, log, port, host } } => serve(candidates, log, SocketAddr::new(host, port)),
        Command::Export(args) => export(args),
        Command::Report(args) => report(args),
    }
}

fn lang_filter(disabled: bool) -> Option<LanguageConfig> {
    (!disabled).then(LanguageConfig::default)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn stats(args: StatsArgs) -> Result<()> {
    let docs = args.input.read(&args.corpus)?;
    let lang = lang_filter(args.no_lang_filter);
    let s = corpus_stats(&docs, lang.as_ref());
    if args.json {
        println!("{}", serde_json::to_string_pretty(&s)?);
        return Ok(());
    }
    let mean = |m: Option<f64>| m.map_or("-".to_string(), |v| format!("{v:.1}"));
    let rows = [
        ("posts", s.n_posts.to_string()),
        ("comments", s.n_comments.to_string()),
        ("texts", s.n_texts.to_string()),
        ("tokens in posts", s.n_tokens_posts.to_string()),
        ("tokens in comments", s.n_tokens_comments.to_string()),
        ("tokens", s.n_tokens_total.to_string()),
        ("mean post length", mean(s.mean_post_len)),
        ("mean comment length", mean(s.mean_comment_len)),
    ];
    for (label, value) in rows {
        println!("{label:<20} {value:>12}");
    }
    Ok(())
}

fn freq(args: FreqArgs) -> Result<()> {
    let docs = args.input.read(&args.corpus)?;
    let dict = MorphoDict::load(&args.dict)?;
    let lang = lang_filter(args.no_lang_filter);
    let map = count_sharded(&docs, &dict, lang.as_ref(), args.shards);
    let records = threshold_filter(&map, args.min_freq, args.oov_only);
    let mut w = create(&args.output)?;
    write_freq_tsv(&mut w, &records)?;
    w.flush()?;
    log::info!("{} tokens, {} cells, {} written", map.total_tokens(), map.len(), records.len());
    Ok(())
}

fn candidates(args: CandidatesArgs) -> Result<()> {
    let text = fs::read_to_string(&args.freq).with_context(|| format!("cannot read {}", args.freq.display()))?;
    let mut records = parse_freq_tsv(&text, &args.freq)?;
    let refs = ReferenceLists::load_dir(&args.refs)?;
    if refs.is_empty() {
        log::warn!("no reference lists in {}", args.refs.display());
    }
    let noise = match &args.noise {
        Some(dir) => NoiseLists::load_dir(dir)?,
        None => resources::noise_lists().clone(),
    };
    let pos_overrides = match &args.pos_overrides {
        Some(path) => PosOverrides::load(path)?,
        None => resources::pos_overrides().clone(),
    };
    if let (Some(corpus), Some(dict)) = (&args.corpus, &args.dict) {
        let docs = ingest_corpus(corpus, OnError::Skip)?;
        let dict = MorphoDict::load(dict)?;
        let targets = records.iter().map(|r| r.lemma.clone()).collect();
        let mut contexts = collect_contexts(&docs, &dict, &targets, args.contexts);
        for r in &mut records {
            r.contexts = contexts.remove(&r.lemma).unwrap_or_default();
        }
    }
    let out = extract_candidates(&records, &noise, &refs, &pos_overrides, args.auto_reject);
    let pending = out.iter().filter(|c| c.status == neolex_core::candidates::Status::Pending).count();
    review::write_candidates(&args.output, &out)?;
    log::info!("{} candidates, {pending} pending", out.len());
    Ok(())
}

fn classify(args: ClassifyArgs) -> Result<()> {
    let base = resources::classifier();
    let mut stems = match &args.stems {
        Some(path) => StemInventory::load(path)?,
        None => base.stems.clone(),
    };
    if let Some(path) = &args.dict {
        stems.extend_from_dictionary(&MorphoDict::load(path)?);
    }
    let modifier = ModifierThresholds { nmod: args.nmod_threshold, mixed: args.mixed_threshold };
    if !(0.0..=1.0).contains(&modifier.mixed) || !(modifier.mixed..=1.0).contains(&modifier.nmod) {
        bail!("thresholds must satisfy 0 <= mixed <= nmod <= 1");
    }
    let classifier = Classifier {
        stems,
        affixes: match &args.affixes {
            Some(path) => AffixInventory::load(path)?,
            None => base.affixes.clone(),
        },
        lexicons: match &args.loans {
            Some(dir) => LoanLexicons::load_dir(dir)?,
            None => base.lexicons.clone(),
        },
        overrides: match &args.overrides {
            Some(path) => LoanOverrides::load(path)?,
            None => base.overrides.clone(),
        },
        modifier,
    };
    let corpus = args.corpus.as_deref().map(|p| ingest_corpus(p, OnError::Skip)).transpose()?;
    let mut candidates = review::load_candidates(&args.candidates)?;
    classifier.annotate(&mut candidates, corpus.as_deref());
    let flagged = candidates.iter().filter(|c| c.suggested.as_ref().is_some_and(|s| s.needs_review)).count();
    write_json(&args.output, &candidates)?;
    log::info!("{} candidates classified, {flagged} flagged for review", candidates.len());
    Ok(())
}

fn serve(candidates: PathBuf, log: PathBuf, addr: SocketAddr) -> Result<()> {
    let service = ReviewService::open(&candidates, log)?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = neolex_server::bind(addr).await?;
        neolex_server::serve(listener, service).await
    })?;
    Ok(())
}

fn export(args: ExportArgs) -> Result<()> {
    let state = review::load_state(&args.candidates, &args.log)?;
    let format = match (args.format, &args.output) {
        (Some(f), _) => f.into(),
        (None, Some(path)) if path.extension().is_some_and(|e| e == "json") => ExportFormat::Json,
        _ => ExportFormat::Tsv,
    };
    let doc = state.export(format, args.order.into());
    match &args.output {
        Some(path) => fs::write(path, doc).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{doc}"),
    }
    Ok(())
}

fn report(args: ReportArgs) -> Result<()> {
    let entries = lexicon::load(&args.lexicon)?;
    let report = AggregateReport::new(&entries);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.render());
    }
    for axis in report.inconsistent_axes() {
        log::error!("breakdown `{axis}` does not sum to {}", report.size);
    }
    if args.check_published {
        for check in lexicon::check_published_counts(&entries) {
            if let Some(w) = check.warning() {
                log::warn!("{w}");
            }
        }
    }
    Ok(())
}
