mod server;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use hotelrec_core::fixtures::sample_snapshot;
use hotelrec_core::ingest::{load_hotels, load_sources, parse_review_file, FileStore, SnapshotStore};
use hotelrec_core::recommend::{
    measure_timings, recommend, run_incremental_eval, split_reviews, timings_to_csv, EvalSettings, IncrementalSchedule,
    RecommendQuery, RelevanceOracle,
};
use hotelrec_core::{CorpusSnapshot, Engine, EngineConfig, GuestType, ScoredCorpus, ServiceState};

const SCORES: &str = "scores.json";

#[derive(Parser)]
#[command(
    name = "hotelrec",
    version,
    about = "Multi-source hotel review scoring and recommendation"
)]
struct Cli {
    /// Engine configuration (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory holding the corpus snapshot and computed scores.
    #[arg(long, global = true, default_value = "hotelrec-data")]
    store: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse metadata and review files into a snapshot.
    Ingest {
        /// Source descriptors CSV.
        #[arg(long, required_unless_present = "sample")]
        sources: Option<PathBuf>,
        /// Hotel metadata CSV.
        #[arg(long, required_unless_present = "sample")]
        hotels: Option<PathBuf>,
        /// Review file for a source, as SOURCE_ID=PATH. Repeatable.
        #[arg(long = "reviews", value_name = "SOURCE_ID=PATH")]
        reviews: Vec<String>,
        /// Use the bundled sample corpus instead of files.
        #[arg(long, conflicts_with_all = ["sources", "hotels", "reviews"])]
        sample: bool,
    },
    /// Run the analysis pipeline and store per-hotel scores.
    Score,
    /// Rank hotels for a guest type.
    Recommend {
        #[arg(long)]
        guest_type: GuestType,
        #[arg(long)]
        city: Option<String>,
        #[arg(long)]
        region: Option<String>,
        /// Case-insensitive substring of the hotel name.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        min_rating: Option<f64>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Incremental precision/recall evaluation, written as CSV.
    Eval {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the JSON query API.
    Serve {
        #[arg(long)]
        port: Option<u16>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
    /// Load/search/execution timings per guest type, written as CSV.
    Timings {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(p) => EngineConfig::load(p).with_context(|| format!("loading {}", p.display()))?,
        None => EngineConfig::default(),
    };
    let store = FileStore::new(&cli.store);

    match cli.command {
        Command::Ingest {
            sources,
            hotels,
            reviews,
            sample,
        } => {
            let snapshot = if sample {
                sample_snapshot()?
            } else {
                // both are required by clap unless --sample is given
                ingest_files(sources.as_deref().unwrap(), hotels.as_deref().unwrap(), &reviews)?
            };
            save_snapshot(&store, &snapshot)?;
            println!(
                "ingested {} sources, {} hotels, {} reviews into {}",
                snapshot.sources.len(),
                snapshot.hotels.len(),
                snapshot.reviews.len(),
                store.dir().display()
            );
        }
        Command::Score => {
            let snapshot = load_snapshot(&store)?;
            let scores = Engine::new(config)?.score(&snapshot)?;
            store.save_artifact(SCORES, &scores)?;
            println!("scored {} hotels", scores.aggregates.len());
        }
        Command::Recommend {
            guest_type,
            city,
            region,
            name,
            min_rating,
            limit,
        } => {
            let state = load_state(&store, &config)?;
            let mut query = RecommendQuery::new(guest_type);
            query.filter.city = city;
            query.filter.region = region;
            query.filter.name_contains = name;
            query.filter.min_rating = min_rating;
            let mut entries = recommend(&query, &state.snapshot, &state.scores)?;
            entries.truncate(limit.unwrap_or(config.result_limit));
            println!("{}", serde_json::to_string_pretty(&entries)?);
        }
        Command::Eval { seed, out } => {
            let snapshot = load_snapshot(&store)?;
            let schedule = IncrementalSchedule::with_seed(seed.unwrap_or(config.seed));
            let (_, test) = split_reviews(&snapshot.reviews, &schedule);
            let oracle = RelevanceOracle::from_reviews(&test, &snapshot, config.relevance_threshold);
            let settings = EvalSettings {
                guest_type: config.eval_guest_type,
                top_n: config.top_n,
            };
            let engine = Engine::new(config)?;
            let table = run_incremental_eval(&engine, &snapshot, &schedule, &oracle, settings)?;
            emit(out.as_deref(), &table.to_csv()?)?;
        }
        Command::Serve { port, host } => {
            let state = load_state(&store, &config)?;
            let port = port.unwrap_or(config.port);
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(server::serve(state, config.result_limit, &host, port))?;
        }
        Command::Timings { out } => {
            let engine = Engine::new(config)?;
            let mut rows = Vec::new();
            for guest in GuestType::ALL {
                let (report, result) = measure_timings(
                    || -> Result<ServiceState> {
                        let snapshot = load_snapshot(&store)?;
                        let scores = cached_or_scored(&store, &engine, &snapshot)?;
                        Ok(ServiceState { snapshot, scores })
                    },
                    |state| -> Result<usize> {
                        let state = state?;
                        Ok(recommend(&RecommendQuery::new(guest), &state.snapshot, &state.scores)?.len())
                    },
                );
                result?;
                rows.push((format!("recommend:{guest}"), report));
            }
            emit(out.as_deref(), &timings_to_csv(&rows)?)?;
        }
    }
    Ok(())
}

fn ingest_files(sources: &Path, hotels: &Path, reviews: &[String]) -> Result<CorpusSnapshot> {
    let sources = load_sources(sources)?;
    let hotels = load_hotels(hotels)?;
    let mut records = Vec::new();
    for spec in reviews {
        let Some((source_id, path)) = spec.split_once('=') else {
            bail!("--reviews expects SOURCE_ID=PATH, got {spec:?}");
        };
        let Some(source) = sources.iter().find(|s| s.source_id == source_id) else {
            bail!("unknown source {source_id:?} in --reviews");
        };
        let parsed = parse_review_file(path, source)?;
        if parsed.skipped > 0 {
            log::warn!("{path}: skipped {} of {} reviews", parsed.skipped, parsed.total());
        }
        records.extend(parsed.records);
    }
    let snapshot = CorpusSnapshot::new(sources, hotels, records);
    snapshot.validate()?;
    Ok(snapshot)
}

fn save_snapshot(store: &FileStore, snapshot: &CorpusSnapshot) -> Result<()> {
    store.save(snapshot)?;
    // scores computed from an earlier snapshot are no longer valid
    let stale = store.dir().join(SCORES);
    if stale.exists() {
        std::fs::remove_file(&stale).with_context(|| format!("removing {}", stale.display()))?;
    }
    Ok(())
}

fn load_snapshot(store: &FileStore) -> Result<CorpusSnapshot> {
    if !store.exists() {
        bail!("no snapshot in {}; run `hotelrec ingest` first", store.dir().display());
    }
    Ok(store.load()?)
}

fn cached_or_scored(store: &FileStore, engine: &Engine, snapshot: &CorpusSnapshot) -> Result<ScoredCorpus> {
    match store.load_artifact(SCORES)? {
        Some(scores) => Ok(scores),
        None => {
            log::info!("no stored scores, scoring snapshot");
            Ok(engine.score(snapshot)?)
        }
    }
}

fn load_state(store: &FileStore, config: &EngineConfig) -> Result<ServiceState> {
    let snapshot = load_snapshot(store)?;
    let scores = match store.load_artifact(SCORES)? {
        Some(scores) => scores,
        None => Engine::new(config.clone())?.score(&snapshot)?,
    };
    Ok(ServiceState { snapshot, scores })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
