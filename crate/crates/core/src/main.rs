use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use braceforge::construct::{census_records, enumerate_braces, oracle_enumerate_braces, ORACLE_MAX_ORDER};
use braceforge::group::catalog::GroupCatalog;
use braceforge::io::{read_json, to_json_string, BraceFile, SolutionFile};
use braceforge::report::{self, Scope};
use braceforge::structure::{chief_series, derived_series};
use braceforge::ybe::{
    decomposable_partitions, embedded_multidecomposition, is_p_decomposable, multidecomposition_from_series,
    two_block_decomposition, Partition, EXHAUSTIVE_PARTITION_MAX,
};
use braceforge::{brace::is_isomorphic, Bounds, ElementSet, Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "braceforge",
    version,
    about = "Finite skew braces and their Yang-Baxter solutions"
)]
struct Cli {
    /// Largest order for verification sweeps and enumeration.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Allow sweeps up to order 12.
    #[arg(long, global = true)]
    slow: bool,
    /// Cross-check enumeration against the brute-force oracle.
    #[arg(long, global = true)]
    oracle_check: bool,
    /// Extra group tables (JSON array of group files).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every brace of the given order up to isomorphism, as JSON lines.
    Enumerate {
        #[arg(long)]
        order: usize,
    },
    /// Structural dossier of a brace file.
    Analyze {
        file: PathBuf,
        /// Also enumerate every chief series (order at most 8).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Run a verification sweep: A, B, C, D, lemma-GIntG or prop-central-commut.
    Verify {
        #[arg(value_parser = parse_scope)]
        scope: Scope,
    },
    /// Multidecomposition witness for a brace, or a decomposability check for a solution.
    Decompose {
        /// Brace file; the witness comes from one of its series.
        #[arg(long, conflicts_with = "solution", required_unless_present = "solution")]
        brace: Option<PathBuf>,
        /// Series of the brace the witness is read from.
        #[arg(long, value_enum, default_value_t = SeriesChoice::Chief)]
        series: SeriesChoice,
        /// Solution file.
        #[arg(long)]
        solution: Option<PathBuf>,
        /// Partition to test on a solution.
        #[arg(long, value_enum, requires = "solution")]
        partition: Option<PartitionChoice>,
        /// Brace into whose solution the given solution embeds.
        #[arg(long, requires = "solution", requires = "embed")]
        embed_brace: Option<PathBuf>,
        /// Images of 0..|X| in the brace, comma separated.
        #[arg(long, value_delimiter = ',', requires = "embed_brace")]
        embed: Option<Vec<usize>>,
    },
    /// Brute-force enumeration of all braces of a small order.
    Oracle {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PartitionChoice {
    Singletons,
    Whole,
    /// Search for any decomposition into at least two blocks.
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesChoice {
    Chief,
    Derived,
}

fn parse_scope(s: &str) -> std::result::Result<Scope, String> {
    Scope::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Scope::ALL.iter().map(|s| s.name()).collect();
        format!("unknown scope {s:?}; expected one of {}", names.join(", "))
    })
}

/// Resolved settings for one invocation.
struct RunConfig {
    bounds: Bounds,
    catalog: GroupCatalog,
    max_order: Option<usize>,
    out: Option<PathBuf>,
    slow: bool,
    oracle_check: bool,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self> {
        let bounds = Bounds::from_env()?;
        if cli.max_order == Some(0) {
            return Err(Error::InvalidInput("--max-order must be positive".into()));
        }
        if let Some(out) = &cli.out {
            let parent = out
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            if !parent.is_dir() {
                return Err(Error::InvalidInput(format!(
                    "output directory {} does not exist",
                    parent.display()
                )));
            }
        }
        let mut catalog = GroupCatalog::builtin();
        if let Some(path) = &cli.catalog {
            catalog = catalog.with_file(path, &bounds)?;
        }
        Ok(Self {
            bounds,
            catalog,
            max_order: cli.max_order,
            out: cli.out.clone(),
            slow: cli.slow,
            oracle_check: cli.oracle_check,
        })
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    /// Summary lines go to stdout when the main output goes to a file.
    fn summary(&self, line: &str) {
        if self.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CatalogMissing(_) => 2,
        Error::BoundExceeded { .. } => 3,
        Error::TheoremViolation { .. } => 5,
        Error::NotSoluble { .. } => 6,
        Error::EmptyTable
        | Error::NotSquare { .. }
        | Error::OrderMismatch { .. }
        | Error::NotClosed { .. }
        | Error::NotLatin { .. }
        | Error::NoIdentityAtZero { .. }
        | Error::NotAssociative { .. }
        | Error::NoInverse { .. }
        | Error::GroupInvalid { .. }
        | Error::BraceAxiomFailed { .. }
        | Error::Degenerate(_)
        | Error::NotBijective(_)
        | Error::BraidFailed { .. }
        | Error::PartitionInvalid(_)
        | Error::EmbeddingIncompatible { .. }
        | Error::HypothesisFailed(_)
        | Error::SeriesInvalid { .. }
        | Error::NotAnIdeal(_)
        | Error::NotASubbrace(_)
        | Error::NotRegular(_)
        | Error::NotProper
        | Error::QuotientNotAbelian
        | Error::Json(_)
        | Error::InvalidInput(_)
        | Error::Io(_) => 4,
        Error::NotSimple(_) | Error::InternalInvariant(_) => 1,
    }
}

fn cmd_enumerate(cfg: &RunConfig, n: usize) -> Result<()> {
    if let Some(max) = cfg.max_order {
        if n > max {
            return Err(Error::BoundExceeded {
                what: "enumeration order",
                size: n,
                bound: max,
            });
        }
    }
    let census = enumerate_braces(n, &cfg.catalog, &cfg.bounds)?;
    if cfg.oracle_check {
        if n > ORACLE_MAX_ORDER {
            return Err(Error::BoundExceeded {
                what: "oracle cross-check order",
                size: n,
                bound: ORACLE_MAX_ORDER,
            });
        }
        let oracle = oracle_enumerate_braces(n, &cfg.catalog)?;
        let matched = oracle.len() == census.len()
            && oracle
                .iter()
                .all(|o| census.iter().any(|e| is_isomorphic(&e.brace, o).is_some()));
        if !matched {
            return Err(Error::InternalInvariant(format!(
                "enumeration found {} classes of order {n}, the oracle {}",
                census.len(),
                oracle.len()
            )));
        }
        cfg.summary(&format!("oracle agrees: {} classes", oracle.len()));
    }
    let mut text = String::new();
    for record in census_records(&census, &cfg.catalog)? {
        text.push_str(&serde_json::to_string(&record)?);
        text.push('\n');
    }
    cfg.emit(&text)?;
    cfg.summary(&format!("order {n}: {} classes", census.len()));
    Ok(())
}

fn cmd_analyze(cfg: &RunConfig, file: &Path, exhaustive: bool) -> Result<()> {
    let brace = read_json::<BraceFile>(file)?.into_brace(&cfg.bounds)?;
    let dossier = report::analyze(&brace, exhaustive, &cfg.bounds)?;
    cfg.emit(&to_json_string(&dossier)?)?;
    let length = dossier.derived_length.map_or("none".to_string(), |l| l.to_string());
    cfg.summary(&format!(
        "order {}: soluble {}, derived length {length}, {} ideals",
        dossier.order,
        dossier.soluble,
        dossier.ideals.len()
    ));
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, scope: Scope) -> Result<()> {
    let max = cfg.max_order.unwrap_or(report::DEFAULT_SWEEP_ORDER);
    let result = report::verify(scope, max, cfg.slow, &cfg.catalog, &cfg.bounds)?;
    cfg.emit(&to_json_string(&result)?)?;
    cfg.summary(&format!("verify {}: pass; {}", scope.name(), result.summary));
    Ok(())
}

fn cmd_decompose(
    cfg: &RunConfig,
    brace: Option<&Path>,
    series: SeriesChoice,
    solution: Option<&Path>,
    partition: Option<PartitionChoice>,
    embed_brace: Option<&Path>,
    embed: Option<&[usize]>,
) -> Result<()> {
    if let Some(path) = brace {
        let brace = read_json::<BraceFile>(path)?.into_brace(&cfg.bounds)?;
        let derived = derived_series(&brace)?;
        if !derived.reaches_zero() {
            return Err(Error::NotSoluble {
                stable_order: derived.chain.last().expect("non-empty").len(),
            });
        }
        let chain = match series {
            SeriesChoice::Derived => derived.chain,
            SeriesChoice::Chief => chief_series(&brace, &cfg.bounds)?.chain,
        };
        let w = multidecomposition_from_series(&brace, &chain)?;
        cfg.emit(&to_json_string(&w)?)?;
        cfg.summary(&format!(
            "{}-level {} witness, verified {}",
            w.partitions.len(),
            if w.uniform { "uniform" } else { "non-uniform" },
            w.verified
        ));
        return Ok(());
    }
    let path = solution.ok_or_else(|| Error::InvalidInput("decompose needs --brace or --solution".into()))?;
    let sol = read_json::<SolutionFile>(path)?.into_solution()?;
    let ground = ElementSet::full(sol.size());
    if let (Some(bpath), Some(embed)) = (embed_brace, embed) {
        let brace = read_json::<BraceFile>(bpath)?.into_brace(&cfg.bounds)?;
        let derived = derived_series(&brace)?;
        if !derived.reaches_zero() {
            return Err(Error::NotSoluble {
                stable_order: derived.chain.last().expect("non-empty").len(),
            });
        }
        let w = embedded_multidecomposition(&sol, &brace, embed, &derived.chain)?;
        cfg.emit(&to_json_string(&w)?)?;
        cfg.summary(&format!(
            "{}-level embedded witness, verified {}",
            w.partitions.len(),
            w.verified
        ));
        return Ok(());
    }
    match partition.unwrap_or(PartitionChoice::Search) {
        choice @ (PartitionChoice::Singletons | PartitionChoice::Whole) => {
            let p = match choice {
                PartitionChoice::Singletons => Partition::singletons(&ground),
                _ => Partition::whole(&ground),
            };
            let d = is_p_decomposable(&sol, &p)?;
            #[derive(serde::Serialize)]
            struct Verdict<'a> {
                partition: &'a Partition,
                #[serde(flatten)]
                result: &'a braceforge::ybe::Decomposability,
            }
            cfg.emit(&to_json_string(&Verdict {
                partition: &p,
                result: &d,
            })?)?;
            cfg.summary(if d.decomposable {
                "decomposable"
            } else {
                "not decomposable"
            });
        }
        PartitionChoice::Search => {
            let found: Vec<Partition> = if sol.size() <= EXHAUSTIVE_PARTITION_MAX {
                decomposable_partitions(&sol, &ground)?
            } else {
                two_block_decomposition(&sol, &ground)?.into_iter().collect()
            };
            cfg.emit(&to_json_string(&found)?)?;
            cfg.summary(&format!("{} decomposing partitions found", found.len()));
        }
    }
    Ok(())
}

fn cmd_oracle(cfg: &RunConfig, n: usize) -> Result<()> {
    let braces = oracle_enumerate_braces(n, &cfg.catalog)?;
    let mut text = String::new();
    for b in &braces {
        text.push_str(&serde_json::to_string(&BraceFile::from_brace(b))?);
        text.push('\n');
    }
    cfg.emit(&text)?;
    cfg.summary(&format!("order {n}: {} classes", braces.len()));
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::from_cli(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Error::InternalInvariant(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Enumerate { order } => cmd_enumerate(&cfg, *order),
        Command::Analyze { file, exhaustive } => cmd_analyze(&cfg, file, *exhaustive),
        Command::Verify { scope } => cmd_verify(&cfg, *scope),
        Command::Decompose {
            brace,
            series,
            solution,
            partition,
            embed_brace,
            embed,
        } => cmd_decompose(
            &cfg,
            brace.as_deref(),
            *series,
            solution.as_deref(),
            *partition,
            embed_brace.as_deref(),
            embed.as_deref(),
        ),
        Command::Oracle { order } => cmd_oracle(&cfg, *order),
    })
}

fn main() -> ExitCode {
    // usage errors share the input-failure code; clap's own code 2 is taken
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::TheoremViolation { .. } = e {
                eprintln!("counterexample: {e:?}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
