use crate::error::CliError;
use crate::runlog::render_log;
use crate::strategy_file::StrategyFile;
use clap::{Args, Parser, Subcommand, ValueEnum};
use po_arena::optimizers::{
    approx_coevolution, iterative_es, make_baseline, naive_es, real_coevolution, seed_method, Budget,
    CoevolutionConfig, OptimizerRun, SeedMethodConfig,
};
use po_arena::races::{paired_race, RaceConfig, RaceWinner};
use po_arena::tournament::{dominant_strategy, render_table, round_robin, TableFormat};
use po_arena::{evaluate, split_seed, ArenaError, GameId, ParamVector, Seed};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "po-arena", version, about = "Optimize and compare parametric game strategies")]
pub struct Cli {
    /// Worker threads; defaults to the number of cores. Results do not
    /// depend on this value.
    #[arg(long, global = true, env = "PO_ARENA_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an optimizer and write the resulting strategy and its log.
    Optimize(OptimizeArgs),
    /// Cross-play a set of strategies and print the win-rate table.
    Tournament(TournamentArgs),
    /// Race two strategies head to head.
    Race(RaceArgs),
    /// Write a random standard-Gaussian strategy.
    Baseline(BaselineArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Naive,
    Iterative,
    Coevol,
    ApproxCoevol,
    Seed,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Iterative => "iterative",
            Method::Coevol => "coevol",
            Method::ApproxCoevol => "approx-coevol",
            Method::Seed => "seed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

fn parse_game(s: &str) -> Result<GameId, String> {
    s.parse::<GameId>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct RaceFlags {
    /// Target precision on the winning rate.
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    /// Total error probability of one race.
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Hard cap on the games of one race.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_race_games: u64,
}

impl RaceFlags {
    fn config(&self) -> Result<RaceConfig, CliError> {
        RaceConfig::new(self.epsilon, self.delta, self.max_race_games).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long, value_parser = parse_game)]
    pub game: GameId,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Game budget; the reproducible mode.
    #[arg(long)]
    pub budget_games: Option<u64>,
    /// Wall-clock budget. Runs limited by time are not reproducible.
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    #[command(flatten)]
    pub race: RaceFlags,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed opponent for the naive method and starting point for the
    /// others. Generated from `--seed` when absent.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Seed method: individuals in the first round.
    #[arg(long, default_value_t = 16)]
    pub pop_size: usize,
    /// Seed method: games per pair of individuals.
    #[arg(long, default_value_t = 1)]
    pub games_per_pair: u64,
    /// Coevolutions: keep at most this many hall-of-fame members.
    #[arg(long)]
    pub hall_cap: Option<usize>,
    /// Games of the final evaluation against the baseline.
    #[arg(long, default_value_t = 10_000)]
    pub eval_games: u64,
}

#[derive(Debug, Args)]
pub struct TournamentArgs {
    #[arg(long, value_parser = parse_game)]
    pub game: GameId,
    #[arg(long = "strategy", required = true)]
    pub strategies: Vec<PathBuf>,
    /// Games per pair of strategies.
    #[arg(long, default_value_t = 10_000)]
    pub games: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also print the dominant strategy, or `none`.
    #[arg(long)]
    pub dominant: bool,
}

#[derive(Debug, Args)]
pub struct RaceArgs {
    #[arg(long, value_parser = parse_game)]
    pub game: GameId,
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[command(flatten)]
    pub race: RaceFlags,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long, value_parser = parse_game)]
    pub game: GameId,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn read_strategy(path: &Path, game: GameId) -> Result<StrategyFile, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let file = StrategyFile::parse(&text).map_err(|source| CliError::Format { path: path.to_path_buf(), source })?;
    if file.game() != game {
        return Err(ArenaError::GameMismatch { expected: game.to_string(), found: file.game().to_string() }.into());
    }
    Ok(file)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn io_out(e: std::io::Error) -> CliError {
    CliError::Io { path: PathBuf::from("<stdout>"), source: e }
}

fn log_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".log");
    PathBuf::from(s)
}

/// Runs a parsed command line on a pool of the requested size and
/// returns the exit code.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let threads = cli.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let mut buffer: Vec<u8> = Vec::new();
    let result = pool.install(|| match cli.command {
        Command::Optimize(a) => optimize(&a, &mut buffer),
        Command::Tournament(a) => tournament(&a, &mut buffer),
        Command::Race(a) => race(&a, &mut buffer),
        Command::Baseline(a) => baseline(&a, &mut buffer),
    });
    out.write_all(&buffer).and_then(|_| out.flush()).map_err(io_out)?;
    result
}

fn optimize(args: &OptimizeArgs, out: &mut Vec<u8>) -> Result<i32, CliError> {
    let game = args.game;
    let race_cfg = args.race.config()?;
    let budget = Budget { max_games: args.budget_games, max_seconds: args.budget_seconds };
    budget.validate().map_err(|_| CliError::Usage("give --budget-games and/or --budget-seconds".into()))?;
    if args.eval_games == 0 {
        return Err(CliError::Usage("--eval-games must be positive".into()));
    }
    let root = Seed(args.seed);
    let baseline = match &args.baseline {
        Some(path) => read_strategy(path, game)?.params,
        None => make_baseline(game, root),
    };
    let coevolution = CoevolutionConfig { population_cap: args.hall_cap };
    let mut rng = split_seed(root, 1).rng();
    let run: OptimizerRun = match args.method {
        Method::Naive => naive_es(game, &baseline, &budget, &race_cfg, &mut rng)?,
        Method::Iterative => iterative_es(game, &baseline, &budget, &race_cfg, &mut rng)?,
        Method::Coevol => real_coevolution(game, &baseline, &budget, &race_cfg, &coevolution, &mut rng)?,
        Method::ApproxCoevol => approx_coevolution(game, &baseline, &budget, &race_cfg, &coevolution, &mut rng)?,
        Method::Seed => {
            let cfg = SeedMethodConfig { population_size: args.pop_size, games_per_pair: args.games_per_pair };
            seed_method(game, &cfg, &budget, &mut rng)?
        }
    };

    let file = StrategyFile::new(run.best.clone())
        .with_meta("method", args.method.name())
        .with_meta("seed", args.seed.to_string())
        .with_meta("games", run.state.games_played.to_string());
    write_file(&args.out, &file.render())?;
    write_file(&log_path(&args.out), &render_log(&run.log))?;

    let stats = evaluate(game, &run.best, &baseline, args.eval_games, split_seed(root, 2))?;
    writeln!(out, "method: {}", args.method.name()).map_err(io_out)?;
    writeln!(out, "games used: {}", run.state.games_played).map_err(io_out)?;
    writeln!(out, "acceptances: {}", run.log.acceptances()).map_err(io_out)?;
    writeln!(out, "baseline score: {:.6} +- {:.6} over {} games", stats.mean, stats.stderr, stats.games)
        .map_err(io_out)?;
    if run.budget_too_small {
        eprintln!("warning: budget too small, no race completed; wrote the starting point");
        return Ok(4);
    }
    Ok(0)
}

fn label_for(path: &Path, file: &StrategyFile) -> String {
    file.meta("label")
        .map(str::to_string)
        .or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .unwrap_or_else(|| path.display().to_string())
}

fn tournament(args: &TournamentArgs, out: &mut Vec<u8>) -> Result<i32, CliError> {
    if args.strategies.len() < 2 {
        return Err(CliError::Usage("a tournament needs at least two --strategy files".into()));
    }
    if args.games == 0 {
        return Err(CliError::Usage("--games must be positive".into()));
    }
    let entrants: Vec<(String, ParamVector)> = args
        .strategies
        .iter()
        .map(|p| read_strategy(p, args.game).map(|f| (label_for(p, &f), f.params)))
        .collect::<Result<_, _>>()?;
    let table = round_robin(args.game, &entrants, args.games, Seed(args.seed))?;
    let format = match args.format {
        Format::Text => TableFormat::Text,
        Format::Csv => TableFormat::Csv,
    };
    out.write_all(render_table(&table, format).as_bytes()).map_err(io_out)?;
    if args.dominant {
        let label = dominant_strategy(&table).map_or("none", |i| table.labels[i].as_str());
        writeln!(out, "dominant: {label}").map_err(io_out)?;
    }
    Ok(0)
}

fn race(args: &RaceArgs, out: &mut Vec<u8>) -> Result<i32, CliError> {
    let cfg = args.race.config()?;
    let a = read_strategy(&args.a, args.game)?.params;
    let b = read_strategy(&args.b, args.game)?.params;
    let seed = Seed(args.seed);
    let mut i = 0u64;
    let result = paired_race(
        || {
            let h = po_arena::arena::alternating_score(args.game, &a, &b, seed, i);
            i += 1;
            h
        },
        &cfg,
    );
    let winner = match result.winner {
        RaceWinner::A => "a",
        RaceWinner::B => "b",
        RaceWinner::Incumbent => "incumbent",
    };
    writeln!(out, "winner: {winner}").map_err(io_out)?;
    writeln!(out, "halt: {:?}", result.halt_reason).map_err(io_out)?;
    writeln!(out, "games: {}", result.games_played(true)).map_err(io_out)?;
    writeln!(out, "mean_a: {:.6}", result.mean_a).map_err(io_out)?;
    writeln!(out, "mean_b: {:.6}", result.mean_b).map_err(io_out)?;
    Ok(0)
}

fn baseline(args: &BaselineArgs, out: &mut Vec<u8>) -> Result<i32, CliError> {
    let params = make_baseline(args.game, Seed(args.seed));
    let n = params.len();
    let file = StrategyFile::new(params).with_meta("method", "baseline").with_meta("seed", args.seed.to_string());
    write_file(&args.out, &file.render())?;
    writeln!(out, "wrote {} parameters for {} to {}", n, args.game, args.out.display()).map_err(io_out)?;
    Ok(0)
}
