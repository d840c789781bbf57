use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skewsd::search::SearchMode;
use skewsd::DistanceSpec;

#[derive(Debug, Parser)]
#[command(
    name = "skewsd",
    version,
    about = "Skew-distance set systems: construct, verify, certify, search, audit"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Sd,
    CloseSperner,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Sd => SearchMode::Sd,
            Mode::CloseSperner => SearchMode::CloseSperner,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Singletons,
    Layer,
    Chain,
    Ffp,
    Plane,
    Qn,
    Random,
}

fn parse_spec(s: &str) -> Result<DistanceSpec, String> {
    DistanceSpec::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a family and write it in the family file format.
    Construct(ConstructArgs),
    /// Check the L-sd or L-close Sperner property of a family file.
    Verify(VerifyArgs),
    /// Exact rank certificate for the polynomials of an L-close Sperner family.
    Certify(CertifyArgs),
    /// Exact extremal size by maximum clique.
    Search(SearchArgs),
    /// Step-by-step audit of the {0,1}-sd bound on a family file.
    Analyze(AnalyzeArgs),
    /// Table of searched ex_sd(n,{0,1}) against binom(n,2)+2n-1.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Chain offset for `ffp`.
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Level for `layer`.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Plane order for `plane`, alphabet size for `qn`.
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    /// Distance set for `random`.
    #[arg(long = "L", value_parser = parse_spec, default_value = "1")]
    pub spec: DistanceSpec,
    #[arg(long, value_enum, default_value_t = Mode::CloseSperner)]
    pub mode: Mode,
    /// Required for `random`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub family: PathBuf,
    #[arg(long = "L", value_parser = parse_spec)]
    pub spec: DistanceSpec,
    #[arg(long, value_enum, default_value_t = Mode::Sd)]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    pub family: PathBuf,
    #[arg(long = "L", value_parser = parse_spec)]
    pub spec: DistanceSpec,
    /// Include the constant polynomial (needs |L| = 1).
    #[arg(long)]
    pub with_one: bool,
    /// Write the JSON certificate here as well.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Worker threads; all cores when unset.
    #[arg(long, env = "SKEWSD_THREADS")]
    pub threads: Option<usize>,
    /// Seconds before the search stops with a lower bound.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Largest n accepted.
    #[arg(long, default_value_t = skewsd::search::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "L", value_parser = parse_spec)]
    pub spec: DistanceSpec,
    #[arg(long, value_enum, default_value_t = Mode::Sd)]
    pub mode: Mode,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Where to write the witness family.
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub family: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 3)]
    pub from: usize,
    #[arg(long, default_value_t = 6)]
    pub to: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
}
