use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "apportion",
    version,
    about = "Proportional seat apportionment in exact arithmetic"
)]
pub struct Args {
    /// CSV file with header `party,votes[,districts]`; `-` or omitted reads stdin.
    pub input: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = MethodArg::Hare)]
    pub method: MethodArg,

    /// Defaults to the divisor form (largest remainders for hare).
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,

    /// House size.
    #[arg(long)]
    pub seats: Option<u64>,

    #[arg(long, value_enum, default_value_t = TieArg::Deterministic)]
    pub tie: TieArg,

    /// Seed for `--tie random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Name of the district-seat column; its presence selects a seeded run.
    #[arg(long, default_value = "districts")]
    pub districts_col: String,

    /// At most this many additional seats (hare, seeded).
    #[arg(long, conflicts_with = "fixed_extra")]
    pub cap: Option<u64>,

    /// Exactly this many additional seats (seeded).
    #[arg(long)]
    pub fixed_extra: Option<u64>,

    /// Stop rule of a seeded divisor run.
    #[arg(long, value_enum)]
    pub stop: Option<StopArg>,

    /// Run all three methods side by side and flag differences.
    #[arg(long)]
    pub compare: bool,

    /// Include the step-by-step table of the run.
    #[arg(long)]
    pub trace: bool,

    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,

    /// Run a verification suite instead of an allocation.
    #[arg(long, value_enum)]
    pub suite: Option<SuiteArg>,

    /// Trials for `--suite` (instances examined, for paradox).
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,

    #[arg(long, default_value_t = 0)]
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Hare,
    Dhondt,
    SainteLague,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Divisor,
    Multiplicative,
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    Deterministic,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StopArg {
    Residual,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Equivalence,
    Bias,
    Paradox,
}
