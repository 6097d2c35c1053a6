use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "mgslope", version, about = "Exact slopes of hypersurface-condition divisors on the moduli space of curves")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Add a decimal approximation with K places next to each exact column
    /// (table and csv).
    #[arg(long, global = true, value_name = "K")]
    pub decimal: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Part1,
    Part2,
    Part3,
    All,
}

impl Part {
    pub fn numbers(self) -> &'static [u8] {
        match self {
            Part::Part1 => &[1],
            Part::Part2 => &[2],
            Part::Part3 => &[3],
            Part::All => &[1, 2, 3],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Certificate,
    Bruteforce,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Quot,
    Sub,
}

#[derive(Clone, Copy, Debug, clap::Args, Serialize)]
pub struct Triple {
    pub m: u32,
    pub r: u32,
    pub s: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slope of the divisor and its gaps to 6+12/(g+1) and 6+8/(g+1).
    Slope(Triple),
    /// Class coefficients from the pushforward assembly and the closed forms.
    Class(Triple),
    /// Check the three slope inequalities.
    Verify {
        #[arg(value_enum)]
        part: Part,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        #[arg(long, default_value_t = 6)]
        m_max: u32,
        #[arg(long, default_value_t = 60)]
        r_max: u32,
        /// Defaults to r-max.
        #[arg(long)]
        s_max: Option<u32>,
    },
    /// Candidate genera with a divisor of slope below 6+12/(g+1).
    Enumerate {
        #[arg(long)]
        g_max: u64,
    },
    /// Cumulative counts of candidate genera.
    Density {
        #[arg(long)]
        g_max: u64,
        #[arg(long, default_value_t = 10)]
        buckets: u64,
    },
    /// Which construction realizes the divisor.
    Exists(Triple),
    /// Torus weight of the invariant determinant.
    Weights {
        #[arg(value_enum)]
        side: Side,
        #[arg(value_name = "E_OR_F")]
        rank: u32,
        #[arg(value_name = "M")]
        m: u32,
    },
    /// Degree of the locus of symmetric n x n forms of corank >= c.
    Corank { n: u32, c: u32 },
    /// Numerical data of a triple, including N and xi.
    Params(Triple),
}
