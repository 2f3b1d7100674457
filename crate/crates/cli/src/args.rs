use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "cyclo",
    version,
    about = "Cyclic complexity of automatic sequences, exactly"
)]
pub struct Cli {
    /// Worker threads for brute-force tables.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Write golden files (first values as CSV, the c and a0 representations, the a0 automaton) into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub seed_tables: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print cyclic complexity values over a range.
    Compute(ComputeArgs),
    /// Learn a linear representation of c or of a combination of its values.
    Learn(LearnArgs),
    /// Minimize a linear representation.
    Minimize(MinimizeArgs),
    /// Extract a minimized automaton from a representation with finite orbit.
    Dfao(DfaoArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

/// Which infinite word to count factors of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sequence {
    ThueMorse,
    PowersOfTwo,
    Dfao(PathBuf),
}

impl FromStr for Sequence {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Self> {
        Ok(match s {
            "tm" => Sequence::ThueMorse,
            "p" => Sequence::PowersOfTwo,
            _ => match s.strip_prefix("dfao:") {
                Some(path) if !path.is_empty() => Sequence::Dfao(path.into()),
                _ => bail!("unknown sequence {s:?}; expected tm, p, or dfao:<file>"),
            },
        })
    }
}

/// Where c-values come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvaluatorChoice {
    /// Direct factor counting.
    Brute,
    /// A representation learned from factor counts and certified in this run.
    Learned,
    /// A representation file, certified against factor counts before use.
    Rep(PathBuf),
}

impl FromStr for EvaluatorChoice {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Self> {
        Ok(match s {
            "brute" => EvaluatorChoice::Brute,
            "learned" => EvaluatorChoice::Learned,
            _ => match s.strip_prefix("rep:") {
                Some(path) if !path.is_empty() => EvaluatorChoice::Rep(path.into()),
                _ => bail!("unknown evaluator {s:?}; expected brute, learned, or rep:<file>"),
            },
        })
    }
}

/// An inclusive range `a..b`, `a..=b`, or a single `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub start: u64,
    pub end: u64,
}

impl FromStr for Range {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Self> {
        let num = |x: &str| -> anyhow::Result<u64> {
            x.trim()
                .parse()
                .with_context(|| format!("bad number {x:?} in range {s:?}"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if start > end {
            bail!("empty range {s:?}");
        }
        Ok(Range { start, end })
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, default_value = "tm", value_name = "tm|p|dfao:FILE")]
    pub seq: Sequence,
    /// Inclusive range, e.g. `0..19`, or a single value.
    #[arg(long, value_name = "RANGE")]
    pub n: Range,
    /// Also print subword complexity.
    #[arg(long)]
    pub rho: bool,
    /// Also print c(n)/n exactly and as a decimal.
    #[arg(long)]
    pub ratio: bool,
    /// CSV with columns n, c, 3c-4n, 2n-4-c (plus rho when requested).
    #[arg(long)]
    pub csv: bool,
    /// Value source for the Thue–Morse word (brute | rep:FILE).
    #[arg(long, default_value = "brute", value_name = "brute|rep:FILE")]
    pub evaluator: EvaluatorChoice,
    /// Longest prefix examined when counting factors.
    #[arg(long, default_value_t = cyclo_core::cyclic::DEFAULT_PREFIX_CAP)]
    pub prefix_cap: usize,
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[arg(long, default_value = "tm", value_name = "tm|p")]
    pub seq: Sequence,
    /// Combination of c-values, e.g. `c(2n) - 2c(n)`; defaults to `c(n)`.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub rank_cap: usize,
    /// Learn from values below 2^depth.
    #[arg(long, default_value_t = 9)]
    pub depth: usize,
    /// Value source for c (brute | rep:FILE).
    #[arg(long, default_value = "brute", value_name = "brute|rep:FILE")]
    pub evaluator: EvaluatorChoice,
    /// Output file (stdout when absent).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    #[arg(long)]
    pub rep: PathBuf,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DfaoArgs {
    #[arg(long)]
    pub rep: PathBuf,
    #[arg(long, default_value_t = cyclo_core::automata::DEFAULT_STATE_CAP)]
    pub state_cap: usize,
    /// Automaton JSON output.
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    /// Graphviz output.
    #[arg(long)]
    pub out_dot: Option<PathBuf>,
    /// Graph name in the DOT output.
    #[arg(long, default_value = "dfao")]
    pub name: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(
        long,
        value_name = "prop1|recurrences|upper|lower|jchar|lemma6|powers2|all"
    )]
    pub suite: cyclo_core::verify::Suite,
    #[arg(long, default_value = "learned", value_name = "brute|learned|rep:FILE")]
    pub evaluator: EvaluatorChoice,
    #[arg(long, default_value_t = 100_000)]
    pub n_max: u64,
    #[arg(long, default_value_t = 40)]
    pub k_max: u32,
    #[arg(long, default_value_t = 8)]
    pub param_max: u32,
    /// Range of the automaton-only checks.
    #[arg(long, default_value_t = 1 << 20)]
    pub automata_max: u64,
    #[arg(long, default_value_t = 14)]
    pub powers2_exp: u32,
    /// Factor-count range a representation must reproduce before use.
    #[arg(long, default_value_t = cyclo_core::verify::DEFAULT_CERTIFY_THROUGH)]
    pub certify_through: u64,
    /// Use this automaton (JSON) for a0 in the recurrence checks.
    #[arg(long, value_name = "FILE")]
    pub a0_dfao: Option<PathBuf>,
    #[arg(long)]
    pub report_json: Option<PathBuf>,
    #[arg(long)]
    pub report_text: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(
            "0..19".parse::<Range>().unwrap(),
            Range { start: 0, end: 19 }
        );
        assert_eq!(
            "3..=5".parse::<Range>().unwrap(),
            Range { start: 3, end: 5 }
        );
        assert_eq!("16".parse::<Range>().unwrap(), Range { start: 16, end: 16 });
        assert!("5..3".parse::<Range>().is_err());
        assert!("x..3".parse::<Range>().is_err());
    }

    #[test]
    fn choices() {
        assert_eq!("tm".parse::<Sequence>().unwrap(), Sequence::ThueMorse);
        assert_eq!(
            "dfao:a.json".parse::<Sequence>().unwrap(),
            Sequence::Dfao("a.json".into())
        );
        assert!("dfao:".parse::<Sequence>().is_err());
        assert_eq!(
            "rep:c.json".parse::<EvaluatorChoice>().unwrap(),
            EvaluatorChoice::Rep("c.json".into())
        );
        assert!("fast".parse::<EvaluatorChoice>().is_err());
    }

    #[test]
    fn command_line_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
