use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "roa", version, about = "Full automata, rank complementation and lower-bound certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate automata.
    #[command(subcommand)]
    Gen(Gen),
    /// Generate words.
    #[command(subcommand)]
    Word(Word),
    /// Decide membership, equivalence and witness properties.
    #[command(subcommand)]
    Check(Check),
    /// Complement an automaton.
    #[command(subcommand)]
    Complement(Complement),
    /// Produce certificates.
    #[command(subcommand)]
    Verify(Verify),
    /// Count rankings.
    #[command(subcommand)]
    Count(Count),
    /// Numerical analysis.
    #[command(subcommand)]
    Analyze(Analyze),
    /// Convert to other formats.
    #[command(subcommand)]
    Export(Export),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFormat {
    Roa,
    Hoa,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long, value_enum, default_value = "roa")]
    pub format: OutFormat,
}

#[derive(Args, Debug)]
pub struct FileOut {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    /// The full NFW over n states.
    Fa {
        #[arg(long)]
        n: usize,
        /// Restrict to the two-letter alphabet {a, b}.
        #[arg(long)]
        binary: bool,
        #[command(flatten)]
        output: Output,
    },
    /// The full NBW over n states.
    Fb {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The full NGBW with k acceptance sets.
    Fbnk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The full NBW restricted to the seven gadget letters.
    B {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The seven gadget letters as relations.
    Gamma {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: FileOut,
    },
}

#[derive(Subcommand, Debug)]
pub enum Word {
    /// The hard lasso for the full NBW.
    Hard {
        #[arg(long)]
        n: usize,
        /// Spell the period with the seven gadget letters.
        #[arg(long)]
        gamma: bool,
        #[command(flatten)]
        output: FileOut,
    },
    /// The connecting word between two rankings.
    Wfg {
        #[arg(long)]
        n: usize,
        /// Largest rank; defaults to the maximizing one.
        #[arg(long)]
        m: Option<usize>,
        /// Ranks of states 0..n-2, comma separated.
        #[arg(long, value_delimiter = ',')]
        f: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        g: Vec<u32>,
        #[command(flatten)]
        output: FileOut,
    },
    /// The segment word of a generalized ranking.
    Seg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Order values 1..n-1 of states 0..n-2.
        #[arg(long, value_delimiter = ',')]
        f: Vec<u32>,
        /// Acceptance-set indices 1..k of states 0..n-2.
        #[arg(long, value_delimiter = ',')]
        g: Vec<u32>,
        #[command(flatten)]
        output: FileOut,
    },
    /// The finite word u_{T1} v_{T2}.
    Fooling {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        t1: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        t2: Vec<usize>,
        /// Spell the word over {a, b}.
        #[arg(long)]
        binary: bool,
        #[command(flatten)]
        output: FileOut,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Mode {
    Sim,
    Approx,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Decide whether the automaton accepts the word.
    Member {
        #[arg(long)]
        automaton: String,
        #[arg(long)]
        word: String,
    },
    /// Compare two finite words by their transition profiles.
    Equiv {
        #[arg(long)]
        automaton: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value = "approx")]
        mode: Mode,
    },
    /// Check every segment word for n and k.
    SegProps {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check every connecting word for n.
    WfgProps {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Complement {
    /// Rank-based complement of a Büchi automaton.
    Rank {
        #[arg(long)]
        automaton: String,
        /// Keep only tight rankings.
        #[arg(long)]
        tight: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Check a claimed complement on all short lassos and random samples.
    Complement {
        #[arg(long)]
        automaton: String,
        #[arg(long)]
        complement: String,
        /// Largest |u| + |v| checked exhaustively.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Additional random lassos.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: FileOut,
    },
    /// Refute a candidate complement of the full NBW with too few states.
    Confuse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        candidate: String,
        #[command(flatten)]
        output: FileOut,
    },
    /// Check the fooling pattern over every pair of subsets.
    Fooling {
        #[arg(long)]
        n: usize,
        /// Use the words over {a, b}.
        #[arg(long)]
        binary: bool,
        #[command(flatten)]
        output: FileOut,
    },
    /// Certify the segment words for n and k as a conflict set.
    ConflictSet {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Exponent values; every triple over them is checked.
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2])]
        grid: Vec<u32>,
        /// A single exponent triple k0,k1,k2 instead of the grid.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        exponents: Option<Vec<u32>>,
        #[command(flatten)]
        output: FileOut,
    },
}

#[derive(Subcommand, Debug)]
pub enum Count {
    /// Q(m)-rankings by enumeration and by formula.
    Qrank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Generalized rankings and the closed-form lower bound.
    Pgcl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Tight level rankings with a given final set.
    Tight {
        #[arg(long)]
        n: usize,
        /// Final states, comma separated.
        #[arg(long, value_delimiter = ',')]
        r#final: Vec<usize>,
    },
    /// The maximizing rank and the number of rankings it gives.
    #[command(name = "L")]
    L {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Analyze {
    /// Maximize the exponential growth constant.
    Asymptotic {
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, default_value_t = 3)]
        refine: u32,
        /// Also report the exact growth rate at this n.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Export {
    /// Write an automaton in HOA.
    Hoa {
        #[arg(long)]
        automaton: String,
        #[command(flatten)]
        output: FileOut,
    },
}
