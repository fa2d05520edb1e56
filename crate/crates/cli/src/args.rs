use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "ord", version, about = "Computable orderings of groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every command; each overrides the config file.
#[derive(Debug, Default, Args)]
pub struct GlobalOpts {
    /// TOML file with defaults for the options below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Ball radius; each command has its own default.
    #[arg(long, global = true)]
    pub radius: Option<usize>,

    /// Exponent bound for power searches.
    #[arg(long, global = true)]
    pub bound: Option<u32>,

    /// Handle-reduction step budget.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Magnus truncation degree.
    #[arg(long, global = true)]
    pub degree: Option<usize>,

    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Braid groups and the Dehornoy orderings.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// The Klein bottle group.
    #[command(subcommand)]
    Klein(KleinCmd),
    /// Orderings of Z^n and Q^n by forms.
    #[command(subcommand)]
    Abelian(AbelianCmd),
    /// Free groups and the Magnus ordering.
    #[command(subcommand)]
    Free(FreeCmd),
    /// Semidirect extensions by Z.
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Partial cones on balls.
    #[command(subcommand)]
    Lospace(LospaceCmd),
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
    },
}

#[derive(Debug, Args)]
pub struct StrandsWord {
    #[arg(long)]
    pub strands: Option<usize>,
    /// Letters such as "1 2 -1"; "e" is the identity.
    #[arg(long)]
    pub word: String,
}

#[derive(Debug, Subcommand)]
pub enum BraidCmd {
    /// Sign of a braid under an ordering.
    Sign {
        #[command(flatten)]
        input: StrandsWord,
        /// dehornoy, reverse or order-i.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Compare two braids.
    Compare {
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Handle-reduce a word.
    Reduce {
        #[command(flatten)]
        input: StrandsWord,
    },
    /// Least positive element of a ball.
    Least {
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long)]
        ordering: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum KleinCmd {
    /// The four orderings P(s,t) and their least positives.
    Orderings,
    /// Automorphisms (1,1,m) acting trivially on all four orderings.
    Kernel {
        #[arg(long, default_value_t = 3)]
        m_bound: i64,
    },
    /// An ordering moved by the automorphism, with the element.
    Witness {
        /// Automorphism "(ε,δ,m)".
        #[arg(long)]
        aut: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum AbelianCmd {
    /// Sign of a vector under a flag.
    Sign {
        /// Flag such as "(√2,1)" or "(1,0);(0,1)".
        #[arg(long)]
        flag: String,
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = 2)]
        field: u64,
    },
    /// Orderings preserved by a matrix, from its eigenvectors.
    Eigen {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 2)]
        field: u64,
    },
    /// Scalar test and condition (*) check for a matrix.
    Star {
        #[arg(long)]
        matrix: String,
    },
    /// Equality of virtual orderings and commensuration action.
    Vlo {
        /// Commensuration to test for trivial action.
        #[arg(long, conflicts_with_all = ["flag", "other"])]
        matrix: Option<String>,
        #[arg(long, requires = "other")]
        flag: Option<String>,
        #[arg(long, requires = "flag")]
        other: Option<String>,
        /// Basis rows of the first sublattice.
        #[arg(long)]
        basis: Option<String>,
        /// Basis rows of the second sublattice.
        #[arg(long)]
        other_basis: Option<String>,
        #[arg(long, default_value_t = 2)]
        field: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FreeCmd {
    /// Sign of a word.
    Sign {
        /// "xyX" or "1 2 -1".
        #[arg(long)]
        word: String,
        /// magnus or pullback.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Distinguishing and condition (*) witnesses for an automorphism.
    Witness {
        /// swap, transvection, invert-x or inner-x.
        #[arg(long)]
        aut: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExtCmd {
    /// Build the lexicographic extension ordering of G.
    Build {
        /// Flag of Q² ordering the kernel; defaults to (−√2,1).
        #[arg(long)]
        flag: Option<String>,
    },
    /// Check the extension precondition and cone axioms.
    Verify,
    /// Least positive element of the G ordering.
    Least,
}

#[derive(Debug, Subcommand)]
pub enum LospaceCmd {
    /// Enumerate partial cones on a ball.
    Enum {
        /// z, z2, klein, f2 or bN.
        #[arg(long)]
        group: Option<String>,
    },
    /// Extensions of a partial cone to a larger ball.
    Extend {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        radius2: usize,
        /// Start from the restriction of this ordering.
        #[arg(long)]
        ordering: Option<String>,
        /// Otherwise start from this enumerated cone.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// First ball element separating two orderings.
    Separate {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Condition (*) check for an automorphism.
    Star {
        #[arg(long)]
        group: Option<String>,
        /// Matrix for z2 or q2.
        #[arg(long)]
        matrix: Option<String>,
        /// Free automorphism for f2, or Klein "(ε,δ,m)".
        #[arg(long)]
        aut: Option<String>,
    },
}
