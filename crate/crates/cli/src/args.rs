use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "flatlab",
    version,
    about = "Finite-scale checks for flat weights, sound classes of shapes and finitary algebra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Clone, Debug, Args)]
pub struct Flags {
    /// Size bound of the shape class.
    #[arg(long, global = true, default_value_t = 3)]
    pub bound: usize,
    /// Largest carrier used by the commutation oracle.
    #[arg(long = "value-bound", global = true, default_value_t = 2)]
    pub value_bound: usize,
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    /// Shape class keyword, or `explicit:<file,file,...>`.
    #[arg(long, global = true, default_value = "all-finite")]
    pub class: String,
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Re-validate every witness in the report.
    #[arg(long, global = true)]
    pub recheck: bool,
    #[arg(long, global = true, value_enum, default_value_t = Profile::Desk)]
    pub profile: Profile,
    /// Largest category searched by `soundness-search`.
    #[arg(long = "category-bound", global = true, default_value_t = 4)]
    pub category_bound: usize,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Desk,
    Deep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Criterion,
    Direct,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a category (.cat), theory (.thy) or monad table (.monad).
    Validate { file: String },
    /// Limit of a covariant diagram over a shape.
    Limit { shape: String, diagram: String },
    /// Colimit of a covariant diagram over a shape.
    Colimit { shape: String, diagram: String },
    /// Weighted colimit `M * H` of a covariant `H` weighted by a contravariant `M`.
    Wcolim { category: String, weight: String, diagram: String },
    /// Category of elements of a contravariant weight.
    Elements { category: String, weight: String },
    /// Structural filteredness test.
    CheckFiltered { category: String },
    /// Structural siftedness test.
    CheckSifted { category: String },
    /// Whether a contravariant weight is flat for `--class`.
    CheckFlat {
        category: String,
        weight: String,
        #[arg(long, value_enum, default_value_t = Mode::Criterion)]
        mode: Mode,
    },
    /// Whether a category is filtered for `--class`.
    CheckDfiltered { category: String },
    /// Search diagrams `shape × C → Set` for a failure of commutation.
    CommuteRefute {
        category: String,
        /// A single shape; defaults to every shape of `--class`.
        shape: Option<String>,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Look for a cocomplete category of `--class` that is not filtered for it.
    SoundnessSearch,
    /// Representables closed under colimits of `--class`, to `--depth` rounds.
    Closure { category: String },
    /// Present a presheaf as a reflexive coequalizer of coproducts of representables.
    PresentReflexive { category: String, presheaf: String },
    /// Colimit of a diagram over a disconnected shape via its components.
    Decompose { category: String, diagram: String },
    /// Whether a weight is a retract of a representable.
    Cauchy { category: String, weight: String },
    /// Enumerate models of a theory on `{0..size}`.
    Models {
        theory: String,
        #[arg(long)]
        size: usize,
    },
    /// Homomorphisms between two structures.
    Morphisms { theory: String, from: String, to: String },
    /// Free model on `--generators` generators, when it is finite.
    Free {
        theory: String,
        #[arg(long, default_value_t = 1)]
        generators: usize,
    },
    /// Orthogonality of a structure against a map `P → W` (default: the
    /// bundled quotient onto the free involution).
    Orthogonal {
        theory: String,
        structure: String,
        #[arg(long)]
        map: Option<String>,
    },
    /// Algebras of a monad table on `{0..size}`.
    MonadAlgebras {
        monad: String,
        #[arg(long)]
        size: usize,
    },
    /// Run the bundled verification suite.
    VerifyPaper {
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}
