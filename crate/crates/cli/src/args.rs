use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finlab_core::{Colour, FinSet, SetFamily};
use serde::{Deserialize, Serialize};

use crate::text;

#[derive(Parser, Debug)]
#[command(
    name = "finlab",
    version,
    about = "Finite checks for colourings, finite sums and permutation models"
)]
pub struct Cli {
    /// Flat `key = value` file; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker threads (0 = one per core). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Record wall-clock time in the report (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Diagonal Ramsey numbers, or a monochromatic-subset search.
    Ramsey(RamseyArgs),
    /// The F(n, k) recursion.
    FBound(FBoundArgs),
    /// Least even Schur triple for a colouring of the even numbers.
    Schur(SchurArgs),
    /// Pairwise-disjoint family with monochromatic finite unions.
    FuSearch(FuSearchArgs),
    /// Checks on finite-sums families
    #[command(subcommand)]
    Hindman(HindmanCommand),
    /// Witness replays in the permutation models.
    Fm(FmArgs),
    /// Rado graphs and hypergraphs
    #[command(subcommand)]
    Rado(RadoCommand),
    /// Colour one set.
    Colour(ColourArgs),
    /// Re-verify a saved report.
    VerifyReport(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Ramsey(_) => "ramsey".into(),
            Command::FBound(_) => "f-bound".into(),
            Command::Schur(_) => "schur".into(),
            Command::FuSearch(_) => "fu-search".into(),
            Command::Hindman(h) => format!("hindman {}", h.verb()),
            Command::Fm(f) => format!("fm {}", f.verify.name()),
            Command::Rado(r) => format!("rado {}", r.verb()),
            Command::Colour(_) => "colour".into(),
            Command::VerifyReport(_) => "verify-report".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColouringName {
    /// Parity of floor(log2 |x|).
    Log2,
    /// |x| mod 4 in {0, 1} or {2, 3}.
    Mod4,
    Zero,
    One,
    /// Parity of the sum of the elements.
    ParitySum,
    /// Parity of the least element.
    LeastParity,
    /// Whether x meets the given support.
    MeetsSupport,
    /// Number of rows plus columns met, mod 4 in {0, 1} or {2, 3}.
    Grid,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColouringArgs {
    #[arg(long, value_enum, default_value_t = ColouringName::Log2)]
    pub colouring: ColouringName,
    /// Ground set {0..atoms-1}.
    #[arg(long, default_value_t = 8)]
    pub atoms: u64,
    /// Colour only the subsets of this size.
    #[arg(long)]
    pub arity: Option<usize>,
    /// Support for `meets-support`.
    #[arg(long, value_parser = text::finset)]
    pub support: Option<FinSet>,
    #[arg(long)]
    pub rows: Option<u64>,
    #[arg(long)]
    pub cols: Option<u64>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RamseyArgs {
    #[arg(long)]
    pub m: u64,
    /// Certify R(m) by enumerating every colouring (m <= 3).
    #[arg(long)]
    pub enumerate: bool,
    /// Use table entries only up to this m.
    #[arg(long)]
    pub table_max: Option<u64>,
    /// Search the named colouring for a monochromatic m-subset instead.
    #[arg(long)]
    pub search: bool,
    #[command(flatten)]
    pub colouring: ColouringArgs,
    /// Node budget per top-level branch.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FBoundArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub table_max: Option<u64>,
}

/// A two-colouring of the positive even numbers, named on the command line:
/// `parity-log2`, `parity-half`, `zero`, `one`, or `mask:<bits>` where bit
/// `i` is the colour of `2(i+1)` (higher numbers get colour 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum EvenColouring {
    ParityLog2,
    ParityHalf,
    Constant(Colour),
    Mask(u64),
}

impl EvenColouring {
    pub fn colour(self, m: u64) -> Colour {
        match self {
            EvenColouring::ParityLog2 => Colour::from_bit(m.max(1).ilog2() % 2 == 1),
            EvenColouring::ParityHalf => Colour::from_bit((m / 2) % 2 == 1),
            EvenColouring::Constant(c) => c,
            EvenColouring::Mask(bits) => {
                let i = (m / 2).wrapping_sub(1);
                Colour::from_bit(m.is_multiple_of(2) && i < 64 && bits >> i & 1 == 1)
            }
        }
    }
}

impl FromStr for EvenColouring {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "parity-log2" => EvenColouring::ParityLog2,
            "parity-half" => EvenColouring::ParityHalf,
            "zero" => EvenColouring::Constant(Colour::Zero),
            "one" => EvenColouring::Constant(Colour::One),
            _ => {
                let bits = s
                    .strip_prefix("mask:")
                    .ok_or_else(|| format!("unknown colouring `{s}`"))?;
                let parsed = match bits.strip_prefix("0x") {
                    Some(hex) => u64::from_str_radix(hex, 16),
                    None => bits.parse(),
                };
                EvenColouring::Mask(parsed.map_err(|e| format!("bad mask `{bits}`: {e}"))?)
            }
        })
    }
}

impl TryFrom<String> for EvenColouring {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl fmt::Display for EvenColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvenColouring::ParityLog2 => f.write_str("parity-log2"),
            EvenColouring::ParityHalf => f.write_str("parity-half"),
            EvenColouring::Constant(Colour::Zero) => f.write_str("zero"),
            EvenColouring::Constant(Colour::One) => f.write_str("one"),
            EvenColouring::Mask(bits) => write!(f, "mask:{bits}"),
        }
    }
}

impl From<EvenColouring> for String {
    fn from(g: EvenColouring) -> String {
        g.to_string()
    }
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurArgs {
    #[arg(long, default_value = "parity-log2")]
    pub g: EvenColouring,
    /// Largest sum considered.
    #[arg(long, alias = "B", default_value_t = 64)]
    pub bound: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuSearchArgs {
    #[command(flatten)]
    pub colouring: ColouringArgs,
    /// Family size s.
    #[arg(long)]
    pub size: usize,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum HindmanCommand {
    /// Is log2 constant on FS_{<=4} of the family?
    CheckMono(FamilyArgs),
    /// Does the family stay below the F(n, n) count bound?
    CheckBound(BoundArgs),
    /// Do the members of a disjoint family have distinct sizes?
    Injectivity(FamilyArgs),
    /// FS_{<=2} of the star family at z lies in [Z]^2.
    Star(StarArgs),
    /// Schur triple to an FS_{<=3}-monochromatic family on a grid.
    SchurFs3(SchurFs3Args),
    /// Pairwise-disjoint refinement of a sequence.
    Disjointify(FamilyArgs),
}

impl HindmanCommand {
    pub fn verb(&self) -> &'static str {
        match self {
            HindmanCommand::CheckMono(_) => "check-mono",
            HindmanCommand::CheckBound(_) => "check-bound",
            HindmanCommand::Injectivity(_) => "injectivity",
            HindmanCommand::Star(_) => "star",
            HindmanCommand::SchurFs3(_) => "schur-fs3",
            HindmanCommand::Disjointify(_) => "disjointify",
        }
    }
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyArgs {
    /// Members separated by `;`, e.g. `0,1;2,3`.
    #[arg(long, value_parser = text::family)]
    pub family: SetFamily,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundArgs {
    #[arg(long, value_parser = text::family)]
    pub family: SetFamily,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub table_max: Option<u64>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarArgs {
    #[arg(long, value_parser = text::finset)]
    pub ground: FinSet,
    #[arg(long)]
    pub z: u64,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurFs3Args {
    #[arg(long, default_value = "parity-log2")]
    pub g: EvenColouring,
    #[arg(long, alias = "B", default_value_t = 64)]
    pub bound: u64,
    #[arg(long, default_value_t = 4)]
    pub size: usize,
    #[arg(long, default_value_t = 6)]
    pub rows: u64,
    #[arg(long, default_value_t = 30)]
    pub cols: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Fraenkel1,
    Fraenkel2,
    OmegaFraenkel,
    Grid,
    Mostowski,
    Rado,
    OrderedRado,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    RInfinite,
    H3,
    Russell,
    BFamily,
    OmegaH,
    Grid,
    RadoH2,
    RadoRk,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::RInfinite => "r-infinite",
            Check::H3 => "h3",
            Check::Russell => "russell",
            Check::BFamily => "b-family",
            Check::OmegaH => "omega-h",
            Check::Grid => "grid",
            Check::RadoH2 => "rado-h2",
            Check::RadoRk => "rado-rk",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    Bit,
    Seeded,
}

/// Per-block structure of the Rado models.
#[derive(Args, Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct StructureArgs {
    #[arg(long, value_enum)]
    pub structure: Option<StructureKind>,
    #[arg(long)]
    pub vertices: Option<u64>,
    /// Hyperedge size n.
    #[arg(long)]
    pub arity: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Base vertices whose demands are certified.
    #[arg(long)]
    pub window: Option<u64>,
    /// Largest demand size certified.
    #[arg(long)]
    pub demand: Option<usize>,
    /// Gap between base vertices (ordered structures).
    #[arg(long)]
    pub spacing: Option<u64>,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FmArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long, value_enum)]
    pub verify: Check,
    /// Atom count (fraenkel1), twice the pair count (fraenkel2), named
    /// atoms (mostowski).
    #[arg(long)]
    pub atoms: Option<u64>,
    #[arg(long)]
    pub blocks: Option<u64>,
    #[arg(long)]
    pub block_size: Option<u64>,
    #[arg(long)]
    pub rows: Option<u64>,
    #[arg(long)]
    pub cols: Option<u64>,
    #[command(flatten)]
    pub structure: StructureArgs,
    /// JSON instance replacing the built-in one for the check.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_parser = text::finset)]
    pub support: Option<FinSet>,
    /// Largest support size refuted by the russell check.
    #[arg(long)]
    pub bound: Option<usize>,
    #[arg(long, value_enum)]
    pub colouring: Option<ColouringName>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum RadoCommand {
    /// Build and certify a seeded structure.
    Build(StructureArgs),
    /// Least vertex meeting an extension demand.
    Query(QueryArgs),
    /// Extend a partial isomorphism by one vertex.
    Extend(ExtendArgs),
}

impl RadoCommand {
    pub fn verb(&self) -> &'static str {
        match self {
            RadoCommand::Build(_) => "build",
            RadoCommand::Query(_) => "query",
            RadoCommand::Extend(_) => "extend",
        }
    }
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryArgs {
    #[command(flatten)]
    pub structure: StructureArgs,
    /// (n-1)-sets the witness must complete to hyperedges.
    #[arg(long, value_parser = text::family, default_value = "")]
    pub pos: SetFamily,
    /// (n-1)-sets the witness must not complete to hyperedges.
    #[arg(long, value_parser = text::family, default_value = "")]
    pub neg: SetFamily,
    #[arg(long, value_parser = text::finset, default_value = "")]
    pub exclude: FinSet,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendArgs {
    #[command(flatten)]
    pub structure: StructureArgs,
    /// Partial isomorphism as `from:to` pairs.
    #[arg(long, default_value = "")]
    pub map: String,
    #[arg(long)]
    pub target: u64,
    /// Preserve the vertex order as well.
    #[arg(long)]
    pub ordered: bool,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColourArgs {
    #[command(flatten)]
    pub colouring: ColouringArgs,
    #[arg(long, value_parser = text::finset)]
    pub set: FinSet,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyArgs {
    pub report: PathBuf,
}
