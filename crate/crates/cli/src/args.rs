use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Construct, verify and classify matrix representations of the
/// noncommutative genus-g surface algebras.
#[derive(Debug, Parser)]
#[command(name = "genusrep", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a parameter set and report the admissible range of alpha.
    Validate(ValidateArgs),
    /// Build a representation and write it as JSON.
    Construct(ConstructArgs),
    /// Check the defining relations of a stored representation.
    Verify(VerifyArgs),
    /// Apply the graph exclusion rules to a representation or adjacency list.
    GraphCheck(GraphCheckArgs),
    /// Run a construction over a parameter grid and print CSV.
    Sweep(SweepArgs),
    /// Triangulate the classical level set C = 0.
    Levelset(LevelsetArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    #[value(name = "1d")]
    OneDim,
    #[value(name = "typeI")]
    TypeI,
    #[value(name = "typeII")]
    TypeII,
    #[value(name = "3d")]
    ThreeD,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    pub kind: ConstructKind,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Required for typeI; optional for typeII (derived when absent); ignored for 3d.
    #[arg(long, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    /// Eigenvalue of X (typeII) or the point x (1d).
    #[arg(long, allow_negative_numbers = true)]
    pub x_hat: Option<f64>,
    /// Phase of the first off-diagonal entry of Y.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    /// Phase of the second off-diagonal entry (3d).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta2: f64,
    /// Sign of the diagonal of Y (typeII).
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub sign: i8,
    #[arg(long, env = "GENUSREP_TOL", default_value_t = genusrep::DEFAULT_TOL)]
    pub tol: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[arg(long, env = "GENUSREP_TOL", default_value_t = genusrep::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct GraphCheckArgs {
    /// Representation file whose Y defines the graph.
    #[arg(conflicts_with = "adjacency", required_unless_present = "adjacency")]
    pub file: Option<PathBuf>,
    /// Neighbour lists as JSON, e.g. "[[1],[0]]"; a vertex listing itself has a loop.
    #[arg(long)]
    pub adjacency: Option<String>,
    #[arg(long, env = "GENUSREP_TOL", default_value_t = genusrep::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub kind: ConstructKind,
    /// Genus values: "2", "2,3,5" or an inclusive range "2:6".
    #[arg(long)]
    pub g: String,
    /// Values as "a,b,..." or a range "lo:hi" sampled at --grid points.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_hat: Option<String>,
    /// Number of points for each "lo:hi" range.
    #[arg(long, default_value_t = 5)]
    pub grid: usize,
    #[arg(long, env = "GENUSREP_TOL", default_value_t = genusrep::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LevelsetArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Sampling box "xmin,xmax,ymin,ymax,zmin,zmax".
    #[arg(long, allow_hyphen_values = true)]
    pub bounds: Option<String>,
    /// Cells per axis.
    #[arg(long, default_value_t = 96)]
    pub resolution: usize,
    /// Mesh file; ".csv" selects the CSV triangle list, anything else OBJ.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
