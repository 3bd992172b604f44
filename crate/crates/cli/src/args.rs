//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug, Serialize)]
#[command(name = "liecoh", version, about = "Exact checks for Lie algebra cohomology, higher-order brackets, BRST operators and generalized Poisson structures")]
pub struct Cli {
    /// Output document format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<std::path::PathBuf>,

    /// Fault injection: `C:i,j,k:+delta` shifts a structure constant,
    /// `W:i1,..:+delta` shifts a component of the command's main tensor.
    #[arg(long, global = true)]
    pub mutate: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Build an algebra and check closure, Jacobi and Killing invariance.
    Algebra(AlgebraArgs),
    /// Invariant symmetric polynomials: invariance, primitivity, Casimir.
    Invariants(InvariantsArgs),
    /// The odd cocycle of an invariant polynomial.
    Cocycle(CocycleArgs),
    /// Chevalley-Eilenberg cohomology, absolute or relative.
    Cohomology(CohomologyArgs),
    /// Matrix multibrackets and their generalized Jacobi identities.
    Multibracket(MultibracketArgs),
    /// BRST operators on the ghost algebra.
    Brst(BrstArgs),
    /// Generalized and Nambu-Poisson conditions for multivectors.
    Poisson(PoissonArgs),
    /// Orders of primitive invariants and cocycles.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct AlgebraArgs {
    /// Label such as A2, B2, C3, D3, abelian:3, heisenberg.
    #[arg(long)]
    pub algebra: String,
    /// Include generators, structure constants and both forms.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantCheck {
    Invariance,
    Primitivity,
    Casimir,
}

#[derive(Args, Debug, Serialize)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub algebra: String,
    /// Polynomial order; taken from `--polynomial product:..` when omitted.
    #[arg(long)]
    pub order: Option<usize>,
    /// `trace` (symmetrized trace), `killing`, or `product:a,b,..`.
    #[arg(long, default_value = "trace")]
    pub polynomial: String,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [InvariantCheck::Invariance, InvariantCheck::Primitivity])]
    pub check: Vec<InvariantCheck>,
}

#[derive(Args, Debug, Serialize)]
pub struct CocycleArgs {
    #[arg(long)]
    pub algebra: String,
    /// Order of the invariant polynomial; the cocycle has degree 2 order - 1.
    #[arg(long)]
    pub order: Option<usize>,
    /// `trace`, `killing`, or `product:a,b,..`.
    #[arg(long, default_value = "trace")]
    pub polynomial: String,
    /// Include the cocycle components.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Trivial,
    Adjoint,
    Defining,
}

#[derive(Args, Debug, Serialize)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long, value_enum, default_value_t = Coefficients::Trivial)]
    pub coefficients: Coefficients,
    /// Highest degree; defaults to the dimension.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Subalgebra for relative cohomology as 1-based generators, e.g. `X3` or `X1,X2`.
    #[arg(long)]
    pub relative: Option<String>,
    /// Check the homotopy identity on every basis cochain.
    #[arg(long)]
    pub whitehead: bool,
    /// Refuse the modular rank fallback.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketCheck {
    Gji,
    Mixed,
}

#[derive(Args, Debug, Serialize)]
pub struct MultibracketArgs {
    #[arg(long)]
    pub algebra: String,
    /// Number of bracket arguments.
    #[arg(long)]
    pub order: usize,
    /// Identities to check; proportionality to the polynomial cocycle is always checked.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [BracketCheck::Gji])]
    pub verify: Vec<BracketCheck>,
}

#[derive(Args, Debug, Serialize)]
pub struct BrstArgs {
    #[arg(long)]
    pub algebra: String,
    /// Add one higher term per primitive cocycle of degree at least 5.
    #[arg(long)]
    pub complete: bool,
    /// Check every pairwise anticommutator.
    #[arg(long)]
    pub verify: bool,
    /// Coefficients for the operator with values; trivial gives `s`.
    #[arg(long, value_enum, default_value_t = Coefficients::Trivial)]
    pub coefficients: Coefficients,
    /// Check monomials with at most this many ghosts instead of all of them.
    #[arg(long)]
    pub max_ghost_degree: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PoissonCheck {
    Gps,
    Np,
    Fi,
    /// The coderivation built from a linear source squares to zero.
    Coderivation,
}

#[derive(Args, Debug, Serialize)]
pub struct PoissonArgs {
    /// Required for `lie` and `cocycle:` sources.
    #[arg(long)]
    pub algebra: Option<String>,
    /// `lie`, `cocycle:<degree>`, or `constant:i,j,..` (a wedge of coordinate fields).
    #[arg(long)]
    pub source: String,
    /// Number of coordinates for a constant source.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [PoissonCheck::Gps, PoissonCheck::Np])]
    pub check: Vec<PoissonCheck>,
    /// Also evaluate the algebraic condition as polynomials.
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct CatalogArgs {
    /// Simple algebra label.
    pub label: String,
}
