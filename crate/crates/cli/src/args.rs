use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morse_vqe::basis::BasisKind;
use morse_vqe::models::{PartnerSign, TriatomicForm};
use morse_vqe::pauli::DEFAULT_THRESHOLD;
use morse_vqe::vqe::Method;

#[derive(Debug, Parser)]
#[command(
    name = "morse-vqe",
    version,
    about = "Exact diagonalization and VQE for discretized Morse Hamiltonians",
    args_override_self = true
)]
pub struct Cli {
    /// Read `key = value` defaults from a file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// SUSY partner Hamiltonians H- / H+ and their hierarchy.
    ///
    /// `--output` writes one CSV row with columns
    /// `basis,hamiltonian,vqe_result,pauli_terms,exact`.
    Susy(SusyCmd),
    /// Diatomic molecules in the dimensionless λ form.
    ///
    /// `--output` writes CSV with columns
    /// `molecule,lambda_squared,e_mult,bound_states,e0_ev,e0_vqe_ev,lambda_squared_half,lambda,epsilon_ratio,epsilon0,epsilon0_vqe,epsilon_matrix`.
    Molecule(MoleculeCmd),
    /// Two-coordinate triatomic Hamiltonians H1 / H2.
    ///
    /// `--output` writes one CSV row with columns
    /// `hamiltonian,vqe_result,pauli_terms,exact`.
    Triatomic(TriatomicCmd),
    /// Pauli expansion of a model Hamiltonian, written as `LABEL coefficient` lines.
    Decompose(DecomposeCmd),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BasisArg {
    Oscillator,
    Position,
    Fd,
}

impl From<BasisArg> for BasisKind {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Oscillator => BasisKind::Oscillator,
            BasisArg::Position => BasisKind::Position,
            BasisArg::Fd => BasisKind::FiniteDifference,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    Minus,
    Plus,
}

impl From<SignArg> for PartnerSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Minus => PartnerSign::Minus,
            SignArg::Plus => PartnerSign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormArg {
    #[value(name = "H1", alias = "h1")]
    H1,
    #[value(name = "H2", alias = "h2")]
    H2,
}

impl From<FormArg> for TriatomicForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::H1 => TriatomicForm::H1,
            FormArg::H2 => TriatomicForm::H2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Identity,
    Susy,
    Molecule,
    Triatomic,
}

#[derive(Debug, Args)]
pub struct BasisOpts {
    #[arg(long, value_enum, default_value = "oscillator")]
    pub basis: BasisArg,
}

#[derive(Debug, Args)]
pub struct SizeOpts {
    /// Number of qubits; the basis dimension is 2^qubits.
    #[arg(long)]
    pub qubits: Option<usize>,
    /// Basis dimension; must equal 2^qubits when both are given.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SusyModel {
    /// Morse parameter A.
    #[arg(long = "A", value_name = "A", default_value_t = 5.0)]
    pub big_a: f64,
    #[arg(long, value_enum, default_value = "minus")]
    pub sign: SignArg,
    #[arg(long, default_value_t = 0)]
    pub hierarchy_level: usize,
    /// Overall multiplier of the Hamiltonian.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
}

#[derive(Debug, Args)]
pub struct MoleculeModel {
    /// Built-in molecule: H2, HCl, LiH, CO, O2 or N2 (case-insensitive).
    #[arg(long, conflicts_with_all = ["reduced_mass", "well_depth", "width"])]
    pub name: Option<String>,
    /// Reduced mass in amu.
    #[arg(long = "mr", value_name = "AMU")]
    pub reduced_mass: Option<f64>,
    /// Well depth in eV.
    #[arg(long = "D", value_name = "EV")]
    pub well_depth: Option<f64>,
    /// Width parameter in 1/Å.
    #[arg(long = "a", value_name = "INV_ANGSTROM")]
    pub width: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TriatomicModel {
    /// End-atom mass.
    #[arg(long = "m", value_name = "MASS", default_value_t = 1.0)]
    pub m: f64,
    /// Central-atom mass.
    #[arg(long = "M", value_name = "MASS", default_value_t = 2.0)]
    pub big_m: f64,
    /// Well depth.
    #[arg(long = "C", value_name = "ENERGY", default_value_t = 10.0)]
    pub c: f64,
    /// Range parameter; accepts a number or `sqrtX`.
    #[arg(long = "b", value_name = "LENGTH", default_value = "sqrt20", value_parser = parse_length)]
    pub b: f64,
    #[arg(long, value_enum, default_value = "H1")]
    pub form: FormArg,
    #[arg(long, default_value_t = 4)]
    pub qubits_per_dim: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VqeOpts {
    /// Skip the variational run and report exact diagonalization only.
    #[arg(long)]
    pub exact_only: bool,
    /// Number of [Ry layer, entangler] blocks before the final Ry layer.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// quasinewton, gradient-descent, nelder-mead or spsa.
    #[arg(long, default_value = "quasinewton", value_parser = parse_method)]
    pub optimizer: Method,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 600)]
    pub max_iterations: usize,
    /// Independent random starts; the best result is kept.
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Write the per-evaluation energy trace as CSV.
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
    /// Run every optimizer from the same starting point and report each.
    #[arg(long)]
    pub compare_optimizers: bool,
}

#[derive(Debug, Args)]
pub struct OutputOpts {
    /// Drop Pauli terms with |coefficient| at or below this value.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: f64,
    /// Write the result table as CSV.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SusyCmd {
    #[command(flatten)]
    pub model: SusyModel,
    #[command(flatten)]
    pub basis: BasisOpts,
    #[command(flatten)]
    pub size: SizeOpts,
    #[command(flatten)]
    pub vqe: VqeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
    /// Write samples of the potential as CSV (`x,potential`).
    #[arg(long, value_name = "PATH")]
    pub potential_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MoleculeCmd {
    #[command(flatten)]
    pub model: MoleculeModel,
    /// Run all built-in molecules in table order.
    #[arg(long, conflicts_with_all = ["name", "reduced_mass", "well_depth", "width"])]
    pub all: bool,
    #[command(flatten)]
    pub basis: BasisOpts,
    #[command(flatten)]
    pub size: SizeOpts,
    #[command(flatten)]
    pub vqe: VqeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
    /// Write samples of the potential as CSV.
    #[arg(long, value_name = "PATH")]
    pub potential_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TriatomicCmd {
    #[command(flatten)]
    pub model: TriatomicModel,
    #[command(flatten)]
    pub basis: BasisOpts,
    #[command(flatten)]
    pub vqe: VqeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Args)]
pub struct DecomposeCmd {
    #[arg(long, value_enum, default_value = "susy")]
    pub model: ModelArg,
    #[command(flatten)]
    pub susy: SusyModel,
    #[command(flatten)]
    pub molecule: MoleculeModel,
    #[command(flatten)]
    pub triatomic: TriatomicModel,
    #[command(flatten)]
    pub basis: BasisOpts,
    #[command(flatten)]
    pub size: SizeOpts,
    #[command(flatten)]
    pub out: OutputOpts,
    /// Read the written expansion back, rebuild the matrix and report the Frobenius error.
    #[arg(long)]
    pub verify: bool,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: morse_vqe::Error| e.to_string())
}

/// A positive number, or `sqrtX` / `sqrt(X)`.
pub fn parse_length(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let value = match t.strip_prefix("sqrt") {
        Some(rest) => {
            let inner = rest.trim_start_matches('(').trim_end_matches(')');
            inner
                .parse::<f64>()
                .map(f64::sqrt)
                .map_err(|_| format!("cannot parse '{s}' as sqrtX"))?
        }
        None => t.parse::<f64>().map_err(|_| format!("cannot parse '{s}' as a number"))?,
    };
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("'{s}' must be a positive number"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn lengths() {
        assert_eq!(parse_length("sqrt20").unwrap(), 20f64.sqrt());
        assert_eq!(parse_length("sqrt(4)").unwrap(), 2.0);
        assert_eq!(parse_length("1.5").unwrap(), 1.5);
        assert!(parse_length("-1").is_err());
        assert!(parse_length("sqrtx").is_err());
    }
}
