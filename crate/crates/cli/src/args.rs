use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use realclif::clifford::DEFAULT_CAP;

#[derive(Debug, Parser)]
#[command(name = "realclif", version, about = "Exact verification harness for Real graded Clifford algebras")]
pub struct Cli {
    /// Emit the JSON report on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report (or extension/matrix dump) to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    pub dump: Option<PathBuf>,
    /// Largest total generator count p+q of any algebra built.
    #[arg(long, global = true, env = "REALCLIF_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Worker threads for case-level parallelism; defaults to all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Build or audit finite graded central extensions.
    Extension {
        #[command(subcommand)]
        action: ExtensionAction,
    },
    /// Element-level calculators.
    Calc {
        #[command(subcommand)]
        op: CalcOp,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SigArgs {
    #[arg(long, default_value_t = 0)]
    pub p: usize,
    #[arg(long, default_value_t = 0)]
    pub q: usize,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// k-th power of the Thom family against the Thom family of ℂl_{kp,kq}.
    TheoremA {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Additivity and composition of power operations.
    PowerAxioms {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Every suite with k(p+q) ≤ D.
    All {
        #[arg(long, default_value_t = 6, value_name = "D")]
        max_total: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// The isomorphism ℂl_{p+1,q+1} ≅ ℂl_{p,q} ⊗̂ End(ℂ^{1|1}).
    Morita {
        #[command(flatten)]
        sig: SigArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExtensionAction {
    /// Extension of B_n from canonical Pin lifts, with an exhaustive audit.
    Build {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Audit a dumped extension.
    Audit { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CalcOp {
    /// Clifford product a·b.
    Mul {
        a: String,
        b: String,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Real involution.
    Bar {
        a: String,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Adjoint a* of an element, or of a dumped operator with --matrix.
    Adjoint {
        #[arg(required_unless_present = "matrix")]
        a: Option<String>,
        #[arg(long, value_name = "FILE", conflicts_with = "a")]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Graded kernel of left multiplication on the spinor module, or of a
    /// dumped operator with --matrix.
    Kernel {
        #[arg(required_unless_present = "matrix")]
        a: Option<String>,
        #[arg(long, value_name = "FILE", conflicts_with = "a")]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        sig: SigArgs,
    },
}
