use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use realclif::clifford::{CliffordElement, Signature};
use realclif::operator::{Kernel, Operator, OperatorDump};
use realclif::pin::left_multiplication;
use serde_json::json;

use crate::args::{CalcOp, Cli, SigArgs};

fn element(cli: &Cli, sig: SigArgs, text: &str) -> Result<CliffordElement> {
    let signature = Signature::with_cap(sig.p, sig.q, cli.cap)?;
    CliffordElement::parse(signature, text).with_context(|| format!("parsing {text:?}"))
}

fn load_operator(path: &Path) -> Result<Operator> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let dump: OperatorDump = serde_json::from_str(&text).context("parsing matrix dump")?;
    Ok(Operator::from_dump(&dump)?)
}

fn write_dump(cli: &Cli, op: &Operator) -> Result<()> {
    if let Some(path) = &cli.dump {
        let text = serde_json::to_string_pretty(&op.to_dump())?;
        fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn print_element(cli: &Cli, x: &CliffordElement) -> Result<()> {
    if cli.json {
        println!("{}", json!({ "result": x.to_string(), "parity": x.parity() }));
    } else {
        println!("{x}");
    }
    write_dump(cli, &left_multiplication(x))
}

fn print_kernel(cli: &Cli, kernel: &Kernel) {
    let vectors: Vec<Vec<String>> = kernel.basis.iter().map(|v| v.iter().map(ToString::to_string).collect()).collect();
    if cli.json {
        println!(
            "{}",
            json!({ "dim": kernel.dim(), "even_dim": kernel.even_dim, "odd_dim": kernel.odd_dim, "basis": vectors })
        );
        return;
    }
    if kernel.is_graded() {
        println!("dim {} (even {}, odd {})", kernel.dim(), kernel.even_dim, kernel.odd_dim);
    } else {
        println!("dim {} (not graded)", kernel.dim());
    }
    for v in vectors {
        println!("[{}]", v.join(", "));
    }
}

pub fn run(cli: &Cli, op: &CalcOp) -> Result<()> {
    match op {
        CalcOp::Mul { a, b, sig } => print_element(cli, &(&element(cli, *sig, a)? * &element(cli, *sig, b)?)),
        CalcOp::Bar { a, sig } => print_element(cli, &element(cli, *sig, a)?.real_involution()),
        CalcOp::Adjoint { a: Some(a), sig, .. } => print_element(cli, &element(cli, *sig, a)?.star()),
        CalcOp::Adjoint { matrix: Some(path), .. } => {
            let adj = load_operator(path)?.adjoint();
            println!("{}", serde_json::to_string_pretty(&adj.to_dump())?);
            write_dump(cli, &adj)
        }
        CalcOp::Kernel { a: Some(a), sig, .. } => {
            print_kernel(cli, &left_multiplication(&element(cli, *sig, a)?).kernel());
            Ok(())
        }
        CalcOp::Kernel { matrix: Some(path), .. } => {
            print_kernel(cli, &load_operator(path)?.kernel());
            Ok(())
        }
        CalcOp::Adjoint { .. } | CalcOp::Kernel { .. } => unreachable!("clap requires an element or --matrix"),
    }
}
