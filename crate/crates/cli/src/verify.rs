use std::fs;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use realclif::clifford::{verify_morita, Signature};
use realclif::extension::{verify_cocycle, verify_pin_extension, ExtensionDump, FiniteGradedExtension, MAX_PIN_RANK};
use realclif::report::{CaseKey, CaseReport, Report};
use realclif::thom::{power_axiom_cases, theorem_a_cases, verify_power_axioms, verify_theorem_a, TheoremAOptions};

use crate::args::{Cli, ExtensionAction, Suite};

#[derive(Debug, Clone, Copy)]
enum Case {
    TheoremA { p: usize, q: usize, k: usize },
    PowerAxioms { p: usize, q: usize, j: usize, k: usize },
    Morita { p: usize, q: usize },
    Extension { p: usize, q: usize },
}

impl Case {
    fn key(self) -> CaseKey {
        match self {
            Case::TheoremA { p, q, k } => CaseKey::new("theorem-a", p, q, k),
            Case::PowerAxioms { p, q, j, k } => CaseKey::new("power-axioms", p, q, k).with_j(j),
            Case::Morita { p, q } => CaseKey::new("morita", p, q, 1),
            Case::Extension { p, q } => CaseKey::new("extension", p, q, 1),
        }
    }

    fn run(self, cli: &Cli, samples: usize) -> Result<CaseReport> {
        Ok(match self {
            Case::TheoremA { p, q, k } => {
                let opts = TheoremAOptions { samples, seed: cli.seed, cap: cli.cap, ..TheoremAOptions::default() };
                verify_theorem_a(p, q, k, opts)?
            }
            Case::PowerAxioms { p, q, j, k } => verify_power_axioms(p, q, j, k, samples, cli.seed, cli.cap)?,
            Case::Morita { p, q } => verify_morita(p, q, cli.cap)?,
            Case::Extension { p, q } => verify_pin_extension(p, q)?,
        })
    }

    /// Errors inside a batch become failing cases rather than aborting it.
    fn run_recorded(self, cli: &Cli, samples: usize) -> CaseReport {
        self.run(cli, samples).unwrap_or_else(|e| {
            let mut report = CaseReport::new(self.key());
            report.error("error", format!("{e:#}"));
            report
        })
    }
}

fn all_cases(max_total: usize) -> Vec<Case> {
    let mut cases: Vec<Case> =
        theorem_a_cases(max_total).into_iter().map(|(p, q, k)| Case::TheoremA { p, q, k }).collect();
    cases.extend(power_axiom_cases(max_total).into_iter().map(|(p, q, j, k)| Case::PowerAxioms { p, q, j, k }));
    for n in 0..=max_total / 2 {
        cases.extend((0..=n).map(|p| Case::Morita { p, q: n - p }));
    }
    for n in 1..=(max_total / 2).min(MAX_PIN_RANK) {
        cases.extend((0..=n).map(|p| Case::Extension { p, q: n - p }));
    }
    cases
}

fn pool(cli: &Cli) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be positive");
        }
        builder = builder.num_threads(jobs);
    }
    Ok(builder.build()?)
}

fn emit(cli: &Cli, report: &Report) -> Result<bool> {
    let json = report.to_json();
    if cli.json {
        println!("{json}");
    } else {
        print!("{}", report.render_text());
    }
    if let Some(path) = &cli.dump {
        fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.passed())
}

pub fn run_suite(cli: &Cli, suite: &Suite) -> Result<bool> {
    let (name, cases, samples, batch) = match *suite {
        Suite::TheoremA { sig, k, samples } => {
            ("theorem-a", vec![Case::TheoremA { p: sig.p, q: sig.q, k }], samples, false)
        }
        Suite::PowerAxioms { sig, j, k, samples } => {
            ("power-axioms", vec![Case::PowerAxioms { p: sig.p, q: sig.q, j, k }], samples, false)
        }
        Suite::Morita { sig } => ("morita", vec![Case::Morita { p: sig.p, q: sig.q }], 0, false),
        Suite::All { max_total, samples } => ("all", all_cases(max_total), samples, true),
    };
    let reports = if batch {
        pool(cli)?.install(|| cases.par_iter().map(|c| c.run_recorded(cli, samples)).collect())
    } else {
        cases.iter().map(|c| c.run(cli, samples)).collect::<Result<Vec<_>>>()?
    };
    emit(cli, &Report::new(name, cli.seed, reports))
}

pub fn run_extension(cli: &Cli, action: &ExtensionAction) -> Result<bool> {
    match action {
        ExtensionAction::Build { n, sig } => {
            if sig.p + sig.q != *n {
                bail!("--n {n} must equal p + q = {}", sig.p + sig.q);
            }
            let signature = Signature::with_cap(sig.p, sig.q, cli.cap)?;
            let ext = FiniteGradedExtension::from_pin_lifts(signature, *n <= 3)?;
            if let Some(path) = &cli.dump {
                let text = serde_json::to_string_pretty(&ext.to_dump())?;
                fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
            }
            let report = verify_cocycle(&ext, CaseKey::new("extension", sig.p, sig.q, 1));
            print_report(cli, &Report::new("extension", cli.seed, vec![report]))
        }
        ExtensionAction::Audit { file } => {
            let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let dump: ExtensionDump = serde_json::from_str(&text).context("parsing extension dump")?;
            let ext = FiniteGradedExtension::from_dump(&dump)?;
            let report = verify_cocycle(&ext, CaseKey::new("extension-audit", 0, 0, 0));
            print_report(cli, &Report::new("extension-audit", cli.seed, vec![report]))
        }
    }
}

fn print_report(cli: &Cli, report: &Report) -> Result<bool> {
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    Ok(report.passed())
}
