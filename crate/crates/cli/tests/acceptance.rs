//! Acceptance criteria, one PASS/FAIL line each. Every identity is checked by
//! exact equality; the only numeric bound is the runtime budget below.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::Rng;
use realclif::clifford::{verify_morita, CliffordElement, Signature, DEFAULT_CAP};
use realclif::extension::{verify_cocycle, verify_pin_extension, FiniteGradedExtension};
use realclif::operator::{random_odd_self_adjoint, GradedBasis};
use realclif::pin::{
    left_multiplication, lift_signed_permutation, random_pin, signed_permutations, twisted_adjoint, PinElement,
};
use realclif::report::CaseKey;
use realclif::thom::{
    case_rng, power_axiom_cases, theorem_a_cases, verify_power_axioms, verify_theorem_a, TheoremAOptions,
};

const THEOREM_A_BUDGET: Duration = Duration::from_secs(60);
const MAX_TOTAL: usize = 6;
const SEED: u64 = 0;
const RANDOM_PIN_PER_SIGNATURE: usize = 1000;
const SAMPLED_LIFTS_AT_FOUR: usize = 200;
const KERNEL_CASES: u64 = 100;
const KERNEL_MAX_DIM: usize = 8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn signatures(max_n: usize) -> impl Iterator<Item = Signature> {
    (0..=max_n).flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p).unwrap()))
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn theorem_a() -> Outcome {
    let started = Instant::now();
    let cases = theorem_a_cases(MAX_TOTAL);
    ensure(cases.len() == 20, || format!("expected 20 cases, got {}", cases.len()))?;
    let mut comparisons = 0;
    for &(p, q, k) in &cases {
        let r = verify_theorem_a(p, q, k, TheoremAOptions { seed: SEED, ..TheoremAOptions::default() })
            .map_err(|e| format!("({p},{q},{k}): {e}"))?;
        ensure(r.passed(), || format!("({p},{q},{k}) failed: {:?}", r.failures))?;
        for part in ["a.", "b.", "c.", "d."] {
            ensure(r.checks.keys().any(|c| c.starts_with(part)), || format!("({p},{q},{k}) lacks {part} checks"))?;
        }
        comparisons += r.comparisons();
    }
    let elapsed = started.elapsed();
    ensure(elapsed < THEOREM_A_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} cases, {comparisons} comparisons, {:.2} s", cases.len(), elapsed.as_secs_f64()))
}

fn power_axioms() -> Outcome {
    let cases = power_axiom_cases(MAX_TOTAL);
    for &(p, q, j, k) in &cases {
        let r = verify_power_axioms(p, q, j, k, 8, SEED, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("(p,q,j,k)=({p},{q},{j},{k}) failed: {:?}", r.failures))?;
        ensure(r.checks["alpha"].comparisons > 0 && r.checks["beta"].comparisons > 0, || "no comparisons".into())?;
    }
    Ok(format!("{} (p,q,j,k) cases", cases.len()))
}

fn grading_identity() -> Outcome {
    let mut count = 0;
    for sig in signatures(4) {
        let mut rng = case_rng(SEED, &[sig.p(), sig.q(), 3]);
        for _ in 0..RANDOM_PIN_PER_SIGNATURE {
            let w = random_pin(sig, 4, &mut rng).map_err(|e| e.to_string())?;
            let fresh = PinElement::new(w.value().clone()).map_err(|e| e.to_string())?;
            let det_negative = twisted_adjoint(&fresh).det_negative();
            ensure(fresh.parity() == det_negative, || format!("{sig}: {w}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} random Pin elements over 15 signatures"))
}

fn lift_roundtrip() -> Outcome {
    let mut exhaustive = 0;
    let mut sampled = 0;
    for sig in signatures(4).filter(|s| s.n() > 0) {
        let all = signed_permutations(sig.n());
        let chosen: Vec<usize> = if sig.n() <= 3 {
            (0..all.len()).collect()
        } else {
            let mut rng = case_rng(SEED, &[sig.p(), sig.q(), 4]);
            let mut picked = sample(&mut rng, all.len(), SAMPLED_LIFTS_AT_FOUR).into_vec();
            picked.sort_unstable();
            picked
        };
        for &i in &chosen {
            let m = &all[i];
            let lift = lift_signed_permutation(sig, m).map_err(|e| e.to_string())?;
            ensure(twisted_adjoint(&lift) == m, || format!("{sig}: {}", m.to_notation().unwrap_or_default()))?;
        }
        if sig.n() <= 3 {
            exhaustive += chosen.len();
        } else {
            sampled += chosen.len();
        }
    }
    Ok(format!("{exhaustive} exhaustive (n ≤ 3, all signatures), {sampled} sampled at n = 4"))
}

fn unitarity() -> Outcome {
    let mut count = 0;
    for sig in signatures(6) {
        for g in 1..=sig.n() {
            let op = left_multiplication(&CliffordElement::generator(sig, g).unwrap());
            ensure(op.is_unitary(), || format!("{sig} e{g} not unitary"))?;
            ensure(op.is_self_adjoint(), || format!("{sig} e{g} not self-adjoint"))?;
            count += 1;
        }
    }
    Ok(format!("{count} generator matrices, dimensions up to 64"))
}

fn kernel_multiplicativity() -> Outcome {
    let mut nontrivial = 0;
    for case in 0..KERNEL_CASES {
        let mut rng = case_rng(SEED, &[case as usize, 6]);
        let (e1, o1, e2, o2) = loop {
            let dims: [usize; 4] = std::array::from_fn(|_| rng.random_range(0..=3));
            let (n1, n2) = (dims[0] + dims[1], dims[2] + dims[3]);
            if n1 > 0 && n2 > 0 && n1 * n2 <= KERNEL_MAX_DIM {
                break (dims[0], dims[1], dims[2], dims[3]);
            }
        };
        let height = rng.random_range(1..=2);
        let f = random_odd_self_adjoint(Arc::new(GradedBasis::split(e1, o1)), height, &mut rng);
        let g = random_odd_self_adjoint(Arc::new(GradedBasis::split(e2, o2)), height, &mut rng);
        let sum = f.tensor_sum(&g).map_err(|e| e.to_string())?;
        let k = sum.kernel();
        let expected = f.kernel().tensor_dims(&g.kernel());
        ensure(k.is_graded() && (k.even_dim, k.odd_dim) == expected, || {
            format!("case {case}: kernel ({}, {}) vs tensor {expected:?}", k.even_dim, k.odd_dim)
        })?;
        nontrivial += usize::from(k.dim() > 0);
    }
    Ok(format!("{KERNEL_CASES} cases, {nontrivial} with nonzero kernel"))
}

fn morita() -> Outcome {
    let mut count = 0;
    for sig in signatures(3) {
        let r = verify_morita(sig.p(), sig.q(), DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{sig}: {:?}", r.failures))?;
        count += 1;
    }
    Ok(format!("{count} base signatures"))
}

fn extensions() -> Outcome {
    let mut count = 0;
    for sig in signatures(4).filter(|s| s.n() > 0) {
        let r = verify_pin_extension(sig.p(), sig.q()).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{sig}: {:?}", r.failures))?;
        count += 1;
    }
    let key = || CaseKey::new("extension", 0, 0, 0);
    let b1 = FiniteGradedExtension::from_pin_lifts(Signature::new(1, 0).unwrap(), true).map_err(|e| e.to_string())?;
    let b2 = FiniteGradedExtension::from_pin_lifts(Signature::new(1, 1).unwrap(), true).map_err(|e| e.to_string())?;
    let tensors = [
        b1.tensor_external(&b2),
        b1.tensor_internal(&b1).map_err(|e| e.to_string())?,
        b2.tensor_internal(&b2.trivial_like()).map_err(|e| e.to_string())?,
    ];
    for t in &tensors {
        ensure(verify_cocycle(t, key()).passed(), || "tensor extension failed".into())?;
    }
    let mut faulty =
        FiniteGradedExtension::from_pin_lifts(Signature::new(2, 0).unwrap(), true).map_err(|e| e.to_string())?;
    let (g, h) = (faulty.index_of("-1").unwrap(), faulty.index_of("(1 2)").unwrap());
    faulty.inject_fault(g, h, 4);
    let r = verify_cocycle(&faulty, key());
    let named = r
        .failures
        .iter()
        .find(|f| f.check == "cocycle_identity")
        .filter(|f| f.operands["elements"].as_array().is_some_and(|a| a.len() == 3))
        .ok_or("injected fault not reported with a triple")?;
    ensure(!r.passed(), || "injected fault passed".into())?;
    Ok(format!("{count} B_n extensions, {} tensors, fault caught at {}", tensors.len(), named.operands["elements"]))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_realclif"))
            .args(["verify", "all", "--max-total", "6", "--seed", "7", "--json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || format!("exit {:?} / {:?}", a.status, b.status))?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    let cases = report["summary"]["cases"].as_u64().unwrap_or(0);
    ensure(cases >= 20, || format!("only {cases} cases"))?;
    Ok(format!("{} bytes identical, {cases} cases", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("theorem A suite", theorem_a),
        ("power-operation axioms", power_axioms),
        ("grading identity", grading_identity),
        ("lift roundtrip", lift_roundtrip),
        ("spinor unitarity", unitarity),
        ("kernel multiplicativity", kernel_multiplicativity),
        ("Morita (1,1)", morita),
        ("graded central extensions", extensions),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
