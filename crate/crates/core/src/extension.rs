//! Finite Real graded central extensions by μ₈.
//!
//! An extension is a finite group (element labels plus a multiplication
//! table), a grading `ε: G → ℤ/2`, a normalized 2-cocycle `c: G × G → μ₈`,
//! and Real data: an involutive automorphism `g ↦ ḡ` together with scalars
//! `μ(g) ∈ μ₈`. In the model built from Pin lifts `μ` is defined by
//! `bar(lift g) = μ(g) · lift(ḡ)`, which forces
//!
//! * `c(ḡ, h̄) = conj(c(g, h)) · μ(gh) · μ(g)⁻¹ · μ(h)⁻¹`,
//! * `μ(ḡ) = μ(g)`.
//!
//! With `μ ≡ 1` these reduce to `c(ḡ, h̄) = conj(c(g, h))`.

use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::clifford::{CliffordElement, CliffordError, Monomial, Signature};
use crate::pin::{lift_signed_permutation, signed_permutations, PinElement, PinError};
use crate::report::{CaseKey, CaseReport, CheckTally, Failure, Status, MAX_RECORDED_FAILURES};
use crate::scalar::{Cyclotomic8, Mu8};

/// Largest `n = p + q` for which the signed permutation group is built.
pub const MAX_PIN_RANK: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("B_n extensions are built for n ≤ {MAX_PIN_RANK}, got n = {0}")]
    RankTooLarge(usize),
    #[error("cocycle value {value} for ({g}, {h}) is not an 8th root of unity")]
    NotMu8 { g: String, h: String, value: String },
    #[error("incompatible groups: {0}")]
    Incompatible(String),
    #[error("malformed extension: {0}")]
    Malformed(String),
    #[error(transparent)]
    Pin(#[from] PinError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGradedExtension {
    pub labels: Vec<String>,
    pub identity: usize,
    /// `table[g][h] = gh`.
    pub table: Vec<Vec<usize>>,
    pub grading: Vec<bool>,
    pub cocycle: Vec<Vec<Mu8>>,
    pub involution: Vec<usize>,
    pub mu: Vec<Mu8>,
}

/// Signed permutation `e_j ↦ ±e_{perm[j]}` in compact form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct SignedPerm {
    perm: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedPerm {
    fn compose(&self, other: &Self) -> Self {
        let n = self.perm.len();
        let perm = (0..n).map(|j| self.perm[other.perm[j]]).collect();
        let negate = (0..n).map(|j| other.negate[j] ^ self.negate[other.perm[j]]).collect();
        Self { perm, negate }
    }

    /// `J g J` with `J` negating coordinates `≥ p`: the sign of column `j`
    /// flips when exactly one of `j`, `perm[j]` is negated.
    fn real_conjugate(&self, p: usize) -> Self {
        let negate = (0..self.perm.len()).map(|j| self.negate[j] ^ ((j >= p) != (self.perm[j] >= p))).collect();
        Self { perm: self.perm.clone(), negate }
    }
}

/// Coefficient of `m0` in `a · b`.
fn product_coefficient(a: &CliffordElement, b: &CliffordElement, m0: Monomial) -> Cyclotomic8 {
    let mut acc = Cyclotomic8::zero();
    for (ma, x) in a.terms() {
        let mb = Monomial(ma.0 ^ m0.0);
        let y = b.coefficient(mb);
        if !y.is_zero() {
            let (neg, _) = ma.product(mb);
            acc += &(x * &y).signed(neg);
        }
    }
    acc
}

/// `c` with `a · b = c · target`, given that `a · b` is known to be a scalar
/// multiple of `target`; read off from one coefficient.
fn ratio(a: &CliffordElement, b: &CliffordElement, target: &CliffordElement) -> Cyclotomic8 {
    let (m0, t) = target.terms().next().expect("lifts are nonzero");
    product_coefficient(a, b, m0).div(t).expect("nonzero coefficient")
}

fn to_mu8(value: &Cyclotomic8, g: &str, h: &str) -> Result<Mu8, ExtensionError> {
    Mu8::try_from(value).map_err(|_| ExtensionError::NotMu8 { g: g.into(), h: h.into(), value: value.to_string() })
}

impl FiniteGradedExtension {
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    /// The signed permutation group `B_n ⊂ O_{p,q}` with cocycle of the
    /// canonical Pin lifts: `lift(g) lift(h) = c(g,h) lift(gh)`.
    ///
    /// `lift(g) lift(h)` and `lift(gh)` have the same twisted adjoint, so they
    /// differ by a scalar, read off from a single coefficient. With
    /// `full_check` every product is also expanded and compared.
    pub fn from_pin_lifts(sig: Signature, full_check: bool) -> Result<Self, ExtensionError> {
        let n = sig.n();
        if n > MAX_PIN_RANK {
            return Err(ExtensionError::RankTooLarge(n));
        }
        let matrices = signed_permutations(n);
        let elements: Vec<SignedPerm> = matrices
            .iter()
            .map(|m| {
                let (perm, negate) = m.as_signed_permutation().expect("signed permutation");
                SignedPerm { perm, negate }
            })
            .collect();
        let index: HashMap<SignedPerm, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let labels: Vec<String> = matrices.iter().map(|m| m.to_notation().expect("signed permutation")).collect();
        let identity = labels.iter().position(|l| l == "id").expect("identity present");
        let table: Vec<Vec<usize>> =
            elements.iter().map(|g| elements.iter().map(|h| index[&g.compose(h)]).collect()).collect();
        let lifts: Vec<PinElement> =
            matrices.iter().map(|m| lift_signed_permutation(sig, m)).collect::<Result<_, _>>()?;
        let grading: Vec<bool> = lifts.iter().map(PinElement::parity).collect();
        let mut cocycle = vec![vec![Mu8::ONE; labels.len()]; labels.len()];
        for g in 0..labels.len() {
            for h in 0..labels.len() {
                let gh = table[g][h];
                let c = ratio(lifts[g].value(), lifts[h].value(), lifts[gh].value());
                cocycle[g][h] = to_mu8(&c, &labels[g], &labels[h])?;
                if full_check {
                    let product = lifts[g].value() * lifts[h].value();
                    if product != lifts[gh].value().scale(&c) {
                        return Err(ExtensionError::Malformed(format!(
                            "lift({}) lift({}) is not a multiple of lift({})",
                            labels[g], labels[h], labels[gh]
                        )));
                    }
                }
            }
        }
        let involution: Vec<usize> = elements.iter().map(|g| index[&g.real_conjugate(sig.p())]).collect();
        let mu = (0..labels.len())
            .map(|g| {
                let bar = lifts[g].value().real_involution();
                let target = lifts[involution[g]].value();
                let (m0, t) = target.terms().next().expect("nonzero lift");
                let c = bar.coefficient(m0).div(t).expect("nonzero");
                if full_check && bar != target.scale(&c) {
                    return Err(ExtensionError::Malformed(format!("bar lift({}) is not a lift", labels[g])));
                }
                to_mu8(&c, &labels[g], "bar")
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { labels, identity, table, grading, cocycle, involution, mu })
    }

    /// Same group, trivial grading, cocycle and Real scalars.
    pub fn trivial_like(&self) -> Self {
        let n = self.order();
        Self {
            labels: self.labels.clone(),
            identity: self.identity,
            table: self.table.clone(),
            grading: vec![false; n],
            cocycle: vec![vec![Mu8::ONE; n]; n],
            involution: self.involution.clone(),
            mu: vec![Mu8::ONE; n],
        }
    }

    /// Internal tensor over the same group:
    /// `c = c₁ c₂ (−1)^{ε₂(g) ε₁(h)}`, `ε = ε₁ + ε₂`, `μ = μ₁ μ₂`.
    pub fn tensor_internal(&self, other: &Self) -> Result<Self, ExtensionError> {
        if self.labels != other.labels || self.table != other.table || self.involution != other.involution {
            return Err(ExtensionError::Incompatible("internal tensor needs the same group and involution".into()));
        }
        let n = self.order();
        let cocycle = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| self.cocycle[g][h] * other.cocycle[g][h] * Mu8::sign(other.grading[g] && self.grading[h]))
                    .collect()
            })
            .collect();
        Ok(Self {
            labels: self.labels.clone(),
            identity: self.identity,
            table: self.table.clone(),
            grading: (0..n).map(|g| self.grading[g] ^ other.grading[g]).collect(),
            cocycle,
            involution: self.involution.clone(),
            mu: (0..n).map(|g| self.mu[g] * other.mu[g]).collect(),
        })
    }

    /// External tensor on `G₁ × G₂`, element `(g, g')` at index `g·|G₂| + g'`:
    /// `c = c₁(g,h) c₂(g',h') (−1)^{ε₂(g') ε₁(h)}`.
    pub fn tensor_external(&self, other: &Self) -> Self {
        let (n1, n2) = (self.order(), other.order());
        let idx = |g: usize, g2: usize| g * n2 + g2;
        let mut labels = Vec::with_capacity(n1 * n2);
        let mut grading = Vec::with_capacity(n1 * n2);
        let mut involution = Vec::with_capacity(n1 * n2);
        let mut mu = Vec::with_capacity(n1 * n2);
        for g in 0..n1 {
            for g2 in 0..n2 {
                labels.push(format!("[{}|{}]", self.labels[g], other.labels[g2]));
                grading.push(self.grading[g] ^ other.grading[g2]);
                involution.push(idx(self.involution[g], other.involution[g2]));
                mu.push(self.mu[g] * other.mu[g2]);
            }
        }
        let mut table = vec![vec![0; n1 * n2]; n1 * n2];
        let mut cocycle = vec![vec![Mu8::ONE; n1 * n2]; n1 * n2];
        for g in 0..n1 {
            for g2 in 0..n2 {
                for h in 0..n1 {
                    for h2 in 0..n2 {
                        table[idx(g, g2)][idx(h, h2)] = idx(self.table[g][h], other.table[g2][h2]);
                        cocycle[idx(g, g2)][idx(h, h2)] = self.cocycle[g][h]
                            * other.cocycle[g2][h2]
                            * Mu8::sign(other.grading[g2] && self.grading[h]);
                    }
                }
            }
        }
        Self { labels, identity: idx(self.identity, other.identity), table, grading, cocycle, involution, mu }
    }

    /// Multiplies `c(g, h)` by `ζ^delta`.
    pub fn inject_fault(&mut self, g: usize, h: usize, delta: i64) {
        self.cocycle[g][h] = self.cocycle[g][h] * Mu8::new(delta);
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn validate_shape(&self) -> Result<(), ExtensionError> {
        let n = self.order();
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n));
        if n == 0
            || self.identity >= n
            || !square(&self.table)
            || self.grading.len() != n
            || self.cocycle.len() != n
            || self.cocycle.iter().any(|r| r.len() != n)
            || self.involution.len() != n
            || self.involution.iter().any(|&x| x >= n)
            || self.mu.len() != n
        {
            return Err(ExtensionError::Malformed("inconsistent table sizes".into()));
        }
        Ok(())
    }

    pub fn to_dump(&self) -> ExtensionDump {
        ExtensionDump {
            schema: 1,
            labels: self.labels.clone(),
            identity: self.identity,
            table: self.table.clone(),
            grading: self.grading.iter().map(|&b| u8::from(b)).collect(),
            cocycle: self.cocycle.iter().map(|r| r.iter().map(|m| m.exponent()).collect()).collect(),
            involution: self.involution.clone(),
            mu: self.mu.iter().map(|m| m.exponent()).collect(),
        }
    }

    pub fn from_dump(d: &ExtensionDump) -> Result<Self, ExtensionError> {
        if d.schema != 1 {
            return Err(ExtensionError::Malformed(format!("unsupported schema {}", d.schema)));
        }
        if d.grading.iter().any(|&b| b > 1) {
            return Err(ExtensionError::Malformed("grading bits must be 0 or 1".into()));
        }
        let ext = Self {
            labels: d.labels.clone(),
            identity: d.identity,
            table: d.table.clone(),
            grading: d.grading.iter().map(|&b| b == 1).collect(),
            cocycle: d.cocycle.iter().map(|r| r.iter().map(|&e| Mu8::new(e.into())).collect()).collect(),
            involution: d.involution.clone(),
            mu: d.mu.iter().map(|&e| Mu8::new(e.into())).collect(),
        };
        ext.validate_shape()?;
        Ok(ext)
    }
}

/// Serialized extension: labels, table, grading bits, cocycle as μ₈ exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDump {
    pub schema: u32,
    pub labels: Vec<String>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    pub grading: Vec<u8>,
    pub cocycle: Vec<Vec<u8>>,
    pub involution: Vec<usize>,
    pub mu: Vec<u8>,
}

/// Per-check tally for the triple loop.
struct Tally<'a> {
    name: &'static str,
    counts: CheckTally,
    failures: Vec<Failure>,
    ext: &'a FiniteGradedExtension,
}

impl<'a> Tally<'a> {
    fn new(name: &'static str, ext: &'a FiniteGradedExtension) -> Self {
        Self { name, counts: CheckTally::default(), failures: Vec::new(), ext }
    }

    fn check(&mut self, ok: bool, elements: &[usize]) {
        self.counts.comparisons += 1;
        if !ok {
            self.counts.failures += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                let names: Vec<&str> = elements.iter().map(|&i| self.ext.labels[i].as_str()).collect();
                self.failures.push(Failure { check: self.name.into(), operands: json!({ "elements": names }) });
            }
        }
    }

    fn finish(self, report: &mut CaseReport) {
        if self.counts.failures > 0 {
            report.status = Status::Fail;
        }
        report.failures.extend(self.failures);
        report.checks.insert(self.name.into(), self.counts);
    }
}

/// Exhaustive check of the group table, normalization, the 2-cocycle
/// identity, the grading homomorphism and Real compatibility.
pub fn verify_cocycle(ext: &FiniteGradedExtension, key: CaseKey) -> CaseReport {
    let started = Instant::now();
    let mut report = CaseReport::new(key);
    if let Err(e) = ext.validate_shape() {
        report.error("shape", e.to_string());
        return report;
    }
    let n = ext.order();
    let (t, c, e) = (&ext.table, &ext.cocycle, ext.identity);
    let mut assoc = Tally::new("group_associativity", ext);
    let mut identity = Tally::new("group_identity", ext);
    let mut normalized = Tally::new("cocycle_normalized", ext);
    let mut cocycle = Tally::new("cocycle_identity", ext);
    let mut grading = Tally::new("grading_homomorphism", ext);
    let mut involution = Tally::new("involution_automorphism", ext);
    let mut real = Tally::new("real_compatibility", ext);
    let mut unscaled_real_violations = 0u64;
    for g in 0..n {
        identity.check(t[e][g] == g && t[g][e] == g, &[g]);
        normalized.check(c[e][g] == Mu8::ONE && c[g][e] == Mu8::ONE, &[g]);
        let gb = ext.involution[g];
        involution.check(ext.involution[gb] == g && ext.grading[gb] == ext.grading[g], &[g]);
        real.check(ext.mu[gb] == ext.mu[g], &[g]);
        for h in 0..n {
            let gh = t[g][h];
            grading.check(ext.grading[gh] == ext.grading[g] ^ ext.grading[h], &[g, h]);
            let hb = ext.involution[h];
            involution.check(t[gb][hb] == ext.involution[gh], &[g, h]);
            let expected = c[g][h].conj() * ext.mu[gh] * ext.mu[g].inv() * ext.mu[h].inv();
            real.check(c[gb][hb] == expected, &[g, h]);
            unscaled_real_violations += u64::from(c[gb][hb] != c[g][h].conj());
            let row = &t[gh];
            for l in 0..n {
                let hl = t[h][l];
                assoc.check(row[l] == t[g][hl], &[g, h, l]);
                cocycle.check(c[g][h] * c[gh][l] == c[h][l] * c[g][hl], &[g, h, l]);
            }
        }
    }
    for tally in [assoc, identity, normalized, cocycle, grading, involution, real] {
        tally.finish(&mut report);
    }
    report.measure("order", json!(n));
    report.measure("unscaled_real_violations", json!(unscaled_real_violations));
    let nontrivial = c.iter().flatten().filter(|&&x| x != Mu8::ONE).count();
    report.measure("nontrivial_cocycle_values", json!(nontrivial));
    report.elapsed = started.elapsed();
    report
}

/// `from_pin_lifts` for `(p, q)` followed by [`verify_cocycle`], with the
/// lift consistency of the grading and scalars recorded as extra checks.
pub fn verify_pin_extension(p: usize, q: usize) -> Result<CaseReport, ExtensionError> {
    let started = Instant::now();
    let sig = Signature::new(p, q)?;
    let ext = FiniteGradedExtension::from_pin_lifts(sig, sig.n() <= 3)?;
    let mut report = verify_cocycle(&ext, CaseKey::new("extension", p, q, 1));
    let signed = signed_permutations(sig.n());
    for (g, m) in signed.iter().enumerate() {
        report.check("grading_is_det", ext.grading[g] == m.det_negative(), || json!({"g": ext.labels[g]}));
    }
    let nontrivial_mu = ext.mu.iter().filter(|&&m| m != Mu8::ONE).count();
    report.measure("nontrivial_mu", json!(nontrivial_mu));
    report.elapsed = started.elapsed();
    Ok(report)
}
