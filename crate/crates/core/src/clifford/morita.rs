//! The (1,1) Morita isomorphism ℂl_{p+1,q+1} ≅ ℂl_{p,q} ⊗̂ End(ℂ^{1|1}).
//!
//! Generators of the larger algebra are ordered as `p` old fixed generators,
//! the new fixed generator, `q` old negated generators, then the new negated
//! generator. Old generators map to `e ⊗ 1`, the new fixed one to `1 ⊗ X` and
//! the new negated one to `1 ⊗ Y`, with `X = offdiag(1, 1)` and
//! `Y = offdiag(i, −i)`. The matrix units `E_ab` of End(ℂ^{1|1}) are even on
//! the diagonal and odd off it; its Real structure is entrywise conjugation.

use std::collections::BTreeMap;

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use super::{CliffordElement, CliffordError, Monomial, Signature, DEFAULT_CAP};
use crate::linalg::Matrix;
use crate::report::{CaseKey, CaseReport};
use crate::scalar::Cyclotomic8;

/// A basis element `m ⊗ E_ab`, stored as `(m, 2a + b)`.
type TargetKey = (Monomial, u8);

fn unit_odd(unit: u8) -> bool {
    unit == 1 || unit == 2
}

/// Element of ℂl_{p,q} ⊗̂ M₂(ℂ).
#[derive(Debug, Clone, PartialEq, Eq)]
struct TargetElement(BTreeMap<TargetKey, Cyclotomic8>);

impl TargetElement {
    fn single(key: TargetKey, c: Cyclotomic8) -> Self {
        let mut out = Self(BTreeMap::new());
        out.add(key, c);
        out
    }

    fn add(&mut self, key: TargetKey, c: Cyclotomic8) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.0.remove(&key);
        }
    }

    /// `(m ⊗ E_ab)(m' ⊗ E_cd) = (−1)^{|E_ab||m'|} mm' ⊗ δ_bc E_ad`.
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self(BTreeMap::new());
        for (&(m, u), x) in &self.0 {
            let (a, b) = (u >> 1, u & 1);
            for (&(m2, u2), y) in &other.0 {
                let (c, d) = (u2 >> 1, u2 & 1);
                if b != c {
                    continue;
                }
                let (s, prod) = m.product(m2);
                let koszul = unit_odd(u) && m2.parity();
                out.add((prod, 2 * a + d), (x * y).signed(s ^ koszul));
            }
        }
        out
    }

    fn real_involution(&self, base: Signature) -> Self {
        let mut out = Self(BTreeMap::new());
        for (&(m, u), x) in &self.0 {
            out.add((m, u), x.conj().signed(m.involution_negative(base)));
        }
        out
    }

    fn parity(&self) -> Option<bool> {
        let mut it = self.0.keys().map(|(m, u)| m.parity() ^ unit_odd(*u));
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }
}

/// An explicit algebra isomorphism as a basis-indexed matrix.
#[derive(Debug, Clone)]
pub struct IsoWitness {
    pub source: Signature,
    pub base: Signature,
    /// Column `m` is the image of source monomial `m`; rows are indexed by
    /// `4·(base monomial) + 2a + b`.
    pub matrix: Matrix,
    pub source_labels: Vec<String>,
    pub target_labels: Vec<String>,
    images: Vec<TargetElement>,
}

/// Outcome of verifying an [`IsoWitness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoritaCheck {
    pub dimension: bool,
    pub multiplicative: bool,
    pub graded: bool,
    pub real: bool,
    pub invertible: bool,
    pub failures: Vec<String>,
}

impl MoritaCheck {
    pub fn passed(&self) -> bool {
        self.dimension && self.multiplicative && self.graded && self.real && self.invertible
    }
}

/// Builds the witness for `base = (p, q)`; the source is `(p+1, q+1)`.
pub fn morita_one_one(base: Signature) -> Result<IsoWitness, CliffordError> {
    morita_one_one_with_cap(base, DEFAULT_CAP)
}

pub fn morita_one_one_with_cap(base: Signature, cap: usize) -> Result<IsoWitness, CliffordError> {
    let source = Signature::with_cap(base.p() + 1, base.q() + 1, cap)?;
    let (p, q) = (base.p(), base.q());
    let one = Cyclotomic8::one;
    let i = Cyclotomic8::i();
    let identity_unit = |m: Monomial| {
        let mut t = TargetElement::single((m, 0), one());
        t.add((m, 3), one());
        t
    };
    let generator_images: Vec<TargetElement> = (0..source.n())
        .map(|g| {
            if g < p {
                identity_unit(Monomial::generator(g))
            } else if g == p {
                let mut x = TargetElement::single((Monomial::ONE, 1), one());
                x.add((Monomial::ONE, 2), one());
                x
            } else if g < p + 1 + q {
                identity_unit(Monomial::generator(g - 1))
            } else {
                let mut y = TargetElement::single((Monomial::ONE, 1), i.clone());
                y.add((Monomial::ONE, 2), -&i);
                y
            }
        })
        .collect();
    let images: Vec<TargetElement> = source
        .monomials()
        .map(|m| m.indices().fold(identity_unit(Monomial::ONE), |acc, g| acc.mul(&generator_images[g])))
        .collect();
    let rows = 4 * base.dim();
    let mut matrix = Matrix::zeros(rows, source.dim());
    for (col, img) in images.iter().enumerate() {
        for (&(m, u), c) in &img.0 {
            matrix[(4 * m.0 as usize + u as usize, col)] = c.clone();
        }
    }
    let units = ["E11", "E12", "E21", "E22"];
    let target_labels =
        base.monomials().flat_map(|m| units.iter().map(move |u| format!("{}⊗{}", m.label(), u))).collect();
    Ok(IsoWitness {
        source,
        base,
        matrix,
        source_labels: source.monomials().map(Monomial::label).collect(),
        target_labels,
        images,
    })
}

impl IsoWitness {
    /// Image of a source element as `(base element, row a, column b)` blocks.
    pub fn image_blocks(&self, x: &CliffordElement) -> Result<[[CliffordElement; 2]; 2], CliffordError> {
        self.source.check_same(x.signature())?;
        let mut out: [[CliffordElement; 2]; 2] =
            std::array::from_fn(|_| std::array::from_fn(|_| CliffordElement::zero(self.base)));
        for (m, c) in x.terms() {
            for (&(bm, u), y) in &self.images[m.0 as usize].0 {
                out[(u >> 1) as usize][(u & 1) as usize].add_term(bm, c * y);
            }
        }
        Ok(out)
    }

    /// Exhaustive check on all pairs of source monomials.
    pub fn verify(&self) -> MoritaCheck {
        let mut failures = Vec::new();
        let dimension = self.source.dim() == 4 * self.base.dim() && self.matrix.is_square();
        let mut multiplicative = true;
        for a in self.source.monomials() {
            for b in self.source.monomials() {
                let (s, ab) = a.product(b);
                let mut lhs = self.images[ab.0 as usize].clone();
                if s {
                    lhs = TargetElement(lhs.0.into_iter().map(|(k, c)| (k, -c)).collect());
                }
                let rhs = self.images[a.0 as usize].mul(&self.images[b.0 as usize]);
                if lhs != rhs {
                    multiplicative = false;
                    failures.push(format!("W({}·{}) != W({})W({})", a.label(), b.label(), a.label(), b.label()));
                }
            }
        }
        let mut graded = true;
        let mut real = true;
        for m in self.source.monomials() {
            let img = &self.images[m.0 as usize];
            if img.parity() != Some(m.parity()) {
                graded = false;
                failures.push(format!("W({}) has parity {:?}", m.label(), img.parity()));
            }
            let mut bar_then = img.clone();
            if m.involution_negative(self.source) {
                bar_then = TargetElement(bar_then.0.into_iter().map(|(k, c)| (k, -c)).collect());
            }
            if bar_then != img.real_involution(self.base) {
                real = false;
                failures.push(format!("W(bar {}) != bar W({})", m.label(), m.label()));
            }
        }
        let invertible = self.matrix.determinant().is_some_and(|d| !d.is_zero());
        if !invertible {
            failures.push("witness matrix is singular".into());
        }
        MoritaCheck { dimension, multiplicative, graded, real, invertible, failures }
    }
}

/// Builds and verifies the witness for `base = (p, q)` as a report case.
pub fn verify_morita(p: usize, q: usize, cap: usize) -> Result<CaseReport, CliffordError> {
    let started = Instant::now();
    let witness = morita_one_one_with_cap(Signature::with_cap(p, q, cap)?, cap)?;
    let check = witness.verify();
    let mut report = CaseReport::new(CaseKey::new("morita", p, q, 1));
    for (name, ok) in [
        ("dimension", check.dimension),
        ("multiplicative", check.multiplicative),
        ("graded", check.graded),
        ("real", check.real),
        ("invertible", check.invertible),
    ] {
        report.check(name, ok, || json!(check.failures));
    }
    report.measure("source_dim", json!(witness.source.dim()));
    report.elapsed = started.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cl11_is_two_by_two_matrices() {
        let base = Signature::new(0, 0).unwrap();
        let w = morita_one_one(base).unwrap();
        let one = Cyclotomic8::one();
        let i = Cyclotomic8::i();
        let e1 = CliffordElement::generator(w.source, 1).unwrap();
        let e2 = CliffordElement::generator(w.source, 2).unwrap();
        let blocks = w.image_blocks(&e1).unwrap();
        let s = |c: Cyclotomic8| CliffordElement::scalar(base, c);
        assert_eq!(blocks, [[s(Cyclotomic8::zero()), s(one.clone())], [s(one), s(Cyclotomic8::zero())]]);
        let blocks = w.image_blocks(&e2).unwrap();
        assert_eq!(blocks, [[s(Cyclotomic8::zero()), s(i.clone())], [s(-&i), s(Cyclotomic8::zero())]]);
        assert!(w.verify().passed());
        assert!(verify_morita(0, 0, DEFAULT_CAP).unwrap().passed());
    }

    #[test]
    fn witnesses_verify_for_small_bases() {
        for n in 0..=3 {
            for p in 0..=n {
                let w = morita_one_one(Signature::new(p, n - p).unwrap()).unwrap();
                let check = w.verify();
                assert!(check.passed(), "({p},{}) {:?}", n - p, check.failures);
                assert_eq!(w.matrix.rows(), 4 << n);
            }
        }
    }

    #[test]
    fn cap_is_respected() {
        assert!(matches!(morita_one_one(Signature::new(6, 5).unwrap()), Err(CliffordError::CapExceeded { .. })));
    }
}
