//! The wreath product O_{p,q} ≀ Σ_k, its block embedding into O_{kp,kq}, and
//! its Koszul-signed action on ℂl_{p,q}^{⊗k}.
//!
//! An element `w = (b_1..b_k; σ)` acts on `(ℝ^{p,q})^k` by
//! `(w·x)_{σ(j)} = b_{σ(j)} x_j`: slots are permuted first, then each slot
//! gets its block.

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::clifford::{CliffordElement, Monomial, Signature, TensorElement, TensorIso};
use crate::linalg::Matrix;
use crate::pin::{OrthogonalMatrix, PinError};
use crate::report::{CaseKey, CaseReport};
use crate::scalar::Cyclotomic8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WreathError {
    #[error("wreath shape mismatch: {0}")]
    Shape(String),
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error(transparent)]
    Pin(#[from] PinError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct WreathElement {
    blocks: Vec<OrthogonalMatrix>,
    perm: Vec<usize>,
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&i| i < perm.len() && !std::mem::replace(&mut seen[i], true))
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &i) in perm.iter().enumerate() {
        inv[i] = j;
    }
    inv
}

impl WreathElement {
    /// `perm[j]` is the slot receiving factor `j` (zero-based).
    pub fn new(blocks: Vec<OrthogonalMatrix>, perm: Vec<usize>) -> Result<Self, WreathError> {
        if blocks.len() != perm.len() || blocks.is_empty() {
            return Err(WreathError::Shape("need one block per factor".into()));
        }
        if blocks.iter().any(|b| b.n() != blocks[0].n()) {
            return Err(WreathError::Shape("blocks differ in size".into()));
        }
        if !is_permutation(&perm) {
            return Err(WreathError::NotPermutation(perm));
        }
        Ok(Self { blocks, perm })
    }

    pub fn identity(n: usize, k: usize) -> Self {
        Self { blocks: vec![OrthogonalMatrix::identity(n); k], perm: (0..k).collect() }
    }

    /// Identity except block `j`.
    pub fn block(n: usize, k: usize, j: usize, b: OrthogonalMatrix) -> Self {
        let mut w = Self::identity(n, k);
        w.blocks[j] = b;
        w
    }

    /// Trivial blocks, factors permuted by `perm`.
    pub fn permutation(n: usize, perm: Vec<usize>) -> Result<Self, WreathError> {
        let k = perm.len();
        Self::new(vec![OrthogonalMatrix::identity(n); k], perm)
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.blocks[0].n()
    }

    pub fn blocks(&self) -> &[OrthogonalMatrix] {
        &self.blocks
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// `self ∘ other`: blocks `b_i · b'_{σ⁻¹(i)}`, permutation `σ ∘ σ'`.
    pub fn compose(&self, other: &Self) -> Result<Self, WreathError> {
        if self.k() != other.k() || self.n() != other.n() {
            return Err(WreathError::Shape("composing different wreath products".into()));
        }
        let inv = invert(&self.perm);
        let blocks = (0..self.k()).map(|i| self.blocks[i].compose(&other.blocks[inv[i]])).collect();
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        Ok(Self { blocks, perm })
    }

    pub fn apply(&self, xs: &[Vec<Cyclotomic8>]) -> Vec<Vec<Cyclotomic8>> {
        let mut out = vec![Vec::new(); self.k()];
        for (j, x) in xs.iter().enumerate() {
            let slot = self.perm[j];
            out[slot] = self.blocks[slot].apply(x);
        }
        out
    }

    /// Block matrix in the tensor reindexing convention:
    /// `E_{(j,i)} ↦ Σ_{i'} (b_{σ(j)})_{i',i} E_{(σ(j),i')}`.
    pub fn embed(&self, sig: Signature) -> Result<OrthogonalMatrix, WreathError> {
        if sig.n() != self.n() {
            return Err(WreathError::Shape(format!("blocks of size {} on signature {}", self.n(), sig)));
        }
        let (n, k) = (self.n(), self.k());
        let mut m = Matrix::zeros(n * k, n * k);
        for j in 0..k {
            let slot = self.perm[j];
            let b = self.blocks[slot].matrix();
            for i in 0..n {
                let col = TensorIso::reindex(sig, k, j, i);
                for r in 0..n {
                    m[(TensorIso::reindex(sig, k, slot, r), col)] = b[(r, i)].clone();
                }
            }
        }
        Ok(OrthogonalMatrix::new(m)?)
    }

    /// The Real structure `b ↦ J b J` on each block, `J = diag(1_p, −1_q)`.
    pub fn real_conjugate(&self, sig: Signature) -> Self {
        let negated: Vec<usize> = (sig.p()..sig.n()).collect();
        let j = OrthogonalMatrix::flip(sig.n(), &negated);
        let blocks = self.blocks.iter().map(|b| j.compose(b).compose(&j)).collect();
        Self { blocks, perm: self.perm.clone() }
    }

    pub fn det_blocks_negative(&self) -> bool {
        self.blocks.iter().filter(|b| b.det_negative()).count() % 2 == 1
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for (j, b) in self.blocks.iter().enumerate() {
            if *b != OrthogonalMatrix::identity(self.n()) {
                parts.push(format!("f{}:{}", j + 1, b.to_notation().unwrap_or_else(|| "orth".into())));
            }
        }
        if self.perm.iter().enumerate().any(|(j, &s)| j != s) {
            let p: Vec<String> = self.perm.iter().map(|s| (s + 1).to_string()).collect();
            parts.push(format!("perm[{}]", p.join(" ")));
        }
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join(";")
        }
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WreathElement({})", self.label())
    }
}

/// True when permuting factors with the given parities costs a sign: one
/// `−1` per inversion of `perm` whose two factors are both odd.
pub fn koszul_perm_sign(perm: &[usize], parities: &[bool]) -> bool {
    let mut neg = false;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && parities[a] && parities[b] {
                neg = !neg;
            }
        }
    }
    neg
}

/// Reorders factors (`a_j` to slot `σ(j)`) with the Koszul sign, then applies
/// the functorial automorphism of each block to its slot.
pub fn act_on_tensor(w: &WreathElement, a: &TensorElement) -> Result<TensorElement, WreathError> {
    let sig = a.signature();
    if a.k() != w.k() || sig.n() != w.n() {
        return Err(WreathError::Shape("wreath element and tensor differ in shape".into()));
    }
    let mut out = TensorElement::zero(sig, w.k());
    for (tuple, c) in a.terms() {
        let parities: Vec<bool> = tuple.iter().map(|m| m.parity()).collect();
        let neg = koszul_perm_sign(&w.perm, &parities);
        let mut slots = vec![Monomial::ONE; w.k()];
        for (j, m) in tuple.iter().enumerate() {
            slots[w.perm[j]] = *m;
        }
        let factors: Vec<CliffordElement> = slots
            .iter()
            .enumerate()
            .map(|(i, m)| w.blocks[i].act_on_clifford(&CliffordElement::monomial(sig, *m, Cyclotomic8::one())))
            .collect::<Result<_, _>>()?;
        let image = TensorElement::from_factors(&factors).expect("consistent factors");
        for (t, x) in image.terms() {
            out.add_term(t.to_vec(), (c * x).signed(neg));
        }
    }
    Ok(out)
}

/// Per-factor coordinate flips, per-factor adjacent coordinate transpositions
/// and adjacent factor swaps.
pub fn default_generators(sig: Signature, k: usize) -> Vec<WreathElement> {
    let n = sig.n();
    let mut out = Vec::new();
    for j in 0..k {
        for i in 0..n {
            out.push(WreathElement::block(n, k, j, OrthogonalMatrix::flip(n, &[i])));
        }
        for i in 0..n.saturating_sub(1) {
            out.push(WreathElement::block(n, k, j, OrthogonalMatrix::transposition(n, i, i + 1)));
        }
    }
    for j in 0..k.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..k).collect();
        perm.swap(j, j + 1);
        out.push(WreathElement::permutation(n, perm).expect("transposition"));
    }
    out
}

/// Checks `Φ(w·a) = θ_{embed(w)}(Φ(a))` on every basis tuple `a`.
pub fn verify_phi_equivariance(iso: &TensorIso, generators: &[WreathElement]) -> CaseReport {
    let sig = iso.source();
    let k = iso.k();
    let mut report = CaseReport::new(CaseKey::new("phi-equivariance", sig.p(), sig.q(), k));
    for w in generators {
        let g = match w.embed(sig) {
            Ok(g) => g,
            Err(e) => {
                report.error("embed", format!("{}: {e}", w.label()));
                continue;
            }
        };
        for index in 0..iso.target().dim() {
            let a = TensorElement::basis(sig, TensorElement::from_index(sig, k, index), Cyclotomic8::one());
            let lhs =
                act_on_tensor(w, &a).map_err(|e| e.to_string()).and_then(|x| iso.apply(&x).map_err(|e| e.to_string()));
            let rhs =
                iso.apply(&a).map_err(|e| e.to_string()).and_then(|x| g.act_on_clifford(&x).map_err(|e| e.to_string()));
            let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
            report.check("phi_equivariance", ok, || {
                json!({
                    "w": w.label(),
                    "a": a.to_string(),
                    "phi(w.a)": lhs.as_ref().map(ToString::to_string).unwrap_or_else(|e| e.clone()),
                    "embed(w).phi(a)": rhs.as_ref().map(ToString::to_string).unwrap_or_else(|e| e.clone()),
                })
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn embed_examples() {
        let s = sig(1, 0);
        assert_eq!(WreathElement::identity(1, 2).embed(s).unwrap(), OrthogonalMatrix::identity(2));
        let swap = WreathElement::permutation(1, vec![1, 0]).unwrap();
        assert_eq!(swap.embed(s).unwrap(), OrthogonalMatrix::transposition(2, 0, 1));
    }

    #[test]
    fn embed_uses_reindexing() {
        // (1,1), k=2: target coords (0,0)->0, (1,0)->1, (0,1)->2, (1,1)->3.
        let s = sig(1, 1);
        let swap = WreathElement::permutation(2, vec![1, 0]).unwrap();
        let mut perm = vec![1, 0, 3, 2];
        assert_eq!(swap.embed(s).unwrap(), OrthogonalMatrix::signed_permutation(&perm, &[false; 4]).unwrap());
        let flip = WreathElement::block(2, 2, 1, OrthogonalMatrix::flip(2, &[1]));
        perm = vec![0, 1, 2, 3];
        let expected = OrthogonalMatrix::signed_permutation(&perm, &[false, false, false, true]).unwrap();
        assert_eq!(flip.embed(s).unwrap(), expected);
    }

    #[test]
    fn koszul_sign_examples() {
        assert!(koszul_perm_sign(&[1, 0], &[true, true]));
        assert!(!koszul_perm_sign(&[1, 0], &[true, false]));
        assert!(!koszul_perm_sign(&[0, 1, 2], &[true, true, true]));
    }

    #[test]
    fn act_examples() {
        let s = sig(1, 0);
        let swap = WreathElement::permutation(1, vec![1, 0]).unwrap();
        let e_1 = TensorElement::basis(s, vec![Monomial(1), Monomial(0)], Cyclotomic8::one());
        let one_e = TensorElement::basis(s, vec![Monomial(0), Monomial(1)], Cyclotomic8::one());
        assert_eq!(act_on_tensor(&swap, &e_1).unwrap(), one_e);
        let ee = TensorElement::basis(s, vec![Monomial(1), Monomial(1)], Cyclotomic8::one());
        assert_eq!(act_on_tensor(&swap, &ee).unwrap(), ee.scale(&Cyclotomic8::from_integer(-1)));
        assert_eq!(act_on_tensor(&WreathElement::identity(1, 2), &ee).unwrap(), ee);
    }

    #[test]
    fn equivariance_examples() {
        let s = sig(1, 0);
        let iso = TensorIso::new(s, 2).unwrap();
        let swap = WreathElement::permutation(1, vec![1, 0]).unwrap();
        let r = verify_phi_equivariance(&iso, &[swap]);
        assert!(r.passed());
        assert_eq!(r.checks["phi_equivariance"].comparisons, 4);
        let s = sig(0, 1);
        let iso = TensorIso::new(s, 2).unwrap();
        let w = WreathElement::block(1, 2, 0, OrthogonalMatrix::flip(1, &[0]));
        assert!(verify_phi_equivariance(&iso, &[w]).passed());
        let iso = TensorIso::new(sig(2, 1), 1).unwrap();
        assert!(verify_phi_equivariance(&iso, &default_generators(sig(2, 1), 1)).passed());
    }

    #[test]
    fn compose_matches_embedding() {
        let s = sig(2, 0);
        let gens = default_generators(s, 3);
        for a in &gens {
            for b in &gens {
                let ab = a.compose(b).unwrap();
                assert_eq!(ab.embed(s).unwrap(), a.embed(s).unwrap().compose(&b.embed(s).unwrap()));
            }
        }
    }
}
