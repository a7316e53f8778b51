//! Graded tensor powers ℂl_{p,q}^{⊗k} and the isomorphism onto ℂl_{kp,kq}.
//!
//! Tuples of monomials are ordered lexicographically with factor 1 most
//! significant; this is also the basis order of the tensor-power spinor
//! module. Coordinate `(j, i)` of `(ℝ^{p,q})^k` (factor `j`, coordinate `i`,
//! both zero-based) becomes target coordinate `j·p + i` when `i < p` and
//! `k·p + j·q + (i − p)` otherwise, so all fixed coordinates precede the
//! negated ones.

use std::collections::BTreeMap;
use std::fmt;

use super::{render_term, CliffordElement, CliffordError, Monomial, Signature, DEFAULT_CAP};
use crate::linalg::Matrix;
use crate::scalar::Cyclotomic8;

/// An element of ℂl_{p,q}^{⊗k}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    sig: Signature,
    k: usize,
    terms: BTreeMap<Vec<Monomial>, Cyclotomic8>,
}

fn tuple_parity(t: &[Monomial]) -> bool {
    t.iter().filter(|m| m.parity()).count() % 2 == 1
}

impl TensorElement {
    pub fn zero(sig: Signature, k: usize) -> Self {
        Self { sig, k, terms: BTreeMap::new() }
    }

    pub fn one(sig: Signature, k: usize) -> Self {
        Self::basis(sig, vec![Monomial::ONE; k], Cyclotomic8::one())
    }

    /// `c · m_1 ⊗ … ⊗ m_k`.
    pub fn basis(sig: Signature, tuple: Vec<Monomial>, c: Cyclotomic8) -> Self {
        let mut out = Self::zero(sig, tuple.len());
        out.add_term(tuple, c);
        out
    }

    /// The elementary tensor `a_1 ⊗ … ⊗ a_k`, expanded multilinearly.
    pub fn from_factors(factors: &[CliffordElement]) -> Result<Self, CliffordError> {
        let sig = factors
            .first()
            .map(CliffordElement::signature)
            .ok_or_else(|| CliffordError::ShapeMismatch("no tensor factors".into()))?;
        for f in factors {
            sig.check_same(f.signature())?;
        }
        let mut partial: Vec<(Vec<Monomial>, Cyclotomic8)> = vec![(Vec::new(), Cyclotomic8::one())];
        for f in factors {
            let mut next = Vec::new();
            for (t, c) in &partial {
                for (m, x) in f.terms() {
                    let mut t2 = t.clone();
                    t2.push(m);
                    next.push((t2, c * x));
                }
            }
            partial = next;
        }
        let mut out = Self::zero(sig, factors.len());
        for (t, c) in partial {
            out.add_term(t, c);
        }
        Ok(out)
    }

    /// Basis element with `index = Σ m_j · dim^{k−1−j}`.
    pub fn from_index(sig: Signature, k: usize, index: usize) -> Vec<Monomial> {
        let dim = sig.dim();
        let mut out = vec![Monomial::ONE; k];
        let mut rest = index;
        for slot in out.iter_mut().rev() {
            *slot = Monomial((rest % dim) as u32);
            rest /= dim;
        }
        out
    }

    pub fn index_of(sig: Signature, tuple: &[Monomial]) -> usize {
        tuple.iter().fold(0, |acc, m| acc * sig.dim() + m.0 as usize)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], &Cyclotomic8)> {
        self.terms.iter().map(|(t, c)| (t.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, tuple: Vec<Monomial>, c: Cyclotomic8) {
        debug_assert_eq!(tuple.len(), self.k);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(tuple) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|t| tuple_parity(t));
        let first = it.next().unwrap_or(false);
        it.all(|p| p == first).then_some(first)
    }

    pub fn scale(&self, c: &Cyclotomic8) -> Self {
        let mut out = Self::zero(self.sig, self.k);
        for (t, x) in &self.terms {
            out.add_term(t.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    fn check_shape(&self, other: &Self) -> Result<(), CliffordError> {
        self.sig.check_same(other.sig)?;
        if self.k != other.k {
            return Err(CliffordError::ShapeMismatch(format!("{} vs {} tensor factors", self.k, other.k)));
        }
        Ok(())
    }

    /// Koszul-signed product: `b_m` passes `a_{m+1}..a_k`, one `−1` per
    /// odd-odd crossing, then factorwise Clifford products.
    pub fn tensor_multiply(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.sig, self.k);
        for (ta, a) in &self.terms {
            // suffix[m] = number of odd factors among a_{m+1}..a_k.
            let mut suffix = vec![0usize; self.k + 1];
            for m in (0..self.k).rev() {
                suffix[m] = suffix[m + 1] + ta[m].parity() as usize;
            }
            for (tb, b) in &other.terms {
                let mut neg = false;
                let mut tuple = Vec::with_capacity(self.k);
                for m in 0..self.k {
                    if tb[m].parity() && suffix[m + 1] % 2 == 1 {
                        neg = !neg;
                    }
                    let (s, prod) = ta[m].product(tb[m]);
                    neg ^= s;
                    tuple.push(prod);
                }
                out.add_term(tuple, (a * b).signed(neg));
            }
        }
        Ok(out)
    }

    /// Factorwise Real involution, with no extra sign.
    pub fn real_involution(&self) -> Self {
        let mut out = Self::zero(self.sig, self.k);
        for (t, c) in &self.terms {
            let neg = t.iter().filter(|m| m.involution_negative(self.sig)).count() % 2 == 1;
            out.add_term(t.clone(), c.conj().signed(neg));
        }
        out
    }

    pub fn tuple_label(tuple: &[Monomial]) -> String {
        tuple.iter().map(|m| m.label()).collect::<Vec<_>>().join("⊗")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (t, c)) in self.terms.iter().enumerate() {
            render_term(i == 0, c, &Self::tuple_label(t), &mut out);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl{}^{}[{}]", self.sig, self.k, self)
    }
}

/// The isomorphism Φ: ℂl_{p,q}^{⊗k} → ℂl_{kp,kq}, tabulated on basis tuples.
///
/// Φ sends a generator of a factor to its reindexed target generator, so a
/// basis tuple goes to `±` a target monomial. The table is a signed
/// permutation of the `2^{k(p+q)}` basis indices.
#[derive(Debug, Clone)]
pub struct TensorIso {
    source: Signature,
    target: Signature,
    k: usize,
    /// `images[source_index] = (negative, target monomial)`.
    images: Vec<(bool, Monomial)>,
    /// `preimages[target bits] = (negative, source_index)`.
    preimages: Vec<(bool, usize)>,
}

impl TensorIso {
    pub fn new(source: Signature, k: usize) -> Result<Self, CliffordError> {
        Self::with_cap(source, k, DEFAULT_CAP)
    }

    pub fn with_cap(source: Signature, k: usize, cap: usize) -> Result<Self, CliffordError> {
        if k == 0 {
            return Err(CliffordError::ShapeMismatch("tensor power needs k ≥ 1".into()));
        }
        let target = Signature::with_cap(k * source.p(), k * source.q(), cap)?;
        let dim = source.dim();
        // factor_images[j][m] = image of monomial m placed in factor j.
        let factor_images: Vec<Vec<(bool, Monomial)>> = (0..k)
            .map(|j| {
                (0..dim as u32)
                    .map(|bits| {
                        let mut acc = (false, Monomial::ONE);
                        for i in Monomial(bits).indices() {
                            let g = Monomial::generator(Self::reindex(source, k, j, i));
                            let (s, m) = acc.1.product(g);
                            acc = (acc.0 ^ s, m);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let total = target.dim();
        let mut images = Vec::with_capacity(total);
        let mut preimages = vec![(false, 0usize); total];
        for index in 0..total {
            let tuple = TensorElement::from_index(source, k, index);
            let mut acc = (false, Monomial::ONE);
            for (j, m) in tuple.iter().enumerate() {
                let (s0, img) = factor_images[j][m.0 as usize];
                let (s1, prod) = acc.1.product(img);
                acc = (acc.0 ^ s0 ^ s1, prod);
            }
            preimages[acc.1 .0 as usize] = (acc.0, index);
            images.push(acc);
        }
        Ok(Self { source, target, k, images, preimages })
    }

    /// Target coordinate of coordinate `i` in factor `j` (zero-based).
    pub fn reindex(source: Signature, k: usize, j: usize, i: usize) -> usize {
        let (p, q) = (source.p(), source.q());
        if i < p {
            j * p + i
        } else {
            k * p + j * q + (i - p)
        }
    }

    pub fn source(&self) -> Signature {
        self.source
    }

    pub fn target(&self) -> Signature {
        self.target
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `(negative, target monomial)` for a source basis index.
    pub fn image_of_index(&self, index: usize) -> (bool, Monomial) {
        self.images[index]
    }

    /// `(negative, source index)` with `Φ(±source) = target monomial`.
    pub fn preimage_of(&self, m: Monomial) -> (bool, usize) {
        self.preimages[m.0 as usize]
    }

    pub fn apply(&self, a: &TensorElement) -> Result<CliffordElement, CliffordError> {
        self.check_source(a)?;
        let mut out = CliffordElement::zero(self.target);
        for (t, c) in a.terms() {
            let (neg, m) = self.images[TensorElement::index_of(self.source, t)];
            out.add_term(m, c.clone().signed(neg));
        }
        Ok(out)
    }

    pub fn apply_inverse(&self, x: &CliffordElement) -> Result<TensorElement, CliffordError> {
        self.target.check_same(x.signature())?;
        let mut out = TensorElement::zero(self.source, self.k);
        for (m, c) in x.terms() {
            let (neg, index) = self.preimages[m.0 as usize];
            out.add_term(TensorElement::from_index(self.source, self.k, index), c.clone().signed(neg));
        }
        Ok(out)
    }

    fn check_source(&self, a: &TensorElement) -> Result<(), CliffordError> {
        self.source.check_same(a.signature())?;
        if a.k() != self.k {
            return Err(CliffordError::ShapeMismatch(format!("{} tensor factors, expected {}", a.k(), self.k)));
        }
        Ok(())
    }

    /// The matrix `M_Φ` from tensor-basis order to ascending target monomials.
    pub fn matrix(&self) -> Matrix {
        let n = self.images.len();
        let mut out = Matrix::zeros(n, n);
        for (col, (neg, m)) in self.images.iter().enumerate() {
            out[(m.0 as usize, col)] = Cyclotomic8::one().signed(*neg);
        }
        out
    }

    /// Concatenates per-factor coordinate vectors in the reindexing order.
    pub fn concat(&self, xs: &[Vec<Cyclotomic8>]) -> Result<Vec<Cyclotomic8>, CliffordError> {
        if xs.len() != self.k || xs.iter().any(|x| x.len() != self.source.n()) {
            return Err(CliffordError::ShapeMismatch("vector tuple shape".into()));
        }
        let mut out = vec![Cyclotomic8::zero(); self.target.n()];
        for (j, x) in xs.iter().enumerate() {
            for (i, c) in x.iter().enumerate() {
                out[Self::reindex(self.source, self.k, j, i)] = c.clone();
            }
        }
        Ok(out)
    }
}

/// Φ applied to a `k`-fold tensor; builds the table on each call.
pub fn iso_phi(k: usize, a: &TensorElement) -> Result<CliffordElement, CliffordError> {
    TensorIso::with_cap(a.signature(), k, super::MAX_GENERATORS)?.apply(a)
}

/// Φ⁻¹ from ℂl_{kp,kq} back to the `k`-fold tensor power of `source`.
pub fn iso_phi_inv(source: Signature, k: usize, x: &CliffordElement) -> Result<TensorElement, CliffordError> {
    TensorIso::with_cap(source, k, super::MAX_GENERATORS)?.apply_inverse(x)
}
